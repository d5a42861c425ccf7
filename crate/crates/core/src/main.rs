fn main() {
    std::process::exit(qsub_thermo::cli::run(std::env::args_os()));
}
