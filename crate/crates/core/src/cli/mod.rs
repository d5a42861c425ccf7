//! Command-line front end: `figure N | sweep | compare | audit`.
//!
//! Settings come from built-in defaults, then an optional `--config` file of
//! `key = value` lines, then command-line flags. Exit codes: 0 success,
//! 2 validation error, 3 singular configuration, 4 tolerance breach in `compare`,
//! 1 I/O failure.

pub mod commands;
pub mod config;
pub mod csv;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
pub use commands::{Outcome, SweepGrid};
pub use config::{Layer, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "qsub-thermo", version, about = "Heat transfer between coupled quantum oscillators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub params: ParamArgs,
}

/// Settings shared by all subcommands; each also reads as a config-file key.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Flat `key = value` file applied beneath the flags
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Common oscillator frequency
    #[arg(long, global = true)]
    pub omega: Option<f64>,
    /// Coupling strength for rwa and linear
    #[arg(long, global = true)]
    pub g: Option<f64>,
    /// Interaction between the oscillators
    #[arg(long, global = true, value_parser = ["rwa", "linear", "minimal-a", "minimal-b", "none"])]
    pub kind: Option<String>,
    /// Mass for the minimal-coupling kinds
    #[arg(long, global = true)]
    pub mass: Option<f64>,
    /// Charge for the minimal-coupling kinds
    #[arg(long, global = true)]
    pub q: Option<f64>,
    #[arg(long, global = true)]
    pub beta_a: Option<f64>,
    #[arg(long, global = true)]
    pub beta_b: Option<f64>,
    /// Temperature of oscillator a, converted with β = 1/T
    #[arg(long, global = true)]
    pub temp_a: Option<f64>,
    /// Temperature of oscillator b, converted with β = 1/T
    #[arg(long, global = true)]
    pub temp_b: Option<f64>,
    /// End of the time (or averaging-window) grid
    #[arg(long, global = true)]
    pub t_max: Option<f64>,
    /// Number of grid points
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Averaging window beyond which violations count as persistent (default 3/ω)
    #[arg(long, global = true)]
    pub tau_threshold: Option<f64>,
    /// Fock levels per mode (default: smallest meeting --tail-tol)
    #[arg(long, global = true)]
    pub fock_n: Option<usize>,
    /// Allowed thermal weight above the Fock cutoff
    #[arg(long, global = true)]
    pub tail_tol: Option<f64>,
    /// Output file (default stdout)
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Analytic curves of figure N (1 to 5) as CSV
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        n: u8,
    },
    /// Violation classification over a (g, β_b − β_a) grid
    Sweep(SweepArgs),
    /// Closed form against the Fock-space oracle
    Compare {
        /// Largest accepted relative deviation
        #[arg(long, default_value_t = commands::COMPARE_TOLERANCE)]
        tolerance: f64,
    },
    /// Commutator norms of the bare/interaction decomposition
    Audit,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.05)]
    pub g_min: f64,
    #[arg(long, default_value_t = 0.95)]
    pub g_max: f64,
    #[arg(long, default_value_t = 19)]
    pub g_steps: usize,
    #[arg(long, default_value_t = 0.01)]
    pub dbeta_min: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dbeta_max: f64,
    #[arg(long, default_value_t = 1)]
    pub dbeta_steps: usize,
}

impl ParamArgs {
    /// The flags given on the command line as a settings layer.
    pub fn layer(&self) -> crate::Result<Layer> {
        let mut layer = Layer::new();
        let reals = [
            ("omega", self.omega),
            ("g", self.g),
            ("mass", self.mass),
            ("q", self.q),
            ("beta-a", self.beta_a),
            ("beta-b", self.beta_b),
            ("temp-a", self.temp_a),
            ("temp-b", self.temp_b),
            ("t-max", self.t_max),
            ("tau-threshold", self.tau_threshold),
            ("tail-tol", self.tail_tol),
        ];
        for (key, value) in reals {
            if let Some(v) = value {
                layer.set(key, v.to_string())?;
            }
        }
        for (key, value) in [("samples", self.samples), ("fock-n", self.fock_n)] {
            if let Some(v) = value {
                layer.set(key, v.to_string())?;
            }
        }
        if let Some(kind) = &self.kind {
            layer.set("kind", kind.clone())?;
        }
        if let Some(out) = &self.out {
            layer.set("out", out.to_string_lossy().into_owned())?;
        }
        Ok(layer)
    }

    /// Defaults, then the config file, then the flags.
    pub fn resolve(&self) -> crate::Result<RunConfig> {
        let base = match &self.config {
            Some(path) => Layer::read(path)?,
            None => Layer::new(),
        };
        RunConfig::from_layer(&base.overlay(&self.layer()?)?)
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Singular { .. } => EXIT_SINGULAR,
        _ => EXIT_VALIDATION,
    }
}

/// Resolves settings and runs the subcommand without touching the filesystem or stdio.
pub fn execute(cli: &Cli) -> crate::Result<(RunConfig, Outcome)> {
    let run = cli.params.resolve()?;
    let outcome = match &cli.command {
        Command::Figure { n } => commands::figure(*n, &run)?,
        Command::Compare { tolerance } => commands::compare(&run, *tolerance)?,
        Command::Audit => commands::audit(&run)?,
        Command::Sweep(args) => {
            let grid = SweepGrid {
                g: commands::linspace(args.g_min, args.g_max, args.g_steps)?,
                dbeta: commands::linspace(args.dbeta_min, args.dbeta_max, args.dbeta_steps)?,
            };
            commands::sweep(&run, &grid, commands::thread_cap()?)?
        }
    };
    Ok((run, outcome))
}

/// Parses `args`, runs, writes output and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (run, outcome) = match execute(&cli) {
        Ok(done) => done,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &run.out {
        Some(path) => std::fs::write(path, &outcome.body).map(|_| {
            print!("{}", outcome.summary);
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.body.as_bytes()).map(|_| {
                eprint!("{}", outcome.summary);
            })
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_IO;
    }
    outcome.code
}
