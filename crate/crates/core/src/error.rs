use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The closed forms exist only on resonance and for the RWA/linear couplings.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// `g = ω/2` for the linear coupling: the slow normal mode has zero frequency.
    #[error("singular configuration: g = {g} equals ω/2 = {half_omega}")]
    Singular { g: f64, half_omega: f64 },

    /// The thermal tail above the Fock cutoff is too heavy.
    #[error(
        "truncation: thermal tail {tail:.3e} above level {levels} exceeds {tail_tol:.3e} \
         (needs β·ω ≥ {min_beta_omega:.4})"
    )]
    Truncation {
        levels: usize,
        tail: f64,
        tail_tol: f64,
        min_beta_omega: f64,
    },

    #[error("requested {requested} eigenvalues but only {allowed} lie below the truncation band")]
    TruncationBand { requested: usize, allowed: usize },

    #[error("operator is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("density matrix has eigenvalue {0:.3e} below the positivity floor")]
    Positivity(f64),

    #[error("relative entropy is infinite: weight {0:.3e} outside the support of the reference state")]
    Support(f64),

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}
