use crate::error::{Error, Result};
use crate::model::{OscillatorSystem, ThermalPreparation};

pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
pub const DEFAULT_EVOL_TOL: f64 = 1e-10;
/// Upper bound on automatically chosen levels per mode.
pub const MAX_LEVELS: usize = 64;

/// Truncation of both modes and the accuracy targets of the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockConfig {
    pub n_a: usize,
    pub n_b: usize,
    /// Largest thermal population allowed above the cutoff.
    pub tail_tol: f64,
    /// Relative residual allowed in the eigendecomposition behind `e^{−iHt}`.
    pub evol_tol: f64,
}

/// Population of a thermal oscillator at or above level `levels`: `e^{−βω·levels}`.
pub fn thermal_tail(beta: f64, omega: f64, levels: usize) -> f64 {
    (-beta * omega * levels as f64).exp()
}

/// Smallest number of levels whose thermal tail is below `tail_tol`, if it fits in `cap`.
pub fn levels_for(beta: f64, omega: f64, tail_tol: f64, cap: usize) -> Result<usize> {
    let needed = (-tail_tol.ln() / (beta * omega)).floor() as usize + 1;
    let levels = needed.max(2);
    if levels <= cap {
        Ok(levels)
    } else {
        Err(truncation_error(beta, omega, cap, tail_tol))
    }
}

fn truncation_error(beta: f64, omega: f64, levels: usize, tail_tol: f64) -> Error {
    Error::Truncation {
        levels,
        tail: thermal_tail(beta, omega, levels),
        tail_tol,
        min_beta_omega: -tail_tol.ln() / levels as f64,
    }
}

impl FockConfig {
    pub fn new(n_a: usize, n_b: usize, tail_tol: f64, evol_tol: f64) -> Result<Self> {
        if n_a < 2 || n_b < 2 {
            return Err(Error::Domain(format!(
                "each mode needs at least 2 levels, got {n_a} and {n_b}"
            )));
        }
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::Domain(format!("tail_tol must lie in (0, 1), got {tail_tol}")));
        }
        if !(evol_tol > 0.0) {
            return Err(Error::Domain(format!("evol_tol must be positive, got {evol_tol}")));
        }
        Ok(FockConfig {
            n_a,
            n_b,
            tail_tol,
            evol_tol,
        })
    }

    pub fn uniform(n: usize, tail_tol: f64) -> Result<Self> {
        Self::new(n, n, tail_tol, DEFAULT_EVOL_TOL)
    }

    /// Smallest uniform truncation meeting `tail_tol` for both thermal modes, capped at
    /// [`MAX_LEVELS`].
    ///
    /// Both modes get the cutoff of the hotter one: the coupling moves excitations from
    /// the hot mode into the cold one, and a cold-mode cutoff sized for its own thermal
    /// tail would clip them.
    pub fn auto(sys: &OscillatorSystem, prep: &ThermalPreparation, tail_tol: f64) -> Result<Self> {
        let n_a = levels_for(prep.beta_a(), sys.omega_a(), tail_tol, MAX_LEVELS)?;
        let n_b = levels_for(prep.beta_b(), sys.omega_b(), tail_tol, MAX_LEVELS)?;
        Self::uniform(n_a.max(n_b), tail_tol)
    }

    pub fn dim(&self) -> usize {
        self.n_a * self.n_b
    }

    /// Rejects preparations whose thermal tail does not fit below the cutoff.
    pub fn validate(&self, sys: &OscillatorSystem, prep: &ThermalPreparation) -> Result<()> {
        for (beta, omega, n) in [
            (prep.beta_a(), sys.omega_a(), self.n_a),
            (prep.beta_b(), sys.omega_b(), self.n_b),
        ] {
            if thermal_tail(beta, omega, n) >= self.tail_tol {
                return Err(truncation_error(beta, omega, n, self.tail_tol));
            }
        }
        Ok(())
    }
}
