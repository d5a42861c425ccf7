use super::config::{thermal_tail, FockConfig};
use super::operator::DenseOperator;
use crate::error::{Error, Result};
use crate::model::{OscillatorSystem, ThermalPreparation};

/// Gibbs weights `e^{−βωn}/Z` on `levels` levels, renormalized over the truncation.
pub fn thermal_weights(beta: f64, omega: f64, levels: usize, tail_tol: f64) -> Result<Vec<f64>> {
    if !(beta > 0.0 && omega > 0.0) {
        return Err(Error::Domain(format!(
            "thermal state needs beta, omega > 0, got {beta}, {omega}"
        )));
    }
    let tail = thermal_tail(beta, omega, levels);
    if tail >= tail_tol {
        return Err(Error::Truncation {
            levels,
            tail,
            tail_tol,
            min_beta_omega: -tail_tol.ln() / levels as f64,
        });
    }
    let raw: Vec<f64> = (0..levels).map(|n| (-beta * omega * n as f64).exp()).collect();
    let z: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|w| w / z).collect())
}

/// Single-mode Gibbs state on `levels` levels.
pub fn thermal_state(beta: f64, omega: f64, levels: usize, tail_tol: f64) -> Result<DenseOperator> {
    Ok(DenseOperator::from_real_diagonal(&thermal_weights(beta, omega, levels, tail_tol)?))
}

/// Both Gibbs spectra, and the product state `ρ_a^th ⊗ ρ_b^th`.
#[derive(Debug, Clone)]
pub struct ProductThermalState {
    pub weights_a: Vec<f64>,
    pub weights_b: Vec<f64>,
}

impl ProductThermalState {
    pub fn new(sys: &OscillatorSystem, prep: &ThermalPreparation, cfg: &FockConfig) -> Result<Self> {
        Ok(ProductThermalState {
            weights_a: thermal_weights(prep.beta_a(), sys.omega_a(), cfg.n_a, cfg.tail_tol)?,
            weights_b: thermal_weights(prep.beta_b(), sys.omega_b(), cfg.n_b, cfg.tail_tol)?,
        })
    }

    /// Weight of the bare state `|n_a, m_b⟩`.
    pub fn weight(&self, n: usize, m: usize) -> f64 {
        self.weights_a[n] * self.weights_b[m]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.weights_a
            .iter()
            .flat_map(|wa| self.weights_b.iter().map(move |wb| wa * wb))
            .collect()
    }

    pub fn operator(&self) -> DenseOperator {
        DenseOperator::from_real_diagonal(&self.diagonal())
    }

    pub fn state_a(&self) -> DenseOperator {
        DenseOperator::from_real_diagonal(&self.weights_a)
    }

    pub fn state_b(&self) -> DenseOperator {
        DenseOperator::from_real_diagonal(&self.weights_b)
    }
}
