//! Clausius verdicts, violation scans and the commutator audit of the
//! subsystem decomposition.

use rayon::prelude::*;

use crate::analytic::{heat_at, time_averaged_series, DEFAULT_QUAD_TOL};
use crate::error::Result;
use crate::fock::{build_hamiltonian, DenseOperator, FockConfig};
use crate::model::{OscillatorSystem, ThermalPreparation};

/// Absolute sign tolerance on `ΔQ_{a→b}`, in units of the oscillator frequency.
pub const CSL_TOLERANCE: f64 = 1e-12;
/// Default averaging window beyond which violations must have washed out.
pub const DEFAULT_TAU_THRESHOLD: f64 = 3.0;
/// Commutator norms below this count as vanishing.
pub const AUDIT_TOLERANCE: f64 = 1e-10;

/// Clausius check of a single transfer value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CslVerdict {
    pub t: f64,
    pub dq_ab: f64,
    pub compliant: bool,
    /// `sgn(β_b − β_a) · ΔQ_{a→b}`; negative margins are wrong-way transfers.
    pub margin: f64,
    /// Heat flowed between equally hot oscillators.
    pub anomaly: bool,
}

/// `sgn ΔQ_{a→b} = sgn(β_b − β_a)`, with `|ΔQ_{a→b}| ≤ 1e−12·ω` counted as compliant.
pub fn csl_check(t: f64, dq_ab: f64, prep: &ThermalPreparation, energy_scale: f64) -> CslVerdict {
    let tol = CSL_TOLERANCE * energy_scale;
    let gradient = prep.beta_b() - prep.beta_a();
    let negligible = dq_ab.abs() <= tol;
    let direction = if gradient > 0.0 {
        1.0
    } else if gradient < 0.0 {
        -1.0
    } else {
        0.0
    };
    let margin = direction * dq_ab;
    CslVerdict {
        t,
        dq_ab,
        compliant: negligible || margin > 0.0,
        margin,
        anomaly: direction == 0.0 && !negligible,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationClass {
    None,
    /// Wrong-way transfers occur, but every average over `τ ≥ τ_threshold` is compliant.
    Transient,
    /// Some average over `τ ≥ τ_threshold` is itself a wrong-way transfer.
    Persistent,
}

impl ViolationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationClass::None => "none",
            ViolationClass::Transient => "transient",
            ViolationClass::Persistent => "persistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViolationProfile {
    pub grid: Vec<f64>,
    /// Grid times with a non-compliant verdict.
    pub violations: Vec<f64>,
    pub classification: ViolationClass,
    pub tau_threshold: f64,
    /// Most negative averaged margin over `τ ≥ τ_threshold` (positive when all compliant).
    pub worst_average_margin: f64,
}

/// Uniform grid `0, t_max/(n−1), …, t_max`.
pub fn uniform_grid(t_max: f64, n_samples: usize) -> Vec<f64> {
    let step = t_max / (n_samples - 1) as f64;
    (0..n_samples).map(|k| step * k as f64).collect()
}

/// Scans the closed-form `ΔQ_{a→b}` on a uniform grid and classifies violations
/// by the time averages over windows `τ ≥ tau_threshold` on the same grid.
pub fn scan_violations(
    sys: &OscillatorSystem,
    prep: &ThermalPreparation,
    t_max: f64,
    n_samples: usize,
    tau_threshold: f64,
) -> Result<ViolationProfile> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(crate::Error::Domain(format!("t_max must be positive, got {t_max}")));
    }
    if n_samples < 16 {
        return Err(crate::Error::Domain(format!("need at least 16 samples, got {n_samples}")));
    }
    if !(tau_threshold > 0.0) {
        return Err(crate::Error::Domain(format!(
            "tau_threshold must be positive, got {tau_threshold}"
        )));
    }
    let grid = uniform_grid(t_max, n_samples);
    let scale = sys.energy_scale();
    let reports = grid
        .par_iter()
        .map(|&t| heat_at(sys, prep, t))
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<f64> = reports
        .iter()
        .filter(|r| !csl_check(r.t, r.dq_ab, prep, scale).compliant)
        .map(|r| r.t)
        .collect();

    let taus: Vec<f64> = grid.iter().copied().filter(|&t| t >= tau_threshold).collect();
    let (persistent, worst) = if taus.is_empty() {
        (false, f64::INFINITY)
    } else {
        let averages = time_averaged_series(sys, prep, &taus, DEFAULT_QUAD_TOL)?;
        let verdicts: Vec<CslVerdict> = taus
            .iter()
            .zip(&averages)
            .map(|(&tau, &avg)| csl_check(tau, avg, prep, scale))
            .collect();
        let worst = verdicts.iter().map(|v| v.margin).fold(f64::INFINITY, f64::min);
        (verdicts.iter().any(|v| !v.compliant), worst)
    };
    let classification = match (violations.is_empty(), persistent) {
        (true, false) => ViolationClass::None,
        (_, true) => ViolationClass::Persistent,
        (false, false) => ViolationClass::Transient,
    };
    Ok(ViolationProfile {
        grid,
        violations,
        classification,
        tau_threshold,
        worst_average_margin: worst,
    })
}

/// Frobenius norms of `[H0, V]`, `[H, V]` and `[H0, H]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionAudit {
    pub norm_h0_v: f64,
    pub norm_h_v: f64,
    pub norm_h0_h: f64,
    /// All three vanish: bare energy is conserved and the Clausius form follows.
    pub csl_safe: bool,
}

impl DecompositionAudit {
    pub fn max_pairwise_gap(&self) -> f64 {
        let n = [self.norm_h0_v, self.norm_h_v, self.norm_h0_h];
        (n[0] - n[1]).abs().max((n[1] - n[2]).abs()).max((n[0] - n[2]).abs())
    }
}

pub fn decomposition_audit(sys: &OscillatorSystem, cfg: &FockConfig) -> Result<DecompositionAudit> {
    let ham = build_hamiltonian(sys, cfg)?;
    let norm = |x: &DenseOperator, y: &DenseOperator| DenseOperator::commutator(x, y).frobenius_norm();
    let norm_h0_v = norm(&ham.h0, &ham.v);
    let norm_h_v = norm(&ham.h, &ham.v);
    let norm_h0_h = norm(&ham.h0, &ham.h);
    Ok(DecompositionAudit {
        norm_h0_v,
        norm_h_v,
        norm_h0_h,
        csl_safe: norm_h0_v.max(norm_h_v).max(norm_h0_h) < AUDIT_TOLERANCE,
    })
}
