//! Closed-form Heisenberg propagators on resonance and the heat formulas built
//! on them.
//!
//! Both couplings considered here keep the Heisenberg equations linear, so
//!
//! ```text
//! a(t) = f_a a + g_a a† + f_b b + g_b b†
//! b(t) = p_a a + q_a a† + p_b b + q_b b†
//! ```
//!
//! and the heat absorbed by each oscillator from the product thermal state
//! depends only on the moduli of these eight amplitudes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{HeatReport, Interaction, OscillatorSystem, ThermalPreparation};
use crate::quadrature::{adaptive_simpson, MAX_DEPTH};

/// Default relative tolerance for time averages.
pub const DEFAULT_QUAD_TOL: f64 = 1e-8;

/// Bose occupation `1/(e^{βω} − 1)`.
pub fn thermal_occupation(beta: f64, omega: f64) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    Ok(1.0 / (beta * omega).exp_m1())
}

/// The eight amplitudes of the linear Heisenberg propagator at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorCoefficients {
    pub t: f64,
    pub f_a: Complex64,
    pub g_a: Complex64,
    pub f_b: Complex64,
    pub g_b: Complex64,
    pub p_a: Complex64,
    pub q_a: Complex64,
    pub p_b: Complex64,
    pub q_b: Complex64,
}

/// Residuals of the four commutators the propagator must preserve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorResiduals {
    /// `[a(t), a†(t)] − 1`
    pub a_adag: f64,
    /// `[b(t), b†(t)] − 1`
    pub b_bdag: f64,
    /// `|[a(t), b(t)]|`
    pub a_b: f64,
    /// `|[a(t), b†(t)]|`
    pub a_bdag: f64,
}

impl CommutatorResiduals {
    pub fn max(&self) -> f64 {
        self.a_adag
            .abs()
            .max(self.b_bdag.abs())
            .max(self.a_b)
            .max(self.a_bdag)
    }
}

impl PropagatorCoefficients {
    pub fn identity(t: f64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        PropagatorCoefficients {
            t,
            f_a: one,
            g_a: zero,
            f_b: zero,
            g_b: zero,
            p_a: zero,
            q_a: zero,
            p_b: one,
            q_b: zero,
        }
    }

    pub fn commutator_residuals(&self) -> CommutatorResiduals {
        let c = |z: Complex64| z.conj();
        CommutatorResiduals {
            a_adag: self.f_a.norm_sqr() - self.g_a.norm_sqr() + self.f_b.norm_sqr()
                - self.g_b.norm_sqr()
                - 1.0,
            b_bdag: self.p_b.norm_sqr() - self.q_b.norm_sqr() + self.p_a.norm_sqr()
                - self.q_a.norm_sqr()
                - 1.0,
            a_b: (self.f_a * self.q_a - self.g_a * self.p_a + self.f_b * self.q_b
                - self.g_b * self.p_b)
                .norm(),
            a_bdag: (self.f_a * c(self.p_a) - self.g_a * c(self.q_a) + self.f_b * c(self.p_b)
                - self.g_b * c(self.q_b))
            .norm(),
        }
    }
}

/// RWA propagator on resonance: `a(t) = e^{−iωt}(a cos gt − b sin gt)`.
pub fn rwa_coefficients(sys: &OscillatorSystem, t: f64) -> Result<PropagatorCoefficients> {
    let g = match sys.interaction() {
        Interaction::Rwa { g } => g,
        other => {
            return Err(Error::Unsupported(format!(
                "rwa_coefficients needs an RWA coupling, got {}",
                other.kind()
            )))
        }
    };
    let omega = resonant_frequency(sys)?;
    check_time(t)?;
    let phase = Complex64::from_polar(1.0, -omega * t);
    let (s, c) = (g * t).sin_cos();
    let zero = Complex64::new(0.0, 0.0);
    Ok(PropagatorCoefficients {
        t,
        f_a: phase * c,
        g_a: zero,
        f_b: -phase * s,
        g_b: zero,
        p_a: phase * s,
        q_a: zero,
        p_b: phase * c,
        q_b: zero,
    })
}

/// Single-mode solution of `ċ = −iΩc + iγc†`:
/// `c(t) = c[cos μt − iΩ sin(μt)/μ] + c† iγ sin(μt)/μ` with `μ² = Ω² − γ²`.
///
/// `μ` may be imaginary; `cos μt` and `sin(μt)/μ` are even in `μ`, so the branch
/// of the square root is irrelevant and the hyperbolic regime needs no special case.
fn normal_mode(detuned: f64, gamma: f64, t: f64) -> (Complex64, Complex64) {
    let mu = Complex64::new(detuned * detuned - gamma * gamma, 0.0).sqrt();
    let mt = mu * t;
    let sinc = if mu.norm() * t.abs() < 1e-8 {
        Complex64::new(t, 0.0)
    } else {
        mt.sin() / mu
    };
    let i = Complex64::i();
    let keep = mt.cos() - i * detuned * sinc;
    let flip = i * gamma * sinc;
    (keep, flip)
}

/// Linear-coupling propagator on resonance via the normal modes
/// `c_+ = (a + ib)/√2`, `c_− = (b + ia)/√2`.
///
/// With `V = ig(a† + a)(b† − b)` the Heisenberg equations read
/// `ċ_+ = −i(ω − g)c_+ + ig c_+†` and `ċ_− = −i(ω + g)c_− + ig c_−†`,
/// so the modes oscillate at `√(ω² ∓ 2ωg)`. Inverting the mode map,
/// `a = (c_+ − i c_−)/√2` and `b = (c_− − i c_+)/√2`.
pub fn linear_coefficients(sys: &OscillatorSystem, t: f64) -> Result<PropagatorCoefficients> {
    let g = match sys.interaction() {
        Interaction::Linear { g } => g,
        other => {
            return Err(Error::Unsupported(format!(
                "linear_coefficients needs a linear coupling, got {}",
                other.kind()
            )))
        }
    };
    let omega = resonant_frequency(sys)?;
    check_singular(omega, g)?;
    check_time(t)?;

    let (keep_p, flip_p) = normal_mode(omega - g, g, t);
    let (keep_m, flip_m) = normal_mode(omega + g, g, t);
    let i = Complex64::i();
    let half = 0.5;
    Ok(PropagatorCoefficients {
        t,
        f_a: (keep_p + keep_m) * half,
        g_a: (flip_p - flip_m) * half,
        f_b: i * (keep_p - keep_m) * half,
        g_b: -i * (flip_p + flip_m) * half,
        p_a: i * (keep_m - keep_p) * half,
        q_a: -i * (flip_p + flip_m) * half,
        p_b: (keep_p + keep_m) * half,
        q_b: (flip_m - flip_p) * half,
    })
}

/// Dispatches on the coupling kind. The uncoupled system evolves freely.
pub fn propagator_coefficients(sys: &OscillatorSystem, t: f64) -> Result<PropagatorCoefficients> {
    match sys.interaction() {
        Interaction::Rwa { .. } => rwa_coefficients(sys, t),
        Interaction::Linear { .. } => linear_coefficients(sys, t),
        Interaction::None => {
            check_time(t)?;
            let mut c = PropagatorCoefficients::identity(t);
            c.f_a = Complex64::from_polar(1.0, -sys.omega_a() * t);
            c.p_b = Complex64::from_polar(1.0, -sys.omega_b() * t);
            Ok(c)
        }
        other => Err(Error::Unsupported(format!(
            "no closed form for the {} coupling; use the Fock oracle",
            other.kind()
        ))),
    }
}

/// Heat absorbed by each oscillator, given the propagator amplitudes.
pub fn heat_changes(
    coeffs: &PropagatorCoefficients,
    prep: &ThermalPreparation,
    sys: &OscillatorSystem,
) -> Result<HeatReport> {
    let (wa, wb) = (sys.omega_a(), sys.omega_b());
    let xa = thermal_occupation(prep.beta_a(), wa)?;
    let xb = thermal_occupation(prep.beta_b(), wb)?;
    let c = coeffs;
    let dq_a = wa
        * ((c.f_a.norm_sqr() + c.g_a.norm_sqr() - 1.0) * xa
            + (c.f_b.norm_sqr() + c.g_b.norm_sqr()) * xb
            + c.g_a.norm_sqr()
            + c.g_b.norm_sqr());
    let dq_b = wb
        * ((c.p_b.norm_sqr() + c.q_b.norm_sqr() - 1.0) * xb
            + (c.p_a.norm_sqr() + c.q_a.norm_sqr()) * xa
            + c.q_a.norm_sqr()
            + c.q_b.norm_sqr());
    Ok(HeatReport::new(c.t, dq_a, dq_b, prep, sys.energy_scale()))
}

/// Closed-form heat report at time `t`.
pub fn heat_at(sys: &OscillatorSystem, prep: &ThermalPreparation, t: f64) -> Result<HeatReport> {
    heat_changes(&propagator_coefficients(sys, t)?, prep, sys)
}

/// `(1/τ) ∫_0^τ ΔQ_{a→b}(t) dt`.
pub fn time_averaged_heat(
    sys: &OscillatorSystem,
    prep: &ThermalPreparation,
    tau: f64,
    quad_tol: f64,
) -> Result<f64> {
    Ok(time_averaged_series(sys, prep, &[tau], quad_tol)?[0])
}

/// Time averages at every `τ` in `taus`, integrating once across the sorted grid.
pub fn time_averaged_series(
    sys: &OscillatorSystem,
    prep: &ThermalPreparation,
    taus: &[f64],
    quad_tol: f64,
) -> Result<Vec<f64>> {
    if let Some(&bad) = taus.iter().find(|&&tau| !(tau > 0.0 && tau.is_finite())) {
        return Err(Error::Domain(format!("averaging window must be positive, got {bad}")));
    }
    if !(quad_tol > 0.0) {
        return Err(Error::Domain(format!("quadrature tolerance must be positive, got {quad_tol}")));
    }
    if let Interaction::Linear { g } = sys.interaction() {
        check_singular(sys.omega_a(), g)?;
    }
    // Validate once so the integrand can be infallible.
    heat_at(sys, prep, 0.0)?;
    let transfer = |t: f64| heat_at(sys, prep, t).map(|r| r.dq_ab).unwrap_or(f64::NAN);

    let mut order: Vec<usize> = (0..taus.len()).collect();
    order.sort_by(|&i, &j| taus[i].total_cmp(&taus[j]));
    let mut out = vec![0.0; taus.len()];
    let (mut prev, mut acc) = (0.0, 0.0);
    for idx in order {
        let tau = taus[idx];
        acc += adaptive_simpson(&transfer, prev, tau, quad_tol, MAX_DEPTH);
        prev = tau;
        out[idx] = acc / tau;
    }
    Ok(out)
}

fn resonant_frequency(sys: &OscillatorSystem) -> Result<f64> {
    if sys.is_resonant() {
        Ok(sys.omega_a())
    } else {
        Err(Error::Unsupported(format!(
            "closed forms need ω_a = ω_b (got {} and {})",
            sys.omega_a(),
            sys.omega_b()
        )))
    }
}

fn check_singular(omega: f64, g: f64) -> Result<()> {
    if g == 0.5 * omega {
        Err(Error::Singular {
            g,
            half_omega: 0.5 * omega,
        })
    } else {
        Ok(())
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be non-negative, got {t}")))
    }
}

/// Closed-form model packaged for repeated evaluation.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticModel {
    pub sys: OscillatorSystem,
    pub prep: ThermalPreparation,
}

impl AnalyticModel {
    pub fn new(sys: OscillatorSystem, prep: ThermalPreparation) -> Result<Self> {
        heat_at(&sys, &prep, 0.0)?;
        Ok(AnalyticModel { sys, prep })
    }

    pub fn report(&self, t: f64) -> Result<HeatReport> {
        heat_at(&self.sys, &self.prep, t)
    }
}
