//! Thermodynamic quantities of the coupled oscillators computed from first
//! principles on the truncated Fock space.

use super::config::FockConfig;
use super::entropy::{log_hermitian, support_weight, von_neumann_entropy};
use super::evolution::{Dynamics, EigenObservable, Propagator};
use super::hamiltonian::{build_hamiltonian, nonstandard_energies, Hamiltonian};
use super::operator::{DenseOperator, C64};
use super::thermal::ProductThermalState;
use crate::error::{Error, Result};
use crate::model::{HeatReport, OscillatorSystem, ThermalPreparation};

/// Function of the four bare energies `(ω_a^n, ω_b^m, ω_a^p, ω_b^q)` of a transition
/// `|n,m⟩ → |p,q⟩`.
pub type BareEnergyFn<'a> = dyn Fn(f64, f64, f64, f64) -> f64 + 'a;

/// Outcome of the exponential classical average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JarzynskiReport {
    /// `E[e^{β_a(ω_a − ω'_a) + β_b(ω_b − ω'_b)}]_t`, ideally 1.
    pub value: f64,
    /// `E[β_a(ω_a − ω'_a) + β_b(ω_b − ω'_b)]_t = −ΔS₀`.
    pub mean_exponent: f64,
    /// `e^{E[f]} ≤ E[e^f]`
    pub jensen_holds: bool,
}

/// Entropy balance of mode `a`: `ΔS_a = Δ_iS_a + Δ_eS_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyProduction {
    pub ds_a: f64,
    /// `S(ρ(t) ‖ ρ_a(t) ⊗ ρ_b)`
    pub ds_i_a: f64,
    /// `−β_b ΔQ_b(t)`
    pub ds_e_a: f64,
}

/// Heat transfer under the subsystem energies `H − H_b` and `H − H_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrueHeatTransfer {
    pub dq_ab_true: f64,
    pub dq_ab: f64,
    /// `−(β_b/β_a) ΔQ_b`
    pub reversed_a: f64,
    /// `−(β_a/β_b) ΔQ_a`
    pub reversed_b: f64,
}

/// One system, one preparation and one truncation, diagonalized once.
///
/// Everything after construction is read-only, so a simulation can be shared
/// across threads evaluating different times.
#[derive(Debug, Clone)]
pub struct FockSimulation {
    sys: OscillatorSystem,
    prep: ThermalPreparation,
    cfg: FockConfig,
    ham: Hamiltonian,
    thermal: ProductThermalState,
    dynamics: Dynamics,
    obs_a: EigenObservable,
    obs_b: EigenObservable,
    initial_a: f64,
    initial_b: f64,
}

impl FockSimulation {
    pub fn new(sys: &OscillatorSystem, prep: &ThermalPreparation, cfg: &FockConfig) -> Result<Self> {
        cfg.validate(sys, prep)?;
        let ham = build_hamiltonian(sys, cfg)?;
        let thermal = ProductThermalState::new(sys, prep, cfg)?;
        let propagator = Propagator::new(&ham.h, cfg)?;
        let dynamics = Dynamics::new(propagator, &thermal.operator());
        let obs_a = dynamics.observable(&ham.h_a);
        let obs_b = dynamics.observable(&ham.h_b);
        let initial_a = dynamics.expectation(&obs_a, 0.0).re;
        let initial_b = dynamics.expectation(&obs_b, 0.0).re;
        Ok(FockSimulation {
            sys: *sys,
            prep: *prep,
            cfg: *cfg,
            ham,
            thermal,
            dynamics,
            obs_a,
            obs_b,
            initial_a,
            initial_b,
        })
    }

    pub fn system(&self) -> &OscillatorSystem {
        &self.sys
    }

    pub fn preparation(&self) -> &ThermalPreparation {
        &self.prep
    }

    pub fn config(&self) -> &FockConfig {
        &self.cfg
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.ham
    }

    pub fn thermal(&self) -> &ProductThermalState {
        &self.thermal
    }

    pub fn initial_state(&self) -> DenseOperator {
        self.thermal.operator()
    }

    pub fn state(&self, t: f64) -> DenseOperator {
        self.dynamics.state(t)
    }

    pub fn unitary(&self, t: f64) -> DenseOperator {
        self.dynamics.propagator().unitary(t)
    }

    /// `tr(O ρ(t))` for an arbitrary observable (rotates `O` on every call).
    pub fn expectation(&self, op: &DenseOperator, t: f64) -> f64 {
        let obs = self.dynamics.observable(op);
        self.dynamics.expectation(&obs, t).re
    }

    /// `ΔQ_c = tr(H_c ρ(t)) − tr(H_c ρ(0))`
    pub fn heat_report(&self, t: f64) -> HeatReport {
        let dq_a = self.dynamics.expectation(&self.obs_a, t).re - self.initial_a;
        let dq_b = self.dynamics.expectation(&self.obs_b, t).re - self.initial_b;
        HeatReport::new(t, dq_a, dq_b, &self.prep, self.sys.energy_scale())
    }

    /// `Σ_{nmpq} λ_a^n λ_b^m |U_{pq;nm}(t)|² f(ω_a^n, ω_b^m, ω_a^p, ω_b^q)`
    pub fn classical_average(&self, f: &BareEnergyFn<'_>, t: f64) -> f64 {
        let u = self.unitary(t);
        self.classical_average_with(&u, f)
    }

    fn classical_average_with(&self, u: &DenseOperator, f: &BareEnergyFn<'_>) -> f64 {
        let (n_a, n_b) = (self.cfg.n_a, self.cfg.n_b);
        let (wa, wb) = (self.sys.omega_a(), self.sys.omega_b());
        let mut total = 0.0;
        for n in 0..n_a {
            for m in 0..n_b {
                let weight = self.thermal.weight(n, m);
                let col = n * n_b + m;
                let (en, em) = (wa * n as f64, wb * m as f64);
                let mut inner = 0.0;
                for p in 0..n_a {
                    for q in 0..n_b {
                        let prob = u.get(p * n_b + q, col).norm_sqr();
                        inner += prob * f(en, em, wa * p as f64, wb * q as f64);
                    }
                }
                total += weight * inner;
            }
        }
        total
    }

    /// The exponential average that equals 1, together with a Jensen check.
    pub fn jarzynski_identity(&self, t: f64) -> JarzynskiReport {
        let u = self.unitary(t);
        let (ba, bb) = (self.prep.beta_a(), self.prep.beta_b());
        let exponent = move |wa: f64, wb: f64, wa2: f64, wb2: f64| ba * (wa - wa2) + bb * (wb - wb2);
        let value = self.classical_average_with(&u, &|w, x, y, z| exponent(w, x, y, z).exp());
        let mean_exponent = self.classical_average_with(&u, &exponent);
        JarzynskiReport {
            value,
            mean_exponent,
            jensen_holds: mean_exponent.exp() <= value * (1.0 + 1e-12),
        }
    }

    /// Entropy change of mode `a` split into production and flux.
    pub fn entropy_production(&self, t: f64) -> Result<EntropyProduction> {
        let (n_a, n_b) = (self.cfg.n_a, self.cfg.n_b);
        let rho_t = self.state(t);
        let rho_a_t = rho_t.partial_trace_b(n_a, n_b)?;
        let rho_b_t = rho_t.partial_trace_a(n_a, n_b)?;
        let rho_a0 = self.thermal.state_a();
        let rho_b0 = self.thermal.state_b();

        let ds_a = von_neumann_entropy(&rho_a_t)? - von_neumann_entropy(&rho_a0)?;

        // S(ρ‖σ) with σ = ρ_a(t) ⊗ ρ_b: ln σ = ln ρ_a(t) ⊗ I + I ⊗ ln ρ_b.
        // ρ always lies in supp ρ_a(t) ⊗ H_b, so only the b factor needs checking.
        let outside = support_weight(&rho_b_t, &rho_b0)?;
        if outside > 1e-10 {
            return Err(Error::Support(outside));
        }
        let log_a = log_hermitian(&rho_a_t)?;
        let log_b = log_hermitian(&rho_b0)?;
        let cross = log_a.expectation(&rho_a_t).re + log_b.expectation(&rho_b_t).re;
        let ds_i_a = -von_neumann_entropy(&rho_t)? - cross;

        let dq_b = self.heat_report(t).dq_b;
        Ok(EntropyProduction {
            ds_a,
            ds_i_a,
            ds_e_a: -self.prep.beta_b() * dq_b,
        })
    }

    /// `ΔQ^true_{a→b} = ΔQ_b^true − ΔQ_a^true` next to `ΔQ_{a→b}`.
    pub fn true_heat_transfer(&self, t: f64) -> TrueHeatTransfer {
        let (true_a, true_b) = nonstandard_energies(&self.ham);
        let delta = |op: &DenseOperator| {
            let obs = self.dynamics.observable(op);
            self.dynamics.expectation(&obs, t).re - self.dynamics.expectation(&obs, 0.0).re
        };
        let dq_ab_true = delta(&true_b) - delta(&true_a);
        let report = self.heat_report(t);
        let (ba, bb) = (self.prep.beta_a(), self.prep.beta_b());
        TrueHeatTransfer {
            dq_ab_true,
            dq_ab: report.dq_ab,
            reversed_a: -(bb / ba) * report.dq_b,
            reversed_b: -(ba / bb) * report.dq_a,
        }
    }

    /// `tr_b[V (I_a ⊗ ρ_b(t))]`
    pub fn effective_hamiltonian(&self, t: f64) -> Result<DenseOperator> {
        let (n_a, n_b) = (self.cfg.n_a, self.cfg.n_b);
        let rho_b_t = self.state(t).partial_trace_a(n_a, n_b)?;
        effective_hamiltonian_of(&self.ham.v, &rho_b_t, n_a, n_b)
    }
}

/// `tr_b[V (I_a ⊗ ρ_b)]` by explicit contraction over the mode-b index:
/// `(H_eff)_ij = Σ_kl V_{(i,k),(j,l)} (ρ_b)_{lk}`.
pub fn effective_hamiltonian_of(
    v: &DenseOperator,
    rho_b: &DenseOperator,
    n_a: usize,
    n_b: usize,
) -> Result<DenseOperator> {
    if v.dim() != n_a * n_b {
        return Err(Error::Dimension {
            expected: n_a * n_b,
            got: v.dim(),
        });
    }
    if rho_b.dim() != n_b {
        return Err(Error::Dimension {
            expected: n_b,
            got: rho_b.dim(),
        });
    }
    Ok(DenseOperator::from_fn(n_a, |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..n_b {
            for l in 0..n_b {
                acc += v.get(i * n_b + k, j * n_b + l) * rho_b.get(l, k);
            }
        }
        acc
    }))
}

/// `(H1_eff, H2_eff)`: the part diagonal in the number basis of `H_a`, and the rest.
pub fn diagonal_split(h_eff: &DenseOperator) -> (DenseOperator, DenseOperator) {
    h_eff.diagonal_split()
}

/// One-shot heat report; builds and diagonalizes the system.
pub fn heat_changes_numeric(
    sys: &OscillatorSystem,
    prep: &ThermalPreparation,
    cfg: &FockConfig,
    t: f64,
) -> Result<HeatReport> {
    Ok(FockSimulation::new(sys, prep, cfg)?.heat_report(t))
}
