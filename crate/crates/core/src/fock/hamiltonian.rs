use super::config::FockConfig;
use super::modes::SingleMode;
use super::operator::{DenseOperator, C64};
use crate::error::{Error, Result};
use crate::model::{Interaction, OscillatorSystem};

/// `H = H0 + V` with `H0 = H_a + H_b`.
///
/// Zero-point energies are dropped everywhere, so `H_c = ω_c c†c` and for the
/// minimal couplings `V` is the full `H − H0` including the `q²x²/2m` self-energy.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub h: DenseOperator,
    pub h0: DenseOperator,
    pub v: DenseOperator,
    pub h_a: DenseOperator,
    pub h_b: DenseOperator,
}

pub fn build_hamiltonian(sys: &OscillatorSystem, cfg: &FockConfig) -> Result<Hamiltonian> {
    let factors = Factors::new(sys, cfg);
    let h_a = factors.on_a(&factors.a.number.scale_real(sys.omega_a()));
    let h_b = factors.on_b(&factors.b.number.scale_real(sys.omega_b()));
    let v = factors.interaction(sys.interaction());
    finish(h_a, h_b, v)
}

fn finish(h_a: DenseOperator, h_b: DenseOperator, v: DenseOperator) -> Result<Hamiltonian> {
    let h0 = &h_a + &h_b;
    let h = &h0 + &v;
    for op in [&h, &v] {
        op.ensure_hermitian(1e-12)?;
    }
    Ok(Hamiltonian { h, h0, v, h_a, h_b })
}

/// Single-mode operators of both factors. Every composite operator is a sum of
/// Kronecker products of these, so no full-space matrix product is ever needed.
struct Factors {
    a: SingleMode,
    b: SingleMode,
    id_a: DenseOperator,
    id_b: DenseOperator,
}

impl Factors {
    fn new(sys: &OscillatorSystem, cfg: &FockConfig) -> Self {
        Factors {
            a: SingleMode::new(cfg.n_a, sys.mass(), sys.omega_a()),
            b: SingleMode::new(cfg.n_b, sys.mass(), sys.omega_b()),
            id_a: DenseOperator::identity(cfg.n_a),
            id_b: DenseOperator::identity(cfg.n_b),
        }
    }

    fn on_a(&self, op: &DenseOperator) -> DenseOperator {
        DenseOperator::kron(op, &self.id_b)
    }

    fn on_b(&self, op: &DenseOperator) -> DenseOperator {
        DenseOperator::kron(&self.id_a, op)
    }

    fn interaction(&self, interaction: Interaction) -> DenseOperator {
        let (a, b) = (&self.a, &self.b);
        let i = C64::new(0.0, 1.0);
        match interaction {
            Interaction::None => DenseOperator::zeros(self.id_a.dim() * self.id_b.dim()),
            Interaction::Rwa { g } => {
                let forward = DenseOperator::kron(&a.lower, &b.raise);
                let backward = DenseOperator::kron(&a.raise, &b.lower);
                (&forward - &backward).scale(i * g)
            }
            Interaction::Linear { g } => {
                DenseOperator::kron(&(&a.raise + &a.lower), &(&b.raise - &b.lower)).scale(i * g)
            }
            Interaction::MinimalA { mass, q } => {
                // (p_a − q x_b)²/2m − p_a²/2m
                let cross = DenseOperator::kron(&a.momentum, &b.position).scale_real(-q / mass);
                &cross + &self.on_b(&b.position_sq.scale_real(q * q / (2.0 * mass)))
            }
            Interaction::MinimalB { mass, q } => {
                // (p_b + q x_a)²/2m − p_b²/2m
                let cross = DenseOperator::kron(&a.position, &b.momentum).scale_real(q / mass);
                &cross + &self.on_a(&a.position_sq.scale_real(q * q / (2.0 * mass)))
            }
        }
    }
}

/// Subsystem energies `H_a^true = H − H_b`, `H_b^true = H − H_a`.
pub fn nonstandard_energies(ham: &Hamiltonian) -> (DenseOperator, DenseOperator) {
    (&ham.h - &ham.h_b, &ham.h - &ham.h_a)
}

/// `½m(ẋ_c² + ω_c²x_c²)` built from the mechanical momenta of a minimally coupled
/// system, with the zero-point energy removed. For `MinimalA`, `mẋ_a = p_a − q x_b`
/// and `ẋ_b = p_b/m`; for `MinimalB`, `mẋ_b = p_b + q x_a` and `ẋ_a = p_a/m`.
pub fn mechanical_energies(sys: &OscillatorSystem, cfg: &FockConfig) -> Result<(DenseOperator, DenseOperator)> {
    let f = Factors::new(sys, cfg);
    let m = sys.mass();
    let oscillator = |mech_sq: &DenseOperator, x_sq: &DenseOperator, omega: f64, id: &DenseOperator| {
        let kinetic = mech_sq.scale_real(1.0 / (2.0 * m));
        let potential = x_sq.scale_real(0.5 * m * omega * omega);
        &(&kinetic + &potential) - &id.scale_real(0.5 * omega)
    };
    let (wa, wb) = (sys.omega_a(), sys.omega_b());
    let free_a = f.on_a(&oscillator(&f.a.momentum_sq, &f.a.position_sq, wa, &f.id_a));
    let free_b = f.on_b(&oscillator(&f.b.momentum_sq, &f.b.position_sq, wb, &f.id_b));
    match sys.interaction() {
        Interaction::MinimalA { q, .. } => {
            // (p_a − q x_b)² = p_a² − 2q p_a x_b + q² x_b², factors commute.
            let cross = DenseOperator::kron(&f.a.momentum, &f.b.position).scale_real(-q / m);
            let self_energy = f.on_b(&f.b.position_sq.scale_real(q * q / (2.0 * m)));
            Ok((&(&free_a + &cross) + &self_energy, free_b))
        }
        Interaction::MinimalB { q, .. } => {
            let cross = DenseOperator::kron(&f.a.position, &f.b.momentum).scale_real(q / m);
            let self_energy = f.on_a(&f.a.position_sq.scale_real(q * q / (2.0 * m)));
            Ok((free_a, &(&free_b + &cross) + &self_energy))
        }
        other => Err(Error::Unsupported(format!(
            "mechanical energies are defined for minimal couplings, got {}",
            other.kind()
        ))),
    }
}

/// Lowest-`k` spectra of the two minimal-coupling forms.
#[derive(Debug, Clone)]
pub struct SpectrumMatch {
    pub lowest_a: Vec<f64>,
    pub lowest_b: Vec<f64>,
    pub max_discrepancy: f64,
}

/// Compares the lowest `k` eigenvalues of a `MinimalA` and a `MinimalB` Hamiltonian.
pub fn spectrum_match(
    sys_a: &OscillatorSystem,
    sys_b: &OscillatorSystem,
    cfg: &FockConfig,
    k: usize,
) -> Result<SpectrumMatch> {
    for (sys, want) in [(sys_a, "minimal-a"), (sys_b, "minimal-b")] {
        if sys.kind().as_str() != want {
            return Err(Error::Unsupported(format!("expected a {want} system, got {}", sys.kind())));
        }
    }
    let allowed = cfg.dim() / 4;
    if k == 0 || k > allowed {
        return Err(Error::TruncationBand { requested: k, allowed });
    }
    let spec_a = build_hamiltonian(sys_a, cfg)?.h.eigenvalues_hermitian()?;
    let spec_b = build_hamiltonian(sys_b, cfg)?.h.eigenvalues_hermitian()?;
    let lowest_a = spec_a[..k].to_vec();
    let lowest_b = spec_b[..k].to_vec();
    let max_discrepancy = lowest_a
        .iter()
        .zip(&lowest_b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok(SpectrumMatch {
        lowest_a,
        lowest_b,
        max_discrepancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize) -> FockConfig {
        FockConfig::uniform(n, 1e-12).unwrap()
    }

    /// Builds `V` from full-space operator products, independently of the Kronecker path.
    fn interaction_from_products(sys: &OscillatorSystem, c: &FockConfig) -> DenseOperator {
        let ops = crate::fock::ModeOperators::for_system(c, sys);
        let i = C64::new(0.0, 1.0);
        match sys.interaction() {
            Interaction::None => DenseOperator::zeros(ops.dim()),
            Interaction::Rwa { g } => (&(&ops.a * &ops.b_dag) - &(&ops.a_dag * &ops.b)).scale(i * g),
            Interaction::Linear { g } => (&(&ops.a_dag + &ops.a) * &(&ops.b_dag - &ops.b)).scale(i * g),
            Interaction::MinimalA { mass, q } => {
                &(&ops.p_a * &ops.x_b).scale_real(-q / mass) + &ops.x_b_sq.scale_real(q * q / (2.0 * mass))
            }
            Interaction::MinimalB { mass, q } => {
                &(&ops.x_a * &ops.p_b).scale_real(q / mass) + &ops.x_a_sq.scale_real(q * q / (2.0 * mass))
            }
        }
    }

    #[test]
    fn kronecker_build_matches_operator_products() {
        let c = FockConfig::new(5, 7, 1e-2, 1e-10).unwrap();
        let systems = [
            OscillatorSystem::uncoupled(1.0, 1.3).unwrap(),
            OscillatorSystem::rwa(1.0, 0.2).unwrap(),
            OscillatorSystem::linear(1.0, 0.7).unwrap(),
            OscillatorSystem::new(1.0, 1.4, Interaction::MinimalA { mass: 2.0, q: 0.3 }).unwrap(),
            OscillatorSystem::new(0.8, 1.4, Interaction::MinimalB { mass: 0.5, q: 0.3 }).unwrap(),
        ];
        for sys in systems {
            let ham = build_hamiltonian(&sys, &c).unwrap();
            let reference = interaction_from_products(&sys, &c);
            assert!((&ham.v - &reference).max_abs() < 1e-14, "{:?}", sys.kind());
            let ops = crate::fock::ModeOperators::for_system(&c, &sys);
            assert!((&ham.h_a - &ops.num_a.scale_real(sys.omega_a())).max_abs() == 0.0);
            assert!((&ham.h_b - &ops.num_b.scale_real(sys.omega_b())).max_abs() == 0.0);
        }
    }

    #[test]
    fn uncoupled_has_zero_interaction() {
        let sys = OscillatorSystem::uncoupled(1.0, 1.5).unwrap();
        let ham = build_hamiltonian(&sys, &cfg(6)).unwrap();
        assert_eq!(ham.v.max_abs(), 0.0);
        assert_eq!((&ham.h - &ham.h0).max_abs(), 0.0);
    }

    #[test]
    fn rwa_conserves_bare_energy_linear_does_not() {
        let rwa = build_hamiltonian(&OscillatorSystem::rwa(1.0, 0.1).unwrap(), &cfg(10)).unwrap();
        assert!(DenseOperator::commutator(&rwa.h0, &rwa.v).frobenius_norm() < 1e-12);
        let lin = build_hamiltonian(&OscillatorSystem::linear(1.0, 0.1).unwrap(), &cfg(10)).unwrap();
        assert!(DenseOperator::commutator(&lin.h0, &lin.v).frobenius_norm() > 0.1);
    }

    #[test]
    fn all_kinds_are_hermitian() {
        let systems = [
            OscillatorSystem::rwa(1.0, 0.2).unwrap(),
            OscillatorSystem::linear(1.0, 0.7).unwrap(),
            OscillatorSystem::resonant(1.0, Interaction::MinimalA { mass: 2.0, q: 0.3 }).unwrap(),
            OscillatorSystem::new(1.0, 1.4, Interaction::MinimalB { mass: 0.5, q: 0.3 }).unwrap(),
        ];
        for sys in systems {
            let ham = build_hamiltonian(&sys, &cfg(7)).unwrap();
            for op in [&ham.h, &ham.h0, &ham.v] {
                assert!(op.hermiticity_defect() < 1e-12, "{:?}", sys.kind());
            }
        }
    }

    #[test]
    fn nonstandard_energies_sum_to_h_plus_v() {
        let ham = build_hamiltonian(&OscillatorSystem::linear(1.0, 0.3).unwrap(), &cfg(8)).unwrap();
        let (ta, tb) = nonstandard_energies(&ham);
        let residual = &(&ta + &tb) - &(&ham.h + &ham.v);
        assert!(residual.max_abs() < 1e-12);
    }

    #[test]
    fn mechanical_energy_equals_h_minus_other_bare_energy() {
        let c = cfg(9);
        let sys_a = OscillatorSystem::resonant(1.0, Interaction::MinimalA { mass: 1.0, q: 0.2 }).unwrap();
        let ham = build_hamiltonian(&sys_a, &c).unwrap();
        let (true_a, true_b) = mechanical_energies(&sys_a, &c).unwrap();
        assert!((&true_a - &(&ham.h - &ham.h_b)).max_abs() < 1e-12);
        assert!((&true_b - &ham.h_b).max_abs() < 1e-12);

        let sys_b = OscillatorSystem::resonant(1.0, Interaction::MinimalB { mass: 1.0, q: 0.2 }).unwrap();
        let ham = build_hamiltonian(&sys_b, &c).unwrap();
        let (true_a, true_b) = mechanical_energies(&sys_b, &c).unwrap();
        assert!((&true_b - &(&ham.h - &ham.h_a)).max_abs() < 1e-12);
        assert!((&true_a - &ham.h_a).max_abs() < 1e-12);

        assert!(mechanical_energies(&OscillatorSystem::linear(1.0, 0.1).unwrap(), &c).is_err());
    }

    #[test]
    fn zero_charge_spectra_coincide() {
        let c = cfg(8);
        let a = OscillatorSystem::resonant(1.0, Interaction::MinimalA { mass: 1.0, q: 0.0 }).unwrap();
        let b = OscillatorSystem::resonant(1.0, Interaction::MinimalB { mass: 1.0, q: 0.0 }).unwrap();
        let m = spectrum_match(&a, &b, &c, 5).unwrap();
        assert!(m.max_discrepancy < 1e-13);
        assert!(matches!(spectrum_match(&a, &b, &c, 17), Err(Error::TruncationBand { .. })));
        assert!(spectrum_match(&b, &a, &c, 5).is_err());
    }
}
