//! Ladder, number, position and momentum operators of both modes, lifted to
//! the composite space.

use super::config::FockConfig;
use super::operator::{DenseOperator, C64};
use crate::model::OscillatorSystem;

/// Single-mode annihilation operator: `√k` at `(k−1, k)`.
pub fn annihilation(levels: usize) -> DenseOperator {
    DenseOperator::from_fn(levels, |i, j| {
        if j == i + 1 {
            C64::new((j as f64).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

pub fn number(levels: usize) -> DenseOperator {
    DenseOperator::from_real_diagonal(&(0..levels).map(|n| n as f64).collect::<Vec<_>>())
}

/// Operators of one mode on its own factor space.
#[derive(Debug, Clone)]
pub(crate) struct SingleMode {
    pub(crate) lower: DenseOperator,
    pub(crate) raise: DenseOperator,
    pub(crate) number: DenseOperator,
    pub(crate) position: DenseOperator,
    pub(crate) momentum: DenseOperator,
    pub(crate) position_sq: DenseOperator,
    pub(crate) momentum_sq: DenseOperator,
}

impl SingleMode {
    /// `x = √(1/2mω)(c† + c)`, `p = i√(mω/2)(c† − c)`. The squares use the exact
    /// matrix elements `(c† ± c)² = c†² + c² ± (2N + 1)` rather than products of
    /// truncated matrices, which would corrupt the top level.
    pub(crate) fn new(levels: usize, mass: f64, omega: f64) -> Self {
        let lower = annihilation(levels);
        let raise = lower.adjoint();
        let number = number(levels);
        let x_scale = (1.0 / (2.0 * mass * omega)).sqrt();
        let p_scale = (mass * omega / 2.0).sqrt();
        let position = (&raise + &lower).scale_real(x_scale);
        let momentum = (&raise - &lower).scale(C64::new(0.0, p_scale));
        let pair = &(&raise * &raise) + &(&lower * &lower);
        let two_n_plus_one = DenseOperator::from_real_diagonal(
            &(0..levels).map(|n| 2.0 * n as f64 + 1.0).collect::<Vec<_>>(),
        );
        let position_sq = (&pair + &two_n_plus_one).scale_real(x_scale * x_scale);
        let momentum_sq = (&pair - &two_n_plus_one).scale_real(-p_scale * p_scale);
        SingleMode {
            lower,
            raise,
            number,
            position,
            momentum,
            position_sq,
            momentum_sq,
        }
    }
}

/// All mode operators on the composite space.
#[derive(Debug, Clone)]
pub struct ModeOperators {
    pub n_a: usize,
    pub n_b: usize,
    pub a: DenseOperator,
    pub a_dag: DenseOperator,
    pub b: DenseOperator,
    pub b_dag: DenseOperator,
    pub num_a: DenseOperator,
    pub num_b: DenseOperator,
    pub x_a: DenseOperator,
    pub p_a: DenseOperator,
    pub x_b: DenseOperator,
    pub p_b: DenseOperator,
    pub x_a_sq: DenseOperator,
    pub p_a_sq: DenseOperator,
    pub x_b_sq: DenseOperator,
    pub p_b_sq: DenseOperator,
}

impl ModeOperators {
    pub fn new(cfg: &FockConfig, mass: f64, omega_a: f64, omega_b: f64) -> Self {
        let (n_a, n_b) = (cfg.n_a, cfg.n_b);
        let ma = SingleMode::new(n_a, mass, omega_a);
        let mb = SingleMode::new(n_b, mass, omega_b);
        let id_a = DenseOperator::identity(n_a);
        let id_b = DenseOperator::identity(n_b);
        let on_a = |op: &DenseOperator| DenseOperator::kron(op, &id_b);
        let on_b = |op: &DenseOperator| DenseOperator::kron(&id_a, op);
        ModeOperators {
            n_a,
            n_b,
            a: on_a(&ma.lower),
            a_dag: on_a(&ma.raise),
            b: on_b(&mb.lower),
            b_dag: on_b(&mb.raise),
            num_a: on_a(&ma.number),
            num_b: on_b(&mb.number),
            x_a: on_a(&ma.position),
            p_a: on_a(&ma.momentum),
            x_b: on_b(&mb.position),
            p_b: on_b(&mb.momentum),
            x_a_sq: on_a(&ma.position_sq),
            p_a_sq: on_a(&ma.momentum_sq),
            x_b_sq: on_b(&mb.position_sq),
            p_b_sq: on_b(&mb.momentum_sq),
        }
    }

    pub fn for_system(cfg: &FockConfig, sys: &OscillatorSystem) -> Self {
        Self::new(cfg, sys.mass(), sys.omega_a(), sys.omega_b())
    }

    pub fn dim(&self) -> usize {
        self.n_a * self.n_b
    }
}

/// Mode operators with `m = ω = 1`.
pub fn build_operators(cfg: &FockConfig) -> ModeOperators {
    ModeOperators::new(cfg, 1.0, 1.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n_a: usize, n_b: usize) -> FockConfig {
        FockConfig::new(n_a, n_b, 1e-12, 1e-10).unwrap()
    }

    #[test]
    fn two_level_annihilation() {
        let a = annihilation(2);
        assert_eq!(a.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(a.get(0, 0), C64::new(0.0, 0.0));
        assert_eq!(a.get(1, 0), C64::new(0.0, 0.0));
        assert_eq!(a.get(1, 1), C64::new(0.0, 0.0));
    }

    #[test]
    fn truncated_ccr_differs_only_in_corner() {
        for n in [2, 5, 9] {
            let a = annihilation(n);
            let comm = DenseOperator::commutator(&a, &a.adjoint());
            for i in 0..n {
                for j in 0..n {
                    let expected = match (i == j, i == n - 1) {
                        (true, true) => -(n as f64 - 1.0),
                        (true, false) => 1.0,
                        _ => 0.0,
                    };
                    assert!((comm.get(i, j) - C64::new(expected, 0.0)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn different_modes_commute_exactly() {
        let ops = build_operators(&cfg(4, 3));
        assert_eq!(DenseOperator::commutator(&ops.a, &ops.b).max_abs(), 0.0);
        assert_eq!(DenseOperator::commutator(&ops.a, &ops.b_dag).max_abs(), 0.0);
        assert_eq!(DenseOperator::commutator(&ops.p_a, &ops.x_b).max_abs(), 0.0);
    }

    #[test]
    fn squares_are_exact_below_the_cutoff() {
        let ops = ModeOperators::new(&cfg(8, 2), 1.7, 0.6, 1.0);
        let naive = &ops.x_a * &ops.x_a;
        let diff = &naive - &ops.x_a_sq;
        // Only the top level of mode a (composite rows 14, 15) may differ.
        for i in 0..14 {
            for j in 0..14 {
                assert!(diff.get(i, j).norm() < 1e-14);
            }
        }
        // p²/2m + ½mω²x² = ω(N + ½) on every level.
        let h = &ops.p_a_sq.scale_real(1.0 / (2.0 * 1.7)) + &ops.x_a_sq.scale_real(0.5 * 1.7 * 0.36);
        let expected = &ops.num_a.scale_real(0.6) + &DenseOperator::identity(16).scale_real(0.3);
        assert!((&h - &expected).frobenius_norm() < 1e-13);
    }

    #[test]
    fn position_momentum_are_hermitian() {
        let ops = build_operators(&cfg(6, 5));
        for op in [&ops.x_a, &ops.p_a, &ops.x_b, &ops.p_b, &ops.x_a_sq, &ops.p_b_sq] {
            assert!(op.hermiticity_defect() < 1e-15);
        }
    }
}
