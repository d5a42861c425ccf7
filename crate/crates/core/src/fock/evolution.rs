//! Exact unitary evolution from the eigendecomposition of `H`.
//!
//! With `H = Z Λ Z†`, `U(t) = Z e^{−iΛt} Z†`. Observables are rotated into the
//! eigenbasis once, after which every expectation value costs `O(dim²)`:
//!
//! ```text
//! tr(O ρ(t)) = Σ_ij (Z†OZ)_ji · e^{−i(E_i − E_j)t} · (Z†ρ₀Z)_ij
//! ```

use faer::Mat;

use super::config::FockConfig;
use super::operator::{DenseOperator, C64};
use crate::error::{Error, Result};

/// Cached spectral decomposition of a Hermitian Hamiltonian. Read-only after construction.
#[derive(Debug, Clone)]
pub struct Propagator {
    energies: Vec<f64>,
    basis: Mat<C64>,
}

impl Propagator {
    /// Diagonalizes `h` and checks the residual `‖HZ − ZΛ‖_F` against `cfg.evol_tol`.
    pub fn new(h: &DenseOperator, cfg: &FockConfig) -> Result<Self> {
        let eig = h.eigh()?;
        let n = h.dim();
        let hz = h.as_mat() * eig.vectors.as_ref();
        let mut residual = 0.0;
        for j in 0..n {
            for i in 0..n {
                residual += (hz[(i, j)] - eig.vectors[(i, j)] * eig.values[j]).norm_sqr();
            }
        }
        let residual = residual.sqrt();
        let scale = h.frobenius_norm().max(1.0);
        if residual > cfg.evol_tol * scale {
            return Err(Error::Eigen(format!(
                "eigendecomposition residual {residual:.3e} exceeds {:.3e}",
                cfg.evol_tol * scale
            )));
        }
        Ok(Propagator {
            energies: eig.values,
            basis: eig.vectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    fn phases(&self, t: f64) -> Vec<C64> {
        self.energies.iter().map(|&e| C64::from_polar(1.0, -e * t)).collect()
    }

    /// `e^{−iHt}`
    pub fn unitary(&self, t: f64) -> DenseOperator {
        let n = self.dim();
        let phases = self.phases(t);
        let scaled = Mat::from_fn(n, n, |i, j| self.basis[(i, j)] * phases[j]);
        DenseOperator::from_mat(&scaled * self.basis.adjoint()).expect("square")
    }

    /// `Z† O Z`, with a single product when `O` is real diagonal.
    pub fn to_eigenbasis(&self, op: &DenseOperator) -> Mat<C64> {
        if let Some(diag) = op.real_diagonal() {
            let n = self.dim();
            let scaled = Mat::from_fn(n, n, |i, j| self.basis[(i, j)] * diag[i]);
            return self.basis.adjoint() * &scaled;
        }
        let left = self.basis.adjoint() * op.as_mat();
        &left * self.basis.as_ref()
    }

    /// `Z M Z†`
    pub fn from_eigenbasis(&self, m: &Mat<C64>) -> DenseOperator {
        let left = self.basis.as_ref() * m.as_ref();
        DenseOperator::from_mat(&left * self.basis.adjoint()).expect("square")
    }

    /// `U(t) ρ U(t)†`
    pub fn evolve(&self, rho: &DenseOperator, t: f64) -> DenseOperator {
        let m = self.to_eigenbasis(rho);
        self.from_eigenbasis(&self.rotate(&m, t))
    }

    /// `e^{−iΛt} M e^{iΛt}`
    fn rotate(&self, m: &Mat<C64>, t: f64) -> Mat<C64> {
        let n = self.dim();
        let phases = self.phases(t);
        Mat::from_fn(n, n, |i, j| phases[i] * m[(i, j)] * phases[j].conj())
    }
}

/// `e^{−iHt} ρ₀ e^{iHt}` by spectral decomposition.
pub fn evolve(h: &DenseOperator, rho0: &DenseOperator, t: f64, cfg: &FockConfig) -> Result<DenseOperator> {
    if rho0.dim() != h.dim() {
        return Err(Error::Dimension {
            expected: h.dim(),
            got: rho0.dim(),
        });
    }
    Ok(Propagator::new(h, cfg)?.evolve(rho0, t))
}

/// An observable bound to a [`Dynamics`]: the elementwise product
/// `W_ij = (Z†OZ)_ji (Z†ρ₀Z)_ij`, so that `tr(O ρ(t)) = Σ_ij W_ij e^{−i(E_i − E_j)t}`.
#[derive(Debug, Clone)]
pub struct EigenObservable(Mat<C64>);

/// A fixed initial state evolving under a fixed Hamiltonian.
#[derive(Debug, Clone)]
pub struct Dynamics {
    propagator: Propagator,
    rho0: Mat<C64>,
}

impl Dynamics {
    pub fn new(propagator: Propagator, rho0: &DenseOperator) -> Self {
        let rho0 = propagator.to_eigenbasis(rho0);
        Dynamics { propagator, rho0 }
    }

    pub fn propagator(&self) -> &Propagator {
        &self.propagator
    }

    pub fn observable(&self, op: &DenseOperator) -> EigenObservable {
        let o = self.propagator.to_eigenbasis(op);
        let n = self.propagator.dim();
        EigenObservable(Mat::from_fn(n, n, |i, j| o[(j, i)] * self.rho0[(i, j)]))
    }

    /// `tr(O ρ(t))`
    pub fn expectation(&self, obs: &EigenObservable, t: f64) -> C64 {
        let n = self.propagator.dim();
        let phases = self.propagator.phases(t);
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..n {
            let back = phases[j].conj();
            let col: C64 = obs.0.col_as_slice(j).iter().zip(&phases).map(|(w, p)| w * p).sum();
            acc += col * back;
        }
        acc
    }

    /// `ρ(t)` in the bare basis.
    pub fn state(&self, t: f64) -> DenseOperator {
        self.propagator
            .from_eigenbasis(&self.propagator.rotate(&self.rho0, t))
    }
}
