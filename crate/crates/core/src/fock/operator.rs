use std::ops::{Add, Mul, Sub};

use faer::{Mat, MatRef, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex square matrix on a truncated Fock space.
///
/// Composite operators use the a-major index `i_a * n_b + i_b`.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    mat: Mat<C64>,
}

/// Eigenpairs of a Hermitian operator, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors as columns.
    pub vectors: Mat<C64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator {
            mat: Mat::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        DenseOperator {
            mat: Mat::from_fn(dim, dim, f),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { C64::new(diag[i], 0.0) } else { ZERO })
    }

    pub fn from_mat(mat: Mat<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::Dimension {
                expected: mat.nrows(),
                got: mat.ncols(),
            });
        }
        Ok(DenseOperator { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.mat[(i, j)]
    }

    pub fn as_mat(&self) -> MatRef<'_, C64> {
        self.mat.as_ref()
    }

    pub fn into_mat(self) -> Mat<C64> {
        self.mat
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator {
            mat: self.mat.adjoint().to_owned(),
        }
    }

    pub fn scale(&self, k: C64) -> Self {
        self.map(|z| z * k)
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.map(|z| z * k)
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let n = self.dim();
        Self::from_fn(n, |i, j| f(self.mat[(i, j)]))
    }

    fn zip(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        assert_eq!(self.dim(), other.dim(), "operator dimension mismatch");
        Self::from_fn(self.dim(), |i, j| f(self.mat[(i, j)], other.mat[(i, j)]))
    }

    /// `A ⊗ B` with the row-major (A-major) composite index.
    pub fn kron(a: &Self, b: &Self) -> Self {
        let nb = b.dim();
        Self::from_fn(a.dim() * nb, |r, c| {
            a.mat[(r / nb, c / nb)] * b.mat[(r % nb, c % nb)]
        })
    }

    /// `[A, B] = AB − BA`
    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.mat[(i, i)]).sum()
    }

    /// `tr(self · rho)` without forming the product.
    pub fn expectation(&self, rho: &Self) -> C64 {
        let n = self.dim();
        let mut acc = ZERO;
        for j in 0..n {
            for i in 0..n {
                acc += self.mat[(i, j)] * rho.mat[(j, i)];
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for j in 0..n {
            for i in 0..n {
                acc += self.mat[(i, j)].norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        let n = self.dim();
        let mut m: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                m = m.max(self.mat[(i, j)].norm());
            }
        }
        m
    }

    /// Spectral norm (largest singular value).
    pub fn operator_norm(&self) -> Result<f64> {
        let gram = &self.adjoint() * self;
        let values = gram
            .mat
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Eigen(format!("{e:?}")))?;
        Ok(values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
    }

    /// `‖A − A†‖_F`
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for j in 0..n {
            for i in 0..n {
                acc += (self.mat[(i, j)] - self.mat[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect <= tol * self.frobenius_norm().max(1.0) {
            Ok(())
        } else {
            Err(Error::NotHermitian(defect))
        }
    }

    /// Index sets of the connected components of the nonzero pattern, each ascending,
    /// ordered by their smallest index. A Hermitian operator is block diagonal over them.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for j in 0..n {
            for (i, z) in self.mat.col_as_slice(j).iter().enumerate().take(j) {
                if *z != ZERO {
                    let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        let mut slot = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let r = root(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[r]].push(i);
        }
        blocks
    }

    fn block(&self, idx: &[usize]) -> Mat<C64> {
        Mat::from_fn(idx.len(), idx.len(), |i, j| self.mat[(idx[i], idx[j])])
    }

    /// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
    ///
    /// Each block of [`DenseOperator::blocks`] is diagonalized on its own.
    pub fn eigh(&self) -> Result<HermitianEigen> {
        self.ensure_hermitian(1e-12)?;
        let n = self.dim();
        let mut pairs: Vec<(Vec<usize>, Mat<C64>)> = Vec::new();
        let mut columns: Vec<(f64, usize, usize)> = Vec::with_capacity(n);
        for idx in self.blocks() {
            let evd = self
                .block(&idx)
                .self_adjoint_eigen(Side::Lower)
                .map_err(|e| Error::Eigen(format!("{e:?}")))?;
            let diag = evd.S().column_vector();
            let b = pairs.len();
            for k in 0..idx.len() {
                columns.push((diag[k].re, b, k));
            }
            pairs.push((idx, evd.U().to_owned()));
        }
        columns.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut vectors = Mat::<C64>::zeros(n, n);
        for (col, &(_, b, k)) in columns.iter().enumerate() {
            let (idx, u) = &pairs[b];
            for (r, &row) in idx.iter().enumerate() {
                vectors[(row, col)] = u[(r, k)];
            }
        }
        Ok(HermitianEigen {
            values: columns.iter().map(|c| c.0).collect(),
            vectors,
        })
    }

    pub fn eigenvalues_hermitian(&self) -> Result<Vec<f64>> {
        self.ensure_hermitian(1e-12)?;
        let mut values = Vec::with_capacity(self.dim());
        for idx in self.blocks() {
            values.extend(
                self.block(&idx)
                    .self_adjoint_eigenvalues(Side::Lower)
                    .map_err(|e| Error::Eigen(format!("{e:?}")))?,
            );
        }
        values.sort_by(f64::total_cmp);
        Ok(values)
    }

    /// `f(A) = Σ f(λ) |v⟩⟨v|` for Hermitian `A`.
    pub fn hermitian_function(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let eig = self.eigh()?;
        Ok(Self::spectral(&eig.vectors, &eig.values.iter().map(|&x| f(x)).collect::<Vec<_>>()))
    }

    /// `V diag(d) V†`
    pub fn spectral(vectors: &Mat<C64>, diag: &[f64]) -> Self {
        let n = vectors.nrows();
        let scaled = Mat::from_fn(n, n, |i, j| vectors[(i, j)] * diag[j]);
        DenseOperator {
            mat: &scaled * vectors.adjoint(),
        }
    }

    /// `tr_b` of a composite operator on `n_a · n_b` levels.
    pub fn partial_trace_b(&self, n_a: usize, n_b: usize) -> Result<Self> {
        self.check_composite(n_a, n_b)?;
        Ok(Self::from_fn(n_a, |i, j| {
            (0..n_b).map(|k| self.mat[(i * n_b + k, j * n_b + k)]).sum()
        }))
    }

    /// `tr_a` of a composite operator on `n_a · n_b` levels.
    pub fn partial_trace_a(&self, n_a: usize, n_b: usize) -> Result<Self> {
        self.check_composite(n_a, n_b)?;
        Ok(Self::from_fn(n_b, |k, l| {
            (0..n_a).map(|i| self.mat[(i * n_b + k, i * n_b + l)]).sum()
        }))
    }

    fn check_composite(&self, n_a: usize, n_b: usize) -> Result<()> {
        if self.dim() == n_a * n_b {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: n_a * n_b,
                got: self.dim(),
            })
        }
    }

    /// Part diagonal in the number basis, and the rest.
    /// The diagonal when the operator is real and diagonal, otherwise `None`.
    pub fn real_diagonal(&self) -> Option<Vec<f64>> {
        let n = self.dim();
        for j in 0..n {
            for (i, z) in self.mat.col_as_slice(j).iter().enumerate() {
                if (i != j && *z != ZERO) || (i == j && z.im != 0.0) {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self.mat[(i, i)].re).collect())
    }

    pub fn diagonal_split(&self) -> (Self, Self) {
        let n = self.dim();
        let diag = Self::from_fn(n, |i, j| if i == j { self.mat[(i, j)] } else { ZERO });
        let off = Self::from_fn(n, |i, j| if i == j { ZERO } else { self.mat[(i, j)] });
        (diag, off)
    }
}

impl<'a> Mul<&'a DenseOperator> for &'a DenseOperator {
    type Output = DenseOperator;

    fn mul(self, rhs: &'a DenseOperator) -> DenseOperator {
        DenseOperator {
            mat: &self.mat * &rhs.mat,
        }
    }
}

impl<'a> Add<&'a DenseOperator> for &'a DenseOperator {
    type Output = DenseOperator;

    fn add(self, rhs: &'a DenseOperator) -> DenseOperator {
        self.zip(rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a DenseOperator> for &'a DenseOperator {
    type Output = DenseOperator;

    fn sub(self, rhs: &'a DenseOperator) -> DenseOperator {
        self.zip(rhs, |x, y| x - y)
    }
}
