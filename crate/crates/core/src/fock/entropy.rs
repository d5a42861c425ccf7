use super::operator::DenseOperator;
use crate::error::{Error, Result};

/// Eigenvalues below this are a positivity violation rather than round-off.
pub const POSITIVITY_FLOOR: f64 = -1e-10;
/// Clamp applied to reference-state eigenvalues before taking logarithms.
pub const LOG_CLAMP: f64 = 1e-300;

fn checked_spectrum(rho: &DenseOperator) -> Result<Vec<f64>> {
    let values = rho.eigenvalues_hermitian()?;
    if let Some(&min) = values.first() {
        if min < POSITIVITY_FLOOR {
            return Err(Error::Positivity(min));
        }
    }
    Ok(values)
}

/// `−tr ρ ln ρ` with `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DenseOperator) -> Result<f64> {
    Ok(checked_spectrum(rho)?
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum())
}

/// `ln σ` with eigenvalues clamped at [`LOG_CLAMP`].
pub fn log_hermitian(sigma: &DenseOperator) -> Result<DenseOperator> {
    checked_spectrum(sigma)?;
    sigma.hermitian_function(|x| x.max(LOG_CLAMP).ln())
}

/// Weight of `rho` on the null space of `sigma` (eigenvalues at or below [`LOG_CLAMP`]).
pub fn support_weight(rho: &DenseOperator, sigma: &DenseOperator) -> Result<f64> {
    let eig = sigma.eigh()?;
    let n = sigma.dim();
    let mut weight = 0.0;
    for (k, &lambda) in eig.values.iter().enumerate() {
        if lambda > LOG_CLAMP {
            continue;
        }
        let mut quad = num_complex::Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                quad += eig.vectors[(i, k)].conj() * rho.get(i, j) * eig.vectors[(j, k)];
            }
        }
        weight += quad.re;
    }
    Ok(weight)
}

/// `S(ρ‖σ) = tr ρ ln ρ − tr ρ ln σ`, erroring when `ρ` leaves the support of `σ`.
pub fn relative_entropy(rho: &DenseOperator, sigma: &DenseOperator) -> Result<f64> {
    let outside = support_weight(rho, sigma)?;
    if outside > 1e-10 {
        return Err(Error::Support(outside));
    }
    let log_sigma = log_hermitian(sigma)?;
    Ok(-von_neumann_entropy(rho)? - log_sigma.expectation(rho).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::operator::C64;
    use std::f64::consts::LN_2;

    #[test]
    fn entropy_of_simple_states() {
        let pure = DenseOperator::from_real_diagonal(&[1.0, 0.0, 0.0]);
        assert_eq!(von_neumann_entropy(&pure).unwrap(), 0.0);
        let mixed = DenseOperator::from_real_diagonal(&[0.5, 0.5]);
        assert!((von_neumann_entropy(&mixed).unwrap() - LN_2).abs() < 1e-15);
        // |+⟩⟨+| is pure in a rotated basis.
        let plus = DenseOperator::from_fn(2, |_, _| C64::new(0.5, 0.0));
        assert!(von_neumann_entropy(&plus).unwrap().abs() < 1e-14);
    }

    #[test]
    fn negative_eigenvalue_is_rejected() {
        let bad = DenseOperator::from_real_diagonal(&[1.1, -0.1]);
        assert!(matches!(von_neumann_entropy(&bad), Err(Error::Positivity(_))));
    }

    #[test]
    fn relative_entropy_of_diagonal_states() {
        let p = DenseOperator::from_real_diagonal(&[0.7, 0.3]);
        let q = DenseOperator::from_real_diagonal(&[0.4, 0.6]);
        let expected = 0.7 * (0.7f64 / 0.4).ln() + 0.3 * (0.3f64 / 0.6).ln();
        assert!((relative_entropy(&p, &q).unwrap() - expected).abs() < 1e-14);
        assert!(relative_entropy(&p, &p).unwrap().abs() < 1e-14);
    }

    #[test]
    fn support_violation_is_an_error() {
        let p = DenseOperator::from_real_diagonal(&[0.5, 0.5]);
        let q = DenseOperator::from_real_diagonal(&[1.0, 0.0]);
        assert!(matches!(relative_entropy(&p, &q), Err(Error::Support(_))));
        // The reverse direction is finite.
        assert!((relative_entropy(&q, &p).unwrap() - LN_2).abs() < 1e-14);
    }
}
