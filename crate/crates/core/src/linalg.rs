//! Dense symmetric eigenproblems for Gram, Hankel and Jacobi matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 10_000;

/// Eigenvalues in ascending order with matching unit eigenvectors (columns).
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl SymEigen {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i).iter().copied().collect()
    }
}

pub fn sym_eigen(m: &DMatrix<f64>) -> Result<SymEigen> {
    let n = m.nrows();
    if n == 0 {
        return Ok(SymEigen {
            values: vec![],
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, MAX_SWEEPS)
        .ok_or(Error::NoConvergence)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(SymEigen { values, vectors })
}

/// `max(1, max |entry|)`.
pub fn entry_scale(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(1.0f64, |acc, v| acc.max(v.abs()))
}

/// Gauss rule from a Jacobi matrix with diagonal `alpha` and squared
/// off-diagonal `beta` (`beta.len() == alpha.len() - 1`): nodes are the
/// eigenvalues, weights `mass * v_0^2`.
pub fn gauss_from_jacobi(alpha: &[f64], beta: &[f64], mass: f64) -> Result<Vec<(f64, f64)>> {
    let k = alpha.len();
    debug_assert_eq!(beta.len() + 1, k.max(1));
    let mut j = DMatrix::zeros(k, k);
    for i in 0..k {
        j[(i, i)] = alpha[i];
        if i + 1 < k {
            let b = beta[i].max(0.0).sqrt();
            j[(i, i + 1)] = b;
            j[(i + 1, i)] = b;
        }
    }
    let eig = sym_eigen(&j)?;
    Ok((0..k)
        .map(|i| (eig.values[i], mass * eig.vectors[(0, i)].powi(2)))
        .collect())
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(npoints: usize) -> Result<Vec<(f64, f64)>> {
    let alpha = vec![0.0; npoints];
    let beta: Vec<f64> = (1..npoints)
        .map(|k| {
            let k = k as f64;
            k * k / (4.0 * k * k - 1.0)
        })
        .collect();
    let mut rule = gauss_from_jacobi(&alpha, &beta, 2.0)?;
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_ascending_with_vectors() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 5.0]);
        let e = sym_eigen(&m).unwrap();
        let expected = [1.0, 3.0, 5.0];
        for (v, x) in e.values.iter().zip(expected) {
            assert!((v - x).abs() < 1e-12);
        }
        let v = nalgebra::DVector::from_vec(e.vector(0));
        let residual = &m * &v - &v * e.min();
        assert!(residual.norm() < 1e-12);
    }

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let rule = gauss_legendre(5).unwrap();
        let mass: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((mass - 2.0).abs() < 1e-13);
        // exact through degree 9
        let m8: f64 = rule.iter().map(|(x, w)| w * x.powi(8)).sum();
        assert!((m8 - 2.0 / 9.0).abs() < 1e-13);
        let m9: f64 = rule.iter().map(|(x, w)| w * x.powi(9)).sum();
        assert!(m9.abs() < 1e-13);
    }

    #[test]
    fn empty_matrix() {
        let e = sym_eigen(&DMatrix::zeros(0, 0)).unwrap();
        assert!(e.values.is_empty());
    }
}
