//! Real symmetric eigendecomposition by cyclic Jacobi rotations.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent when std is linked
use num_traits::Float;

use crate::error::{bail, Result};

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub dim: usize,
    pub values: Vec<f64>,
    /// Column-major: eigenvector `k` is `vectors[k * dim .. (k + 1) * dim]`.
    pub vectors: Vec<f64>,
}

impl SymmetricEigen {
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.dim..(k + 1) * self.dim]
    }
}

const MAX_SWEEPS: usize = 100;

/// Diagonalize the row-major symmetric matrix `a` of size `dim × dim`.
pub fn symmetric_eigen(a: &[f64], dim: usize) -> Result<SymmetricEigen> {
    if a.len() != dim * dim {
        bail!(Argument, "expected {} entries, got {}", dim * dim, a.len());
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for r in 0..dim {
        for c in 0..r {
            if (a[r * dim + c] - a[c * dim + r]).abs() > 1e-12 * scale.max(1.0) {
                bail!(Argument, "matrix is not symmetric at ({r}, {c})");
            }
        }
    }
    let mut m = a.to_vec();
    // v is row-major with eigenvectors in columns during the sweeps.
    let mut v = vec![0.0; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = 1.0;
    }
    let tiny = (dim as f64 * f64::EPSILON).powi(2);
    let mut converged = dim < 2;
    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..dim).flat_map(|r| (0..r).map(move |c| (r, c))).map(|(r, c)| m[r * dim + c].powi(2)).sum();
        let diag: f64 = (0..dim).map(|i| m[i * dim + i].powi(2)).sum();
        if off <= tiny * diag.max(f64::MIN_POSITIVE) || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = m[p * dim + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * dim + p];
                let aqq = m[q * dim + q];
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    m[p * dim + q] = 0.0;
                    m[q * dim + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..dim {
                    let mkp = m[k * dim + p];
                    let mkq = m[k * dim + q];
                    m[k * dim + p] = c * mkp - s * mkq;
                    m[k * dim + q] = s * mkp + c * mkq;
                }
                for k in 0..dim {
                    let mpk = m[p * dim + k];
                    let mqk = m[q * dim + k];
                    m[p * dim + k] = c * mpk - s * mqk;
                    m[q * dim + k] = s * mpk + c * mqk;
                }
                for k in 0..dim {
                    let vkp = v[k * dim + p];
                    let vkq = v[k * dim + q];
                    v[k * dim + p] = c * vkp - s * vkq;
                    v[k * dim + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        bail!(Numeric, "Jacobi sweeps did not converge for a {dim}×{dim} matrix");
    }
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| m[i * dim + i].total_cmp(&m[j * dim + j]));
    let values = order.iter().map(|&i| m[i * dim + i]).collect();
    let mut vectors = Vec::with_capacity(dim * dim);
    for &col in &order {
        vectors.extend((0..dim).map(|r| v[r * dim + col]));
    }
    Ok(SymmetricEigen { dim, values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_random_symmetric_matrix() {
        let dim = 9;
        let mut rng = crate::rng::Rng::seed(3);
        let mut a = vec![0.0; dim * dim];
        for r in 0..dim {
            for c in 0..=r {
                let x = rng.symmetric(1.0);
                a[r * dim + c] = x;
                a[c * dim + r] = x;
            }
        }
        let e = symmetric_eigen(&a, dim).unwrap();
        for k in 0..dim {
            let v = e.vector(k);
            for r in 0..dim {
                let av: f64 = (0..dim).map(|c| a[r * dim + c] * v[c]).sum();
                assert!((av - e.values[k] * v[r]).abs() < 1e-11);
            }
            let norm: f64 = v.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_asymmetric_input() {
        assert!(symmetric_eigen(&[1.0, 2.0, 3.0, 4.0], 2).is_err());
    }
}
