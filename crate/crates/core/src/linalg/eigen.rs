//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tol;

const MAX_SWEEPS: usize = 100;

/// Spectral data of a Hermitian matrix: `M = V diag(values) V†`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let d = ComplexMatrix::diag(&self.values.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>());
        debug_assert_eq!(d.rows(), n);
        self.vectors.matmul(&d).matmul(&self.vectors.adjoint())
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Input whose entrywise Hermiticity defect exceeds 1e-10 is rejected.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(jacobi(m, false)?.values)
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
pub fn eigh(m: &ComplexMatrix) -> Result<HermitianEigen> {
    jacobi(m, true)
}

fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::InvalidArgument(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermiticity_defect();
    if defect.is_nan() || defect > tol::HERMITIAN {
        return Err(Error::InvalidArgument(format!("matrix is not Hermitian (defect {defect:.3e})")));
    }
    let n = m.rows();
    // Symmetrize so the iteration works on an exactly Hermitian matrix.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    });
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));

    let scale = a.frobenius_norm();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = apq / g;
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // W acts on columns p, q: col_p ← c·col_p − s·e^{-iφ}·col_q,
                // col_q ← s·col_p + c·e^{-iφ}·col_q.
                let e = phase.conj();
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * e * s;
                    a[(k, q)] = akp * s + akq * e * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * phase * s;
                    a[(q, k)] = apk * s + aqk * phase * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * e * s;
                        v[(k, q)] = vkp * s + vkq * e * c;
                    }
                }
            }
        }
    }
    if !converged {
        return Err(Error::Numerical(format!("Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps")));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = match v {
        Some(v) => ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]),
        None => ComplexMatrix::zeros(0, 0),
    };
    Ok(HermitianEigen { values, vectors })
}
