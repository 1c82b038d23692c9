//! Singular values by one-sided (Hestenes) Jacobi orthogonalization.
//!
//! Columns of the working copy are rotated pairwise until every pair is
//! numerically orthogonal; the singular values are then the column norms.
//! Wide matrices are handled through their (conjugate) transpose so the
//! number of columns never exceeds the number of rows.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::real::RealMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// A column pair counts as orthogonal once |⟨a_p, a_q⟩| ≤ tol·‖a_p‖‖a_q‖,
/// with `tol = rows · ε`. Columns below `tol·‖A‖_F` are rounding noise and
/// are left alone; they would otherwise never converge in relative terms.
fn ortho_tol(rows: usize) -> f64 {
    rows.max(1) as f64 * f64::EPSILON
}

pub(crate) fn singular_values_real(m: &RealMatrix) -> Result<Vec<f64>> {
    let (rows, cols) = m.shape();
    if m.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("singular values of a non-finite matrix".into()));
    }
    let mut columns: Vec<Vec<f64>> = if rows >= cols {
        (0..cols).map(|j| m.column(j)).collect()
    } else {
        (0..rows).map(|i| m.row(i).to_vec()).collect()
    };
    let n = columns.len();
    let tol = ortho_tol(columns.first().map_or(0, Vec::len));
    let floor = tol * tol * columns.iter().flatten().map(|x| x * x).sum::<f64>();

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (a, b) = (&columns[p], &columns[q]);
                    let alpha: f64 = a.iter().map(|x| x * x).sum();
                    let beta: f64 = b.iter().map(|x| x * x).sum();
                    let gamma: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                    (alpha, beta, gamma)
                };
                if alpha <= floor || beta <= floor || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = columns.split_at_mut(q);
                let (a, b) = (&mut left[p], &mut right[0]);
                for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                    let (xp, yq) = (*x, *y);
                    *x = c * xp - s * yq;
                    *y = s * xp + c * yq;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::Numerical(format!("one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")));
    }
    let mut sv: Vec<f64> = columns.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

pub(crate) fn singular_values_complex(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let (rows, cols) = m.shape();
    if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("singular values of a non-finite matrix".into()));
    }
    let mut columns: Vec<Vec<Complex64>> = if rows >= cols {
        (0..cols).map(|j| (0..rows).map(|i| m[(i, j)]).collect()).collect()
    } else {
        (0..rows).map(|i| m.row(i).iter().map(|z| z.conj()).collect()).collect()
    };
    let n = columns.len();
    let tol = ortho_tol(columns.first().map_or(0, Vec::len));
    let floor = tol * tol * columns.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>();

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (a, b) = (&columns[p], &columns[q]);
                    let alpha: f64 = a.iter().map(|z| z.norm_sqr()).sum();
                    let beta: f64 = b.iter().map(|z| z.norm_sqr()).sum();
                    let gamma: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
                    (alpha, beta, gamma)
                };
                let g = gamma.norm();
                if alpha <= floor || beta <= floor || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate a_p against e^{-iφ} a_q, whose overlap with a_p is real.
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = columns.split_at_mut(q);
                let (a, b) = (&mut left[p], &mut right[0]);
                for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                    let xp = *x;
                    let yq = *y * phase.conj();
                    *x = xp * c - yq * s;
                    *y = xp * s + yq * c;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::Numerical(format!("one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")));
    }
    let mut sv: Vec<f64> = columns.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Singular values of a complex matrix, descending.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    singular_values_complex(m)
}

/// Trace norm ‖M‖_tr, the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values_complex(m)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_trace_norm_dimension() {
        assert!((trace_norm(&ComplexMatrix::identity(3)).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_diagonal_sums_absolute_eigenvalues() {
        let m = ComplexMatrix::diag(&[c(1.0, 0.0), c(-2.0, 0.0)]);
        assert!((trace_norm(&m).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rank_one_outer_product() {
        let u = [1.0, -2.0, 0.5];
        let v = [3.0, 0.25];
        let m = RealMatrix::outer(&u, &v);
        let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let sv = m.singular_values().unwrap();
        assert!((sv[0] - nu * nv).abs() < 1e-12);
        assert!(sv[1].abs() < 1e-12);
    }

    #[test]
    fn wide_and_tall_agree() {
        let m = RealMatrix::from_fn(3, 5, |i, j| ((i * 5 + j) as f64).sin());
        let a = m.singular_values().unwrap();
        let b = m.transpose().singular_values().unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_phase_matrix() {
        // sqrt2 times a unitary
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 1.0), c(1.0, 0.0)]]).unwrap();
        let sv = singular_values(&m).unwrap();
        assert!((sv[0] - 2f64.sqrt()).abs() < 1e-14);
        assert!((sv[1] - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn empty_and_nonfinite() {
        assert_eq!(RealMatrix::zeros(0, 0).trace_norm().unwrap(), 0.0);
        let bad = ComplexMatrix::from_fn(1, 1, |_, _| c(f64::INFINITY, 0.0));
        assert!(matches!(trace_norm(&bad), Err(Error::Numerical(_))));
    }

    #[test]
    fn larger_rank_one_converges() {
        let u: Vec<f64> = (0..9).map(|i| ((i * 7 % 5) as f64 - 2.1) / 3.0).collect();
        let v: Vec<f64> = (0..9).map(|j| (j as f64 * 0.37).sin()).collect();
        let m = RealMatrix::from_fn(9, 9, |i, j| if i == 0 { 0.0 } else { u[i] * v[j] });
        let nu = u[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
        let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let sv = singular_values_real(&m).unwrap();
        assert!((sv[0] - nu * nv).abs() < 1e-13);
        assert!(sv[1..].iter().all(|&s| s < 1e-13));
        let z = ComplexMatrix::from_fn(9, 9, |i, j| c(m[(i, j)], 0.5 * m[(i, j)]));
        let zs = singular_values_complex(&z).unwrap();
        assert!((zs[0] - nu * nv * 1.25f64.sqrt()).abs() < 1e-13);
    }
}
