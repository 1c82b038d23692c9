use num_complex::Complex64;

use super::eigen::eig_hermitian;
use super::matrix::ComplexMatrix;
use crate::error::{invalid, Error, Result};
use crate::tol;

/// A validated density operator on `C^{d_1} ⊗ … ⊗ C^{d_N}`.
///
/// Construction checks Hermiticity, unit trace and positive semidefiniteness
/// against the tolerances in [`crate::tol`]. The basis is row-major over the
/// subsystem indices: `|i_1, …, i_N⟩ ↦ ((i_1·d_2 + i_2)·d_3 + …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(&matrix, &dims)?;
        let defect = matrix.hermiticity_defect();
        if defect > tol::HERMITIAN {
            return Err(Error::Validation(format!("not Hermitian (max |M - M†| = {defect:.3e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol::TRACE {
            return Err(Error::Validation(format!("trace is {:.12} + {:.3e}i, expected 1", tr.re, tr.im)));
        }
        let min = eig_hermitian(&matrix)?[0];
        if min < -tol::PSD {
            return Err(Error::Validation(format!("not positive semidefinite (min eigenvalue {min:.3e})")));
        }
        Ok(Self { matrix, dims })
    }

    /// Skips the state checks; shape consistency is still asserted. For
    /// constructors whose output is a state by construction.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        check_dims(&matrix, &dims).expect("inconsistent dimensions");
        Self { matrix, dims }
    }

    /// |ψ⟩⟨ψ| for a normalized state vector.
    pub fn from_pure(ket: &[Complex64], dims: Vec<usize>) -> Result<Self> {
        let norm: f64 = ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!("state vector has norm {norm}, expected 1")));
        }
        let m = ComplexMatrix::outer(ket);
        check_dims(&m, &dims)?;
        Ok(Self { matrix: m, dims })
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let d: usize = dims.iter().product();
        let m = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
        check_dims(&m, &dims)?;
        Ok(Self { matrix: m, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eig_hermitian(&self.matrix)
    }

    /// Transposes the indices of subsystem `party` (0-based) only.
    pub fn partial_transpose(&self, party: usize) -> Result<ComplexMatrix> {
        partial_transpose(&self.matrix, &self.dims, party)
    }

    /// Reduced state on subsystem `keep` (0-based), tracing out every other party.
    pub fn partial_trace(&self, keep: usize) -> Result<DensityMatrix> {
        if keep >= self.dims.len() {
            return invalid(format!("subsystem {keep} out of range for {} parties", self.dims.len()));
        }
        let dk = self.dims[keep];
        let inner: usize = self.dims[keep + 1..].iter().product();
        let outer: usize = self.dims[..keep].iter().product();
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(dk, dk);
        for o in 0..outer {
            for n in 0..inner {
                for a in 0..dk {
                    let row = (o * dk + a) * inner + n;
                    for b in 0..dk {
                        let col = (o * dk + b) * inner + n;
                        debug_assert!(row < d && col < d);
                        out[(a, b)] += self.matrix[(row, col)];
                    }
                }
            }
        }
        Ok(DensityMatrix { matrix: out, dims: vec![dk] })
    }
}

fn check_dims(matrix: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    if !matrix.is_square() {
        return Err(Error::Validation(format!(
            "density matrix must be square, got {}x{}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Validation(format!("invalid subsystem dimensions {dims:?}")));
    }
    let prod: usize = dims.iter().product();
    if prod != matrix.rows() {
        return Err(Error::Validation(format!(
            "subsystem dimensions {dims:?} multiply to {prod}, matrix is {}x{}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    Ok(())
}

/// Partial transpose of `m` on subsystem `party` of a system with dimensions `dims`.
pub fn partial_transpose(m: &ComplexMatrix, dims: &[usize], party: usize) -> Result<ComplexMatrix> {
    if party >= dims.len() {
        return invalid(format!("subsystem {party} out of range for {} parties", dims.len()));
    }
    let total: usize = dims.iter().product();
    if m.shape() != (total, total) {
        return invalid(format!("matrix shape {:?} does not match dimensions {dims:?}", m.shape()));
    }
    let dk = dims[party];
    let inner: usize = dims[party + 1..].iter().product();
    Ok(ComplexMatrix::from_fn(total, total, |row, col| {
        let a = (row / inner) % dk;
        let b = (col / inner) % dk;
        // swap the party's digit between row and column
        let src_row = row - a * inner + b * inner;
        let src_col = col - b * inner + a * inner;
        m[(src_row, src_col)]
    }))
}
