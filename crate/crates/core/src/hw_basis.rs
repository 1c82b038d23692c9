//! Heisenberg-Weyl displacement operators and the Hermitian HW observable basis.
//!
//! For a d-level system the displacement operators are
//!
//! ```text
//! D(l, m) = e^{iπlm/d} Σ_k e^{2πikl/d} |k⟩⟨(k+m) mod d|
//! ```
//!
//! and the observables are `Q(l, m) = χ D(l, m) + χ* D(l, m)†` with
//! `χ = (1 + i)/2`. The phase `e^{iπlm/d}` makes `D(l, m)† = ±D(-l, -m)`,
//! which is what gives `Tr(Q(l,m) Q(l',m')) = d δ δ` for every `d`. Without it
//! the observables with `l·m ≠ 0` overlap (see [`displacement_unphased`]).
//!
//! `Q(0, 0) = I_d`; the basis proper is the `d² - 1` traceless observables
//! ordered `(0,1), …, (0,d-1), (1,0), …, (d-1,d-1)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::ComplexMatrix;

/// Scaling of the observable basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// `Tr(Q Q') = d δδ`.
    #[default]
    Standard,
    /// Each observable multiplied by `√(2/d)`, so `Tr(Q Q') = 2 δδ`.
    Rescaled,
}

impl Normalization {
    /// Factor applied to a standard observable.
    pub fn factor(self, d: usize) -> f64 {
        match self {
            Normalization::Standard => 1.0,
            Normalization::Rescaled => (2.0 / d as f64).sqrt(),
        }
    }

    /// Target value of `Tr(Q Q)` for a basis element.
    pub fn gram_diagonal(self, d: usize) -> f64 {
        match self {
            Normalization::Standard => d as f64,
            Normalization::Rescaled => 2.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Standard => "standard",
            Normalization::Rescaled => "rescaled",
        }
    }
}

impl std::fmt::Display for Normalization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.as_str())
    }
}

fn check_indices(d: usize, l: usize, m: usize) -> Result<()> {
    if d < 2 {
        return invalid(format!("dimension must be at least 2, got {d}"));
    }
    if l >= d || m >= d {
        return invalid(format!("indices ({l}, {m}) out of range for d = {d}"));
    }
    Ok(())
}

/// `Σ_k e^{2πikl/d} |k⟩⟨(k+m) mod d|`, without the symmetrizing phase.
///
/// The observables built from this operator reproduce the commonly printed
/// d = 3 table, but for `d ≥ 3` they are not mutually orthogonal (at d = 4 they
/// are not even linearly independent). Kept for comparison only.
pub fn displacement_unphased(d: usize, l: usize, m: usize) -> Result<ComplexMatrix> {
    check_indices(d, l, m)?;
    let mut out = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        out[(k, (k + m) % d)] = Complex64::from_polar(1.0, 2.0 * PI * (k * l) as f64 / d as f64);
    }
    Ok(out)
}

/// Displacement operator `D(l, m)` for `0 ≤ l, m < d`.
pub fn displacement(d: usize, l: usize, m: usize) -> Result<ComplexMatrix> {
    let phase = Complex64::from_polar(1.0, PI * (l * m) as f64 / d as f64);
    let mut out = displacement_unphased(d, l, m)?;
    if l * m != 0 {
        out = out.scale(phase);
    }
    Ok(out)
}

fn hermitian_part(dop: &ComplexMatrix) -> ComplexMatrix {
    let chi = Complex64::new(0.5, 0.5);
    let dag = dop.adjoint();
    let mut out = ComplexMatrix::from_fn(dop.rows(), dop.cols(), |i, j| chi * dop[(i, j)] + chi.conj() * dag[(i, j)]);
    // The diagonal of a Hermitian matrix is real; drop the rounding residue.
    for i in 0..out.rows() {
        out[(i, i)] = Complex64::new(out[(i, i)].re, 0.0);
    }
    out
}

/// Observable `Q(l, m)`; `(0, 0)` gives `I_d` (unscaled in either normalization).
pub fn observable(d: usize, l: usize, m: usize, normalization: Normalization) -> Result<ComplexMatrix> {
    check_indices(d, l, m)?;
    if (l, m) == (0, 0) {
        return Ok(ComplexMatrix::identity(d));
    }
    let q = hermitian_part(&displacement(d, l, m)?);
    Ok(match normalization {
        Normalization::Standard => q,
        Normalization::Rescaled => q.scale_real(normalization.factor(d)),
    })
}

/// Observables built from [`displacement_unphased`].
pub fn observable_unphased(d: usize, l: usize, m: usize) -> Result<ComplexMatrix> {
    check_indices(d, l, m)?;
    if (l, m) == (0, 0) {
        return Ok(ComplexMatrix::identity(d));
    }
    Ok(hermitian_part(&displacement_unphased(d, l, m)?))
}

/// The `d² - 1` traceless HW observables in canonical order.
#[derive(Debug, Clone)]
pub struct HwBasis {
    dim: usize,
    normalization: Normalization,
    labels: Vec<(usize, usize)>,
    elements: Vec<ComplexMatrix>,
}

impl HwBasis {
    pub fn new(d: usize, normalization: Normalization) -> Result<Self> {
        if d < 2 {
            return invalid(format!("dimension must be at least 2, got {d}"));
        }
        let labels = basis_labels(d);
        let elements = labels.iter().map(|&(l, m)| observable(d, l, m, normalization)).collect::<Result<Vec<_>>>()?;
        Ok(Self { dim: d, normalization, labels, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn get(&self, index: usize) -> &ComplexMatrix {
        &self.elements[index]
    }

    /// Position of `(l, m)` in the canonical order.
    pub fn index_of(&self, l: usize, m: usize) -> Option<usize> {
        self.labels.iter().position(|&lm| lm == (l, m))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &ComplexMatrix)> {
        self.labels.iter().zip(&self.elements)
    }

    /// Matrix of `Tr(Q_i Q_j)` over the basis.
    pub fn gram(&self) -> ComplexMatrix {
        let n = self.len();
        ComplexMatrix::from_fn(n, n, |i, j| self.elements[i].trace_product(&self.elements[j]))
    }

    /// Largest `|Tr(Q_i Q_j) - target δ_ij|`.
    pub fn orthogonality_deviation(&self) -> f64 {
        let target = self.normalization.gram_diagonal(self.dim);
        let gram = self.gram();
        let mut worst = 0.0f64;
        for i in 0..self.len() {
            for j in 0..self.len() {
                let want = if i == j { target } else { 0.0 };
                worst = worst.max((gram[(i, j)] - Complex64::new(want, 0.0)).norm());
            }
        }
        worst
    }
}

/// `(l, m) ≠ (0, 0)` in row-major order.
pub fn basis_labels(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|l| (0..d).map(move |m| (l, m))).skip(1).collect()
}

/// Builds the basis for `d` and returns its orthogonality deviation.
pub fn verify_orthogonality(d: usize, normalization: Normalization) -> Result<f64> {
    Ok(HwBasis::new(d, normalization)?.orthogonality_deviation())
}
