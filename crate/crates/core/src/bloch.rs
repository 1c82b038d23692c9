//! Bloch coefficients of density matrices in the HW observable basis.
//!
//! A state on `C^{d_1} ⊗ … ⊗ C^{d_N}` expands as
//!
//! ```text
//! ρ = 1/(d_1⋯d_N) Σ c_{j_1…j_N} Q_{j_1} ⊗ … ⊗ Q_{j_N}
//! ```
//!
//! where index 0 on a party stands for the identity and `1..d²` for the basis
//! observables in canonical order. In the standard normalization
//! `c = Tr(ρ Q_{j_1} ⊗ … ⊗ Q_{j_N})`. In the rescaled normalization the
//! observables are `Q' = √(2/d) Q` and the coefficients are defined by the same
//! expansion, which multiplies each operator slot by `√(d/2)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::hw_basis::{HwBasis, Normalization};
use crate::linalg::{kron_all, ComplexMatrix, DensityMatrix, RealMatrix};

/// Coefficient scale of an operator slot relative to the standard normalization.
pub(crate) fn slot_scale(normalization: Normalization, d: usize) -> f64 {
    match normalization {
        Normalization::Standard => 1.0,
        Normalization::Rescaled => (d as f64 / 2.0).sqrt(),
    }
}

/// Single-system Bloch vector `r`, ordered like the basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochVector {
    pub dim: usize,
    pub normalization: Normalization,
    pub coeffs: Vec<f64>,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    /// Euclidean norm of the Bloch vector of any pure state in this dimension
    /// and normalization: `√(d-1)` standard, `√(d(d-1)/2)` rescaled.
    pub fn pure_state_norm(dim: usize, normalization: Normalization) -> f64 {
        Self::pure_state_norm_sq(dim, normalization).sqrt()
    }

    pub fn pure_state_norm_sq(dim: usize, normalization: Normalization) -> f64 {
        let d = dim as f64;
        match normalization {
            Normalization::Standard => d - 1.0,
            Normalization::Rescaled => d * (d - 1.0) / 2.0,
        }
    }
}

/// Bipartite Bloch data `(r, s, T)`; rows of `T` follow party A's basis order,
/// columns party B's.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochDecomposition {
    pub dims: [usize; 2],
    pub normalization: Normalization,
    pub r: BlochVector,
    pub s: BlochVector,
    pub t: RealMatrix,
}

impl BlochDecomposition {
    /// Rebuilds the density matrix from the expansion.
    pub fn reconstruct(&self) -> Result<DensityMatrix> {
        reconstruct_bipartite(self)
    }
}

/// Caches the basis matrices per party, identity first.
struct PartyOperators {
    ops: Vec<ComplexMatrix>,
}

impl PartyOperators {
    fn new(d: usize) -> Result<Self> {
        let basis = HwBasis::new(d, Normalization::Standard)?;
        let mut ops = Vec::with_capacity(d * d);
        ops.push(ComplexMatrix::identity(d));
        ops.extend(basis.elements().iter().cloned());
        Ok(Self { ops })
    }
}

fn row_major_strides(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * shape[k + 1];
    }
    strides
}

/// `Tr(ρ · A_1 ⊗ … ⊗ A_N)` without forming the Kronecker product.
pub fn product_expectation(rho: &DensityMatrix, ops: &[&ComplexMatrix]) -> Result<Complex64> {
    let dims = rho.dims();
    if ops.len() != dims.len() {
        return invalid(format!("{} operators for {} parties", ops.len(), dims.len()));
    }
    for (k, (op, &d)) in ops.iter().zip(dims).enumerate() {
        if op.shape() != (d, d) {
            return invalid(format!("operator {k} has shape {:?}, party dimension is {d}", op.shape()));
        }
    }
    let digits = digit_table(dims);
    Ok(expectation_with_digits(rho.matrix(), ops, &digits))
}

fn digit_table(dims: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = dims.iter().product();
    let strides = row_major_strides(dims);
    (0..total).map(|a| dims.iter().zip(&strides).map(|(&d, &s)| (a / s) % d).collect()).collect()
}

fn expectation_with_digits(m: &ComplexMatrix, ops: &[&ComplexMatrix], digits: &[Vec<usize>]) -> Complex64 {
    let total = digits.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut acc = zero;
    for a in 0..total {
        for b in 0..total {
            let rho_ab = m[(a, b)];
            if rho_ab == zero {
                continue;
            }
            let mut prod = Complex64::new(1.0, 0.0);
            for (k, op) in ops.iter().enumerate() {
                prod *= op[(digits[b][k], digits[a][k])];
                if prod == zero {
                    break;
                }
            }
            acc += rho_ab * prod;
        }
    }
    acc
}

/// Full expansion coefficients over `{I, Q_1, …}` per party, row-major with
/// per-axis extent `d_i²`.
pub(crate) fn expansion_coefficients(rho: &DensityMatrix, normalization: Normalization) -> Result<Vec<f64>> {
    let dims = rho.dims().to_vec();
    let parties = dims.iter().map(|&d| PartyOperators::new(d)).collect::<Result<Vec<_>>>()?;
    let shape: Vec<usize> = dims.iter().map(|d| d * d).collect();
    let strides = row_major_strides(&shape);
    let total: usize = shape.iter().product();
    let digits = digit_table(&dims);
    let mut out = Vec::with_capacity(total);
    let mut ops: Vec<&ComplexMatrix> = Vec::with_capacity(dims.len());
    for flat in 0..total {
        ops.clear();
        let mut scale = 1.0;
        for (k, party) in parties.iter().enumerate() {
            let j = (flat / strides[k]) % shape[k];
            ops.push(&party.ops[j]);
            if j != 0 {
                scale *= slot_scale(normalization, dims[k]);
            }
        }
        out.push(scale * expectation_with_digits(rho.matrix(), &ops, &digits).re);
    }
    Ok(out)
}

/// Inverse of [`expansion_coefficients`]; the result is validated as a state.
pub(crate) fn reconstruct_from_coefficients(
    dims: &[usize],
    normalization: Normalization,
    coeffs: &[f64],
) -> Result<DensityMatrix> {
    let parties = dims.iter().map(|&d| PartyOperators::new(d)).collect::<Result<Vec<_>>>()?;
    let shape: Vec<usize> = dims.iter().map(|d| d * d).collect();
    let total: usize = shape.iter().product();
    if coeffs.len() != total {
        return invalid(format!("expected {total} coefficients, got {}", coeffs.len()));
    }
    let strides = row_major_strides(&shape);
    let big: usize = dims.iter().product();
    let mut acc = ComplexMatrix::zeros(big, big);
    for (flat, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let mut scale = 1.0;
        let mut ops = Vec::with_capacity(dims.len());
        for (k, party) in parties.iter().enumerate() {
            let j = (flat / strides[k]) % shape[k];
            ops.push(&party.ops[j]);
            if j != 0 {
                scale *= slot_scale(normalization, dims[k]);
            }
        }
        acc = &acc + &kron_all(ops).scale_real(c / scale);
    }
    DensityMatrix::new(acc.scale_real(1.0 / big as f64), dims.to_vec())
}

/// Bloch vector of a single-system state.
pub fn decompose_single(rho: &DensityMatrix, normalization: Normalization) -> Result<BlochVector> {
    if rho.parties() != 1 {
        return invalid(format!("single-system state expected, got {} parties", rho.parties()));
    }
    let d = rho.dim();
    if d < 2 {
        return invalid("dimension must be at least 2");
    }
    let basis = HwBasis::new(d, Normalization::Standard)?;
    let k = slot_scale(normalization, d);
    let coeffs = basis.elements().iter().map(|q| k * rho.matrix().trace_product(q).re).collect();
    Ok(BlochVector { dim: d, normalization, coeffs })
}

/// `Tr ρ² = (1 + ‖r‖²)/d`, valid in the standard normalization only.
pub fn purity_from_bloch(r: &BlochVector) -> Result<f64> {
    if r.normalization != Normalization::Standard {
        return invalid("purity identity is implemented for the standard normalization only");
    }
    Ok((1.0 + r.norm().powi(2)) / r.dim as f64)
}

/// `(r, s, T)` of a bipartite state.
pub fn decompose_bipartite(rho: &DensityMatrix, normalization: Normalization) -> Result<BlochDecomposition> {
    if rho.parties() != 2 {
        return invalid(format!("bipartite state expected, got {} parties", rho.parties()));
    }
    let (d1, d2) = (rho.dims()[0], rho.dims()[1]);
    if d1 < 2 || d2 < 2 {
        return invalid(format!("party dimensions must be at least 2, got ({d1}, {d2})"));
    }
    let c = expansion_coefficients(rho, normalization)?;
    let width = d2 * d2;
    let r = (1..d1 * d1).map(|i| c[i * width]).collect();
    let s = (1..width).map(|j| c[j]).collect();
    let t = RealMatrix::from_fn(d1 * d1 - 1, width - 1, |i, j| c[(i + 1) * width + j + 1]);
    Ok(BlochDecomposition {
        dims: [d1, d2],
        normalization,
        r: BlochVector { dim: d1, normalization, coeffs: r },
        s: BlochVector { dim: d2, normalization, coeffs: s },
        t,
    })
}

/// Rebuilds `ρ` from `(r, s, T)`.
pub fn reconstruct_bipartite(dec: &BlochDecomposition) -> Result<DensityMatrix> {
    let [d1, d2] = dec.dims;
    let (n1, n2) = (d1 * d1 - 1, d2 * d2 - 1);
    if dec.r.len() != n1 || dec.s.len() != n2 || dec.t.shape() != (n1, n2) {
        return invalid(format!(
            "field shapes r={}, s={}, T={:?} do not match dims ({d1}, {d2})",
            dec.r.len(),
            dec.s.len(),
            dec.t.shape()
        ));
    }
    let width = n2 + 1;
    let mut c = vec![0.0; (n1 + 1) * width];
    c[0] = 1.0;
    c[1..width].copy_from_slice(&dec.s.coeffs);
    for i in 0..n1 {
        c[(i + 1) * width] = dec.r.coeffs[i];
        for j in 0..n2 {
            c[(i + 1) * width + j + 1] = dec.t[(i, j)];
        }
    }
    reconstruct_from_coefficients(&dec.dims, dec.normalization, &c)
}

/// What a position along one axis of a [`CoefficientTensor`] stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// One of the `m` scaled-identity slots.
    Identity(usize),
    /// Basis observable at this position of the canonical order.
    Operator(usize),
}

/// The N-way tensor `W` with entries `Tr(ρ δ_1 ⊗ … ⊗ δ_N)`.
///
/// Axis `i` has extent `m + d_i² - 1`: slots `0..m` hold `α_i I`, the rest the
/// basis observables. For two parties and `m ≥ 1` this is the block matrix
/// used by the bipartite criterion, with `β = α_1` and `α = α_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTensor {
    dims: Vec<usize>,
    alphas: Vec<f64>,
    pad: usize,
    normalization: Normalization,
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl CoefficientTensor {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Number of identity slots per axis.
    pub fn pad(&self) -> usize {
        self.pad
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn strides(&self) -> Vec<usize> {
        row_major_strides(&self.shape)
    }

    pub fn slot(&self, position: usize) -> Slot {
        if position < self.pad {
            Slot::Identity(position)
        } else {
            Slot::Operator(position - self.pad)
        }
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        assert_eq!(index.len(), self.shape.len());
        let flat = index
            .iter()
            .zip(self.strides())
            .zip(&self.shape)
            .map(|((&i, s), &n)| {
                assert!(i < n, "index out of bounds");
                i * s
            })
            .sum::<usize>();
        self.data[flat]
    }

    /// Recovers `ρ`; needs at least one identity slot and every `α_i > 0`.
    pub fn reconstruct(&self) -> Result<DensityMatrix> {
        if self.pad == 0 {
            return invalid("reconstruction needs at least one identity slot (m >= 1)");
        }
        if self.alphas.iter().any(|&a| a <= 0.0) {
            return invalid("reconstruction needs every alpha > 0");
        }
        let full_shape: Vec<usize> = self.dims.iter().map(|d| d * d).collect();
        let full_strides = row_major_strides(&full_shape);
        let total: usize = full_shape.iter().product();
        let mut coeffs = Vec::with_capacity(total);
        let mut index = vec![0; self.dims.len()];
        for flat in 0..total {
            let mut scale = 1.0;
            for k in 0..self.dims.len() {
                let j = (flat / full_strides[k]) % full_shape[k];
                if j == 0 {
                    index[k] = 0;
                    scale *= self.alphas[k];
                } else {
                    index[k] = self.pad + j - 1;
                }
            }
            coeffs.push(self.get(&index) / scale);
        }
        reconstruct_from_coefficients(&self.dims, self.normalization, &coeffs)
    }
}

/// Builds `W` for parameters `α_1..α_N` and `m` identity slots per axis.
pub fn build_w(
    rho: &DensityMatrix,
    alphas: &[f64],
    m: usize,
    normalization: Normalization,
) -> Result<CoefficientTensor> {
    let dims = rho.dims().to_vec();
    if alphas.len() != dims.len() {
        return invalid(format!("{} alphas given for {} parties", alphas.len(), dims.len()));
    }
    if let Some(a) = alphas.iter().find(|a| !a.is_finite() || **a < 0.0) {
        return invalid(format!("alphas must be finite and non-negative, got {a}"));
    }
    if dims.iter().any(|&d| d < 2) {
        return invalid(format!("party dimensions must be at least 2, got {dims:?}"));
    }
    let full = expansion_coefficients(rho, normalization)?;
    let full_shape: Vec<usize> = dims.iter().map(|d| d * d).collect();
    let full_strides = row_major_strides(&full_shape);
    let shape: Vec<usize> = dims.iter().map(|d| m + d * d - 1).collect();
    let strides = row_major_strides(&shape);
    let total: usize = shape.iter().product();
    let mut data = Vec::with_capacity(total);
    for flat in 0..total {
        let mut src = 0;
        let mut scale = 1.0;
        for k in 0..dims.len() {
            let pos = (flat / strides[k]) % shape[k];
            if pos < m {
                scale *= alphas[k];
            } else {
                src += (pos - m + 1) * full_strides[k];
            }
        }
        data.push(scale * full[src]);
    }
    Ok(CoefficientTensor { dims, alphas: alphas.to_vec(), pad: m, normalization, shape, data })
}
