//! Trace-norm separability criteria.
//!
//! Every norm criterion here has the same shape: build a real matrix from the
//! Bloch data of `ρ`, take its trace norm, and compare with a bound that every
//! separable state satisfies. A violation certifies entanglement; satisfying
//! the bound says nothing.
//!
//! * [`check_theorem1`]: the block matrix
//!   `S = [[αβ E_{m×m}, β ω_m(s)ᵗ], [α ω_m(r), T]]` with bound
//!   `√((mβ² + d₁ - 1)(mα² + d₂ - 1))` (standard basis).
//! * [`check_isc`], [`check_lb`], [`check_vb`]: the same construction in the
//!   rescaled basis, where the bound becomes
//!   `½√((2mβ² + d₁² - d₁)(2mα² + d₂² - d₂))`. L-B is the instance
//!   `m = 1, α = β = 1`; V-B drops the padding (`m = 0`) and checks `‖T‖_tr`.
//! * [`check_theorem2`]: matricizations of the N-party tensor `W`.
//! * [`check_ppt`]: smallest eigenvalue of the partial transpose.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bloch::{build_w, decompose_bipartite, BlochDecomposition, BlochVector, CoefficientTensor};
use crate::error::{invalid, Error, Result};
use crate::hw_basis::Normalization;
use crate::linalg::{eig_hermitian, DensityMatrix, RealMatrix};
use crate::tol;

/// Outcome of a single criterion evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

impl Verdict {
    /// `Entangled` iff `value > bound + 1e-9`.
    pub fn from_values(value: f64, bound: f64) -> Self {
        if value > bound + tol::VIOLATION {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn is_entangled(self) -> bool {
        self == Verdict::Entangled
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Verdict::Entangled => "ENTANGLED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Criterion identifiers as they appear in reports and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionKind {
    Hw,
    Isc,
    Vb,
    Lb,
    Ppt,
    Thm2,
}

impl CriterionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CriterionKind::Hw => "hw",
            CriterionKind::Isc => "isc",
            CriterionKind::Vb => "vb",
            CriterionKind::Lb => "lb",
            CriterionKind::Ppt => "ppt",
            CriterionKind::Thm2 => "thm2",
        }
    }
}

impl fmt::Display for CriterionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for CriterionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hw" => CriterionKind::Hw,
            "isc" => CriterionKind::Isc,
            "vb" => CriterionKind::Vb,
            "lb" => CriterionKind::Lb,
            "ppt" => CriterionKind::Ppt,
            "thm2" => CriterionKind::Thm2,
            other => return invalid(format!("unknown criterion '{other}'")),
        })
    }
}

/// Parameters a verdict was computed with. Absent fields do not apply.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CriterionParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alphas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normalization: Option<Normalization>,
    /// Parties on the row side of a matricization (0-based).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partition: Option<Vec<usize>>,
}

/// A criterion's value, its bound and the resulting verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub criterion: CriterionKind,
    pub value: f64,
    pub bound: f64,
    pub verdict: Verdict,
    pub params: CriterionParams,
}

impl CriterionVerdict {
    fn new(criterion: CriterionKind, value: f64, bound: f64, params: CriterionParams) -> Self {
        Self { criterion, value, bound, verdict: Verdict::from_values(value, bound), params }
    }

    /// `value - bound - 1e-9`: positive exactly when the verdict is `Entangled`.
    pub fn margin(&self) -> f64 {
        self.value - self.bound - tol::VIOLATION
    }
}

/// The block matrix `S^m_{α,β}` together with its layout.
#[derive(Debug, Clone, PartialEq)]
pub struct SMatrix {
    pub matrix: RealMatrix,
    pub pad: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl SMatrix {
    /// Top-left `m×m` block, every entry `αβ`.
    pub fn e_block(&self) -> RealMatrix {
        RealMatrix::from_fn(self.pad, self.pad, |i, j| self.matrix[(i, j)])
    }

    /// Top-right `m × (d₂²-1)` block, each row `β sᵗ`.
    pub fn s_block(&self) -> RealMatrix {
        let cols = self.matrix.cols() - self.pad;
        RealMatrix::from_fn(self.pad, cols, |i, j| self.matrix[(i, self.pad + j)])
    }

    /// Bottom-left `(d₁²-1) × m` block, each column `α r`.
    pub fn r_block(&self) -> RealMatrix {
        let rows = self.matrix.rows() - self.pad;
        RealMatrix::from_fn(rows, self.pad, |i, j| self.matrix[(self.pad + i, j)])
    }

    /// Bottom-right correlation block `T`.
    pub fn t_block(&self) -> RealMatrix {
        let rows = self.matrix.rows() - self.pad;
        let cols = self.matrix.cols() - self.pad;
        RealMatrix::from_fn(rows, cols, |i, j| self.matrix[(self.pad + i, self.pad + j)])
    }

    pub fn trace_norm(&self) -> Result<f64> {
        self.matrix.trace_norm()
    }
}

fn check_weight(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return invalid(format!("{name} must be finite and non-negative, got {x}"));
    }
    Ok(())
}

/// Assembles `S^m_{α,β}` from Bloch data. `m = 0` gives `S = T`.
pub fn build_s(dec: &BlochDecomposition, alpha: f64, beta: f64, m: usize) -> Result<SMatrix> {
    check_weight("alpha", alpha)?;
    check_weight("beta", beta)?;
    let (n1, n2) = dec.t.shape();
    if dec.r.len() != n1 || dec.s.len() != n2 {
        return invalid("Bloch vectors do not match the correlation matrix shape");
    }
    let r = &dec.r.coeffs;
    let s = &dec.s.coeffs;
    let matrix = RealMatrix::from_fn(m + n1, m + n2, |i, j| match (i < m, j < m) {
        (true, true) => alpha * beta,
        (true, false) => beta * s[j - m],
        (false, true) => alpha * r[i - m],
        (false, false) => dec.t[(i - m, j - m)],
    });
    Ok(SMatrix { matrix, pad: m, alpha, beta })
}

/// `‖(a E_{m×1}; u)‖²` for a pure-state Bloch vector `u` of party dimension `d`.
fn party_factor(d: usize, a: f64, m: usize, normalization: Normalization) -> f64 {
    m as f64 * a * a + BlochVector::pure_state_norm_sq(d, normalization)
}

/// Separable-state bound on `‖S^m_{α,β}‖_tr`.
pub fn theorem1_bound(d1: usize, d2: usize, alpha: f64, beta: f64, m: usize, normalization: Normalization) -> f64 {
    party_factor(d1, beta, m, normalization).sqrt() * party_factor(d2, alpha, m, normalization).sqrt()
}

/// Separable-state bound on every matricization of `W`.
pub fn theorem2_bound(dims: &[usize], alphas: &[f64], m: usize, normalization: Normalization) -> f64 {
    dims.iter().zip(alphas).map(|(&d, &a)| party_factor(d, a, m, normalization).sqrt()).product()
}

fn bipartite_dims(rho: &DensityMatrix) -> Result<(usize, usize)> {
    match rho.dims() {
        [d1, d2] => Ok((*d1, *d2)),
        other => invalid(format!("bipartite state expected, got dims {other:?}")),
    }
}

fn s_criterion(
    kind: CriterionKind,
    rho: &DensityMatrix,
    alpha: f64,
    beta: f64,
    m: usize,
    normalization: Normalization,
) -> Result<CriterionVerdict> {
    let (d1, d2) = bipartite_dims(rho)?;
    let dec = decompose_bipartite(rho, normalization)?;
    let value = build_s(&dec, alpha, beta, m)?.trace_norm()?;
    let bound = theorem1_bound(d1, d2, alpha, beta, m, normalization);
    let params = CriterionParams {
        alpha: Some(alpha),
        beta: Some(beta),
        m: Some(m),
        normalization: Some(normalization),
        ..Default::default()
    };
    Ok(CriterionVerdict::new(kind, value, bound, params))
}

/// HW trace-norm criterion for a bipartite state.
pub fn check_theorem1(
    rho: &DensityMatrix,
    alpha: f64,
    beta: f64,
    m: usize,
    normalization: Normalization,
) -> Result<CriterionVerdict> {
    s_criterion(CriterionKind::Hw, rho, alpha, beta, m, normalization)
}

/// Correlation-matrix criterion: `‖T'‖_tr ≤ ½√(d₁d₂(d₁-1)(d₂-1))`.
pub fn check_vb(rho: &DensityMatrix) -> Result<CriterionVerdict> {
    let mut v = s_criterion(CriterionKind::Vb, rho, 0.0, 0.0, 0, Normalization::Rescaled)?;
    v.params = CriterionParams { m: Some(0), normalization: Some(Normalization::Rescaled), ..Default::default() };
    Ok(v)
}

/// Parameterized rescaled-basis criterion; needs `m ≥ 1` (use [`check_vb`] for `m = 0`).
pub fn check_isc(rho: &DensityMatrix, alpha: f64, beta: f64, m: usize) -> Result<CriterionVerdict> {
    if m == 0 {
        return invalid("m must be at least 1 for the ISC criterion; m = 0 is the V-B criterion");
    }
    s_criterion(CriterionKind::Isc, rho, alpha, beta, m, Normalization::Rescaled)
}

/// Correlation matrix plus local Bloch vectors: the rescaled criterion at `m = 1, α = β = 1`.
pub fn check_lb(rho: &DensityMatrix) -> Result<CriterionVerdict> {
    s_criterion(CriterionKind::Lb, rho, 1.0, 1.0, 1, Normalization::Rescaled)
}

/// Positive partial transpose test on the second party.
///
/// `value` is minus the smallest eigenvalue of `ρ^{T_B}`, `bound` is 0.
pub fn check_ppt(rho: &DensityMatrix) -> Result<CriterionVerdict> {
    check_ppt_on(rho, 1)
}

/// Positive partial transpose test on a chosen party (0-based).
pub fn check_ppt_on(rho: &DensityMatrix, party: usize) -> Result<CriterionVerdict> {
    bipartite_dims(rho)?;
    let pt = rho.partial_transpose(party)?;
    let min = eig_hermitian(&pt)?[0];
    let params = CriterionParams { partition: Some(vec![party]), ..Default::default() };
    Ok(CriterionVerdict::new(CriterionKind::Ppt, -min, 0.0, params))
}

fn normalize_subset(parties: usize, subset: &[usize]) -> Result<Vec<usize>> {
    let mut a = subset.to_vec();
    a.sort_unstable();
    a.dedup();
    if a.is_empty() || a.len() >= parties {
        return invalid(format!("partition {subset:?} must be a nonempty proper subset of {parties} parties"));
    }
    if let Some(&p) = a.iter().find(|&&p| p >= parties) {
        return invalid(format!("party {p} out of range for {parties} parties"));
    }
    Ok(a)
}

/// The `A|Ā` matricization of `W`: rows run over the axes in `subset`
/// (ascending, row-major), columns over the remaining axes.
pub fn matricize(w: &CoefficientTensor, subset: &[usize]) -> Result<RealMatrix> {
    unfold(w.shape(), w.as_slice(), subset)
}

/// Matricization of a row-major tensor with the given shape.
pub fn unfold(shape: &[usize], data: &[f64], row_axes: &[usize]) -> Result<RealMatrix> {
    let n = shape.len();
    if data.len() != shape.iter().product::<usize>() {
        return invalid(format!("tensor data of length {} does not fit shape {shape:?}", data.len()));
    }
    let rows_axes = normalize_subset(n, row_axes)?;
    let cols_axes: Vec<usize> = (0..n).filter(|k| !rows_axes.contains(k)).collect();
    let mut strides = vec![1; n];
    for k in (0..n.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * shape[k + 1];
    }
    let extent = |axes: &[usize]| axes.iter().map(|&k| shape[k]).product::<usize>();
    let offset = |axes: &[usize], mut flat: usize| {
        let mut off = 0;
        for &k in axes.iter().rev() {
            off += (flat % shape[k]) * strides[k];
            flat /= shape[k];
        }
        off
    };
    let (nr, nc) = (extent(&rows_axes), extent(&cols_axes));
    let row_off: Vec<usize> = (0..nr).map(|i| offset(&rows_axes, i)).collect();
    let col_off: Vec<usize> = (0..nc).map(|j| offset(&cols_axes, j)).collect();
    Ok(RealMatrix::from_fn(nr, nc, |i, j| data[row_off[i] + col_off[j]]))
}

/// Which bipartitions [`check_theorem2`] evaluates.
#[derive(Debug, Clone, PartialEq)]
pub enum Partitions {
    /// All `2^{N-1} - 1` distinct cuts.
    All,
    /// Explicit row-side subsets (0-based parties).
    List(Vec<Vec<usize>>),
}

/// Every distinct bipartition of `n` parties, each given by the side that
/// contains party 0.
pub fn all_bipartitions(n: usize) -> Vec<Vec<usize>> {
    if n < 2 {
        return Vec::new();
    }
    let full = (1usize << (n - 1)) - 1;
    (0..full)
        .map(|mask| {
            let mut a = vec![0];
            a.extend((1..n).filter(|k| mask & (1 << (k - 1)) != 0));
            a
        })
        .collect()
}

/// Multipartite criterion: one verdict per requested bipartition. The state
/// is certified not fully separable if any of them is `Entangled`.
pub fn check_theorem2(
    rho: &DensityMatrix,
    alphas: &[f64],
    m: usize,
    partitions: &Partitions,
) -> Result<Vec<CriterionVerdict>> {
    check_theorem2_with(rho, alphas, m, partitions, Normalization::Standard)
}

/// [`check_theorem2`] in a chosen normalization.
pub fn check_theorem2_with(
    rho: &DensityMatrix,
    alphas: &[f64],
    m: usize,
    partitions: &Partitions,
    normalization: Normalization,
) -> Result<Vec<CriterionVerdict>> {
    let n = rho.parties();
    if n < 2 {
        return invalid("the multipartite criterion needs at least two parties");
    }
    if m == 0 {
        return invalid("the multipartite criterion needs m >= 1");
    }
    let w = build_w(rho, alphas, m, normalization)?;
    let bound = theorem2_bound(rho.dims(), alphas, m, normalization);
    let cuts = match partitions {
        Partitions::All => all_bipartitions(n),
        Partitions::List(list) => {
            if list.is_empty() {
                return invalid("empty partition list");
            }
            list.iter().map(|a| normalize_subset(n, a)).collect::<Result<Vec<_>>>()?
        }
    };
    cuts.into_iter()
        .map(|a| {
            let value = matricize(&w, &a)?.trace_norm()?;
            let params = CriterionParams {
                alphas: Some(alphas.to_vec()),
                m: Some(m),
                normalization: Some(normalization),
                partition: Some(a),
                ..Default::default()
            };
            Ok(CriterionVerdict::new(CriterionKind::Thm2, value, bound, params))
        })
        .collect()
}

/// A criterion with its parameters, for uniform dispatch in scans and reports.
#[derive(Debug, Clone, PartialEq)]
pub enum Criterion {
    Hw { alpha: f64, beta: f64, m: usize, normalization: Normalization },
    Isc { alpha: f64, beta: f64, m: usize },
    Vb,
    Lb,
    Ppt,
    Theorem2 { alphas: Vec<f64>, m: usize, partitions: Partitions },
}

impl Criterion {
    pub fn kind(&self) -> CriterionKind {
        match self {
            Criterion::Hw { .. } => CriterionKind::Hw,
            Criterion::Isc { .. } => CriterionKind::Isc,
            Criterion::Vb => CriterionKind::Vb,
            Criterion::Lb => CriterionKind::Lb,
            Criterion::Ppt => CriterionKind::Ppt,
            Criterion::Theorem2 { .. } => CriterionKind::Thm2,
        }
    }

    /// Evaluates the criterion. For the multipartite criterion the returned
    /// verdict is the bipartition with the largest margin.
    pub fn evaluate(&self, rho: &DensityMatrix) -> Result<CriterionVerdict> {
        match self {
            Criterion::Hw { alpha, beta, m, normalization } => check_theorem1(rho, *alpha, *beta, *m, *normalization),
            Criterion::Isc { alpha, beta, m } => check_isc(rho, *alpha, *beta, *m),
            Criterion::Vb => check_vb(rho),
            Criterion::Lb => check_lb(rho),
            Criterion::Ppt => check_ppt(rho),
            Criterion::Theorem2 { alphas, m, partitions } => {
                let all = check_theorem2(rho, alphas, *m, partitions)?;
                let mut best: Option<CriterionVerdict> = None;
                for v in all {
                    if best.as_ref().is_none_or(|b| v.margin() > b.margin()) {
                        best = Some(v);
                    }
                }
                best.ok_or_else(|| Error::InvalidArgument("no partitions evaluated".into()))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Criterion::Hw { alpha, beta, m, normalization } => {
                format!("hw(alpha={alpha}, beta={beta}, m={m}, {normalization})")
            }
            Criterion::Isc { alpha, beta, m } => format!("isc(alpha={alpha}, beta={beta}, m={m})"),
            Criterion::Vb => "vb".into(),
            Criterion::Lb => "lb".into(),
            Criterion::Ppt => "ppt".into(),
            Criterion::Theorem2 { alphas, m, .. } => format!("thm2(alphas={alphas:?}, m={m})"),
        }
    }
}
