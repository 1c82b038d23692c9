//! Threshold scans, parameter grid search and comparison reports.

use rayon::prelude::*;
use serde::Serialize;

use crate::bloch::decompose_bipartite;
use crate::criteria::{build_s, theorem1_bound, Criterion, CriterionParams, CriterionVerdict, Verdict};
use crate::error::{invalid, Error, Result};
use crate::hw_basis::Normalization;
use crate::linalg::DensityMatrix;
use crate::states::StateFamily;

/// Grid resolution and bisection tolerance for [`scan_threshold`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub grid_points: usize,
    pub tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { grid_points: 256, tol: 1e-6 }
    }
}

/// Onset of detection along a family `x ↦ ρ_x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub criterion: String,
    pub params: CriterionParams,
    pub family: String,
    /// Smallest `x` found to be detected, or `None` if no grid point is.
    pub threshold: Option<f64>,
    /// Width of the final bracket `[threshold - interval, threshold]`.
    pub interval: f64,
    pub evaluations: usize,
    /// Number of detected/undetected transitions seen on the coarse grid.
    pub sign_changes: usize,
    pub non_monotone: bool,
}

fn margin_at(family: &StateFamily, criterion: &Criterion, x: f64) -> Result<CriterionVerdict> {
    criterion.evaluate(&family.at(x)?)
}

/// Locates the smallest `x ∈ [0, 1]` at which `criterion` flags `family.at(x)`.
///
/// `f(x) = value - bound - 1e-9` is sampled on `grid_points` uniformly spaced
/// points, and the first undetected-to-detected step is bisected down to
/// `tol`. More than one transition on the grid sets `non_monotone`.
pub fn scan_threshold(family: &StateFamily, criterion: &Criterion, options: ScanOptions) -> Result<ThresholdResult> {
    if options.grid_points < 16 {
        return invalid(format!("grid_points must be at least 16, got {}", options.grid_points));
    }
    if options.tol.is_nan() || options.tol < 1e-8 {
        return invalid(format!("tol must be at least 1e-8, got {}", options.tol));
    }
    let n = options.grid_points;
    let xs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    let samples = xs.par_iter().map(|&x| margin_at(family, criterion, x)).collect::<Result<Vec<_>>>()?;
    let params = samples[0].params.clone();
    let detected: Vec<bool> = samples.iter().map(|v| v.verdict.is_entangled()).collect();
    let sign_changes = detected.windows(2).filter(|w| w[0] != w[1]).count();
    let mut evaluations = n;

    let mut result = ThresholdResult {
        criterion: criterion.label(),
        params,
        family: family.describe(),
        threshold: None,
        interval: 0.0,
        evaluations,
        sign_changes,
        non_monotone: sign_changes > 1,
    };

    let Some(first) = detected.iter().position(|&d| d) else {
        return Ok(result);
    };
    if first == 0 {
        result.threshold = Some(0.0);
        return Ok(result);
    }
    let (mut lo, mut hi) = (xs[first - 1], xs[first]);
    while hi - lo > options.tol {
        let mid = 0.5 * (lo + hi);
        evaluations += 1;
        if margin_at(family, criterion, mid)?.verdict.is_entangled() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    result.threshold = Some(hi);
    result.interval = hi - lo;
    result.evaluations = evaluations;
    Ok(result)
}

/// Best parameter triple found by [`optimize_params`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizeResult {
    pub alpha: f64,
    pub beta: f64,
    pub m: usize,
    pub verdict: CriterionVerdict,
    pub evaluations: usize,
}

impl OptimizeResult {
    /// `value - bound` at the optimum.
    pub fn excess(&self) -> f64 {
        self.verdict.value - self.verdict.bound
    }
}

/// Exhaustive search of the bipartite criterion over `α_grid × β_grid × m_range`.
///
/// Returns the point maximizing `value - bound`; ties go to the smaller `m`,
/// then the smaller `α`, then the smaller `β`.
pub fn optimize_params(
    rho: &DensityMatrix,
    alpha_grid: &[f64],
    beta_grid: &[f64],
    m_range: &[usize],
    normalization: Normalization,
) -> Result<OptimizeResult> {
    if alpha_grid.is_empty() || beta_grid.is_empty() || m_range.is_empty() {
        return invalid("parameter grids must be nonempty");
    }
    let [d1, d2] = match rho.dims() {
        [a, b] => [*a, *b],
        other => return invalid(format!("bipartite state expected, got dims {other:?}")),
    };
    let dec = decompose_bipartite(rho, normalization)?;
    let points: Vec<(usize, f64, f64)> = m_range
        .iter()
        .flat_map(|&m| alpha_grid.iter().flat_map(move |&a| beta_grid.iter().map(move |&b| (m, a, b))))
        .collect();
    let scored = points
        .par_iter()
        .map(|&(m, alpha, beta)| {
            let value = build_s(&dec, alpha, beta, m)?.trace_norm()?;
            let bound = theorem1_bound(d1, d2, alpha, beta, m, normalization);
            Ok((m, alpha, beta, value, bound))
        })
        .collect::<Result<Vec<_>>>()?;

    let key = |&(m, a, b, _, _): &(usize, f64, f64, f64, f64)| (m, a, b);
    let mut best = scored[0];
    for &p in &scored[1..] {
        let (gain, best_gain) = (p.3 - p.4, best.3 - best.4);
        let smaller = key(&p).partial_cmp(&key(&best)) == Some(std::cmp::Ordering::Less);
        if gain > best_gain || (gain == best_gain && smaller) {
            best = p;
        }
    }
    let (m, alpha, beta, value, bound) = best;
    let params = CriterionParams {
        alpha: Some(alpha),
        beta: Some(beta),
        m: Some(m),
        normalization: Some(normalization),
        ..Default::default()
    };
    let verdict = CriterionVerdict {
        criterion: crate::criteria::CriterionKind::Hw,
        value,
        bound,
        verdict: Verdict::from_values(value, bound),
        params,
    };
    Ok(OptimizeResult { alpha, beta, m, verdict, evaluations: scored.len() })
}

/// What a comparison was run on.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Family(&'a StateFamily),
    State(&'a DensityMatrix),
}

/// One criterion's outcome in a [`ComparisonReport`]. Family comparisons fill
/// `threshold`; single-state comparisons fill `value`, `bound` and `verdict`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub criterion: String,
    pub params: CriterionParams,
    pub threshold: Option<f64>,
    pub non_monotone: bool,
    pub value: Option<f64>,
    pub bound: Option<f64>,
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub subject: String,
    pub rows: Vec<ReportRow>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    criterion: &'a str,
    alpha: Option<f64>,
    beta: Option<f64>,
    m: Option<usize>,
    normalization: Option<&'static str>,
    threshold: Option<f64>,
    value: Option<f64>,
    bound: Option<f64>,
    verdict: Option<&'static str>,
}

impl ComparisonReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Numerical(e.to_string()))
    }

    /// Columns: criterion, alpha, beta, m, normalization, threshold, value, bound, verdict.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            let p = &row.params;
            w.serialize(CsvRow {
                criterion: &row.criterion,
                alpha: p.alpha,
                beta: p.beta,
                m: p.m,
                normalization: p.normalization.map(Normalization::as_str),
                threshold: row.threshold,
                value: row.value,
                bound: row.bound,
                verdict: row.verdict.map(|v| if v.is_entangled() { "ENTANGLED" } else { "INCONCLUSIVE" }),
            })
            .map_err(|e| Error::Numerical(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Numerical(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Numerical(e.to_string()))
    }
}

/// Runs every criterion on the subject: a threshold scan for a family, a
/// single check for a state.
pub fn compare(subject: Subject<'_>, criteria: &[Criterion], options: ScanOptions) -> Result<ComparisonReport> {
    if criteria.is_empty() {
        return invalid("at least one criterion is required");
    }
    let rows = criteria
        .iter()
        .map(|c| match subject {
            Subject::Family(f) => {
                let t = scan_threshold(f, c, options)?;
                Ok(ReportRow {
                    criterion: c.kind().to_string(),
                    params: t.params,
                    threshold: t.threshold,
                    non_monotone: t.non_monotone,
                    value: None,
                    bound: None,
                    verdict: None,
                })
            }
            Subject::State(rho) => {
                let v = c.evaluate(rho)?;
                Ok(ReportRow {
                    criterion: c.kind().to_string(),
                    params: v.params,
                    threshold: None,
                    non_monotone: false,
                    value: Some(v.value),
                    bound: Some(v.bound),
                    verdict: Some(v.verdict),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let subject = match subject {
        Subject::Family(f) => f.describe(),
        Subject::State(rho) => format!("state{:?}", rho.dims()),
    };
    Ok(ComparisonReport { subject, rows })
}
