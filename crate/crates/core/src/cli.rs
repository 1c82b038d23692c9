//! The `hwsep` command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and writes JSON (or CSV
//! for `compare --format csv`) to `out`. Exit codes: 0 success, 2 usage or
//! argument error, 3 invalid state or state file, 4 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{compare, optimize_params, scan_threshold, ScanOptions, Subject};
use crate::bloch::{decompose_bipartite, decompose_single};
use crate::criteria::{check_theorem2_with, Criterion, CriterionKind, Partitions};
use crate::error::{Error, Result};
use crate::hw_basis::{HwBasis, Normalization};
use crate::linalg::{Complex64, ComplexMatrix, DensityMatrix};
use crate::states;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hwsep", version, about = "Heisenberg-Weyl Bloch representation and trace-norm entanglement criteria")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the HW observables Q(l,m) for one dimension.
    Basis {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rescaled: bool,
    },
    /// Generate a state file.
    State(StateArgs),
    /// Bloch decomposition (r, s, T) of a one- or two-party state.
    Decompose {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        rescaled: bool,
    },
    /// Evaluate one criterion on a state.
    Check {
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        crit: CriterionArgs,
    },
    /// Multipartite criterion, one verdict per bipartition.
    TensorCheck {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// 1-based parties on one side of the cut; repeat for several cuts. Default: all cuts.
        #[arg(long)]
        partition: Vec<String>,
        #[arg(long)]
        rescaled: bool,
    },
    /// Detection threshold of a criterion along a state family.
    Scan {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        crit: CriterionArgs,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Grid search of (alpha, beta, m) for the bipartite criterion.
    Optimize {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        rescaled: bool,
        /// Comma-separated alpha values.
        #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1,1.25,1.5,1.75,2")]
        alpha_grid: Vec<f64>,
        /// Comma-separated beta values.
        #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1,1.25,1.5,1.75,2")]
        beta_grid: Vec<f64>,
        /// Comma-separated m values.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        m_range: Vec<usize>,
    },
    /// Several criteria on one family (thresholds) or one state (verdicts).
    Compare {
        #[arg(long, conflicts_with = "family")]
        state: Option<PathBuf>,
        #[arg(long)]
        family: Option<FamilyName>,
        #[arg(long, default_value_t = 0.9)]
        b: f64,
        /// Comma-separated criteria.
        #[arg(long, value_delimiter = ',', default_value = "hw,isc,vb,lb")]
        criteria: Vec<CriterionKind>,
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        beta: BetaArgs,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        scan: ScanArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyName {
    HorodeckiMix,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StateName {
    Horodecki,
    Xi,
    HorodeckiMix,
    Bell,
    Ghz,
    MaximallyMixed,
    RandomPure,
    RandomMixed,
    RandomSeparable,
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long, value_enum)]
    name: StateName,
    #[arg(long, default_value_t = 0.9)]
    b: f64,
    /// Mixing weight for horodecki-mix.
    #[arg(long, default_value_t = 0.0)]
    x: f64,
    /// Number of qubits for ghz.
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,2")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ensemble size for random-separable.
    #[arg(long, default_value_t = 10)]
    terms: usize,
}

#[derive(Debug, Args)]
struct BetaArgs {
    #[arg(long, conflicts_with = "beta_sq")]
    beta: Option<f64>,
    /// beta², as a decimal or a fraction such as 2/11.
    #[arg(long)]
    beta_sq: Option<String>,
}

#[derive(Debug, Args)]
struct CriterionArgs {
    #[arg(long)]
    criterion: CriterionKind,
    #[arg(long)]
    alpha: Option<f64>,
    #[command(flatten)]
    beta: BetaArgs,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long)]
    rescaled: bool,
    /// Party weights for thm2.
    #[arg(long, value_delimiter = ',')]
    alphas: Vec<f64>,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    b: f64,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 256)]
    grid: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

/// On-disk state format: `{"dims": [...], "matrix": [[[re, im], ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        Self { dims: rho.dims().to_vec(), matrix: matrix_rows(rho.matrix()) }
    }

    /// Parses and validates the matrix as a density operator.
    pub fn to_state(&self) -> Result<DensityMatrix> {
        let rows: Vec<Vec<Complex64>> =
            self.matrix.iter().map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect()).collect();
        let m = ComplexMatrix::from_rows(&rows).map_err(|e| Error::Validation(e.to_string()))?;
        DensityMatrix::new(m, self.dims.clone())
    }

    pub fn read(path: &Path) -> Result<DensityMatrix> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
        let file: StateFile =
            serde_json::from_str(&text).map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?;
        file.to_state()
    }
}

fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect()).collect()
}

#[derive(Serialize)]
struct BasisEntry {
    l: usize,
    m: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Parses `"p/q"` or a decimal.
fn parse_rational(s: &str) -> Result<f64> {
    let bad = || Error::InvalidArgument(format!("cannot parse '{s}' as a number or fraction"));
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

impl BetaArgs {
    fn value(&self) -> Result<Option<f64>> {
        match (&self.beta, &self.beta_sq) {
            (Some(b), _) => Ok(Some(*b)),
            (None, Some(sq)) => {
                let v = parse_rational(sq)?;
                if v < 0.0 {
                    return Err(Error::InvalidArgument("--beta-sq must be non-negative".into()));
                }
                Ok(Some(v.sqrt()))
            }
            (None, None) => Ok(None),
        }
    }
}

fn require(v: Option<f64>, flag: &str, kind: CriterionKind) -> Result<f64> {
    v.ok_or_else(|| Error::InvalidArgument(format!("{flag} is required for criterion {kind}")))
}

fn build_criterion(
    kind: CriterionKind,
    alpha: Option<f64>,
    beta: Option<f64>,
    m: usize,
    normalization: Normalization,
    alphas: &[f64],
) -> Result<Criterion> {
    Ok(match kind {
        CriterionKind::Hw => Criterion::Hw {
            alpha: require(alpha, "--alpha", kind)?,
            beta: require(beta, "--beta or --beta-sq", kind)?,
            m,
            normalization,
        },
        CriterionKind::Isc => Criterion::Isc {
            alpha: require(alpha, "--alpha", kind)?,
            beta: require(beta, "--beta or --beta-sq", kind)?,
            m,
        },
        CriterionKind::Vb => Criterion::Vb,
        CriterionKind::Lb => Criterion::Lb,
        CriterionKind::Ppt => Criterion::Ppt,
        CriterionKind::Thm2 => {
            if alphas.is_empty() {
                return Err(Error::InvalidArgument("--alphas is required for criterion thm2".into()));
            }
            Criterion::Theorem2 { alphas: alphas.to_vec(), m, partitions: Partitions::All }
        }
    })
}

impl CriterionArgs {
    fn criterion(&self) -> Result<Criterion> {
        let norm = if self.rescaled { Normalization::Rescaled } else { Normalization::Standard };
        build_criterion(self.criterion, self.alpha, self.beta.value()?, self.m, norm, &self.alphas)
    }
}

fn normalization(rescaled: bool) -> Normalization {
    if rescaled {
        Normalization::Rescaled
    } else {
        Normalization::Standard
    }
}

fn family(name: FamilyName, b: f64) -> Result<states::StateFamily> {
    match name {
        FamilyName::HorodeckiMix => states::StateFamily::horodecki_mix(b),
    }
}

/// `"1,3"` (1-based) to `[0, 2]`.
fn parse_partition(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(Error::InvalidArgument(format!("bad party index '{t}' (parties are numbered from 1)"))),
        })
        .collect()
}

fn make_state(a: &StateArgs) -> Result<DensityMatrix> {
    match a.name {
        StateName::Horodecki => states::horodecki_2x4(a.b),
        StateName::Xi => Ok(states::xi_state()),
        StateName::HorodeckiMix => states::StateFamily::horodecki_mix(a.b)?.at(a.x),
        StateName::Bell => Ok(states::bell()),
        StateName::Ghz => states::ghz(a.n),
        StateName::MaximallyMixed => {
            DensityMatrix::maximally_mixed(a.dims.clone()).map_err(|e| Error::InvalidArgument(e.to_string()))
        }
        StateName::RandomPure => states::random_pure(&a.dims, a.seed),
        StateName::RandomMixed => states::random_density(&a.dims, a.seed),
        StateName::RandomSeparable => Ok(states::random_separable(&a.dims, a.terms, a.seed)?.1),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Numerical(e.to_string()))
}

fn execute(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Basis { dim, rescaled } => {
            let basis = HwBasis::new(dim, normalization(rescaled))?;
            let entries: Vec<BasisEntry> =
                basis.iter().map(|(&(l, m), q)| BasisEntry { l, m, matrix: matrix_rows(q) }).collect();
            to_json(&entries)
        }
        Command::State(args) => to_json(&StateFile::from_state(&make_state(&args)?)),
        Command::Decompose { state, rescaled } => {
            let rho = StateFile::read(&state)?;
            match rho.parties() {
                1 => to_json(&decompose_single(&rho, normalization(rescaled))?),
                2 => to_json(&decompose_bipartite(&rho, normalization(rescaled))?),
                n => Err(Error::InvalidArgument(format!("decompose handles one or two parties, got {n}"))),
            }
        }
        Command::Check { state, crit } => {
            let rho = StateFile::read(&state)?;
            to_json(&crit.criterion()?.evaluate(&rho)?)
        }
        Command::TensorCheck { state, alphas, m, partition, rescaled } => {
            let rho = StateFile::read(&state)?;
            let parts = if partition.is_empty() {
                Partitions::All
            } else {
                Partitions::List(partition.iter().map(|p| parse_partition(p)).collect::<Result<_>>()?)
            };
            to_json(&check_theorem2_with(&rho, &alphas, m, &parts, normalization(rescaled))?)
        }
        Command::Scan { family: f, crit, scan } => {
            let fam = family(f.family, f.b)?;
            let opts = ScanOptions { grid_points: scan.grid, tol: scan.tol };
            to_json(&scan_threshold(&fam, &crit.criterion()?, opts)?)
        }
        Command::Optimize { state, rescaled, alpha_grid, beta_grid, m_range } => {
            let rho = StateFile::read(&state)?;
            to_json(&optimize_params(&rho, &alpha_grid, &beta_grid, &m_range, normalization(rescaled))?)
        }
        Command::Compare { state, family: f, b, criteria, alpha, beta, m, alphas, format, scan } => {
            let beta = beta.value()?;
            let list = criteria
                .iter()
                .map(|&k| build_criterion(k, alpha, beta, m, Normalization::Standard, &alphas))
                .collect::<Result<Vec<_>>>()?;
            let opts = ScanOptions { grid_points: scan.grid, tol: scan.tol };
            let report = match (state, f) {
                (Some(path), None) => compare(Subject::State(&StateFile::read(&path)?), &list, opts)?,
                (None, Some(name)) => compare(Subject::Family(&family(name, b)?), &list, opts)?,
                _ => return Err(Error::InvalidArgument("compare needs exactly one of --state or --family".into())),
            };
            match format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            }
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) => EXIT_USAGE,
        Error::Validation(_) => EXIT_VALIDATION,
        Error::Numerical(_) => EXIT_NUMERICAL,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                if !text.contains("Usage:") {
                    let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                }
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli) {
        Ok(text) => {
            let _ = writeln!(out, "{}", text.trim_end());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::InvalidArgument(_)) {
                let _ = writeln!(err, "\n{}", Cli::command().render_usage());
            }
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["hwsep"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = run_str(&["frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("Usage"));
        let (code, _, _) = run_str(&["basis", "--dim", "3", "--bogus"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("tensor-check"));
    }

    #[test]
    fn basis_dump() {
        let (code, out, _) = run_str(&["basis", "--dim", "3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 8);
        assert_eq!(v[0]["l"], 0);
        assert_eq!(v[0]["m"], 1);
        let (code, _, _) = run_str(&["basis", "--dim", "1"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("2/11").unwrap(), 2.0 / 11.0);
        assert_eq!(parse_rational("0.25").unwrap(), 0.25);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("two").is_err());
    }

    #[test]
    fn partitions_are_one_based() {
        assert_eq!(parse_partition("1,3").unwrap(), vec![0, 2]);
        assert!(parse_partition("0").is_err());
    }

    #[test]
    fn state_file_round_trip() {
        let rho = states::horodecki_2x4(0.9).unwrap();
        let f = StateFile::from_state(&rho);
        let text = serde_json::to_string(&f).unwrap();
        let back: StateFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_state().unwrap(), rho);
    }

    #[test]
    fn invalid_state_file_exits_3() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, r#"{"dims":[2],"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#).unwrap();
        let (code, _, err) = run_str(&["check", "--state", path.to_str().unwrap(), "--criterion", "ppt"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(err.contains("trace"));
    }

    #[test]
    fn missing_alpha_is_a_usage_error() {
        let (code, _, err) = run_str(&["scan", "--family", "horodecki-mix", "--b", "0.9", "--criterion", "hw"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--alpha"));
    }
}
