//! The `sectorlab` command line: means and entropies of matrices read from
//! JSON files, quadrature rule dumps, and the verification suite.
//!
//! Exit codes: 0 success, 1 verification violations, 2 input or flag error,
//! 3 numerical non-convergence. Results go to `--out`/`--report` (or stdout);
//! diagnostics always go to stderr.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::entropy::{relative_entropy_detailed, tsallis_entropy_detailed};
use crate::error::Error;
use crate::json::{ser_f64, ser_f64_seq, ser_opt_f64};
use crate::linalg::{AccretiveMatrix, ComplexMatrix, MAX_DIM};
use crate::means::{
    arithmetic_mean, drury_mean_detailed, geometric_mean_detailed, harmonic_mean, Integrated, IntegrationConfig, Weight,
};
use crate::quadrature::{RuleKind, DEFAULT_NODES};
use crate::verify::{self, EnsembleSpec, PropertyReport, Status, ALL_PROPERTIES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

/// A matrix on disk: `{"dim": n, "entries": [[[re, im], ...], ...]}` in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    #[serde(serialize_with = "ser_entries")]
    pub entries: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<ResultMetadata>,
}

/// Attached to computed results.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ResultMetadata {
    #[serde(default)]
    pub kind: String,
    #[serde(default, serialize_with = "ser_opt_f64")]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub nodes_used: Option<usize>,
    #[serde(default, serialize_with = "ser_opt_f64")]
    pub error_estimate: Option<f64>,
}

fn ser_entries<S: serde::Serializer>(rows: &[Vec<[f64; 2]>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;

    struct Pair<'a>(&'a [f64; 2]);
    impl Serialize for Pair<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            ser_f64_seq(self.0, s)
        }
    }
    struct Row<'a>(&'a [[f64; 2]]);
    impl Serialize for Row<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(self.0.len()))?;
            for p in self.0 {
                seq.serialize_element(&Pair(p))?;
            }
            seq.end()
        }
    }
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix<f64>) -> Self {
        let entries = m.rows().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect();
        Self { dim: m.dim(), entries, metadata: None }
    }

    pub fn with_metadata(mut self, metadata: ResultMetadata) -> Self {
        self.metadata = Some(metadata);
        self
    }

    /// Checks the shape against `dim` and rejects non-finite values.
    pub fn to_matrix(&self) -> Result<ComplexMatrix<f64>, Error> {
        if self.dim == 0 || self.dim > MAX_DIM {
            return Err(Error::InvalidShape(format!("dim {} outside 1..={MAX_DIM}", self.dim)));
        }
        if self.entries.len() != self.dim {
            return Err(Error::InvalidShape(format!("expected {} rows, found {}", self.dim, self.entries.len())));
        }
        let mut data = Vec::with_capacity(self.dim * self.dim);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.dim {
                return Err(Error::InvalidShape(format!("row {i} has {} entries, expected {}", row.len(), self.dim)));
            }
            data.extend(row.iter().map(|&[re, im]| Complex::new(re, im)));
        }
        ComplexMatrix::from_row_major(self.dim, data)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: Self =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed matrix file: {e}")))?;
        file.to_matrix().map_err(CliError::Numerical)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serialization is infallible")
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unreadable input.
    Input(String),
    /// A library error; non-convergence maps to exit 3, the rest to 2.
    Numerical(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(e) if e.is_no_convergence() => EXIT_NO_CONVERGENCE,
            _ => EXIT_INPUT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Io(msg) => f.write_str(msg),
            CliError::Numerical(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numerical(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "sectorlab", version, about = "Geometric means and operator entropies of accretive matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighted mean of two matrices.
    Mean(MeanArgs),
    /// Relative or Tsallis operator entropy of two matrices.
    Entropy(EntropyArgs),
    /// Run the inequality checks over a seeded random ensemble.
    Verify(VerifyArgs),
    /// Print a quadrature rule.
    Rule(RuleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeanKind {
    Arith,
    Harm,
    Geom,
    Drury,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EntropyKind {
    Relative,
    Tsallis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleFamily {
    Legendre,
    Jacobi,
}

#[derive(Debug, Args)]
pub struct Operands {
    /// First matrix (JSON matrix file).
    #[arg(long)]
    pub a: PathBuf,
    /// Second matrix (JSON matrix file).
    #[arg(long)]
    pub b: PathBuf,
    /// Quadrature nodes for fixed-rule integration.
    #[arg(long, default_value_t = DEFAULT_NODES)]
    pub nodes: usize,
    /// Double the node count until successive results agree to --tol.
    #[arg(long)]
    pub adaptive: bool,
    /// Adaptive tolerance (Frobenius norm).
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Output path, or `-` for stdout.
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Skip the accretivity check on the inputs.
    #[arg(long)]
    pub no_validate: bool,
}

#[derive(Debug, Args)]
pub struct MeanArgs {
    #[arg(long, value_enum)]
    pub kind: MeanKind,
    /// Weight in (0, 1); drury is fixed at 0.5.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[command(flatten)]
    pub operands: Operands,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[arg(long, value_enum)]
    pub kind: EntropyKind,
    /// Weight in (0, 1), tsallis only.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[command(flatten)]
    pub operands: Operands,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sector half-angle as a fraction of π/2, in [0, 1).
    #[arg(long, default_value_t = 0.4)]
    pub angle: f64,
    /// Comma-separated weights in (0, 1).
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.5, 0.9])]
    pub lambdas: Vec<f64>,
    /// Comma-separated property ids to run (default: all).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Report path (default: stdout).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    #[arg(long, value_enum)]
    pub kind: RuleFamily,
    /// Weight in (0, 1) selecting the kernel t^{λ-1}(1-t)^{-λ}; jacobi only.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_NODES)]
    pub nodes: usize,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Mean(args) => cmd_mean(&args),
        Command::Entropy(args) => cmd_entropy(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Rule(args) => cmd_rule(&args),
    };
    result.unwrap_or_else(|e| {
        eprintln!("sectorlab: {e}");
        e.exit_code()
    })
}

fn parse_weight(lambda: f64) -> Result<Weight<f64>, CliError> {
    Weight::new(lambda).map_err(|_| CliError::Input(format!("--lambda {lambda} must lie in the open interval (0, 1)")))
}

fn require_weight(lambda: Option<f64>, context: &str) -> Result<Weight<f64>, CliError> {
    parse_weight(lambda.ok_or_else(|| CliError::Input(format!("--lambda is required for {context}")))?)
}

fn load_operand(path: &Path, validate: bool) -> Result<AccretiveMatrix<f64>, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let m = MatrixFile::parse(&text)
        .and_then(|f| f.to_matrix().map_err(CliError::from))
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let acc = if validate { AccretiveMatrix::new(m) } else { AccretiveMatrix::unvalidated(m) };
    acc.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_pair(ops: &Operands) -> Result<(AccretiveMatrix<f64>, AccretiveMatrix<f64>), CliError> {
    let a = load_operand(&ops.a, !ops.no_validate)?;
    let b = load_operand(&ops.b, !ops.no_validate)?;
    if a.dim() != b.dim() {
        return Err(CliError::Input(format!("--a is {0}x{0} but --b is {1}x{1}", a.dim(), b.dim())));
    }
    Ok((a, b))
}

fn integration(ops: &Operands) -> Result<IntegrationConfig<f64>, CliError> {
    let cfg = IntegrationConfig { rule_nodes: ops.nodes, adaptive: ops.adaptive, tol: ops.tol };
    cfg.validate().map_err(|e| CliError::Input(format!("invalid --nodes/--tol: {e}")))?;
    Ok(cfg)
}

fn write_output(target: &str, text: &str) -> Result<(), CliError> {
    if target == "-" {
        let mut out = std::io::stdout().lock();
        writeln!(out, "{text}").map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
    } else {
        std::fs::write(target, format!("{text}\n")).map_err(|e| CliError::Io(format!("cannot write {target}: {e}")))
    }
}

fn emit(ops: &Operands, kind: &str, lambda: Option<f64>, result: Integrated<f64>) -> Result<i32, CliError> {
    let metadata = ResultMetadata {
        kind: kind.to_string(),
        lambda,
        nodes_used: (result.nodes_used > 0).then_some(result.nodes_used),
        error_estimate: result.error_estimate,
    };
    write_output(&ops.out, &MatrixFile::from_matrix(&result.value).with_metadata(metadata).to_json())?;
    Ok(EXIT_OK)
}

fn closed_form(value: ComplexMatrix<f64>) -> Integrated<f64> {
    Integrated { value, nodes_used: 0, error_estimate: None }
}

pub fn cmd_mean(args: &MeanArgs) -> Result<i32, CliError> {
    let ops = &args.operands;
    let (w, name) = match args.kind {
        MeanKind::Arith => (require_weight(args.lambda, "--kind arith")?, "arith"),
        MeanKind::Harm => (require_weight(args.lambda, "--kind harm")?, "harm"),
        MeanKind::Geom => (require_weight(args.lambda, "--kind geom")?, "geom"),
        MeanKind::Drury => {
            if let Some(l) = args.lambda {
                if l != 0.5 {
                    return Err(CliError::Input(format!(
                        "--lambda {l} is not supported by --kind drury (fixed at 0.5)"
                    )));
                }
            }
            (Weight::half(), "drury")
        }
    };
    let cfg = integration(ops)?;
    let (a, b) = load_pair(ops)?;
    let result = match args.kind {
        MeanKind::Arith => closed_form(arithmetic_mean(&a, &b, w)?),
        MeanKind::Harm => closed_form(harmonic_mean(&a, &b, w)?),
        MeanKind::Geom => geometric_mean_detailed(&a, &b, w, &cfg)?,
        MeanKind::Drury => drury_mean_detailed(&a, &b, &cfg)?,
    };
    emit(ops, name, Some(w.value()), result)
}

pub fn cmd_entropy(args: &EntropyArgs) -> Result<i32, CliError> {
    let ops = &args.operands;
    let w = match args.kind {
        EntropyKind::Relative => {
            if args.lambda.is_some() {
                return Err(CliError::Input("--lambda applies only to --kind tsallis".into()));
            }
            None
        }
        EntropyKind::Tsallis => Some(require_weight(args.lambda, "--kind tsallis")?),
    };
    let cfg = integration(ops)?;
    let (a, b) = load_pair(ops)?;
    match w {
        None => emit(ops, "relative", None, relative_entropy_detailed(&a, &b, &cfg)?),
        Some(w) => emit(ops, "tsallis", Some(w.value()), tsallis_entropy_detailed(&a, &b, w, &cfg)?),
    }
}

pub fn verify_spec(args: &VerifyArgs) -> Result<EnsembleSpec, CliError> {
    if !(args.angle >= 0.0 && args.angle < 1.0) {
        return Err(CliError::Input(format!("--angle {} must lie in [0, 1) (fraction of π/2)", args.angle)));
    }
    let lambda_grid = args
        .lambdas
        .iter()
        .map(|&l| {
            Weight::new(l)
                .map_err(|_| CliError::Input(format!("--lambdas entry {l} must lie in the open interval (0, 1)")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let spec = EnsembleSpec {
        dim: args.dim,
        trials: args.trials,
        seed: args.seed,
        sector_angle: args.angle * std::f64::consts::FRAC_PI_2,
        lambda_grid,
        ..EnsembleSpec::default()
    };
    spec.validate().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(spec)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let spec = verify_spec(args)?;
    let ids: Vec<&str> = if args.only.is_empty() {
        ALL_PROPERTIES.to_vec()
    } else {
        args.only
            .iter()
            .map(|id| {
                ALL_PROPERTIES
                    .iter()
                    .copied()
                    .find(|p| p == id)
                    .ok_or_else(|| CliError::Input(format!("--only: unknown property id {id:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    let reports = verify::run_selected(&spec, &ids);
    for r in &reports {
        eprintln!(
            "{:<28} {:<13} violations={:<5} worst_margin={:.3e} worst_seed={}",
            r.property_id,
            format!("{:?}", r.status).to_lowercase(),
            r.violations,
            r.worst_margin,
            r.worst_seed
        );
        if let Some(d) = &r.detail {
            eprintln!("    {d}");
        }
    }
    let text = verify::report_json(&spec, &reports);
    match &args.report {
        Some(path) => write_output(&path.to_string_lossy(), &text)?,
        None => write_output("-", &text)?,
    }
    Ok(verify_exit_code(&reports))
}

/// 1 if a theorem-backed check was violated, 3 if a check could not be
/// evaluated, else 0. A witness from the counterexample search is success.
pub fn verify_exit_code(reports: &[PropertyReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Violated) {
        EXIT_VIOLATIONS
    } else if reports.iter().any(|r| r.status == Status::Error) {
        EXIT_NO_CONVERGENCE
    } else {
        EXIT_OK
    }
}

#[derive(Serialize)]
struct RuleDump {
    kind: &'static str,
    #[serde(serialize_with = "ser_f64_seq")]
    nodes: Vec<f64>,
    #[serde(serialize_with = "ser_f64_seq")]
    weights: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    weight_sum: f64,
}

pub fn cmd_rule(args: &RuleArgs) -> Result<i32, CliError> {
    let (kind, name) = match args.kind {
        RuleFamily::Legendre => {
            if args.lambda.is_some() {
                return Err(CliError::Input("--lambda applies only to --kind jacobi".into()));
            }
            (RuleKind::Legendre, "legendre")
        }
        RuleFamily::Jacobi => (RuleKind::mean_kernel(require_weight(args.lambda, "--kind jacobi")?.value()), "jacobi"),
    };
    let rule = kind.build::<f64>(args.nodes).map_err(|e| CliError::Input(format!("invalid --nodes: {e}")))?;
    let weight_sum = rule.weight_sum();
    let dump = RuleDump { kind: name, nodes: rule.nodes, weights: rule.weights, weight_sum };
    write_output("-", &serde_json::to_string_pretty(&dump).expect("rule serialization is infallible"))?;
    Ok(EXIT_OK)
}
