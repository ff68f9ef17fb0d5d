//! Command-line front end. Data goes to the output stream as CSV or JSON;
//! diagnostics go to the error stream.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Number, Value};

use crate::cpi::{check_cpi_bounds, cpi_gos, cpi_gos_quadrature_with, reversed_cpi};
use crate::empirical::mc_validate;
use crate::error::{Error, ParseError};
use crate::fgm::{FgmModel, GosParams};
use crate::inaccuracy::{inaccuracy_gos, inaccuracy_gos_quadrature_with, quantile_form_inaccuracy, reversed_inaccuracy};
use crate::marginals::MarginalFamily;
use crate::measure::MeasureResult;
use crate::numerics::{RngStream, Tolerance};
use crate::tables;

#[derive(Debug, Parser)]
#[command(name = "fgm-inaccuracy", version, about = "Inaccuracy measures for concomitants in the FGM family")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Round computed values to 3 decimals.
    #[arg(long, global = true)]
    paper_precision: bool,

    /// Relative tolerance for direct quadrature measures.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    /// Absolute tolerance for direct quadrature measures.
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute inaccuracy and CPI measures for one configuration.
    Measure(MeasureArgs),
    /// Print a published mean/variance table next to the computed values.
    Table(TableArgs),
    /// Monte Carlo validation of the empirical CPI estimator.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Y marginal, e.g. `exponential:theta=1` or `invweibull:theta=1,beta=2`.
    #[arg(long)]
    marginal: String,

    /// GOS configuration: `os:r=1,n=3`, `record:r=2`, or `r=2,n=5,m=0.5,k=2`.
    #[arg(long)]
    gos: String,

    /// Association parameter in [-1, 1].
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureKind {
    Inaccuracy,
    InaccuracyQuadrature,
    QuantileInaccuracy,
    ReversedInaccuracy,
    Cpi,
    CpiQuadrature,
    ReversedCpi,
    CpiBound,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    #[command(flatten)]
    model: ModelArgs,

    /// Measures to compute (comma separated). Defaults to all.
    #[arg(long, value_enum, value_delimiter = ',')]
    measure: Vec<MeasureKind>,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Table id: 1 (generalized exponential, λ = 1) or 2 (uniform).
    #[arg(long)]
    table: u8,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,

    /// Sample size per replicate.
    #[arg(long)]
    n: usize,

    /// Number of replicates (at least 100).
    #[arg(long, default_value_t = 1000)]
    replicates: usize,

    #[arg(long, env = "CM_SEED", default_value_t = 1)]
    seed: u64,
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(ParseError),
    Compute(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => Failure::Parse(p),
            other => Failure::Compute(other),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(records) => match emit(&records, cli.format, cli.paper_precision, out) {
            Ok(()) => 0,
            Err(e) => report(Failure::Io(e), err),
        },
        Err(f) => report(f, err),
    }
}

fn report(f: Failure, err: &mut dyn Write) -> i32 {
    let code = match &f {
        Failure::Usage(m) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Failure::Parse(p) => {
            let _ = writeln!(err, "error: {p}");
            let _ = writeln!(err, "  {}", p.input);
            let _ = writeln!(err, "  {}^", " ".repeat(p.column.saturating_sub(1)));
            2
        }
        Failure::Compute(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Failure::Io(m) => {
            let _ = writeln!(err, "error: writing output: {m}");
            1
        }
    };
    let _ = err.flush();
    code
}

/// One output field.
#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Text(String),
    Real(f64),
    Int(u64),
    Bool(bool),
    Missing,
}

type Record = Vec<(&'static str, Cell)>;

fn opt_real(v: Option<f64>) -> Cell {
    v.map(Cell::Real).unwrap_or(Cell::Missing)
}

fn execute(cli: &Cli) -> Result<Vec<Record>, Failure> {
    let mut tol = Tolerance::default();
    if let Some(r) = cli.rel_tol {
        tol.rel = r;
    }
    if let Some(a) = cli.abs_tol {
        tol.abs = a;
    }
    if !(tol.rel > 0.0 && tol.abs > 0.0 && tol.rel.is_finite() && tol.abs.is_finite()) {
        return Err(Failure::Usage("--rel-tol and --abs-tol must be positive and finite".into()));
    }
    match &cli.command {
        Command::Measure(a) => cmd_measure(a, tol),
        Command::Table(a) => cmd_table(a),
        Command::Simulate(a) => cmd_simulate(a),
    }
}

fn build_model(a: &ModelArgs) -> Result<(FgmModel, GosParams), Failure> {
    let marginal: MarginalFamily = a.marginal.parse()?;
    let gos: GosParams = a.gos.parse()?;
    Ok((FgmModel::symmetric(marginal, a.alpha)?, gos))
}

const ALL_MEASURES: [MeasureKind; 8] = [
    MeasureKind::Inaccuracy,
    MeasureKind::InaccuracyQuadrature,
    MeasureKind::QuantileInaccuracy,
    MeasureKind::ReversedInaccuracy,
    MeasureKind::Cpi,
    MeasureKind::CpiQuadrature,
    MeasureKind::ReversedCpi,
    MeasureKind::CpiBound,
];

fn cmd_measure(a: &MeasureArgs, tol: Tolerance) -> Result<Vec<Record>, Failure> {
    let (model, gos) = build_model(&a.model)?;
    let kinds: &[MeasureKind] = if a.measure.is_empty() { &ALL_MEASURES } else { &a.measure };
    let mut records = Vec::new();
    for &kind in kinds {
        let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
        let (result, classification): (MeasureResult, Option<String>) = match kind {
            MeasureKind::Inaccuracy => (inaccuracy_gos(&model, &gos)?, None),
            MeasureKind::InaccuracyQuadrature => (inaccuracy_gos_quadrature_with(&model, &gos, tol)?, None),
            MeasureKind::QuantileInaccuracy => (quantile_form_inaccuracy(&model, &gos)?, None),
            MeasureKind::ReversedInaccuracy => (reversed_inaccuracy(&model, &gos)?, None),
            MeasureKind::Cpi => (cpi_gos(&model, &gos)?, None),
            MeasureKind::CpiQuadrature => (cpi_gos_quadrature_with(&model, &gos, tol)?, None),
            MeasureKind::ReversedCpi => (reversed_cpi(&model, &gos)?, None),
            MeasureKind::CpiBound => {
                let bound = check_cpi_bounds(&model, &gos)?;
                let cpi = cpi_gos(&model, &gos)?;
                let ce = model.marginal_y().cumulative_entropy_result()?;
                let diff = MeasureResult {
                    value: cpi.value - ce.value,
                    method: cpi.method,
                    abs_error: cpi.abs_error + ce.abs_error,
                };
                let label = serde_json::to_value(bound).expect("enum serializes");
                (diff, label.as_str().map(str::to_string))
            }
        };
        records.push(vec![
            ("marginal", Cell::Text(model.marginal_y().to_string())),
            ("gos", Cell::Text(gos.to_string())),
            ("alpha", Cell::Real(model.alpha())),
            ("measure", Cell::Text(name)),
            ("value", Cell::Real(result.value)),
            ("method", Cell::Text(result.method.to_string())),
            ("abs_error", Cell::Real(result.abs_error)),
            ("classification", classification.map(Cell::Text).unwrap_or(Cell::Missing)),
        ]);
    }
    Ok(records)
}

fn cmd_table(a: &TableArgs) -> Result<Vec<Record>, Failure> {
    let cells = tables::table(a.table).map_err(|_| Failure::Usage(format!("unknown table id {} (expected 1 or 2)", a.table)))?;
    Ok(cells
        .into_iter()
        .map(|c| {
            vec![
                ("table", Cell::Int(c.table as u64)),
                ("n", Cell::Int(c.n as u64)),
                ("theta2", Cell::Real(c.theta2)),
                ("alpha", Cell::Real(c.alpha)),
                ("r", Cell::Int(c.r as u64)),
                ("mean", Cell::Real(c.mean)),
                ("published_mean", Cell::Real(c.published_mean)),
                ("variance", Cell::Real(c.variance)),
                ("published_variance", Cell::Real(c.published_variance)),
            ]
        })
        .collect())
}

fn cmd_simulate(a: &SimulateArgs) -> Result<Vec<Record>, Failure> {
    let (model, gos) = build_model(&a.model)?;
    let r = mc_validate(&model, &gos, a.n, a.replicates, &RngStream::new(a.seed, 0))?;
    Ok(vec![vec![
        ("marginal", Cell::Text(r.marginal)),
        ("gos", Cell::Text(r.gos)),
        ("alpha", Cell::Real(r.alpha)),
        ("n", Cell::Int(r.n as u64)),
        ("replicates", Cell::Int(r.replicates as u64)),
        ("seed", Cell::Int(r.seed)),
        ("mean", Cell::Real(r.mean)),
        ("variance", Cell::Real(r.variance)),
        ("theoretical_mean", opt_real(r.theoretical_mean)),
        ("theoretical_var", opt_real(r.theoretical_var)),
        ("bias", opt_real(r.bias)),
        ("analytic_cpi", opt_real(r.analytic_cpi)),
        ("ks_statistic", opt_real(r.ks_statistic)),
        ("ks_critical_1pct", Cell::Real(r.ks_critical_1pct)),
        ("normality_pass", r.normality_pass.map(Cell::Bool).unwrap_or(Cell::Missing)),
    ]])
}

/// Rounds to 15 significant digits, or to 3 decimals for table diffing.
fn present(v: f64, paper_precision: bool) -> f64 {
    if !v.is_finite() {
        return v;
    }
    let s = if paper_precision { format!("{v:.3}") } else { format!("{v:.14e}") };
    s.parse().expect("formatted float parses")
}

fn emit(records: &[Record], format: Format, paper_precision: bool, out: &mut dyn Write) -> Result<(), String> {
    let text = |c: &Cell| match c {
        Cell::Text(s) => s.clone(),
        Cell::Real(v) => present(*v, paper_precision).to_string(),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Missing => String::new(),
    };
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            if let Some(first) = records.first() {
                w.write_record(first.iter().map(|(k, _)| *k)).map_err(|e| e.to_string())?;
            }
            for r in records {
                w.write_record(r.iter().map(|(_, c)| text(c))).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            out.write_all(&bytes).map_err(|e| e.to_string())?;
        }
        Format::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    for (k, c) in r {
                        let v = match c {
                            Cell::Text(s) => Value::String(s.clone()),
                            Cell::Real(v) => Number::from_f64(present(*v, paper_precision))
                                .map(Value::Number)
                                .unwrap_or(Value::Null),
                            Cell::Int(i) => Value::from(*i),
                            Cell::Bool(b) => Value::Bool(*b),
                            Cell::Missing => Value::Null,
                        };
                        m.insert((*k).to_string(), v);
                    }
                    Value::Object(m)
                })
                .collect();
            let s = serde_json::to_string_pretty(&Value::Array(rows)).map_err(|e| e.to_string())?;
            writeln!(out, "{s}").map_err(|e| e.to_string())?;
        }
    }
    out.flush().map_err(|e| e.to_string())
}
