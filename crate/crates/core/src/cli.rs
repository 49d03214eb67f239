//! `qgen` command line: tables of numbers and polynomials, and the
//! identity verifier.
//!
//! Every JSON document has the shape `{"meta": {"command", "params"}, "data"}`
//! with rationals written as `"p/q"` strings. Output is byte-deterministic.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::families::{compute_numbers, FamilyId, FamilyKind, FamilyTable};
use crate::identities::{all_pass, parse_suites, Grid, Suite, Verifier};
use crate::qarith::{parse_scalar, QContext, Scalar};

#[derive(Debug, Parser)]
#[command(
    name = "qgen",
    version,
    about = "Exact q-Bernoulli / q-Genocchi tables and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numbers G_n or B_n for n = 0..=max-n.
    Numbers(TableArgs),
    /// Polynomials in x and y for n = 0..=max-n.
    Poly(PolyArgs),
    /// Run identity suites over a parameter grid.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: FamilyKind,
    #[arg(long, default_value_t = 1)]
    pub order: u32,
    /// Positive rational, e.g. 1/2.
    #[arg(long, env = "QGEN_DEFAULT_Q", default_value = "1/2", value_parser = parse_q, allow_hyphen_values = true)]
    pub q: QContext,
    #[arg(long, default_value_t = 10)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[command(flatten)]
    pub table: TableArgs,
    /// Evaluate at a point, `x=a,y=b`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub at: Option<(Scalar, Scalar)>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma separated suite names, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_suite_list)]
    pub suite: SuiteList,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
    pub alphas: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3", value_parser = parse_m)]
    pub ms: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1/3,1/2,2/3,1", value_parser = parse_q)]
    pub qs: Vec<QContext>,
    /// Worker threads, default all cores; does not change the report.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteList(pub Vec<Suite>);

fn parse_family(text: &str) -> std::result::Result<FamilyKind, String> {
    text.parse().map_err(|e: crate::error::Error| e.to_string())
}

fn parse_q(text: &str) -> std::result::Result<QContext, String> {
    text.parse().map_err(|e: crate::error::Error| e.to_string())
}

fn parse_m(text: &str) -> std::result::Result<u32, String> {
    match text.trim().parse::<u32>() {
        Ok(m) if m >= 1 => Ok(m),
        _ => Err(format!("m must be a positive integer, got {text:?}")),
    }
}

fn parse_suite_list(text: &str) -> std::result::Result<SuiteList, String> {
    parse_suites(text).map(SuiteList).map_err(|e| e.to_string())
}

fn parse_point(text: &str) -> std::result::Result<(Scalar, Scalar), String> {
    let mut x = None;
    let mut y = None;
    for part in text.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected x=a,y=b, got {text:?}"))?;
        let value = parse_scalar(value.trim()).map_err(|e| e.to_string())?;
        let slot = match name.trim() {
            "x" => &mut x,
            "y" => &mut y,
            other => return Err(format!("unknown variable {other:?}")),
        };
        if slot.replace(value).is_some() {
            return Err(format!("variable {} given twice", name.trim()));
        }
    }
    match (x, y) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(format!("expected x=a,y=b, got {text:?}")),
    }
}

/// Rendered output and whether the process should exit with status 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

#[derive(Serialize)]
struct Document<'a> {
    meta: Meta<'a>,
    data: Value,
}

#[derive(Serialize)]
struct Meta<'a> {
    command: &'a str,
    params: Value,
}

fn document(command: &str, params: Value, data: Value) -> String {
    let doc = Document {
        meta: Meta { command, params },
        data,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("json values serialize");
    text.push('\n');
    text
}

fn table_params(args: &TableArgs) -> Value {
    json!({
        "family": args.family.to_string(),
        "order": args.order,
        "q": args.q.q().to_string(),
        "max_n": args.max_n,
    })
}

fn numbers(args: &TableArgs) -> String {
    let family = FamilyId::new(args.family, args.order);
    let values = compute_numbers(family, &args.q, args.max_n);
    match args.format {
        Format::Json => {
            let data = values
                .iter()
                .map(|v| Value::String(v.to_string()))
                .collect();
            document("numbers", table_params(args), Value::Array(data))
        }
        Format::Csv => csv_rows("n,value", values.iter().map(|v| v.to_string())),
    }
}

fn poly(args: &PolyArgs) -> String {
    let t = &args.table;
    let table = FamilyTable::with_polys(FamilyId::new(t.family, t.order), &t.q, t.max_n);
    let polys = (0..=t.max_n).map(|n| table.poly(n));
    if let Some((x, y)) = &args.at {
        let values: Vec<String> = polys.map(|p| p.eval(x, y).to_string()).collect();
        return match t.format {
            Format::Json => {
                let mut params = table_params(t);
                params["at"] = json!({"x": x.to_string(), "y": y.to_string()});
                let data = values.into_iter().map(Value::String).collect();
                document("poly", params, Value::Array(data))
            }
            Format::Csv => csv_rows("n,value", values.into_iter()),
        };
    }
    match t.format {
        Format::Json => {
            let data = polys
                .map(|p| serde_json::to_value(p.to_wire()).expect("wire records serialize"))
                .collect();
            document("poly", table_params(t), Value::Array(data))
        }
        Format::Csv => csv_rows("n,poly", polys.map(|p| p.to_string())),
    }
}

fn csv_rows(header: &str, values: impl Iterator<Item = String>) -> String {
    let mut out = format!("{header}\n");
    for (n, v) in values.enumerate() {
        out.push_str(&format!("{n},{v}\n"));
    }
    out
}

/// The grid a `verify` invocation checks.
pub fn grid_from(args: &VerifyArgs) -> Result<Grid> {
    Grid {
        n_max: args.n_max,
        alpha_set: args.alphas.iter().copied().collect(),
        m_set: args.ms.iter().copied().collect(),
        q_set: args.qs.iter().map(|c| c.q().clone()).collect(),
        ..Grid::default()
    }
    .validated()
}

fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let grid = grid_from(args)?;
    let strings = |v: &[Scalar]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let params = json!({
        "suite": args.suite.0.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "n_max": grid.n_max,
        "alphas": grid.alpha_set,
        "ms": grid.m_set,
        "qs": strings(&grid.q_set),
        "x_points": strings(&grid.x_points),
        "y_points": strings(&grid.y_points),
    });
    let workers = match args.workers {
        Some(w) => w as usize,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let verifier = Verifier::new(grid).with_workers(workers);
    let reports = verifier.run_suites(&args.suite.0);
    let data = serde_json::to_value(&reports).expect("reports serialize");
    Ok(Outcome {
        text: document("verify", params, data),
        success: all_pass(&reports),
    })
}

/// Runs one command and renders its output without writing it anywhere.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Numbers(args) => Ok(Outcome {
            text: numbers(args),
            success: true,
        }),
        Command::Poly(args) => Ok(Outcome {
            text: poly(args),
            success: true,
        }),
        Command::Verify(args) => verify(args),
    }
}

fn output_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Numbers(a) => a.output.as_ref(),
        Command::Poly(a) => a.table.output.as_ref(),
        Command::Verify(a) => a.output.as_ref(),
    }
}

/// Executes and writes to `--output` or standard output. Returns the exit
/// status.
pub fn run(cli: &Cli) -> i32 {
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let written = match output_path(cli) {
        Some(path) => fs::write(path, &outcome.text),
        None => io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    if outcome.success {
        0
    } else {
        1
    }
}
