//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the data is rejected (validation,
//! integrality, a failed verify run), 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::arith::{format_decimal, Int, Rational};
use crate::branch::{derive_branch, BranchData, SurfaceIntrinsics};
use crate::error::{Error, Result};
use crate::evaluate::{evaluate, evaluate_all, Evaluation};
use crate::families::{hirzebruch, k3, veronese, FamilyInstance};
use crate::par::Execution;
use crate::scan::{scan, FamilySpec, InstanceSummary, KPolicy, ScanResult, SlopeRecord};
use crate::verify::{self, Level, VerifyConfig, VerifyReport};

const NONE: &str = "none";

#[derive(Debug, Parser)]
#[command(name = "fibered-chern", version, about = "Chern numbers of Galois covers of generic projections")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate raw branch-curve data.
    Compute(ComputeArgs),
    /// Derive branch data from surface invariants, then evaluate.
    FromIntrinsics(IntrinsicsArgs),
    /// Evaluate one member of a named family.
    Family {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Evaluate a parameter grid of a family.
    Scan(ScanArgs),
    /// Run the self-verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("which_k").required(true)))]
struct KSelect {
    /// Cover index, 1 <= k <= n.
    #[arg(long, group = "which_k")]
    k: Option<u64>,
    /// Every k in 1..n.
    #[arg(long, group = "which_k")]
    all_k: bool,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Degree of the projection.
    #[arg(long)]
    n: u64,
    /// Degree of the branch curve.
    #[arg(long, allow_hyphen_values = true)]
    m: Int,
    /// Class of the branch curve.
    #[arg(long, allow_hyphen_values = true)]
    mu: Int,
    /// Number of cusps.
    #[arg(long, allow_hyphen_values = true)]
    rho: Int,
    /// Number of nodes.
    #[arg(long, allow_hyphen_values = true)]
    d: Int,
    #[command(flatten)]
    k: KSelect,
    /// Evaluate even if validation fails; violations become flags.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct IntrinsicsArgs {
    #[arg(long, allow_hyphen_values = true)]
    c1sq: Int,
    #[arg(long, allow_hyphen_values = true)]
    c2: Int,
    /// Degree `E^2` of the embedding.
    #[arg(long)]
    deg: u64,
    /// `E.K`.
    #[arg(long, allow_hyphen_values = true)]
    ek: Int,
    #[command(flatten)]
    k: KSelect,
}

#[derive(Debug, Subcommand)]
enum FamilyCmd {
    Veronese {
        #[arg(long)]
        b: u64,
        #[command(flatten)]
        k: KSelect,
    },
    Hirzebruch {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[command(flatten)]
        k: KSelect,
    },
    K3 {
        #[command(flatten)]
        k: KSelect,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Slope,
    Signature,
    Full,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[command(subcommand)]
    family: ScanFamily,
    /// Which summary to emit alongside the rows.
    #[arg(long, value_enum, default_value_t = Report::Full, global = true)]
    report: Report,
    /// Evaluate one k only (default: every k).
    #[arg(long, global = true)]
    k: Option<u64>,
    /// Worker threads; 1 runs sequentially, 0 or absent uses every core.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum ScanFamily {
    Veronese {
        #[arg(long)]
        b_min: u64,
        #[arg(long)]
        b_max: u64,
    },
    Hirzebruch {
        /// `LO..HI` or a single value.
        #[arg(long, value_parser = parse_range)]
        t: RangeArg,
        #[arg(long, value_parser = parse_range)]
        a_range: RangeArg,
        #[arg(long, value_parser = parse_range)]
        b_range: RangeArg,
    },
    K3,
    /// Explicit branch data, each given as `n,m,mu,rho,d`.
    Raw {
        #[arg(long = "data", value_parser = parse_branch, required = true)]
        data: Vec<BranchData>,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Largest projection degree in the synthetic grid.
    #[arg(long, default_value_t = 12)]
    max_n: u64,
    /// Check the named families only.
    #[arg(long)]
    families_only: bool,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
struct RangeArg(u64, u64);

impl RangeArg {
    fn inclusive(self) -> RangeInclusive<u64> {
        self.0..=self.1
    }
}

fn parse_range(s: &str) -> std::result::Result<RangeArg, String> {
    let num = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok(RangeArg(num(lo)?, num(hi.trim_start_matches('='))?)),
        None => num(s).map(|v| RangeArg(v, v)),
    }
}

fn parse_branch(s: &str) -> std::result::Result<BranchData, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(format!("expected n,m,mu,rho,d; got {s:?}"));
    }
    let n = parts[0].parse::<u64>().map_err(|e| format!("n: {e}"))?;
    let big = |i: usize| parts[i].parse::<Int>().map_err(|e| format!("{:?}: {e}", parts[i]));
    Ok(BranchData { n, m: big(1)?, mu: big(2)?, rho: big(3)?, d: big(4)? })
}

/// One emitted row. Every number is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub source: String,
    pub n: String,
    pub m: String,
    pub mu: String,
    pub rho: String,
    pub d: String,
    pub k: String,
    pub c1sq: String,
    pub c2: String,
    pub signature: String,
    /// `p/q`, or `none` when `c2 = 0`.
    pub slope: String,
    /// Four decimal places, or `none`.
    pub slope_decimal: String,
    pub flags: Vec<String>,
}

impl OutputRecord {
    pub fn new(source: impl Into<String>, data: &BranchData, eval: &Evaluation) -> Self {
        let chern = eval.chern();
        let slope = eval.geography.slope.as_ref();
        OutputRecord {
            source: source.into(),
            n: data.n.to_string(),
            m: data.m.to_string(),
            mu: data.mu.to_string(),
            rho: data.rho.to_string(),
            d: data.d.to_string(),
            k: eval.k.to_string(),
            c1sq: chern.c1sq.to_string(),
            c2: chern.c2.to_string(),
            signature: eval.geography.signature.to_string(),
            slope: slope.map_or_else(|| NONE.to_owned(), Rational::to_string),
            slope_decimal: slope.map_or_else(|| NONE.to_owned(), |s| format_decimal(s, 4)),
            flags: eval.flags.clone(),
        }
    }

    fn csv_row(&self) -> [String; 12] {
        [
            self.source.clone(),
            self.n.clone(),
            self.m.clone(),
            self.mu.clone(),
            self.rho.clone(),
            self.d.clone(),
            self.k.clone(),
            self.c1sq.clone(),
            self.c2.clone(),
            self.signature.clone(),
            self.slope.clone(),
            self.flags.join(";"),
        ]
    }

    fn table_slope(&self) -> String {
        if self.slope == NONE {
            NONE.to_owned()
        } else {
            format!("{} ({})", self.slope, self.slope_decimal)
        }
    }
}

pub const CSV_HEADER: [&str; 12] =
    ["source", "n", "m", "mu", "rho", "d", "k", "c1sq", "c2", "signature", "slope", "flags"];

/// Parses `args` (program name first), runs the command and writes to `out`
/// / `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let fmt = cli.format;
    match &cli.command {
        Command::Compute(a) => {
            let data = BranchData { n: a.n, m: a.m.clone(), mu: a.mu.clone(), rho: a.rho.clone(), d: a.d.clone() };
            let records = records_for("raw", &data, &a.k, a.force)?;
            emit(fmt, &records, summary_for("compute", &records), out, err)
        }
        Command::FromIntrinsics(a) => {
            let s = SurfaceIntrinsics { c1sq: a.c1sq.clone(), c2: a.c2.clone(), deg_n: a.deg, ek: a.ek.clone() };
            let data = derive_branch(&s)?;
            let records = records_for("intrinsics", &data, &a.k, false)?;
            emit(fmt, &records, summary_for("from-intrinsics", &records), out, err)
        }
        Command::Family { family } => {
            let (inst, k) = match family {
                FamilyCmd::Veronese { b, k } => (veronese(*b)?, k),
                FamilyCmd::Hirzebruch { t, a, b, k } => (hirzebruch(*t, *a, *b)?, k),
                FamilyCmd::K3 { k } => (k3(), k),
            };
            let records = family_records(&inst, k)?;
            emit(fmt, &records, summary_for("family", &records), out, err)
        }
        Command::Scan(a) => {
            let spec = match &a.family {
                ScanFamily::Veronese { b_min, b_max } => FamilySpec::Veronese { b: *b_min..=*b_max },
                ScanFamily::Hirzebruch { t, a_range, b_range } => {
                    FamilySpec::Hirzebruch { t: t.inclusive(), a: a_range.inclusive(), b: b_range.inclusive() }
                }
                ScanFamily::K3 => FamilySpec::K3,
                ScanFamily::Raw { data } => FamilySpec::Raw(data.clone()),
            };
            let policy = a.k.map_or(KPolicy::All, KPolicy::Fixed);
            let res = scan(&spec, policy, Execution::from_threads(a.threads))?;
            let records: Vec<OutputRecord> =
                res.rows.iter().map(|r| OutputRecord::new(r.label.to_string(), &r.branch, &r.eval)).collect();
            emit(fmt, &records, scan_summary(&res, a.report), out, err)
        }
        Command::Verify(a) => {
            let cfg = VerifyConfig {
                max_n: a.max_n,
                families_only: a.families_only,
                execution: Execution::from_threads(a.threads),
                ..VerifyConfig::default()
            };
            let report = verify::run(&cfg);
            write_verify(fmt, &report, out)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
    }
}

fn records_for(source: &str, data: &BranchData, k: &KSelect, force: bool) -> Result<Vec<OutputRecord>> {
    let evals = match k.k {
        Some(k) => vec![evaluate(data, k, force)?],
        None => evaluate_all(data, force)?,
    };
    Ok(evals.iter().map(|e| OutputRecord::new(source, data, e)).collect())
}

fn family_records(inst: &FamilyInstance, k: &KSelect) -> Result<Vec<OutputRecord>> {
    records_for(&inst.label.to_string(), &inst.branch, k, false)
}

fn summary_for(command: &str, records: &[OutputRecord]) -> Value {
    json!({
        "command": command,
        "record_count": records.len().to_string(),
        "flagged_records": records.iter().filter(|r| !r.flags.is_empty()).count().to_string(),
    })
}

fn slope_json(rec: &Option<SlopeRecord>) -> Value {
    match rec {
        None => Value::String(NONE.to_owned()),
        Some(r) => json!({
            "source": r.label.to_string(),
            "k": r.k.to_string(),
            "slope": r.slope.to_string(),
            "slope_decimal": format_decimal(&r.slope, 4),
        }),
    }
}

fn instance_json(s: &InstanceSummary) -> Value {
    let opt = |v: Option<String>| v.unwrap_or_else(|| NONE.to_owned());
    json!({
        "source": s.label.to_string(),
        "n": s.n.to_string(),
        "sign_change_k": opt(s.sign_change_k.map(|k| k.to_string())),
        "crossing_ratio": opt(s.crossing_ratio.as_ref().map(Rational::to_string)),
        "crossing_ratio_decimal": opt(s.crossing_ratio.as_ref().map(|r| format_decimal(r, 4))),
    })
}

fn scan_summary(res: &ScanResult, report: Report) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), json!("scan"));
    map.insert("record_count".into(), json!(res.rows.len().to_string()));
    map.insert("findings".into(), json!(res.findings.len().to_string()));
    if matches!(report, Report::Slope | Report::Full) {
        map.insert("max_slope".into(), slope_json(&res.max_slope));
        map.insert("max_cover_slope".into(), slope_json(&res.max_cover_slope));
        map.insert("nearest_printed_slope".into(), slope_json(&res.nearest_printed_slope));
    }
    if matches!(report, Report::Signature | Report::Full) {
        map.insert("sign_change".into(), Value::Array(res.instances.iter().map(instance_json).collect()));
    }
    Value::Object(map)
}

/// `path: value` lines for a JSON summary, in key order.
fn flatten(prefix: &str, v: &Value, lines: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, v, lines);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, lines);
            }
        }
        Value::String(s) => lines.push(format!("{prefix}: {s}")),
        other => lines.push(format!("{prefix}: {other}")),
    }
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::InvalidParameter(format!("output error: {e}"))
}

fn emit(
    fmt: Format,
    records: &[OutputRecord],
    summary: Value,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let mut lines = Vec::new();
    flatten("", &summary, &mut lines);
    match fmt {
        Format::Json => {
            let doc = json!({ "records": records, "summary": summary });
            let text = serde_json::to_string_pretty(&doc).map_err(io)?;
            writeln!(out, "{text}").map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).map_err(io)?;
            for r in records {
                w.write_record(r.csv_row()).map_err(io)?;
            }
            out.write_all(&w.into_inner().map_err(io)?).map_err(io)?;
            for l in &lines {
                writeln!(err, "# {l}").map_err(io)?;
            }
        }
        Format::Table => {
            write_table(records, out).map_err(io)?;
            writeln!(out).map_err(io)?;
            for l in &lines {
                writeln!(out, "# {l}").map_err(io)?;
            }
        }
    }
    Ok(0)
}

fn write_table(records: &[OutputRecord], out: &mut dyn Write) -> std::io::Result<()> {
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            let mut row = r.csv_row().to_vec();
            row[10] = r.table_slope();
            row
        })
        .collect();
    let mut widths: Vec<usize> = CSV_HEADER.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let last = CSV_HEADER.len() - 1;
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i == last {
                s.push_str(c);
            } else {
                s.push_str(&format!("{c:<w$}  ", w = widths[i]));
            }
        }
        s.trim_end().to_owned()
    };
    writeln!(out, "{}", line(CSV_HEADER.to_vec()))?;
    for row in &rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn write_verify(fmt: Format, report: &VerifyReport, out: &mut dyn Write) -> Result<()> {
    if fmt == Format::Json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "level": if c.level == Level::Invariant { "invariant" } else { "warning" },
                    "cases": c.cases.to_string(),
                    "failures": c.failures.to_string(),
                    "counterexample": c.counterexample.clone().unwrap_or_else(|| NONE.to_owned()),
                })
            })
            .collect();
        let doc = json!({ "records": [], "summary": { "ok": report.ok(), "checks": checks } });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(io)?).map_err(io)?;
        return Ok(());
    }
    for c in &report.checks {
        writeln!(out, "{c}").map_err(io)?;
    }
    writeln!(out, "{}", if report.ok() { "all invariants hold" } else { "invariant failure" }).map_err(io)?;
    Ok(())
}
