//! The `loopkit` command line.
//!
//! [`run`] takes the argument vector and output streams and returns the
//! process exit code, so the whole front end is testable in-process.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use loopkit::catalog::{emit_record, parse_catalog, parse_raw_catalog, CatalogError, CatalogRecord};
use loopkit::enumerate::{enumerate_loops, MAX_ENUM_ORDER};
use loopkit::report::{self, json_envelope, ReportFormat};
use loopkit::ring::{self, RingError, RingIdentityId};
use loopkit::survey::{survey, SurveyFilter};
use loopkit::sweep::{self, SweepCheck, SweepError, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "loopkit", version, about = "Finite loop toolkit: identities, loop rings, catalogs and sweeps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, default_value = "text", value_parser = parse_format)]
    pub format: ReportFormat,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse catalogs and validate every table.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the classification row of every record.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check an identity on the GF(2) loop ring of every record.
    RingCheck {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        identity: RingIdentityId,
        /// Override the order cap for the identity.
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Classify a catalog and report aggregate counts.
    Survey {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value = "all")]
        filter: SurveyFilter,
        #[command(flatten)]
        common: Common,
    },
    /// Verify statements on every loop of the given orders.
    Sweep {
        #[arg(long = "order", required = true)]
        orders: Vec<usize>,
        /// Checks to run; default is every check admissible at each order.
        #[arg(long = "check")]
        checks: Vec<SweepCheck>,
        /// Allow order 7, and order 6 for ring checks.
        #[arg(long)]
        long: bool,
        /// Include wall-clock times in the output.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Write every normalized loop of one order in catalog format.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Required for order 7.
        #[arg(long)]
        long: bool,
    },
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: report::ReportError| e.to_string())
}

/// Exit code plus a single-line diagnostic.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_INVALID, format!("error: {e}"))
    }
}

impl From<report::ReportError> for Failure {
    fn from(e: report::ReportError) -> Self {
        Failure::new(EXIT_INVALID, format!("error: {e}"))
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let rendered = e.render().to_string();
                    let line = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
                    let _ = writeln!(err, "{line}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

fn with_jobs<R: Send>(jobs: u16, f: impl FnOnce() -> R + Send) -> Result<R, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(usize::from(jobs))
        .build()
        .map_err(|e| Failure::new(EXIT_USAGE, format!("error: cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_INVALID, format!("error: {}: {e}", path.display())))
}

fn load_records(files: &[PathBuf]) -> Result<Vec<CatalogRecord>, Failure> {
    let mut all = Vec::new();
    for path in files {
        let text = read_file(path)?;
        let recs = parse_catalog(&text).map_err(|e| catalog_failure(path, &e))?;
        all.extend(recs);
    }
    Ok(all)
}

fn catalog_failure(path: &Path, e: &CatalogError) -> Failure {
    Failure::new(EXIT_INVALID, format!("error: {}: {e}", path.display()))
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Validate { files, common } => validate(&files, common.format, out),
        Command::Classify { files, common } => {
            let recs = load_records(&files)?;
            let report = with_jobs(common.jobs, || survey(&recs, SurveyFilter::All))?;
            let bytes = match common.format {
                ReportFormat::Csv => report::rows_csv(&report.records)?,
                ReportFormat::Json => report::write_report(&report, ReportFormat::Json)?,
                ReportFormat::Text => {
                    let mut text = report::rows_text(&report.records);
                    for c in &report.records {
                        for note in &c.notes {
                            text.push_str(&format!("{}: {note}\n", c.name));
                        }
                    }
                    text.into_bytes()
                }
            };
            out.write_all(&bytes)?;
            Ok(EXIT_OK)
        }
        Command::RingCheck { files, identity, cap, common } => {
            let recs = load_records(&files)?;
            ring_check(&recs, identity, cap, &common, out, err)
        }
        Command::Survey { files, filter, common } => {
            let recs = load_records(&files)?;
            let report = with_jobs(common.jobs, || survey(&recs, filter))?;
            out.write_all(&report::write_report(&report, common.format)?)?;
            Ok(EXIT_OK)
        }
        Command::Sweep { orders, checks, long, timing, common } => {
            run_sweep(orders, checks, long, timing, &common, out, err)
        }
        Command::Enumerate { order, long } => enumerate(order, long, out),
    }
}

#[derive(Serialize)]
struct ValidateAggregates {
    records: usize,
    valid: usize,
    invalid: usize,
}

#[derive(Serialize)]
struct ValidateRow {
    file: String,
    name: Option<String>,
    line: usize,
    ok: bool,
    error: Option<String>,
}

fn validate(files: &[PathBuf], format: ReportFormat, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut rows = Vec::new();
    for path in files {
        let file = path.display().to_string();
        let text = read_file(path)?;
        let raw = match parse_raw_catalog(&text) {
            Ok(raw) => raw,
            Err(e) => {
                let line = match &e {
                    CatalogError::Parse { line, .. } => *line,
                    _ => 0,
                };
                rows.push(ValidateRow { file, name: None, line, ok: false, error: Some(e.to_string()) });
                continue;
            }
        };
        let mut seen = std::collections::HashMap::new();
        for r in &raw {
            let error = if let Some(first) = seen.insert(r.name.clone(), r.source_line) {
                Some(format!("duplicate record name (first defined on line {first})"))
            } else {
                r.validate().err().map(|e| match e {
                    CatalogError::Validation { source, .. } => source.to_string(),
                    other => other.to_string(),
                })
            };
            rows.push(ValidateRow {
                file: file.clone(),
                name: Some(r.name.clone()),
                line: r.source_line,
                ok: error.is_none(),
                error,
            });
        }
    }
    let invalid = rows.iter().filter(|r| !r.ok).count();
    match format {
        ReportFormat::Json => {
            let agg = ValidateAggregates { records: rows.len(), valid: rows.len() - invalid, invalid };
            out.write_all(&json_envelope(&agg, &rows)?)?;
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["file", "name", "line", "ok", "error"]).map_err(report::ReportError::from)?;
            for r in &rows {
                w.write_record([
                    r.file.as_str(),
                    r.name.as_deref().unwrap_or(""),
                    &r.line.to_string(),
                    &r.ok.to_string(),
                    r.error.as_deref().unwrap_or(""),
                ])
                .map_err(report::ReportError::from)?;
            }
            out.write_all(&w.into_inner().map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?)?;
        }
        ReportFormat::Text => {
            for r in &rows {
                match (&r.name, &r.error) {
                    (Some(name), None) => writeln!(out, "ok {name} ({}:{})", r.file, r.line)?,
                    (Some(name), Some(e)) => writeln!(out, "error {name} ({}:{}): {e}", r.file, r.line)?,
                    (None, e) => writeln!(out, "error {}: {}", r.file, e.as_deref().unwrap_or(""))?,
                }
            }
        }
    }
    Ok(if invalid == 0 { EXIT_OK } else { EXIT_INVALID })
}

#[derive(Serialize)]
struct RingAggregates {
    identity: &'static str,
    records: usize,
    holds: usize,
    fails: usize,
}

#[derive(Serialize)]
struct RingRow {
    name: String,
    order: usize,
    holds: bool,
    witness: Option<String>,
}

fn ring_check(
    recs: &[CatalogRecord],
    identity: RingIdentityId,
    cap: Option<usize>,
    common: &Common,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    // Reject oversized records before any work so a cap problem is a usage
    // error rather than a partial report.
    let limit = cap.unwrap_or_else(|| identity.default_cap());
    if let Some(r) = recs.iter().find(|r| r.table.order() > limit) {
        return Err(Failure::new(
            EXIT_USAGE,
            format!(
                "error: record `{}`: {}",
                r.name,
                RingError::OrderExceedsCap { identity, order: r.table.order(), cap: limit }
            ),
        ));
    }
    let results: Vec<Result<Option<ring::RingWitness>, RingError>> = with_jobs(common.jobs, || {
        recs.iter().map(|r| ring::par_ring_identity_check(&r.table, identity, cap)).collect()
    })?;
    let mut rows = Vec::with_capacity(recs.len());
    for (r, res) in recs.iter().zip(results) {
        let witness = res.map_err(|e| Failure::new(EXIT_INVALID, format!("error: record `{}`: {e}", r.name)))?;
        rows.push(RingRow {
            name: r.name.clone(),
            order: r.table.order(),
            holds: witness.is_none(),
            witness: witness.map(|w| w.to_string()),
        });
    }
    let fails = rows.iter().filter(|r| !r.holds).count();
    match common.format {
        ReportFormat::Json => {
            let agg =
                RingAggregates { identity: identity.name(), records: rows.len(), holds: rows.len() - fails, fails };
            out.write_all(&json_envelope(&agg, &rows)?)?;
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "order", "identity", "holds", "witness"]).map_err(report::ReportError::from)?;
            for r in &rows {
                w.write_record([
                    r.name.as_str(),
                    &r.order.to_string(),
                    identity.name(),
                    &r.holds.to_string(),
                    r.witness.as_deref().unwrap_or(""),
                ])
                .map_err(report::ReportError::from)?;
            }
            out.write_all(&w.into_inner().map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?)?;
        }
        ReportFormat::Text => {
            for r in &rows {
                match &r.witness {
                    None => writeln!(out, "{}: {identity} holds", r.name)?,
                    Some(w) => writeln!(out, "{}: {w}", r.name)?,
                }
            }
        }
    }
    for r in rows.iter().filter(|r| !r.holds) {
        writeln!(err, "record `{}`: {}", r.name, r.witness.as_deref().unwrap_or(""))?;
    }
    Ok(if fails == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[allow(clippy::too_many_arguments)]
fn run_sweep(
    orders: Vec<usize>,
    checks: Vec<SweepCheck>,
    long: bool,
    timing: bool,
    common: &Common,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    // Without explicit checks, each order gets every check admissible there.
    let specs: Vec<SweepSpec> = if checks.is_empty() {
        orders
            .iter()
            .map(|&o| SweepSpec {
                orders: vec![o],
                checks: SweepCheck::ALL.into_iter().filter(|c| o <= c.max_order(long)).collect(),
                long,
            })
            .collect()
    } else {
        vec![SweepSpec { orders, checks, long }]
    };
    for s in &specs {
        s.validate().map_err(sweep_failure)?;
    }
    let result = with_jobs(common.jobs, || {
        let mut entries = Vec::new();
        for s in &specs {
            entries.extend(sweep::run_sweep(s)?.entries);
        }
        Ok::<_, SweepError>(sweep::SweepResult { long, entries })
    })?
    .map_err(sweep_failure)?;
    let bytes = match common.format {
        ReportFormat::Json => sweep::sweep_json(&result, timing)?,
        ReportFormat::Csv => sweep::sweep_csv(&result, timing)?,
        ReportFormat::Text => sweep::sweep_text(&result, timing).into_bytes(),
    };
    out.write_all(&bytes)?;
    for e in result.entries.iter().filter(|e| !e.passed()) {
        let detail = e.first_violation.as_ref().map(|v| v.detail.as_str()).unwrap_or("");
        writeln!(err, "{} at order {}: {} violations; first: {detail}", e.check, e.order, e.violations)?;
    }
    Ok(if result.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

// Every sweep error is a bad request: an order out of range or an empty spec.
fn sweep_failure(e: SweepError) -> Failure {
    Failure::new(EXIT_USAGE, format!("error: {e}"))
}

fn enumerate(order: usize, long: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(2..=MAX_ENUM_ORDER).contains(&order) {
        return Err(Failure::new(EXIT_USAGE, format!("error: enumeration order must be in 2..={MAX_ENUM_ORDER}")));
    }
    if order == MAX_ENUM_ORDER && !long {
        return Err(Failure::new(EXIT_USAGE, format!("error: order {order} enumeration requires --long")));
    }
    let mut w = BufWriter::new(out);
    let mut index = 0u64;
    let mut buf = String::new();
    let mut io_err: Option<io::Error> = None;
    enumerate_loops(order, |l| {
        if io_err.is_some() {
            return;
        }
        index += 1;
        buf.clear();
        if index > 1 {
            buf.push('\n');
        }
        emit_record(&mut buf, &format!("{order}.{index}"), l);
        if let Err(e) = w.write_all(buf.as_bytes()) {
            io_err = Some(e);
        }
    })
    .map_err(|e| Failure::new(EXIT_USAGE, format!("error: {e}")))?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    w.flush()?;
    Ok(EXIT_OK)
}
