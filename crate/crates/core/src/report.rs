//! Deterministic serialization of survey reports.
//!
//! JSON reports share one envelope, `{"aggregates": {...}, "records": [...]}`,
//! which the sweep runner reuses. CSV carries per-record rows only; text is a
//! short human summary followed by an aligned table.

use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::conditions::{CondSet, Family, Profile};
use crate::survey::{Classification, Flags, SurveyReport};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unsupported format `{0}` (expected json, csv or text)")]
    UnsupportedFormat(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for ReportFormat {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(ReportError::UnsupportedFormat(other.to_string())),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Text => "text",
        })
    }
}

#[derive(Serialize)]
struct Envelope<'a, A: Serialize, R: Serialize> {
    aggregates: &'a A,
    records: &'a [R],
}

/// Pretty-printed `{"aggregates": ..., "records": [...]}` with a trailing
/// newline. Key order follows struct field order.
pub fn json_envelope<A: Serialize, R: Serialize>(aggregates: &A, records: &[R]) -> Result<Vec<u8>, ReportError> {
    let mut out = serde_json::to_vec_pretty(&Envelope { aggregates, records })?;
    out.push(b'\n');
    Ok(out)
}

/// Triple profile keyed by the condition subset, in bit order.
struct ProfileJson<'a>(&'a Profile);

impl Serialize for ProfileJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(8))?;
        for (bits, count) in self.0.counts.iter().enumerate() {
            let set = CondSet::from_flags(bits & 1 != 0, bits & 2 != 0, bits & 4 != 0);
            map.serialize_entry(&set.format(Family::Triple), count)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct SurveyAggregates {
    filter: &'static str,
    total: u64,
    surveyed: u64,
    non_moufang_bol: u64,
    srar: u64,
    non_srar: u64,
    non_srar_with_def: u64,
}

#[derive(Serialize)]
struct RecordJson<'a> {
    name: &'a str,
    order: usize,
    flags: &'a Flags,
    triple_profile: ProfileJson<'a>,
}

pub const CSV_HEADER: [&str; 12] =
    ["name", "order", "right_bol", "moufang", "srar", "ra2", "extra", "group", "def_everywhere", "de", "df", "ef"];

fn row_cells(c: &Classification) -> Vec<String> {
    let mut cells = vec![c.name.clone(), c.order.to_string()];
    cells.extend(c.flags.values().iter().map(bool::to_string));
    cells
}

/// CSV rows for the given classifications under [`CSV_HEADER`].
pub fn rows_csv(rows: &[Classification]) -> Result<Vec<u8>, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for c in rows {
        w.write_record(row_cells(c))?;
    }
    w.into_inner().map_err(|e| ReportError::Csv(e.into_error().into()))
}

/// Whitespace-aligned table with the CSV columns.
pub fn rows_text(rows: &[Classification]) -> String {
    let table: Vec<Vec<String>> =
        std::iter::once(CSV_HEADER.iter().map(|s| s.to_string()).collect()).chain(rows.iter().map(row_cells)).collect();
    let widths: Vec<usize> =
        (0..CSV_HEADER.len()).map(|j| table.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in &table {
        let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn census_line(r: &SurveyReport) -> String {
    format!(
        "census: non-Moufang Bol={} SRAR={} non-SRAR={} non-SRAR with D'/E'/F' everywhere={}",
        r.non_moufang_bol, r.srar, r.non_srar, r.non_srar_with_def
    )
}

pub fn write_report(report: &SurveyReport, format: ReportFormat) -> Result<Vec<u8>, ReportError> {
    match format {
        ReportFormat::Json => {
            let aggregates = SurveyAggregates {
                filter: report.filter.name(),
                total: report.total,
                surveyed: report.surveyed,
                non_moufang_bol: report.non_moufang_bol,
                srar: report.srar,
                non_srar: report.non_srar,
                non_srar_with_def: report.non_srar_with_def,
            };
            let records: Vec<RecordJson> = report
                .records
                .iter()
                .map(|c| RecordJson {
                    name: &c.name,
                    order: c.order,
                    flags: &c.flags,
                    triple_profile: ProfileJson(&c.triple_profile),
                })
                .collect();
            json_envelope(&aggregates, &records)
        }
        ReportFormat::Csv => rows_csv(&report.records),
        ReportFormat::Text => {
            let mut out = format!(
                "filter: {}\nrecords: {}\nsurveyed: {}\n{}\n",
                report.filter,
                report.total,
                report.surveyed,
                census_line(report)
            );
            if !report.records.is_empty() {
                out.push('\n');
                out.push_str(&rows_text(&report.records));
            }
            Ok(out.into_bytes())
        }
    }
}
