//! Plain-text loop catalogs.
//!
//! ```text
//! # comment
//! loop 12.1
//! order 12
//! 1 2 3 ... 12
//! ...
//! ```
//!
//! A record is a `loop <name>` header, an `order <n>` line and exactly `n`
//! rows of `n` whitespace-separated integers in `1..=n`. Blank lines separate
//! records; `#` lines are comments and may appear anywhere.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Read;

use thiserror::Error;

use crate::table::{validate_table, LoopError, LoopTable, MAX_ORDER};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("record `{name}` (line {line}): {source}")]
    Validation {
        name: String,
        line: usize,
        #[source]
        source: LoopError,
    },
    #[error("line {line}: duplicate record name `{name}` (first defined on line {first})")]
    DuplicateName { name: String, line: usize, first: usize },
    #[error("reading catalog: {0}")]
    Io(#[from] std::io::Error),
}

/// A syntactically well-formed record whose table has not been validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawRecord {
    pub name: String,
    pub rows: Vec<Vec<usize>>,
    pub source_line: usize,
}

impl RawRecord {
    pub fn validate(&self) -> Result<CatalogRecord, CatalogError> {
        let table = validate_table(&self.rows).map_err(|source| CatalogError::Validation {
            name: self.name.clone(),
            line: self.source_line,
            source,
        })?;
        Ok(CatalogRecord { name: self.name.clone(), table, source_line: self.source_line })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRecord {
    pub name: String,
    pub table: LoopTable,
    /// 1-indexed line of the `loop` header.
    pub source_line: usize,
}

fn parse_err(line: usize, reason: impl Into<String>) -> CatalogError {
    CatalogError::Parse { line, reason: reason.into() }
}

enum State {
    Idle,
    Header { name: String, start: usize },
    Rows { name: String, start: usize, order: usize, rows: Vec<Vec<usize>> },
}

/// Split a catalog into records without validating the tables.
pub fn parse_raw_catalog(text: &str) -> Result<Vec<RawRecord>, CatalogError> {
    let mut out = Vec::new();
    let mut state = State::Idle;
    let mut last_line = 0;
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw_line.trim();
        if line.starts_with('#') {
            continue;
        }
        state = match state {
            State::Idle => {
                if line.is_empty() {
                    State::Idle
                } else {
                    let name = line
                        .strip_prefix("loop")
                        .filter(|rest| rest.is_empty() || rest.starts_with(char::is_whitespace))
                        .ok_or_else(|| parse_err(lineno, format!("expected `loop <name>`, found `{line}`")))?
                        .trim();
                    if name.is_empty() {
                        return Err(parse_err(lineno, "record name is empty"));
                    }
                    State::Header { name: name.to_string(), start: lineno }
                }
            }
            State::Header { name, start } => {
                let value = line
                    .strip_prefix("order")
                    .map(str::trim)
                    .ok_or_else(|| parse_err(lineno, format!("expected `order <n>`, found `{line}`")))?;
                let order: usize = value.parse().map_err(|_| parse_err(lineno, format!("invalid order `{value}`")))?;
                if order == 0 || order > MAX_ORDER {
                    return Err(parse_err(lineno, format!("order must be in 1..={MAX_ORDER}, got {order}")));
                }
                State::Rows { name, start, order, rows: Vec::with_capacity(order) }
            }
            State::Rows { name, start, order, mut rows } => {
                if line.is_empty() {
                    return Err(parse_err(
                        lineno,
                        format!("record `{name}` has {} of {order} rows before a blank line", rows.len()),
                    ));
                }
                let row = line
                    .split_whitespace()
                    .map(|tok| tok.parse::<usize>().map_err(|_| parse_err(lineno, format!("invalid entry `{tok}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if row.len() != order {
                    return Err(parse_err(lineno, format!("row has {} entries, expected {order}", row.len())));
                }
                rows.push(row);
                if rows.len() == order {
                    out.push(RawRecord { name, rows, source_line: start });
                    State::Idle
                } else {
                    State::Rows { name, start, order, rows }
                }
            }
        };
    }
    match state {
        State::Idle => Ok(out),
        State::Header { name, .. } => {
            Err(parse_err(last_line, format!("unexpected end of input in record `{name}`: missing order")))
        }
        State::Rows { name, order, rows, .. } => Err(parse_err(
            last_line,
            format!("unexpected end of input in record `{name}`: {} of {order} rows", rows.len()),
        )),
    }
}

/// Parse and validate a whole catalog, preserving record order.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogRecord>, CatalogError> {
    let raw = parse_raw_catalog(text)?;
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for r in &raw {
        if let Some(&first) = seen.get(r.name.as_str()) {
            return Err(CatalogError::DuplicateName { name: r.name.clone(), line: r.source_line, first });
        }
        seen.insert(&r.name, r.source_line);
    }
    raw.iter().map(RawRecord::validate).collect()
}

pub fn read_catalog(mut reader: impl Read) -> Result<Vec<CatalogRecord>, CatalogError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_catalog(&text)
}

/// Append one record in canonical form (no trailing blank line).
pub fn emit_record(out: &mut String, name: &str, table: &LoopTable) {
    let _ = writeln!(out, "loop {name}");
    let _ = writeln!(out, "order {}", table.order());
    for row in table.to_rows_one_based() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// Canonical text for a catalog: records separated by single blank lines.
pub fn emit_catalog(records: &[CatalogRecord]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        emit_record(&mut out, &r.name, &r.table);
    }
    out
}
