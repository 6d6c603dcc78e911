//! Run-report plumbing: finding records, the JSON report object, the CSV
//! table shape, and the writers that put both on disk.
//!
//! Reports must be byte-identical across reruns with the same parameters
//! and seed. Everything serialized here is deterministic given those
//! inputs except wall-clock timestamps, which honor the standard
//! `SOURCE_DATE_EPOCH` convention (set it to a unix-seconds value to pin
//! them).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::CliError;

/// Outcome class of one check.
///
/// `Observe` records a measurement with no pass/fail semantics (limits the
/// finite data cannot decide, or diagnostics echoed for plotting).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Observe,
}

/// `Pass`/`Fail` from a boolean check.
pub fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Map a measurement into a JSON-safe slot: JSON has no NaN or infinity,
/// so non-finite values serialize as `null`.
pub fn num(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// One check outcome. The check id is a stable identifier tying the
/// finding to the statement it verifies (e.g. `L3.7-count`,
/// `T2.1-certificate`; the README lists them all). Slots without a
/// meaningful number hold `null`.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub check_id: String,
    pub status: Status,
    pub measured: Option<f64>,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
}

impl Finding {
    pub fn new(
        check_id: &str,
        status: Status,
        measured: Option<f64>,
        expected: Option<f64>,
        tolerance: Option<f64>,
    ) -> Self {
        Finding {
            check_id: check_id.to_string(),
            status,
            measured,
            expected,
            tolerance,
        }
    }
}

/// The single top-level JSON object a run emits.
#[derive(Debug, Serialize)]
pub struct RunReport {
    /// Subcommand name; also the basename of the report files.
    pub command: String,
    /// Effective parameters, defaults included, plus any headline values
    /// the suite promises to surface (sorted keys, so serialization is
    /// stable).
    pub params: BTreeMap<String, serde_json::Value>,
    pub started: String,
    pub ended: String,
    /// Seed consumed by randomized suites; echoed even when unused so the
    /// schema is fixed.
    pub seed: u64,
    /// Identifier of the pseudo-random generator behind `seed`.
    pub generator: String,
    pub findings: Vec<Finding>,
}

/// A per-prime or per-sample table destined for `{command}.csv`: fixed
/// header, rows of pre-formatted cells. An empty table writes no file.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// RFC 3339 UTC timestamp: `SOURCE_DATE_EPOCH` when set and parsable
/// (reruns must be byte-identical, and a pinned clock is the standard way
/// to get there), the wall clock otherwise.
pub fn timestamp() -> String {
    if let Ok(raw) = std::env::var("SOURCE_DATE_EPOCH") {
        let parsed = raw
            .trim()
            .parse::<i64>()
            .ok()
            .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0));
        match parsed {
            Some(at) => return at.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            None => eprintln!("warning: ignoring unparsable SOURCE_DATE_EPOCH={raw:?}"),
        }
    }
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Write `{dir}/{command}.json` (pretty-printed, trailing newline).
pub fn write_json(dir: &Path, report: &RunReport) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{}.json", report.command));
    let body = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::Json(path.clone(), e))?;
    let mut file = fs::File::create(&path).map_err(|e| CliError::Io(path.clone(), e))?;
    file.write_all(body.as_bytes())
        .and_then(|()| file.write_all(b"\n"))
        .map_err(|e| CliError::Io(path.clone(), e))?;
    Ok(path)
}

/// Write `{dir}/{command}.csv` (UTF-8, LF line endings, header row first).
/// Returns `None` without touching disk when the table has no rows.
pub fn write_csv(dir: &Path, command: &str, table: &Table) -> Result<Option<PathBuf>, CliError> {
    if table.rows.is_empty() {
        return Ok(None);
    }
    let path = dir.join(format!("{command}.csv"));
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(&path)
        .map_err(|e| CliError::Csv(path.clone(), e))?;
    writer
        .write_record(&table.header)
        .and_then(|()| {
            table
                .rows
                .iter()
                .try_for_each(|row| writer.write_record(row))
        })
        .and_then(|()| writer.flush().map_err(csv::Error::from))
        .map_err(|e| CliError::Csv(path.clone(), e))?;
    Ok(Some(path))
}
