//! Verification reports: rows of computed-versus-oracle checks with a
//! summary, persisted as JSON or CSV.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How `computed` is compared with `oracle`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    /// `computed ≤ oracle` up to the row tolerance.
    AtMost,
    /// `computed ≥ oracle` up to the row tolerance.
    AtLeast,
    /// `computed` is a finite number; `oracle` is unused.
    Finite,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub suite: String,
    pub name: String,
    pub inputs: String,
    pub relation: Relation,
    pub computed: f64,
    pub oracle: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub abs_tol: f64,
    pub pass: bool,
    /// Informational rows are reported but never fail a run.
    pub flagged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReportRow {
    #[allow(clippy::too_many_arguments)]
    fn build(
        suite: &str,
        name: impl Into<String>,
        inputs: impl Into<String>,
        relation: Relation,
        computed: f64,
        oracle: f64,
        tol: f64,
        abs_tol: f64,
    ) -> Self {
        let (abs_err, pass) = match relation {
            Relation::Equal => {
                let e = (computed - oracle).abs();
                (e, e <= abs_tol || e <= tol * oracle.abs())
            }
            Relation::AtMost => {
                let e = (computed - oracle).max(0.0);
                (e, computed.is_finite() && (e <= abs_tol || e <= tol * oracle.abs()))
            }
            Relation::AtLeast => {
                let e = (oracle - computed).max(0.0);
                (e, computed.is_finite() && (e <= abs_tol || e <= tol * oracle.abs()))
            }
            Relation::Finite => (0.0, computed.is_finite()),
        };
        let rel_err = if relation == Relation::Finite {
            0.0
        } else if oracle != 0.0 {
            abs_err / oracle.abs()
        } else if abs_err == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        ReportRow {
            suite: suite.to_owned(),
            name: name.into(),
            inputs: inputs.into(),
            relation,
            computed,
            oracle,
            abs_err,
            rel_err,
            tol,
            abs_tol,
            pass: pass && !abs_err.is_nan(),
            flagged: false,
            note: None,
        }
    }

    /// Passes when `rel_err ≤ tol` or `abs_err ≤ abs_tol`.
    pub fn equal(suite: &str, name: impl Into<String>, inputs: impl Into<String>, computed: f64, oracle: f64, tol: f64, abs_tol: f64) -> Self {
        Self::build(suite, name, inputs, Relation::Equal, computed, oracle, tol, abs_tol)
    }

    pub fn at_most(suite: &str, name: impl Into<String>, inputs: impl Into<String>, computed: f64, bound: f64, tol: f64) -> Self {
        Self::build(suite, name, inputs, Relation::AtMost, computed, bound, tol, 0.0)
    }

    pub fn at_least(suite: &str, name: impl Into<String>, inputs: impl Into<String>, computed: f64, bound: f64, tol: f64) -> Self {
        Self::build(suite, name, inputs, Relation::AtLeast, computed, bound, tol, 0.0)
    }

    pub fn finite(suite: &str, name: impl Into<String>, inputs: impl Into<String>, computed: f64) -> Self {
        Self::build(suite, name, inputs, Relation::Finite, computed, f64::NAN, 0.0, 0.0)
    }

    /// A row for a check that raised an error instead of producing a value.
    pub fn errored(suite: &str, name: impl Into<String>, inputs: impl Into<String>, err: &Error) -> Self {
        let mut row = Self::build(suite, name, inputs, Relation::Equal, f64::NAN, f64::NAN, 0.0, 0.0);
        row.pass = false;
        row.note = Some(err.to_string());
        row
    }

    pub fn flagged(mut self) -> Self {
        self.flagged = true;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub flagged: usize,
}

impl Summary {
    /// Flagged rows are counted apart from passed and failed ones.
    pub fn of(rows: &[ReportRow]) -> Self {
        let mut s = Summary {
            total: rows.len(),
            ..Default::default()
        };
        for r in rows {
            if r.flagged {
                s.flagged += 1;
            } else if r.pass {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport<C> {
    pub suite: String,
    pub timestamp: String,
    pub config: C,
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

impl<C> VerificationReport<C> {
    pub fn new(suite: impl Into<String>, timestamp: impl Into<String>, config: C, rows: Vec<ReportRow>) -> Self {
        let summary = Summary::of(&rows);
        VerificationReport {
            suite: suite.into(),
            timestamp: timestamp.into(),
            config,
            rows,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Current UTC time, to the second.
pub fn utc_timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Parse {
                input: s.to_owned(),
                grammar: "json | csv",
            }),
        }
    }
}

pub const CSV_HEADER: [&str; 7] = ["suite", "name", "computed", "oracle", "abs_err", "rel_err", "pass"];

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// Serialises the report; JSON carries the full structure, CSV one line per
/// row with 17 significant digits.
pub fn render_report<C: Serialize>(r: &VerificationReport<C>, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r)?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for row in &r.rows {
                w.write_record([
                    row.suite.clone(),
                    row.name.clone(),
                    sci(row.computed),
                    sci(row.oracle),
                    sci(row.abs_err),
                    sci(row.rel_err),
                    row.pass.to_string(),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
    }
}

pub fn write_report<C: Serialize>(r: &VerificationReport<C>, format: ReportFormat, path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_owned(),
        source,
    };
    let text = render_report(r, format)?;
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    w.write_all(text.as_bytes()).map_err(io)?;
    w.flush().map_err(io)
}
