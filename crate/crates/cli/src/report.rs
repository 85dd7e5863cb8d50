//! Report documents and their JSON and CSV forms.

use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = UsageError;
    fn from_str(s: &str) -> Result<Self, UsageError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(UsageError(format!("unknown format {s:?} (json or csv)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity or inequality being tested.
    pub reference: String,
    pub status: Status,
    pub lhs: f64,
    pub rhs: f64,
    pub defect: f64,
    pub tolerance: f64,
    pub millis: u64,
}

impl Check {
    /// A check whose outcome was decided by the caller.
    pub fn with_status(name: &str, reference: &str, ok: bool, lhs: f64, rhs: f64, defect: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            reference: reference.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            lhs,
            rhs,
            defect,
            tolerance,
            millis: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "seed", "name", "reference", "status", "lhs", "rhs", "defect", "tolerance", "millis"])
            .expect("in-memory write");
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "fail" };
            w.write_record([
                self.suite.as_str(),
                &self.seed.to_string(),
                &c.name,
                &c.reference,
                status,
                &c.lhs.to_string(),
                &c.rhs.to_string(),
                &c.defect.to_string(),
                &c.tolerance.to_string(),
                &c.millis.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// A plain table of named numeric columns, used by scans.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub scan: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("table serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r.iter().map(|v| v.to_string())).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
        }
    }
}

/// Writes to `path`, or standard output when `None`.
pub fn emit(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
