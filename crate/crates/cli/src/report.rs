//! Newline-delimited JSON records and the table renderer.
//!
//! Every verification emits one record per check with its indexed residuals;
//! records are written in a fixed order through a single writer, so a fixed
//! configuration produces byte-identical output.

use std::io::Write;

use serde::Serialize;

use qappell_core::appell::{AppellReport, ResidualValue};
use qappell_core::Scalar;

#[derive(Serialize)]
pub struct Entry {
    pub index: i64,
    pub value: String,
}

#[derive(Serialize)]
pub struct Record {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
    pub v: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Diagnostic sweeps report what a candidate formula yields; their
    /// `pass` field does not feed the process exit code.
    #[serde(skip_serializing_if = "core::ops::Not::not")]
    pub diagnostic: bool,
    pub residuals: Vec<Entry>,
    pub pass: bool,
}

impl Record {
    pub fn new(check: impl Into<String>, v: &Scalar, residuals: Vec<Entry>, pass: bool) -> Self {
        Record {
            check: check.into(),
            case: None,
            sign: None,
            v: v.to_string(),
            note: None,
            diagnostic: false,
            residuals,
            pass,
        }
    }

    pub fn as_diagnostic(mut self) -> Self {
        self.diagnostic = true;
        self
    }

    pub fn from_scalars(check: impl Into<String>, v: &Scalar, residuals: &[(i64, Scalar)]) -> Self {
        let pass = residuals.iter().all(|(_, r)| r.is_zero());
        let entries = residuals
            .iter()
            .map(|(i, r)| Entry {
                index: *i,
                value: r.to_string(),
            })
            .collect();
        Record::new(check, v, entries, pass)
    }

    pub fn from_appell(report: &AppellReport, v: &Scalar) -> Self {
        let entries = report
            .residuals
            .iter()
            .map(|(i, r)| Entry {
                index: *i,
                value: match r {
                    ResidualValue::Scalar(s) => s.to_string(),
                    ResidualValue::Poly(p) => p.to_string(),
                },
            })
            .collect();
        Record::new(report.check.clone(), v, entries, report.pass)
    }

    pub fn with_case(mut self, case: u8, sign: &str) -> Self {
        self.case = Some(case);
        self.sign = Some(sign.to_string());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

pub struct Reporter {
    format: Format,
    pub all_pass: bool,
}

impl Reporter {
    pub fn new(format: Format) -> Self {
        Reporter {
            format,
            all_pass: true,
        }
    }

    pub fn emit(&mut self, record: &Record) {
        if !record.diagnostic {
            self.all_pass &= record.pass;
        }
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        match self.format {
            Format::Json => {
                let line = serde_json::to_string(record).expect("record serializes");
                writeln!(out, "{line}").expect("stdout");
            }
            Format::Table => {
                let nonzero = record.residuals.iter().filter(|e| e.value != "0").count();
                let status = match (record.pass, record.diagnostic) {
                    (true, _) => "pass",
                    (false, true) => "dev",
                    (false, false) => "FAIL",
                };
                write!(
                    out,
                    "{:<44} {:>5} residuals={:<4} nonzero={}",
                    record.check,
                    status,
                    record.residuals.len(),
                    nonzero
                )
                .expect("stdout");
                if let Some(note) = &record.note {
                    write!(out, "  note: {note}").expect("stdout");
                }
                writeln!(out).expect("stdout");
                if !record.pass {
                    let nonzero_entries: Vec<&Entry> =
                        record.residuals.iter().filter(|e| e.value != "0").collect();
                    for e in nonzero_entries.iter().take(4) {
                        writeln!(out, "    index {:>3}: {}", e.index, e.value).expect("stdout");
                    }
                    if nonzero_entries.len() > 4 {
                        writeln!(out, "    ... {} more", nonzero_entries.len() - 4)
                            .expect("stdout");
                    }
                }
            }
        }
    }
}
