use std::io::{self, Write};

use genairy::{Error, EvalResult};
use serde::Serialize;

pub const CSV_HEADER: &str = "n,x,method,value,error_estimate";

const REL_DEV_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutputRecord {
    pub n: usize,
    pub x: f64,
    pub method: &'static str,
    pub value: f64,
    pub error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree_ref: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_dev: Option<f64>,
}

impl OutputRecord {
    pub fn new(n: usize, x: f64, r: &EvalResult) -> Self {
        OutputRecord {
            n,
            x,
            method: r.method.as_str(),
            value: r.value,
            error_estimate: r.error_estimate,
            agree_ref: None,
            rel_dev: None,
        }
    }

    pub fn with_reference(mut self, reference: f64) -> Self {
        self.agree_ref = Some(reference);
        self.rel_dev = Some((self.value - reference).abs() / reference.abs().max(REL_DEV_FLOOR));
        self
    }

    pub fn csv_row(&self) -> String {
        let mut row = format!(
            "{},{},{},{},{}",
            self.n,
            num(self.x),
            self.method,
            num(self.value),
            num(self.error_estimate)
        );
        if let (Some(a), Some(d)) = (self.agree_ref, self.rel_dev) {
            row.push_str(&format!(",{},{}", num(a), num(d)));
        }
        row
    }
}

/// 17 significant digits; parses back to the same `f64`.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

pub fn write_records(
    out: &mut impl Write,
    records: &[OutputRecord],
    format: TableFormat,
) -> io::Result<()> {
    match format {
        TableFormat::Csv => {
            let extra = records.first().is_some_and(|r| r.agree_ref.is_some());
            if extra {
                writeln!(out, "{CSV_HEADER},agree_ref,rel_dev")?;
            } else {
                writeln!(out, "{CSV_HEADER}")?;
            }
            for r in records {
                writeln!(out, "{}", r.csv_row())?;
            }
        }
        TableFormat::Json => {
            let s = serde_json::to_string_pretty(records).map_err(io::Error::other)?;
            writeln!(out, "{s}")?;
        }
    }
    out.flush()
}

pub fn error_kind(e: &Error) -> (&'static str, String) {
    match e {
        Error::Domain(m) => ("domain", m.clone()),
        Error::DivisionByZero(m) => ("division-by-zero", m.clone()),
        Error::Pole { .. } => ("pole", e.to_string()),
        Error::Range(m) => ("range", m.clone()),
        Error::NonConvergence(m) => ("non-convergence", m.clone()),
    }
}

/// Exit status for a library error: 2 for bad input, 3 for numerical failure.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::DivisionByZero(_) | Error::Pole { .. } => 2,
        Error::Range(_) | Error::NonConvergence(_) => 3,
    }
}

pub fn report_error(e: &Error) -> u8 {
    let (kind, reason) = error_kind(e);
    eprintln!("error kind={kind} reason={reason:?}");
    exit_code(e)
}
