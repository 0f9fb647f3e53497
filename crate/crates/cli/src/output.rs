//! CSV tables and the JSON summary.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::{io_err, Result, RunConfig};

pub const SUMMARY_SCHEMA: u32 = 1;

/// A float with 17 significant digits, so it round-trips exactly.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// One measured quantity against its reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub regime: String,
    pub parameters: String,
    pub measured: f64,
    pub bound: f64,
    pub ratio: f64,
}

impl Row {
    pub fn new(regime: &str, parameters: String, measured: f64, bound: f64) -> Self {
        Row { regime: regime.into(), parameters, measured, bound, ratio: measured / bound }
    }
}

/// A named pass/fail decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when measured ≤ threshold.
    pub fn at_most(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Check { name: name.into(), measured, threshold, pass: measured <= threshold }
    }

    /// Passes when measured is finite.
    pub fn finite(name: impl Into<String>, measured: f64) -> Self {
        Check { name: name.into(), measured, threshold: f64::INFINITY, pass: measured.is_finite() }
    }

    /// Passes when measured > threshold.
    pub fn above(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Check { name: name.into(), measured, threshold, pass: measured > threshold }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fit {
    pub rho: f64,
    pub q: String,
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary<'a> {
    pub schema: u32,
    pub experiment: &'static str,
    pub config: &'a RunConfig,
    pub pass: bool,
    pub checks: &'a [Check],
    pub fits: &'a [Fit],
    pub notes: &'a [String],
    pub files: Vec<String>,
}

/// Writes `header` and string rows as CSV.
pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush().map_err(io_err(path))?;
    Ok(())
}

pub fn write_results(path: &Path, experiment: &str, rows: &[Row]) -> Result<()> {
    write_csv(
        path,
        &["experiment", "regime", "parameters", "measured", "bound", "ratio"],
        rows.iter().map(|r| {
            vec![
                experiment.to_string(),
                r.regime.clone(),
                r.parameters.clone(),
                fmt17(r.measured),
                fmt17(r.bound),
                fmt17(r.ratio),
            ]
        }),
    )
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(io_err(path))
}
