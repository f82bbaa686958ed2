//! Records written by the command-line tool, in CSV or JSON.
//!
//! Both formats carry the keys `z_re, z_im, value_re, value_im, err_est,
//! method`, plus `skipped` for grids. Floats are printed in Rust's shortest
//! round-trip form, so output is byte-stable for identical inputs.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::kurepa::{evaluate, EvalOutcome, KurepaFunction, RepresentationId};
use crate::singular::SingularityInfo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::domain(format!("unknown format '{s}', expected csv or json"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// One evaluated point. `value_*` and `err_est` are `None` when the point was
/// skipped, and `skipped` says why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub z_re: f64,
    pub z_im: f64,
    pub value_re: Option<f64>,
    pub value_im: Option<f64>,
    pub err_est: Option<f64>,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl OutputRecord {
    pub fn from_outcome(z: Complex64, outcome: &EvalOutcome) -> Self {
        OutputRecord {
            z_re: z.re,
            z_im: z.im,
            value_re: Some(outcome.value.re),
            value_im: Some(outcome.value.im),
            err_est: Some(outcome.err_est),
            method: outcome.method.to_string(),
            skipped: None,
        }
    }

    pub fn skipped(z: Complex64, method: RepresentationId, reason: &str) -> Self {
        OutputRecord {
            z_re: z.re,
            z_im: z.im,
            value_re: None,
            value_im: None,
            err_est: None,
            method: method.to_string(),
            skipped: Some(reason.to_string()),
        }
    }
}

/// Short tag for why a grid point has no value.
pub fn skip_reason(err: &Error) -> &'static str {
    match err {
        Error::PoleProximity { .. } => "pole",
        Error::Overflow(_) => "overflow",
        Error::NoConvergence { .. } => "no-convergence",
        Error::Domain(_) | Error::NonFinite(_) | Error::InvalidConfig(_) => "domain",
    }
}

/// Shortest round-trip text, in exponent form outside `[1e-5, 1e16)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-5..1e16).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

fn io_err(e: impl fmt::Display) -> Error {
    Error::domain(format!("write failed: {e}"))
}

/// Writes records as CSV; `with_skipped` adds the trailing `skipped` column.
pub fn write_records_csv<W: Write>(out: W, records: &[OutputRecord], with_skipped: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["z_re", "z_im", "value_re", "value_im", "err_est", "method"];
    if with_skipped {
        header.push("skipped");
    }
    w.write_record(&header).map_err(io_err)?;
    for r in records {
        let mut row = vec![
            format_float(r.z_re),
            format_float(r.z_im),
            opt(r.value_re),
            opt(r.value_im),
            opt(r.err_est),
            r.method.clone(),
        ];
        if with_skipped {
            row.push(r.skipped.clone().unwrap_or_default());
        }
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Writes records as a JSON array; with `with_skipped` every object carries
/// a `skipped` key (null when the point was evaluated).
pub fn write_records_json<W: Write>(mut out: W, records: &[OutputRecord], with_skipped: bool) -> Result<()> {
    let rows: Vec<serde_json::Value> = records
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("records serialize");
            if with_skipped {
                v["skipped"] = serde_json::to_value(&r.skipped).expect("option serializes");
            }
            v
        })
        .collect();
    serde_json::to_writer_pretty(&mut out, &rows).map_err(io_err)?;
    writeln!(out).map_err(io_err)
}

pub fn write_records<W: Write>(out: W, records: &[OutputRecord], format: OutputFormat, with_skipped: bool) -> Result<()> {
    match format {
        OutputFormat::Csv => write_records_csv(out, records, with_skipped),
        OutputFormat::Json => write_records_json(out, records, with_skipped),
    }
}

pub fn parse_records_json(text: &str) -> Result<Vec<OutputRecord>> {
    serde_json::from_str(text).map_err(|e| Error::domain(format!("invalid record JSON: {e}")))
}

/// One row of a pole table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleRow {
    pub function: String,
    pub m: i64,
    pub order: u8,
    pub residue_re: f64,
    pub residue_im: f64,
    pub pv_re: f64,
    pub pv_im: f64,
}

impl From<&SingularityInfo> for PoleRow {
    fn from(s: &SingularityInfo) -> Self {
        PoleRow {
            function: s.function_id.to_string(),
            m: s.location,
            order: s.order,
            residue_re: s.residue.re,
            residue_im: s.residue.im,
            pv_re: s.principal_value.re,
            pv_im: s.principal_value.im,
        }
    }
}

pub fn write_pole_table<W: Write>(mut out: W, rows: &[PoleRow], format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["function", "m", "order", "residue_re", "residue_im", "pv_re", "pv_im"])
                .map_err(io_err)?;
            for r in rows {
                w.write_record([
                    r.function.clone(),
                    r.m.to_string(),
                    r.order.to_string(),
                    format_float(r.residue_re),
                    format_float(r.residue_im),
                    format_float(r.pv_re),
                    format_float(r.pv_im),
                ])
                .map_err(io_err)?;
            }
            w.flush().map_err(io_err)
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, rows).map_err(io_err)?;
            writeln!(out).map_err(io_err)
        }
    }
}

/// A closed range sampled with a fixed step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
}

impl Axis {
    /// `floor((max - min) / step + 1e-9) + 1` points `min + i * step`.
    pub fn points(&self, step: f64) -> Result<Vec<f64>> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min <= self.max) {
            return Err(Error::InvalidConfig(format!("bad range [{}, {}]", self.min, self.max)));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidConfig(format!("step must be positive, got {step}")));
        }
        let count = ((self.max - self.min) / step + 1e-9).floor() + 1.0;
        if count > 1e7 {
            return Err(Error::InvalidConfig(format!("grid axis would have {count} points")));
        }
        Ok((0..count as usize).map(|i| self.min + i as f64 * step).collect())
    }
}

/// Evaluates `function` on the grid `re x im`, row-major with the imaginary
/// part in the outer loop. Points that fail are kept as skipped records.
pub fn evaluate_grid(
    function: KurepaFunction,
    method: RepresentationId,
    re: Axis,
    im: Axis,
    step: f64,
    cfg: &EvalConfig,
) -> Result<Vec<OutputRecord>> {
    cfg.validate()?;
    let xs = re.points(step)?;
    let ys = im.points(step)?;
    if xs.len().saturating_mul(ys.len()) > 10_000_000 {
        return Err(Error::InvalidConfig("grid has more than 1e7 points".into()));
    }
    let points: Vec<Complex64> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y))).collect();
    // collect keeps input order whatever order the workers finish in
    Ok(points
        .par_iter()
        .map(|&z| match evaluate(function, z, method, cfg) {
            Ok(o) => OutputRecord::from_outcome(z, &o),
            Err(e) => OutputRecord::skipped(z, method, skip_reason(&e)),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn axis_counts() {
        let a = Axis { min: 0.1, max: 3.0 };
        let p = a.points(0.1).unwrap();
        assert_eq!(p.len(), 30);
        assert!(p.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(Axis { min: 0.0, max: 0.0 }.points(0.5).unwrap(), vec![0.0]);
        assert!(Axis { min: 1.0, max: 0.0 }.points(0.1).is_err());
        assert!(a.points(0.0).is_err());
    }

    #[test]
    fn grid_of_a_on_the_real_axis() {
        let rows = evaluate_grid(
            KurepaFunction::A,
            RepresentationId::Auto,
            Axis { min: 0.1, max: 3.0 },
            Axis { min: 0.0, max: 0.0 },
            0.1,
            &cfg(),
        )
        .unwrap();
        assert_eq!(rows.len(), 30);
        assert!(rows.iter().all(|r| r.skipped.is_none()));
        assert!(rows.windows(2).all(|w| w[1].z_re > w[0].z_re));
    }

    #[test]
    fn grid_of_a1_marks_zero() {
        let rows = evaluate_grid(
            KurepaFunction::A1,
            RepresentationId::Auto,
            Axis { min: -0.9, max: 0.9 },
            Axis { min: 0.0, max: 0.0 },
            0.1,
            &cfg(),
        )
        .unwrap();
        assert_eq!(rows.len(), 19);
        let skipped: Vec<&OutputRecord> = rows.iter().filter(|r| r.skipped.is_some()).collect();
        assert_eq!(skipped.len(), 1);
        assert!(skipped[0].z_re.abs() < 1e-12);
        assert_eq!(skipped[0].skipped.as_deref(), Some("pole"));
        assert!(skipped[0].value_re.is_none());
    }

    #[test]
    fn row_major_order() {
        let rows = evaluate_grid(
            KurepaFunction::A,
            RepresentationId::ClosedForm,
            Axis { min: 0.5, max: 1.5 },
            Axis { min: -1.0, max: 1.0 },
            0.5,
            &cfg(),
        )
        .unwrap();
        let coords: Vec<(f64, f64)> = rows.iter().map(|r| (r.z_im, r.z_re)).collect();
        let mut sorted = coords.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(coords, sorted);
        assert_eq!(rows.len(), 15);
    }

    #[test]
    fn json_round_trip() {
        let rows = evaluate_grid(
            KurepaFunction::A1,
            RepresentationId::Auto,
            Axis { min: -0.5, max: 0.5 },
            Axis { min: 0.0, max: 0.25 },
            0.25,
            &cfg(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_records_json(&mut buf, &rows, true).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"skipped\": null"));
        assert_eq!(parse_records_json(&text).unwrap(), rows);
    }

    #[test]
    fn csv_layout() {
        let z = Complex64::new(4.0, 0.0);
        let o = evaluate(KurepaFunction::A, z, RepresentationId::Auto, &cfg()).unwrap();
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &[OutputRecord::from_outcome(z, &o)], false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("z_re,z_im,value_re,value_im,err_est,method"));
        assert!(lines.next().unwrap().starts_with("4,0,19,0,"));

        let mut buf = Vec::new();
        let skipped = OutputRecord::skipped(Complex64::new(1.0, 0.0), RepresentationId::Auto, "pole");
        write_records_csv(&mut buf, &[skipped], true).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "z_re,z_im,value_re,value_im,err_est,method,skipped\n1,0,,,,auto,pole\n");
    }

    #[test]
    fn float_text() {
        assert_eq!(format_float(19.0), "19");
        assert_eq!(format_float(-0.25), "-0.25");
        assert_eq!(format_float(2.5e-15), "2.5e-15");
        assert_eq!(format_float(3.0e20), "3e20");
        for x in [1.234_567_890_123_456_7e-9, 0.1, 6.02e23, -7.5e-300] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn pole_rows() {
        use crate::singular::{singularity, FunctionId};
        let rows: Vec<PoleRow> = (-4..=-2)
            .map(|m| PoleRow::from(&singularity(FunctionId::A, m).unwrap()))
            .collect();
        let mut buf = Vec::new();
        write_pole_table(&mut buf, &rows, OutputFormat::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("function,m,order,residue_re,residue_im,pv_re,pv_im\nA,-4,1,2.5,0,"));
    }
}
