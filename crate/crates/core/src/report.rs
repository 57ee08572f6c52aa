//! JSON and CSV rendering of evaluation records and experiment reports.
//!
//! JSON numbers use the shortest representation that round-trips the
//! double exactly. CSV numbers carry 9 significant digits.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::analysis::{ExtremumReport, FigureRow, SweepReport, TripleWitness};
use crate::error::Result;
use crate::geometry::Point;
use crate::metrics::EvalRecord;

pub(crate) fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Witness {
    pub x: Option<Point>,
    pub y: Option<Point>,
    pub z: Option<Point>,
}

impl Witness {
    fn from_points(p: &[Point]) -> Self {
        Self { x: p.first().cloned(), y: p.get(1).cloned(), z: p.get(2).cloned() }
    }
}

/// Flat summary written by the `verify` and `search` commands.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub task: String,
    pub domain: Option<String>,
    pub metric: Option<String>,
    pub seed: Option<u64>,
    pub n_samples: Option<usize>,
    pub estimate: Option<f64>,
    pub witness: Witness,
    pub margin: Option<f64>,
    pub pass: Option<bool>,
    /// Wall time; left empty unless requested so that reruns are
    /// byte-identical.
    pub runtime_ms: Option<f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
}

impl Report {
    fn empty(task: &str) -> Self {
        Self {
            task: task.to_string(),
            domain: None,
            metric: None,
            seed: None,
            n_samples: None,
            estimate: None,
            witness: Witness::default(),
            margin: None,
            pass: None,
            runtime_ms: None,
            details: BTreeMap::new(),
        }
    }

    pub fn from_triple(task: &str, w: &TripleWitness) -> Self {
        let mut r = Self::empty(task);
        r.domain = Some(w.domain.to_string());
        r.metric = Some(w.metric.kind.to_string());
        r.seed = Some(w.seed);
        r.n_samples = Some(w.n_samples);
        r.estimate = Some(w.ratio);
        r.witness = Witness { x: Some(w.x.clone()), y: Some(w.y.clone()), z: Some(w.z.clone()) };
        r.details.insert("trace_len".into(), w.trace_len.into());
        r
    }

    pub fn from_sweep(task: &str, s: &SweepReport) -> Self {
        let mut r = Self::empty(task);
        r.domain = Some(s.domain.to_string());
        r.metric = Some(s.inequality.clone());
        r.seed = Some(s.seed);
        r.n_samples = Some(s.n_samples);
        r.witness = Witness::from_points(&s.witness);
        r.margin = Some(s.worst_margin);
        r.pass = Some(s.pass);
        r.details.insert("tolerance".into(), s.tolerance.into());
        for (k, v) in &s.details {
            r.details.insert(k.clone(), (*v).into());
        }
        r
    }

    pub fn from_extremum(task: &str, e: &ExtremumReport) -> Self {
        let mut r = Self::empty(task);
        r.domain = Some(e.domain.to_string());
        r.metric = Some(e.quotient.clone());
        r.seed = e.seed;
        r.n_samples = Some(e.n_samples);
        r.estimate = Some(e.estimate);
        r.witness = Witness::from_points(&e.witness);
        r.details.insert("trace_len".into(), e.trace_len.into());
        r.details.insert("exploratory".into(), e.exploratory.into());
        for (k, v) in &e.details {
            r.details.insert(k.clone(), (*v).into());
        }
        r
    }
}

/// Pretty JSON followed by a newline.
pub fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::from)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// `v` with `digits` significant digits in plain decimal notation,
/// trailing zeros removed.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

const CSV_DIGITS: usize = 9;

fn csv_num(v: Option<f64>) -> String {
    v.map(|v| fmt_sig(v, CSV_DIGITS)).unwrap_or_default()
}

/// Point coordinates joined by `;` so a point fits a single CSV field.
fn csv_point(p: Option<&Point>) -> String {
    p.map(|p| p.coords().iter().map(|&c| fmt_sig(c, CSV_DIGITS)).collect::<Vec<_>>().join(";"))
        .unwrap_or_default()
}

/// Quotes a field when it contains a delimiter or quote.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_report_csv(out: &mut dyn Write, r: &Report) -> Result<()> {
    writeln!(out, "task,domain,metric,seed,n_samples,estimate,x,y,z,margin,pass,runtime_ms")?;
    let row = [
        csv_field(&r.task),
        csv_field(r.domain.as_deref().unwrap_or("")),
        csv_field(r.metric.as_deref().unwrap_or("")),
        r.seed.map(|s| s.to_string()).unwrap_or_default(),
        r.n_samples.map(|s| s.to_string()).unwrap_or_default(),
        csv_num(r.estimate),
        csv_point(r.witness.x.as_ref()),
        csv_point(r.witness.y.as_ref()),
        csv_point(r.witness.z.as_ref()),
        csv_num(r.margin),
        r.pass.map(|p| p.to_string()).unwrap_or_default(),
        csv_num(r.runtime_ms),
    ];
    writeln!(out, "{}", row.join(","))?;
    Ok(())
}

pub fn write_records_csv(out: &mut dyn Write, records: &[EvalRecord]) -> Result<()> {
    writeln!(out, "domain,metric,x,y,value,method")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&r.domain.to_string()),
            r.metric,
            csv_point(Some(&r.x)),
            csv_point(Some(&r.y)),
            fmt_sig(r.value, CSV_DIGITS),
            r.method
        )?;
    }
    Ok(())
}

/// Figure data as `re_y,im_y,quotient`; empty cells have an empty quotient.
pub fn write_figure_csv(out: &mut dyn Write, rows: &[FigureRow]) -> Result<()> {
    writeln!(out, "re_y,im_y,quotient")?;
    for r in rows {
        writeln!(out, "{},{},{}", fmt_sig(r.re_y, CSV_DIGITS), fmt_sig(r.im_y, CSV_DIGITS), csv_num(r.quotient))?;
    }
    Ok(())
}
