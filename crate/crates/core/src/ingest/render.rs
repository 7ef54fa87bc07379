//! Trace and report rendering. CSV and JSON carry lossless decimal strings;
//! the table view uses fixed decimals.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{PrecisionConfig, Scalar};
use crate::polys::Family;
use crate::solver::{EstimateVector, IterationTrace, Method, SolveReport, StopReason};
use crate::theory::TheoremReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceFormat {
    Table,
    Csv,
    Json,
}

impl std::str::FromStr for TraceFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(TraceFormat::Table),
            "csv" => Ok(TraceFormat::Csv),
            "json" => Ok(TraceFormat::Json),
            other => Err(format!("unknown format {other:?} (table, csv or json)")),
        }
    }
}

/// Decimals shown per entry in table output unless asked otherwise.
pub const TABLE_DECIMALS: usize = 18;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceDocError {
    #[error("invalid trace JSON: {0}")]
    Json(String),
    #[error("trace has no snapshots")]
    Empty,
    #[error("snapshot {k}: {message}")]
    Value { k: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotDoc {
    pub k: usize,
    pub x: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceBody {
    pub snapshots: Vec<SnapshotDoc>,
    pub steps: Vec<Vec<String>>,
    #[serde(default)]
    pub errors: Option<Vec<Vec<String>>>,
}

/// JSON form of a [`SolveReport`], field for field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub family: Family,
    pub mults: Vec<u32>,
    pub method: Method,
    pub precision: PrecisionConfig,
    pub converged: bool,
    pub stop_reason: StopReason,
    pub failure: Option<String>,
    pub trace: TraceBody,
    pub residuals: Vec<String>,
}

fn lossless<T: Scalar>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_lossless_string()).collect()
}

impl TraceDocument {
    pub fn from_report<T: Scalar>(report: &SolveReport<T>) -> Self {
        let t = &report.trace;
        TraceDocument {
            family: report.family,
            mults: report.mults.clone(),
            method: report.method,
            precision: report.precision,
            converged: report.converged,
            stop_reason: report.stop_reason,
            failure: report.failure.as_ref().map(|e| e.to_string()),
            trace: TraceBody {
                snapshots: t
                    .snapshots
                    .iter()
                    .map(|s| SnapshotDoc {
                        k: s.k,
                        x: lossless(&s.x),
                    })
                    .collect(),
                steps: t.steps.iter().map(|row| lossless(row)).collect(),
                errors: t.errors.as_ref().map(|rows| rows.iter().map(|row| lossless(row)).collect()),
            },
            residuals: lossless(&report.residuals),
        }
    }

    /// Rebuilds the numeric trace at the recorded precision.
    pub fn to_trace<T: Scalar>(&self) -> Result<IterationTrace<T>, TraceDocError> {
        if self.trace.snapshots.is_empty() {
            return Err(TraceDocError::Empty);
        }
        let cfg = self.precision;
        let parse_row = |k: usize, row: &[String]| -> Result<Vec<T>, TraceDocError> {
            row.iter()
                .map(|s| {
                    T::parse_decimal(s, &cfg).map_err(|e| TraceDocError::Value {
                        k,
                        message: e.to_string(),
                    })
                })
                .collect()
        };
        let snapshots = self
            .trace
            .snapshots
            .iter()
            .map(|s| Ok(EstimateVector { x: parse_row(s.k, &s.x)?, k: s.k }))
            .collect::<Result<Vec<_>, TraceDocError>>()?;
        let steps = self
            .trace
            .steps
            .iter()
            .enumerate()
            .map(|(k, row)| parse_row(k, row))
            .collect::<Result<Vec<_>, _>>()?;
        let errors = match &self.trace.errors {
            Some(rows) => Some(
                rows.iter()
                    .enumerate()
                    .map(|(k, row)| parse_row(k, row))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        Ok(IterationTrace {
            snapshots,
            steps,
            errors,
        })
    }
}

pub fn parse_trace_json(text: &str) -> Result<TraceDocument, TraceDocError> {
    let doc: TraceDocument = serde_json::from_str(text).map_err(|e| TraceDocError::Json(e.to_string()))?;
    if doc.trace.snapshots.is_empty() {
        return Err(TraceDocError::Empty);
    }
    Ok(doc)
}

/// Renders a solve report. `decimals` only affects the table view.
pub fn render_trace<T: Scalar>(report: &SolveReport<T>, format: TraceFormat, decimals: usize) -> String {
    match format {
        TraceFormat::Table => render_table(report, decimals),
        TraceFormat::Csv => render_csv(&report.trace),
        TraceFormat::Json => {
            let mut s = serde_json::to_string_pretty(&TraceDocument::from_report(report)).expect("plain data");
            s.push('\n');
            s
        }
    }
}

fn render_table<T: Scalar>(report: &SolveReport<T>, decimals: usize) -> String {
    let m = report.mults.len();
    let mut out = String::new();
    let header: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let _ = writeln!(out, "{:>3}  {}", "k", header.join(", "));
    for s in &report.trace.snapshots {
        let row: Vec<String> = s.x.iter().map(|x| x.to_fixed_string(decimals)).collect();
        let _ = writeln!(out, "{:>3}  {}", s.k, row.join(", "));
    }
    let stop = match report.stop_reason {
        StopReason::Tolerance => "step tolerance reached",
        StopReason::MaxIters => "iteration limit reached",
        StopReason::StepFailure => "step failed",
    };
    let _ = writeln!(
        out,
        "# {} ({}), {} digits: {}",
        report.family,
        report.method.name(),
        report.precision.digits,
        stop
    );
    if let Some(e) = &report.failure {
        let _ = writeln!(out, "# failure: {e}");
    }
    out
}

fn render_csv<T: Scalar>(trace: &IterationTrace<T>) -> String {
    let m = trace.snapshots[0].x.len();
    let mut out = String::from("k");
    for i in 1..=m {
        let _ = write!(out, ",x{i}");
    }
    out.push('\n');
    for s in &trace.snapshots {
        let _ = write!(out, "{}", s.k);
        for x in &s.x {
            let _ = write!(out, ",{}", x.to_lossless_string());
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremRowDoc {
    pub name: String,
    pub index: Option<usize>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub holds: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationParamsDoc {
    pub d: String,
    pub max_sep: Option<String>,
    pub c: String,
    pub q: String,
    pub xi: Option<String>,
    #[serde(rename = "A")]
    pub a: Option<String>,
    #[serde(rename = "S")]
    pub s: Option<String>,
}

/// JSON form of a [`TheoremReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremDocument {
    pub theorem: u8,
    pub n: usize,
    pub mults: Vec<u32>,
    pub params: SeparationParamsDoc,
    pub rows: Vec<TheoremRowDoc>,
    pub notes: Vec<String>,
    pub overall_pass: bool,
}

impl TheoremDocument {
    pub fn from_report<T: Scalar>(r: &TheoremReport<T>) -> Self {
        let s = |v: &T| v.to_lossless_string();
        let p = &r.params;
        TheoremDocument {
            theorem: r.theorem,
            n: r.n,
            mults: r.mults.clone(),
            params: SeparationParamsDoc {
                d: s(&p.d),
                max_sep: p.max_sep.as_ref().map(s),
                c: s(&p.c),
                q: s(&p.q),
                xi: p.xi.as_ref().map(s),
                a: p.a.as_ref().map(s),
                s: p.s.as_ref().map(s),
            },
            rows: r
                .rows
                .iter()
                .map(|row| TheoremRowDoc {
                    name: row.name.clone(),
                    index: row.index,
                    lhs: row.lhs.as_ref().map(s),
                    rhs: row.rhs.as_ref().map(s),
                    holds: row.holds,
                    note: row.note.clone(),
                })
                .collect(),
            notes: r.notes.clone(),
            overall_pass: r.overall_pass,
        }
    }
}

fn short<T: Scalar>(v: &T) -> String {
    format!("{:.12e}", v.to_f64())
}

pub fn render_theorem_report<T: Scalar>(report: &TheoremReport<T>, format: TraceFormat) -> String {
    if format == TraceFormat::Json {
        let mut s = serde_json::to_string_pretty(&TheoremDocument::from_report(report)).expect("plain data");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    let p = &report.params;
    let mut header = format!(
        "theorem {}: n = {}, mults = {:?}, d = {}, c = {}, q = {}",
        report.theorem,
        report.n,
        report.mults,
        short(&p.d),
        short(&p.c),
        short(&p.q)
    );
    for (name, v) in [("max_sep", &p.max_sep), ("xi", &p.xi), ("A", &p.a), ("S", &p.s)] {
        if let Some(v) = v {
            let _ = write!(header, ", {name} = {}", short(v));
        }
    }
    let _ = writeln!(out, "{header}");
    for row in &report.rows {
        let mark = if row.holds { "ok  " } else { "FAIL" };
        let idx = row.index.map(|i| format!(" [i={i}]")).unwrap_or_default();
        let sides = match (&row.lhs, &row.rhs) {
            (Some(l), Some(r)) => format!(": {} < {}", short(l), short(r)),
            _ => String::new(),
        };
        let note = row.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default();
        let _ = writeln!(out, "  {mark} {}{idx}{sides}{note}", row.name);
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "overall: {}", if report.overall_pass { "pass" } else { "fail" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Real;
    use crate::polys::{FactoredPoly, Polynomial};
    use crate::solver::{solve, MultiplicityProfile, SolveConfig};

    fn report(max_iters: usize) -> SolveReport<Real> {
        let cfg = PrecisionConfig::default();
        let r = |s: &str| Real::parse(s, cfg).unwrap();
        let p: Polynomial<Real> = FactoredPoly::new(Family::Algebraic, vec![r("-2"), r("1"), r("3")], vec![2, 1, 3])
            .unwrap()
            .into();
        let prof = MultiplicityProfile::new(Family::Algebraic, vec![2, 1, 3]).unwrap();
        let mut sc = SolveConfig::default_for(&r("1"));
        sc.max_iters = max_iters;
        solve(&p, &prof, EstimateVector::initial(vec![r("-3"), r("0.1"), r("4")]), &sc).unwrap()
    }

    #[test]
    fn table_rows() {
        let text = render_trace(&report(4), TraceFormat::Table, TABLE_DECIMALS);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "  k  x1, x2, x3");
        assert_eq!(lines[1], "  0  -3.000000000000000000, 0.100000000000000000, 4.000000000000000000");
        assert_eq!(lines[2], "  1  -2.074075484632669383, 1.025215703994304145, 3.060848242666424485");
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn csv_header_and_rows() {
        let text = render_trace(&report(1), TraceFormat::Csv, TABLE_DECIMALS);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,x1,x2,x3");
        assert_eq!(lines[1], "0,-3,0.1,4");
        assert!(lines[2].starts_with("1,-2.07407548463266938"));
    }

    #[test]
    fn json_round_trip_is_stable() {
        let rep = report(4);
        let text = render_trace(&rep, TraceFormat::Json, TABLE_DECIMALS);
        let doc = parse_trace_json(&text).unwrap();
        assert_eq!(doc, TraceDocument::from_report(&rep));
        let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
        assert_eq!(again, text);
        assert_eq!(doc.to_trace::<Real>().unwrap(), rep.trace);
    }

    #[test]
    fn single_snapshot_renders_one_row() {
        let mut rep = report(1);
        rep.trace.snapshots.truncate(1);
        rep.trace.steps.clear();
        let text = render_trace(&rep, TraceFormat::Table, 3);
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
        assert!(text.contains("  0  -3.000, 0.100, 4.000"));
    }

    #[test]
    fn bad_trace_json() {
        assert!(matches!(parse_trace_json("{}"), Err(TraceDocError::Json(_))));
    }
}
