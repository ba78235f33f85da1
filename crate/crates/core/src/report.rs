//! Tabular curvature output (CSV and JSON) with exact rational strings.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::curvature::{curvature, curvature_with_dual, digraph_lower_bound, overlap_upper_bound, CurvatureReport};
use crate::error::CurvatureError;
use crate::hypergraph::{DirectedHypergraph, EdgeId};
use crate::measure::DiscreteMeasure;
use crate::rational::{decimal, format, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub dual: bool,
    pub bounds: bool,
    /// Adds `<column>_approx` decimal renderings with this many digits.
    pub decimal: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureRow {
    pub report: CurvatureReport,
    pub digraph_min: Option<Rational>,
    pub overlap_bound: Option<Rational>,
}

impl CurvatureRow {
    /// Named rational columns in output order.
    fn columns(&self, options: &ReportOptions) -> Vec<(&'static str, Rational)> {
        let r = &self.report;
        let d = &r.decomposition;
        let mut cols = vec![
            ("kappa", r.kappa.clone()),
            ("wasserstein", r.wasserstein.clone()),
            ("mu0", d.mu0.clone()),
            ("mu1", d.mu1.clone()),
            ("mu2", d.mu2.clone()),
            ("mu3", d.mu3.clone()),
        ];
        if options.dual {
            if let Some(cert) = &r.dual {
                cols.push(("dual_bound", cert.bound.clone()));
            }
        }
        if options.bounds {
            if let (Some(lo), Some(hi)) = (&self.digraph_min, &self.overlap_bound) {
                cols.push(("digraph_min", lo.clone()));
                cols.push(("overlap_bound", hi.clone()));
            }
        }
        cols
    }
}

fn row_for(
    h: &DirectedHypergraph,
    e: &EdgeId,
    options: &ReportOptions,
) -> Result<CurvatureRow, CurvatureError> {
    let report = if options.dual {
        curvature_with_dual(h, e)?
    } else {
        curvature(h, e)?
    };
    let (digraph_min, overlap_bound) = if options.bounds {
        (Some(digraph_lower_bound(h, e)?), Some(overlap_upper_bound(h, e)?))
    } else {
        (None, None)
    };
    Ok(CurvatureRow {
        report,
        digraph_min,
        overlap_bound,
    })
}

/// Rows for `edges` (all edges in document order when `None`). Edges are
/// computed in parallel; the output order does not depend on scheduling.
pub fn curvature_rows(
    h: &DirectedHypergraph,
    edges: Option<&[EdgeId]>,
    options: &ReportOptions,
) -> Result<Vec<CurvatureRow>, CurvatureError> {
    let ids: Vec<EdgeId> = match edges {
        Some(ids) => ids.to_vec(),
        None => h.edges().iter().map(|e| e.id.clone()).collect(),
    };
    ids.par_iter().map(|e| row_for(h, e, options)).collect()
}

pub fn csv_header(options: &ReportOptions) -> String {
    let mut names = vec!["kappa", "wasserstein", "mu0", "mu1", "mu2", "mu3"];
    if options.dual {
        names.push("dual_bound");
    }
    if options.bounds {
        names.extend(["digraph_min", "overlap_bound"]);
    }
    let mut header = vec!["edge".to_string()];
    header.extend(names.iter().map(|n| n.to_string()));
    if options.decimal.is_some() {
        header.extend(names.iter().map(|n| format!("{n}_approx")));
    }
    header.join(",")
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub fn to_csv(rows: &[CurvatureRow], options: &ReportOptions) -> String {
    let mut out = csv_header(options);
    out.push('\n');
    for row in rows {
        let cols = row.columns(options);
        let mut fields = vec![csv_field(row.report.edge.as_str())];
        fields.extend(cols.iter().map(|(_, v)| format(v)));
        if let Some(k) = options.decimal {
            fields.extend(cols.iter().map(|(_, v)| decimal(v, k)));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct PlanEntry<'a> {
    from: &'a str,
    to: &'a str,
    mass: String,
}

fn measure_value(m: &DiscreteMeasure) -> Value {
    serde_json::to_value(m).expect("measure serialization is infallible")
}

fn row_value(row: &CurvatureRow, options: &ReportOptions) -> Value {
    let cols = row.columns(options);
    let mut obj = Map::new();
    obj.insert("edge".into(), Value::String(row.report.edge.to_string()));
    for (name, v) in &cols {
        obj.insert((*name).into(), Value::String(format(v)));
    }
    if let Some(k) = options.decimal {
        let approx: Map<String, Value> = cols
            .iter()
            .map(|(name, v)| ((*name).to_string(), Value::String(decimal(v, k))))
            .collect();
        obj.insert("approx".into(), Value::Object(approx));
    }
    obj.insert("tail_measure".into(), measure_value(&row.report.tail_measure));
    obj.insert("head_measure".into(), measure_value(&row.report.head_measure));
    let plan: Vec<PlanEntry> = row
        .report
        .plan
        .iter()
        .map(|(u, v, m)| PlanEntry {
            from: u.as_str(),
            to: v.as_str(),
            mass: format(m),
        })
        .collect();
    obj.insert("plan".into(), serde_json::to_value(plan).expect("plan serializes"));
    if options.dual {
        if let Some(cert) = &row.report.dual {
            let potential: Map<String, Value> = cert
                .potential
                .iter()
                .map(|(v, f)| (v.to_string(), Value::String(format(f))))
                .collect();
            obj.insert("potential".into(), Value::Object(potential));
        }
    }
    Value::Object(obj)
}

/// Pretty JSON array of row objects, with a trailing newline.
pub fn to_json(rows: &[CurvatureRow], options: &ReportOptions) -> String {
    let values: Vec<Value> = rows.iter().map(|r| row_value(r, options)).collect();
    let mut text = serde_json::to_string_pretty(&values).expect("json values serialize");
    text.push('\n');
    text
}
