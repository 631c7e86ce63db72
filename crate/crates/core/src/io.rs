//! Graph file ingestion and witness serialization.
//!
//! Graph file format (JSON, UTF-8):
//! {"vertices": ["a","b"], "edges": [{"id":"e1","u":"a","v":"b","length":1.0}]}
//! The edge "id" is optional (auto-assigned "e<index>"); "length" is ignored
//! on the discrete side and required on the metric side.

use serde::Deserialize;

use crate::cut::MetricCheegerResult;
use crate::error::{Error, Result};
use crate::graph::{DiscreteEdge, DiscreteGraph, MetricEdge, MetricGraph};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<EdgeFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    #[serde(default)]
    id: Option<String>,
    u: String,
    v: String,
    #[serde(default)]
    length: Option<f64>,
}

fn parse(text: &str) -> Result<GraphFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn metric_from_json(text: &str) -> Result<MetricGraph> {
    let file = parse(text)?;
    let edges = file
        .edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let id = e.id.unwrap_or_else(|| format!("e{i}"));
            let length = e.length.ok_or_else(|| {
                Error::Parse(format!("edge '{id}': metric graphs require a length"))
            })?;
            if !(length.is_finite() && length > 0.0) {
                return Err(Error::Parse(format!("edge '{id}': length must be positive")));
            }
            Ok(MetricEdge { id, u: e.u, v: e.v, length })
        })
        .collect::<Result<Vec<_>>>()?;
    let g = MetricGraph {
        vertices: file.vertices,
        edges,
    };
    let report = g.validate();
    if !report.is_valid() {
        return Err(Error::Parse(report.violations.join("; ")));
    }
    Ok(g)
}

pub fn discrete_from_json(text: &str) -> Result<DiscreteGraph> {
    let file = parse(text)?;
    let edges = file
        .edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| DiscreteEdge {
            id: e.id.unwrap_or_else(|| format!("e{i}")),
            u: e.u,
            v: e.v,
        })
        .collect();
    let g = DiscreteGraph {
        vertices: file.vertices,
        edges,
    };
    let report = g.validate();
    if !report.is_valid() {
        return Err(Error::Parse(report.violations.join("; ")));
    }
    Ok(g)
}

pub fn metric_to_json(g: &MetricGraph) -> String {
    crate::graph::canonical_json_metric(g)
}

/// Rounds to 12 significant digits so serialized reports are byte-identical
/// across runs.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap()
}

/// Witness serialization:
/// {"h": ..., "k": ..., "cuts": [{"edge":"e1","t":0.5}], "S_components": [...]}
pub fn witness_json(result: &MetricCheegerResult) -> serde_json::Value {
    serde_json::json!({
        "h": sig12(result.value),
        "k": result.k,
        "cuts": result.cuts.iter().map(|c| serde_json::json!({
            "edge": c.edge,
            "t": sig12(c.t),
        })).collect::<Vec<_>>(),
        "S_components": result.s_components.iter().map(|c| serde_json::json!({
            "vertices": c.vertices,
            "intervals": c.intervals.iter().map(|(id, a, b)| serde_json::json!([
                id, sig12(*a), sig12(*b),
            ])).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "attained_measure": sig12(result.attained_measure),
        "digest": result.digest,
    })
}
