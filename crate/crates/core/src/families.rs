//! Deterministic generators for the named graph families: path, cycle, star,
//! flower, pumpkin, symmetric flower dumbbell, and the butterfly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MetricGraph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilySpec {
    Path { edges: usize, edge_length: f64 },
    Cycle { edges: usize, edge_length: f64 },
    Star { edges: usize, edge_length: f64 },
    /// One vertex with `petals` loops summing to `total_length`.
    Flower { petals: usize, total_length: f64 },
    /// Two vertices joined by `edges` parallel edges.
    Pumpkin { edges: usize, edge_length: f64 },
    /// Two flowers of `petals_per_side` petals each, petal length
    /// (total_length - handle) / (2 * petals_per_side), joined by a handle.
    Dumbbell {
        petals_per_side: usize,
        total_length: f64,
        handle: f64,
    },
    /// Two triangles sharing a central vertex, all edges `edge_length`.
    Butterfly { edge_length: f64 },
}

fn check_count(name: &str, count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidParameter(format!("{name} must be >= 1")));
    }
    Ok(())
}

fn check_length(name: &str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::InvalidParameter(format!("{name} must be a positive length")));
    }
    Ok(())
}

pub fn generate_family(spec: &FamilySpec) -> Result<MetricGraph> {
    match *spec {
        FamilySpec::Path { edges, edge_length } => {
            check_count("edges", edges)?;
            check_length("edge_length", edge_length)?;
            let vertices: Vec<String> = (0..=edges).map(|i| format!("v{i}")).collect();
            let refs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
            let list: Vec<(String, String, f64)> = (0..edges)
                .map(|i| (format!("v{i}"), format!("v{}", i + 1), edge_length))
                .collect();
            let edge_refs: Vec<(&str, &str, f64)> =
                list.iter().map(|(a, b, l)| (a.as_str(), b.as_str(), *l)).collect();
            Ok(MetricGraph::from_edges(&refs, &edge_refs))
        }
        FamilySpec::Cycle { edges, edge_length } => {
            if edges < 2 {
                // A 1-cycle is a loop; use the flower family for that.
                return Err(Error::InvalidParameter("cycle needs at least 2 edges".into()));
            }
            check_length("edge_length", edge_length)?;
            let vertices: Vec<String> = (0..edges).map(|i| format!("v{i}")).collect();
            let refs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
            let list: Vec<(String, String, f64)> = (0..edges)
                .map(|i| (format!("v{i}"), format!("v{}", (i + 1) % edges), edge_length))
                .collect();
            let edge_refs: Vec<(&str, &str, f64)> =
                list.iter().map(|(a, b, l)| (a.as_str(), b.as_str(), *l)).collect();
            Ok(MetricGraph::from_edges(&refs, &edge_refs))
        }
        FamilySpec::Star { edges, edge_length } => {
            check_count("edges", edges)?;
            check_length("edge_length", edge_length)?;
            let mut vertices = vec!["c".to_string()];
            vertices.extend((0..edges).map(|i| format!("a{i}")));
            let refs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
            let list: Vec<(String, String, f64)> =
                (0..edges).map(|i| ("c".to_string(), format!("a{i}"), edge_length)).collect();
            let edge_refs: Vec<(&str, &str, f64)> =
                list.iter().map(|(a, b, l)| (a.as_str(), b.as_str(), *l)).collect();
            Ok(MetricGraph::from_edges(&refs, &edge_refs))
        }
        FamilySpec::Flower { petals, total_length } => {
            check_count("petals", petals)?;
            check_length("total_length", total_length)?;
            let petal = total_length / petals as f64;
            let list: Vec<(&str, &str, f64)> = (0..petals).map(|_| ("c", "c", petal)).collect();
            Ok(MetricGraph::from_edges(&["c"], &list))
        }
        FamilySpec::Pumpkin { edges, edge_length } => {
            check_count("edges", edges)?;
            check_length("edge_length", edge_length)?;
            let list: Vec<(&str, &str, f64)> = (0..edges).map(|_| ("a", "b", edge_length)).collect();
            Ok(MetricGraph::from_edges(&["a", "b"], &list))
        }
        FamilySpec::Dumbbell {
            petals_per_side,
            total_length,
            handle,
        } => {
            check_count("petals_per_side", petals_per_side)?;
            check_length("total_length", total_length)?;
            check_length("handle", handle)?;
            if handle >= total_length {
                return Err(Error::InvalidParameter(
                    "handle must be shorter than the total length".into(),
                ));
            }
            let petal = (total_length - handle) / (2 * petals_per_side) as f64;
            let mut list: Vec<(&str, &str, f64)> = Vec::new();
            for _ in 0..petals_per_side {
                list.push(("l", "l", petal));
            }
            for _ in 0..petals_per_side {
                list.push(("r", "r", petal));
            }
            list.push(("l", "r", handle));
            Ok(MetricGraph::from_edges(&["l", "r"], &list))
        }
        FamilySpec::Butterfly { edge_length } => {
            check_length("edge_length", edge_length)?;
            Ok(butterfly(edge_length))
        }
    }
}

/// Two triangles c-a0-a1 and c-b0-b1 sharing the central vertex c.
pub fn butterfly(edge_length: f64) -> MetricGraph {
    MetricGraph::from_edges(
        &["c", "a0", "a1", "b0", "b1"],
        &[
            ("c", "a0", edge_length),
            ("c", "a1", edge_length),
            ("a0", "a1", edge_length),
            ("c", "b0", edge_length),
            ("c", "b1", edge_length),
            ("b0", "b1", edge_length),
        ],
    )
}
