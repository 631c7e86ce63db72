//! Graph data model: combinatorial multigraphs (no loops) and metric
//! multigraphs (loops and parallel edges allowed, positive edge lengths).

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge of a discrete (combinatorial) multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteEdge {
    pub id: String,
    pub u: String,
    pub v: String,
}

/// Combinatorial multigraph. Parallel edges are permitted, loops are not
/// (loops carry no information for the Laplacian matrix L = D - A).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<DiscreteEdge>,
}

/// Edge of a metric graph, identified with the interval (0, length).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricEdge {
    pub id: String,
    pub u: String,
    pub v: String,
    pub length: f64,
}

/// Metric (quantum) graph: multigraph with positive edge lengths.
/// Loops (u = v) and parallel edges are both allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<MetricEdge>,
}

/// Outcome of a validation pass; empty iff the graph is admissible.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_vertices(vertices: &[String], out: &mut Vec<String>) {
    if vertices.is_empty() {
        out.push("graph must have at least one vertex".into());
    }
    let mut seen = HashSet::new();
    for v in vertices {
        if !seen.insert(v.as_str()) {
            out.push(format!("duplicate vertex id '{v}'"));
        }
    }
}

impl DiscreteGraph {
    /// Convenience constructor; edge ids are auto-assigned "e<index>".
    pub fn from_pairs(vertices: &[&str], pairs: &[(&str, &str)]) -> Self {
        DiscreteGraph {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: pairs
                .iter()
                .enumerate()
                .map(|(i, (u, v))| DiscreteEdge {
                    id: format!("e{i}"),
                    u: u.to_string(),
                    v: v.to_string(),
                })
                .collect(),
        }
    }

    pub fn vertex_index(&self) -> HashMap<&str, usize> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect()
    }

    /// Edge endpoints as vertex indices, in edge-list order.
    pub fn edge_indices(&self) -> Result<Vec<(usize, usize)>> {
        let idx = self.vertex_index();
        self.edges
            .iter()
            .map(|e| {
                let u = *idx
                    .get(e.u.as_str())
                    .ok_or_else(|| Error::InvalidGraph(format!("edge '{}': unknown vertex '{}'", e.id, e.u)))?;
                let v = *idx
                    .get(e.v.as_str())
                    .ok_or_else(|| Error::InvalidGraph(format!("edge '{}': unknown vertex '{}'", e.id, e.v)))?;
                Ok((u, v))
            })
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        check_vertices(&self.vertices, &mut violations);
        let idx = self.vertex_index();
        let mut edge_ids = HashSet::new();
        for e in &self.edges {
            if !edge_ids.insert(e.id.as_str()) {
                violations.push(format!("duplicate edge id '{}'", e.id));
            }
            for end in [&e.u, &e.v] {
                if !idx.contains_key(end.as_str()) {
                    violations.push(format!("edge '{}': endpoint '{}' is not a declared vertex", e.id, end));
                }
            }
            if e.u == e.v {
                violations.push(format!("edge '{}': loop forbidden on discrete side", e.id));
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report.violations.join("; ")))
        }
    }

    /// Vertex degrees counting parallel-edge multiplicity.
    pub fn degrees(&self) -> Result<Vec<usize>> {
        let mut deg = vec![0usize; self.vertices.len()];
        for (u, v) in self.edge_indices()? {
            deg[u] += 1;
            deg[v] += 1;
        }
        Ok(deg)
    }
}

impl MetricGraph {
    /// Convenience constructor; edge ids are auto-assigned "e<index>".
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str, f64)]) -> Self {
        MetricGraph {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .enumerate()
                .map(|(i, (u, v, len))| MetricEdge {
                    id: format!("e{i}"),
                    u: u.to_string(),
                    v: v.to_string(),
                    length: *len,
                })
                .collect(),
        }
    }

    pub fn vertex_index(&self) -> HashMap<&str, usize> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect()
    }

    pub fn edge_indices(&self) -> Result<Vec<(usize, usize)>> {
        let idx = self.vertex_index();
        self.edges
            .iter()
            .map(|e| {
                let u = *idx
                    .get(e.u.as_str())
                    .ok_or_else(|| Error::InvalidGraph(format!("edge '{}': unknown vertex '{}'", e.id, e.u)))?;
                let v = *idx
                    .get(e.v.as_str())
                    .ok_or_else(|| Error::InvalidGraph(format!("edge '{}': unknown vertex '{}'", e.id, e.v)))?;
                Ok((u, v))
            })
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        check_vertices(&self.vertices, &mut violations);
        let idx = self.vertex_index();
        let mut edge_ids = HashSet::new();
        for e in &self.edges {
            if !edge_ids.insert(e.id.as_str()) {
                violations.push(format!("duplicate edge id '{}'", e.id));
            }
            for end in [&e.u, &e.v] {
                if !idx.contains_key(end.as_str()) {
                    violations.push(format!("edge '{}': endpoint '{}' is not a declared vertex", e.id, end));
                }
            }
            if !e.length.is_finite() {
                violations.push(format!("edge '{}': non-finite length", e.id));
            } else if e.length <= 0.0 {
                violations.push(format!("edge '{}': nonpositive length", e.id));
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report.violations.join("; ")))
        }
    }

    /// Total length L = sum of edge lengths, summed in edge-list order.
    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Vertex degrees; a loop contributes 2 to its anchor vertex.
    pub fn degrees(&self) -> Result<Vec<usize>> {
        let mut deg = vec![0usize; self.vertices.len()];
        for (u, v) in self.edge_indices()? {
            deg[u] += 1;
            deg[v] += 1;
        }
        Ok(deg)
    }

    /// Same topology with lengths dropped. Fails when the graph has loops,
    /// which are forbidden on the discrete side.
    pub fn discrete_shadow(&self) -> Result<DiscreteGraph> {
        for e in &self.edges {
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!(
                    "edge '{}': loop has no discrete counterpart",
                    e.id
                )));
            }
        }
        Ok(DiscreteGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| DiscreteEdge {
                    id: e.id.clone(),
                    u: e.u.clone(),
                    v: e.v.clone(),
                })
                .collect(),
        })
    }
}

/// Union-find over `n` elements.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut uf = UnionFind::new(n);
    for &(u, v) in edges {
        uf.union(u, v);
    }
    (0..n).filter(|&i| uf.find(i) == i).count()
}

/// Number of connected components; an isolated vertex is a component and a
/// loop connects only its own vertex.
pub fn discrete_components(g: &DiscreteGraph) -> Result<usize> {
    g.ensure_valid()?;
    Ok(component_count(g.vertices.len(), &g.edge_indices()?))
}

pub fn metric_components(g: &MetricGraph) -> Result<usize> {
    g.ensure_valid()?;
    Ok(component_count(g.vertices.len(), &g.edge_indices()?))
}

pub fn is_connected_discrete(g: &DiscreteGraph) -> Result<bool> {
    Ok(discrete_components(g)? == 1)
}

pub fn is_connected_metric(g: &MetricGraph) -> Result<bool> {
    Ok(metric_components(g)? == 1)
}

/// Canonical JSON serialization used for digests and file output.
/// Key order is fixed, so equal graphs serialize identically.
pub fn canonical_json_metric(g: &MetricGraph) -> String {
    let mut map = BTreeMap::new();
    map.insert("vertices", serde_json::to_value(&g.vertices).unwrap());
    map.insert(
        "edges",
        serde_json::Value::Array(
            g.edges
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "id": e.id,
                        "u": e.u,
                        "v": e.v,
                        "length": e.length,
                    })
                })
                .collect(),
        ),
    );
    serde_json::json!({
        "vertices": map["vertices"],
        "edges": map["edges"],
    })
    .to_string()
}

pub fn canonical_json_discrete(g: &DiscreteGraph) -> String {
    serde_json::json!({
        "vertices": g.vertices,
        "edges": g.edges.iter().map(|e| serde_json::json!({
            "id": e.id, "u": e.u, "v": e.v,
        })).collect::<Vec<_>>(),
    })
    .to_string()
}
