//! Degree-2 smoothing: suppress vertices of degree exactly 2 whose two
//! incident edge-ends belong to two distinct edges, merging the pair into one
//! edge of summed length. The edge count of the fixed point is the number of
//! essential edges E.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_connected_metric, MetricEdge, MetricGraph};

#[derive(Debug, Clone, Serialize)]
pub struct SmoothingResult {
    pub reduced: MetricGraph,
    pub essential_edge_count: usize,
    /// Removed degree-2 vertex -> id of the merged edge that contains it.
    pub vertex_map: BTreeMap<String, String>,
}

/// A vertex is suppressible when its degree is exactly 2 and the two incident
/// edge-ends come from two distinct edges. A vertex carrying a single loop is
/// never suppressed: the loop needs an anchor.
fn suppressible(g: &MetricGraph, vertex: &str) -> Option<(usize, usize)> {
    let mut incident = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if e.u == vertex {
            incident.push(i);
        }
        if e.v == vertex {
            incident.push(i);
        }
    }
    match incident.as_slice() {
        [a, b] if a != b => Some((*a, *b)),
        _ => None,
    }
}

/// Repeatedly suppresses degree-2 vertices until none remain. Suppression
/// order: the lexicographically largest suppressible vertex first, so a pure
/// cycle collapses to a loop anchored at its smallest identifier.
pub fn smooth_degree_two(g: &MetricGraph) -> Result<SmoothingResult> {
    g.ensure_valid()?;
    if !is_connected_metric(g)? {
        return Err(Error::Disconnected {
            components: crate::graph::metric_components(g)?,
        });
    }
    let mut reduced = g.clone();
    let mut vertex_map: BTreeMap<String, String> = BTreeMap::new();
    loop {
        let candidate = reduced
            .vertices
            .iter()
            .filter(|v| suppressible(&reduced, v).is_some())
            .max()
            .cloned();
        let Some(vertex) = candidate else { break };
        let (i, j) = suppressible(&reduced, &vertex).unwrap();
        let (first, second) = (i.min(j), i.max(j));
        let e1 = reduced.edges[first].clone();
        let e2 = reduced.edges[second].clone();
        // Endpoints of the merged edge: the far ends of e1 and e2.
        let far = |e: &MetricEdge| if e.u == vertex { e.v.clone() } else { e.u.clone() };
        let merged = MetricEdge {
            id: format!("{}+{}", e1.id, e2.id),
            u: far(&e1),
            v: far(&e2),
            // Summed left-to-right in edge-list order.
            length: e1.length + e2.length,
        };
        // Removed vertices previously mapped to either constituent now map to
        // the merged edge.
        for target in vertex_map.values_mut() {
            if *target == e1.id || *target == e2.id {
                *target = merged.id.clone();
            }
        }
        vertex_map.insert(vertex.clone(), merged.id.clone());
        reduced.edges[first] = merged;
        reduced.edges.remove(second);
        reduced.vertices.retain(|v| *v != vertex);
    }
    let essential_edge_count = reduced.edges.len();
    Ok(SmoothingResult {
        reduced,
        essential_edge_count,
        vertex_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MetricGraph;

    fn unit_cycle(n: usize) -> MetricGraph {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let edges: Vec<(String, String, f64)> = (0..n)
            .map(|i| (names[i].clone(), names[(i + 1) % n].clone(), 1.0))
            .collect();
        let edge_refs: Vec<(&str, &str, f64)> =
            edges.iter().map(|(a, b, l)| (a.as_str(), b.as_str(), *l)).collect();
        MetricGraph::from_edges(&refs, &edge_refs)
    }

    #[test]
    fn c5_collapses_to_a_loop_of_length_5() {
        let result = smooth_degree_two(&unit_cycle(5)).unwrap();
        assert_eq!(result.essential_edge_count, 1);
        assert_eq!(result.reduced.vertices, vec!["v0".to_string()]);
        assert_eq!(result.reduced.edges[0].u, "v0");
        assert_eq!(result.reduced.edges[0].v, "v0");
        assert_eq!(result.reduced.edges[0].length, 5.0);
        assert_eq!(result.vertex_map.len(), 4);
    }

    #[test]
    fn path_of_three_unit_edges_becomes_one_edge() {
        let g = MetricGraph::from_edges(
            &["a", "b", "c", "d"],
            &[("a", "b", 1.0), ("b", "c", 1.0), ("c", "d", 1.0)],
        );
        let result = smooth_degree_two(&g).unwrap();
        assert_eq!(result.essential_edge_count, 1);
        assert_eq!(result.reduced.edges[0].length, 3.0);
        assert_eq!(result.reduced.vertices, vec!["a".to_string(), "d".to_string()]);
    }

    // Butterfly: two triangles sharing the central vertex c. The outer
    // vertices all have degree 2, so each triangle collapses to a loop of
    // length 3 anchored at c; the reduced butterfly is 2 loops, E = 2.
    #[test]
    fn butterfly_reduces_to_two_loops() {
        let g = crate::families::butterfly(1.0);
        let result = smooth_degree_two(&g).unwrap();
        assert_eq!(result.essential_edge_count, 2);
        assert_eq!(result.reduced.vertices, vec!["c".to_string()]);
        for e in &result.reduced.edges {
            assert_eq!(e.u, "c");
            assert_eq!(e.v, "c");
            assert_eq!(e.length, 3.0);
        }
    }

    #[test]
    fn idempotent_and_length_preserving() {
        let g = unit_cycle(7);
        let once = smooth_degree_two(&g).unwrap();
        let twice = smooth_degree_two(&once.reduced).unwrap();
        assert_eq!(once.reduced, twice.reduced);
        assert_eq!(once.essential_edge_count, twice.essential_edge_count);
        assert_eq!(once.reduced.total_length(), g.total_length());
    }

    #[test]
    fn single_loop_is_not_suppressed() {
        let g = MetricGraph::from_edges(&["a"], &[("a", "a", 2.0)]);
        let result = smooth_degree_two(&g).unwrap();
        assert_eq!(result.essential_edge_count, 1);
        assert!(result.vertex_map.is_empty());
    }

    #[test]
    fn disconnected_rejected() {
        let g = MetricGraph::from_edges(&["a", "b", "c", "d"], &[("a", "b", 1.0), ("c", "d", 1.0)]);
        assert!(smooth_degree_two(&g).is_err());
    }
}
