//! Edge connectivity e(G): the minimal number of edges whose removal
//! disconnects the graph. Two routes are provided: exhaustive subset search
//! ordered by size, and min over pairwise max-flow values; tests require
//! them to agree.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{is_connected_discrete, DiscreteGraph, UnionFind};

fn precheck(g: &DiscreteGraph) -> Result<Vec<(usize, usize)>> {
    g.ensure_valid()?;
    if g.vertices.len() < 2 {
        return Err(Error::InvalidGraph(
            "edge connectivity requires at least two vertices".into(),
        ));
    }
    if !is_connected_discrete(g)? {
        return Err(Error::Disconnected {
            components: crate::graph::discrete_components(g)?,
        });
    }
    g.edge_indices()
}

fn connected_without(n: usize, edges: &[(usize, usize)], removed: &[usize]) -> bool {
    let mut uf = UnionFind::new(n);
    for (i, &(u, v)) in edges.iter().enumerate() {
        if !removed.contains(&i) {
            uf.union(u, v);
        }
    }
    let root = uf.find(0);
    (1..n).all(|i| uf.find(i) == root)
}

/// Exhaustive search over edge subsets by increasing cardinality, with early
/// exit at the first disconnecting size. The answer is bounded above by the
/// minimum degree (removing all edges at one vertex isolates it).
pub fn edge_connectivity(g: &DiscreteGraph) -> Result<usize> {
    let edges = precheck(g)?;
    let n = g.vertices.len();
    let min_deg = *g.degrees()?.iter().min().unwrap();
    for size in 1..min_deg {
        for subset in (0..edges.len()).combinations(size) {
            if !connected_without(n, &edges, &subset) {
                return Ok(size);
            }
        }
    }
    Ok(min_deg)
}

/// Edge connectivity via Edmonds-Karp max-flow: fix s = vertex 0 and take the
/// minimum of maxflow(s, t) over all other t. A global minimum edge cut
/// separates vertex 0 from some vertex.
pub fn edge_connectivity_max_flow(g: &DiscreteGraph) -> Result<usize> {
    let edges = precheck(g)?;
    let n = g.vertices.len();
    let mut base = vec![vec![0u64; n]; n];
    for &(u, v) in &edges {
        base[u][v] += 1;
        base[v][u] += 1;
    }
    let mut best = u64::MAX;
    for t in 1..n {
        best = best.min(max_flow(base.clone(), 0, t));
    }
    Ok(best as usize)
}

fn max_flow(mut cap: Vec<Vec<u64>>, s: usize, t: usize) -> u64 {
    let n = cap.len();
    let mut flow = 0;
    loop {
        // BFS for a shortest augmenting path.
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut bottleneck = u64::MAX;
        let mut v = t;
        while v != s {
            let u = prev[v];
            bottleneck = bottleneck.min(cap[u][v]);
            v = u;
        }
        let mut v = t;
        while v != s {
            let u = prev[v];
            cap[u][v] -= bottleneck;
            cap[v][u] += bottleneck;
            v = u;
        }
        flow += bottleneck;
    }
}
