//! Seeded random graph ensembles for the bound-verification campaigns.
//! All draws go through ChaCha8 so identical seeds reproduce identical
//! graphs across runs and platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{is_connected_discrete, is_connected_metric, DiscreteGraph, MetricGraph};

const RETRY_CAP: usize = 200;
pub const DEFAULT_LENGTH_RANGE: (f64, f64) = (0.2, 2.0);

/// Connected Erdos-Renyi G(V, p) multigraph-free sample by rejection.
pub fn random_connected_discrete(vertices: usize, p: f64, seed: u64) -> Result<DiscreteGraph> {
    if vertices < 2 {
        return Err(Error::InvalidParameter("ensemble graphs need V >= 2".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter("edge probability must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_CAP {
        let names: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..vertices {
            for j in (i + 1)..vertices {
                if rng.gen::<f64>() < p {
                    edges.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let pair_refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let g = DiscreteGraph::from_pairs(&refs, &pair_refs);
        if is_connected_discrete(&g)? {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameter(format!(
        "could not sample a connected graph with V = {vertices}, p = {p} within {RETRY_CAP} tries"
    )))
}

/// Topology pool for the metric ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Topology {
    Cycle,
    Star,
    Flower,
    Dumbbell,
    Multigraph,
}

const POOL: [Topology; 5] = [
    Topology::Cycle,
    Topology::Star,
    Topology::Flower,
    Topology::Dumbbell,
    Topology::Multigraph,
];

fn random_length(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(DEFAULT_LENGTH_RANGE.0..DEFAULT_LENGTH_RANGE.1)
}

/// Random connected metric graph with at most 6 edges, topology drawn from
/// {cycle, star, flower, dumbbell, random multigraph}, lengths uniform in
/// [0.2, 2.0].
pub fn random_metric_graph(seed: u64) -> Result<MetricGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let topology = POOL[rng.gen_range(0..POOL.len())];
    match topology {
        Topology::Cycle => {
            let n = rng.gen_range(3..=6);
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges: Vec<(String, String, f64)> = (0..n)
                .map(|i| (names[i].clone(), names[(i + 1) % n].clone(), random_length(&mut rng)))
                .collect();
            Ok(build(&names, &edges))
        }
        Topology::Star => {
            let n = rng.gen_range(3..=5);
            let mut names = vec!["c".to_string()];
            names.extend((0..n).map(|i| format!("a{i}")));
            let edges: Vec<(String, String, f64)> = (0..n)
                .map(|i| ("c".to_string(), format!("a{i}"), random_length(&mut rng)))
                .collect();
            Ok(build(&names, &edges))
        }
        Topology::Flower => {
            let n = rng.gen_range(2..=5);
            let names = vec!["c".to_string()];
            let edges: Vec<(String, String, f64)> = (0..n)
                .map(|_| ("c".to_string(), "c".to_string(), random_length(&mut rng)))
                .collect();
            Ok(build(&names, &edges))
        }
        Topology::Dumbbell => {
            let m = rng.gen_range(1..=2);
            let names = vec!["l".to_string(), "r".to_string()];
            let mut edges = Vec::new();
            for _ in 0..m {
                edges.push(("l".to_string(), "l".to_string(), random_length(&mut rng)));
            }
            for _ in 0..m {
                edges.push(("r".to_string(), "r".to_string(), random_length(&mut rng)));
            }
            edges.push(("l".to_string(), "r".to_string(), random_length(&mut rng)));
            Ok(build(&names, &edges))
        }
        Topology::Multigraph => {
            for _ in 0..RETRY_CAP {
                let v = rng.gen_range(2..=4);
                let e = rng.gen_range(v - 1..=6);
                let names: Vec<String> = (0..v).map(|i| format!("v{i}")).collect();
                let edges: Vec<(String, String, f64)> = (0..e)
                    .map(|_| {
                        let a = rng.gen_range(0..v);
                        let b = rng.gen_range(0..v);
                        (names[a].clone(), names[b].clone(), random_length(&mut rng))
                    })
                    .collect();
                let g = build(&names, &edges);
                if is_connected_metric(&g)? {
                    return Ok(g);
                }
            }
            Err(Error::InvalidParameter(
                "could not sample a connected multigraph".into(),
            ))
        }
    }
}

fn build(names: &[String], edges: &[(String, String, f64)]) -> MetricGraph {
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let edge_refs: Vec<(&str, &str, f64)> = edges
        .iter()
        .map(|(a, b, l)| (a.as_str(), b.as_str(), *l))
        .collect();
    MetricGraph::from_edges(&refs, &edge_refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_sampling_is_reproducible() {
        let a = random_connected_discrete(6, 0.5, 1).unwrap();
        let b = random_connected_discrete(6, 0.5, 1).unwrap();
        assert_eq!(a, b);
        assert!(is_connected_discrete(&a).unwrap());
    }

    #[test]
    fn metric_sampling_is_reproducible() {
        let a = random_metric_graph(7).unwrap();
        let b = random_metric_graph(7).unwrap();
        assert_eq!(a, b);
        assert!(is_connected_metric(&a).unwrap());
        assert!(a.edges.len() <= 6);
    }

    #[test]
    fn zero_probability_cannot_connect() {
        assert!(random_connected_discrete(3, 0.0, 1).is_err());
    }

    #[test]
    fn metric_lengths_in_range() {
        for seed in 0..20 {
            let g = random_metric_graph(seed).unwrap();
            for e in &g.edges {
                assert!(e.length >= DEFAULT_LENGTH_RANGE.0 && e.length < DEFAULT_LENGTH_RANGE.1);
            }
        }
    }
}
