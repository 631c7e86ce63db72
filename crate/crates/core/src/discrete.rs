//! Discrete side: Laplacian matrix L = D - A, Fiedler value, exact Cheeger
//! constant by subset enumeration, and the Fiedler / Dodziuk-Alon-Milman
//! bound checkers.

use serde::Serialize;

use crate::connectivity::edge_connectivity;
use crate::error::{Error, Result};
use crate::graph::{canonical_json_discrete, discrete_components, DiscreteGraph};
use crate::linalg::{symmetric_eigenvalues, SymmetricMatrix};
use crate::report::{digest_of, BoundReport};

/// Subset enumeration guard: 2^23 subsets at V = 24 stays under a minute.
pub const CHEEGER_VERTEX_GUARD: usize = 24;

const BOUND_TOLERANCE: f64 = 1e-9;

/// Exact nonnegative rational |boundary| / min(|S|, |S^C|).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn cmp_exact(&self, other: &Ratio) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscreteCheegerResult {
    pub value: Ratio,
    /// Witness vertex subset S, listed in lexicographic identifier order.
    pub witness_set: Vec<String>,
}

/// L = D - A with parallel-edge multiplicity counted in both A and the
/// degrees, so row sums are exactly zero.
pub fn laplacian_matrix(g: &DiscreteGraph) -> Result<SymmetricMatrix> {
    g.ensure_valid()?;
    let n = g.vertices.len();
    let mut m = SymmetricMatrix::zeros(n);
    for (u, v) in g.edge_indices()? {
        m.add(u, u, 1.0);
        m.add(v, v, 1.0);
        m.add(u, v, -1.0);
    }
    Ok(m)
}

fn ensure_connected(g: &DiscreteGraph) -> Result<()> {
    let components = discrete_components(g)?;
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(())
}

/// Second-smallest Laplacian eigenvalue. The zero mode is identified by
/// index, never by magnitude.
pub fn fiedler_value(g: &DiscreteGraph) -> Result<f64> {
    ensure_connected(g)?;
    let evs = symmetric_eigenvalues(&laplacian_matrix(g)?)?;
    if evs.len() < 2 {
        return Err(Error::InvalidGraph("Fiedler value needs V >= 2".into()));
    }
    Ok(evs[1])
}

/// Boundary edge count |dS| for the subset encoded as a bitmask over
/// sorted-identifier positions.
fn boundary_count(edges: &[(usize, usize)], mask: u32) -> u64 {
    edges
        .iter()
        .filter(|(u, v)| ((mask >> u) & 1) != ((mask >> v) & 1))
        .count() as u64
}

/// Exact discrete Cheeger constant h(G) = min |dS| / min(|S|, |S^C|) over
/// all nonempty proper vertex subsets. Complement symmetry halves the work:
/// only subsets containing the lexicographically first vertex are visited.
/// Ties go to the lexicographically smallest subset.
pub fn discrete_cheeger(g: &DiscreteGraph) -> Result<DiscreteCheegerResult> {
    ensure_connected(g)?;
    let n = g.vertices.len();
    if n < 2 {
        return Err(Error::InvalidGraph("Cheeger constant needs V >= 2".into()));
    }
    if n > CHEEGER_VERTEX_GUARD {
        return Err(Error::GuardExceeded(format!(
            "discrete Cheeger enumeration is limited to {CHEEGER_VERTEX_GUARD} vertices (got {n})"
        )));
    }
    // Work in sorted-identifier order so tie-breaks follow the lexicographic
    // convention regardless of declaration order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.vertices[a].cmp(&g.vertices[b]));
    let mut position = vec![0usize; n];
    for (pos, &vi) in order.iter().enumerate() {
        position[vi] = pos;
    }
    let edges: Vec<(usize, usize)> = g
        .edge_indices()?
        .into_iter()
        .map(|(u, v)| (position[u], position[v]))
        .collect();

    let mut best: Option<(Ratio, Vec<usize>)> = None;
    // Bit 0 is the first vertex in sorted order, always inside S; the
    // remaining n-1 bits range over all complement-free subsets except the
    // full set.
    let full: u32 = (1u32 << (n - 1)) - 1;
    for rest in 0..full {
        let mask: u32 = 1 | (rest << 1);
        let size = mask.count_ones() as u64;
        let candidate = Ratio {
            num: boundary_count(&edges, mask),
            den: size.min(n as u64 - size),
        };
        let subset: Vec<usize> = (0..n).filter(|&p| (mask >> p) & 1 == 1).collect();
        let better = match &best {
            None => true,
            Some((value, witness)) => match candidate.cmp_exact(value) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => subset < *witness,
                std::cmp::Ordering::Greater => false,
            },
        };
        if better {
            best = Some((candidate, subset));
        }
    }
    let (value, subset) = best.unwrap();
    Ok(DiscreteCheegerResult {
        value,
        witness_set: subset.into_iter().map(|p| g.vertices[order[p]].clone()).collect(),
    })
}

/// Fiedler 1973: 2 e(G) (1 - cos pi/V) <= lambda1(G) <= e(G). The theorem
/// excludes complete graphs (lambda1(K_n) = n > e = n - 1, with K2 as the
/// smallest case) and is stated for simple graphs, so complete graphs and
/// graphs with parallel edges are reported not-applicable instead of
/// violated.
pub fn check_fiedler_bounds(g: &DiscreteGraph) -> Result<BoundReport> {
    ensure_connected(g)?;
    let n = g.vertices.len();
    let digest = digest_of(&canonical_json_discrete(g));
    if n < 2 {
        return Err(Error::InvalidGraph("bound check needs V >= 2".into()));
    }
    let mut pairs = std::collections::HashSet::new();
    let mut has_parallel = false;
    for (u, v) in g.edge_indices()? {
        if !pairs.insert((u.min(v), u.max(v))) {
            has_parallel = true;
        }
    }
    let complete = pairs.len() == n * (n - 1) / 2;
    if complete || has_parallel {
        return Ok(BoundReport::not_applicable("fiedler-edge-connectivity", &digest)
            .with_quantities(vec![
                ("V".into(), n as f64),
                ("complete".into(), complete as u8 as f64),
                ("parallel_edges".into(), has_parallel as u8 as f64),
            ]));
    }
    let e = edge_connectivity(g)? as f64;
    let lambda1 = fiedler_value(g)?;
    let lower = 2.0 * e * (1.0 - (std::f64::consts::PI / n as f64).cos());
    Ok(
        BoundReport::sandwich("fiedler-edge-connectivity", lower, lambda1, e, BOUND_TOLERANCE, &digest)
            .with_quantities(vec![
                ("edge_connectivity".into(), e),
                ("lambda1".into(), lambda1),
                ("V".into(), n as f64),
            ]),
    )
}

/// Dodziuk / Alon-Milman: h^2 / (2 deg_max) <= lambda1 <= 2 h.
pub fn check_alon_milman(g: &DiscreteGraph) -> Result<BoundReport> {
    let cheeger = discrete_cheeger(g)?;
    let h = cheeger.value.value();
    let deg_max = *g.degrees()?.iter().max().unwrap() as f64;
    let lambda1 = fiedler_value(g)?;
    let digest = digest_of(&canonical_json_discrete(g));
    Ok(BoundReport::sandwich(
        "alon-milman",
        h * h / (2.0 * deg_max),
        lambda1,
        2.0 * h,
        BOUND_TOLERANCE,
        &digest,
    )
    .with_quantities(vec![
        ("h".into(), h),
        ("deg_max".into(), deg_max),
        ("lambda1".into(), lambda1),
    ]))
}

pub use crate::report::Tristate as BoundStatus;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Tristate;
    use approx::assert_relative_eq;

    fn cycle(n: usize) -> DiscreteGraph {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let pairs: Vec<(String, String)> = (0..n)
            .map(|i| (names[i].clone(), names[(i + 1) % n].clone()))
            .collect();
        let pair_refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        DiscreteGraph::from_pairs(&refs, &pair_refs)
    }

    fn k4() -> DiscreteGraph {
        DiscreteGraph::from_pairs(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
        )
    }

    #[test]
    fn laplacian_k2() {
        let g = DiscreteGraph::from_pairs(&["a", "b"], &[("a", "b")]);
        let l = laplacian_matrix(&g).unwrap();
        assert_eq!(l.get(0, 0), 1.0);
        assert_eq!(l.get(0, 1), -1.0);
        assert_eq!(l.get(1, 1), 1.0);
    }

    #[test]
    fn laplacian_p3() {
        let g = DiscreteGraph::from_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let l = laplacian_matrix(&g).unwrap();
        assert_eq!(l.get(0, 0), 1.0);
        assert_eq!(l.get(1, 1), 2.0);
        assert_eq!(l.get(2, 2), 1.0);
        assert_eq!(l.get(0, 1), -1.0);
        assert_eq!(l.get(1, 2), -1.0);
        assert_eq!(l.get(0, 2), 0.0);
    }

    #[test]
    fn laplacian_doubled_edge() {
        let g = DiscreteGraph::from_pairs(&["a", "b"], &[("a", "b"), ("a", "b")]);
        let l = laplacian_matrix(&g).unwrap();
        assert_eq!(l.get(0, 0), 2.0);
        assert_eq!(l.get(0, 1), -2.0);
    }

    #[test]
    fn laplacian_rejects_loops() {
        let g = DiscreteGraph::from_pairs(&["a", "b"], &[("a", "a")]);
        assert!(laplacian_matrix(&g).is_err());
    }

    #[test]
    fn spectrum_k4() {
        let evs = symmetric_eigenvalues(&laplacian_matrix(&k4()).unwrap()).unwrap();
        let expected = [0.0, 4.0, 4.0, 4.0];
        for (a, b) in evs.iter().zip(expected) {
            assert_relative_eq!(*a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn spectrum_c5_circulant() {
        let evs = symmetric_eigenvalues(&laplacian_matrix(&cycle(5)).unwrap()).unwrap();
        let tau = 2.0 * std::f64::consts::PI / 5.0;
        let expected = [
            0.0,
            2.0 * (1.0 - tau.cos()),
            2.0 * (1.0 - tau.cos()),
            2.0 * (1.0 - (2.0 * tau).cos()),
            2.0 * (1.0 - (2.0 * tau).cos()),
        ];
        for (a, b) in evs.iter().zip(expected) {
            assert_relative_eq!(*a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn fiedler_values() {
        let k2 = DiscreteGraph::from_pairs(&["a", "b"], &[("a", "b")]);
        assert_relative_eq!(fiedler_value(&k2).unwrap(), 2.0, epsilon = 1e-12);

        let tau = 2.0 * std::f64::consts::PI / 5.0;
        assert_relative_eq!(
            fiedler_value(&cycle(5)).unwrap(),
            2.0 * (1.0 - tau.cos()),
            epsilon = 1e-10
        );

        let star = DiscreteGraph::from_pairs(&["c", "a", "b", "d"], &[("c", "a"), ("c", "b"), ("c", "d")]);
        assert_relative_eq!(fiedler_value(&star).unwrap(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn cheeger_c5_is_one() {
        let result = discrete_cheeger(&cycle(5)).unwrap();
        assert_eq!(result.value, Ratio { num: 2, den: 2 });
        assert_eq!(result.value.value(), 1.0);
    }

    #[test]
    fn cheeger_p4_is_half() {
        let p4 = DiscreteGraph::from_pairs(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]);
        let result = discrete_cheeger(&p4).unwrap();
        assert_eq!(result.value, Ratio { num: 1, den: 2 });
        assert_eq!(result.witness_set, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn cheeger_k4_is_two() {
        let result = discrete_cheeger(&k4()).unwrap();
        assert_eq!(result.value.value(), 2.0);
    }

    #[test]
    fn fiedler_bounds_c5() {
        let report = check_fiedler_bounds(&cycle(5)).unwrap();
        assert_eq!(report.holds, Tristate::Holds);
        assert_relative_eq!(report.lhs, 4.0 * (1.0 - (std::f64::consts::PI / 5.0).cos()), epsilon = 1e-12);
        assert_relative_eq!(report.rhs, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn fiedler_bounds_k2_not_applicable() {
        let k2 = DiscreteGraph::from_pairs(&["a", "b"], &[("a", "b")]);
        let report = check_fiedler_bounds(&k2).unwrap();
        assert_eq!(report.holds, Tristate::NotApplicable);
    }

    #[test]
    fn fiedler_bounds_complete_and_multigraph_not_applicable() {
        // lambda1(K_n) = n exceeds e(K_n) = n - 1, so complete graphs sit
        // outside the theorem; same for parallel edges (doubled K2 has
        // lambda1 = 4 > e = 2).
        let k3 = DiscreteGraph::from_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert_eq!(check_fiedler_bounds(&k3).unwrap().holds, Tristate::NotApplicable);
        assert_eq!(check_fiedler_bounds(&k4()).unwrap().holds, Tristate::NotApplicable);
        let doubled = DiscreteGraph::from_pairs(&["a", "b", "c"], &[("a", "b"), ("a", "b"), ("b", "c")]);
        assert_eq!(check_fiedler_bounds(&doubled).unwrap().holds, Tristate::NotApplicable);
    }

    #[test]
    fn fiedler_bounds_p3_equality() {
        let p3 = DiscreteGraph::from_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let report = check_fiedler_bounds(&p3).unwrap();
        assert_eq!(report.holds, Tristate::Holds);
        assert_relative_eq!(report.lhs, 1.0, epsilon = 1e-12);
        assert_relative_eq!(report.middle, 1.0, epsilon = 1e-10);
        assert_relative_eq!(report.rhs, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn alon_milman_examples() {
        let report = check_alon_milman(&cycle(5)).unwrap();
        assert_eq!(report.holds, Tristate::Holds);
        assert_relative_eq!(report.lhs, 0.25, epsilon = 1e-12);
        assert_relative_eq!(report.rhs, 2.0, epsilon = 1e-12);

        let report = check_alon_milman(&k4()).unwrap();
        assert_eq!(report.holds, Tristate::Holds);
        assert_relative_eq!(report.middle, 4.0, epsilon = 1e-10);
        assert_relative_eq!(report.rhs, 4.0, epsilon = 1e-12);

        let p4 = DiscreteGraph::from_pairs(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]);
        let report = check_alon_milman(&p4).unwrap();
        assert_eq!(report.holds, Tristate::Holds);
        assert_relative_eq!(report.lhs, 0.0625, epsilon = 1e-12);
        assert_relative_eq!(report.middle, 2.0 * (1.0 - (std::f64::consts::PI / 4.0).cos()), epsilon = 1e-10);
    }

    #[test]
    fn guard_on_large_graphs() {
        let names: Vec<String> = (0..25).map(|i| format!("v{i:02}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let pairs: Vec<(String, String)> = (0..24).map(|i| (names[i].clone(), names[i + 1].clone())).collect();
        let pair_refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let g = DiscreteGraph::from_pairs(&refs, &pair_refs);
        assert!(matches!(discrete_cheeger(&g), Err(Error::GuardExceeded(_))));
    }
}
