//! Exact metric Cheeger constant h(G) = inf |dS| / min(|S|, |S^C|) over
//! measurable subsets, reduced to a finite enumeration: an optimal partition
//! is realized by finitely many cut points, at most two per edge, with
//! positions optimized per combinatorial pattern. Within a fixed pattern the
//! measure |S| is affine in the cut positions over a product of closed
//! intervals, so min(|S|, L - |S|) is maximized at the clamped balance point
//! s* = clamp(L/2, A_min, A_max).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{canonical_json_metric, is_connected_metric, MetricGraph, UnionFind};

/// Enumeration guard: (1 + max_cuts)^edges patterns.
pub const DEFAULT_EDGE_GUARD: usize = 10;

/// Component structure induced by a cut multiplicity pattern. Positions only
/// reallocate measure between fragments; the incidence structure is fixed,
/// which is why it is computed combinatorially.
#[derive(Debug, Clone)]
pub struct ComponentStructure {
    pub component_count: usize,
    /// Fixed measure per component: lengths of its uncut whole edges.
    pub fixed_measure: Vec<f64>,
    /// Per edge: None when uncut, otherwise component of each fragment in
    /// positional order (anchored at u, interior middles, anchored at v).
    pub fragments: Vec<Option<Vec<usize>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CutPoint {
    pub edge: String,
    pub t: f64,
}

/// One connected piece of the optimal Cheeger set S: whole vertices plus
/// sub-intervals (edge id, from, to) of edges.
#[derive(Debug, Clone, Serialize)]
pub struct SComponent {
    pub vertices: Vec<String>,
    pub intervals: Vec<(String, f64, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricCheegerResult {
    pub value: f64,
    pub k: usize,
    pub cuts: Vec<CutPoint>,
    pub s_components: Vec<SComponent>,
    /// The optimized min(|S|, L - |S|).
    pub attained_measure: f64,
    pub digest: String,
}

/// Splits each cut edge into multiplicity+1 fragments and returns the
/// connected components of the fragment-vertex incidence structure.
pub fn components_after_cuts(g: &MetricGraph, cuts_per_edge: &[u8]) -> Result<ComponentStructure> {
    g.ensure_valid()?;
    if cuts_per_edge.len() != g.edges.len() {
        return Err(Error::InvalidParameter("cut pattern length mismatch".into()));
    }
    if cuts_per_edge.iter().all(|&c| c == 0) {
        return Err(Error::InvalidParameter("at least one cut required".into()));
    }
    let n = g.vertices.len();
    let ends = g.edge_indices()?;
    let mut uf = UnionFind::new(n);
    for (i, &(u, v)) in ends.iter().enumerate() {
        if cuts_per_edge[i] == 0 {
            uf.union(u, v);
        }
    }
    // Normalize component ids: vertex components first in vertex order, then
    // one fresh id per interior (middle) fragment in edge order.
    let mut comp_of_root = std::collections::HashMap::new();
    let mut vertex_comp = vec![0usize; n];
    for i in 0..n {
        let root = uf.find(i);
        let next = comp_of_root.len();
        vertex_comp[i] = *comp_of_root.entry(root).or_insert(next);
    }
    let mut count = comp_of_root.len();
    let mut fixed = vec![0.0; count];
    let mut fragments = vec![None; g.edges.len()];
    for (i, &(u, v)) in ends.iter().enumerate() {
        let mult = cuts_per_edge[i] as usize;
        if mult == 0 {
            fixed[vertex_comp[u]] += g.edges[i].length;
        } else {
            let mut comps = vec![vertex_comp[u]];
            for _ in 0..mult.saturating_sub(1) {
                fixed.push(0.0);
                comps.push(count);
                count += 1;
            }
            comps.push(vertex_comp[v]);
            fragments[i] = Some(comps);
        }
    }
    Ok(ComponentStructure {
        component_count: count,
        fixed_measure: fixed,
        fragments,
    })
}

/// Per-pattern evaluation for a fixed coloring (bit c of `coloring` = true
/// means component c lies in S). Returns (ratio, s*, A_min) or None when a
/// cut is ineffective (same color on both sides) or the balance degenerates.
fn evaluate_colored(
    g: &MetricGraph,
    structure: &ComponentStructure,
    coloring: u32,
    k: usize,
) -> Option<(f64, f64, f64)> {
    let in_s = |c: usize| (coloring >> c) & 1 == 1;
    let mut a_min = 0.0;
    for (c, &m) in structure.fixed_measure.iter().enumerate() {
        if in_s(c) {
            a_min += m;
        }
    }
    let mut slider = 0.0;
    for (i, frags) in structure.fragments.iter().enumerate() {
        let Some(comps) = frags else { continue };
        // Every cut point must separate differently colored fragments.
        for w in comps.windows(2) {
            if in_s(w[0]) == in_s(w[1]) {
                return None;
            }
        }
        slider += g.edges[i].length;
    }
    let total = g.total_length();
    let a_max = a_min + slider;
    let s_star = (total / 2.0).clamp(a_min, a_max);
    let denom = s_star.min(total - s_star);
    if denom <= 0.0 {
        return None;
    }
    Some((k as f64 / denom, s_star, a_min))
}

/// Ratio k / min(|S|, L - |S|) for an explicit cut configuration, or None
/// when the configuration is ineffective or degenerate.
pub fn evaluate_configuration(
    g: &MetricGraph,
    cuts_per_edge: &[u8],
    coloring: &[bool],
) -> Result<Option<f64>> {
    let structure = components_after_cuts(g, cuts_per_edge)?;
    if coloring.len() != structure.component_count {
        return Err(Error::InvalidParameter(format!(
            "coloring length {} does not match component count {}",
            coloring.len(),
            structure.component_count
        )));
    }
    let mask = coloring
        .iter()
        .enumerate()
        .fold(0u32, |m, (i, &b)| if b { m | (1 << i) } else { m });
    let k: usize = cuts_per_edge.iter().map(|&c| c as usize).sum();
    Ok(evaluate_colored(g, &structure, mask, k).map(|(ratio, _, _)| ratio))
}

/// Enumerates multiplicity patterns over `edges` summing to `k` in
/// lexicographic order.
fn patterns_with_sum(edges: usize, max_per_edge: u8, k: usize, f: &mut impl FnMut(&[u8])) {
    fn rec(pattern: &mut Vec<u8>, edges: usize, max: u8, left: usize, f: &mut impl FnMut(&[u8])) {
        if pattern.len() == edges {
            if left == 0 {
                f(pattern);
            }
            return;
        }
        let remaining = edges - pattern.len() - 1;
        for m in 0..=max {
            let m_us = m as usize;
            if m_us > left || left - m_us > remaining * max as usize {
                continue;
            }
            pattern.push(m);
            rec(pattern, edges, max, left - m_us, f);
            pattern.pop();
        }
    }
    rec(&mut Vec::with_capacity(edges), edges, max_per_edge, k, f);
}

struct Best {
    ratio: f64,
    k: usize,
    pattern: Vec<u8>,
    coloring: u32,
    s_star: f64,
    a_min: f64,
    structure: ComponentStructure,
}

/// Exact metric Cheeger constant with a deterministic witness. Patterns are
/// visited in (k, pattern, coloring) lexicographic order, so on exact ties
/// the smallest cut count and encoding win.
pub fn metric_cheeger(g: &MetricGraph, max_cuts_per_edge: u8) -> Result<MetricCheegerResult> {
    metric_cheeger_guarded(g, max_cuts_per_edge, DEFAULT_EDGE_GUARD)
}

pub fn metric_cheeger_guarded(
    g: &MetricGraph,
    max_cuts_per_edge: u8,
    edge_guard: usize,
) -> Result<MetricCheegerResult> {
    g.ensure_valid()?;
    if !is_connected_metric(g)? {
        return Err(Error::Disconnected {
            components: crate::graph::metric_components(g)?,
        });
    }
    let e = g.edges.len();
    if e > edge_guard {
        return Err(Error::GuardExceeded(format!(
            "metric Cheeger enumeration is limited to {edge_guard} edges (got {e})"
        )));
    }
    if max_cuts_per_edge == 0 {
        return Err(Error::InvalidParameter("max_cuts_per_edge must be >= 1".into()));
    }
    let total = g.total_length();
    let mut best: Option<Best> = None;
    for k in 1..=(e * max_cuts_per_edge as usize) {
        // A configuration with k cuts has ratio >= k / (L/2); once that
        // exceeds the incumbent nothing better can appear.
        if let Some(b) = &best {
            if 2.0 * k as f64 / total >= b.ratio {
                break;
            }
        }
        patterns_with_sum(e, max_cuts_per_edge, k, &mut |pattern| {
            let structure = components_after_cuts(g, pattern).unwrap();
            let ncomp = structure.component_count;
            for coloring in 0..(1u32 << ncomp) {
                if let Some((ratio, s_star, a_min)) = evaluate_colored(g, &structure, coloring, k) {
                    let improves = match &best {
                        None => true,
                        Some(b) => ratio < b.ratio,
                    };
                    if improves {
                        best = Some(Best {
                            ratio,
                            k,
                            pattern: pattern.to_vec(),
                            coloring,
                            s_star,
                            a_min,
                            structure: structure.clone(),
                        });
                    }
                }
            }
        });
    }
    let best = best.ok_or_else(|| {
        Error::Numerical("no effective cut configuration found".into())
    })?;
    Ok(realize_witness(g, best))
}

/// Reconstructs explicit cut positions and the S-side intervals from the
/// optimal combinatorial pattern: the slack s* - A_min is distributed to the
/// cut-edge sliders in edge-list order.
fn realize_witness(g: &MetricGraph, best: Best) -> MetricCheegerResult {
    let in_s = |c: usize| (best.coloring >> c) & 1 == 1;
    let mut slack = best.s_star - best.a_min;
    let mut cuts = Vec::new();
    let mut interval_by_comp: Vec<Vec<(String, f64, f64)>> =
        vec![Vec::new(); best.structure.component_count];
    let ends = g.edge_indices().unwrap();
    let structure = &best.structure;
    // Recover vertex components from the fragment table and uncut unions.
    let vertex_comps = vertex_components(g, &best.pattern, structure);
    for (i, edge) in g.edges.iter().enumerate() {
        match &structure.fragments[i] {
            None => {
                let comp = vertex_comps[ends[i].0];
                if in_s(comp) {
                    interval_by_comp[comp].push((edge.id.clone(), 0.0, edge.length));
                }
            }
            Some(comps) => {
                // S-share of this edge's slider.
                let share = slack.min(edge.length);
                slack -= share;
                // Fill S-colored fragments in positional order with the
                // share, complement fragments with the remainder.
                let mut lengths = vec![0.0; comps.len()];
                let mut s_left = share;
                let mut c_left = edge.length - share;
                for (j, &comp) in comps.iter().enumerate() {
                    if in_s(comp) {
                        lengths[j] = s_left;
                        s_left = 0.0;
                    } else {
                        lengths[j] = c_left;
                        c_left = 0.0;
                    }
                }
                let mut pos = 0.0;
                for (j, &comp) in comps.iter().enumerate() {
                    let from = pos;
                    pos += lengths[j];
                    if j + 1 < comps.len() {
                        cuts.push(CutPoint {
                            edge: edge.id.clone(),
                            t: pos,
                        });
                    }
                    if in_s(comp) && lengths[j] > 0.0 {
                        interval_by_comp[comp].push((edge.id.clone(), from, pos));
                    }
                }
            }
        }
    }
    let mut s_components = Vec::new();
    for c in 0..structure.component_count {
        if !in_s(c) {
            continue;
        }
        let vertices: Vec<String> = g
            .vertices
            .iter()
            .enumerate()
            .filter(|(vi, _)| vertex_comps[*vi] == c)
            .map(|(_, name)| name.clone())
            .collect();
        let intervals = interval_by_comp[c].clone();
        if vertices.is_empty() && intervals.is_empty() {
            continue;
        }
        s_components.push(SComponent { vertices, intervals });
    }
    let denom = best.s_star.min(g.total_length() - best.s_star);
    MetricCheegerResult {
        value: best.ratio,
        k: best.k,
        cuts,
        s_components,
        attained_measure: denom,
        digest: crate::report::digest_of(&canonical_json_metric(g)),
    }
}

fn vertex_components(g: &MetricGraph, pattern: &[u8], structure: &ComponentStructure) -> Vec<usize> {
    let n = g.vertices.len();
    let ends = g.edge_indices().unwrap();
    let mut uf = UnionFind::new(n);
    for (i, &(u, v)) in ends.iter().enumerate() {
        if pattern[i] == 0 {
            uf.union(u, v);
        }
    }
    let mut comp_of_root = std::collections::HashMap::new();
    let mut out = vec![0usize; n];
    for i in 0..n {
        let root = uf.find(i);
        let next = comp_of_root.len();
        out[i] = *comp_of_root.entry(root).or_insert(next);
    }
    debug_assert!(comp_of_root.len() <= structure.component_count);
    out
}

/// Independent verification oracle: brute force over cut positions on a
/// uniform grid of grid_n + 1 points per edge (endpoints included), all
/// multiplicities <= 2, all colorings. Measures are computed from the actual
/// positions, with no balance-point optimization, so the result is an upper
/// bound on h that converges to h as the grid refines.
pub fn metric_cheeger_grid_oracle(g: &MetricGraph, grid_n: usize) -> Result<f64> {
    g.ensure_valid()?;
    if !is_connected_metric(g)? {
        return Err(Error::Disconnected {
            components: crate::graph::metric_components(g)?,
        });
    }
    let e = g.edges.len();
    if e > 5 {
        return Err(Error::GuardExceeded(format!(
            "grid oracle is limited to 5 edges (got {e})"
        )));
    }
    if grid_n > 20 || grid_n == 0 {
        return Err(Error::GuardExceeded("grid resolution must be in 1..=20".into()));
    }
    let total = g.total_length();
    let ends = g.edge_indices()?;
    let n = g.vertices.len();
    let mut best = f64::INFINITY;

    // Position choices per multiplicity: one cut at any grid point, two cuts
    // at any nondecreasing pair (coincident interior cuts are allowed and
    // count 2 toward |dS|).
    let grid = |i: usize, len: f64| i as f64 * len / grid_n as f64;

    for k in 1..=(2 * e) {
        if 2.0 * k as f64 / total >= best {
            break;
        }
        patterns_with_sum(e, 2, k, &mut |pattern| {
            // Enumerate position index tuples per cut edge.
            let cut_edges: Vec<usize> = (0..e).filter(|&i| pattern[i] > 0).collect();
            let mut choices: Vec<Vec<Vec<usize>>> = Vec::new();
            for &i in &cut_edges {
                let mut opts = Vec::new();
                if pattern[i] == 1 {
                    for a in 0..=grid_n {
                        opts.push(vec![a]);
                    }
                } else {
                    for a in 0..=grid_n {
                        for b in a..=grid_n {
                            opts.push(vec![a, b]);
                        }
                    }
                }
                choices.push(opts);
            }
            let mut selection = vec![0usize; cut_edges.len()];
            loop {
                // Build fragments for this explicit position assignment.
                let mut node_count = n;
                let mut frag_lengths: Vec<f64> = Vec::new();
                let mut frag_nodes: Vec<Vec<usize>> = vec![Vec::new(); e]; // per edge, node id of each fragment
                let mut unions: Vec<(usize, usize)> = Vec::new();
                for (slot, &i) in cut_edges.iter().enumerate() {
                    let len = g.edges[i].length;
                    let cuts = &choices[slot][selection[slot]];
                    let mut positions = vec![0.0];
                    positions.extend(cuts.iter().map(|&c| grid(c, len)));
                    positions.push(len);
                    let count = positions.len() - 1;
                    for f in 0..count {
                        let node = node_count;
                        node_count += 1;
                        frag_lengths.push(positions[f + 1] - positions[f]);
                        frag_nodes[i].push(node);
                        if f == 0 {
                            unions.push((node, ends[i].0));
                        }
                        if f == count - 1 {
                            unions.push((node, ends[i].1));
                        }
                    }
                }
                for i in 0..e {
                    if pattern[i] == 0 {
                        let node = node_count;
                        node_count += 1;
                        frag_lengths.push(g.edges[i].length);
                        frag_nodes[i].push(node);
                        unions.push((node, ends[i].0));
                        unions.push((node, ends[i].1));
                    }
                }
                let mut uf = UnionFind::new(node_count);
                for (a, b) in &unions {
                    uf.union(*a, *b);
                }
                let mut comp_of_root = std::collections::HashMap::new();
                let mut comp_of_node = vec![0usize; node_count];
                for node in 0..node_count {
                    let root = uf.find(node);
                    let next = comp_of_root.len();
                    comp_of_node[node] = *comp_of_root.entry(root).or_insert(next);
                }
                let ncomp = comp_of_root.len();
                let mut measure = vec![0.0; ncomp];
                for node in n..node_count {
                    measure[comp_of_node[node]] += frag_lengths[node - n];
                }
                if ncomp <= 31 {
                    for coloring in 0..(1u32 << ncomp) {
                        let in_s = |c: usize| (coloring >> c) & 1 == 1;
                        // Every cut must separate different colors.
                        let mut effective = true;
                        'edges: for &i in &cut_edges {
                            for w in frag_nodes[i].windows(2) {
                                if in_s(comp_of_node[w[0]]) == in_s(comp_of_node[w[1]]) {
                                    effective = false;
                                    break 'edges;
                                }
                            }
                        }
                        if !effective {
                            continue;
                        }
                        let s_measure: f64 = (0..ncomp).filter(|&c| in_s(c)).map(|c| measure[c]).sum();
                        let denom = s_measure.min(total - s_measure);
                        if denom > 0.0 {
                            let ratio = k as f64 / denom;
                            if ratio < best {
                                best = ratio;
                            }
                        }
                    }
                }
                // Advance the per-edge selection odometer.
                let mut slot = 0;
                loop {
                    if slot == selection.len() {
                        break;
                    }
                    selection[slot] += 1;
                    if selection[slot] < choices[slot].len() {
                        break;
                    }
                    selection[slot] = 0;
                    slot += 1;
                }
                if slot == selection.len() {
                    break;
                }
            }
        });
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::Numerical("no effective grid configuration found".into()))
    }
}
