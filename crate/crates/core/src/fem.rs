//! Lowest nonzero eigenvalue of the standard (Kirchhoff) Laplacian on a
//! metric graph: piecewise-linear finite elements per edge, continuity via
//! shared vertex degrees of freedom, Kirchhoff conditions arising naturally
//! from the weak form. Mesh doubling with Richardson extrapolation exploits
//! the O(h^2) convergence of linear elements.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::cut::metric_cheeger;
use crate::error::{Error, Result};
use crate::graph::{canonical_json_metric, is_connected_metric, MetricGraph};
use crate::linalg::generalized_symmetric_eigenvalues;
use crate::report::{digest_of, BoundReport};
use crate::smoothing::smooth_degree_two;

pub const DEFAULT_DOF_CAP: usize = 4000;
pub const DEFAULT_TARGET_REL_TOL: f64 = 1e-6;

/// Per-edge subdivision counts; one shared DOF per vertex plus n_e - 1
/// interior DOFs per edge.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub per_edge: Vec<usize>,
}

impl Mesh {
    /// n_e = max(2, round(l_e / h_target)), so short handle edges still
    /// carry at least two elements.
    pub fn with_target_width(g: &MetricGraph, h_target: f64) -> Self {
        Mesh {
            per_edge: g
                .edges
                .iter()
                .map(|e| ((e.length / h_target).round() as usize).max(2))
                .collect(),
        }
    }

    pub fn dof_count(&self, g: &MetricGraph) -> usize {
        g.vertices.len() + self.per_edge.iter().map(|n| n - 1).sum::<usize>()
    }
}

/// Assembles the stiffness and mass matrices. Element stiffness is
/// (1/w)[[1,-1],[-1,1]] and element mass (w/6)[[2,1],[1,2]] with
/// w = l_e / n_e. K is positive semidefinite with the constants in its
/// kernel for connected graphs; M is positive definite.
pub fn assemble(g: &MetricGraph, mesh: &Mesh) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    g.ensure_valid()?;
    if mesh.per_edge.len() != g.edges.len() || mesh.per_edge.iter().any(|&n| n < 2) {
        return Err(Error::InvalidParameter("mesh must have >= 2 elements per edge".into()));
    }
    let dof = mesh.dof_count(g);
    let ends = g.edge_indices()?;
    let mut k = DMatrix::zeros(dof, dof);
    let mut m = DMatrix::zeros(dof, dof);
    let mut next_interior = g.vertices.len();
    for (i, edge) in g.edges.iter().enumerate() {
        let n = mesh.per_edge[i];
        let w = edge.length / n as f64;
        let mut chain = Vec::with_capacity(n + 1);
        chain.push(ends[i].0);
        for _ in 0..n - 1 {
            chain.push(next_interior);
            next_interior += 1;
        }
        chain.push(ends[i].1);
        for seg in 0..n {
            let (a, b) = (chain[seg], chain[seg + 1]);
            k[(a, a)] += 1.0 / w;
            k[(b, b)] += 1.0 / w;
            k[(a, b)] -= 1.0 / w;
            k[(b, a)] -= 1.0 / w;
            m[(a, a)] += w / 3.0;
            m[(b, b)] += w / 3.0;
            m[(a, b)] += w / 6.0;
            m[(b, a)] += w / 6.0;
        }
    }
    Ok((k, m))
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneralizedEigenResult {
    /// Finest-mesh value of the second-smallest generalized eigenvalue.
    pub lambda1: f64,
    /// (target element width, lambda1) per refinement level.
    pub mesh_sequence: Vec<(f64, f64)>,
    /// Richardson extrapolation (4 lambda(h/2) - lambda(h)) / 3 from the two
    /// finest meshes.
    pub extrapolated: f64,
    /// Relative change between the two finest meshes.
    pub residual: f64,
    /// Set when the DOF cap stopped refinement before the tolerance was met.
    pub dof_capped: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub target_rel_tol: f64,
    pub dof_cap: usize,
    /// Initial target element width; default L/16.
    pub initial_h: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            target_rel_tol: DEFAULT_TARGET_REL_TOL,
            dof_cap: DEFAULT_DOF_CAP,
            initial_h: None,
        }
    }
}

impl SolveOptions {
    pub fn with_tol(tol: f64) -> Self {
        SolveOptions {
            target_rel_tol: tol,
            ..Default::default()
        }
    }
}

/// Second-smallest generalized eigenvalue on one fixed mesh.
pub fn lambda1_on_mesh(g: &MetricGraph, mesh: &Mesh) -> Result<f64> {
    let (k, m) = assemble(g, mesh)?;
    let evs = generalized_symmetric_eigenvalues(&k, &m)?;
    if evs.len() < 2 {
        return Err(Error::Numerical("fewer than two degrees of freedom".into()));
    }
    // lambda1 is identified by index: evs[0] is the constant (zero) mode.
    Ok(evs[1])
}

/// Solves K u = lambda M u on a doubling mesh sequence until the relative
/// change of lambda1 drops below the target or the DOF cap is reached.
pub fn lambda1_metric(g: &MetricGraph, opts: &SolveOptions) -> Result<GeneralizedEigenResult> {
    g.ensure_valid()?;
    if !is_connected_metric(g)? {
        return Err(Error::Disconnected {
            components: crate::graph::metric_components(g)?,
        });
    }
    let total = g.total_length();
    let mut h = opts.initial_h.unwrap_or(total / 16.0);
    let mut sequence: Vec<(f64, f64)> = Vec::new();
    let mut dof_capped = false;
    loop {
        let mesh = Mesh::with_target_width(g, h);
        if mesh.dof_count(g) > opts.dof_cap {
            dof_capped = true;
            break;
        }
        let lambda = lambda1_on_mesh(g, &mesh)?;
        sequence.push((h, lambda));
        if sequence.len() >= 2 {
            let coarse = sequence[sequence.len() - 2].1;
            let fine = lambda;
            if ((coarse - fine) / fine).abs() < opts.target_rel_tol {
                break;
            }
        }
        h /= 2.0;
    }
    if sequence.is_empty() {
        return Err(Error::GuardExceeded(format!(
            "DOF cap {} is below the coarsest admissible mesh",
            opts.dof_cap
        )));
    }
    let (lambda1, extrapolated, residual) = if sequence.len() >= 2 {
        let coarse = sequence[sequence.len() - 2].1;
        let fine = sequence[sequence.len() - 1].1;
        (fine, (4.0 * fine - coarse) / 3.0, ((coarse - fine) / fine).abs())
    } else {
        let only = sequence[0].1;
        (only, only, f64::INFINITY)
    };
    Ok(GeneralizedEigenResult {
        lambda1,
        mesh_sequence: sequence,
        extrapolated,
        residual,
        dof_capped,
    })
}

/// Closed-form lambda1 for named families, used as oracles.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Interval { length: f64 },
    Circle { length: f64 },
    Flower { petals: usize, total_length: f64 },
    Star { edges: usize, edge_length: f64 },
}

pub fn analytic_lambda1(family: &Family) -> Result<f64> {
    use std::f64::consts::PI;
    let value = match *family {
        Family::Interval { length } => (PI / length).powi(2),
        Family::Circle { length } => (2.0 * PI / length).powi(2),
        Family::Flower { petals, total_length } => (PI * petals as f64 / total_length).powi(2),
        // Lowest nonzero mode vanishes at the center with a Neumann end:
        // quarter wave per edge.
        Family::Star { edge_length, .. } => (PI / (2.0 * edge_length)).powi(2),
    };
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidParameter("family parameters must be positive".into()));
    }
    Ok(value)
}

fn metric_tolerance(quantities: &[f64], residual_abs: f64) -> f64 {
    let scale = quantities.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    1e-6 * scale + residual_abs
}

/// Nicaise sandwich: max{h^2/4, (pi^2/E^2) h^2/4} <= lambda1 <= pi^2 E^2 h^2 / 4,
/// with E the number of essential edges. Two reports are produced: the
/// assertable one uses E from the smoothed graph, the informational one the
/// raw drawn edge count (the two differ when smoothing creates loops).
pub fn check_nicaise_bounds(g: &MetricGraph, opts: &SolveOptions) -> Result<Vec<BoundReport>> {
    use std::f64::consts::PI;
    let h = metric_cheeger(g, 2)?.value;
    let solve = lambda1_metric(g, opts)?;
    let lambda = solve.extrapolated;
    let residual_abs = (solve.lambda1 - solve.extrapolated).abs().max(solve.residual * lambda);
    let smoothed = smooth_degree_two(g)?;
    let digest = digest_of(&canonical_json_metric(g));
    let mut reports = Vec::new();
    for (label, e_count, assertable) in [
        ("nicaise(E=essential)", smoothed.essential_edge_count, true),
        ("nicaise(E=raw)", g.edges.len(), false),
    ] {
        let e = e_count as f64;
        let lower = (h * h / 4.0).max(PI * PI / (e * e) * h * h / 4.0);
        let upper = PI * PI * e * e * h * h / 4.0;
        let tol = metric_tolerance(&[lower, lambda, upper], residual_abs);
        let mut report = BoundReport::sandwich(label, lower, lambda, upper, tol, &digest)
            .with_quantities(vec![
                ("h".into(), h),
                ("E".into(), e),
                ("lambda1".into(), lambda),
                ("L".into(), g.total_length()),
            ]);
        if !assertable {
            report = report.non_assertable();
        }
        reports.push(report);
    }
    Ok(reports)
}

/// Conjectured lower bound pi^2 h^2 / 4 <= lambda1. Reported, never fatal.
pub fn check_conjecture(g: &MetricGraph, opts: &SolveOptions) -> Result<BoundReport> {
    use std::f64::consts::PI;
    let h = metric_cheeger(g, 2)?.value;
    let solve = lambda1_metric(g, opts)?;
    let lambda = solve.extrapolated;
    let residual_abs = (solve.lambda1 - solve.extrapolated).abs().max(solve.residual * lambda);
    let lhs = PI * PI * h * h / 4.0;
    let tol = metric_tolerance(&[lhs, lambda], residual_abs);
    let digest = digest_of(&canonical_json_metric(g));
    Ok(BoundReport::lower_bound("conjecture-pi2h2-over-4", lhs, lambda, tol, &digest)
        .with_quantities(vec![("h".into(), h), ("lambda1".into(), lambda)])
        .non_assertable())
}

/// Elementary length bounds: 2/L <= h always; h <= 2E/L is only asserted
/// when the smoothed graph is loop-free (the loop convention for E makes the
/// bound fail on e.g. the circle, so it is reported, not asserted).
pub fn check_length_bounds(g: &MetricGraph) -> Result<Vec<BoundReport>> {
    let h = metric_cheeger(g, 2)?.value;
    let total = g.total_length();
    let smoothed = smooth_degree_two(g)?;
    let e = smoothed.essential_edge_count as f64;
    let digest = digest_of(&canonical_json_metric(g));
    let has_loop = smoothed.reduced.edges.iter().any(|edge| edge.u == edge.v);
    let lower = BoundReport::lower_bound("h-at-least-2-over-L", 2.0 / total, h, 1e-9, &digest)
        .with_quantities(vec![("L".into(), total), ("h".into(), h)]);
    let upper = if has_loop {
        BoundReport::not_applicable("h-at-most-2E-over-L", &digest).with_quantities(vec![
            ("L".into(), total),
            ("E".into(), e),
            ("h".into(), h),
        ])
    } else {
        BoundReport::lower_bound("h-at-most-2E-over-L", h, 2.0 * e / total, 1e-9, &digest)
            .with_quantities(vec![("L".into(), total), ("E".into(), e), ("h".into(), h)])
    };
    Ok(vec![lower, upper])
}

pub use crate::report::Tristate as BoundStatus;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, FamilySpec};
    use crate::report::Tristate;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn assemble_single_edge_two_elements() {
        let g = MetricGraph::from_edges(&["a", "b"], &[("a", "b", 1.0)]);
        let mesh = Mesh { per_edge: vec![2] };
        let (k, m) = assemble(&g, &mesh).unwrap();
        // DOF order: vertex a, vertex b, interior midpoint.
        assert_eq!(k.nrows(), 3);
        let kk = |i: usize, j: usize| k[(i, j)];
        assert_relative_eq!(kk(0, 0), 2.0);
        assert_relative_eq!(kk(1, 1), 2.0);
        assert_relative_eq!(kk(2, 2), 4.0);
        assert_relative_eq!(kk(0, 2), -2.0);
        assert_relative_eq!(kk(1, 2), -2.0);
        assert_relative_eq!(kk(0, 1), 0.0);
        let mm = |i: usize, j: usize| m[(i, j)];
        assert_relative_eq!(mm(0, 0), 2.0 / 12.0);
        assert_relative_eq!(mm(2, 2), 4.0 / 12.0);
        assert_relative_eq!(mm(0, 2), 1.0 / 12.0);
        assert_relative_eq!(mm(0, 1), 0.0);
    }

    #[test]
    fn constants_span_the_stiffness_kernel() {
        let g = families::butterfly(1.0);
        let mesh = Mesh::with_target_width(&g, 0.25);
        let (k, _) = assemble(&g, &mesh).unwrap();
        let ones = nalgebra::DVector::from_element(k.nrows(), 1.0);
        let residual = (&k * &ones).norm();
        assert!(residual <= 1e-10 * k.norm(), "K*1 residual {residual}");
    }

    #[test]
    fn loop_mesh_attaches_both_ends_to_the_anchor() {
        let g = MetricGraph::from_edges(&["a"], &[("a", "a", 1.0)]);
        let mesh = Mesh { per_edge: vec![4] };
        let (k, _) = assemble(&g, &mesh).unwrap();
        assert_eq!(k.nrows(), 4); // vertex + 3 interior
        // Vertex row couples to the first and last interior DOF.
        assert!(k[(0, 1)] != 0.0 && k[(0, 3)] != 0.0);
    }

    #[test]
    fn interval_lambda1_matches_pi_squared() {
        let g = MetricGraph::from_edges(&["a", "b"], &[("a", "b", 1.0)]);
        let result = lambda1_metric(&g, &SolveOptions::with_tol(1e-5)).unwrap();
        assert_relative_eq!(result.extrapolated, PI * PI, max_relative = 1e-4);
        assert!(!result.dof_capped);
    }

    #[test]
    fn circle_lambda1_matches_4pi_squared() {
        let g = MetricGraph::from_edges(&["a"], &[("a", "a", 1.0)]);
        let result = lambda1_metric(&g, &SolveOptions::with_tol(1e-5)).unwrap();
        assert_relative_eq!(result.extrapolated, 4.0 * PI * PI, max_relative = 1e-4);
    }

    #[test]
    fn flower_lambda1_matches_pi2e2() {
        let g = families::generate_family(&FamilySpec::Flower { petals: 3, total_length: 1.0 }).unwrap();
        let result = lambda1_metric(&g, &SolveOptions::with_tol(1e-5)).unwrap();
        assert_relative_eq!(result.extrapolated, 9.0 * PI * PI, max_relative = 1e-3);
    }

    #[test]
    fn star_lambda1_matches_quarter_wave() {
        let g = families::generate_family(&FamilySpec::Star { edges: 3, edge_length: 1.0 }).unwrap();
        let result = lambda1_metric(&g, &SolveOptions::with_tol(1e-5)).unwrap();
        assert_relative_eq!(result.extrapolated, PI * PI / 4.0, max_relative = 1e-4);
    }

    #[test]
    fn analytic_values() {
        assert_relative_eq!(analytic_lambda1(&Family::Interval { length: 2.0 }).unwrap(), PI * PI / 4.0);
        assert_relative_eq!(
            analytic_lambda1(&Family::Flower { petals: 4, total_length: 1.0 }).unwrap(),
            16.0 * PI * PI
        );
        assert_relative_eq!(
            analytic_lambda1(&Family::Circle { length: 2.0 * PI }).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn nicaise_interval_upper_equality() {
        let g = MetricGraph::from_edges(&["a", "b"], &[("a", "b", 1.0)]);
        let reports = check_nicaise_bounds(&g, &SolveOptions::with_tol(1e-5)).unwrap();
        let primary = &reports[0];
        assert_eq!(primary.holds, Tristate::Holds);
        // h = 2, E = 1: lower and upper both equal pi^2.
        assert_relative_eq!(primary.lhs, PI * PI, epsilon = 1e-9);
        assert_relative_eq!(primary.rhs, PI * PI, epsilon = 1e-9);
    }

    #[test]
    fn nicaise_circle_double_equality() {
        let g = MetricGraph::from_edges(&["a"], &[("a", "a", 1.0)]);
        let reports = check_nicaise_bounds(&g, &SolveOptions::with_tol(1e-5)).unwrap();
        let primary = &reports[0];
        assert_eq!(primary.holds, Tristate::Holds);
        // h = 4, E = 1: both sides equal 4 pi^2.
        assert_relative_eq!(primary.lhs, 4.0 * PI * PI, epsilon = 1e-9);
        assert_relative_eq!(primary.rhs, 4.0 * PI * PI, epsilon = 1e-9);
    }

    #[test]
    fn conjecture_on_interval_is_equality() {
        let g = MetricGraph::from_edges(&["a", "b"], &[("a", "b", 1.0)]);
        let report = check_conjecture(&g, &SolveOptions::with_tol(1e-5)).unwrap();
        assert_eq!(report.holds, Tristate::Holds);
        assert!(!report.assertable);
        assert_relative_eq!(report.lhs, PI * PI, epsilon = 1e-9);
    }

    #[test]
    fn length_bounds_loop_reduction_not_asserted() {
        let g = families::generate_family(&FamilySpec::Cycle { edges: 5, edge_length: 1.0 }).unwrap();
        let reports = check_length_bounds(&g).unwrap();
        assert_eq!(reports[0].holds, Tristate::Holds);
        assert_eq!(reports[1].holds, Tristate::NotApplicable);
    }

    #[test]
    fn length_bounds_loop_free() {
        let g = families::generate_family(&FamilySpec::Star { edges: 3, edge_length: 1.0 }).unwrap();
        let reports = check_length_bounds(&g).unwrap();
        assert_eq!(reports[0].holds, Tristate::Holds);
        assert_eq!(reports[1].holds, Tristate::Holds);
    }
}
