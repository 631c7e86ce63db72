//! `cheeger`: Cheeger constants, lowest nonzero Laplacian eigenvalues, and
//! bound-verification campaigns for discrete and metric graphs.
//!
//! Exit codes: 0 clean, 1 at least one assertable inequality violated,
//! 2 input or usage error.

use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use cheeger_core::cut::metric_cheeger;
use cheeger_core::discrete::{check_alon_milman, check_fiedler_bounds, discrete_cheeger, fiedler_value};
use cheeger_core::ensemble::{random_connected_discrete, random_metric_graph};
use cheeger_core::families::{generate_family, FamilySpec};
use cheeger_core::fem::{
    check_conjecture, check_length_bounds, check_nicaise_bounds, lambda1_metric, SolveOptions,
    DEFAULT_DOF_CAP,
};
use cheeger_core::graph::canonical_json_discrete;
use cheeger_core::io::{discrete_from_json, metric_from_json, metric_to_json, sig12, witness_json};
use cheeger_core::report::{digest_of, BoundReport};
use cheeger_core::{DiscreteGraph, MetricGraph, Tristate};

#[derive(Parser)]
#[command(name = "cheeger", version, about = "Cheeger constants and spectral gaps of discrete and metric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete (combinatorial) graph computations.
    Discrete {
        #[command(subcommand)]
        action: DiscreteAction,
    },
    /// Metric (quantum) graph computations.
    Metric {
        #[command(subcommand)]
        action: MetricAction,
    },
    /// Generate a named graph family as a metric graph JSON file.
    Family(FamilyArgs),
    /// Parameter scans over named families.
    Scan {
        #[command(subcommand)]
        target: ScanTarget,
    },
    /// Bound-verification campaign over random ensembles.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum DiscreteAction {
    /// Exact Cheeger constant with a witness vertex set.
    Cheeger(InputArg),
    /// Fiedler value (second-smallest Laplacian eigenvalue).
    Lambda1(InputArg),
    /// Check the spectral sandwich and isoperimetric lower bound.
    Verify(InputArg),
}

#[derive(Subcommand)]
enum MetricAction {
    /// Metric Cheeger constant with a witness cut configuration.
    Cheeger(MetricCheegerArgs),
    /// Lowest nonzero eigenvalue of the standard Laplacian (FEM).
    Lambda1(MetricSolveArgs),
    /// Check the two-sided spectral bounds, elementary length bounds, and
    /// the conjectural lower bound (reported, never fatal).
    Verify(MetricVerifyArgs),
}

#[derive(Args)]
struct InputArg {
    /// Graph JSON file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct MetricCheegerArgs {
    #[arg(long)]
    input: PathBuf,
    /// Cuts allowed per edge in the exact search (2 suffices; higher values
    /// only cost time).
    #[arg(long, default_value_t = 2)]
    max_cuts: u8,
}

#[derive(Args)]
struct MetricSolveArgs {
    #[arg(long)]
    input: PathBuf,
    /// Relative tolerance for the mesh-refinement stopping rule.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Args)]
struct MetricVerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 2)]
    max_cuts: u8,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family kind: path, cycle, star, flower, pumpkin, dumbbell, butterfly.
    kind: String,
    /// Edge count (path, cycle, star, pumpkin).
    #[arg(long)]
    edges: Option<usize>,
    /// Petal count (flower).
    #[arg(long)]
    petals: Option<usize>,
    /// Petals per side (dumbbell).
    #[arg(long)]
    petals_per_side: Option<usize>,
    /// Per-edge length (path, cycle, star, pumpkin, butterfly).
    #[arg(long)]
    edge_length: Option<f64>,
    /// Total length (flower, dumbbell).
    #[arg(long)]
    total_length: Option<f64>,
    /// Handle length (dumbbell).
    #[arg(long)]
    handle: Option<f64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ScanTarget {
    /// Sweep symmetric flower dumbbells over petal counts and handle lengths.
    Dumbbell(ScanDumbbellArgs),
}

#[derive(Args)]
struct ScanDumbbellArgs {
    /// Petal-count range, inclusive, e.g. 1..3.
    #[arg(long, value_parser = parse_range)]
    m: RangeInclusive<usize>,
    /// Total length (the normalization L = 2 makes the reference value
    /// exactly pi^2 m^2).
    #[arg(long, default_value_t = 2.0)]
    length: f64,
    /// Comma-separated handle lengths, e.g. 0.1,0.01,0.001.
    #[arg(long, value_delimiter = ',', required = true)]
    handle: Vec<f64>,
    /// FEM relative tolerance.
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EnsembleKind {
    Discrete,
    Metric,
    Both,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which ensemble(s) to run.
    #[arg(long, value_enum)]
    ensemble: EnsembleKind,
    /// Graphs per ensemble; defaults: 100 discrete, 50 metric.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// FEM relative tolerance for the metric campaign.
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// JSON report file.
    #[arg(long)]
    out: PathBuf,
    /// Optional CSV summary file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: usize = b.trim_start_matches('=').trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(violated) => std::process::exit(if violated { 1 } else { 0 }),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

/// Returns whether any assertable inequality was violated.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Discrete { action } => run_discrete(action),
        Command::Metric { action } => run_metric(action),
        Command::Family(args) => run_family(args).map(|()| false),
        Command::Scan {
            target: ScanTarget::Dumbbell(args),
        } => run_scan_dumbbell(args).map(|()| false),
        Command::Verify(args) => run_verify(args),
    }
}

fn read_to_string(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_discrete(path: &PathBuf) -> Result<DiscreteGraph> {
    let text = read_to_string(path)?;
    let g = discrete_from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(g)
}

fn load_metric(path: &PathBuf) -> Result<MetricGraph> {
    let text = read_to_string(path)?;
    let g = metric_from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(g)
}

/// FEM options with the env override CHEEGER_DOF_CAP applied.
fn solve_options(tol: f64) -> Result<SolveOptions> {
    let dof_cap = match std::env::var("CHEEGER_DOF_CAP") {
        Ok(text) => text
            .parse::<usize>()
            .with_context(|| format!("CHEEGER_DOF_CAP must be a positive integer, got {text:?}"))?,
        Err(_) => DEFAULT_DOF_CAP,
    };
    Ok(SolveOptions {
        target_rel_tol: tol,
        dof_cap,
        initial_h: None,
    })
}

fn run_discrete(action: DiscreteAction) -> Result<bool> {
    match action {
        DiscreteAction::Cheeger(args) => {
            let g = load_discrete(&args.input)?;
            let result = discrete_cheeger(&g)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "h": sig12(result.value.value()),
                    "num": result.value.num,
                    "den": result.value.den,
                    "witness_set": result.witness_set,
                }))?
            );
            Ok(false)
        }
        DiscreteAction::Lambda1(args) => {
            let g = load_discrete(&args.input)?;
            let lambda1 = fiedler_value(&g)?;
            println!("{}", serde_json::to_string_pretty(&json!({ "lambda1": sig12(lambda1) }))?);
            Ok(false)
        }
        DiscreteAction::Verify(args) => {
            let g = load_discrete(&args.input)?;
            let reports = vec![check_fiedler_bounds(&g)?, check_alon_milman(&g)?];
            print_reports(&reports)?;
            Ok(any_assertable_violation(&reports))
        }
    }
}

fn run_metric(action: MetricAction) -> Result<bool> {
    match action {
        MetricAction::Cheeger(args) => {
            let g = load_metric(&args.input)?;
            let result = metric_cheeger(&g, args.max_cuts)?;
            println!("{}", serde_json::to_string_pretty(&witness_json(&result))?);
            Ok(false)
        }
        MetricAction::Lambda1(args) => {
            let g = load_metric(&args.input)?;
            let opts = solve_options(args.tol)?;
            let solve = lambda1_metric(&g, &opts)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "lambda1": sig12(solve.extrapolated),
                    "finest_mesh_value": sig12(solve.lambda1),
                    "residual": sig12(solve.residual),
                    "dof_capped": solve.dof_capped,
                    "mesh_sequence": solve
                        .mesh_sequence
                        .iter()
                        .map(|(h, l)| json!([sig12(*h), sig12(*l)]))
                        .collect::<Vec<_>>(),
                }))?
            );
            Ok(false)
        }
        MetricAction::Verify(args) => {
            let g = load_metric(&args.input)?;
            let opts = solve_options(args.tol)?;
            let reports = metric_reports(&g, &opts)?;
            print_reports(&reports)?;
            Ok(any_assertable_violation(&reports))
        }
    }
}

/// All metric-side checks for one graph, in a fixed order.
fn metric_reports(g: &MetricGraph, opts: &SolveOptions) -> Result<Vec<BoundReport>> {
    let mut reports = check_length_bounds(g)?;
    reports.extend(check_nicaise_bounds(g, opts)?);
    reports.push(check_conjecture(g, opts)?);
    Ok(reports)
}

fn any_assertable_violation(reports: &[BoundReport]) -> bool {
    reports
        .iter()
        .any(|r| r.assertable && r.holds == Tristate::Violated)
}

/// JSON value for a float: rounded to 12 significant digits; null when not
/// finite (not-applicable reports carry NaN slots).
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(sig12(x))
    } else {
        Value::Null
    }
}

fn report_value(r: &BoundReport) -> Value {
    json!({
        "inequality": r.inequality,
        "lhs": num(r.lhs),
        "middle": num(r.middle),
        "rhs": num(r.rhs),
        "quantities": r.quantities.iter().map(|(k, v)| json!([k, num(*v)])).collect::<Vec<_>>(),
        "holds": r.holds,
        "slack": num(r.slack),
        "tolerance": num(r.tolerance),
        "assertable": r.assertable,
        "digest": r.digest,
    })
}

fn print_reports(reports: &[BoundReport]) -> Result<()> {
    let values: Vec<Value> = reports.iter().map(report_value).collect();
    println!("{}", serde_json::to_string_pretty(&Value::Array(values))?);
    Ok(())
}

fn run_family(args: FamilyArgs) -> Result<()> {
    let spec = family_spec(&args)?;
    let g = generate_family(&spec)?;
    let text = metric_to_json(&g);
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn family_spec(args: &FamilyArgs) -> Result<FamilySpec> {
    fn need<T: Copy>(opt: Option<T>, flag: &str, kind: &str) -> Result<T> {
        opt.with_context(|| format!("family {kind} requires --{flag}"))
    }
    let kind = args.kind.as_str();
    Ok(match kind {
        "path" => FamilySpec::Path {
            edges: need(args.edges, "edges", kind)?,
            edge_length: need(args.edge_length, "edge-length", kind)?,
        },
        "cycle" => FamilySpec::Cycle {
            edges: need(args.edges, "edges", kind)?,
            edge_length: need(args.edge_length, "edge-length", kind)?,
        },
        "star" => FamilySpec::Star {
            edges: need(args.edges, "edges", kind)?,
            edge_length: need(args.edge_length, "edge-length", kind)?,
        },
        "flower" => FamilySpec::Flower {
            petals: need(args.petals, "petals", kind)?,
            total_length: need(args.total_length, "total-length", kind)?,
        },
        "pumpkin" => FamilySpec::Pumpkin {
            edges: need(args.edges, "edges", kind)?,
            edge_length: need(args.edge_length, "edge-length", kind)?,
        },
        "dumbbell" => FamilySpec::Dumbbell {
            petals_per_side: need(args.petals_per_side, "petals-per-side", kind)?,
            total_length: need(args.total_length, "total-length", kind)?,
            handle: need(args.handle, "handle", kind)?,
        },
        "butterfly" => FamilySpec::Butterfly {
            edge_length: need(args.edge_length, "edge-length", kind)?,
        },
        other => bail!("unknown family kind {other:?}"),
    })
}

/// Decimal text for CSV cells: the shortest representation of the value
/// rounded to 12 significant digits, so output is byte-identical across runs.
fn csv_num(x: f64) -> String {
    format!("{}", sig12(x))
}

fn run_scan_dumbbell(args: ScanDumbbellArgs) -> Result<()> {
    if args.handle.iter().any(|&e| !(e.is_finite() && e > 0.0)) {
        bail!("handle lengths must be positive");
    }
    let opts = solve_options(args.tol)?;
    let mut cells: Vec<(usize, f64)> = Vec::new();
    for m in args.m.clone() {
        for &eps in &args.handle {
            cells.push((m, eps));
        }
    }
    let rows: Vec<Result<String>> = cells
        .par_iter()
        .map(|&(m, eps)| {
            let g = generate_family(&FamilySpec::Dumbbell {
                petals_per_side: m,
                total_length: args.length,
                handle: eps,
            })?;
            let h = metric_cheeger(&g, 2)?.value;
            let lambda1 = lambda1_metric(&g, &opts)?.extrapolated;
            let reference = std::f64::consts::PI.powi(2) * (m * m) as f64;
            Ok(format!(
                "{m},{},{},{},{},{}",
                csv_num(eps),
                csv_num(h),
                csv_num(lambda1),
                csv_num(reference),
                csv_num(lambda1 / reference)
            ))
        })
        .collect();
    let mut out = String::from("m,epsilon,h,lambda1,pi2m2,ratio\n");
    for row in rows {
        out.push_str(&row?);
        out.push('\n');
    }
    fs::write(&args.out, out).with_context(|| format!("writing {}", args.out.display()))?;
    Ok(())
}

struct GraphReports {
    index: usize,
    kind: &'static str,
    digest: String,
    reports: Vec<BoundReport>,
}

fn run_verify(args: VerifyArgs) -> Result<bool> {
    let mut graphs: Vec<GraphReports> = Vec::new();
    if matches!(args.ensemble, EnsembleKind::Discrete | EnsembleKind::Both) {
        let count = args.count.unwrap_or(100);
        let mut batch = discrete_campaign(count, args.seed)?;
        graphs.append(&mut batch);
    }
    if matches!(args.ensemble, EnsembleKind::Metric | EnsembleKind::Both) {
        let count = args.count.unwrap_or(50);
        let opts = solve_options(args.tol)?;
        let mut batch = metric_campaign(count, args.seed, &opts)?;
        graphs.append(&mut batch);
    }

    let mut holds = 0usize;
    let mut violated = 0usize;
    let mut not_applicable = 0usize;
    let mut conjecture_violations = 0usize;
    for g in &graphs {
        for r in &g.reports {
            match r.holds {
                Tristate::Holds => holds += 1,
                Tristate::Violated => {
                    violated += usize::from(r.assertable);
                    if !r.assertable {
                        conjecture_violations += 1;
                    }
                }
                Tristate::NotApplicable => not_applicable += 1,
            }
        }
    }

    let report = json!({
        "seed": args.seed,
        "ensemble": match args.ensemble {
            EnsembleKind::Discrete => "discrete",
            EnsembleKind::Metric => "metric",
            EnsembleKind::Both => "both",
        },
        "graph_count": graphs.len(),
        "summary": {
            "holds": holds,
            "assertable_violations": violated,
            "not_applicable": not_applicable,
            "non_assertable_violations": conjecture_violations,
        },
        "graphs": graphs.iter().map(|g| json!({
            "index": g.index,
            "kind": g.kind,
            "digest": g.digest,
            "reports": g.reports.iter().map(report_value).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    fs::write(&args.out, serde_json::to_string_pretty(&report)?)
        .with_context(|| format!("writing {}", args.out.display()))?;

    if let Some(csv_path) = &args.csv {
        let mut out = String::from("index,kind,inequality,holds,assertable,slack\n");
        for g in &graphs {
            for r in &g.reports {
                let holds = match r.holds {
                    Tristate::Holds => "holds",
                    Tristate::Violated => "violated",
                    Tristate::NotApplicable => "not-applicable",
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    g.index,
                    g.kind,
                    r.inequality,
                    holds,
                    r.assertable,
                    if r.slack.is_finite() { csv_num(r.slack) } else { String::new() }
                ));
            }
        }
        fs::write(csv_path, out).with_context(|| format!("writing {}", csv_path.display()))?;
    }

    println!(
        "checked {} graphs: {} holds, {} assertable violations, {} not applicable, {} conjecture flags",
        graphs.len(),
        holds,
        violated,
        not_applicable,
        conjecture_violations
    );
    Ok(violated > 0)
}

fn discrete_campaign(count: usize, seed: u64) -> Result<Vec<GraphReports>> {
    (0..count)
        .into_par_iter()
        .map(|index| {
            // V cycles through [3, 8]; each graph gets its own derived seed.
            let vertices = 3 + index % 6;
            let g = random_connected_discrete(vertices, 0.5, seed.wrapping_add(index as u64))?;
            let reports = vec![check_fiedler_bounds(&g)?, check_alon_milman(&g)?];
            Ok(GraphReports {
                index,
                kind: "discrete",
                digest: digest_of(&canonical_json_discrete(&g)),
                reports,
            })
        })
        .collect()
}

fn metric_campaign(count: usize, seed: u64, opts: &SolveOptions) -> Result<Vec<GraphReports>> {
    (0..count)
        .into_par_iter()
        .map(|index| {
            let g = random_metric_graph(seed.wrapping_add(index as u64))?;
            let reports = metric_reports(&g, opts)?;
            let digest = reports
                .first()
                .map(|r| r.digest.clone())
                .unwrap_or_default();
            Ok(GraphReports {
                index,
                kind: "metric",
                digest,
                reports,
            })
        })
        .collect()
}
