//! Command-line front end for `niemytzki-lab`.
//!
//! Every command produces a JSON report and a plain-text summary, and some also
//! produce a figure or a CSV dump. With `--out DIR` these are written to
//! `report.json`, `summary.txt`, `figure.svg` and `samples.csv`.

pub mod catalog;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use niemytzki_lab::criterion::{numeric_ratio_probe, refute, ProbeGrid, RefuteConfig, Verdict, VerdictReport};
use niemytzki_lab::geometry::svg::lens_svg;
use niemytzki_lab::geometry::{mutual_refinement, raster_components, Agreement, LensRegion, Point};
use niemytzki_lab::liminf::{
    eq1_check, liminf_estimate, quotient_bound_check, random::admissible_instances, EstimateReport, GeometricGrid,
    LiminfEstimate,
};
use niemytzki_lab::profile::{verify_basic, BasicFamily};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "NIEMYTZKI_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "niemytzki-lab", version, about = "Neighbourhood bases of modified Niemytzki planes")]
pub struct Cli {
    /// Directory for report.json, summary.txt and any figure or samples.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed recorded in reports and used by randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Skip the automatic axiom check on parsed families.
    #[arg(long, global = true)]
    pub no_verify: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.1)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.5)]
    pub ratio: f64,
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
    #[arg(long, default_value_t = 5)]
    pub windows: usize,
}

impl From<GridArgs> for GeometricGrid {
    fn from(g: GridArgs) -> Self {
        GeometricGrid { x0: g.x0, ratio: g.ratio, depth: g.depth, windows: g.windows }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the basic-family axioms.
    VerifyFamily {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 32)]
        n_max: u32,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Lens between two boundary neighbourhoods: figure, raster labels and oracle agreement.
    #[command(allow_negative_numbers = true)]
    Lens {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 800)]
        grid: usize,
    },
    /// Compare two families as neighbourhood bases at a boundary point.
    Refine {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 20)]
        n_max: u32,
        #[arg(long, default_value_t = 64)]
        k_max: u32,
    },
    /// Search for a certificate that two spaces are not homeomorphic.
    Refute {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long, default_value_t = 64)]
        m_max: u32,
        #[arg(long, default_value_t = 1e-9)]
        margin: f64,
        /// Cross-check each witness numerically for k = 1..=PROBE_K (0 disables).
        #[arg(long, default_value_t = 0)]
        probe_k: u32,
    },
    /// Lower-limit estimates: one function, a quotient h(φ)/h(ψ), or seeded random quotients.
    Liminf {
        #[arg(long, conflicts_with_all = ["h", "random"])]
        function: Option<String>,
        #[arg(long, requires_all = ["phi", "psi"], conflicts_with = "random")]
        h: Option<String>,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        psi: Option<String>,
        /// Number of seeded random admissible instances, starting at --seed.
        #[arg(long)]
        random: Option<usize>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Lower limit of the ratio of two symmetric derivative quotients of g at u.
    #[command(allow_negative_numbers = true)]
    Eq1 {
        #[arg(long)]
        g: String,
        #[arg(long)]
        u: f64,
        #[arg(long, default_value = "h^2")]
        phi: String,
        #[arg(long, default_value = "h")]
        psi: String,
        #[command(flatten)]
        grid: GridArgs,
    },
}

/// Everything a command produces.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub report: serde_json::Value,
    pub summary: String,
    pub figure: Option<String>,
    pub samples: Option<String>,
}

impl RunOutput {
    fn new<R: Serialize>(report: &R, summary: String) -> Result<Self> {
        Ok(RunOutput { report: serde_json::to_value(report)?, summary, figure: None, samples: None })
    }

    pub fn report_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.report).expect("JSON values serialize");
        text.push('\n');
        text
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let write = |name: &str, text: &str| {
            let path = dir.join(name);
            std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
        };
        write("report.json", &self.report_json())?;
        write("summary.txt", &self.summary)?;
        if let Some(svg) = &self.figure {
            write("figure.svg", svg)?;
        }
        if let Some(csv) = &self.samples {
            write("samples.csv", csv)?;
        }
        Ok(())
    }
}

/// Builds the global rayon pool from [`THREADS_ENV`] when it is set.
pub fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let threads: usize = value.trim().parse().with_context(|| format!("{THREADS_ENV}={value} is not a count"))?;
    if threads == 0 {
        bail!("{THREADS_ENV} must be positive");
    }
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

pub fn run(cli: &Cli) -> Result<RunOutput> {
    let verify = !cli.no_verify;
    match &cli.command {
        Command::VerifyFamily { family, n_max, grid } => verify_family(family, *n_max, *grid),
        Command::Lens { family, n, a, b, grid } => lens(&catalog::family(family, verify)?, *n, *a, *b, *grid),
        Command::Refine { a, b, n_max, k_max } => {
            refine(&catalog::family(a, verify)?, &catalog::family(b, verify)?, *n_max, *k_max)
        }
        Command::Refute { a, b, n_max, m_max, margin, probe_k } => {
            let config = RefuteConfig { n_max: *n_max, m_max: *m_max, margin: *margin, ..Default::default() };
            refute_cmd(&catalog::family(a, verify)?, &catalog::family(b, verify)?, &config, *probe_k, cli.seed)
        }
        Command::Liminf { function, h, phi, psi, random, grid } => {
            let grid = GeometricGrid::from(*grid);
            match (function, h, random) {
                (Some(f), None, None) => liminf_single(f, &grid, cli.seed),
                (None, Some(h), None) => {
                    let (phi, psi) = (phi.as_deref().unwrap_or_default(), psi.as_deref().unwrap_or_default());
                    liminf_quotient(h, phi, psi, &grid, cli.seed)
                }
                (None, None, Some(count)) => liminf_random(*count, &grid, cli.seed),
                _ => bail!("liminf needs exactly one of --function, --h/--phi/--psi or --random"),
            }
        }
        Command::Eq1 { g, u, phi, psi, grid } => eq1(g, *u, phi, psi, &GeometricGrid::from(*grid), cli.seed),
    }
}

fn verify_family(arg: &str, n_max: u32, grid: usize) -> Result<RunOutput> {
    let family = catalog::builtin_or_file(arg)?;
    let report = verify_basic(&family, n_max, grid)?;
    let mut summary = format!("family {} (n <= {n_max}, {grid} grid points)\n", report.family);
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        let _ = write!(summary, "{status} {:?}", check.axiom);
        if let Some(v) = &check.first_violation {
            let _ = write!(summary, ": n={} x={:e} {}", v.n, v.x, v.detail);
        }
        summary.push('\n');
    }
    let _ = writeln!(summary, "basic family: {}", if report.all_passed() { "yes" } else { "no" });
    RunOutput::new(&report, summary)
}

#[derive(Serialize)]
struct LensReport {
    family: String,
    n: u32,
    a: f64,
    b: f64,
    grid: usize,
    intersecting: bool,
    saddle: Option<Point>,
    components: u32,
    bounded_component: Option<u32>,
    agreement: Agreement,
    agreement_fraction: f64,
}

fn lens(family: &BasicFamily, n: u32, a: f64, b: f64, grid: usize) -> Result<RunOutput> {
    let region = LensRegion::new(a, b, family, n)?;
    let raster = raster_components(&region, grid)?;
    let agreement = raster.agreement(&region);
    let intersecting = region.intersecting();
    let report = LensReport {
        family: family.name().to_string(),
        n,
        a,
        b,
        grid,
        intersecting,
        saddle: intersecting.then(|| region.saddle()),
        components: raster.components,
        bounded_component: raster.bounded,
        agreement,
        agreement_fraction: agreement.fraction(),
    };
    let mut summary = format!("lens of {} (n = {n}) anchored at {a} and {b}\n", report.family);
    match report.saddle {
        Some(p) => {
            let _ = writeln!(summary, "saddle point ({:.6}, {:.6})", p.x, p.y);
        }
        None => summary.push_str("neighbourhoods do not intersect\n"),
    }
    let _ = writeln!(summary, "raster {grid}x{grid}: {} complement components", raster.components);
    let _ = writeln!(
        summary,
        "agreement with the analytic lens off the boundary band: {:.4}% of {} cells",
        100.0 * report.agreement_fraction,
        agreement.compared
    );

    let mut csv = String::with_capacity(raster.labels.len() * 2);
    for row in raster.labels.chunks(grid) {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        csv.push_str(&line.join(","));
        csv.push('\n');
    }
    let mut out = RunOutput::new(&report, summary)?;
    out.figure = Some(lens_svg(&region));
    out.samples = Some(csv);
    Ok(out)
}

fn refine(
    a: &BasicFamily,
    b: &BasicFamily,
    n_max: u32,
    k_max: u32,
) -> Result<RunOutput> {
    let report = mutual_refinement(a, b, n_max, k_max);
    let summary = format!(
        "{} vs {} (n <= {n_max}, k <= {k_max}): {:?}\n",
        report.family_a, report.family_b, report.verdict
    );
    RunOutput::new(&report, summary)
}

#[derive(Serialize)]
struct ProbeSummary {
    n: u32,
    m: u32,
    k: u32,
    max_relative_deviation: f64,
}

#[derive(Serialize)]
struct RefuteReport {
    #[serde(flatten)]
    verdict: VerdictReport,
    config: RefuteConfig,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    probes: Option<Vec<ProbeSummary>>,
}

fn refute_cmd(
    a: &BasicFamily,
    b: &BasicFamily,
    config: &RefuteConfig,
    probe_k: u32,
    seed: u64,
) -> Result<RunOutput> {
    let verdict = refute(a, b, config)?;
    let mut probes = None;
    let mut csv = None;
    if let (Verdict::NotHomeomorphic { witnesses, orientation, .. }, true) = (&verdict, probe_k > 0) {
        // orientation names refer to the inputs or to the parabola proxy for discs
        let parabolas = BasicFamily::parabolas();
        let pick = |name: &str| {
            [a, b, &parabolas].into_iter().find(|f| f.name() == name).cloned().context("witness family not found")
        };
        let (source, target) = (pick(&orientation.source)?, pick(&orientation.target)?);
        let mut rows = String::from("n,m,k,x,numeric,predicted,relative_deviation\n");
        let mut list = Vec::new();
        for w in witnesses {
            for k in 1..=probe_k {
                let table = numeric_ratio_probe(&source, &target, w.n, w.m, k, &ProbeGrid::default())?;
                for r in &table.rows {
                    let _ = writeln!(rows, "{},{},{k},{:e},{:e},{:e},{:e}", w.n, w.m, r.x, r.numeric, r.predicted, r.relative_deviation);
                }
                list.push(ProbeSummary { n: w.n, m: w.m, k, max_relative_deviation: table.max_relative_deviation });
            }
        }
        probes = Some(list);
        csv = Some(rows);
    }
    let report = RefuteReport { verdict: verdict.report(), config: *config, seed, probes };
    let mut summary = verdict.certificate_lines().join("\n");
    summary.push('\n');
    if let Some(p) = &report.probes {
        let worst = p.iter().map(|p| p.max_relative_deviation).fold(0.0, f64::max);
        let _ = writeln!(summary, "numeric probes: {} tables, max relative deviation {worst:e}", p.len());
    }
    let mut out = RunOutput::new(&report, summary)?;
    out.samples = csv;
    Ok(out)
}

#[derive(Serialize)]
struct EstimateOutput {
    #[serde(flatten)]
    report: EstimateReport,
    window_minima: Vec<f64>,
    grid: GeometricGrid,
}

fn estimate_output(est: &LiminfEstimate, skipped: usize, seed: u64) -> EstimateOutput {
    EstimateOutput { report: est.report(skipped, Some(seed)), window_minima: est.window_minima.clone(), grid: est.grid }
}

fn estimate_summary(title: &str, est: &LiminfEstimate) -> String {
    format!(
        "{title}\nestimate {:e} (converged: {}), window minima {:?}\n",
        est.value, est.converged, est.window_minima
    )
}

fn liminf_single(f: &str, grid: &GeometricGrid, seed: u64) -> Result<RunOutput> {
    let est = liminf_estimate(&catalog::positive_function(f)?, grid)?;
    let mut out = RunOutput::new(&estimate_output(&est, 0, seed), estimate_summary(&format!("liminf of {f}"), &est))?;
    out.samples = Some(est.to_csv());
    Ok(out)
}

#[derive(Serialize)]
struct QuotientOutput {
    #[serde(flatten)]
    estimate: EstimateOutput,
    holds: bool,
}

fn liminf_quotient(h: &str, phi: &str, psi: &str, grid: &GeometricGrid, seed: u64) -> Result<RunOutput> {
    let (hf, pf, qf) = (catalog::positive_function(h)?, catalog::positive_function(phi)?, catalog::positive_function(psi)?);
    let check = quotient_bound_check(&hf, &pf, &qf, grid)?;
    let report = QuotientOutput { estimate: estimate_output(&check.estimate, 0, seed), holds: check.holds };
    let mut summary = estimate_summary(&format!("liminf of h(phi)/h(psi) with h = {h}, phi = {phi}, psi = {psi}"), &check.estimate);
    let _ = writeln!(summary, "bound liminf <= 1 (+ tolerance): {}", if check.holds { "holds" } else { "violated" });
    let mut out = RunOutput::new(&report, summary)?;
    out.samples = Some(check.estimate.to_csv());
    Ok(out)
}

#[derive(Serialize)]
struct RandomOutput {
    seed: u64,
    instances: usize,
    all_hold: bool,
    estimates: Vec<f64>,
    grid: GeometricGrid,
}

fn liminf_random(count: usize, grid: &GeometricGrid, seed: u64) -> Result<RunOutput> {
    let mut estimates = Vec::with_capacity(count);
    let mut all_hold = true;
    let mut csv = String::from("seed,estimate,holds\n");
    for inst in admissible_instances(seed, count) {
        let check = quotient_bound_check(&inst.h, &inst.phi, &inst.psi, grid)?;
        all_hold &= check.holds;
        let _ = writeln!(csv, "{},{:e},{}", inst.seed, check.estimate.value, check.holds);
        estimates.push(check.estimate.value);
    }
    let worst = estimates.iter().copied().fold(0.0, f64::max);
    let summary = format!(
        "{count} random admissible instances from seed {seed}: bound holds in all: {all_hold}; largest estimate {worst:e}\n"
    );
    let report = RandomOutput { seed, instances: count, all_hold, estimates, grid: *grid };
    let mut out = RunOutput::new(&report, summary)?;
    out.samples = Some(csv);
    Ok(out)
}

#[derive(Serialize)]
struct Eq1Output {
    #[serde(flatten)]
    estimate: EstimateOutput,
    holds: bool,
    degenerate: usize,
    unresolved: usize,
    low_confidence: bool,
}

fn eq1(g: &str, u: f64, phi: &str, psi: &str, grid: &GeometricGrid, seed: u64) -> Result<RunOutput> {
    let check = eq1_check(
        &catalog::monotone_function(g)?,
        u,
        &catalog::positive_function(phi)?,
        &catalog::positive_function(psi)?,
        grid,
    )?;
    let report = Eq1Output {
        estimate: estimate_output(&check.estimate, check.skipped(), seed),
        holds: check.holds,
        degenerate: check.degenerate,
        unresolved: check.unresolved,
        low_confidence: check.low_confidence,
    };
    let mut summary = estimate_summary(&format!("liminf of I(u, phi, h) / I(u, psi, h) for g = {g} at u = {u}"), &check.estimate);
    let _ = writeln!(
        summary,
        "skipped {} samples ({} zero denominators, {} below resolution){}",
        check.skipped(),
        check.degenerate,
        check.unresolved,
        if check.low_confidence { "; low confidence" } else { "" }
    );
    let mut out = RunOutput::new(&report, summary)?;
    out.samples = Some(check.estimate.to_csv());
    Ok(out)
}
