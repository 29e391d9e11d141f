//! `sobolev` command line: body summaries, distance moments, λ_{p,q}
//! estimates, inequality verification, sweeps and the nonconvex
//! demonstrations, written as JSON or CSV.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sobolev_core::harness::{
    appendix_infimum, appendix_supremum, lambda_for, random_convex_polygons, sweep_slab, sweep_thin, verify,
    ThinMesh,
};
use sobolev_core::json::{self, format_number};
use sobolev_core::moments::{moment, moment_envelope, MomentEnvelope};
use sobolev_core::spectral::{lambda_2d_refined, lambda_2d_with};
use sobolev_core::{
    build_body, BodyDescriptor, ConvexBody, ExponentPair, InequalityReport, MomentResult, SobolevEstimate,
    SolverConfig, SweepRow, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sobolev", version, about = "Convex-body inequalities for Poincaré–Sobolev constants")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for sweeps and batch verification.
    #[arg(long, env = "SOBOLEV_JOBS", global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Volume, perimeter, inradius and incenter of a body.
    Body(BodyArgs),
    /// Distance moments D_β = ∫ d^β, optionally with their metric envelope.
    Moment(MomentArgs),
    /// Estimate λ_{p,q} of a body.
    Lambda(LambdaArgs),
    /// Check every applicable inequality on a body (exit 2 if any fails).
    Verify(VerifyArgs),
    /// Asymptotic sweeps over slab or thin-cone families.
    Sweep(SweepArgs),
    /// Nonconvex sequences driving the shape functional to 0 or +∞.
    Appendix(AppendixArgs),
}

#[derive(Debug, Args)]
struct BodyArgs {
    /// Body descriptor JSON file.
    #[arg(long)]
    body: PathBuf,
}

#[derive(Debug, Args)]
struct MomentArgs {
    #[arg(long)]
    body: PathBuf,
    /// Comma-separated exponents β >= 0.
    #[arg(long, value_delimiter = ',', required = true)]
    beta: Vec<f64>,
    /// Also report the metric bounds on D_β.
    #[arg(long)]
    envelope: bool,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Solver configuration JSON; individual flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Grid step of the planar solver.
    #[arg(long)]
    mesh_h: Option<f64>,
    /// Cells of the 1D and radial solvers.
    #[arg(long)]
    gridpoints: Option<usize>,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
}

#[derive(Debug, Args)]
struct LambdaArgs {
    #[arg(long)]
    body: PathBuf,
    #[command(flatten)]
    pair: PairArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Also solve at twice the step and report the relative change.
    #[arg(long)]
    refine: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Body descriptor JSON file.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    body: Option<PathBuf>,
    /// Verify this many seeded random convex polygons instead.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 20_251_016)]
    seed: u64,
    /// Grid step for random polygons as a fraction of the inradius: h = r / k.
    #[arg(long, default_value_t = 32.0)]
    per_inradius: f64,
    #[command(flatten)]
    pair: PairArgs,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Slab,
    Thin,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Moment exponent for slab sweeps (or give --p and --q for β = pq/(p−q)).
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    /// Dimension of the slab.
    #[arg(long = "N", default_value_t = 2)]
    n: usize,
    /// Comma-separated slab lengths, increasing.
    #[arg(long = "L", value_delimiter = ',')]
    l: Vec<f64>,
    /// Comma-separated thin-cone heights ε, decreasing.
    #[arg(long, value_delimiter = ',')]
    eps: Vec<f64>,
    /// Thin-cone grid step h = ε / k (ignored when --mesh-h is given).
    #[arg(long, default_value_t = 64.0)]
    per_eps: f64,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Demo {
    Infimum,
    Supremum,
}

#[derive(Debug, Args)]
struct AppendixArgs {
    #[arg(long, value_enum)]
    demo: Demo,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    /// Oscillation frequencies of the perturbed disks.
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// Slit counts of the slit squares.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[command(flatten)]
    solver: SolverArgs,
}

fn read_body(path: &Path) -> Result<ConvexBody> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let desc: BodyDescriptor =
        serde_json::from_str(&text).with_context(|| format!("malformed body descriptor {}", path.display()))?;
    Ok(build_body(&desc)?)
}

fn solver_config(args: &SolverArgs) -> Result<SolverConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("malformed solver config {}", path.display()))?
        }
        None => SolverConfig::default(),
    };
    if let Some(h) = args.mesh_h {
        cfg.mesh_h = h;
    }
    if let Some(g) = args.gridpoints {
        cfg.gridpoints = g;
    }
    if !(cfg.mesh_h.is_finite() && cfg.mesh_h > 0.0) {
        bail!("mesh_h must be positive, got {}", cfg.mesh_h);
    }
    Ok(cfg)
}

fn provenance(cfg: &SolverConfig, extra: &str) -> String {
    format!(
        "# mesh_h={} gridpoints={} rel_tol={} window={} max_iterations={} delta_scale={} armijo={} preconditioner_floor={}{extra}",
        format_number(cfg.mesh_h),
        cfg.gridpoints,
        format_number(cfg.rel_tol),
        cfg.window,
        cfg.max_iterations,
        format_number(cfg.delta_scale),
        format_number(cfg.armijo),
        format_number(cfg.preconditioner_floor),
    )
}

/// Records that know their CSV layout.
trait Tabular {
    fn header(rows: &[Self]) -> Vec<String>
    where
        Self: Sized;
    fn cells(&self, header: &[String]) -> Vec<String>;
}

fn num(x: f64) -> String {
    format_number(x)
}

impl Tabular for InequalityReport {
    fn header(_: &[Self]) -> Vec<String> {
        ["name", "lhs", "rhs", "relation", "margin", "verdict", "sharpness_ratio"].map(String::from).to_vec()
    }
    fn cells(&self, _: &[String]) -> Vec<String> {
        vec![
            self.name.clone(),
            num(self.lhs),
            num(self.rhs),
            self.relation.symbol().to_string(),
            num(self.margin),
            self.verdict.name().to_string(),
            num(self.sharpness_ratio),
        ]
    }
}

#[derive(Debug, Serialize)]
struct TaggedReport {
    body: String,
    #[serde(flatten)]
    report: InequalityReport,
}

impl Tabular for TaggedReport {
    fn header(_: &[Self]) -> Vec<String> {
        let mut h = vec!["body".to_string()];
        h.extend(InequalityReport::header(&[]));
        h
    }
    fn cells(&self, header: &[String]) -> Vec<String> {
        let mut c = vec![self.body.clone()];
        c.extend(self.report.cells(header));
        c
    }
}

impl Tabular for SweepRow {
    fn header(rows: &[Self]) -> Vec<String> {
        let mut h = vec!["parameter".to_string()];
        h.extend(rows[0].values.keys().cloned());
        h.push("limit_target".into());
        h.push("relative_gap".into());
        h
    }
    fn cells(&self, header: &[String]) -> Vec<String> {
        let mut c = vec![num(self.parameter)];
        for key in &header[1..header.len() - 2] {
            c.push(self.values.get(key).map_or_else(String::new, |v| num(*v)));
        }
        c.push(num(self.limit_target));
        c.push(num(self.relative_gap));
        c
    }
}

#[derive(Debug, Serialize)]
struct BodyRecord {
    kind: &'static str,
    dim: usize,
    volume: f64,
    perimeter: f64,
    inradius: f64,
    incenter: Vec<f64>,
    convex: bool,
    exact: bool,
}

impl Tabular for BodyRecord {
    fn header(_: &[Self]) -> Vec<String> {
        ["kind", "dim", "volume", "perimeter", "inradius", "incenter", "convex", "exact"].map(String::from).to_vec()
    }
    fn cells(&self, _: &[String]) -> Vec<String> {
        vec![
            self.kind.to_string(),
            self.dim.to_string(),
            num(self.volume),
            num(self.perimeter),
            num(self.inradius),
            self.incenter.iter().map(|x| num(*x)).collect::<Vec<_>>().join(" "),
            self.convex.to_string(),
            self.exact.to_string(),
        ]
    }
}

#[derive(Debug, Serialize)]
struct MomentRecord {
    #[serde(flatten)]
    moment: MomentResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    envelope: Option<MomentEnvelope>,
}

impl Tabular for MomentRecord {
    fn header(rows: &[Self]) -> Vec<String> {
        let mut h: Vec<String> = ["beta", "value", "method", "abs_error_estimate"].map(String::from).to_vec();
        if rows.iter().any(|r| r.envelope.is_some()) {
            h.extend(
                ["larson_lower", "prizag_upper", "ball_lower", "pv_lower", "pv_upper", "pv_asserted"].map(String::from),
            );
        }
        h
    }
    fn cells(&self, header: &[String]) -> Vec<String> {
        let method = serde_json::to_value(self.moment.method).ok().and_then(|v| v.as_str().map(String::from));
        let mut c = vec![
            num(self.moment.beta),
            num(self.moment.value),
            method.unwrap_or_default(),
            num(self.moment.abs_error_estimate),
        ];
        if header.len() > 4 {
            match &self.envelope {
                Some(e) => c.extend([
                    num(e.larson_lower),
                    num(e.prizag_upper),
                    num(e.ball_lower),
                    num(e.pv_lower),
                    num(e.pv_upper),
                    e.pv_asserted.to_string(),
                ]),
                None => c.extend(std::iter::repeat_n(String::new(), 6)),
            }
        }
        c
    }
}

impl Tabular for SobolevEstimate {
    fn header(_: &[Self]) -> Vec<String> {
        ["p", "q", "value", "mesh_h", "iterations", "residual", "method", "bound_kind", "rel_error_estimate"]
            .map(String::from)
            .to_vec()
    }
    fn cells(&self, _: &[String]) -> Vec<String> {
        let name = |v: serde_json::Result<serde_json::Value>| {
            v.ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
        };
        vec![
            num(self.pair.p()),
            num(self.pair.q()),
            num(self.value),
            num(self.mesh_h),
            self.iterations.to_string(),
            num(self.residual),
            name(serde_json::to_value(self.method)),
            name(serde_json::to_value(self.bound_kind)),
            self.rel_error_estimate.map(num).unwrap_or_default(),
        ]
    }
}

/// Serializes a nonempty collection as a JSON array or a CSV table.
fn emit<T: Serialize + Tabular>(rows: &[T], format: Format) -> Result<Vec<u8>> {
    if rows.is_empty() {
        bail!("nothing to write: empty collection");
    }
    match format {
        Format::Json => Ok(json::to_string(rows)?.into_bytes()),
        Format::Csv => {
            let header = T::header(rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)?;
            for r in rows {
                w.write_record(r.cells(&header))?;
            }
            w.into_inner().map_err(|e| anyhow!("csv: {e}"))
        }
    }
}

struct Emitted {
    bytes: Vec<u8>,
    header: String,
    violated: bool,
}

fn any_violated<'a>(reports: impl IntoIterator<Item = &'a InequalityReport>) -> bool {
    reports.into_iter().any(|r| r.verdict == Verdict::Violated)
}

fn pair_of(args: &PairArgs) -> Result<ExponentPair> {
    Ok(ExponentPair::new(args.p, args.q)?)
}

fn dispatch(cli: &Cli) -> Result<Emitted> {
    let fmt = cli.format;
    let plain = |bytes: Vec<u8>, header: String| Emitted { bytes, header, violated: false };
    match &cli.command {
        Command::Body(a) => {
            let body = read_body(&a.body)?;
            let m = body.metrics();
            let rec = BodyRecord {
                kind: body.kind().name(),
                dim: body.dim(),
                volume: m.volume,
                perimeter: m.perimeter,
                inradius: m.inradius,
                incenter: m.incenter.clone(),
                convex: m.convex,
                exact: m.exact,
            };
            Ok(plain(emit(&[rec], fmt)?, "# body summary".into()))
        }
        Command::Moment(a) => {
            let body = read_body(&a.body)?;
            let rows = a
                .beta
                .iter()
                .map(|&b| {
                    let envelope = if a.envelope { Some(moment_envelope(&body, b)?) } else { None };
                    Ok(MomentRecord { moment: moment(&body, b)?, envelope })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(plain(emit(&rows, fmt)?, "# distance moments".into()))
        }
        Command::Lambda(a) => {
            let body = read_body(&a.body)?;
            let pair = pair_of(&a.pair)?;
            let cfg = solver_config(&a.solver)?;
            let est = if matches!(body.kind(), sobolev_core::BodyKind::Ball) {
                lambda_for(&body, pair, &cfg)?
            } else if a.refine {
                lambda_2d_refined(&body, pair, cfg.mesh_h, &cfg)?
            } else {
                lambda_2d_with(&body, pair, cfg.mesh_h, &cfg)?
            };
            Ok(plain(emit(&[est], fmt)?, provenance(&cfg, "")))
        }
        Command::Verify(a) => {
            let pair = pair_of(&a.pair)?;
            let cfg = solver_config(&a.solver)?;
            if let Some(count) = a.random {
                if count == 0 {
                    bail!("--random needs a positive count");
                }
                if !(a.per_inradius >= 4.0) {
                    bail!("--per-inradius must be at least 4, got {}", a.per_inradius);
                }
                use rayon::prelude::*;
                let polys = random_convex_polygons(a.seed, count);
                let batches = polys
                    .par_iter()
                    .map(|b| {
                        let local = SolverConfig { mesh_h: b.metrics().inradius / a.per_inradius, ..cfg.clone() };
                        verify(b, pair, &local)
                    })
                    .collect::<sobolev_core::Result<Vec<_>>>()?;
                let rows: Vec<TaggedReport> = batches
                    .into_iter()
                    .enumerate()
                    .flat_map(|(i, reps)| {
                        reps.into_iter().map(move |report| TaggedReport { body: format!("random-{i}"), report })
                    })
                    .collect();
                let violated = any_violated(rows.iter().map(|r| &r.report));
                let extra = format!(" seed={} count={count} mesh_h=inradius/{}", a.seed, format_number(a.per_inradius));
                Ok(Emitted { bytes: emit(&rows, fmt)?, header: provenance(&cfg, &extra), violated })
            } else {
                let path = a.body.as_ref().ok_or_else(|| anyhow!("--body or --random is required"))?;
                let body = read_body(path)?;
                let reports = verify(&body, pair, &cfg)?;
                let violated = any_violated(&reports);
                Ok(Emitted { bytes: emit(&reports, fmt)?, header: provenance(&cfg, ""), violated })
            }
        }
        Command::Sweep(a) => {
            let cfg = solver_config(&a.solver)?;
            let rows = match a.family {
                Family::Slab => {
                    if a.l.is_empty() {
                        bail!("slab sweep needs --L");
                    }
                    let beta = match (a.beta, a.p, a.q) {
                        (Some(b), None, None) => b,
                        (None, Some(p), Some(q)) => {
                            let pair = ExponentPair::new(p, q)?;
                            if !pair.is_subhomogeneous() {
                                bail!("β = pq/(p − q) needs q < p");
                            }
                            pair.beta()
                        }
                        _ => bail!("slab sweep needs either --beta or both --p and --q"),
                    };
                    if !(beta.is_finite() && beta >= 0.0) {
                        bail!("β must be finite and nonnegative, got {beta}");
                    }
                    sweep_slab(beta, a.n, &a.l)?
                }
                Family::Thin => {
                    if a.eps.is_empty() {
                        bail!("thin sweep needs --eps");
                    }
                    if a.n != 2 {
                        bail!("thin sweep is planar only (--N 2)");
                    }
                    let (p, q) = match (a.p, a.q) {
                        (Some(p), Some(q)) => (p, q),
                        _ => bail!("thin sweep needs --p and --q"),
                    };
                    let mesh = match a.solver.mesh_h {
                        Some(h) => ThinMesh::Fixed(h),
                        None => ThinMesh::PerEps(a.per_eps),
                    };
                    sweep_thin(ExponentPair::new(p, q)?, &a.eps, mesh, &cfg)?
                }
            };
            Ok(plain(emit(&rows, fmt)?, provenance(&cfg, "")))
        }
        Command::Appendix(a) => {
            let cfg = solver_config(&a.solver)?;
            let rows = match a.demo {
                Demo::Infimum => {
                    if a.k.is_empty() {
                        bail!("infimum demo needs --k");
                    }
                    appendix_infimum(ExponentPair::new(a.p, a.q)?, &a.k, &cfg)?
                }
                Demo::Supremum => {
                    if a.n.is_empty() {
                        bail!("supremum demo needs --n");
                    }
                    if a.p != 2.0 {
                        bail!("the slit-square demonstration is for p = 2 only");
                    }
                    appendix_supremum(a.q, &a.n, cfg.mesh_h, &cfg)?
                }
            };
            Ok(plain(emit(&rows, fmt)?, provenance(&cfg, "")))
        }
    }
}

fn one_line(text: &str) -> String {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).collect::<Vec<_>>().join(" ")
}

/// Runs one invocation, writing the report to `--output` or `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let first = e.to_string().lines().next().unwrap_or("usage error").to_string();
            let _ = writeln!(err, "{first}");
            return EXIT_USAGE;
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            let _ = writeln!(err, "error: --jobs must be positive");
            return EXIT_USAGE;
        }
        // a pool can only be installed once per process; later calls keep it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let emitted = match dispatch(&cli) {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(err, "error: {}", one_line(&format!("{e:#}")));
            return EXIT_USAGE;
        }
    };
    let _ = writeln!(err, "{}", emitted.header);
    let written = match &cli.output {
        Some(path) => fs::write(path, &emitted.bytes).with_context(|| format!("cannot write {}", path.display())),
        None => out.write_all(&emitted.bytes).context("cannot write to standard output"),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {}", one_line(&format!("{e:#}")));
        return EXIT_USAGE;
    }
    if emitted.violated {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    }
}

pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn sweep_csv_has_one_row_per_parameter() {
        let rows: Vec<SweepRow> = [1.0, 2.0, 3.0]
            .iter()
            .map(|&x| SweepRow {
                parameter: x,
                values: BTreeMap::from([("a".to_string(), x * x)]),
                limit_target: 0.0,
                relative_gap: 1.0 / x,
            })
            .collect();
        let text = String::from_utf8(emit(&rows, Format::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "parameter,a,limit_target,relative_gap");
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[3], "3,9,0,0.33333333333333331");
    }

    #[test]
    fn empty_collection_is_an_error() {
        let rows: Vec<InequalityReport> = Vec::new();
        assert!(emit(&rows, Format::Json).is_err());
    }

    #[test]
    fn violated_reports_set_the_flag() {
        use sobolev_core::Relation;
        let ok = InequalityReport::evaluate("a", 2.0, Relation::AtLeast, 1.0, 1e-9);
        let bad = InequalityReport::evaluate("b", 0.5, Relation::AtLeast, 1.0, 1e-9);
        assert!(!any_violated(std::slice::from_ref(&ok)));
        assert!(any_violated(&[ok, bad]));
    }

    #[test]
    fn single_report_has_eight_keys() {
        let r = InequalityReport::evaluate("x", 1.0, sobolev_core::Relation::AtLeast, 0.5, 1e-9);
        let text = String::from_utf8(emit(&[r], Format::Json).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0].as_object().unwrap().len(), 8);
    }
}
