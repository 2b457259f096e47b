//! `hconvex`: build convex bodies of the hyperbolic plane and space, measure
//! widths, run verification suites and emit plots.

mod plot;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hconvex::body::{
    ball_intersection, make_crosspolytope, make_polytope, make_regular_polygon, make_reuleaux,
    make_rhombus, Ball, ConvexBody,
};
use hconvex::io::{body_from_json, body_to_json, point_json, witness_json};
use hconvex::structure::{rhombus_threshold_scan, ScanOptions};
use hconvex::suite::{run_suite, Entry, Suite, VerifyConfig};
use hconvex::width::{max_width, supporting_line_at, thickness, width_given_h, WidthOptions};
use hconvex::{GeomError, HPoint, Hyperplane, Vector};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "hconvex",
    version,
    about = "Widths and constant-width analysis of hyperbolic convex bodies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a body and write it as JSON.
    Make(MakeArgs),
    /// Measure a width quantity of a body file.
    Measure(MeasureArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Write boundary samples (CSV or SVG) and optionally a width profile.
    Plot(PlotArgs),
    /// Locate the reducedness transition of rhombi with fixed short half-diagonal.
    ScanRhombus(ScanArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Polytope,
    Rhombus,
    Crosspolytope,
    Regular,
    Reuleaux,
    Ball,
    BallIntersection,
}

#[derive(clap::Args, Debug)]
struct MakeArgs {
    kind: Kind,
    /// Short half-diagonal (rhombus).
    #[arg(long)]
    a: Option<f64>,
    /// Long half-diagonal (rhombus).
    #[arg(long)]
    b: Option<f64>,
    /// Reorder a > b instead of failing (rhombus).
    #[arg(long)]
    swap: bool,
    /// Half-lengths, comma separated (crosspolytope).
    #[arg(long, value_delimiter = ',')]
    half_lengths: Vec<f64>,
    /// Vertex count (regular).
    #[arg(long)]
    n: Option<usize>,
    /// Circumradius (regular) or radius (ball).
    #[arg(long)]
    r: Option<f64>,
    /// Disk radius (reuleaux, ball-intersection).
    #[arg(long)]
    delta: Option<f64>,
    /// Spatial coordinates of a point, comma separated; repeatable
    /// (polytope vertices, ball-intersection centers, ball center).
    #[arg(long = "point", allow_hyphen_values = true)]
    points: Vec<String>,
    /// Output file (stdout when absent).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum What {
    Width,
    Thickness,
    Maxwidth,
    Diameter,
}

#[derive(clap::Args, Debug)]
struct Tolerances {
    /// Support tolerance (sinh units).
    #[arg(long, default_value_t = 1e-9)]
    eps_sup: f64,
    /// Farthest-set tolerance.
    #[arg(long, default_value_t = 1e-8)]
    eps_far: f64,
    /// Seed for randomized searches (overridden by HCONVEX_SEED).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(clap::Args, Debug)]
struct MeasureArgs {
    body: PathBuf,
    #[arg(long, value_enum)]
    what: What,
    /// Normal of the supporting hyperplane, comma separated (width).
    #[arg(long, value_delimiter = ',')]
    normal: Vec<f64>,
    /// Contact parameter in [0,1) of the supporting line (width, planar).
    #[arg(long)]
    param: Option<f64>,
    #[command(flatten)]
    tol: Tolerances,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Body files replacing the built-in corpus; repeatable.
    #[arg(long = "body")]
    bodies: Vec<PathBuf>,
    /// Report file (stdout when absent).
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    workers: Option<usize>,
    /// Verdict tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Cap depth of the reducedness probe.
    #[arg(long, default_value_t = 1e-3)]
    eps_cap: f64,
    /// Random polygons in the built-in corpus.
    #[arg(long, default_value_t = 100)]
    random: usize,
    #[command(flatten)]
    tols: Tolerances,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Svg,
}

#[derive(clap::Args, Debug)]
struct PlotArgs {
    body: PathBuf,
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Also write the width profile (`param,width`) here.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Boundary samples.
    #[arg(long, default_value_t = 1024)]
    samples: usize,
}

#[derive(clap::Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    a: f64,
    /// Lower end of the b range (defaults to a).
    #[arg(long)]
    b_lo: Option<f64>,
    #[arg(long, default_value_t = 3.0)]
    b_hi: f64,
    #[arg(long, default_value_t = 26)]
    steps: usize,
    #[arg(long, default_value_t = 1e-3)]
    resolution: f64,
    #[arg(long, default_value_t = 1e-3)]
    eps_cap: f64,
    #[arg(long, default_value_t = 1e-7)]
    cap_tol: f64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Input(String),
    Assertion,
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Make(a) => cmd_make(a),
        Command::Measure(a) => cmd_measure(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Plot(a) => cmd_plot(a),
        Command::ScanRhombus(a) => cmd_scan(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn effective_seed(flag: u64) -> Result<u64, Failure> {
    match std::env::var("HCONVEX_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("HCONVEX_SEED is not an integer: {s:?}"))),
        Err(_) => Ok(flag),
    }
}

fn width_options(t: &Tolerances) -> Result<WidthOptions, Failure> {
    Ok(WidthOptions {
        eps_sup: t.eps_sup,
        eps_far: t.eps_far,
        seed: effective_seed(t.seed)?,
        ..WidthOptions::default()
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n"))?,
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn read_body(path: &Path) -> Result<ConvexBody, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    body_from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_points(raw: &[String]) -> Result<Vec<HPoint>, Failure> {
    raw.iter()
        .map(|chunk| {
            let xs = chunk
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Failure::Input(format!("bad coordinate {s:?}")))
                })
                .collect::<Result<Vec<f64>, Failure>>()?;
            Ok(HPoint::lift(&xs))
        })
        .collect()
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Input(format!("missing --{flag}")))
}

fn cmd_make(a: MakeArgs) -> Result<(), Failure> {
    let body = match a.kind {
        Kind::Polytope => make_polytope(parse_points(&a.points)?)?,
        Kind::Rhombus => make_rhombus(need(a.a, "a")?, need(a.b, "b")?, a.swap)?,
        Kind::Crosspolytope => make_crosspolytope(&a.half_lengths)?,
        Kind::Regular => make_regular_polygon(need(a.n, "n")?, need(a.r, "r")?)?,
        Kind::Reuleaux => make_reuleaux(need(a.delta, "delta")?)?,
        Kind::Ball => {
            let center = parse_points(&a.points)?
                .into_iter()
                .next()
                .unwrap_or_else(|| HPoint::origin(2));
            Ball::new(center, need(a.r, "r")?)?.to_body()?
        }
        Kind::BallIntersection => {
            ball_intersection(&parse_points(&a.points)?, need(a.delta, "delta")?)?
        }
    };
    emit(&body_to_json(&body), a.out.as_deref())
}

fn cmd_measure(a: MeasureArgs) -> Result<(), Failure> {
    let body = read_body(&a.body)?;
    let opts = width_options(&a.tol)?;
    let report = match a.what {
        What::Diameter => {
            let d = body.diameter();
            json!({ "what": "diameter", "value": d.value, "pair": [point_json(&d.pair.0), point_json(&d.pair.1)] })
        }
        What::Thickness | What::Maxwidth => {
            let r = if a.what == What::Thickness {
                thickness(&body, &opts)?
            } else {
                max_width(&body, &opts)?
            };
            json!({
                "what": if a.what == What::Thickness { "thickness" } else { "maxwidth" },
                "value": r.value,
                "exact": r.exact,
                "starts": r.starts,
                "witness": witness_json(&r.witness),
            })
        }
        What::Width => {
            let h = match (a.normal.is_empty(), a.param) {
                (false, None) => Hyperplane::new(Vector::from_vec(a.normal.clone()))?,
                (true, Some(s)) => supporting_line_at(&body, s)?,
                _ => {
                    return Err(Failure::Input(
                        "width needs exactly one of --normal or --param".into(),
                    ))
                }
            };
            let w = width_given_h(&body, &h, &opts)?;
            json!({ "what": "width", "value": w.value, "witness": witness_json(&w) })
        }
    };
    emit(&serde_json::to_string_pretty(&report).expect("json"), None)
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let suite = Suite::parse(&a.suite)
        .ok_or_else(|| Failure::Input(format!("unknown suite {:?}", a.suite)))?;
    let seed = effective_seed(a.tols.seed)?;
    let mut cfg = VerifyConfig::new(suite, seed);
    cfg.tol = a.tol;
    cfg.width = WidthOptions {
        seed,
        ..width_options(&a.tols)?
    };
    cfg.scan = ScanOptions {
        eps_cap: a.eps_cap,
        ..ScanOptions::default()
    };
    cfg.workers = a.workers;
    cfg.random_polygons = a.random;
    if !a.bodies.is_empty() {
        let mut entries = Vec::new();
        for p in &a.bodies {
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string());
            entries.push(Entry {
                name,
                body: read_body(p)?,
            });
        }
        cfg.corpus = Some(entries);
    }
    let report = run_suite(&cfg)?;
    emit(&report.to_json(), a.out.as_deref())?;
    let s = report.summary;
    eprintln!(
        "{}: {} pass, {} fail, {} skipped, {} info",
        report.suite, s.pass, s.fail, s.skipped, s.info
    );
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Assertion)
    }
}

fn cmd_plot(a: PlotArgs) -> Result<(), Failure> {
    let body = read_body(&a.body)?;
    if body.dim() != 2 {
        return Err(Failure::Input(format!(
            "cannot plot a body of dimension {}",
            body.dim()
        )));
    }
    let pts = plot::boundary_poincare(&body, a.samples);
    let text = match a.format {
        Format::Csv => plot::xy_csv(&pts),
        Format::Svg => plot::svg(&pts),
    };
    fs::write(&a.out, text)?;
    if let Some(p) = &a.profile {
        let prof =
            hconvex::width::width_profile(&body, a.samples.max(8), &WidthOptions::default())?;
        fs::write(p, plot::profile_csv(&prof))?;
    }
    Ok(())
}

fn cmd_scan(a: ScanArgs) -> Result<(), Failure> {
    let scan = ScanOptions {
        eps_cap: a.eps_cap,
        tol: a.cap_tol,
        resolution: a.resolution,
    };
    let s = rhombus_threshold_scan(
        a.a,
        a.b_lo.unwrap_or(a.a),
        a.b_hi,
        a.steps,
        &scan,
        &WidthOptions::default(),
    )?;
    let report = json!({
        "a": s.a,
        "grid": s.grid.iter().map(|(b, c)| json!({ "b": b, "reduced_consistent": c })).collect::<Vec<_>>(),
        "monotone": s.monotone,
        "b_star": s.b_star,
        "bracket": s.bracket,
        "readings": s.readings.iter().map(|r| json!({ "label": r.label, "value": r.value, "matches": r.matches })).collect::<Vec<_>>(),
        "lambert_onset": s.lambert_onset,
        "thickness_at_b_star": s.thickness_at_b_star,
        "lambert_at_b_star": s.lambert_at_b_star,
    });
    emit(
        &serde_json::to_string_pretty(&report).expect("json"),
        a.out.as_deref(),
    )?;
    if s.b_star.is_none() {
        eprintln!("no transition in range");
        return Err(Failure::Assertion);
    }
    Ok(())
}
