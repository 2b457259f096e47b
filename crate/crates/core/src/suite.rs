//! Verification suites over a corpus of bodies, producing a deterministic
//! JSON report.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::body::{
    equilateral_vertices, make_crosspolytope, make_polytope, make_regular_polygon, make_reuleaux,
    make_rhombus, Ball, ConvexBody,
};
use crate::error::{GeomError, Result};
use crate::io::{point_json, witness_json};
use crate::lorentz::{
    klein_inv, lambert_height, project_onto, signed_dist, HPoint, Hyperplane, Vector,
};
use crate::structure::{
    claim_unique_contact, cluster_count, extreme_point_dichotomy, is_complete,
    is_constant_diameter, lemma_spindle_check, reduced_probe, rhombus_threshold_scan,
    theorem2_pipeline, DichotomyCase, Implication, ScanOptions, CLUSTER_RADIUS,
};
use crate::width::{max_width, supporting_lines, thickness, width_given_h, WidthOptions};

/// Named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Theorem1,
    Theorem2,
    Claim,
    Lemma,
    L23,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "all" => Suite::All,
            "theorem1" => Suite::Theorem1,
            "theorem2" => Suite::Theorem2,
            "claim" => Suite::Claim,
            "lemma" => Suite::Lemma,
            "l23" => Suite::L23,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Claim => "claim",
            Suite::Lemma => "lemma",
            Suite::L23 => "l23",
        }
    }

    fn includes(&self, other: Suite) -> bool {
        *self == Suite::All || *self == other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Info,
}

/// One entry of the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The mathematical statement being checked.
    #[serde(rename = "paper_ref")]
    pub statement: String,
    pub status: Status,
    pub residual: f64,
    pub witnesses: Value,
}

impl Check {
    fn new(
        name: impl Into<String>,
        statement: &str,
        status: Status,
        residual: f64,
        witnesses: Value,
    ) -> Self {
        Self {
            name: name.into(),
            statement: statement.into(),
            status,
            residual,
            witnesses,
        }
    }

    fn verdict(
        name: impl Into<String>,
        statement: &str,
        ok: bool,
        residual: f64,
        witnesses: Value,
    ) -> Self {
        Self::new(
            name,
            statement,
            if ok { Status::Pass } else { Status::Fail },
            residual,
            witnesses,
        )
    }

    fn error(name: impl Into<String>, statement: &str, err: GeomError) -> Self {
        Self::new(
            name,
            statement,
            Status::Fail,
            f64::INFINITY,
            json!({ "error": err.to_string() }),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub info: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub tol: f64,
    pub eps_sup: f64,
    pub eps_far: f64,
    pub golden_tol: f64,
    pub eps_cap: f64,
    pub cap_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A body with a display name.
#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub body: ConvexBody,
}

/// Settings of [`run_suite`].
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub seed: u64,
    pub tol: f64,
    pub width: WidthOptions,
    pub scan: ScanOptions,
    /// Worker threads (`None`: rayon default).
    pub workers: Option<usize>,
    /// Bodies to check instead of the built-in corpus.
    pub corpus: Option<Vec<Entry>>,
    /// Number of seeded random polygons in the built-in corpus.
    pub random_polygons: usize,
}

impl VerifyConfig {
    pub fn new(suite: Suite, seed: u64) -> Self {
        Self {
            suite,
            seed,
            tol: 1e-6,
            width: WidthOptions {
                seed,
                ..WidthOptions::default()
            },
            scan: ScanOptions::default(),
            workers: None,
            corpus: None,
            random_polygons: 100,
        }
    }
}

/// Convex polygon from `n` random Klein points at angles sorted around the
/// origin with radii in `[0.5, r_max]`.
pub fn random_polygon(rng: &mut ChaCha8Rng, r_max: f64) -> ConvexBody {
    loop {
        let n = rng.random_range(5..=12);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<HPoint> = angles
            .iter()
            .filter_map(|a| {
                let r = rng.random_range(0.5..r_max);
                klein_inv(&Vector::from_vec(vec![r * a.cos(), r * a.sin()])).ok()
            })
            .collect();
        if let Ok(body) = make_polytope(pts) {
            if body.extreme_points().points.len() >= 5 {
                return body;
            }
        }
    }
}

/// `count` seeded random convex polygons with Klein radius at most 0.9.
pub fn random_polygons(count: usize, seed: u64) -> Vec<ConvexBody> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_polygon(&mut rng, 0.9)).collect()
}

fn entry(name: &str, body: Result<ConvexBody>) -> Entry {
    Entry {
        name: name.into(),
        body: body.expect("built-in corpus bodies are valid"),
    }
}

/// The built-in named bodies (without the random polygons).
pub fn named_corpus() -> Vec<Entry> {
    vec![
        entry(
            "ball-r0.5",
            Ball::new(HPoint::origin(2), 0.5).and_then(|b| b.to_body()),
        ),
        entry("reuleaux-1", make_reuleaux(1.0)),
        entry("rhombus-0.5-1.5", make_rhombus(0.5, 1.5, false)),
        entry("rhombus-0.4-2.0", make_rhombus(0.4, 2.0, false)),
        entry("regular-5", make_regular_polygon(5, 0.8)),
        entry("regular-7", make_regular_polygon(7, 0.8)),
        entry("regular-9", make_regular_polygon(9, 0.8)),
        entry("triangle-1", make_polytope(equilateral_vertices(1.0))),
    ]
}

const S_MAXW: &str = "the maximum width of a convex body equals its diameter";
const S_PROJ: &str = "if the thickness witness has a unique farthest point, its projection onto H lies in H and in the body";
const S_CDIAM: &str =
    "every boundary point of a complete body has a partner at distance equal to the diameter";
const S_BALL: &str = "a ball of radius r has every width, the thickness, the maximum width and the diameter equal to 2r";
const S_DICH: &str = "at every extreme point e of a reduced body some thickness-realizing H, or its equidistant surface, supports the body at e";
const S_RCASE: &str = "on a reduced rhombus, H through the short-diagonal end realizes the thickness and its equidistant surface passes through the long-diagonal end";
const S_RTHICK: &str = "the thickness of a rhombus with half-diagonals a < b equals arsinh(sinh a cosh b) in the reduced regime";
const S_PROBE: &str = "regular odd-gons are reduced and the square is not";
const S_SCAN: &str =
    "rhombi become reduced once the long half-diagonal passes a threshold in the short one";
const S_LAMBERT: &str =
    "Lambert quadrilateral height arsinh(sinh a cosh b) equals the coordinate distance";
const S_PIPE: &str = "a complete body of diameter delta has constant width delta, and conversely";
const S_CLAIM: &str = "for a complete body, the nearest enclosing equidistant surface of any supporting H meets the body in exactly one point";
const S_LEMMA: &str = "for a complete body of diameter delta, each piece of circle P_c(a,b) with a, b in the body lies in the body";
const S_LEMMA_NEG: &str =
    "negative control: a body that is not complete violates the piece-of-circle containment";

type Job<'a> = Box<dyn Fn() -> Check + Send + Sync + 'a>;

/// Runs the selected suite.
pub fn run_suite(cfg: &VerifyConfig) -> Result<Report> {
    let named = cfg.corpus.clone().unwrap_or_else(named_corpus);
    let builtin = cfg.corpus.is_none();
    let randoms: Vec<Entry> = if builtin {
        random_polygons(cfg.random_polygons, cfg.seed)
            .into_iter()
            .enumerate()
            .map(|(i, body)| Entry {
                name: format!("random-{i:03}"),
                body,
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut jobs: Vec<Job> = Vec::new();
    let opts = &cfg.width;
    let tol = cfg.tol;

    if cfg.suite.includes(Suite::L23) {
        for e in named.iter().chain(&randoms) {
            jobs.push(Box::new(move || check_max_width(e, opts, tol)));
            jobs.push(Box::new(move || check_projection(e, opts, tol)));
        }
        if builtin {
            let cross = entry("crosspolytope-3", make_crosspolytope(&[0.3, 0.3, 0.9]));
            jobs.push(Box::new(move || check_max_width(&cross, opts, 1e-4)));
            for r in [0.25, 0.5, 1.0] {
                jobs.push(Box::new(move || check_ball(r, opts)));
            }
        }
        for e in &named {
            jobs.push(Box::new(move || check_constant_diameter(e, tol)));
        }
    }
    if cfg.suite.includes(Suite::Theorem1) {
        if builtin {
            jobs.push(Box::new(check_lambert_grid));
            for (a, b) in [(0.5, 1.5), (0.4, 2.0)] {
                jobs.push(Box::new(move || check_rhombus_cases(a, b, opts, tol)));
            }
            for (a, b) in [(0.5, 1.5), (0.4, 2.0), (0.4, 1.2)] {
                jobs.push(Box::new(move || check_rhombus_thickness(a, b, opts)));
            }
            jobs.push(Box::new(move || check_probe_examples(cfg)));
            jobs.push(Box::new(move || check_threshold_scan(cfg)));
        }
        for e in &named {
            jobs.push(Box::new(move || check_dichotomy(e, cfg)));
        }
    }
    if cfg.suite.includes(Suite::Theorem2) {
        for e in &named {
            jobs.push(Box::new(move || check_pipeline(e, opts, tol)));
        }
    }
    if cfg.suite.includes(Suite::Claim) {
        for e in &named {
            jobs.push(Box::new(move || check_claim(e, opts, tol)));
        }
    }
    if cfg.suite.includes(Suite::Lemma) {
        for e in &named {
            jobs.push(Box::new(move || check_lemma(e, cfg)));
        }
    }

    let run = || jobs.par_iter().map(|job| job()).collect::<Vec<Check>>();
    let checks = match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| GeomError::Domain(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut summary = Summary::default();
    for c in &checks {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped => summary.skipped += 1,
            Status::Info => summary.info += 1,
        }
    }
    Ok(Report {
        suite: cfg.suite.name().into(),
        seed: cfg.seed,
        tolerances: Tolerances {
            tol: cfg.tol,
            eps_sup: opts.eps_sup,
            eps_far: opts.eps_far,
            golden_tol: opts.golden_tol,
            eps_cap: cfg.scan.eps_cap,
            cap_tol: cfg.scan.tol,
        },
        checks,
        summary,
    })
}

fn check_max_width(e: &Entry, opts: &WidthOptions, tol: f64) -> Check {
    let name = format!("l23/maxwidth-diameter/{}", e.name);
    match max_width(&e.body, opts) {
        Ok(m) => {
            let d = e.body.diameter();
            let r = (m.value - d.value).abs();
            Check::verdict(
                name,
                S_MAXW,
                r < tol,
                r,
                json!({ "max_width": m.value, "diameter": d.value, "exact": m.exact, "starts": m.starts, "witness": witness_json(&m.witness) }),
            )
        }
        Err(err) => Check::error(name, S_MAXW, err),
    }
}

fn check_projection(e: &Entry, opts: &WidthOptions, tol: f64) -> Check {
    let name = format!("l23/projection/{}", e.name);
    let t = match thickness(&e.body, opts) {
        Ok(t) => t,
        Err(err) => return Check::error(name, S_PROJ, err),
    };
    if cluster_count(&t.witness.farthest, CLUSTER_RADIUS) != 1 {
        return Check::new(
            name,
            S_PROJ,
            Status::Skipped,
            0.0,
            json!({ "farthest": t.witness.farthest.len() }),
        );
    }
    let j = &t.witness.farthest[0];
    let h = &t.witness.hyperplane;
    let p = project_onto(j, h);
    let r = signed_dist(&p, h).abs().max(e.body.outside_residual(&p));
    Check::verdict(
        name,
        S_PROJ,
        r < tol,
        r,
        json!({ "farthest": point_json(j), "projection": point_json(&p), "witness": witness_json(&t.witness) }),
    )
}

fn check_ball(r: f64, opts: &WidthOptions) -> Check {
    let name = format!("l23/ball-sanity/r={r}");
    let run = || -> Result<(f64, Value)> {
        let body = Ball::new(HPoint::origin(2), r)?.to_body()?;
        let mut worst: f64 = 0.0;
        for (_, h) in supporting_lines(&body, 1000)? {
            worst = worst.max((width_given_h(&body, &h, opts)?.value - 2.0 * r).abs());
        }
        let t = thickness(&body, opts)?.value;
        let m = max_width(&body, opts)?.value;
        let d = body.diameter().value;
        for v in [t, m, d] {
            worst = worst.max((v - 2.0 * r).abs());
        }
        Ok((
            worst,
            json!({ "thickness": t, "max_width": m, "diameter": d }),
        ))
    };
    match run() {
        Ok((worst, w)) => Check::verdict(name, S_BALL, worst < 1e-9, worst, w),
        Err(err) => Check::error(name, S_BALL, err),
    }
}

fn check_constant_diameter(e: &Entry, tol: f64) -> Check {
    let name = format!("l23/constant-diameter/{}", e.name);
    let comp = is_complete(&e.body, tol);
    if !comp.is_complete {
        return Check::new(
            name,
            S_CDIAM,
            Status::Skipped,
            0.0,
            json!({ "complete": false }),
        );
    }
    match is_constant_diameter(&e.body, comp.delta, tol) {
        Ok(rep) => Check::verdict(
            name,
            S_CDIAM,
            rep.holds,
            rep.worst_residual,
            json!({ "delta": comp.delta }),
        ),
        Err(err) => Check::error(name, S_CDIAM, err),
    }
}

fn check_lambert_grid() -> Check {
    let mut worst: f64 = 0.0;
    for i in 1..=20 {
        for j in 1..=20 {
            let (a, b) = (0.1 * i as f64, 0.1 * j as f64);
            let ep = HPoint::lift(&[0.0, b.sinh()]);
            let h = Hyperplane::new(Vector::from_vec(vec![-a.sinh(), -a.cosh(), 0.0]))
                .expect("unit normal");
            let l = lambert_height(a, b).expect("positive legs");
            worst = worst.max((l - h.signed_dist(&ep)).abs());
        }
    }
    Check::verdict(
        "lambert/closed-form-grid",
        S_LAMBERT,
        worst < 1e-12,
        worst,
        json!({ "grid": "a, b in 0.1..2.0 step 0.1" }),
    )
}

fn check_rhombus_cases(a: f64, b: f64, opts: &WidthOptions, tol: f64) -> Check {
    let name = format!("theorem1/rhombus-cases/{a}-{b}");
    let run = || -> Result<Check> {
        let body = make_rhombus(a, b, false)?;
        let vs = body.extreme_points().points;
        let lo = extreme_point_dichotomy(&body, &vs[0], tol, opts)?;
        let hi = extreme_point_dichotomy(&body, &vs[1], tol, opts)?;
        let ok = lo.case == Some(DichotomyCase::OnHyperplane)
            && hi.case == Some(DichotomyCase::OnEquidistant);
        Ok(Check::verdict(
            name.clone(),
            S_RCASE,
            ok,
            lo.residual.max(hi.residual),
            json!({
                "e_minus": lo.case.map(|c| c.label()),
                "e_plus": hi.case.map(|c| c.label()),
                "e_plus_hyperplane": hi.hyperplane.normal().as_slice(),
            }),
        ))
    };
    run().unwrap_or_else(|err| Check::error(name.clone(), S_RCASE, err))
}

fn check_rhombus_thickness(a: f64, b: f64, opts: &WidthOptions) -> Check {
    let name = format!("theorem1/rhombus-thickness/{a}-{b}");
    let run = || -> Result<Check> {
        let body = make_rhombus(a, b, false)?;
        let t = thickness(&body, opts)?;
        let l = lambert_height(a, b)?;
        let r = (t.value - l).abs();
        let reduced_regime = b.cosh() >= 2.0 * a.cosh();
        let w = json!({ "thickness": t.value, "lambert": l, "reduced_regime": reduced_regime, "witness": witness_json(&t.witness) });
        Ok(if reduced_regime {
            Check::verdict(name.clone(), S_RTHICK, r < 1e-8, r, w)
        } else {
            Check::new(name.clone(), S_RTHICK, Status::Info, r, w)
        })
    };
    run().unwrap_or_else(|err| Check::error(name.clone(), S_RTHICK, err))
}

fn check_probe_examples(cfg: &VerifyConfig) -> Check {
    let run = || -> Result<Check> {
        let pent = reduced_probe(
            &make_regular_polygon(5, 0.8)?,
            cfg.scan.eps_cap,
            cfg.scan.tol,
            &cfg.width,
        )?;
        let square = reduced_probe(
            &make_rhombus(0.4, 0.4, false)?,
            cfg.scan.eps_cap,
            cfg.scan.tol,
            &cfg.width,
        )?;
        let ok = pent.reduced_consistent() && !square.cap_test;
        let min_decrease = |p: &crate::structure::ReducedProbe| {
            p.vertices
                .iter()
                .map(|v| v.decrease)
                .fold(f64::INFINITY, f64::min)
        };
        Ok(Check::verdict(
            "theorem1/reduced-probe/examples",
            S_PROBE,
            ok,
            min_decrease(&square).abs(),
            json!({ "pentagon_min_decrease": min_decrease(&pent), "square_min_decrease": min_decrease(&square) }),
        ))
    };
    run().unwrap_or_else(|err| Check::error("theorem1/reduced-probe/examples", S_PROBE, err))
}

fn check_threshold_scan(cfg: &VerifyConfig) -> Check {
    let a = 0.4;
    match rhombus_threshold_scan(a, a, 3.0, 26, &cfg.scan, &cfg.width) {
        Ok(s) => {
            let width = s.bracket.map(|(lo, hi)| hi - lo).unwrap_or(f64::INFINITY);
            let ok = s.monotone && width <= cfg.scan.resolution + 1e-15;
            Check::verdict(
                "theorem1/threshold-scan/a=0.4",
                S_SCAN,
                ok,
                width,
                json!({
                    "b_star": s.b_star,
                    "bracket": s.bracket,
                    "monotone": s.monotone,
                    "readings": s.readings.iter().map(|r| json!({ "label": r.label, "value": r.value, "matches": r.matches })).collect::<Vec<_>>(),
                    "lambert_onset": s.lambert_onset,
                    "thickness_at_b_star": s.thickness_at_b_star,
                    "lambert_at_b_star": s.lambert_at_b_star,
                }),
            )
        }
        Err(err) => Check::error("theorem1/threshold-scan/a=0.4", S_SCAN, err),
    }
}

fn check_dichotomy(e: &Entry, cfg: &VerifyConfig) -> Check {
    let name = format!("theorem1/dichotomy/{}", e.name);
    if e.body.dim() != 2 {
        return Check::new(
            name,
            S_DICH,
            Status::Skipped,
            0.0,
            json!({ "reason": "planar bodies only" }),
        );
    }
    let run = || -> Result<Check> {
        let probe = reduced_probe(&e.body, cfg.scan.eps_cap, cfg.scan.tol, &cfg.width)?;
        if !probe.reduced_consistent() && !probe.vertices.is_empty() {
            return Ok(Check::new(
                name.clone(),
                S_DICH,
                Status::Skipped,
                0.0,
                json!({ "reduced_consistent": false }),
            ));
        }
        let ext = e.body.extreme_points();
        let mut points = ext.points.clone();
        for arc in &ext.arcs {
            points.extend((0..8).map(|k| arc.point((k as f64 + 0.5) / 8.0)));
        }
        let mut worst: f64 = 0.0;
        let mut cases = Vec::new();
        let mut ok = true;
        for p in &points {
            let rep = extreme_point_dichotomy(&e.body, p, cfg.tol, &cfg.width)?;
            ok &= rep.found;
            worst = worst.max(rep.residual);
            cases.push(rep.case.map(|c| c.label()));
        }
        Ok(Check::verdict(
            name.clone(),
            S_DICH,
            ok,
            worst,
            json!({ "points": points.len(), "cases": cases }),
        ))
    };
    run().unwrap_or_else(|err| Check::error(name.clone(), S_DICH, err))
}

fn implication_label(i: Implication) -> &'static str {
    match i {
        Implication::Holds => "holds",
        Implication::Fails => "fails",
        Implication::Vacuous => "vacuous",
    }
}

fn check_pipeline(e: &Entry, opts: &WidthOptions, tol: f64) -> Check {
    let name = format!("theorem2/pipeline/{}", e.name);
    match theorem2_pipeline(&e.body, tol, opts) {
        Ok(rep) => {
            let residual = if rep.completeness.is_complete {
                (rep.constant_width.max - rep.constant_width.min).abs()
            } else {
                0.0
            };
            Check::verdict(
                name,
                S_PIPE,
                rep.consistent(),
                residual,
                json!({
                    "complete": rep.completeness.is_complete,
                    "delta": rep.completeness.delta,
                    "ball_hull_residual": rep.completeness.ball_hull_residual,
                    "violating": rep.completeness.violating.as_ref().map(point_json),
                    "constant_width": rep.constant_width.constant,
                    "mean_width": rep.constant_width.delta,
                    "forward": implication_label(rep.forward),
                    "converse": implication_label(rep.converse),
                }),
            )
        }
        Err(err) => Check::error(name, S_PIPE, err),
    }
}

fn check_claim(e: &Entry, opts: &WidthOptions, tol: f64) -> Check {
    let name = format!("claim/unique-contact/{}", e.name);
    if e.body.dim() != 2 || !is_complete(&e.body, tol).is_complete {
        return Check::new(
            name,
            S_CLAIM,
            Status::Skipped,
            0.0,
            json!({ "complete": false }),
        );
    }
    let run = || -> Result<Check> {
        let mut worst = 0usize;
        let mut spread: f64 = 0.0;
        let lines = supporting_lines(&e.body, 1000)?;
        for (_, h) in &lines {
            let rep = claim_unique_contact(&e.body, h, opts)?;
            worst = worst.max(rep.count);
            spread = spread.max(rep.spread);
        }
        Ok(Check::verdict(
            name.clone(),
            S_CLAIM,
            worst == 1,
            spread,
            json!({ "lines": lines.len(), "max_count": worst }),
        ))
    };
    run().unwrap_or_else(|err| Check::error(name.clone(), S_CLAIM, err))
}

fn check_lemma(e: &Entry, cfg: &VerifyConfig) -> Check {
    let comp = is_complete(&e.body, cfg.tol);
    let negative_control = cfg.corpus.is_none() && e.name.starts_with("triangle");
    let (name, statement) = if negative_control {
        (format!("lemma/negative-control/{}", e.name), S_LEMMA_NEG)
    } else {
        (format!("lemma/spindle/{}", e.name), S_LEMMA)
    };
    if e.body.dim() != 2 || (!comp.is_complete && !negative_control) {
        return Check::new(
            name,
            statement,
            Status::Skipped,
            0.0,
            json!({ "complete": comp.is_complete }),
        );
    }
    match lemma_spindle_check(&e.body, comp.delta, 1000, cfg.seed) {
        Ok(rep) => {
            let ok = rep.passed != negative_control;
            Check::verdict(
                name,
                statement,
                ok,
                rep.worst_residual,
                json!({ "triples": rep.triples, "delta": comp.delta, "contained": rep.passed }),
            )
        }
        Err(err) => Check::error(name, statement, err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in ["all", "theorem1", "theorem2", "claim", "lemma", "l23"] {
            assert_eq!(Suite::parse(s).unwrap().name(), s);
        }
        assert!(Suite::parse("everything").is_none());
    }

    #[test]
    fn random_polygons_are_seeded() {
        let a = random_polygons(5, 3);
        let b = random_polygons(5, 3);
        assert_eq!(a, b);
        for p in &a {
            let n = p.extreme_points().points.len();
            assert!((5..=12).contains(&n));
            for v in p.extreme_points().points {
                assert!(crate::lorentz::klein(&v).norm() <= 0.9);
            }
        }
        assert_ne!(a, random_polygons(5, 4));
    }

    #[test]
    fn custom_corpus_pipeline() {
        let mut cfg = VerifyConfig::new(Suite::Theorem2, 1);
        cfg.corpus = Some(vec![Entry {
            name: "rh".into(),
            body: make_rhombus(0.5, 1.5, false).unwrap(),
        }]);
        let rep = run_suite(&cfg).unwrap();
        assert_eq!(rep.checks.len(), 1);
        assert_eq!(rep.checks[0].status, Status::Pass);
        assert_eq!(rep.checks[0].witnesses["complete"], json!(false));
        assert_eq!(rep.checks[0].witnesses["forward"], json!("vacuous"));
    }
}
