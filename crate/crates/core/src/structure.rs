//! Classifiers built on the width engine: completeness, constant width and
//! diameter, spindle pieces of circles, the extreme-point dichotomy for
//! reduced bodies and a cap-truncation probe for reducedness.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::body::{wrap_pi, BoundarySample, CircArc, ConvexBody};
use crate::error::{GeomError, Result};
use crate::lorentz::{
    circle_intersections, dist, exp_map, frame_angle, frame_dir, lambert_height, tangent_frame,
    unit_tangent_toward, GeodesicSegment, HPoint, Hyperplane, Vector,
};
use crate::optimize::{golden_section_min, local_minima};
use crate::width::{
    pieces, supporting_hyperplane, thickness, width_given_h, width_profile, Piece, StripSpec,
    SupportMode, WidthOptions,
};

/// Boundary sampling density of the completeness and diameter tests.
pub const BOUNDARY_SAMPLES: usize = 4096;
/// Clustering radius for counting farthest points.
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// Arc of the circle of radius `delta` about `c` swept by the geodesics from
/// `c` through the points of the segment `ab`.
pub fn piece_circle(c: &HPoint, a: &HPoint, b: &HPoint, delta: f64) -> Result<CircArc> {
    let (ca, cb) = (dist(c, a), dist(c, b));
    if (ca - delta).abs() > 1e-9 || (cb - delta).abs() > 1e-9 {
        return Err(GeomError::RadiusMismatch {
            ca,
            cb,
            expected: delta,
        });
    }
    if dist(a, b) < 1e-12 {
        return Err(GeomError::Degenerate(
            "piece of circle needs distinct endpoints".into(),
        ));
    }
    let frame = tangent_frame(c);
    let ta = frame_angle(&frame, &unit_tangent_toward(c, a).expect("a != c"));
    let tb = frame_angle(&frame, &unit_tangent_toward(c, b).expect("b != c"));
    let sweep = wrap_pi(tb - ta);
    let (t0, s) = if sweep >= 0.0 {
        (ta, sweep)
    } else {
        (tb, -sweep)
    };
    Ok(CircArc::from_angles(c.clone(), delta, t0, s))
}

/// Outcome of [`lemma_spindle_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpindleReport {
    pub passed: bool,
    /// Number of `(a, b, c)` triples examined.
    pub triples: usize,
    /// Largest distance by which a sampled arc point leaves the body.
    pub worst_residual: f64,
    /// The offending `(a, b, c)` when the check fails.
    pub worst: Option<(HPoint, HPoint, HPoint)>,
}

/// For sampled pairs `a, b` of the body and each `c` at distance `delta`
/// from both, checks that the piece of circle `P_c(a,b)` stays in the body.
pub fn lemma_spindle_check(
    body: &ConvexBody,
    delta: f64,
    samples: usize,
    seed: u64,
) -> Result<SpindleReport> {
    const TOL: f64 = 1e-8;
    const PER_ARC: usize = 24;
    let pool: Vec<HPoint> = body
        .boundary_samples(512, 1)
        .into_iter()
        .map(|s| s.point)
        .collect();
    let pool: Vec<HPoint> = pool.into_iter().fold(Vec::new(), |mut acc, p| {
        if !acc.iter().any(|q: &HPoint| dist(q, &p) < 1e-12) {
            acc.push(p);
        }
        acc
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SpindleReport {
        passed: true,
        triples: 0,
        worst_residual: 0.0,
        worst: None,
    };
    let mut attempts = 0;
    while report.triples < samples && attempts < 50 * samples.max(1) {
        attempts += 1;
        let a = &pool[rng.random_range(0..pool.len())];
        let mut b = pool[rng.random_range(0..pool.len())].clone();
        if rng.random_bool(0.25) {
            // an interior point on a chord
            let other = &pool[rng.random_range(0..pool.len())];
            b = GeodesicSegment::new(b, other.clone()).lerp(rng.random_range(0.0..1.0));
        }
        if dist(a, &b) < 1e-9 {
            continue;
        }
        for c in circle_intersections(a, delta, &b, delta, 1e-12) {
            let Ok(arc) = piece_circle(&c, a, &b, delta) else {
                continue;
            };
            report.triples += 1;
            for p in arc.sample(PER_ARC) {
                let r = body.outside_residual(&p);
                if r > report.worst_residual {
                    report.worst_residual = r;
                    report.worst = Some((a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    report.passed = report.worst_residual <= TOL;
    if report.passed {
        report.worst = None;
    }
    Ok(report)
}

/// Outcome of [`is_complete`].
#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessReport {
    pub delta: f64,
    pub is_complete: bool,
    /// A point outside the body whose addition keeps the diameter.
    pub violating: Option<HPoint>,
    /// Largest outward step along a boundary normal that keeps every
    /// distance to the body within `delta`.
    pub ball_hull_residual: f64,
    /// Whether every sample pushed out by `2 tol` raises the diameter.
    pub outward_probe: bool,
}

/// Completeness at the body's own diameter by two tests: the largest
/// outward step that stays inside the ball hull must be below `tol`, and
/// points pushed out by `2 tol` must see a body point beyond `delta`.
pub fn is_complete(body: &ConvexBody, tol: f64) -> CompletenessReport {
    let delta = body.diameter().value;
    let samples = body.boundary_samples(BOUNDARY_SAMPLES, 16);
    let far = |s: &BoundarySample, t: f64| body.farthest_from(&exp_map(&s.point, &s.outward, t)).0;
    let mut residual = 0.0;
    let mut worst: Option<&BoundarySample> = None;
    for s in &samples {
        let (mut lo, mut hi) = (0.0, delta);
        if far(s, hi) <= delta + 1e-12 {
            lo = hi;
        }
        while hi - lo > 1e-13 && lo < hi {
            let mid = 0.5 * (lo + hi);
            if far(s, mid) <= delta + 1e-12 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if lo > residual {
            residual = lo;
            worst = Some(s);
        }
    }
    let mut violating = None;
    if residual >= tol {
        let s = worst.expect("residual set with a sample");
        violating = Some(exp_map(&s.point, &s.outward, residual / 2.0));
    }
    let mut outward_probe = true;
    for s in &samples {
        if far(s, 2.0 * tol) <= delta {
            outward_probe = false;
            if violating.is_none() {
                violating = Some(exp_map(&s.point, &s.outward, 2.0 * tol));
            }
            break;
        }
    }
    let is_complete = residual < tol && outward_probe;
    CompletenessReport {
        delta,
        is_complete,
        violating: if is_complete { None } else { violating },
        ball_hull_residual: residual,
        outward_probe,
    }
}

/// Outcome of [`claim_unique_contact`].
#[derive(Debug, Clone, PartialEq)]
pub struct ContactReport {
    /// Farthest points counted up to [`CLUSTER_RADIUS`].
    pub count: usize,
    /// Largest distance between two farthest points.
    pub spread: f64,
    pub farthest: Vec<HPoint>,
}

/// Number of clusters of the farthest set of `width_H`.
pub fn claim_unique_contact(
    body: &ConvexBody,
    h: &Hyperplane,
    opts: &WidthOptions,
) -> Result<ContactReport> {
    let w = width_given_h(body, h, opts)?;
    let count = cluster_count(&w.farthest, CLUSTER_RADIUS);
    let mut spread: f64 = 0.0;
    for i in 0..w.farthest.len() {
        for j in i + 1..w.farthest.len() {
            spread = spread.max(dist(&w.farthest[i], &w.farthest[j]));
        }
    }
    Ok(ContactReport {
        count,
        spread,
        farthest: w.farthest,
    })
}

/// Single-linkage cluster count at radius `r`.
pub fn cluster_count(points: &[HPoint], r: f64) -> usize {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if dist(&points[i], &points[j]) <= r {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Outcome of [`is_constant_width`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantWidthReport {
    pub constant: bool,
    /// Mean sampled width.
    pub delta: f64,
    pub min: f64,
    pub max: f64,
    /// Set when widths were sampled along random directions (d >= 3).
    pub approximate: bool,
}

/// Spread of the width profile over 4096 supporting lines.
pub fn is_constant_width(
    body: &ConvexBody,
    tol: f64,
    opts: &WidthOptions,
) -> Result<ConstantWidthReport> {
    let (widths, approximate): (Vec<f64>, bool) = if body.dim() == 2 {
        (
            width_profile(body, BOUNDARY_SAMPLES, opts)?
                .into_iter()
                .map(|p| p.1)
                .collect(),
            false,
        )
    } else {
        (
            crate::width::sampled_widths(body, BOUNDARY_SAMPLES, opts.seed)?,
            true,
        )
    };
    let min = widths.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = widths.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let delta = widths.iter().sum::<f64>() / widths.len() as f64;
    Ok(ConstantWidthReport {
        constant: max - min < tol,
        delta,
        min,
        max,
        approximate,
    })
}

/// Outcome of [`is_constant_diameter`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantDiameterReport {
    pub holds: bool,
    /// Largest shortfall `delta - max_y dist(p, y)` over boundary samples.
    pub worst_residual: f64,
    pub worst_point: Option<HPoint>,
}

/// Whether every boundary sample has a partner in the body at distance
/// `delta`.
pub fn is_constant_diameter(
    body: &ConvexBody,
    delta: f64,
    tol: f64,
) -> Result<ConstantDiameterReport> {
    let diam = body.diameter().value;
    if (diam - delta).abs() > tol {
        return Err(GeomError::Domain(format!(
            "body diameter {diam} differs from {delta}"
        )));
    }
    let mut worst = (f64::NEG_INFINITY, None);
    for s in body.boundary_samples(BOUNDARY_SAMPLES, 4) {
        let r = delta - body.farthest_from(&s.point).0;
        if r > worst.0 {
            worst = (r, Some(s.point));
        }
    }
    let holds = worst.0 <= tol;
    Ok(ConstantDiameterReport {
        holds,
        worst_residual: worst.0.max(0.0),
        worst_point: if holds { None } else { worst.1 },
    })
}

/// Result of a direction of the complete / constant-width equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Implication {
    Holds,
    Fails,
    /// The hypothesis is false for this body.
    Vacuous,
}

/// Outcome of [`theorem2_pipeline`].
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    pub completeness: CompletenessReport,
    pub constant_width: ConstantWidthReport,
    /// complete => constant width with the same delta.
    pub forward: Implication,
    /// constant width => complete.
    pub converse: Implication,
}

impl PipelineReport {
    pub fn consistent(&self) -> bool {
        self.forward != Implication::Fails && self.converse != Implication::Fails
    }
}

/// Runs completeness and constant width and checks both implications.
pub fn theorem2_pipeline(
    body: &ConvexBody,
    tol: f64,
    opts: &WidthOptions,
) -> Result<PipelineReport> {
    let completeness = is_complete(body, tol);
    let constant_width = is_constant_width(body, tol, opts)?;
    let forward = if !completeness.is_complete {
        Implication::Vacuous
    } else if constant_width.constant && (constant_width.delta - completeness.delta).abs() < tol {
        Implication::Holds
    } else {
        Implication::Fails
    };
    let converse = if !constant_width.constant {
        Implication::Vacuous
    } else if completeness.is_complete {
        Implication::Holds
    } else {
        Implication::Fails
    };
    Ok(PipelineReport {
        completeness,
        constant_width,
        forward,
        converse,
    })
}

/// Which of `H`, `E_H` passes through the extreme point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DichotomyCase {
    OnHyperplane,
    OnEquidistant,
    Both,
}

impl DichotomyCase {
    pub fn label(&self) -> &'static str {
        match self {
            DichotomyCase::OnHyperplane => "on_hyperplane",
            DichotomyCase::OnEquidistant => "on_equidistant",
            DichotomyCase::Both => "both",
        }
    }
}

/// Outcome of [`extreme_point_dichotomy`].
#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyReport {
    pub e: HPoint,
    pub found: bool,
    pub hyperplane: Hyperplane,
    pub case: Option<DichotomyCase>,
    pub strip: StripSpec,
    /// Best residual over both searches.
    pub residual: f64,
    /// `min |width_H - thickness|` over supporting hyperplanes through `e`.
    pub on_hyperplane_residual: f64,
    /// `min max(width_H - dist(e,H), width_H - thickness)` over all
    /// supporting hyperplanes.
    pub on_equidistant_residual: f64,
}

#[derive(Debug, Clone)]
enum Location {
    /// Index of a fan piece.
    Corner(usize),
    /// Tangent normal at an interior arc point.
    Smooth(Vector),
}

fn locate(body: &ConvexBody, e: &HPoint) -> Result<Location> {
    const TOL: f64 = 1e-9;
    if e.dim() != 2 || body.dim() != 2 {
        return Err(GeomError::Unsupported(
            "the dichotomy search works in H^2".into(),
        ));
    }
    let ps = pieces(body)?;
    let mut best = f64::INFINITY;
    for (k, p) in ps.iter().enumerate() {
        if let Piece::Fan { point, .. } = p {
            let d = dist(point, e);
            if d < TOL {
                return Ok(Location::Corner(k));
            }
            best = best.min(d);
        }
    }
    if let ConvexBody::ArcPolygon(ap) = body {
        for arc in ap.arcs() {
            let th = arc.angle_of(e);
            let r = (dist(arc.center(), e) - arc.radius()).abs();
            if r < TOL && arc.contains_angle(th) {
                return Ok(Location::Smooth(arc.inward_normal_at(th)));
            }
            best = best.min(r);
        }
    }
    Err(GeomError::NotExtreme { residual: best })
}

/// Searches for a thickness-realizing supporting hyperplane `H` such that
/// `e` lies on `H` or on the equidistant surface `E_H`.
pub fn extreme_point_dichotomy(
    body: &ConvexBody,
    e: &HPoint,
    tol: f64,
    opts: &WidthOptions,
) -> Result<DichotomyReport> {
    let loc = locate(body, e)?;
    let delta = thickness(body, opts)?.value;

    // H through e: the normal cone at e
    let (h1, r1) = match &loc {
        Location::Corner(k) => {
            let ps = pieces(body)?;
            let piece = &ps[*k];
            let f = |t: f64| {
                width_given_h(body, &piece.line(t), opts)
                    .map(|w| w.value)
                    .unwrap_or(f64::INFINITY)
            };
            let (t, v) = local_minima(f, 0.0, 1.0, opts.grid, opts.golden_tol)
                .into_iter()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("scan yields a minimum");
            (piece.line(t), (v - delta).abs())
        }
        Location::Smooth(u) => {
            let h = Hyperplane::from_spacelike(u.clone())?;
            let v = width_given_h(body, &h, opts)?.value;
            (h, (v - delta).abs())
        }
    };

    // e on E_H: sweep hyperplanes orthogonal to geodesics leaving e
    let frame = tangent_frame(e);
    let plane = |phi: f64| {
        supporting_hyperplane(
            body,
            &(-frame_dir(&frame, phi)),
            Some(e),
            SupportMode::Lower,
        )
    };
    let g = |phi: f64| match plane(phi).and_then(|h| width_given_h(body, &h, opts).map(|w| (h, w)))
    {
        Ok((h, w)) => (w.value - h.signed_dist(e)).max(w.value - delta),
        Err(_) => f64::INFINITY,
    };
    let grid = (opts.grid * 4).max(360);
    let (mut phi2, mut r2) = local_minima(g, 0.0, TAU, grid, 1e-12)
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("scan yields a minimum");
    let (p, v) = golden_section_min(g, phi2 - 1e-6, phi2 + 1e-6, 1e-14);
    if v < r2 {
        phi2 = p;
        r2 = v;
    }
    let h2 = plane(phi2)?;

    let (c1, c2) = (r1 < tol, r2 < tol);
    let case = match (c1, c2) {
        (true, true) => Some(DichotomyCase::Both),
        (true, false) => Some(DichotomyCase::OnHyperplane),
        (false, true) => Some(DichotomyCase::OnEquidistant),
        _ => None,
    };
    let hyperplane = if c1 || (!c2 && r1 <= r2) { h1 } else { h2 };
    let strip = StripSpec::from_witness(&width_given_h(body, &hyperplane, opts)?);
    Ok(DichotomyReport {
        e: e.clone(),
        found: c1 || c2,
        hyperplane,
        case,
        strip,
        residual: r1.min(r2),
        on_hyperplane_residual: r1,
        on_equidistant_residual: r2,
    })
}

/// Per-vertex detail of [`reduced_probe`].
#[derive(Debug, Clone, PartialEq)]
pub struct VertexProbe {
    pub vertex: HPoint,
    pub dichotomy_found: bool,
    pub dichotomy_residual: f64,
    /// Thickness after cutting the vertex off.
    pub cut_thickness: f64,
    pub decrease: f64,
    pub cap_ok: bool,
}

/// Outcome of [`reduced_probe`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedProbe {
    pub thickness: f64,
    pub passes_necessary: bool,
    pub cap_test: bool,
    pub vertices: Vec<VertexProbe>,
}

impl ReducedProbe {
    /// Heuristic verdict: both the necessary condition and the cap probe hold.
    pub fn reduced_consistent(&self) -> bool {
        self.passes_necessary && self.cap_test
    }
}

/// Arc-polygons are replaced by this many segments per arc for cutting.
pub const CAP_POLYGONIZE: usize = 64;

/// Necessary condition (dichotomy at every vertex) plus a cap probe: cutting
/// each vertex off at depth `eps_cap` must lower the thickness by more
/// than `tol`.
pub fn reduced_probe(
    body: &ConvexBody,
    eps_cap: f64,
    tol: f64,
    opts: &WidthOptions,
) -> Result<ReducedProbe> {
    if body.dim() != 2 {
        return Err(GeomError::Unsupported(
            "the reduced probe works in H^2".into(),
        ));
    }
    let poly = body.polygonize(CAP_POLYGONIZE)?;
    let base = thickness(&poly, opts)?.value;
    let corners: Vec<HPoint> = match body {
        ConvexBody::Polytope(p) => p.vertices().to_vec(),
        ConvexBody::ArcPolygon(ap) => ap.corners().to_vec(),
    };
    let ps = pieces(&poly)?;
    let mut vertices = Vec::with_capacity(corners.len());
    for v in corners {
        let dich = extreme_point_dichotomy(body, &v, 1e-6, opts)?;
        let fan = ps
            .iter()
            .find_map(|p| match p {
                Piece::Fan {
                    point,
                    frame,
                    start,
                    sweep,
                } if dist(point, &v) < 1e-9 => Some((frame.clone(), *start, *sweep)),
                _ => None,
            })
            .ok_or_else(|| {
                GeomError::SearchFailed("vertex missing from the polygonized body".into())
            })?;
        let (frame, start, sweep) = fan;
        let bisector = frame_dir(&frame, start + 0.5 * sweep);
        let cut =
            Hyperplane::from_spacelike(bisector * eps_cap.cosh() + v.coords() * eps_cap.sinh())?;
        let cut_thickness = thickness(&poly.clip_polygon(&cut)?, opts)?.value;
        let decrease = base - cut_thickness;
        vertices.push(VertexProbe {
            vertex: v,
            dichotomy_found: dich.found,
            dichotomy_residual: dich.residual,
            cut_thickness,
            decrease,
            cap_ok: decrease > tol,
        });
    }
    Ok(ReducedProbe {
        thickness: base,
        passes_necessary: vertices.iter().all(|v| v.dichotomy_found),
        cap_test: vertices.iter().all(|v| v.cap_ok),
        vertices,
    })
}

/// Settings of [`rhombus_threshold_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOptions {
    pub eps_cap: f64,
    pub tol: f64,
    /// Target width of the final bracket.
    pub resolution: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            eps_cap: 1e-3,
            tol: 1e-7,
            resolution: 1e-3,
        }
    }
}

/// A closed-form candidate for the threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Reading {
    pub label: String,
    pub value: f64,
    /// Whether the located bracket contains the value.
    pub matches: bool,
}

/// Outcome of [`rhombus_threshold_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdScan {
    pub a: f64,
    /// Classifier on the grid: `(b, reduced-consistent)`.
    pub grid: Vec<(f64, bool)>,
    pub monotone: bool,
    /// Upper end of the final bracket, if a transition was found.
    pub b_star: Option<f64>,
    pub bracket: Option<(f64, f64)>,
    pub readings: Vec<Reading>,
    /// `arcosh(2 cosh a)`: beyond it the thickness equals the Lambert height.
    pub lambert_onset: f64,
    pub thickness_at_b_star: Option<f64>,
    pub lambert_at_b_star: Option<f64>,
}

/// The two readings of the closed-form threshold: half-diagonal `a` as the
/// parameter, or the full short diagonal `2a` (halved back to a
/// half-diagonal).
pub fn threshold_readings(a: f64) -> [(String, f64); 2] {
    [
        (
            "lambda = a (half-diagonals)".to_string(),
            (a.sinh() * (2.0 * a).cosh()).asinh(),
        ),
        (
            "lambda = 2a (full diagonals)".to_string(),
            0.5 * ((2.0 * a).sinh() * (4.0 * a).cosh()).asinh(),
        ),
    ]
}

/// Scans `rhombus(a, b)` for `b` on `steps + 1` grid points of
/// `[b_lo, b_hi]` with the reduced-probe classifier, then bisects the first
/// transition down to `resolution`. `b_lo = a` puts the square on the grid.
pub fn rhombus_threshold_scan(
    a: f64,
    b_lo: f64,
    b_hi: f64,
    steps: usize,
    scan: &ScanOptions,
    opts: &WidthOptions,
) -> Result<ThresholdScan> {
    if !(a > 0.0) || b_lo < a || b_hi > 3.0 || b_hi <= b_lo || steps < 1 {
        return Err(GeomError::Domain(format!(
            "scan needs 0 < a <= b_lo < b_hi <= 3 (got a = {a}, range [{b_lo}, {b_hi}])"
        )));
    }
    let classify = |b: f64| -> Result<bool> {
        let body = crate::body::make_rhombus(a, b, false)?;
        Ok(reduced_probe(&body, scan.eps_cap, scan.tol, opts)?.reduced_consistent())
    };
    let mut grid = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let b = b_lo + (b_hi - b_lo) * i as f64 / steps as f64;
        grid.push((b, classify(b)?));
    }
    let flips = grid.windows(2).filter(|w| w[0].1 != w[1].1).count();
    let monotone = flips <= 1 && (flips == 0 || !grid[0].1);
    let mut bracket = None;
    if let Some(i) = grid.windows(2).position(|w| !w[0].1 && w[1].1) {
        let (mut lo, mut hi) = (grid[i].0, grid[i + 1].0);
        while hi - lo > scan.resolution {
            let mid = 0.5 * (lo + hi);
            if classify(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        bracket = Some((lo, hi));
    }
    let b_star = bracket.map(|b| b.1);
    let readings = threshold_readings(a)
        .into_iter()
        .map(|(label, value)| Reading {
            matches: bracket.is_some_and(|(lo, hi)| {
                value >= lo - scan.resolution && value <= hi + scan.resolution
            }),
            label,
            value,
        })
        .collect();
    let (thickness_at_b_star, lambert_at_b_star) = match b_star {
        Some(b) => (
            Some(thickness(&crate::body::make_rhombus(a, b, false)?, opts)?.value),
            Some(lambert_height(a, b)?),
        ),
        None => (None, None),
    };
    Ok(ThresholdScan {
        a,
        grid,
        monotone,
        b_star,
        bracket,
        readings,
        lambert_onset: (2.0 * a.cosh()).acosh(),
        thickness_at_b_star,
        lambert_at_b_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::{
        equilateral_vertices, make_polytope, make_regular_polygon, make_reuleaux, make_rhombus,
        Ball,
    };

    #[test]
    fn piece_circle_endpoints_and_midpoint() {
        let c = HPoint::origin(2);
        let (a, b) = (HPoint::polar(1.0, 0.3), HPoint::polar(1.0, 1.4));
        let arc = piece_circle(&c, &a, &b, 1.0).unwrap();
        assert!(dist(arc.start(), &a) < 1e-12 && dist(arc.end(), &b) < 1e-12);
        let m = a.midpoint(&b);
        let g = exp_map(&c, &unit_tangent_toward(&c, &m).unwrap(), 1.0);
        assert!((dist(&c, &g) - 1.0).abs() < 1e-12);
        assert!(dist(&arc.midpoint(), &g) < 1e-9);
        // reversed order gives the same arc
        let rev = piece_circle(&c, &b, &a, 1.0).unwrap();
        assert!(dist(&rev.midpoint(), &g) < 1e-9);
        assert!(piece_circle(&c, &a, &HPoint::polar(0.9, 1.0), 1.0).is_err());
    }

    #[test]
    fn piece_circle_points_cross_the_segment() {
        let c = HPoint::polar(0.2, 2.0);
        let a = exp_map(&c, &frame_dir(&tangent_frame(&c), 0.1), 0.8);
        let b = exp_map(&c, &frame_dir(&tangent_frame(&c), 1.7), 0.8);
        let arc = piece_circle(&c, &a, &b, 0.8).unwrap();
        let ab = Hyperplane::through(&a, &b, Some(&c)).unwrap();
        for g in arc.sample(100) {
            assert!((dist(&c, &g) - 0.8).abs() < 1e-10);
            // c and g lie on opposite sides of line ab (or g on it)
            assert!(ab.signed_dist(&g) <= 1e-12);
        }
    }

    #[test]
    fn completeness_of_ball_triangle_and_reuleaux() {
        let ball = Ball::new(HPoint::origin(2), 0.5)
            .unwrap()
            .to_body()
            .unwrap();
        let rb = is_complete(&ball, 1e-6);
        assert!(rb.is_complete && rb.violating.is_none(), "{rb:?}");
        let tri = make_polytope(equilateral_vertices(1.0)).unwrap();
        let rt = is_complete(&tri, 1e-6);
        assert!(!rt.is_complete);
        let v = rt.violating.unwrap();
        assert!(!tri.contains(&v, 1e-9));
        assert!(tri.farthest_from(&v).0 <= 1.0 + 1e-9);
        let reu = make_reuleaux(1.0).unwrap();
        assert!(is_complete(&reu, 1e-6).is_complete);
    }

    #[test]
    fn lemma_on_complete_bodies_and_triangle() {
        let reu = make_reuleaux(1.0).unwrap();
        assert!(lemma_spindle_check(&reu, 1.0, 300, 1).unwrap().passed);
        let ball = Ball::new(HPoint::origin(2), 0.5)
            .unwrap()
            .to_body()
            .unwrap();
        assert!(lemma_spindle_check(&ball, 1.0, 300, 1).unwrap().passed);
        let tri = make_polytope(equilateral_vertices(1.0)).unwrap();
        assert!(!lemma_spindle_check(&tri, 1.0, 300, 1).unwrap().passed);
    }

    #[test]
    fn constant_width_and_diameter() {
        let opts = WidthOptions::default();
        let reu = make_reuleaux(1.0).unwrap();
        let cw = is_constant_width(&reu, 1e-6, &opts).unwrap();
        assert!(cw.constant && (cw.delta - 1.0).abs() < 1e-6);
        assert!(is_constant_diameter(&reu, 1.0, 1e-6).unwrap().holds);
        let rh = make_rhombus(0.5, 1.5, false).unwrap();
        assert!(!is_constant_width(&rh, 1e-6, &opts).unwrap().constant);
        let tri = make_polytope(equilateral_vertices(1.0)).unwrap();
        assert!(!is_constant_diameter(&tri, 1.0, 1e-6).unwrap().holds);
        assert!(is_constant_diameter(&tri, 2.0, 1e-6).is_err());
    }

    #[test]
    fn pipeline_is_consistent() {
        let opts = WidthOptions::default();
        let reu = theorem2_pipeline(&make_reuleaux(1.0).unwrap(), 1e-6, &opts).unwrap();
        assert_eq!(
            (reu.forward, reu.converse),
            (Implication::Holds, Implication::Holds)
        );
        let rh = theorem2_pipeline(&make_rhombus(0.5, 1.5, false).unwrap(), 1e-6, &opts).unwrap();
        assert_eq!(
            (rh.forward, rh.converse),
            (Implication::Vacuous, Implication::Vacuous)
        );
        assert!(rh.consistent());
    }

    #[test]
    fn claim_on_ball_and_rhombus() {
        let opts = WidthOptions::default();
        let ball = Ball::new(HPoint::origin(2), 0.4)
            .unwrap()
            .to_body()
            .unwrap();
        let h = supporting_hyperplane(
            &ball,
            &Vector::from_vec(vec![0.0, 0.6, 0.8]),
            None,
            SupportMode::Lower,
        )
        .unwrap();
        assert_eq!(claim_unique_contact(&ball, &h, &opts).unwrap().count, 1);
        let rh = make_rhombus(0.5, 1.5, false).unwrap();
        let h =
            Hyperplane::new(Vector::from_vec(vec![-0.5f64.sinh(), -0.5f64.cosh(), 0.0])).unwrap();
        let rep = claim_unique_contact(&rh, &h, &opts).unwrap();
        assert_eq!(rep.count, 2);
        assert!((rep.spread - 3.0).abs() < 1e-12);
    }

    #[test]
    fn dichotomy_on_rhombus() {
        let opts = WidthOptions::default();
        let body = make_rhombus(0.5, 1.5, false).unwrap();
        let vs = body.extreme_points().points;
        let lo = extreme_point_dichotomy(&body, &vs[0], 1e-6, &opts).unwrap();
        assert_eq!(lo.case, Some(DichotomyCase::OnHyperplane), "{lo:?}");
        let hi = extreme_point_dichotomy(&body, &vs[1], 1e-6, &opts).unwrap();
        assert_eq!(hi.case, Some(DichotomyCase::OnEquidistant), "{hi:?}");
        assert!((hi.strip.thickness - lambert_height(0.5, 1.5).unwrap()).abs() < 1e-8);
        let inner = HPoint::polar(0.1, 0.3);
        assert!(matches!(
            extreme_point_dichotomy(&body, &inner, 1e-6, &opts),
            Err(GeomError::NotExtreme { .. })
        ));
    }

    #[test]
    fn dichotomy_on_reuleaux_arc_point() {
        let opts = WidthOptions::default();
        let body = make_reuleaux(1.0).unwrap();
        let e = body.as_arc_polygon().unwrap().arcs()[0].point(0.37);
        let rep = extreme_point_dichotomy(&body, &e, 1e-6, &opts).unwrap();
        assert_eq!(rep.case, Some(DichotomyCase::Both), "{rep:?}");
    }

    #[test]
    fn cap_probe_on_pentagon_and_square() {
        let opts = WidthOptions::default();
        let pent =
            reduced_probe(&make_regular_polygon(5, 0.8).unwrap(), 1e-3, 1e-7, &opts).unwrap();
        assert!(pent.reduced_consistent(), "{pent:?}");
        let square =
            reduced_probe(&make_rhombus(0.4, 0.4, false).unwrap(), 1e-3, 1e-7, &opts).unwrap();
        assert!(!square.cap_test);
    }

    #[test]
    fn cluster_counting() {
        let p = HPoint::origin(2);
        let q = HPoint::polar(5e-7, 0.0);
        let r = HPoint::polar(1.0, 0.0);
        assert_eq!(cluster_count(&[p.clone(), q, r], 1e-6), 2);
        assert_eq!(cluster_count(&[p], 1e-6), 1);
    }
}
