//! Support values, widths determined by supporting hyperplanes, and the
//! thickness / maximum-width optimizers.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::body::{ArcPolygon, CircArc, ConvexBody};
use crate::error::{GeomError, Result};
use crate::lorentz::{
    dist, frame_dir, lorentz_dot, project_onto, tangent_frame, EquidistantSurface, HPoint,
    Hyperplane, Vector,
};
use crate::optimize::{local_maxima, local_minima, nelder_mead};

/// Tunables of the width computations.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthOptions {
    /// Support tolerance in sinh units.
    pub eps_sup: f64,
    /// Farthest-set tolerance in distance units.
    pub eps_far: f64,
    /// Golden-section interval tolerance.
    pub golden_tol: f64,
    /// Scan intervals per supporting-line piece.
    pub grid: usize,
    /// Multistart count for d >= 3.
    pub starts: usize,
    pub seed: u64,
}

impl Default for WidthOptions {
    fn default() -> Self {
        Self {
            eps_sup: 1e-9,
            eps_far: 1e-8,
            golden_tol: 1e-10,
            grid: 128,
            starts: 64,
            seed: 0,
        }
    }
}

/// Extrema of `<x,u>` over a body.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportExtrema {
    pub max: f64,
    pub argmax: Vec<HPoint>,
    pub min: f64,
    pub argmin: Vec<HPoint>,
}

/// Which member of a direction family to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportMode {
    /// The member with the body on its positive side.
    Lower,
    /// The opposite member, flipped so the body is again on the positive side.
    Upper,
}

/// A width measurement `width_H` with its witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthWitness {
    pub hyperplane: Hyperplane,
    pub value: f64,
    /// Points of the body on the nearest enclosing equidistant surface.
    pub farthest: Vec<HPoint>,
    pub surface: EquidistantSurface,
    /// Points of the body on the hyperplane.
    pub contact: Vec<HPoint>,
}

/// Thickness of the strip between a hyperplane and an equidistant surface.
#[derive(Debug, Clone, PartialEq)]
pub struct StripSpec {
    pub hyperplane: Hyperplane,
    pub surface: EquidistantSurface,
    pub thickness: f64,
}

impl StripSpec {
    pub fn from_witness(w: &WidthWitness) -> Self {
        Self {
            hyperplane: w.hyperplane.clone(),
            surface: w.surface.clone(),
            thickness: w.value,
        }
    }
}

/// Result of a thickness or maximum-width search.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremal {
    pub value: f64,
    pub witness: WidthWitness,
    /// `true` for the exhaustive planar search, `false` for best-found.
    pub exact: bool,
    /// Multistart count (0 for the planar search).
    pub starts: usize,
}

/// One family of supporting lines of a planar body, swept by one angle.
#[derive(Debug, Clone, PartialEq)]
pub enum Piece {
    /// Lines through a boundary point with normals `frame_dir(frame, start + t sweep)`.
    Fan {
        point: HPoint,
        frame: Vec<Vector>,
        start: f64,
        sweep: f64,
    },
    /// Tangent lines along an arc.
    ArcTangent { arc: CircArc },
}

impl Piece {
    /// Angular extent of the piece.
    pub fn extent(&self) -> f64 {
        match self {
            Piece::Fan { sweep, .. } => sweep.abs(),
            Piece::ArcTangent { arc } => arc.sweep(),
        }
    }

    fn angle(&self, t: f64) -> f64 {
        match self {
            Piece::Fan { start, sweep, .. } => start + t * sweep,
            Piece::ArcTangent { arc } => arc.theta0() + t * arc.sweep(),
        }
    }

    /// Inward unit normal at fraction `t in [0,1]`.
    pub fn normal(&self, t: f64) -> Vector {
        match self {
            Piece::Fan { frame, .. } => frame_dir(frame, self.angle(t)),
            Piece::ArcTangent { arc } => arc.inward_normal_at(self.angle(t)),
        }
    }

    /// Boundary point touched by the line at fraction `t`.
    pub fn contact(&self, t: f64) -> HPoint {
        match self {
            Piece::Fan { point, .. } => point.clone(),
            Piece::ArcTangent { arc } => arc.point_at_angle(self.angle(t)),
        }
    }

    pub fn line(&self, t: f64) -> Hyperplane {
        Hyperplane::from_spacelike(self.normal(t)).expect("unit spacelike by construction")
    }
}

/// Extrema of `<x,u>` over the body.
pub fn support_sinh(body: &ConvexBody, u: &Vector) -> SupportExtrema {
    const TIE: f64 = 1e-12;
    match body {
        ConvexBody::Polytope(p) => {
            let vals: Vec<f64> = p.vertices().iter().map(|v| v.pairing(u)).collect();
            let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let pick = |target: f64| {
                p.vertices()
                    .iter()
                    .zip(&vals)
                    .filter(|(_, s)| (**s - target).abs() <= TIE * target.abs().max(1.0))
                    .map(|(v, _)| v.clone())
                    .collect()
            };
            SupportExtrema {
                max,
                argmax: pick(max),
                min,
                argmin: pick(min),
            }
        }
        ConvexBody::ArcPolygon(ap) => {
            let ext: Vec<(f64, f64, f64, f64)> =
                ap.arcs().iter().map(|a| a.pairing_extrema(u)).collect();
            let max = ext.iter().map(|e| e.0).fold(f64::NEG_INFINITY, f64::max);
            let min = ext.iter().map(|e| e.2).fold(f64::INFINITY, f64::min);
            let mut argmax = Vec::new();
            let mut argmin = Vec::new();
            for (arc, e) in ap.arcs().iter().zip(&ext) {
                if (e.0 - max).abs() <= TIE * max.abs().max(1.0) {
                    push_unique(&mut argmax, arc.point_at_angle(e.1), 1e-12);
                }
                if (e.2 - min).abs() <= TIE * min.abs().max(1.0) {
                    push_unique(&mut argmin, arc.point_at_angle(e.3), 1e-12);
                }
            }
            SupportExtrema {
                max,
                argmax,
                min,
                argmin,
            }
        }
    }
}

fn push_unique(v: &mut Vec<HPoint>, p: HPoint, tol: f64) {
    if !v.iter().any(|q| dist(q, &p) < tol) {
        v.push(p);
    }
}

fn max_support(body: &ConvexBody, u: &Vector) -> f64 {
    match body {
        ConvexBody::Polytope(p) => p
            .vertices()
            .iter()
            .map(|v| v.pairing(u))
            .fold(f64::NEG_INFINITY, f64::max),
        ConvexBody::ArcPolygon(ap) => ap
            .arcs()
            .iter()
            .map(|a| a.pairing_extrema(u).0)
            .fold(f64::NEG_INFINITY, f64::max),
    }
}

fn min_support(body: &ConvexBody, u: &Vector) -> f64 {
    match body {
        ConvexBody::Polytope(p) => p
            .vertices()
            .iter()
            .map(|v| v.pairing(u))
            .fold(f64::INFINITY, f64::min),
        ConvexBody::ArcPolygon(ap) => ap
            .arcs()
            .iter()
            .map(|a| a.pairing_extrema(u).2)
            .fold(f64::INFINITY, f64::min),
    }
}

/// Supporting hyperplane whose normal lies in the family
/// `cosh(mu) u - sinh(mu) w`, where `w` is a point of the hyperplane of `u`
/// (default: the foot of the origin). The family sweeps the hyperplanes
/// orthogonal to the geodesic through `w` normal to `u`.
pub fn supporting_hyperplane(
    body: &ConvexBody,
    u_direction: &Vector,
    anchor: Option<&HPoint>,
    mode: SupportMode,
) -> Result<Hyperplane> {
    let h = Hyperplane::new(u_direction.clone())?;
    if h.dim() != body.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: body.dim(),
            got: h.dim(),
        });
    }
    let u = match mode {
        SupportMode::Lower => h.normal().clone(),
        SupportMode::Upper => -h.normal(),
    };
    let hu = Hyperplane::new(u.clone())?;
    let w = project_onto(
        anchor
            .cloned()
            .as_ref()
            .unwrap_or(&HPoint::origin(body.dim())),
        &hu,
    );
    let member = |mu: f64| u.clone() * mu.cosh() - w.coords() * mu.sinh();
    let mu = match body {
        ConvexBody::Polytope(p) => p
            .vertices()
            .iter()
            .map(|x| {
                let alpha = -x.pairing(w.coords());
                let beta = x.pairing(&u);
                -(beta / alpha).clamp(-1.0 + 1e-16, 1.0 - 1e-16).atanh()
            })
            .fold(f64::NEG_INFINITY, f64::max),
        ConvexBody::ArcPolygon(_) => {
            let g = |mu: f64| min_support(body, &member(mu));
            let (mut lo, mut hi) = (-1.0, 1.0);
            let mut k = 0;
            while g(lo) >= 0.0 {
                lo *= 2.0;
                k += 1;
                if k > 60 {
                    return Err(GeomError::SearchFailed("no supporting member below".into()));
                }
            }
            while g(hi) < 0.0 {
                hi *= 2.0;
                k += 1;
                if k > 120 {
                    return Err(GeomError::SearchFailed("no supporting member above".into()));
                }
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if g(mid) >= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        }
    };
    if !mu.is_finite() {
        return Err(GeomError::SearchFailed("support parameter diverged".into()));
    }
    Hyperplane::from_spacelike(member(mu))
}

/// `width_H(C)` for a supporting hyperplane `H` (body on its positive side).
pub fn width_given_h(
    body: &ConvexBody,
    h: &Hyperplane,
    opts: &WidthOptions,
) -> Result<WidthWitness> {
    if h.dim() != body.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: body.dim(),
            got: h.dim(),
        });
    }
    let u = h.normal();
    let min = min_support(body, u);
    if min.abs() > opts.eps_sup {
        return Err(GeomError::NotSupporting { residual: min });
    }
    let max = max_support(body, u);
    let value = max.asinh();
    let (farthest, contact) = match body {
        ConvexBody::Polytope(p) => {
            let far = p
                .vertices()
                .iter()
                .filter(|v| h.signed_dist(v) >= value - opts.eps_far)
                .cloned()
                .collect();
            let con = p
                .vertices()
                .iter()
                .filter(|v| h.signed_dist(v).abs() < 1e-9)
                .cloned()
                .collect();
            (far, con)
        }
        ConvexBody::ArcPolygon(ap) => {
            (arc_farthest(ap, u, value, opts.eps_far), arc_contact(ap, u))
        }
    };
    let surface = EquidistantSurface::new(h, value.max(f64::MIN_POSITIVE))?;
    Ok(WidthWitness {
        hyperplane: h.clone(),
        value,
        farthest,
        surface,
        contact,
    })
}

fn arc_coeffs(arc: &CircArc, u: &Vector) -> (f64, f64, f64) {
    let f = arc.frame();
    (
        arc.radius().cosh() * arc.center().pairing(u),
        lorentz_dot(&f[0], u),
        lorentz_dot(&f[1], u),
    )
}

/// Local maxima of `<x,u>` on the boundary within `eps` of the global one.
fn arc_farthest(ap: &ArcPolygon, u: &Vector, value: f64, eps: f64) -> Vec<HPoint> {
    const SLOPE: f64 = 1e-12;
    let arcs = ap.arcs();
    let n = arcs.len();
    let mut cands: Vec<HPoint> = Vec::new();
    let slope = |arc: &CircArc, th: f64| {
        let (_, a, b) = arc_coeffs(arc, u);
        arc.radius().sinh() * (-a * th.sin() + b * th.cos())
    };
    for arc in arcs {
        let (_, a, b) = arc_coeffs(arc, u);
        let peak = b.atan2(a);
        if arc.contains_angle(peak) {
            cands.push(arc.point_at_angle(peak));
        }
    }
    if !ap.corners().is_empty() {
        for k in 0..n {
            let next = &arcs[k];
            let prev = &arcs[(k + n - 1) % n];
            let leaving = slope(next, next.theta0());
            let arriving = slope(prev, prev.theta0() + prev.sweep());
            if leaving <= SLOPE && arriving >= -SLOPE {
                cands.push(ap.corners()[k].clone());
            }
        }
    }
    let mut out = Vec::new();
    for p in cands {
        if p.pairing(u).asinh() >= value - eps {
            push_unique(&mut out, p, 1e-12);
        }
    }
    out
}

fn arc_contact(ap: &ArcPolygon, u: &Vector) -> Vec<HPoint> {
    let mut out = Vec::new();
    for c in ap.corners() {
        if c.pairing(u).asinh().abs() < 1e-9 {
            push_unique(&mut out, c.clone(), 1e-12);
        }
    }
    for arc in ap.arcs() {
        let (_, a, b) = arc_coeffs(arc, u);
        let low = b.atan2(a) + PI;
        if arc.contains_angle(low) {
            let p = arc.point_at_angle(low);
            if p.pairing(u).asinh().abs() < 1e-9 {
                push_unique(&mut out, p, 1e-12);
            }
        }
    }
    out
}

/// Supporting-line pieces of a planar body, in boundary order.
pub fn pieces(body: &ConvexBody) -> Result<Vec<Piece>> {
    match body {
        ConvexBody::Polytope(p) if p.dim() == 2 => {
            let vs = p.vertices();
            let fs = p.facets();
            let m = vs.len();
            Ok((0..m)
                .map(|k| {
                    let frame = tangent_frame(&vs[k]);
                    let a = crate::lorentz::frame_angle(&frame, fs[(k + m - 1) % m].normal());
                    let b = crate::lorentz::frame_angle(&frame, fs[k].normal());
                    Piece::Fan {
                        point: vs[k].clone(),
                        frame,
                        start: a,
                        sweep: crate::body::wrap_pi(b - a),
                    }
                })
                .collect())
        }
        ConvexBody::Polytope(_) => Err(GeomError::Unsupported(
            "supporting-line pieces exist in H^2 only".into(),
        )),
        ConvexBody::ArcPolygon(ap) => {
            let mut out = Vec::new();
            for (k, arc) in ap.arcs().iter().enumerate() {
                if !ap.corners().is_empty() {
                    let (frame, start, sweep) = ap.corner_fan(k);
                    out.push(Piece::Fan {
                        point: ap.corners()[k].clone(),
                        frame,
                        start,
                        sweep,
                    });
                }
                out.push(Piece::ArcTangent { arc: arc.clone() });
            }
            Ok(out)
        }
    }
}

fn piece_width(body: &ConvexBody, piece: &Piece, t: f64) -> f64 {
    max_support(body, &piece.normal(t)).asinh()
}

/// Exact envelope polish on a polygon fan: the extremum of the upper
/// envelope of sinusoids sits at a crossing of two of them or at a peak.
fn polish_fan(body: &ConvexBody, piece: &Piece, t_hat: f64, minimize: bool) -> f64 {
    let (
        Piece::Fan {
            frame,
            start,
            sweep,
            ..
        },
        ConvexBody::Polytope(p),
    ) = (piece, body)
    else {
        return t_hat;
    };
    if sweep.abs() < 1e-15 {
        return t_hat;
    }
    let coeffs: Vec<(f64, f64)> = p
        .vertices()
        .iter()
        .map(|v| (v.pairing(&frame[0]), v.pairing(&frame[1])))
        .collect();
    let env = |phi: f64| {
        coeffs
            .iter()
            .map(|(b, c)| b * phi.cos() + c * phi.sin())
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let phi_hat = start + t_hat * sweep;
    let top_val = env(phi_hat);
    let mut active: Vec<usize> = (0..coeffs.len())
        .filter(|&i| top_val - (coeffs[i].0 * phi_hat.cos() + coeffs[i].1 * phi_hat.sin()) < 1e-6)
        .collect();
    active.truncate(6);
    let near = |target: f64| {
        // representative of target + k pi closest to phi_hat
        target + ((phi_hat - target) / PI).round() * PI
    };
    let mut cands = vec![phi_hat];
    for (x, &i) in active.iter().enumerate() {
        cands.push(near(coeffs[i].1.atan2(coeffs[i].0)));
        for &j in &active[x + 1..] {
            let (db, dc) = (coeffs[i].0 - coeffs[j].0, coeffs[i].1 - coeffs[j].1);
            if db.hypot(dc) > 1e-14 {
                cands.push(near(dc.atan2(db) + PI / 2.0));
            }
        }
    }
    let (lo, hi) = if *sweep >= 0.0 {
        (*start, start + sweep)
    } else {
        (start + sweep, *start)
    };
    let mut best = (phi_hat, env(phi_hat));
    for phi in cands {
        if phi < lo - 1e-15 || phi > hi + 1e-15 || (phi - phi_hat).abs() > 1e-4 {
            continue;
        }
        let phi = phi.clamp(lo, hi);
        let v = env(phi);
        if (minimize && v < best.1) || (!minimize && v > best.1) {
            best = (phi, v);
        }
    }
    ((best.0 - start) / sweep).clamp(0.0, 1.0)
}

fn planar_extremal(body: &ConvexBody, opts: &WidthOptions, minimize: bool) -> Result<Extremal> {
    let ps = pieces(body)?;
    let mut best: Option<(f64, usize, f64)> = None;
    for (k, piece) in ps.iter().enumerate() {
        let f = |t: f64| piece_width(body, piece, t);
        let hits = if minimize {
            local_minima(f, 0.0, 1.0, opts.grid, opts.golden_tol)
        } else {
            local_maxima(f, 0.0, 1.0, opts.grid, opts.golden_tol)
        };
        for (t, _) in hits {
            let t = polish_fan(body, piece, t, minimize);
            let v = piece_width(body, piece, t);
            let better = match best {
                None => true,
                Some((b, _, _)) => (minimize && v < b) || (!minimize && v > b),
            };
            if better {
                best = Some((v, k, t));
            }
        }
    }
    let (_, k, t) = best.ok_or_else(|| GeomError::SearchFailed("no supporting lines".into()))?;
    let witness = width_given_h(body, &ps[k].line(t), opts)?;
    Ok(Extremal {
        value: witness.value,
        witness,
        exact: true,
        starts: 0,
    })
}

fn direction_width(body: &ConvexBody, x: &[f64]) -> Option<f64> {
    let d = x.len();
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return None;
    }
    let mut u = Vector::zeros(d + 1);
    for i in 0..d {
        u[i + 1] = x[i] / norm;
    }
    let h = supporting_hyperplane(body, &u, None, SupportMode::Lower).ok()?;
    Some(max_support(body, h.normal()).asinh())
}

fn direction_plane(body: &ConvexBody, x: &[f64]) -> Result<Hyperplane> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut u = Vector::zeros(x.len() + 1);
    for i in 0..x.len() {
        u[i + 1] = x[i] / norm;
    }
    supporting_hyperplane(body, &u, None, SupportMode::Lower)
}

fn multistart_extremal(body: &ConvexBody, opts: &WidthOptions, minimize: bool) -> Result<Extremal> {
    let d = body.dim();
    let starts = opts.starts.max(64);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut seeds: Vec<Vec<f64>> = (0..starts)
        .map(|_| (0..d).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    // facet normals and vertex directions are natural candidates
    if let ConvexBody::Polytope(p) = body {
        for h in p.facets() {
            seeds.push((1..=d).map(|i| h.normal()[i]).collect());
        }
        for v in p.vertices() {
            seeds.push((1..=d).map(|i| -v.coords()[i]).collect());
        }
    }
    let sign = if minimize { 1.0 } else { -1.0 };
    let objective = |x: &[f64]| {
        direction_width(body, x)
            .map(|w| sign * w)
            .unwrap_or(f64::INFINITY)
    };
    let results: Vec<(Vec<f64>, f64)> = seeds
        .par_iter()
        .map(|x0| {
            let (mut x, mut fx) = nelder_mead(objective, x0, 0.3, 3000, 1e-14);
            for step in [0.05, 0.005] {
                let (y, fy) = nelder_mead(objective, &x, step, 2000, 1e-15);
                if fy <= fx {
                    x = y;
                    fx = fy;
                }
            }
            (x, fx)
        })
        .collect();
    let (x, _) = results
        .into_iter()
        .filter(|(_, f)| f.is_finite())
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| GeomError::SearchFailed("all starts failed".into()))?;
    let witness = width_given_h(body, &direction_plane(body, &x)?, opts)?;
    Ok(Extremal {
        value: witness.value,
        witness,
        exact: false,
        starts,
    })
}

/// Minimum width over all supporting hyperplanes.
pub fn thickness(body: &ConvexBody, opts: &WidthOptions) -> Result<Extremal> {
    if body.dim() == 2 {
        planar_extremal(body, opts, true)
    } else {
        multistart_extremal(body, opts, true)
    }
}

/// Maximum width over all supporting hyperplanes.
pub fn max_width(body: &ConvexBody, opts: &WidthOptions) -> Result<Extremal> {
    if body.dim() == 2 {
        planar_extremal(body, opts, false)
    } else {
        multistart_extremal(body, opts, false)
    }
}

/// `n` supporting lines swept uniformly in the angular parameter of the
/// pieces, with the parameter normalized to `[0,1)`.
pub fn supporting_lines(body: &ConvexBody, n: usize) -> Result<Vec<(f64, Hyperplane)>> {
    let ps = pieces(body)?;
    Ok((0..n)
        .map(|j| {
            let s = j as f64 / n as f64;
            (s, line_in_pieces(&ps, s))
        })
        .collect())
}

/// Supporting line at normalized contact parameter `s in [0,1)`.
pub fn supporting_line_at(body: &ConvexBody, s: f64) -> Result<Hyperplane> {
    if !(0.0..=1.0).contains(&s) {
        return Err(GeomError::Domain(format!(
            "contact parameter must lie in [0,1], got {s}"
        )));
    }
    Ok(line_in_pieces(&pieces(body)?, s))
}

fn line_in_pieces(ps: &[Piece], s: f64) -> Hyperplane {
    let total: f64 = ps.iter().map(Piece::extent).sum();
    let mut rest = s * total;
    for (k, p) in ps.iter().enumerate() {
        let ext = p.extent();
        if rest < ext || k + 1 == ps.len() {
            let t = if ext > 0.0 {
                (rest / ext).clamp(0.0, 1.0)
            } else {
                0.0
            };
            return p.line(t);
        }
        rest -= ext;
    }
    unreachable!("pieces are nonempty")
}

/// Width along `n >= 8` swept supporting lines.
pub fn width_profile(body: &ConvexBody, n: usize, opts: &WidthOptions) -> Result<Vec<(f64, f64)>> {
    if n < 8 {
        return Err(GeomError::Domain(format!(
            "width profile needs n >= 8, got {n}"
        )));
    }
    supporting_lines(body, n)?
        .into_iter()
        .map(|(s, h)| width_given_h(body, &h, opts).map(|w| (s, w.value)))
        .collect()
}

/// Widths along random supporting hyperplanes (any dimension).
pub fn sampled_widths(body: &ConvexBody, n: usize, seed: u64) -> Result<Vec<f64>> {
    let d = body.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        if let Some(w) = direction_width(body, &x) {
            out.push(w);
        }
    }
    Ok(out)
}
