//! Convex bodies: V-polytopes in H^d and arc-polygons (intersections of
//! disks) in H^2.

use std::f64::consts::{PI, TAU};

use crate::error::{GeomError, Result};
use crate::hull;
use crate::lorentz::{
    circle_intersections, dist, exp_map, frame_angle, frame_dir, klein, klein_inv, lorentz_dot,
    tangent_frame, unit_tangent_toward, HPoint, Hyperplane, LorentzMap, Vector,
};
use crate::optimize::local_maxima;

/// Tolerance for points declared to lie on a circle.
pub const ON_CIRCLE_TOL: f64 = 1e-10;

/// Wraps an angle into `[0, 2pi)`.
pub fn wrap_tau(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_pi(a: f64) -> f64 {
    let r = wrap_tau(a);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Circular arc of H^2 traversed counterclockwise about its center.
#[derive(Debug, Clone, PartialEq)]
pub struct CircArc {
    center: HPoint,
    radius: f64,
    start: HPoint,
    end: HPoint,
    frame: Vec<Vector>,
    theta0: f64,
    sweep: f64,
}

impl CircArc {
    /// Arc from `start` counterclockwise to `end`. Coinciding endpoints give
    /// the full circle.
    pub fn new(center: HPoint, radius: f64, start: HPoint, end: HPoint) -> Result<Self> {
        if center.dim() != 2 || start.dim() != 2 || end.dim() != 2 {
            return Err(GeomError::Unsupported("circular arcs live in H^2".into()));
        }
        if !(radius > 0.0) {
            return Err(GeomError::Domain(format!(
                "arc radius must be positive, got {radius}"
            )));
        }
        let (ds, de) = (dist(&center, &start), dist(&center, &end));
        let tol = ON_CIRCLE_TOL * radius.max(1.0);
        if (ds - radius).abs() > tol || (de - radius).abs() > tol {
            return Err(GeomError::RadiusMismatch {
                ca: ds,
                cb: de,
                expected: radius,
            });
        }
        let frame = tangent_frame(&center);
        let a0 = angle_on(&center, &frame, &start);
        let a1 = angle_on(&center, &frame, &end);
        let mut sweep = wrap_tau(a1 - a0);
        if dist(&start, &end) < 1e-12 || sweep < 1e-14 {
            sweep = TAU;
        }
        Ok(Self {
            center,
            radius,
            start,
            end,
            frame,
            theta0: a0,
            sweep,
        })
    }

    pub fn full(center: HPoint, radius: f64) -> Self {
        let frame = tangent_frame(&center);
        let p = exp_map(&center, &frame[0], radius);
        Self {
            center,
            radius,
            start: p.clone(),
            end: p,
            frame,
            theta0: 0.0,
            sweep: TAU,
        }
    }

    /// Arc from angle `theta0` sweeping `sweep` radians counterclockwise.
    pub fn from_angles(center: HPoint, radius: f64, theta0: f64, sweep: f64) -> Self {
        let frame = tangent_frame(&center);
        let sweep = sweep.clamp(0.0, TAU);
        let start = exp_map(&center, &frame_dir(&frame, theta0), radius);
        let end = exp_map(&center, &frame_dir(&frame, theta0 + sweep), radius);
        Self {
            center,
            radius,
            start,
            end,
            frame,
            theta0,
            sweep,
        }
    }

    pub fn center(&self) -> &HPoint {
        &self.center
    }
    pub fn radius(&self) -> f64 {
        self.radius
    }
    pub fn start(&self) -> &HPoint {
        &self.start
    }
    pub fn end(&self) -> &HPoint {
        &self.end
    }
    pub fn frame(&self) -> &[Vector] {
        &self.frame
    }
    pub fn theta0(&self) -> f64 {
        self.theta0
    }
    pub fn sweep(&self) -> f64 {
        self.sweep
    }
    pub fn is_full(&self) -> bool {
        self.sweep >= TAU
    }
    /// Hyperbolic length.
    pub fn length(&self) -> f64 {
        self.radius.sinh() * self.sweep
    }

    /// Unit radial direction at the center for angle `theta`.
    pub fn radial(&self, theta: f64) -> Vector {
        frame_dir(&self.frame, theta)
    }

    pub fn point_at_angle(&self, theta: f64) -> HPoint {
        exp_map(&self.center, &self.radial(theta), self.radius)
    }

    /// Point at fraction `t in [0,1]` of the sweep.
    pub fn point(&self, t: f64) -> HPoint {
        self.point_at_angle(self.theta0 + t * self.sweep)
    }

    pub fn midpoint(&self) -> HPoint {
        self.point(0.5)
    }

    pub fn angle_of(&self, p: &HPoint) -> f64 {
        angle_on(&self.center, &self.frame, p)
    }

    /// Whether `theta` lies in the swept range.
    pub fn contains_angle(&self, theta: f64) -> bool {
        self.is_full() || wrap_tau(theta - self.theta0) <= self.sweep
    }

    /// Inward normal of the tangent line at angle `theta` (points toward the
    /// center): `-(sinh r c + cosh r radial)`.
    pub fn inward_normal_at(&self, theta: f64) -> Vector {
        -(self.center.coords() * self.radius.sinh() + self.radial(theta) * self.radius.cosh())
    }

    /// Extrema of `<x,u>` over the arc: `(max, theta_max, min, theta_min)`.
    pub fn pairing_extrema(&self, u: &Vector) -> (f64, f64, f64, f64) {
        let (ch, sh) = (self.radius.cosh(), self.radius.sinh());
        let base = ch * self.center.pairing(u);
        let a = lorentz_dot(&self.frame[0], u);
        let b = lorentz_dot(&self.frame[1], u);
        let amp = a.hypot(b);
        let phase = b.atan2(a);
        let value = |th: f64| base + sh * (a * th.cos() + b * th.sin());
        let e0 = self.theta0;
        let e1 = self.theta0 + self.sweep;
        let (mut max, mut tmax) = if value(e0) >= value(e1) {
            (value(e0), e0)
        } else {
            (value(e1), e1)
        };
        let (mut min, mut tmin) = if value(e0) <= value(e1) {
            (value(e0), e0)
        } else {
            (value(e1), e1)
        };
        if self.contains_angle(phase) {
            max = base + sh * amp;
            tmax = self.theta0 + wrap_tau(phase - self.theta0);
        }
        if self.contains_angle(phase + PI) {
            min = base - sh * amp;
            tmin = self.theta0 + wrap_tau(phase + PI - self.theta0);
        }
        (max, tmax, min, tmin)
    }

    /// Farthest point of the arc from `y`: `(distance, angle)`.
    pub fn farthest_from(&self, y: &HPoint) -> (f64, f64) {
        let dc = dist(y, &self.center);
        if dc < 1e-12 {
            return (self.radius, self.theta0);
        }
        let toward = unit_tangent_toward(&self.center, y).expect("distinct points");
        let away = frame_angle(&self.frame, &(-toward));
        if self.contains_angle(away) {
            return (dc + self.radius, away);
        }
        let e0 = self.theta0;
        let e1 = self.theta0 + self.sweep;
        let (d0, d1) = (
            dist(y, &self.point_at_angle(e0)),
            dist(y, &self.point_at_angle(e1)),
        );
        if d0 >= d1 {
            (d0, e0)
        } else {
            (d1, e1)
        }
    }

    pub fn sample(&self, n: usize) -> Vec<HPoint> {
        let n = n.max(2);
        (0..n)
            .map(|k| self.point(k as f64 / (n - 1) as f64))
            .collect()
    }

    pub fn mapped(&self, g: &LorentzMap) -> CircArc {
        let center = g.apply_point(&self.center);
        if self.is_full() {
            let start = g.apply_point(&self.start);
            let mut arc = CircArc::full(center, self.radius);
            arc.theta0 = arc.angle_of(&start);
            arc.start = start.clone();
            arc.end = start;
            return arc;
        }
        let start = g.apply_point(&self.start);
        let end = g.apply_point(&self.end);
        let mut arc = CircArc::from_angles(center, self.radius, 0.0, self.sweep);
        arc.theta0 = arc.angle_of(&start);
        arc.start = start;
        arc.end = end;
        arc
    }
}

fn angle_on(center: &HPoint, frame: &[Vector], p: &HPoint) -> f64 {
    match unit_tangent_toward(center, p) {
        Some(t) => frame_angle(frame, &t),
        None => 0.0,
    }
}

/// Closed ball of H^d.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: HPoint,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: HPoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(GeomError::Domain(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, p: &HPoint, tol: f64) -> bool {
        dist(&self.center, p) <= self.radius + tol
    }

    /// The disk as a single-arc body (H^2 only).
    pub fn to_body(&self) -> Result<ConvexBody> {
        if self.center.dim() != 2 {
            return Err(GeomError::Unsupported(
                "ball bodies are represented in H^2 only".into(),
            ));
        }
        Ok(ConvexBody::ArcPolygon(ArcPolygon::from_parts(
            Vec::new(),
            vec![CircArc::full(self.center.clone(), self.radius)],
        )?))
    }
}

/// Convex V-polytope with its inward facet hyperplanes.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<HPoint>,
    facets: Vec<Hyperplane>,
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn vertices(&self) -> &[HPoint] {
        &self.vertices
    }
    /// Supporting hyperplanes of the facets, body on the nonnegative side.
    /// In H^2 facet `k` is the edge from vertex `k` to vertex `k+1`.
    pub fn facets(&self) -> &[Hyperplane] {
        &self.facets
    }

    fn interior_point(&self) -> HPoint {
        centroid(&self.vertices)
    }
}

/// Arc-polygon of H^2: `arcs[k]` runs counterclockwise from `corners[k]` to
/// `corners[k+1]`. A disk has no corners and a single full arc.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcPolygon {
    corners: Vec<HPoint>,
    arcs: Vec<CircArc>,
    interior: HPoint,
    chords: Vec<Hyperplane>,
}

impl ArcPolygon {
    /// Validates concatenation and convexity of the pieces.
    pub fn from_parts(corners: Vec<HPoint>, arcs: Vec<CircArc>) -> Result<Self> {
        if corners.is_empty() {
            if arcs.len() != 1 || !arcs[0].is_full() {
                return Err(GeomError::Degenerate(
                    "an arc-polygon without corners must be one full circle".into(),
                ));
            }
            let interior = arcs[0].center().clone();
            return Ok(Self {
                corners,
                arcs,
                interior,
                chords: Vec::new(),
            });
        }
        if corners.len() < 2 || arcs.len() != corners.len() {
            return Err(GeomError::Degenerate(format!(
                "arc-polygon needs one arc per corner and at least two corners (got {} corners, {} arcs)",
                corners.len(),
                arcs.len()
            )));
        }
        let n = corners.len();
        for k in 0..n {
            let (s, e) = (&corners[k], &corners[(k + 1) % n]);
            if dist(arcs[k].start(), s) > 1e-9 || dist(arcs[k].end(), e) > 1e-9 || arcs[k].is_full()
            {
                return Err(GeomError::Degenerate(format!(
                    "arc {k} does not join corner {k} to corner {}",
                    (k + 1) % n
                )));
            }
        }
        let mut anchors = corners.clone();
        anchors.extend(arcs.iter().map(|a| a.midpoint()));
        let interior = centroid(&anchors);
        let mut chords = Vec::with_capacity(n);
        for k in 0..n {
            let arc = &arcs[k];
            if dist(&interior, arc.center()) >= arc.radius() {
                return Err(GeomError::Degenerate(format!(
                    "arc {k} does not bulge outward"
                )));
            }
            // chord oriented with the circular segment on the negative side
            let mut chord = Hyperplane::through(&corners[k], &corners[(k + 1) % n], None)?;
            if chord.signed_dist(&arc.midpoint()) > 0.0 {
                chord = chord.flipped();
            }
            if n >= 3 && chord.signed_dist(&interior) <= 0.0 {
                return Err(GeomError::Degenerate(format!(
                    "arc {k} bends inward or runs clockwise"
                )));
            }
            chords.push(chord);
        }
        let body = Self {
            corners,
            arcs,
            interior,
            chords,
        };
        for k in 0..n {
            let (_, _, sweep) = body.corner_fan(k);
            if sweep < -1e-9 {
                return Err(GeomError::Degenerate(format!("corner {k} is reflex")));
            }
        }
        Ok(body)
    }

    pub fn corners(&self) -> &[HPoint] {
        &self.corners
    }
    pub fn arcs(&self) -> &[CircArc] {
        &self.arcs
    }
    pub fn interior_point(&self) -> &HPoint {
        &self.interior
    }

    /// Frame at corner `k` and the fan of inward normals between the arcs
    /// meeting there: `(frame, start angle, signed sweep)`.
    pub fn corner_fan(&self, k: usize) -> (Vec<Vector>, f64, f64) {
        let n = self.corners.len();
        let prev = &self.arcs[(k + n - 1) % n];
        let next = &self.arcs[k];
        let frame = tangent_frame(&self.corners[k]);
        let a = frame_angle(&frame, &prev.inward_normal_at(prev.theta0() + prev.sweep()));
        let b = frame_angle(&frame, &next.inward_normal_at(next.theta0()));
        (frame, a, wrap_pi(b - a))
    }

    fn residual(&self, p: &HPoint) -> f64 {
        let mut best = f64::INFINITY;
        if self.corners.len() >= 3 {
            let r = self
                .chords
                .iter()
                .map(|h| -h.signed_dist(p))
                .fold(0.0, f64::max);
            best = best.min(r);
        }
        for (k, arc) in self.arcs.iter().enumerate() {
            let mut r = (dist(p, arc.center()) - arc.radius()).max(0.0);
            if !arc.is_full() {
                // outer side of the chord, where the circular segment lies
                r = r.max(self.chords[k].signed_dist(p));
            }
            best = best.min(r);
        }
        best
    }
}

/// A convex body of H^d.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    Polytope(Polytope),
    ArcPolygon(ArcPolygon),
}

/// A boundary point with a unit outward normal (tangent at the point).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySample {
    pub point: HPoint,
    pub outward: Vector,
}

/// Result of [`ConvexBody::diameter`].
#[derive(Debug, Clone, PartialEq)]
pub struct Diameter {
    pub value: f64,
    pub pair: (HPoint, HPoint),
}

/// Extreme points: isolated ones plus arcs all of whose points are extreme.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremePoints {
    pub points: Vec<HPoint>,
    pub arcs: Vec<CircArc>,
}

impl ExtremePoints {
    pub fn has_arcs(&self) -> bool {
        !self.arcs.is_empty()
    }

    /// The isolated points followed by `per_arc` samples of every arc.
    pub fn sample(&self, per_arc: usize) -> Vec<HPoint> {
        let mut out = self.points.clone();
        for arc in &self.arcs {
            out.extend(arc.sample(per_arc));
        }
        out
    }
}

/// Lorentz centroid: the normalized sum, which lies in the hull.
pub fn centroid(points: &[HPoint]) -> HPoint {
    let mut s = Vector::zeros(points[0].coords().len());
    for p in points {
        s += p.coords();
    }
    HPoint::normalize(s).expect("sum of future timelike vectors")
}

/// Builds a polytope from any point set, keeping only extreme points.
pub fn make_polytope(points: Vec<HPoint>) -> Result<ConvexBody> {
    let Some(first) = points.first() else {
        return Err(GeomError::Degenerate("no points".into()));
    };
    let d = first.dim();
    if d < 2 {
        return Err(GeomError::Domain("dimension must be at least 2".into()));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(GeomError::DimensionMismatch {
            expected: d,
            got: p.dim(),
        });
    }
    let mut pts: Vec<HPoint> = Vec::with_capacity(points.len());
    for p in points {
        if !pts.iter().any(|q| dist(q, &p) < 1e-12) {
            pts.push(p);
        }
    }
    if pts.len() < d + 1 {
        return Err(GeomError::Degenerate(format!(
            "{} distinct points cannot span H^{d}",
            pts.len()
        )));
    }
    let ks: Vec<Vector> = pts.iter().map(klein).collect();
    if d == 2 {
        let idx = hull::hull_2d(&ks);
        if idx.len() < 3 {
            return Err(GeomError::Degenerate("points are collinear".into()));
        }
        let vertices: Vec<HPoint> = idx.iter().map(|&i| pts[i].clone()).collect();
        let interior = centroid(&vertices);
        let n = vertices.len();
        let facets = (0..n)
            .map(|k| Hyperplane::through(&vertices[k], &vertices[(k + 1) % n], Some(&interior)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(ConvexBody::Polytope(Polytope {
            dim: 2,
            vertices,
            facets,
        }));
    }
    if hull::affine_rank(&ks, 1e-10) < d {
        return Err(GeomError::Degenerate(
            "points lie in a lower-dimensional subspace".into(),
        ));
    }
    let idx = hull::extreme_indices_nd(&ks, 1e-10);
    let vertices: Vec<HPoint> = idx.iter().map(|&i| pts[i].clone()).collect();
    let kept: Vec<Vector> = idx.iter().map(|&i| ks[i].clone()).collect();
    let facets = hull::facets_nd(&kept, 1e-10)
        .into_iter()
        .map(|(a, b)| {
            let mut u = Vector::zeros(d + 1);
            u[0] = -b;
            for i in 0..d {
                u[i + 1] = a[i];
            }
            Hyperplane::from_spacelike(u)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvexBody::Polytope(Polytope {
        dim: d,
        vertices,
        facets,
    }))
}

/// Rhombus with half-diagonals `a` (short, along x1) and `b` (long, along
/// x2). Vertex 0 is the short-diagonal end `e-`, vertex 1 the long-diagonal
/// end `e+`. With `swap`, `a > b` is reordered instead of rejected.
pub fn make_rhombus(a: f64, b: f64, swap: bool) -> Result<ConvexBody> {
    let (a, b) = match (a > b, swap) {
        (true, true) => (b, a),
        (true, false) => {
            return Err(GeomError::Domain(format!(
                "short half-diagonal {a} exceeds long one {b}"
            )))
        }
        _ => (a, b),
    };
    if !(a > 0.0) {
        return Err(GeomError::Domain("half-diagonals must be positive".into()));
    }
    make_polytope(vec![
        HPoint::lift(&[a.sinh(), 0.0]),
        HPoint::lift(&[0.0, b.sinh()]),
        HPoint::lift(&[-a.sinh(), 0.0]),
        HPoint::lift(&[0.0, -b.sinh()]),
    ])
}

/// Convex hull of `d` pairwise perpendicular segments through the origin
/// with the given half-lengths.
pub fn make_crosspolytope(half_lengths: &[f64]) -> Result<ConvexBody> {
    let d = half_lengths.len();
    if d < 2 {
        return Err(GeomError::Domain("a crosspolytope needs d >= 2".into()));
    }
    if let Some(l) = half_lengths.iter().find(|l| !(**l > 0.0)) {
        return Err(GeomError::Domain(format!(
            "half-lengths must be positive, got {l}"
        )));
    }
    let mut pts = Vec::with_capacity(2 * d);
    for (i, l) in half_lengths.iter().enumerate() {
        for s in [1.0, -1.0] {
            let mut x = vec![0.0; d];
            x[i] = s * l.sinh();
            pts.push(HPoint::lift(&x));
        }
    }
    make_polytope(pts)
}

/// Regular `n`-gon inscribed in the circle of radius `r` about the origin.
pub fn make_regular_polygon(n: usize, r: f64) -> Result<ConvexBody> {
    if n < 3 || !(r > 0.0) {
        return Err(GeomError::Domain(format!(
            "regular polygon needs n >= 3 and r > 0 (got n = {n}, r = {r})"
        )));
    }
    make_polytope(
        (0..n)
            .map(|k| HPoint::polar(r, TAU * k as f64 / n as f64))
            .collect(),
    )
}

/// Circumradius of the equilateral triangle with side `side`.
pub fn equilateral_circumradius(side: f64) -> f64 {
    ((2.0 * side.cosh() + 1.0) / 3.0).sqrt().acosh()
}

/// Equilateral triangle of side `side` centered at the origin.
pub fn equilateral_vertices(side: f64) -> Vec<HPoint> {
    let r = equilateral_circumradius(side);
    (0..3)
        .map(|k| HPoint::polar(r, PI / 2.0 + TAU * k as f64 / 3.0))
        .collect()
}

/// Reuleaux-type triangle of width `delta`: the intersection of the three
/// disks of radius `delta` centered at the vertices of an equilateral
/// triangle with side `delta`.
pub fn make_reuleaux(delta: f64) -> Result<ConvexBody> {
    ball_intersection(&equilateral_vertices(delta), delta)
}

/// Intersection of the disks of radius `delta` about `centers` (H^2).
pub fn ball_intersection(centers: &[HPoint], delta: f64) -> Result<ConvexBody> {
    const TOL: f64 = 1e-9;
    if !(delta > 0.0) {
        return Err(GeomError::Domain(format!(
            "radius must be positive, got {delta}"
        )));
    }
    let Some(first) = centers.first() else {
        return Err(GeomError::Empty("no centers".into()));
    };
    if centers.iter().any(|c| c.dim() != 2) || first.dim() != 2 {
        return Err(GeomError::Unsupported(
            "ball intersections are built in H^2 only".into(),
        ));
    }
    let mut cs: Vec<HPoint> = Vec::new();
    for c in centers {
        if !cs.iter().any(|q| dist(q, c) < 1e-12) {
            cs.push(c.clone());
        }
    }
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if dist(&cs[i], &cs[j]) > 2.0 * delta - TOL {
                return Err(GeomError::Empty(format!(
                    "disks {i} and {j} meet in at most a point"
                )));
            }
        }
    }
    if cs.len() == 1 {
        return Ball::new(cs[0].clone(), delta)?.to_body();
    }
    let inside_all = |p: &HPoint| cs.iter().all(|c| dist(c, p) <= delta + TOL);
    let mut corners: Vec<HPoint> = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            for p in circle_intersections(&cs[i], delta, &cs[j], delta, 1e-14) {
                if inside_all(&p) && !corners.iter().any(|q| dist(q, &p) < TOL) {
                    corners.push(p);
                }
            }
        }
    }
    if corners.len() < 2 {
        return Err(GeomError::Empty("the disks have no common interior".into()));
    }
    let z = centroid(&corners);
    let frame = tangent_frame(&z);
    let mut keyed: Vec<(f64, HPoint)> = corners
        .into_iter()
        .map(|p| {
            let a = unit_tangent_toward(&z, &p)
                .map(|t| frame_angle(&frame, &t))
                .unwrap_or(0.0);
            (a, p)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let corners: Vec<HPoint> = keyed.into_iter().map(|(_, p)| p).collect();
    let n = corners.len();
    let mut arcs = Vec::with_capacity(n);
    for k in 0..n {
        let (p, q) = (&corners[k], &corners[(k + 1) % n]);
        let arc = cs
            .iter()
            .filter(|c| (dist(c, p) - delta).abs() < 1e-7 && (dist(c, q) - delta).abs() < 1e-7)
            .filter_map(|c| CircArc::new(c.clone(), delta, p.clone(), q.clone()).ok())
            .filter(|arc| !arc.is_full() && inside_all(&arc.midpoint()))
            .min_by(|a, b| a.sweep().total_cmp(&b.sweep()))
            .ok_or_else(|| {
                GeomError::Degenerate(format!(
                    "no boundary arc joins corners {k} and {}",
                    (k + 1) % n
                ))
            })?;
        arcs.push(arc);
    }
    Ok(ConvexBody::ArcPolygon(ArcPolygon::from_parts(
        corners, arcs,
    )?))
}

impl ConvexBody {
    pub fn dim(&self) -> usize {
        match self {
            Self::Polytope(p) => p.dim,
            Self::ArcPolygon(_) => 2,
        }
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match self {
            Self::Polytope(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_arc_polygon(&self) -> Option<&ArcPolygon> {
        match self {
            Self::ArcPolygon(a) => Some(a),
            _ => None,
        }
    }

    /// A point of the interior.
    pub fn interior_point(&self) -> HPoint {
        match self {
            Self::Polytope(p) => p.interior_point(),
            Self::ArcPolygon(a) => a.interior.clone(),
        }
    }

    /// How far `p` is outside the body (0 inside), measured against the
    /// supporting pieces.
    pub fn outside_residual(&self, p: &HPoint) -> f64 {
        match self {
            Self::Polytope(poly) => poly
                .facets
                .iter()
                .map(|h| -h.signed_dist(p))
                .fold(0.0, f64::max),
            Self::ArcPolygon(a) => a.residual(p),
        }
    }

    pub fn contains(&self, p: &HPoint, tol: f64) -> bool {
        p.dim() == self.dim() && self.outside_residual(p) <= tol
    }

    pub fn extreme_points(&self) -> ExtremePoints {
        match self {
            Self::Polytope(p) => ExtremePoints {
                points: p.vertices.clone(),
                arcs: Vec::new(),
            },
            Self::ArcPolygon(a) => ExtremePoints {
                points: a.corners.clone(),
                arcs: a.arcs.clone(),
            },
        }
    }

    /// Largest distance from `y` to a point of the body, with the point.
    pub fn farthest_from(&self, y: &HPoint) -> (f64, HPoint) {
        match self {
            Self::Polytope(p) => p
                .vertices
                .iter()
                .map(|v| (dist(y, v), v))
                .max_by(|a, b| a.0.total_cmp(&b.0))
                .map(|(d, v)| (d, v.clone()))
                .expect("nonempty"),
            Self::ArcPolygon(a) => {
                let mut best = (f64::NEG_INFINITY, a.interior.clone());
                for c in &a.corners {
                    let d = dist(y, c);
                    if d > best.0 {
                        best = (d, c.clone());
                    }
                }
                for arc in &a.arcs {
                    let (d, th) = arc.farthest_from(y);
                    if d > best.0 {
                        best = (d, arc.point_at_angle(th));
                    }
                }
                best
            }
        }
    }

    pub fn diameter(&self) -> Diameter {
        match self {
            Self::Polytope(p) => {
                let vs = &p.vertices;
                let mut best = Diameter {
                    value: 0.0,
                    pair: (vs[0].clone(), vs[0].clone()),
                };
                for i in 0..vs.len() {
                    for j in i + 1..vs.len() {
                        let d = dist(&vs[i], &vs[j]);
                        if d > best.value {
                            best = Diameter {
                                value: d,
                                pair: (vs[i].clone(), vs[j].clone()),
                            };
                        }
                    }
                }
                best
            }
            Self::ArcPolygon(a) => arc_polygon_diameter(a),
        }
    }

    /// Boundary points with outward normals: `n` points spread by length
    /// over edges or arcs, plus `fan` normals at every corner.
    pub fn boundary_samples(&self, n: usize, fan: usize) -> Vec<BoundarySample> {
        match self {
            Self::Polytope(p) if p.dim == 2 => polygon_samples(p, n, fan),
            Self::Polytope(p) => polytope_samples_nd(p),
            Self::ArcPolygon(a) => arc_polygon_samples(a, n, fan),
        }
    }

    /// Image under an isometry.
    pub fn mapped(&self, g: &LorentzMap) -> Result<ConvexBody> {
        match self {
            Self::Polytope(p) => {
                make_polytope(p.vertices.iter().map(|v| g.apply_point(v)).collect())
            }
            Self::ArcPolygon(a) => Ok(ConvexBody::ArcPolygon(ArcPolygon::from_parts(
                a.corners.iter().map(|c| g.apply_point(c)).collect(),
                a.arcs.iter().map(|arc| arc.mapped(g)).collect(),
            )?)),
        }
    }

    /// Inscribed polygon with `per_arc` segments per arc (polytopes are
    /// returned unchanged).
    pub fn polygonize(&self, per_arc: usize) -> Result<ConvexBody> {
        match self {
            Self::Polytope(_) => Ok(self.clone()),
            Self::ArcPolygon(a) => {
                let mut pts = Vec::new();
                for arc in &a.arcs {
                    let s = arc.sample(per_arc + 1);
                    pts.extend(s.into_iter().take(per_arc));
                }
                make_polytope(pts)
            }
        }
    }

    /// Cuts the body with the half-space `<x,u> >= 0` (polygons only).
    pub fn clip_polygon(&self, keep: &Hyperplane) -> Result<ConvexBody> {
        let Self::Polytope(p) = self else {
            return Err(GeomError::Unsupported(
                "clipping is implemented for polygons".into(),
            ));
        };
        if p.dim != 2 {
            return Err(GeomError::Unsupported(
                "clipping is implemented in H^2".into(),
            ));
        }
        let u = keep.normal();
        let f = |y: &Vector| -u[0] + u[1] * y[0] + u[2] * y[1];
        let ks: Vec<Vector> = p.vertices.iter().map(klein).collect();
        let n = ks.len();
        let mut out = Vec::new();
        for k in 0..n {
            let (a, b) = (&ks[k], &ks[(k + 1) % n]);
            let (fa, fb) = (f(a), f(b));
            if fa >= 0.0 {
                out.push(klein_inv(a)?);
            }
            if (fa >= 0.0) != (fb >= 0.0) {
                let t = fa / (fa - fb);
                out.push(klein_inv(&(a + (b - a) * t))?);
            }
        }
        make_polytope(out)
    }
}

fn arc_polygon_diameter(a: &ArcPolygon) -> Diameter {
    let mut best = Diameter {
        value: 0.0,
        pair: (a.interior.clone(), a.interior.clone()),
    };
    let mut offer = |d: f64, p: &HPoint, q: &HPoint| {
        if d > best.value {
            best = Diameter {
                value: d,
                pair: (p.clone(), q.clone()),
            };
        }
    };
    for i in 0..a.corners.len() {
        for j in i + 1..a.corners.len() {
            offer(
                dist(&a.corners[i], &a.corners[j]),
                &a.corners[i],
                &a.corners[j],
            );
        }
        for arc in &a.arcs {
            let (d, th) = arc.farthest_from(&a.corners[i]);
            offer(d, &a.corners[i], &arc.point_at_angle(th));
        }
    }
    for s in &a.arcs {
        for t in &a.arcs {
            let g = |th: f64| t.farthest_from(&s.point_at_angle(th)).0;
            for (th, d) in local_maxima(g, s.theta0(), s.theta0() + s.sweep(), 64, 1e-12) {
                let p = s.point_at_angle(th);
                let (_, th2) = t.farthest_from(&p);
                offer(d, &p, &t.point_at_angle(th2));
            }
        }
    }
    best
}

fn fan_normals(frame: &[Vector], start: f64, sweep: f64, count: usize) -> Vec<Vector> {
    let count = count.max(1);
    (0..count)
        .map(|k| {
            let t = if count == 1 {
                0.5
            } else {
                k as f64 / (count - 1) as f64
            };
            frame_dir(frame, start + t * sweep)
        })
        .collect()
}

fn polygon_samples(p: &Polytope, n: usize, fan: usize) -> Vec<BoundarySample> {
    let vs = &p.vertices;
    let m = vs.len();
    let lengths: Vec<f64> = (0..m).map(|k| dist(&vs[k], &vs[(k + 1) % m])).collect();
    let total: f64 = lengths.iter().sum();
    let mut out = Vec::with_capacity(n + m * fan);
    for k in 0..m {
        // outward normals at vertex k: negated inward normals of edges k-1, k
        let frame = tangent_frame(&vs[k]);
        let a = frame_angle(&frame, &(-p.facets[(k + m - 1) % m].normal()));
        let b = frame_angle(&frame, &(-p.facets[k].normal()));
        for w in fan_normals(&frame, a, wrap_pi(b - a), fan) {
            out.push(BoundarySample {
                point: vs[k].clone(),
                outward: w,
            });
        }
        let count = ((n as f64) * lengths[k] / total).round().max(1.0) as usize;
        let seg = crate::lorentz::GeodesicSegment::new(vs[k].clone(), vs[(k + 1) % m].clone());
        for j in 1..=count {
            let x = seg.lerp(j as f64 / (count + 1) as f64);
            out.push(BoundarySample {
                point: x,
                outward: -p.facets[k].normal(),
            });
        }
    }
    out
}

fn polytope_samples_nd(p: &Polytope) -> Vec<BoundarySample> {
    let mut out = Vec::new();
    for h in &p.facets {
        let on: Vec<HPoint> = p
            .vertices
            .iter()
            .filter(|v| h.signed_dist(v).abs() < 1e-9)
            .cloned()
            .collect();
        if on.is_empty() {
            continue;
        }
        out.push(BoundarySample {
            point: centroid(&on),
            outward: -h.normal(),
        });
    }
    for v in &p.vertices {
        let mut s = Vector::zeros(p.dim + 1);
        for h in p.facets.iter().filter(|h| h.signed_dist(v).abs() < 1e-9) {
            s -= h.normal();
        }
        // project into the tangent space at v
        let s = &s + v.coords() * v.pairing(&s);
        let n2 = lorentz_dot(&s, &s);
        if n2 > 1e-20 {
            out.push(BoundarySample {
                point: v.clone(),
                outward: s / n2.sqrt(),
            });
        }
    }
    out
}

fn arc_polygon_samples(a: &ArcPolygon, n: usize, fan: usize) -> Vec<BoundarySample> {
    let total: f64 = a.arcs.iter().map(|arc| arc.length()).sum();
    let mut out = Vec::new();
    for (k, arc) in a.arcs.iter().enumerate() {
        if !a.corners.is_empty() {
            let (frame, start, sweep) = a.corner_fan(k);
            for w in fan_normals(&frame, start, sweep, fan) {
                out.push(BoundarySample {
                    point: a.corners[k].clone(),
                    outward: -w,
                });
            }
        }
        let count = ((n as f64) * arc.length() / total).round().max(1.0) as usize;
        for j in 0..count {
            let t = if arc.is_full() {
                j as f64 / count as f64
            } else {
                (j + 1) as f64 / (count + 1) as f64
            };
            let th = arc.theta0() + t * arc.sweep();
            out.push(BoundarySample {
                point: arc.point_at_angle(th),
                outward: -arc.inward_normal_at(th),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_interior_point_filtering() {
        let tri = vec![
            HPoint::polar(0.7, 0.0),
            HPoint::polar(0.7, 2.0),
            HPoint::polar(0.7, 4.0),
        ];
        let body = make_polytope(tri.clone()).unwrap();
        assert_eq!(body.extreme_points().points.len(), 3);
        let mut with_inner = tri;
        with_inner.push(HPoint::polar(0.1, 1.0));
        let body = make_polytope(with_inner).unwrap();
        assert_eq!(body.extreme_points().points.len(), 3);
    }

    #[test]
    fn collinear_points_are_degenerate() {
        let pts = vec![
            HPoint::polar(0.3, 0.0),
            HPoint::polar(0.9, 0.0),
            HPoint::polar(0.5, PI),
        ];
        assert!(matches!(make_polytope(pts), Err(GeomError::Degenerate(_))));
        let flat3 = vec![
            HPoint::lift(&[0.1, 0.0, 0.0]),
            HPoint::lift(&[0.0, 0.1, 0.0]),
            HPoint::lift(&[-0.1, 0.0, 0.0]),
            HPoint::lift(&[0.0, -0.1, 0.0]),
        ];
        assert!(matches!(
            make_polytope(flat3),
            Err(GeomError::Degenerate(_))
        ));
    }

    #[test]
    fn rhombus_layout_and_diameter() {
        let (a, b) = (0.5f64, 1.0f64);
        let body = make_rhombus(a, b, false).unwrap();
        let vs = body.extreme_points().points;
        assert!((vs[0].coords() - HPoint::lift(&[a.sinh(), 0.0]).coords()).norm() < 1e-15);
        assert!((vs[1].coords() - HPoint::lift(&[0.0, b.sinh()]).coords()).norm() < 1e-15);
        assert!((body.diameter().value - 2.0 * b).abs() < 1e-13);
        assert!(make_rhombus(1.0, 0.5, false).is_err());
        assert!(make_rhombus(1.0, 0.5, true).is_ok());
    }

    #[test]
    fn square_rhombus_has_equal_edges() {
        let body = make_rhombus(0.6, 0.6, false).unwrap();
        let vs = body.extreme_points().points;
        let e: Vec<f64> = (0..4).map(|k| dist(&vs[k], &vs[(k + 1) % 4])).collect();
        for x in &e {
            assert!((x - e[0]).abs() < 1e-14);
        }
    }

    #[test]
    fn crosspolytope_matches_rhombus_in_the_plane() {
        let c = make_crosspolytope(&[0.4, 1.1]).unwrap();
        let r = make_rhombus(0.4, 1.1, false).unwrap();
        assert_eq!(c, r);
        let c3 = make_crosspolytope(&[0.3, 0.3, 0.9]).unwrap();
        assert_eq!(c3.extreme_points().points.len(), 6);
        assert!((c3.diameter().value - 1.8).abs() < 1e-13);
        assert_eq!(c3.as_polytope().unwrap().facets().len(), 8);
        assert!(make_crosspolytope(&[0.5]).is_err());
    }

    #[test]
    fn regular_polygon_side_matches_law_of_cosines() {
        let r = 0.8f64;
        for n in [3usize, 4, 5, 7] {
            let body = make_regular_polygon(n, r).unwrap();
            let vs = body.extreme_points().points;
            let want = (r.cosh().powi(2) - r.sinh().powi(2) * (TAU / n as f64).cos()).acosh();
            for k in 0..n {
                assert!((dist(&vs[k], &vs[(k + 1) % n]) - want).abs() < 1e-13);
            }
        }
        let side = 1.0;
        let tri = make_polytope(equilateral_vertices(side)).unwrap();
        let vs = tri.extreme_points().points;
        assert!((dist(&vs[0], &vs[1]) - side).abs() < 1e-13);
    }

    #[test]
    fn membership() {
        let body = make_regular_polygon(5, 0.8).unwrap();
        let vs = body.extreme_points().points;
        for v in &vs {
            assert!(body.contains(v, 1e-12));
        }
        assert!(body.contains(&vs[0].midpoint(&vs[2]), 1e-12));
        // push an edge midpoint outward by 10 tol
        let tol = 1e-6;
        let h = &body.as_polytope().unwrap().facets()[0];
        let m = vs[0].midpoint(&vs[1]);
        let out = exp_map(&m, &(-h.normal()), 10.0 * tol);
        assert!(!body.contains(&out, tol));
        assert!(body.contains(&exp_map(&m, &(-h.normal()), 0.5 * tol), tol));
    }

    #[test]
    fn single_disk_and_lens() {
        let c = HPoint::origin(2);
        let disk = ball_intersection(std::slice::from_ref(&c), 0.7).unwrap();
        let ap = disk.as_arc_polygon().unwrap();
        assert!(ap.corners().is_empty() && ap.arcs()[0].is_full());
        assert!((disk.diameter().value - 1.4).abs() < 1e-9);

        let (p, q) = (HPoint::polar(0.5, 0.0), HPoint::polar(0.5, PI));
        let lens = ball_intersection(&[p.clone(), q.clone()], 1.0).unwrap();
        let ap = lens.as_arc_polygon().unwrap();
        assert_eq!(ap.corners().len(), 2);
        for k in ap.corners() {
            assert!((dist(k, &p) - 1.0).abs() < 1e-12);
            assert!((dist(k, &q) - 1.0).abs() < 1e-12);
        }
        assert!(lens.contains(&HPoint::origin(2), 0.0));
        assert!(!lens.contains(&HPoint::polar(0.6, 0.0), 1e-9));
    }

    #[test]
    fn reuleaux_structure() {
        let body = make_reuleaux(1.0).unwrap();
        let ap = body.as_arc_polygon().unwrap();
        assert_eq!(ap.corners().len(), 3);
        assert_eq!(ap.arcs().len(), 3);
        let tri = equilateral_vertices(1.0);
        // every corner is a triangle vertex and each arc is centered at the
        // opposite vertex
        for (k, arc) in ap.arcs().iter().enumerate() {
            assert!((arc.radius() - 1.0).abs() < 1e-15);
            assert!(tri.iter().any(|t| dist(t, &ap.corners()[k]) < 1e-9));
            assert!(tri.iter().any(|t| dist(t, arc.center()) < 1e-12));
            assert!(dist(arc.center(), &ap.corners()[k]) > 0.5);
        }
        assert!((body.diameter().value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn far_disks_are_empty() {
        let (p, q) = (HPoint::polar(1.0, 0.0), HPoint::polar(1.0, PI));
        assert!(matches!(
            ball_intersection(&[p, q], 1.0),
            Err(GeomError::Empty(_))
        ));
    }

    #[test]
    fn arc_extrema_closed_form() {
        let arc = CircArc::full(HPoint::origin(2), 0.6);
        let u = Vector::from_vec(vec![0.0, 1.0, 0.0]);
        let (mx, _, mn, _) = arc.pairing_extrema(&u);
        assert!((mx - 0.6f64.sinh()).abs() < 1e-15);
        assert!((mn + 0.6f64.sinh()).abs() < 1e-15);
    }

    #[test]
    fn clipping_removes_a_corner() {
        let body = make_regular_polygon(4, 0.9).unwrap();
        let keep = Hyperplane::new(Vector::from_vec(vec![0.0, -1.0, 0.0])).unwrap();
        let half = body.clip_polygon(&keep).unwrap();
        // the cut passes through two opposite vertices
        assert_eq!(half.extreme_points().points.len(), 3);
        for v in half.extreme_points().points {
            assert!(v.coords()[1] <= 1e-12);
        }
    }
}
