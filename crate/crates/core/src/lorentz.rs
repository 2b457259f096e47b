//! Lorentzian vector arithmetic and hyperboloid-model primitives.
//!
//! A point of H^d is a future-pointing unit timelike vector of R^{d+1} with
//! the pairing `<x,y> = -x0 y0 + x1 y1 + ... + xd yd`. A totally geodesic
//! hyperplane is the zero set of a unit spacelike normal `u`; the signed
//! distance of `p` to it is `asinh <p,u>`, so the half-space `<x,u> >= 0` is
//! the side the normal points into.

use nalgebra::{DMatrix, DVector};

use crate::error::{GeomError, Result};

pub type Vector = DVector<f64>;

/// Inputs whose self-pairing deviates from the expected value by more than
/// this are rejected.
pub const SHEET_TOL: f64 = 1e-9;
/// Arguments of `acosh`/`asinh` within this distance of a branch point are
/// clamped onto it.
pub const CLAMP_TOL: f64 = 1e-12;

/// `-x0 y0 + sum_{i>=1} xi yi`.
///
/// Panics when the lengths differ.
pub fn lorentz_dot(x: &Vector, y: &Vector) -> f64 {
    assert_eq!(x.len(), y.len(), "lorentz_dot: length mismatch");
    let mut acc = -x[0] * y[0];
    for i in 1..x.len() {
        acc += x[i] * y[i];
    }
    acc
}

/// Lorentzian cross product in R^{2,1}: orthogonal (in the Lorentz sense) to
/// both arguments.
pub fn lorentz_cross(a: &Vector, b: &Vector) -> Vector {
    assert!(
        a.len() == 3 && b.len() == 3,
        "lorentz_cross is defined for H^2 only"
    );
    let c0 = a[1] * b[2] - a[2] * b[1];
    let c1 = a[2] * b[0] - a[0] * b[2];
    let c2 = a[0] * b[1] - a[1] * b[0];
    Vector::from_vec(vec![-c0, c1, c2])
}

/// A point of H^d on the future sheet of the hyperboloid.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint(Vector);

impl HPoint {
    /// Validates and re-normalizes raw model coordinates.
    pub fn new(coords: Vector) -> Result<Self> {
        if coords.len() < 2 {
            return Err(GeomError::Domain(
                "a point needs at least 2 coordinates".into(),
            ));
        }
        let pairing = lorentz_dot(&coords, &coords);
        if !pairing.is_finite() || (pairing + 1.0).abs() > SHEET_TOL || coords[0] <= 0.0 {
            return Err(GeomError::InvalidPoint { pairing });
        }
        Ok(Self(coords / (-pairing).sqrt()))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(Vector::from_column_slice(coords))
    }

    /// Projects any future timelike vector onto the hyperboloid. Used after
    /// composite constructions to remove drift.
    pub fn normalize(v: Vector) -> Result<Self> {
        let pairing = lorentz_dot(&v, &v);
        if !(pairing < 0.0) || v[0] <= 0.0 {
            return Err(GeomError::InvalidPoint { pairing });
        }
        Ok(Self(v / (-pairing).sqrt()))
    }

    /// Lifts spatial coordinates `(x1..xd)` to `(sqrt(1+|x|^2), x1..xd)`.
    pub fn lift(spatial: &[f64]) -> Self {
        let mut v = Vec::with_capacity(spatial.len() + 1);
        let n2: f64 = spatial.iter().map(|x| x * x).sum();
        v.push((1.0 + n2).sqrt());
        v.extend_from_slice(spatial);
        Self(Vector::from_vec(v))
    }

    /// The base point `(1, 0, ..., 0)` of H^d.
    pub fn origin(dim: usize) -> Self {
        let mut v = Vector::zeros(dim + 1);
        v[0] = 1.0;
        Self(v)
    }

    /// Point at distance `r` from the origin of H^2 in direction `angle`.
    pub fn polar(r: f64, angle: f64) -> Self {
        Self(Vector::from_vec(vec![
            r.cosh(),
            r.sinh() * angle.cos(),
            r.sinh() * angle.sin(),
        ]))
    }

    pub fn coords(&self) -> &Vector {
        &self.0
    }

    pub fn into_coords(self) -> Vector {
        self.0
    }

    /// Dimension d of the hyperbolic space the point lives in.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn pairing(&self, v: &Vector) -> f64 {
        lorentz_dot(&self.0, v)
    }

    /// Geodesic midpoint.
    pub fn midpoint(&self, other: &HPoint) -> HPoint {
        HPoint::normalize(&self.0 + &other.0).expect("sum of future timelike vectors")
    }
}

/// An oriented totally geodesic hyperplane `{x : <x,u> = 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    normal: Vector,
}

impl Hyperplane {
    pub fn new(normal: Vector) -> Result<Self> {
        let pairing = lorentz_dot(&normal, &normal);
        if !pairing.is_finite() || (pairing - 1.0).abs() > SHEET_TOL {
            return Err(GeomError::InvalidNormal { pairing });
        }
        Ok(Self {
            normal: normal / pairing.sqrt(),
        })
    }

    /// Normalizes any spacelike vector.
    pub fn from_spacelike(v: Vector) -> Result<Self> {
        let pairing = lorentz_dot(&v, &v);
        if !(pairing > 0.0) || !pairing.is_finite() {
            return Err(GeomError::InvalidNormal { pairing });
        }
        Ok(Self {
            normal: v / pairing.sqrt(),
        })
    }

    /// The line of H^2 through two distinct points, oriented so that `side`
    /// (if given) lies on the nonnegative side.
    pub fn through(p: &HPoint, q: &HPoint, side: Option<&HPoint>) -> Result<Self> {
        let h = Self::from_spacelike(lorentz_cross(p.coords(), q.coords()))
            .map_err(|_| GeomError::Degenerate("coincident points do not span a line".into()))?;
        Ok(match side {
            Some(s) if s.pairing(&h.normal) < 0.0 => h.flipped(),
            _ => h,
        })
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len() - 1
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: -&self.normal,
        }
    }

    pub fn signed_dist(&self, p: &HPoint) -> f64 {
        signed_dist(p, self)
    }
}

/// `{x : <x,u> = sinh t}`: the points at distance `t > 0` from the
/// hyperplane with normal `u`, on its positive side.
#[derive(Debug, Clone, PartialEq)]
pub struct EquidistantSurface {
    normal: Vector,
    offset: f64,
}

impl EquidistantSurface {
    pub fn new(base: &Hyperplane, offset: f64) -> Result<Self> {
        if !(offset > 0.0) || !offset.is_finite() {
            return Err(GeomError::Domain(format!(
                "equidistant offset must be positive, got {offset}"
            )));
        }
        Ok(Self {
            normal: base.normal().clone(),
            offset,
        })
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Signed distance of `p` from the surface, measured along the common
    /// perpendicular (positive beyond the surface).
    pub fn residual(&self, p: &HPoint) -> f64 {
        p.pairing(&self.normal).asinh() - self.offset
    }

    pub fn contains(&self, p: &HPoint, tol: f64) -> bool {
        self.residual(p).abs() <= tol
    }
}

/// Geodesic segment `x(s) = cosh(s) p + sinh(s) w`, `s in [0, |pq|]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSegment {
    p: HPoint,
    q: HPoint,
    length: f64,
    tangent: Vector,
}

impl GeodesicSegment {
    pub fn new(p: HPoint, q: HPoint) -> Self {
        let length = dist(&p, &q);
        let tangent =
            unit_tangent_toward(&p, &q).unwrap_or_else(|| Vector::zeros(p.coords().len()));
        Self {
            p,
            q,
            length,
            tangent,
        }
    }

    pub fn start(&self) -> &HPoint {
        &self.p
    }

    pub fn end(&self) -> &HPoint {
        &self.q
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Unit tangent at the start point, pointing toward the end point.
    pub fn tangent(&self) -> &Vector {
        &self.tangent
    }

    /// Point at arc length `s` from the start.
    pub fn point_at(&self, s: f64) -> HPoint {
        if self.length == 0.0 {
            return self.p.clone();
        }
        exp_map(&self.p, &self.tangent, s)
    }

    /// Point at fraction `t in [0,1]` of the length.
    pub fn lerp(&self, t: f64) -> HPoint {
        self.point_at(t * self.length)
    }

    /// `n >= 2` evenly spaced points including both endpoints.
    pub fn sample(&self, n: usize) -> Vec<HPoint> {
        let n = n.max(2);
        (0..n)
            .map(|k| self.lerp(k as f64 / (n - 1) as f64))
            .collect()
    }
}

/// Hyperbolic distance. Accurate for nearby points (uses the chord form
/// `2 asinh(|p-q|_L / 2)` when the points are close).
pub fn dist(p: &HPoint, q: &HPoint) -> f64 {
    let c = -lorentz_dot(p.coords(), q.coords());
    if c < 1.5 {
        let diff = p.coords() - q.coords();
        let chord2 = lorentz_dot(&diff, &diff).max(0.0);
        2.0 * (chord2.sqrt() / 2.0).asinh()
    } else {
        c.acosh()
    }
}

/// Distance between raw vectors, rejecting pairs whose pairing is not a
/// valid hyperbolic cosine.
pub fn dist_raw(x: &Vector, y: &Vector) -> Result<f64> {
    let c = -lorentz_dot(x, y);
    if !c.is_finite() || c < 1.0 - SHEET_TOL {
        return Err(GeomError::InvalidPoint { pairing: -c });
    }
    if c <= 1.0 {
        return Ok(0.0);
    }
    Ok(c.acosh())
}

/// `asinh <p,u>`: positive on the side the normal points into.
pub fn signed_dist(p: &HPoint, h: &Hyperplane) -> f64 {
    p.pairing(h.normal()).asinh()
}

/// Relative position of two hyperplanes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HyperplaneRelation {
    Intersecting,
    /// Common ideal point, distance zero.
    Parallel,
    Ultraparallel {
        distance: f64,
    },
}

impl HyperplaneRelation {
    pub fn distance(&self) -> f64 {
        match self {
            Self::Ultraparallel { distance } => *distance,
            _ => 0.0,
        }
    }
}

pub fn classify_hyperplanes(h1: &Hyperplane, h2: &Hyperplane) -> HyperplaneRelation {
    let c = lorentz_dot(h1.normal(), h2.normal()).abs();
    if (c - 1.0).abs() <= CLAMP_TOL {
        HyperplaneRelation::Parallel
    } else if c < 1.0 {
        HyperplaneRelation::Intersecting
    } else {
        HyperplaneRelation::Ultraparallel {
            distance: c.acosh(),
        }
    }
}

/// Foot of the perpendicular from `p` to `h`.
pub fn project_onto(p: &HPoint, h: &Hyperplane) -> HPoint {
    let s = p.pairing(h.normal());
    HPoint::normalize(p.coords() - h.normal() * s).expect("projection stays timelike")
}

/// Height of a Lambert quadrilateral with legs `a` and `b` meeting at a right
/// angle: the distance from the end of the `b` leg to the line through the end
/// of the `a` leg orthogonal to it, `asinh(sinh a cosh b)`.
pub fn lambert_height(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(GeomError::Domain(format!(
            "lambert_height needs positive legs, got ({a}, {b})"
        )));
    }
    Ok((a.sinh() * b.cosh()).asinh())
}

/// Klein (projective) coordinates `(x1/x0, ..., xd/x0)`.
pub fn klein(p: &HPoint) -> Vector {
    let c = p.coords();
    Vector::from_iterator(c.len() - 1, c.iter().skip(1).map(|x| x / c[0]))
}

pub fn klein_inv(y: &Vector) -> Result<HPoint> {
    let n2 = y.norm_squared();
    if n2 >= 1.0 || !n2.is_finite() {
        return Err(GeomError::OutsideModel { norm: n2.sqrt() });
    }
    let s = 1.0 / (1.0 - n2).sqrt();
    let mut v = Vector::zeros(y.len() + 1);
    v[0] = s;
    for i in 0..y.len() {
        v[i + 1] = y[i] * s;
    }
    Ok(HPoint(v))
}

/// Poincaré-ball coordinates `x_i / (1 + x0)`.
pub fn poincare(p: &HPoint) -> Vector {
    let c = p.coords();
    Vector::from_iterator(c.len() - 1, c.iter().skip(1).map(|x| x / (1.0 + c[0])))
}

/// `cosh(s) p + sinh(s) w` for a unit tangent `w` at `p`.
pub fn exp_map(p: &HPoint, w: &Vector, s: f64) -> HPoint {
    HPoint::normalize(p.coords() * s.cosh() + w * s.sinh()).expect("geodesic stays on the sheet")
}

/// Unit tangent at `p` pointing toward `q`, `None` when they coincide.
pub fn unit_tangent_toward(p: &HPoint, q: &HPoint) -> Option<Vector> {
    let v = q.coords() + p.coords() * p.pairing(q.coords());
    let n2 = lorentz_dot(&v, &v);
    if n2 <= 1e-30 {
        return None;
    }
    Some(v / n2.sqrt())
}

/// Lorentz boost carrying the origin to `p` (columns: image of the standard
/// basis). Orientation preserving.
pub fn boost_to(p: &HPoint) -> DMatrix<f64> {
    let c = p.coords();
    let n = c.len();
    let mut m = DMatrix::zeros(n, n);
    m[(0, 0)] = c[0];
    for i in 1..n {
        m[(i, 0)] = c[i];
        m[(0, i)] = c[i];
        for j in 1..n {
            m[(i, j)] = if i == j { 1.0 } else { 0.0 } + c[i] * c[j] / (1.0 + c[0]);
        }
    }
    m
}

/// Orthonormal spacelike frame of the tangent space at `p`, obtained by
/// boosting the standard frame at the origin. In H^2 the pair `(e1, e2)` is
/// positively oriented.
pub fn tangent_frame(p: &HPoint) -> Vec<Vector> {
    let m = boost_to(p);
    (1..m.ncols()).map(|j| m.column(j).into_owned()).collect()
}

/// Angle of the tangent vector `v` in an H^2 frame.
pub fn frame_angle(frame: &[Vector], v: &Vector) -> f64 {
    lorentz_dot(v, &frame[1]).atan2(lorentz_dot(v, &frame[0]))
}

/// `cos(theta) e1 + sin(theta) e2`.
pub fn frame_dir(frame: &[Vector], theta: f64) -> Vector {
    &frame[0] * theta.cos() + &frame[1] * theta.sin()
}

/// Intersection points of two circles of H^2. Returns zero, one (tangency
/// within `tol` on the squared transverse coordinate) or two points.
pub fn circle_intersections(c1: &HPoint, r1: f64, c2: &HPoint, r2: f64, tol: f64) -> Vec<HPoint> {
    let g = lorentz_dot(c1.coords(), c2.coords());
    let sh2 = g * g - 1.0;
    if sh2 <= 1e-24 {
        return Vec::new();
    }
    let (ch1, ch2) = (r1.cosh(), r2.cosh());
    let beta = -(ch2 + ch1 * g) / sh2;
    let alpha = ch1 + beta * g;
    let gamma2 = alpha * alpha + beta * beta - 2.0 * alpha * beta * g - 1.0;
    let base = c1.coords() * alpha + c2.coords() * beta;
    let n = lorentz_cross(c1.coords(), c2.coords());
    let n = &n / lorentz_dot(&n, &n).sqrt();
    if gamma2 < -tol {
        Vec::new()
    } else if gamma2 <= tol {
        HPoint::normalize(base).into_iter().collect()
    } else {
        let g = gamma2.sqrt();
        [g, -g]
            .iter()
            .filter_map(|s| HPoint::normalize(&base + &n * *s).ok())
            .collect()
    }
}

/// An orientation-preserving isometry of H^d, stored as a Lorentz matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzMap(DMatrix<f64>);

impl LorentzMap {
    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim + 1, dim + 1))
    }

    /// Translation carrying the origin to `p`.
    pub fn translation_to(p: &HPoint) -> Self {
        Self(boost_to(p))
    }

    /// Rotation by `angle` in the spatial coordinate plane `(i, j)`, `1 <= i < j <= d`.
    pub fn rotation(dim: usize, i: usize, j: usize, angle: f64) -> Self {
        let mut m = DMatrix::identity(dim + 1, dim + 1);
        let (c, s) = (angle.cos(), angle.sin());
        m[(i, i)] = c;
        m[(j, j)] = c;
        m[(i, j)] = -s;
        m[(j, i)] = s;
        Self(m)
    }

    pub fn then(&self, next: &LorentzMap) -> Self {
        Self(&next.0 * &self.0)
    }

    pub fn inverse(&self) -> Self {
        // J M^T J
        let n = self.0.nrows();
        let mut j = DMatrix::identity(n, n);
        j[(0, 0)] = -1.0;
        Self(&j * self.0.transpose() * &j)
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        &self.0 * v
    }

    pub fn apply_point(&self, p: &HPoint) -> HPoint {
        HPoint::normalize(self.apply(p.coords())).expect("isometry preserves the sheet")
    }

    pub fn apply_hyperplane(&self, h: &Hyperplane) -> Hyperplane {
        Hyperplane::from_spacelike(self.apply(h.normal()))
            .expect("isometry preserves spacelike normals")
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }
}
