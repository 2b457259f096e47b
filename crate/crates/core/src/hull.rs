//! Euclidean convex-hull helpers on Klein coordinates, where hyperbolic
//! convexity is ordinary convexity.

use itertools::Itertools;
use nalgebra::DMatrix;

use crate::lorentz::Vector;

/// Cross-product threshold for convex position in the plane.
pub const CROSS_TOL: f64 = 1e-10;

fn cross(o: &Vector, a: &Vector, b: &Vector) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Indices of the strictly convex hull vertices, counterclockwise, starting
/// from the smallest input index among them.
pub fn hull_2d(points: &[Vector]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&i, &j| {
        points[i][0]
            .total_cmp(&points[j][0])
            .then(points[i][1].total_cmp(&points[j][1]))
    });
    idx.dedup_by(|a, b| (&points[*a] - &points[*b]).norm() < 1e-14);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && cross(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            ) <= CROSS_TOL
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            ) <= CROSS_TOL
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if let Some(start) = lower
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(k, _)| k)
    {
        lower.rotate_left(start);
    }
    lower
}

/// Affine rank of a point set (0 for a single point).
pub fn affine_rank(points: &[Vector], tol: f64) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let d = points[0].len();
    let m = DMatrix::from_fn(points.len() - 1, d, |r, c| points[r + 1][c] - points[0][c]);
    m.svd(false, false)
        .singular_values
        .iter()
        .filter(|s| **s > tol)
        .count()
}

/// Normal of the affine hyperplane through `d` points of R^d via cofactors;
/// `None` when the points are affinely dependent.
fn cofactor_normal(pts: &[&Vector]) -> Option<Vector> {
    let d = pts[0].len();
    let m = DMatrix::from_fn(d - 1, d, |r, c| pts[r + 1][c] - pts[0][c]);
    let mut n = Vector::zeros(d);
    for i in 0..d {
        let minor = m.clone().remove_column(i);
        let det = if d == 1 { 1.0 } else { minor.determinant() };
        n[i] = if i % 2 == 0 { det } else { -det };
    }
    let norm = n.norm();
    (norm > 1e-12).then(|| n / norm)
}

/// Inward facet inequalities `a.y + b >= 0` of the hull of `points` in R^d
/// (d >= 2), found by brute force over d-subsets. Duplicates are removed.
pub fn facets_nd(points: &[Vector], tol: f64) -> Vec<(Vector, f64)> {
    let d = points[0].len();
    let mut out: Vec<(Vector, f64)> = Vec::new();
    for combo in (0..points.len()).combinations(d) {
        let pts: Vec<&Vector> = combo.iter().map(|&i| &points[i]).collect();
        let Some(mut a) = cofactor_normal(&pts) else {
            continue;
        };
        let mut b = -a.dot(pts[0]);
        let (mut lo, mut hi) = (0.0f64, 0.0f64);
        for p in points {
            let s = a.dot(p) + b;
            lo = lo.min(s);
            hi = hi.max(s);
        }
        if lo < -tol && hi > tol {
            continue;
        }
        if lo < -tol {
            a = -a;
            b = -b;
        }
        if !out
            .iter()
            .any(|(a2, b2)| (a2 - &a).norm() < 1e-9 && (b2 - b).abs() < 1e-9)
        {
            out.push((a, b));
        }
    }
    out
}

/// Indices of the points that are not in the hull of the remaining ones.
/// The input must be free of duplicates.
pub fn extreme_indices_nd(points: &[Vector], tol: f64) -> Vec<usize> {
    let d = points[0].len();
    (0..points.len())
        .filter(|&i| {
            let others: Vec<Vector> = points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if affine_rank(&others, 1e-12) < d {
                return true;
            }
            let facets = facets_nd(&others, tol);
            !facets.iter().all(|(a, b)| a.dot(&points[i]) + b >= -tol)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Vector {
        Vector::from_column_slice(x)
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let pts = vec![
            v(&[0.0, 0.0]),
            v(&[0.5, 0.0]),
            v(&[1.0, 0.0]),
            v(&[0.2, 0.2]),
            v(&[0.0, 1.0]),
        ];
        assert_eq!(hull_2d(&pts), vec![0, 2, 4]);
    }

    #[test]
    fn hull_is_counterclockwise_from_first_index() {
        let pts = vec![
            v(&[0.3, 0.0]),
            v(&[0.0, -0.3]),
            v(&[-0.3, 0.0]),
            v(&[0.0, 0.3]),
        ];
        assert_eq!(hull_2d(&pts), vec![0, 3, 2, 1]);
    }

    #[test]
    fn octahedron_facets_and_extremes() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [0.5, -0.5] {
                let mut p = vec![0.0; 3];
                p[i] = s;
                pts.push(v(&p));
            }
        }
        assert_eq!(facets_nd(&pts, 1e-10).len(), 8);
        pts.push(v(&[0.1, 0.1, 0.1]));
        assert_eq!(extreme_indices_nd(&pts, 1e-10), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn rank_detects_flat_sets() {
        let pts = vec![
            v(&[0.0, 0.0, 0.0]),
            v(&[1.0, 0.0, 0.0]),
            v(&[0.0, 1.0, 0.0]),
            v(&[1.0, 1.0, 0.0]),
        ];
        assert_eq!(affine_rank(&pts, 1e-12), 2);
    }
}
