//! Poincaré-disk renderings of planar bodies.

use std::fmt::Write;

use hconvex::body::ConvexBody;
use hconvex::lorentz::poincare;

const SIZE: f64 = 512.0;

/// Boundary samples in Poincaré-disk coordinates.
pub fn boundary_poincare(body: &ConvexBody, n: usize) -> Vec<(f64, f64)> {
    body.boundary_samples(n.max(3), 0)
        .iter()
        .map(|s| {
            let v = poincare(&s.point);
            (v[0], v[1])
        })
        .collect()
}

pub fn xy_csv(pts: &[(f64, f64)]) -> String {
    let mut out = String::from("x,y\n");
    for (x, y) in pts {
        writeln!(out, "{x:.12},{y:.12}").unwrap();
    }
    out
}

pub fn profile_csv(prof: &[(f64, f64)]) -> String {
    let mut out = String::from("param,width\n");
    for (s, w) in prof {
        writeln!(out, "{s:.12},{w:.12}").unwrap();
    }
    out
}

fn to_px(x: f64, y: f64) -> (f64, f64) {
    let half = SIZE / 2.0;
    (half + x * (half - 8.0), half - y * (half - 8.0))
}

/// Unit disk with the body outline.
pub fn svg(pts: &[(f64, f64)]) -> String {
    let half = SIZE / 2.0;
    let mut path = String::new();
    for (i, &(x, y)) in pts.iter().enumerate() {
        let (px, py) = to_px(x, y);
        write!(path, "{}{px:.3},{py:.3} ", if i == 0 { "M" } else { "L" }).unwrap();
    }
    path.push('Z');
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
            "<circle cx=\"{h}\" cy=\"{h}\" r=\"{r}\" fill=\"none\" stroke=\"#888\"/>\n",
            "<path d=\"{p}\" fill=\"#cde\" stroke=\"#124\" stroke-width=\"1.5\"/>\n",
            "</svg>\n"
        ),
        s = SIZE,
        h = half,
        r = half - 8.0,
        p = path.trim_end()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use hconvex::body::make_reuleaux;

    #[test]
    fn samples_stay_in_disk() {
        let pts = boundary_poincare(&make_reuleaux(1.0).unwrap(), 256);
        assert!(pts.len() >= 256);
        assert!(pts.iter().all(|(x, y)| x * x + y * y < 1.0));
        assert!(xy_csv(&pts).starts_with("x,y\n"));
        assert!(svg(&pts).contains("<path d=\"M"));
    }
}
