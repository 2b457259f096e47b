//! One-dimensional bracketing searches and a small Nelder–Mead used by the
//! width optimizers.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section minimization of `f` on `[lo, hi]` until the bracket is
/// shorter than `tol`. Returns the best point seen.
pub fn golden_section_min<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> (f64, f64) {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    let mut iters = 0;
    while (b - a) > tol && iters < 200 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd < best.1 {
                best = (d, fd);
            }
        }
        iters += 1;
    }
    best
}

/// All local minima of `f` on `[lo, hi]`: a uniform scan with `grid`
/// intervals brackets candidates, each refined by golden section. Plateaus
/// report their first point only. Endpoint minima are included.
pub fn local_minima<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    grid: usize,
    tol: f64,
) -> Vec<(f64, f64)> {
    let grid = grid.max(2);
    if hi <= lo {
        return vec![(lo, f(lo))];
    }
    let h = (hi - lo) / grid as f64;
    let xs: Vec<f64> = (0..=grid)
        .map(|i| if i == grid { hi } else { lo + i as f64 * h })
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 0..=grid {
        let left_ok = i == 0 || fs[i] < fs[i - 1];
        let right_ok = i == grid || fs[i] <= fs[i + 1];
        if !(left_ok && right_ok) {
            continue;
        }
        let a = xs[i.saturating_sub(1)];
        let b = xs[(i + 1).min(grid)];
        let (x, fx) = golden_section_min(&f, a, b, tol);
        out.push(if fx < fs[i] { (x, fx) } else { (xs[i], fs[i]) });
    }
    out
}

/// Local maxima counterpart of [`local_minima`].
pub fn local_maxima<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    grid: usize,
    tol: f64,
) -> Vec<(f64, f64)> {
    local_minima(|x| -f(x), lo, hi, grid, tol)
        .into_iter()
        .map(|(x, v)| (x, -v))
        .collect()
}

/// Nelder–Mead simplex minimization from `x0` with initial edge `step`.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    max_evals: usize,
    ftol: f64,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let mut evals = n + 1;
    let combine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect()
    };
    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        if spread.abs() <= ftol {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for j in 0..n {
                centroid[j] += x[j] / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let reflected = combine(&centroid, &worst.0, -1.0);
        let fr = f(&reflected);
        evals += 1;
        if fr < simplex[0].1 {
            let expanded = combine(&centroid, &worst.0, -2.0);
            let fe = f(&expanded);
            evals += 1;
            simplex[n] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 {
                combine(&centroid, &reflected, 0.5)
            } else {
                combine(&centroid, &worst.0, 0.5)
            };
            let fc = f(&contracted);
            evals += 1;
            if fc < worst.1.min(fr) {
                simplex[n] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let x = combine(&best, &vertex.0, 0.5);
                    let fx = f(&x);
                    *vertex = (x, fx);
                }
                evals += n;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, fx) = golden_section_min(|x| (x - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn golden_handles_kinks() {
        let (x, _) = golden_section_min(|x| (x - 0.123).abs(), 0.0, 1.0, 1e-11);
        assert!((x - 0.123).abs() < 1e-10);
    }

    #[test]
    fn scan_finds_every_local_minimum() {
        let mins = local_minima(
            |x| (3.0 * x).cos(),
            0.0,
            2.0 * std::f64::consts::PI,
            64,
            1e-10,
        );
        let xs: Vec<f64> = mins.iter().map(|m| m.0).collect();
        assert_eq!(xs.len(), 3);
        for (k, x) in xs.iter().enumerate() {
            let want = std::f64::consts::PI / 3.0 * (2 * k + 1) as f64;
            assert!((x - want).abs() < 1e-8, "{x} vs {want}");
        }
    }

    #[test]
    fn endpoint_minimum_reported() {
        let mins = local_minima(|x| x, 1.0, 2.0, 8, 1e-10);
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0], (1.0, 1.0));
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let (x, fx) = nelder_mead(
            |v| (1.0 - v[0]).powi(2) + 100.0 * (v[1] - v[0] * v[0]).powi(2),
            &[-1.2, 1.0],
            0.5,
            20_000,
            1e-20,
        );
        assert!(fx < 1e-10, "{fx}");
        assert!((x[0] - 1.0).abs() < 1e-4);
    }
}
