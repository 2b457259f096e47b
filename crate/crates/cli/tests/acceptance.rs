//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::process::{Command, ExitCode};
use std::time::Instant;

use hconvex::body::{
    equilateral_vertices, make_polytope, make_regular_polygon, make_reuleaux, make_rhombus, Ball,
    ConvexBody,
};
use hconvex::lorentz::project_onto;
use hconvex::structure::{
    claim_unique_contact, cluster_count, extreme_point_dichotomy, is_complete,
    is_constant_diameter, lemma_spindle_check, reduced_probe, rhombus_threshold_scan,
    theorem2_pipeline, DichotomyCase, Implication, ScanOptions, CLUSTER_RADIUS,
};
use hconvex::suite::random_polygons;
use hconvex::width::{max_width, supporting_lines, thickness, width_given_h, WidthOptions};
use hconvex::{lambert_height, signed_dist, HPoint, Hyperplane, Vector};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn opts() -> WidthOptions {
    WidthOptions::default()
}

fn reuleaux() -> ConvexBody {
    make_reuleaux(1.0).unwrap()
}

fn unit_ball() -> ConvexBody {
    Ball::new(HPoint::origin(2), 0.5)
        .unwrap()
        .to_body()
        .unwrap()
}

fn c1_lambert() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 1..=20 {
        for j in 1..=20 {
            let (a, b) = (0.1 * i as f64, 0.1 * j as f64);
            // e+ = (cosh b, 0, sinh b); H is the line through e- = (cosh a, sinh a, 0)
            // perpendicular to the x1 axis.
            let e_plus = HPoint::from_slice(&[b.cosh(), 0.0, b.sinh()]).unwrap();
            let h = Hyperplane::new(Vector::from_vec(vec![-a.sinh(), -a.cosh(), 0.0])).unwrap();
            worst = worst.max((lambert_height(a, b).unwrap() - signed_dist(&e_plus, &h)).abs());
        }
    }
    ensure(
        worst < 1e-12,
        format!("max error {worst:.3e} over 400 grid points"),
    )
}

fn c2_max_width() -> Outcome {
    let mut worst: f64 = 0.0;
    for body in random_polygons(100, 7) {
        let m = max_width(&body, &opts()).map_err(|e| e.to_string())?;
        worst = worst.max((m.value - body.diameter().value).abs());
    }
    let cross = hconvex::body::make_crosspolytope(&[0.3, 0.3, 0.9]).unwrap();
    let m = max_width(&cross, &opts()).map_err(|e| e.to_string())?;
    let cross_err = (m.value - cross.diameter().value).abs();
    ensure(
        worst < 1e-6 && cross_err < 1e-4,
        format!("polygons {worst:.3e}, crosspolytope {cross_err:.3e}"),
    )
}

fn c3_ball() -> Outcome {
    let mut worst: f64 = 0.0;
    for r in [0.25, 0.5, 1.0] {
        let body = Ball::new(HPoint::origin(2), r).unwrap().to_body().unwrap();
        for (_, h) in supporting_lines(&body, 1000).unwrap() {
            worst = worst.max((width_given_h(&body, &h, &opts()).unwrap().value - 2.0 * r).abs());
        }
        for v in [
            thickness(&body, &opts()).unwrap().value,
            max_width(&body, &opts()).unwrap().value,
            body.diameter().value,
        ] {
            worst = worst.max((v - 2.0 * r).abs());
        }
    }
    ensure(worst < 1e-9, format!("max error {worst:.3e}"))
}

fn c4_rhombus_thickness() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (a, b) in [(0.4, 1.2), (0.5, 1.5)] {
        let body = make_rhombus(a, b, false).unwrap();
        let t = thickness(&body, &opts()).unwrap();
        let err = (t.value - lambert_height(a, b).unwrap()).abs();
        let n = t.witness.hyperplane.normal();
        let at_short_end =
            t.witness.contact.iter().any(|p| {
                p.coords()[2].abs() < 1e-8 && (p.coords()[1].abs() - a.sinh()).abs() < 1e-8
            });
        let pass = err < 1e-8 && n[2].abs() < 1e-8 && at_short_end;
        ok &= pass;
        lines.push(format!(
            "({a},{b}): thickness {:.10} err {err:.3e}{}",
            t.value,
            if pass { "" } else { " [off]" }
        ));
    }
    ensure(ok, lines.join("; "))
}

fn c5_dichotomy() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut bodies: Vec<(String, ConvexBody)> = [5, 7, 9]
        .iter()
        .map(|&n| (format!("{n}-gon"), make_regular_polygon(n, 0.8).unwrap()))
        .collect();
    for (a, b) in [(0.5, 1.5), (0.4, 2.0)] {
        bodies.push((
            format!("rhombus({a},{b})"),
            make_rhombus(a, b, false).unwrap(),
        ));
    }
    for (name, body) in &bodies {
        for v in body.extreme_points().points {
            let rep = extreme_point_dichotomy(body, &v, 1e-6, &opts())
                .map_err(|e| format!("{name}: {e}"))?;
            if !rep.found || rep.residual >= 1e-6 {
                return Err(format!(
                    "{name}: no strip at a vertex, residual {:.3e}",
                    rep.residual
                ));
            }
            worst = worst.max(rep.residual);
        }
    }
    let rh = make_rhombus(0.5, 1.5, false).unwrap();
    let vs = rh.extreme_points().points;
    let lo = extreme_point_dichotomy(&rh, &vs[0], 1e-6, &opts())
        .unwrap()
        .case;
    let hi = extreme_point_dichotomy(&rh, &vs[1], 1e-6, &opts())
        .unwrap()
        .case;
    ensure(
        lo == Some(DichotomyCase::OnHyperplane) && hi == Some(DichotomyCase::OnEquidistant),
        format!(
            "max residual {worst:.3e}; rhombus e- {:?}, e+ {:?}",
            lo.map(|c| c.label()),
            hi.map(|c| c.label())
        ),
    )
}

fn c6_pipeline() -> Outcome {
    let run = |b: &ConvexBody| theorem2_pipeline(b, 1e-6, &opts()).unwrap();
    let re = run(&reuleaux());
    let ball = run(&unit_ball());
    let rh = run(&make_rhombus(0.5, 1.5, false).unwrap());
    let re_ok = re.completeness.is_complete
        && re.constant_width.constant
        && (re.constant_width.delta - 1.0).abs() < 1e-6;
    let ball_ok = ball.completeness.is_complete && ball.constant_width.constant;
    let rh_ok = !rh.completeness.is_complete && !rh.constant_width.constant;
    let converse_ok = [&re, &ball, &rh]
        .iter()
        .all(|r| r.converse != Implication::Fails && r.forward != Implication::Fails);
    ensure(
        re_ok && ball_ok && rh_ok && converse_ok,
        format!(
            "reuleaux width {:.9} (spread {:.2e}); ball {}; rhombus complete={} constant={}",
            re.constant_width.delta,
            re.constant_width.max - re.constant_width.min,
            if ball_ok { "ok" } else { "off" },
            rh.completeness.is_complete,
            rh.constant_width.constant
        ),
    )
}

fn c7_claim() -> Outcome {
    let body = reuleaux();
    let mut worst = 0;
    for (_, h) in supporting_lines(&body, 1000).unwrap() {
        worst = worst.max(claim_unique_contact(&body, &h, &opts()).unwrap().count);
    }
    ensure(worst == 1, format!("1000 lines, max cluster count {worst}"))
}

fn c8_lemma() -> Outcome {
    let re = lemma_spindle_check(&reuleaux(), 1.0, 1000, 7).unwrap();
    let ball = lemma_spindle_check(&unit_ball(), 1.0, 1000, 7).unwrap();
    let tri = lemma_spindle_check(
        &make_polytope(equilateral_vertices(1.0)).unwrap(),
        1.0,
        1000,
        7,
    )
    .unwrap();
    ensure(
        re.passed && ball.passed && !tri.passed,
        format!(
            "reuleaux {:.2e}, ball {:.2e}, triangle violation {:.2e}",
            re.worst_residual, ball.worst_residual, tri.worst_residual
        ),
    )
}

fn c9_projection() -> Outcome {
    let mut used = 0;
    let mut worst: f64 = 0.0;
    let pool = random_polygons(400, 7);
    for body in &pool {
        if used == 100 {
            break;
        }
        let t = thickness(body, &opts()).unwrap();
        if cluster_count(&t.witness.farthest, CLUSTER_RADIUS) != 1 {
            continue;
        }
        used += 1;
        let h = &t.witness.hyperplane;
        let p = project_onto(&t.witness.farthest[0], h);
        worst = worst.max(signed_dist(&p, h).abs().max(body.outside_residual(&p)));
    }
    ensure(
        used == 100 && worst < 1e-6,
        format!("{used} polygons, max residual {worst:.3e}"),
    )
}

fn c10_constant_diameter() -> Outcome {
    let mut worst: f64 = 0.0;
    for body in [reuleaux(), unit_ball()] {
        let comp = is_complete(&body, 1e-6);
        if !comp.is_complete {
            return Err("test body not complete".into());
        }
        let rep = is_constant_diameter(&body, comp.delta, 1e-6).map_err(|e| e.to_string())?;
        if !rep.holds {
            return Err(format!("shortfall {:.3e}", rep.worst_residual));
        }
        worst = worst.max(rep.worst_residual);
    }
    ensure(true, format!("max shortfall {worst:.3e}"))
}

fn c11_threshold() -> Outcome {
    let scan = ScanOptions::default();
    let s = rhombus_threshold_scan(0.4, 0.4, 3.0, 26, &scan, &opts()).map_err(|e| e.to_string())?;
    let width = s.bracket.map(|(lo, hi)| hi - lo).unwrap_or(f64::INFINITY);
    let readings = s
        .readings
        .iter()
        .map(|r| {
            format!(
                "{} = {:.6} ({})",
                r.label,
                r.value,
                if r.matches { "matches" } else { "no match" }
            )
        })
        .collect::<Vec<_>>()
        .join(", ");
    // sanity of the classifier at the ends of the range
    let square = reduced_probe(
        &make_rhombus(0.4, 0.4, false).unwrap(),
        scan.eps_cap,
        scan.tol,
        &opts(),
    )
    .unwrap();
    ensure(
        s.monotone && width <= scan.resolution + 1e-15 && !square.reduced_consistent(),
        format!(
            "b* = {:.4} (bracket width {width:.1e}); {readings}",
            s.b_star.unwrap_or(f64::NAN)
        ),
    )
}

fn c12_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hconvex"))
            .args(["verify", "--suite", "all", "--seed", "7"])
            .env_remove("HCONVEX_SEED")
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let codes = (a.status.code(), b.status.code());
    ensure(
        codes == (Some(0), Some(0)) && a.stdout == b.stdout && !a.stdout.is_empty(),
        format!(
            "exit codes {codes:?}, {} bytes, identical = {}",
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1 lambert closed form", c1_lambert),
        ("2 max width equals diameter", c2_max_width),
        ("3 ball sanity", c3_ball),
        ("4 rhombus thickness", c4_rhombus_thickness),
        ("5 extreme-point dichotomy", c5_dichotomy),
        ("6 complete iff constant width", c6_pipeline),
        ("7 unique farthest contact", c7_claim),
        ("8 spindle containment", c8_lemma),
        ("9 projection of the farthest point", c9_projection),
        ("10 constant diameter", c10_constant_diameter),
        ("11 rhombus threshold scan", c11_threshold),
        ("12 deterministic verify report", c12_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS  {name}: {d} [{secs:.1}s]"),
            Err(d) => {
                failed += 1;
                println!("FAIL  {name}: {d} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
