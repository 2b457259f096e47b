use hconvex::body::{ball_intersection, make_polytope, ConvexBody};
use hconvex::lorentz::project_onto;
use hconvex::suite::random_polygons;
use hconvex::width::{max_width, supporting_lines, thickness, width_given_h};
use hconvex::{dist, signed_dist, GeodesicSegment, HPoint, LorentzMap, WidthOptions};
use proptest::prelude::*;
use std::f64::consts::TAU;

fn polygon(seed: u64) -> ConvexBody {
    random_polygons(1, seed).pop().unwrap()
}

fn isometry(angle: f64, r: f64, phi: f64) -> LorentzMap {
    LorentzMap::rotation(2, 1, 2, angle).then(&LorentzMap::translation_to(&HPoint::polar(r, phi)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn widths_are_isometry_invariant(seed in 0u64..10_000, angle in 0.0..TAU, r in 0.0..1.5f64, phi in 0.0..TAU) {
        let body = polygon(seed);
        let moved = body.mapped(&isometry(angle, r, phi)).unwrap();
        let o = WidthOptions::default();
        prop_assert!((thickness(&body, &o).unwrap().value - thickness(&moved, &o).unwrap().value).abs() < 1e-8);
        prop_assert!((max_width(&body, &o).unwrap().value - max_width(&moved, &o).unwrap().value).abs() < 1e-8);
        prop_assert!((body.diameter().value - moved.diameter().value).abs() < 1e-9);
    }

    #[test]
    fn every_width_lies_between_thickness_and_max(seed in 0u64..10_000) {
        let body = polygon(seed);
        let o = WidthOptions::default();
        let lo = thickness(&body, &o).unwrap().value;
        let hi = max_width(&body, &o).unwrap().value;
        prop_assert!(lo <= hi + 1e-12);
        for (_, h) in supporting_lines(&body, 64).unwrap() {
            let w = width_given_h(&body, &h, &o).unwrap().value;
            prop_assert!(w >= lo - 1e-9 && w <= hi + 1e-9, "{lo} <= {w} <= {hi}");
        }
    }

    #[test]
    fn hull_is_idempotent(seed in 0u64..10_000) {
        let body = polygon(seed);
        let verts = body.as_polytope().unwrap().vertices().to_vec();
        let again = make_polytope(verts.clone()).unwrap();
        let verts2 = again.as_polytope().unwrap().vertices();
        prop_assert_eq!(verts.len(), verts2.len());
        for v in &verts {
            prop_assert!(verts2.iter().any(|w| dist(v, w) < 1e-12));
        }
    }

    #[test]
    fn geodesic_segments_stay_inside(seed in 0u64..10_000, i in 0usize..256, j in 0usize..256, t in 0.0..1.0f64) {
        let body = polygon(seed);
        let samples = body.boundary_samples(256, 0);
        let (p, q) = (&samples[i % samples.len()].point, &samples[j % samples.len()].point);
        let x = GeodesicSegment::new(p.clone(), q.clone()).lerp(t);
        prop_assert!(body.contains(&x, 1e-9));
    }

    #[test]
    fn boundary_pairs_respect_the_diameter(seed in 0u64..10_000) {
        let body = polygon(seed);
        let d = body.diameter().value;
        let samples = body.boundary_samples(96, 0);
        for p in &samples {
            for q in &samples {
                prop_assert!(dist(&p.point, &q.point) <= d + 1e-12);
            }
        }
    }

    #[test]
    fn ball_intersections_stay_within_delta(xs in prop::collection::vec((0.0..0.4f64, 0.0..TAU), 2..6), delta in 0.8..1.5f64) {
        let centers: Vec<HPoint> = xs.iter().map(|&(r, a)| HPoint::polar(r, a)).collect();
        let body = ball_intersection(&centers, delta).unwrap();
        for c in &centers {
            prop_assert!(body.farthest_from(c).0 <= delta + 1e-9);
        }
        for s in body.boundary_samples(128, 0) {
            prop_assert!(centers.iter().all(|c| dist(c, &s.point) <= delta + 1e-9));
        }
    }

    #[test]
    fn distance_is_a_metric(a in (0.0..2.0f64, 0.0..TAU), b in (0.0..2.0f64, 0.0..TAU), c in (0.0..2.0f64, 0.0..TAU)) {
        let (p, q, r) = (HPoint::polar(a.0, a.1), HPoint::polar(b.0, b.1), HPoint::polar(c.0, c.1));
        prop_assert!((dist(&p, &q) - dist(&q, &p)).abs() < 1e-12);
        prop_assert!(dist(&p, &r) <= dist(&p, &q) + dist(&q, &r) + 1e-9);
        prop_assert!(dist(&p, &p) < 1e-7);
    }

    #[test]
    fn projections_land_on_the_hyperplane(seed in 0u64..10_000, k in 0usize..1000, a in 0.0..2.0f64, phi in 0.0..TAU) {
        let body = polygon(seed);
        let lines = supporting_lines(&body, 1000).unwrap();
        let h = &lines[k].1;
        let p = HPoint::polar(a, phi);
        let foot = project_onto(&p, h);
        prop_assert!(signed_dist(&foot, h).abs() < 1e-10);
        prop_assert!((dist(&p, &foot) - signed_dist(&p, h).abs()).abs() < 1e-7);
    }
}
