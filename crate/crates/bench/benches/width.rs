use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hconvex::body::{make_crosspolytope, make_regular_polygon, make_reuleaux, make_rhombus};
use hconvex::structure::{is_complete, reduced_probe};
use hconvex::suite::random_polygons;
use hconvex::width::{max_width, supporting_lines, thickness, width_given_h};
use hconvex::WidthOptions;

fn planar(c: &mut Criterion) {
    let o = WidthOptions::default();
    let rhombus = make_rhombus(0.5, 1.5, false).unwrap();
    let reuleaux = make_reuleaux(1.0).unwrap();
    let polygon = random_polygons(1, 7).pop().unwrap();
    let line = supporting_lines(&polygon, 16).unwrap()[5].1.clone();

    c.bench_function("width_given_h/polygon", |b| {
        b.iter(|| width_given_h(black_box(&polygon), &line, &o).unwrap())
    });
    c.bench_function("thickness/rhombus", |b| {
        b.iter(|| thickness(black_box(&rhombus), &o).unwrap())
    });
    c.bench_function("thickness/reuleaux", |b| {
        b.iter(|| thickness(black_box(&reuleaux), &o).unwrap())
    });
    c.bench_function("max_width/polygon", |b| {
        b.iter(|| max_width(black_box(&polygon), &o).unwrap())
    });
    c.bench_function("is_complete/reuleaux", |b| {
        b.iter(|| is_complete(black_box(&reuleaux), 1e-6))
    });
    let pentagon = make_regular_polygon(5, 0.8).unwrap();
    c.bench_function("reduced_probe/pentagon", |b| {
        b.iter(|| reduced_probe(black_box(&pentagon), 1e-3, 1e-7, &o).unwrap())
    });
}

fn spatial(c: &mut Criterion) {
    let o = WidthOptions::default();
    let cross = make_crosspolytope(&[0.3, 0.3, 0.9]).unwrap();
    let mut g = c.benchmark_group("crosspolytope");
    g.sample_size(10);
    g.bench_function("max_width", |b| {
        b.iter(|| max_width(black_box(&cross), &o).unwrap())
    });
    g.bench_function("thickness", |b| {
        b.iter(|| thickness(black_box(&cross), &o).unwrap())
    });
    g.finish();
}

criterion_group!(benches, planar, spatial);
criterion_main!(benches);
