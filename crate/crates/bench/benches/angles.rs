use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use thurston_core::oracle::integrate_geodesic;
use thurston_core::{
    evaluate, geodesic_params, geodesic_point, to_origin, GeodesicParams, GeodesicTriangle, GeometryKind, ModelPoint,
    SweepSpec,
};

const S: GeometryKind = GeometryKind::SphereTimesR;
const H: GeometryKind = GeometryKind::HyperbolicTimesR;

fn pt(kind: GeometryKind, x: f64, y: f64, z: f64) -> ModelPoint {
    ModelPoint::new(kind, x, y, z).unwrap()
}

fn primitives(c: &mut Criterion) {
    let g = GeodesicParams::new(0.7, 0.3, 1.8).unwrap();
    let p = pt(H, 3.0, -1.0, 0.5);
    c.bench_function("geodesic_point/h2r", |b| b.iter(|| geodesic_point(H, black_box(&g))));
    c.bench_function("geodesic_params/h2r", |b| b.iter(|| geodesic_params(H, black_box(&p))));
    c.bench_function("to_origin/s2r", |b| {
        b.iter(|| to_origin(S, black_box(&pt(S, 3.0, -2.0, 1.0))))
    });
}

fn triangles(c: &mut Criterion) {
    let mut group = c.benchmark_group("angle_sum");
    for (name, kind, a2, a3) in [
        ("s2r", S, pt(S, 3.0, -2.0, 1.0), pt(S, 2.0, 1.0, 0.0)),
        ("h2r", H, pt(H, 2.0, 1.5, 1.0), pt(H, 3.0, -1.0, 0.0)),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| {
                GeodesicTriangle::new(kind, ModelPoint::base(), black_box(a2), black_box(a3))
                    .unwrap()
                    .angle_sum()
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let spec = SweepSpec::new(S, pt(S, 3.0, -2.0, 1.0), [2.0, 1.0, 0.0]);
    group.bench_function("s2r_512", |b| b.iter(|| evaluate(black_box(&spec)).unwrap()));
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let g = GeodesicParams::new(0.4, -0.2, 2.0).unwrap();
    c.bench_function("integrate_geodesic/s2r", |b| {
        b.iter(|| integrate_geodesic(S, black_box(&g), 100).unwrap())
    });
}

criterion_group!(benches, primitives, triangles, sweeps, oracle);
criterion_main!(benches);
