use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sobolev_bench::{regular_polygon, sample_polygons};
use sobolev_core::geometry::ConvexPolygon;
use sobolev_core::moments::moment;
use sobolev_core::spectral::{lambda_2d, pi_pq};
use sobolev_core::{ConvexBody, ExponentPair};

fn moments(c: &mut Criterion) {
    let mut group = c.benchmark_group("moment");
    for n in [6, 24, 96] {
        let body = regular_polygon(n);
        for beta in [0.5, 2.0] {
            group.bench_with_input(BenchmarkId::new(format!("beta={beta}"), n), &body, |b, body| {
                b.iter(|| moment(black_box(body), beta).unwrap())
            });
        }
    }
    group.finish();
}

fn inradius(c: &mut Criterion) {
    let polys: Vec<ConvexPolygon> = sample_polygons(16).iter().map(|b| b.as_polygon().unwrap().clone()).collect();
    c.bench_function("chebyshev_center/16 random polygons", |b| {
        b.iter(|| {
            for p in &polys {
                black_box(p.chebyshev_center().unwrap());
            }
        })
    });
}

fn one_d(c: &mut Criterion) {
    let mut group = c.benchmark_group("pi_pq");
    group.sample_size(10);
    for (p, q) in [(2.0, 1.0), (3.0, 2.0), (1.5, 1.25)] {
        let pair = ExponentPair::new(p, q).unwrap();
        group.bench_function(format!("({p},{q})/512"), |b| b.iter(|| pi_pq(pair, 512).unwrap()));
    }
    group.finish();
}

fn planar(c: &mut Criterion) {
    let mut group = c.benchmark_group("lambda_2d");
    group.sample_size(10);
    let sq = ConvexBody::unit_square();
    for (p, q) in [(2.0, 2.0), (2.0, 1.0), (3.0, 2.0)] {
        let pair = ExponentPair::new(p, q).unwrap();
        group.bench_function(format!("square ({p},{q}) h=1/32"), |b| {
            b.iter(|| lambda_2d(black_box(&sq), pair, 1.0 / 32.0).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, moments, inradius, one_d, planar);
criterion_main!(benches);
