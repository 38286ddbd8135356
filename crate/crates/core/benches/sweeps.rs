//! Sequential against parallel execution of the data-parallel sweeps.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use skoda_core::closure::monomial_closure_of_power;
use skoda_core::frobenius::{frobenius_closed_scan, ScanOptions};
use skoda_core::ideal_ops::{QuotientRing, RingIdeal};
use skoda_core::par;
use skoda_core::spread::random_minimal_reduction;

fn modes() -> [(&'static str, bool); 2] {
    [("sequential", true), ("parallel", false)]
}

fn run<R>(sequential: bool, f: impl FnOnce() -> R) -> R {
    if sequential {
        par::sequential(f)
    } else {
        f()
    }
}

fn closure_sweep(c: &mut Criterion) {
    let r = Arc::new(QuotientRing::polynomial_ring(5, &["x", "y", "z"]).unwrap());
    let i = RingIdeal::parse(&r, &["x^4", "y^3*z", "x*y*z^2", "z^4"]).unwrap();
    let mut g = c.benchmark_group("monomial_closure_of_power");
    for (name, seq) in modes() {
        g.bench_function(BenchmarkId::new(name, "k=4"), |b| {
            b.iter(|| run(seq, || black_box(monomial_closure_of_power(&i, 4).unwrap())))
        });
    }
    g.finish();
}

fn frobenius_scan(c: &mut Criterion) {
    let r = Arc::new(QuotientRing::new(5, &["x", "y", "z"], &["x^3 + y^3 + z^3"]).unwrap());
    let i = RingIdeal::parse(&r, &["x^2", "y^2"]).unwrap();
    let opts = ScanOptions {
        samples: 20,
        ..ScanOptions::new(5, 1)
    };
    let mut g = c.benchmark_group("frobenius_closed_scan");
    g.sample_size(10);
    for (name, seq) in modes() {
        g.bench_function(BenchmarkId::new(name, "cubic p=5"), |b| {
            b.iter(|| run(seq, || black_box(frobenius_closed_scan(&i, &opts).unwrap())))
        });
    }
    g.finish();
}

fn reduction_trials(c: &mut Criterion) {
    let r = Arc::new(QuotientRing::polynomial_ring(2, &["x", "y"]).unwrap());
    let i = RingIdeal::parse(&r, &["x^3", "x^2*y", "x*y^2", "y^3"]).unwrap();
    let mut g = c.benchmark_group("random_minimal_reduction");
    g.sample_size(10);
    for (name, seq) in modes() {
        g.bench_function(BenchmarkId::new(name, "F_2 cubics"), |b| {
            b.iter(|| run(seq, || black_box(random_minimal_reduction(&i, 2, 3, 16, 4).unwrap())))
        });
    }
    g.finish();
}

criterion_group!(benches, closure_sweep, frobenius_scan, reduction_trials);
criterion_main!(benches);
