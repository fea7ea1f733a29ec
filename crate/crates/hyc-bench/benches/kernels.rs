//! Criterion benchmarks for the numerical kernels: transform evaluation,
//! line norms, Carleson norms on both solver paths, the interval
//! decomposition, the harmonic extension, and the ratio functional.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use hyc_bench::{bench_atoms, bench_mixed_measure, bench_real_function, bench_step_function};
use hyc_core::carleson::carleson_norm;
use hyc_core::hy::hy_ratio;
use hyc_core::laplace::{laplace_eval, vertical_line_norm};
use hyc_core::poisson_cz::{cz_decompose, poisson_eval};
use hyc_core::Complex64;

fn transform_eval(c: &mut Criterion) {
    let u = bench_step_function();
    let z = Complex64::new(0.4, -2.3);
    c.bench_function("laplace_eval", |b| {
        b.iter(|| laplace_eval(black_box(&u), black_box(z)))
    });
}

fn line_norm(c: &mut Criterion) {
    let u = bench_step_function();
    c.bench_function("vertical_line_norm_s2", |b| {
        b.iter(|| vertical_line_norm(black_box(&u), 0.0, 2.0, 1e-7).unwrap())
    });
}

fn carleson_paths(c: &mut Criterion) {
    let atoms = bench_atoms();
    c.bench_function("carleson_norm_exact_8_atoms", |b| {
        b.iter(|| carleson_norm(black_box(&atoms), 1e-9).unwrap())
    });
    let mixed = bench_mixed_measure();
    c.bench_function("carleson_norm_bb_mixed", |b| {
        b.iter(|| carleson_norm(black_box(&mixed), 1e-4).unwrap())
    });
}

fn interval_decomposition(c: &mut Criterion) {
    let (f, alpha) = bench_real_function();
    c.bench_function("cz_decompose", |b| {
        b.iter(|| cz_decompose(black_box(&f), black_box(alpha)).unwrap())
    });
    c.bench_function("poisson_eval", |b| {
        b.iter(|| poisson_eval(black_box(&f), 0.7, 0.4).unwrap())
    });
}

fn ratio_functional(c: &mut Criterion) {
    let mu = bench_atoms();
    let u = bench_step_function();
    c.bench_function("hy_ratio_atoms", |b| {
        b.iter(|| hy_ratio(black_box(&mu), black_box(&u), 1.5, 1e-7).unwrap())
    });
}

criterion_group!(
    kernels,
    transform_eval,
    line_norm,
    carleson_paths,
    interval_decomposition,
    ratio_functional
);
criterion_main!(kernels);
