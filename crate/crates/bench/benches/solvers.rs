use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use pdm_core::heun::{heun_c, heun_t, ConfluentHeunParams, TriconfluentHeunParams};
use pdm_core::spectral::{
    find_bound_states_cm, find_bound_states_pdm, shoot_z, sl_matrix_eigenvalues, sturm_count,
    ShootConfig,
};
use pdm_core::{Parity, PotentialParams};
use std::hint::black_box;

fn manning() -> PotentialParams {
    PotentialParams::manning(-500.0, 500.0).unwrap()
}

fn shooting(c: &mut Criterion) {
    let p = manning();
    let cfg = ShootConfig::default();
    c.bench_function("shoot_z single sweep", |b| {
        b.iter(|| shoot_z(&p, black_box(-61.4), Parity::Symmetric, &cfg).unwrap())
    });
    let mut g = c.benchmark_group("spectrum");
    g.sample_size(10);
    g.bench_function("pdm manning", |b| b.iter(|| find_bound_states_pdm(&p, (-126.0, 0.0)).unwrap()));
    g.bench_function("constant-mass manning", |b| {
        b.iter(|| find_bound_states_cm(&p, (-126.0, 0.0)).unwrap())
    });
    g.finish();
}

fn heun(c: &mut Criterion) {
    let pc = ConfluentHeunParams::real(22.36, -0.5, 1.0, 0.0, 25.6).unwrap();
    c.bench_function("heun_c inside the disc", |b| {
        b.iter(|| heun_c(&pc, black_box(Complex64::new(0.6, 0.0))).unwrap())
    });
    c.bench_function("heun_c continued", |b| {
        b.iter(|| heun_c(&pc, black_box(Complex64::new(0.97, 0.0))).unwrap())
    });
    let pt = TriconfluentHeunParams::real(0.0, 0.0, -3.1).unwrap();
    c.bench_function("heun_t", |b| b.iter(|| heun_t(&pt, black_box(Complex64::new(2.0, 0.0))).unwrap()));
}

fn sturm(c: &mut Criterion) {
    let n = 20_000;
    let d = vec![2.0; n];
    let e2 = vec![1.0; n - 1];
    c.bench_function("sturm_count 20000", |b| b.iter(|| sturm_count(&d, &e2, black_box(1.3))));
    let p = manning();
    let mut g = c.benchmark_group("matrix");
    g.sample_size(10);
    g.bench_function("pdm manning eigenvalues", |b| {
        b.iter(|| sl_matrix_eigenvalues(&p, true, 4000, (-126.0, 0.0)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, shooting, heun, sturm);
criterion_main!(benches);
