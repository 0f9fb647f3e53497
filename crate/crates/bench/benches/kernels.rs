use std::f64::consts::PI;
use std::hint::black_box;

use conewave_core::cluster_kernel::{a_lambda, diff_cluster_kernel, make_chi, AmplitudeA};
use conewave_core::cone_geom::{Cone, PolarPoint};
use conewave_core::phase_lab::{psi_lower_bound_check, PsiSampling};
use conewave_core::special_fn::{bessel_j, bessel_zeros_below, kummer_f, KummerRayPoint};
use conewave_core::spectrum::{build_basis, cluster_sup_operator_norm, ClusterWindow, PolarGrid, TruncatedCone};
use conewave_core::wave_kernel::diff_kernel;
use criterion::{criterion_group, criterion_main, Criterion};

fn special(c: &mut Criterion) {
    c.bench_function("bessel_j nu=7.5 x=30", |b| b.iter(|| bessel_j(black_box(7.5), black_box(30.0))));
    c.bench_function("bessel zeros nu=2.5 below 200", |b| b.iter(|| bessel_zeros_below(black_box(2.5), 200.0)));
    let p = KummerRayPoint::new(7.0).unwrap();
    c.bench_function("kummer_f |z|=7", |b| b.iter(|| kummer_f(black_box(p))));
}

fn spectral(c: &mut Criterion) {
    let tc = TruncatedCone::new(Cone::new(1.5).unwrap(), 1.0).unwrap();
    c.bench_function("build_basis rho=1.5 lambda<=40", |b| b.iter(|| build_basis(tc, black_box(40.0))));
    let basis = build_basis(tc, 41.0).unwrap();
    let window = ClusterWindow::select(&basis, 40.0, 1.0);
    let grid = PolarGrid::for_window(tc, &window);
    c.bench_function("sup norm of the lambda=40 cluster", |b| b.iter(|| cluster_sup_operator_norm(&window, tc, &grid)));
}

fn kernels(c: &mut Criterion) {
    let cone = Cone::new(2.0).unwrap();
    let (p1, p2) = (PolarPoint::on(cone, 0.3, PI / 2.0).unwrap(), PolarPoint::on(cone, 0.4, 0.0).unwrap());
    c.bench_function("diff_kernel rho=2 t=1", |b| b.iter(|| diff_kernel(black_box(1.0), p1, p2, cone)));
    let chi = make_chi(0.1).unwrap();
    c.bench_function("a_lambda lambda=200", |b| b.iter(|| a_lambda(&chi, 200.0, black_box(0.15))));
    let amp = AmplitudeA::build(&chi, 200.0).unwrap();
    c.bench_function("diffractive cluster kernel lambda=200", |b| {
        b.iter(|| diff_cluster_kernel(&amp, cone, black_box(0.07), 0.09, 1.0))
    });
    let s = PsiSampling { samples: 1000, ..PsiSampling::default() };
    c.bench_function("phase lower bound 1000 samples", |b| b.iter(|| psi_lower_bound_check(black_box(&s))));
}

criterion_group!(benches, special, spectral, kernels);
criterion_main!(benches);
