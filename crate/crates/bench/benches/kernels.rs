use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rgsslab::burgers::{exact_solution, QuadratureConfig};
use rgsslab::nlo::{boundary_to_hodograph, series_point, BeamProfile, R9Surface};
use rgsslab::plasma::{airy, scorer};
use rgsslab::vfield::{compose_residual, flow};
use rgsslab::{IntegratorConfig, Point};
use rgsslab_bench::{cylindrical_beam, gaussian_burgers, linspace, two_loop_beta};

fn rg_flow(c: &mut Criterion) {
    let field = two_loop_beta().field();
    let cfg = IntegratorConfig::default();
    let p = Point::from_pairs(&[("g", 0.3)]);
    c.bench_function("flow/two_loop", |b| b.iter(|| flow(&field, black_box(&p), 0.8, &cfg).unwrap()));
    c.bench_function("flow/compose_residual", |b| {
        b.iter(|| compose_residual(&field, black_box(&p), 0.4, -0.7, &cfg).unwrap())
    });
}

fn burgers(c: &mut Criterion) {
    let prob = gaussian_burgers();
    let q = QuadratureConfig::default();
    let xs = linspace(-3.0, 3.0, 16);
    c.bench_function("burgers/exact_solution_x16", |b| {
        b.iter(|| xs.iter().map(|&x| exact_solution(0.5, x, &prob, &q).unwrap()).sum::<f64>())
    });
}

fn special(c: &mut Criterion) {
    let mus = linspace(-5.0, 5.0, 41);
    c.bench_function("special/airy_x41", |b| b.iter(|| mus.iter().map(|&m| airy(m).unwrap().0).sum::<f64>()));
    c.bench_function("special/scorer_x41", |b| b.iter(|| mus.iter().map(|&m| scorer(m).unwrap().0).sum::<f64>()));
}

fn hodograph(c: &mut Criterion) {
    let h = boundary_to_hodograph(&BeamProfile::Sech2).unwrap();
    c.bench_function("nlo/series_point_40", |b| b.iter(|| series_point(&h, 0.1, black_box(0.1), 0.5, 40).unwrap()));
}

fn r9(c: &mut Criterion) {
    let beam = cylindrical_beam();
    let surface = R9Surface::new(&beam, IntegratorConfig::default()).unwrap();
    c.bench_function("nlo/r9_surface_eval", |b| b.iter(|| surface.eval(black_box(0.5), 0.7).unwrap()));
}

criterion_group!(kernels, rg_flow, burgers, special, hodograph, r9);
criterion_main!(kernels);
