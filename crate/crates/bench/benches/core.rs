use charvar::curves::{intersect_plane_curves, preset_chart, roots_univariate, Preset};
use charvar::dixon::dixon_series;
use charvar::incidence::random_form;
use charvar::integralrep::{whittaker_laplace, Profile};
use charvar::kernelspace::kernel_basis;
use charvar::powerbasis::build_power_basis;
use charvar::scalar::{qci, C64};
use charvar::HomogeneousPoly;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn kernels(c: &mut Criterion) {
    let f = HomogeneousPoly::from_terms(
        4,
        2,
        [(vec![2, 0, 0, 0], qci(1, 0)), (vec![0, 2, 0, 0], qci(1, 0)), (vec![0, 0, 1, 1], qci(2, 1))],
    )
    .unwrap();
    c.bench_function("exact kernel basis d=4 n=2 m=5", |b| b.iter(|| kernel_basis(black_box(&f), 5)));
    let chart = preset_chart(Preset::LaplaceQuadric);
    c.bench_function("power basis laplace m=8", |b| b.iter(|| build_power_basis(&chart.symbol, 8, &chart, 0).unwrap()));
}

fn curves(c: &mut Criterion) {
    let (f1, f2) = (random_form(3, 4, 1), random_form(3, 4, 2));
    c.bench_function("intersect two quartics", |b| b.iter(|| intersect_plane_curves(&f1, &f2, 0).unwrap()));
    let coeffs: Vec<C64> = (0..=30).map(|k| C64::new(((k * 7) % 11) as f64 - 5.0, (k % 3) as f64)).collect();
    c.bench_function("roots of degree 30", |b| b.iter(|| roots_univariate(black_box(&coeffs)).unwrap()));
}

fn integrals(c: &mut Criterion) {
    let profile = Profile::power(6);
    c.bench_function("harmonic integral 64 nodes", |b| {
        b.iter(|| whittaker_laplace(&profile, black_box(0.3), 0.2, 0.1, 64))
    });
    c.bench_function("dixon series order 64", |b| b.iter(|| dixon_series(black_box(64)).unwrap()));
}

criterion_group!(benches, kernels, curves, integrals);
criterion_main!(benches);
