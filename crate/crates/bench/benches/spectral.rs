use std::f64::consts::FRAC_1_SQRT_2;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use krein_ext::{
    degenerate_sl, det_f, indefinite_sl, tw_mfunction, ExtensionParams, Potential, ResolventProbe,
    SearchBox, Side, Step, SturmLiouvilleModel, C64,
};

fn generic_u() -> ExtensionParams {
    ExtensionParams::new(1.0, 0.0, 0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap()
}

fn bench_det_f(c: &mut Criterion) {
    let u = generic_u();
    let degenerate = degenerate_sl();
    let mu = C64::new(1.3, 2.1);
    c.bench_function("det_f/degenerate_sl", |b| b.iter(|| det_f(black_box(&u), &degenerate, black_box(mu))));

    let indefinite = indefinite_sl(SturmLiouvilleModel::new(Potential::Zero)).unwrap();
    let mut group = c.benchmark_group("det_f");
    group.sample_size(20);
    group.bench_function("indefinite_sl", |b| b.iter(|| det_f(black_box(&u), &indefinite, black_box(mu))));
    group.finish();
}

fn bench_mfunction(c: &mut Criterion) {
    let mut group = c.benchmark_group("tw_mfunction");
    group.sample_size(20);
    let mu = C64::new(0.7, 1.5);
    let free = SturmLiouvilleModel::new(Potential::Zero);
    group.bench_function("zero_potential", |b| b.iter(|| tw_mfunction(&free, Side::Plus, black_box(mu))));
    let stepped =
        SturmLiouvilleModel::new(Potential::steps(vec![Step { from: 0.0, to: 2.0, value: 3.0 }]).unwrap());
    group.bench_function("step_potential", |b| b.iter(|| tw_mfunction(&stepped, Side::Plus, black_box(mu))));
    group.finish();
}

fn bench_eigenvalues(c: &mut Criterion) {
    let mut group = c.benchmark_group("nonreal_eigenvalues");
    group.sample_size(10);
    let u = generic_u();
    let probe = ResolventProbe::new(&degenerate_sl()).unwrap();
    let small = SearchBox::new(0.5, 30.0, 0.5, 5.0).unwrap();
    let large = SearchBox::new(0.5, 30.0, 0.5, 30.0).unwrap();
    group.bench_function("degenerate_sl/30x5", |b| b.iter(|| probe.nonreal_eigenvalues(&u, black_box(&small))));
    group.bench_function("degenerate_sl/30x30", |b| b.iter(|| probe.nonreal_eigenvalues(&u, black_box(&large))));
    group.finish();
}

criterion_group!(benches, bench_det_f, bench_mfunction, bench_eigenvalues);
criterion_main!(benches);
