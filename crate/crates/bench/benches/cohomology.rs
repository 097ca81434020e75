use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use xmodlab::catalog::{check_gv_transgression, check_ug_dual_identity};
use xmodlab::ce::betti;
use xmodlab::linalg::rank;
use xmodlab::modules::{DensityModule, LieModule};
use xmodlab::LieAlgebra;
use xmodlab::scalar::int;
use xmodlab_bench::{banded_hilbert, sl3_pbw, witt_density};

fn bench_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for n in [16usize, 32, 64] {
        let m = banded_hilbert(n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| rank(black_box(m))));
    }
    group.finish();
}

fn bench_slices(c: &mut Criterion) {
    let sl2 = xmodlab::lie::sl2();
    let f1 = DensityModule::over_sl2(int(1), 12).unwrap();
    c.bench_function("betti/sl2_F1", |b| b.iter(|| betti(&sl2, &f1, 3, &int(8)).unwrap()));

    let mut group = c.benchmark_group("witt_transgression");
    group.sample_size(10);
    for hi in [4i64, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(hi), &hi, |b, &hi| {
            b.iter(|| check_gv_transgression(-1, hi).unwrap())
        });
    }
    group.finish();
}

fn bench_witt_density(c: &mut Criterion) {
    let (witt, module) = witt_density(6, 1).unwrap();
    c.bench_function("witt_density/act", |b| {
        b.iter(|| {
            (0..witt.dim())
                .flat_map(|x| (0..12).map(move |m| (x, m)))
                .map(|(x, m)| module.act_basis(x, m).unwrap().len())
                .sum::<usize>()
        })
    });
}

fn bench_ug_dual_identity(c: &mut Criterion) {
    let dual = sl3_pbw(2).unwrap();
    let mut group = c.benchmark_group("ug_dual_identity");
    group.sample_size(10);
    group.bench_function("sl3_length2", |b| b.iter(|| check_ug_dual_identity(dual.clone()).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_rank, bench_slices, bench_witt_density, bench_ug_dual_identity);
criterion_main!(benches);
