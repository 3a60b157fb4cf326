//! Sequential vs data-parallel residual evaluation on the same workloads.
//! The per-tuple loops dominate checking time, so the comparison is run on
//! the full certification of one structure per size.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use homconf_core::gen::{corpus_rng, random_certified_algebra, random_table};
use homconf_core::lambda::{certify, check_axiom, Algebra, Axiom, Kind};
use homconf_core::par::{scope_mode, EvalMode};
use homconf_core::{Endo, FreeModule};

const MODES: [(&str, EvalMode); 2] = [
    ("sequential", EvalMode::Sequential),
    ("parallel", EvalMode::Parallel),
];

fn dense_algebra(rank: usize, degree: u32, kind: Kind) -> Algebra {
    let mut rng = corpus_rng(rank as u64);
    Algebra {
        name: format!("dense{rank}"),
        module: FreeModule::new((0..rank).map(|i| format!("e{i}")).collect()),
        table: random_table(&mut rng, rank, degree),
        alpha: Endo::identity(rank),
        kind,
    }
}

fn bench_certify(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify");
    group.sample_size(20).measurement_time(Duration::from_secs(8));
    for rank in [2usize, 3] {
        let mut rng = corpus_rng(97);
        let alg = random_certified_algebra(&mut rng, Kind::LeftSymmetric, rank);
        for (label, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(label, rank), &alg, |b, alg| {
                b.iter(|| scope_mode(mode, || certify(alg)))
            });
        }
    }
    group.finish();
}

fn bench_dense_jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi-rank4-deg2");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    let alg = dense_algebra(4, 2, Kind::Lie);
    for (label, mode) in MODES {
        group.bench_function(label, |b| {
            b.iter(|| scope_mode(mode, || check_axiom(&alg, Axiom::Jacobi)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_certify, bench_dense_jacobi);
criterion_main!(benches);
