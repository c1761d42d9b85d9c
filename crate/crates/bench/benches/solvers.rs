use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use iwasawa_bench::{datum, ALGEBRAS};
use iwasawa_core::dersolve::{all_derivations, main_theorem_verdict, solve_derivations};
use iwasawa_core::htype::kaplan_check;
use iwasawa_core::linalg::{nullspace, q};
use iwasawa_core::{build_named, decompose, ConstraintMode, MatrixQ, MetricTwoStep};
use std::hint::black_box;

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for name in ALGEBRAS {
        let built = build_named(name).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &built, |b, built| {
            b.iter(|| decompose(black_box(built)).unwrap())
        });
    }
    group.finish();
}

fn derivations(c: &mut Criterion) {
    let mut group = c.benchmark_group("derivations");
    group.sample_size(20);
    for name in ALGEBRAS {
        let rd = datum(name);
        for mode in [ConstraintMode::RootSpace, ConstraintMode::Grading] {
            group.bench_with_input(BenchmarkId::new(mode.to_string(), name), &rd, |b, rd| {
                b.iter(|| solve_derivations(black_box(rd), mode).unwrap().dim())
            });
        }
    }
    let h = MetricTwoStep::quaternionic_heisenberg(2);
    group.bench_function("all/quaternionic-heisenberg-2", |b| {
        b.iter(|| all_derivations(black_box(h.structure())).len())
    });
    group.finish();
}

fn verdicts(c: &mut Criterion) {
    let mut group = c.benchmark_group("verdict");
    group.sample_size(10);
    for name in ["so(1,4)", "sp(1,2)", "su(2,3)"] {
        let rd = datum(name);
        group.bench_with_input(BenchmarkId::from_parameter(name), &rd, |b, rd| {
            b.iter(|| main_theorem_verdict(black_box(rd)).unwrap().equal)
        });
    }
    group.finish();
}

fn linear_algebra(c: &mut Criterion) {
    let n = 24;
    // banded integer matrix with a few dependent rows
    let m = MatrixQ::from_rows(
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        q(((r * 7 + c * 3) % 11) as i64 - 5 + i64::from(r % 4 == 0) * (c as i64))
                    })
                    .collect()
            })
            .collect(),
    );
    c.bench_function("nullspace/24x24", |b| {
        b.iter(|| nullspace(black_box(&m)).dim())
    });
    let ciatti = MetricTwoStep::ciatti(&datum("sp(1,2)")).unwrap();
    c.bench_function("kaplan/ciatti-sp(1,2)", |b| {
        b.iter(|| kaplan_check(black_box(&ciatti)).is_htype)
    });
}

criterion_group!(
    benches,
    decomposition,
    derivations,
    verdicts,
    linear_algebra
);
criterion_main!(benches);
