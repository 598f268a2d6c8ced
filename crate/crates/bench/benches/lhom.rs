use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lhom_bench::{solver_cases, templates};
use lhom_core::{build_hm_chain, classify, find_circular_n, oracle_solve, solve, Verdict};

fn detection(c: &mut Criterion) {
    let mut group = c.benchmark_group("detection");
    for n in [4, 6, 8] {
        let hs = templates(n, 0.3, 20);
        group.bench_with_input(BenchmarkId::new("find_circular_n", n), &hs, |b, hs| {
            b.iter(|| hs.iter().filter(|h| find_circular_n(black_box(h)).is_some()).count())
        });
        group.bench_with_input(BenchmarkId::new("classify", n), &hs, |b, hs| {
            b.iter(|| {
                hs.iter()
                    .filter(|h| classify(black_box(h)).verdict == Verdict::NpComplete)
                    .count()
            })
        });
    }
    group.finish();
}

fn hm_chain(c: &mut Criterion) {
    let hs: Vec<_> = solver_cases(5, 1, 20).into_iter().map(|(h, _)| h).collect();
    c.bench_function("hm_chain/build", |b| {
        b.iter(|| {
            hs.iter()
                .map(|h| build_hm_chain(black_box(h)).map_or(0, |chain| chain.len()))
                .sum::<usize>()
        })
    });
}

fn solving(c: &mut Criterion) {
    let mut group = c.benchmark_group("solving");
    for max_g in [6, 10] {
        let cases = solver_cases(4, max_g, 20);
        group.bench_with_input(BenchmarkId::new("transducer", max_g), &cases, |b, cases| {
            b.iter(|| {
                cases
                    .iter()
                    .filter(|(h, inst)| solve(h, black_box(inst)).unwrap().is_some())
                    .count()
            })
        });
        group.bench_with_input(BenchmarkId::new("oracle", max_g), &cases, |b, cases| {
            b.iter(|| {
                cases
                    .iter()
                    .filter(|(h, inst)| oracle_solve(h, black_box(inst)).unwrap().is_some())
                    .count()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, detection, hm_chain, solving);
criterion_main!(benches);
