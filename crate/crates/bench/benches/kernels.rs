use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nalgebra::DMatrix;
use unital::algebra::lookup;
use unital::antiwedge::{verify_theorem, FourVector};
use unital::regularizer::{convergence_experiment, jacobi_svd, ExperimentSpec};
use unital::rng;
use unital::unorm::{self, UnitalNormEvaluator};

fn family_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_family");
    for id in ["C", "H", "M3", "uT6"] {
        let alg = lookup(id).unwrap();
        let samples = 3 * alg.dim() * alg.dim();
        group.bench_with_input(BenchmarkId::from_parameter(id), &alg, |b, alg| {
            b.iter(|| unital::protonorm::solve_family(black_box(alg), samples, 0).unwrap())
        });
    }
    group.finish();
}

fn unorm_evaluate(c: &mut Criterion) {
    let mut group = c.benchmark_group("unorm_evaluate");
    for id in ["C", "ipsg(3,0)", "uT4"] {
        let alg = lookup(id).unwrap();
        let mut st = rng::stream(0, "bench/unorm");
        let params = unorm::sample_params(id, &mut st).unwrap();
        let s = unorm::sample_unit(id, &params, &mut st).unwrap();
        let eval = UnitalNormEvaluator::new(&alg, unorm::table_protonorm(id, &params).unwrap()).unwrap();
        group.bench_function(id, |b| b.iter(|| eval.evaluate(black_box(&s)).unwrap()));
    }
    group.finish();
}

fn svd(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi_svd");
    group.sample_size(10);
    for n in [50usize, 200] {
        let mut st = rng::stream(0, "bench/svd");
        let f = DMatrix::from_fn(n, n, |_, _| rng::uniform(&mut st, -1.0, 1.0));
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| jacobi_svd(black_box(f))));
    }
    group.finish();
}

fn experiment(c: &mut Criterion) {
    let spec = ExperimentSpec::default();
    let mut group = c.benchmark_group("convergence_experiment");
    group.sample_size(10);
    group.bench_function("n200", |b| b.iter(|| convergence_experiment(black_box(&spec)).unwrap()));
    group.finish();
}

fn antiwedge(c: &mut Criterion) {
    let a = FourVector::new(1.3, 0.2, -0.7, 0.4);
    let b = FourVector::new(-0.5, 1.1, 0.3, 0.9);
    c.bench_function("antiwedge_theorem", |bench| {
        bench.iter(|| verify_theorem(black_box(&a), black_box(&b), 0.6).unwrap())
    });
}

criterion_group!(benches, family_solve, unorm_evaluate, svd, experiment, antiwedge);
criterion_main!(benches);
