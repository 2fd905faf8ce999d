use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dressed_bench::figure_params;
use dressed_core::coupling::build_matrix;
use dressed_core::dynamics::{amplitude_row, g_integral};
use dressed_core::oracle::{build_form, diagonalize};
use dressed_core::spectrum::solve_eigenfrequencies;
use dressed_core::{ModeIndex, QuadratureConfig, SecularForm, SolverConfig};

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("roots");
    for n in [200, 2_000, 20_000] {
        let p = figure_params(n);
        for form in [SecularForm::Truncated, SecularForm::ClosedForm] {
            if form == SecularForm::Truncated && n > 2_000 {
                continue;
            }
            group.bench_with_input(BenchmarkId::new(format!("{form:?}"), n), &p, |b, p| {
                b.iter(|| {
                    solve_eigenfrequencies(black_box(p), form, &SolverConfig::default()).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn matrix(c: &mut Criterion) {
    let s = solve_eigenfrequencies(
        &figure_params(200),
        SecularForm::Truncated,
        &SolverConfig::default(),
    )
    .unwrap();
    c.bench_function("build_matrix/200", |b| {
        b.iter(|| build_matrix(black_box(&s)).unwrap())
    });
    let tm = build_matrix(&s).unwrap();
    c.bench_function("amplitude_row/200", |b| {
        b.iter(|| amplitude_row(&tm, ModeIndex::Atom, black_box(7.3)))
    });
}

fn g_integral_bench(c: &mut Criterion) {
    let quad = QuadratureConfig::default();
    let mut group = c.benchmark_group("g_integral");
    for t in [0.5, 5.0, 50.0] {
        group.bench_with_input(BenchmarkId::from_parameter(t), &t, |b, &t| {
            b.iter(|| g_integral(black_box(t), 1.0, 0.5, &quad).unwrap())
        });
    }
    group.finish();
}

fn jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi");
    group.sample_size(10);
    for n in [10, 50, 200] {
        let form = build_form(&figure_params(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &form, |b, f| {
            b.iter(|| diagonalize(black_box(f)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, roots, matrix, g_integral_bench, jacobi);
criterion_main!(benches);
