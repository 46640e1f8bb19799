use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use toeplitz_pc::bmo::{self, GridFunction};
use toeplitz_pc::{experiments, hardy, spectra, Execution, PiecewiseSymbol};

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn section(c: &mut Criterion) {
    let sgn = PiecewiseSymbol::sign();
    let mut group = c.benchmark_group("toeplitz_section_512");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| hardy::toeplitz_section_with(&sgn, 512, exec).unwrap())
        });
    }
    group.finish();
}

fn lip_log(c: &mut Criterion) {
    let f = GridFunction::from_symbol(&experiments::lip_log_exemplar(64), 4096).unwrap();
    let mut group = c.benchmark_group("lip_log_4096");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| bmo::lip_log_seminorm_with(&f, exec))
        });
    }
    group.finish();
}

fn ladders(c: &mut Criterion) {
    let sgn = PiecewiseSymbol::sign();
    let mut group = c.benchmark_group("ladders");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new("growth", name), |b| {
            b.iter(|| {
                experiments::h1_growth_experiment_with(&sgn, &[64, 256, 1024, 4096], exec).unwrap()
            })
        });
        group.bench_function(BenchmarkId::new("probe", name), |b| {
            b.iter(|| {
                experiments::finite_section_probe_with(
                    &sgn,
                    Complex64::new(0.0, 0.0),
                    &[32, 64, 128, 256],
                    exec,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn hausdorff(c: &mut Criterion) {
    let circle = |n: usize, phase: f64| -> Vec<Complex64> {
        (0..n)
            .map(|j| {
                Complex64::from_polar(1.0, phase + std::f64::consts::TAU * j as f64 / n as f64)
            })
            .collect()
    };
    let (a, b) = (circle(4096, 0.0), circle(4096, 1e-3));
    let mut group = c.benchmark_group("hausdorff_4096");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| spectra::sampled_hausdorff_with(&a, &b, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, section, lip_log, ladders, hausdorff);
criterion_main!(benches);
