use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::BigRational;
use wronski::homotopy::{solve_with, Execution};
use wronski::*;

fn systems() -> Vec<(&'static str, PolynomialSystem, TrackerSettings)> {
    let config = simplex_lattice_points(2, 3).unwrap();
    let lifting = Lifting::new(vec![12, 3, 0, 0, 8, 1, 0, 9, 5, 15]);
    let complex = as_simplicial_complex(&regular_subdivision(&config, &lifting).unwrap()).unwrap();
    let coloring = vertex_coloring(&complex).unwrap();
    let c = CoefficientChoice::from_integers(&[&[19, 8, -19], &[39, 7, 42]]);
    let s = BigRational::from_integer(1.into());
    vec![
        (
            "wronski_system",
            wronski_system(&config, &lifting, &coloring, &c, &s).unwrap(),
            TrackerSettings::default(),
        ),
        (
            "center_ideal",
            wronski_center_ideal(&config, &lifting, &coloring).unwrap(),
            TrackerSettings::default().only_torus(true),
        ),
    ]
}

fn tracking(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for (name, system, settings) in systems() {
        for (label, exec) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(name, label), &exec, |b, &exec| {
                b.iter(|| solve_with(black_box(&system), &settings, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, tracking);
criterion_main!(benches);
