use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use milburn_core::evolve::{evolve_at, sample_times, EngineOptions, EngineTag};
use milburn_core::measures::{correlation_sample, min_numeric, MinNorm};
use milburn_core::par::Exec;
use milburn_core::states::{make_initial_state, ScenarioKind, ScenarioSpec};
use milburn_core::ModelParams;

fn params() -> ModelParams {
    ModelParams {
        j_plus: 1.0,
        j_minus: 0.5,
        j_z: 1.0,
        dm: 1.0,
        field: 1.0,
        inhomogeneity: 0.5,
        gamma: 0.05,
    }
}

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn sphere_grid(c: &mut Criterion) {
    // Degenerate marginal, so the full grid search runs.
    let rho = make_initial_state(&ScenarioSpec::new(ScenarioKind::BellPhi, 0.8)).unwrap().to_matrix();
    let mut group = c.benchmark_group("min_numeric_grid");
    group.sample_size(10);
    for norm in [MinNorm::Hs, MinNorm::Trace] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("{norm:?}")), &exec, |b, &exec| {
                b.iter(|| min_numeric(black_box(&rho), norm, exec))
            });
        }
    }
    group.finish();
}

fn trajectory(c: &mut Criterion) {
    let rho = make_initial_state(&ScenarioSpec::new(ScenarioKind::Prod00, 0.6)).unwrap().to_matrix();
    let p = params();
    let times = sample_times(200.0, 0.01).unwrap();
    let opts = EngineOptions::default();
    let mut group = c.benchmark_group("trajectory_20k_samples");
    group.sample_size(10);
    for engine in [EngineTag::Spectral, EngineTag::Kraus] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, engine.name()), &exec, |b, &exec| {
                b.iter(|| {
                    let states = evolve_at(engine, &rho, &p, black_box(&times), &opts, exec).unwrap();
                    exec.map_indexed(states.len(), |k| correlation_sample(times[k], &states[k]))
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sphere_grid, trajectory);
criterion_main!(benches);
