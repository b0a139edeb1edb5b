//! Benchmarks for the hot paths: recursion sweeps, exact circuit
//! experiments, routing, and the grid Monte Carlo.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use purecc::analytic::{fidelity_trajectory, resource_profile, Fidelity, Scheme};
use purecc::gridsim::{build_grid, GridScenario, ScenarioRunner};
use purecc::network::{complete_path_set, minimize_induced_capacity};
use purecc::statevec::{
    concatenated_success_brute_force, ecc_swap_experiment, purification_experiment,
};

fn fid(value: f64) -> Fidelity {
    Fidelity::new(value).expect("benchmark fidelities are valid")
}

fn recursions(c: &mut Criterion) {
    c.bench_function("trajectory_both_schemes_10_rounds", |b| {
        b.iter(|| {
            let f0 = fid(black_box(0.51));
            let p = fidelity_trajectory(Scheme::Purification, f0, 10).unwrap();
            let e = fidelity_trajectory(Scheme::ecc(), f0, 10).unwrap();
            (p.final_value(), e.final_value())
        })
    });
    c.bench_function("resource_profile_pair", |b| {
        b.iter(|| {
            let f0 = fid(black_box(0.51));
            let target = fid(0.99);
            let p = resource_profile(Scheme::Purification, f0, target, 8).unwrap();
            let e = resource_profile(Scheme::ecc(), f0, target, 8).unwrap();
            (p.qubits, e.qubits)
        })
    });
}

fn circuits(c: &mut Criterion) {
    c.bench_function("purification_experiment", |b| {
        b.iter(|| purification_experiment(black_box(0.25)))
    });
    c.bench_function("ecc_swap_experiment_64_patterns", |b| {
        b.iter(|| ecc_swap_experiment(black_box(0.1)))
    });
    let mut heavy = c.benchmark_group("brute_force");
    heavy.sample_size(20);
    heavy.bench_function("two_level_decode_512_patterns", |b| {
        b.iter(|| concatenated_success_brute_force(2, black_box(0.1)).unwrap())
    });
    heavy.finish();
}

fn routing(c: &mut Criterion) {
    let grid = build_grid(10);
    c.bench_function("complete_path_set_grid10", |b| {
        b.iter(|| complete_path_set(black_box(&grid)).unwrap())
    });
    let mut heavy = c.benchmark_group("heuristic");
    heavy.sample_size(10);
    heavy.bench_function("minimize_capacity_grid6_effort8", |b| {
        let small = build_grid(6);
        b.iter(|| minimize_induced_capacity(black_box(&small), 8, 1).unwrap())
    });
    heavy.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let runner = ScenarioRunner::new(GridScenario {
        k: 10,
        p_activation: 0.5,
        runs: 50,
        seed: 7,
        scheme: Scheme::Purification,
        initial_fidelity: fid(0.51),
        target_fidelity: fid(0.99),
    })
    .expect("scenario is valid");
    c.bench_function("grid10_single_run", |b| {
        b.iter(|| runner.run(black_box(3)).unwrap())
    });
    let mut heavy = c.benchmark_group("grid_batch");
    heavy.sample_size(10);
    heavy.bench_function("grid10_50_runs", |b| b.iter(|| runner.run_all().unwrap()));
    heavy.finish();
}

criterion_group!(benches, recursions, circuits, routing, monte_carlo);
criterion_main!(benches);
