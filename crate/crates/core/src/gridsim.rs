//! Seeded Monte Carlo of traffic congestion on a sparse grid network.
//!
//! The topology is a k×k grid of repeaters with k terminals attached along
//! the top row and k along the bottom. Each run activates every top
//! terminal independently with probability `p_activation`, draws a uniform
//! bottom destination for each active one, routes all demands on
//! deterministic shortest paths, and reads off congestion: how many routes
//! relay through the busiest repeater. That count, multiplied by the
//! per-repeater memory/operation formulas at the longest route through that
//! repeater, prices the run's hardware peak.
//!
//! Determinism: every run draws from its own `ChaCha8(seed xor run_index)`
//! stream (a counter-based generator, so substreams are independent), and
//! all draws happen in a fixed documented order — activation flags for
//! columns 1..=k, then one destination per active column in ascending
//! column order. Identical scenarios therefore produce identical reports,
//! in parallel or not.

use crate::analytic::{
    iterations_to_target, memory_required, operations_required, AnalyticError, Fidelity, Scheme,
};
use crate::network::{NetworkError, NetworkGraph, PathSet, Role};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors from the grid Monte Carlo.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid side must be at least 2, got {0}")]
    GridTooSmall(u32),
    #[error("activation probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("a scenario needs at least one run")]
    NoRuns,
    #[error("no reports to summarize")]
    EmptyInput,
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Builds the k×k repeater grid with k top and k bottom terminals.
///
/// Repeaters are named `r{row:03}x{col:03}` (1-based), top terminals
/// `ta{col:03}`, bottom terminals `tb{col:03}`. Zero-padding makes
/// lexicographic order equal numeric order, which keeps routing tie-breaks
/// geometrically sensible.
pub fn build_grid(k: u32) -> NetworkGraph {
    assert!(k >= 2, "grid side must be at least 2, got {k}");
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let repeater = |row: u32, col: u32| format!("r{row:03}x{col:03}");
    for row in 1..=k {
        for col in 1..=k {
            vertices.push((repeater(row, col), Role::Repeater));
            if col < k {
                edges.push((repeater(row, col), repeater(row, col + 1)));
            }
            if row < k {
                edges.push((repeater(row, col), repeater(row + 1, col)));
            }
        }
    }
    for col in 1..=k {
        vertices.push((format!("ta{col:03}"), Role::Terminal));
        edges.push((format!("ta{col:03}"), repeater(1, col)));
        vertices.push((format!("tb{col:03}"), Role::Terminal));
        edges.push((format!("tb{col:03}"), repeater(k, col)));
    }
    NetworkGraph::from_parts(vertices, edges).expect("grid construction is well formed")
}

/// Everything one Monte Carlo experiment needs.
#[derive(Debug, Clone, PartialEq)]
pub struct GridScenario {
    /// Grid side length (k ≥ 2).
    pub k: u32,
    /// Per-top-terminal activation probability.
    pub p_activation: f64,
    /// Number of runs.
    pub runs: u32,
    /// Base seed; run `i` uses substream `seed ^ i`.
    pub seed: u64,
    /// Scheme priced at the congested repeater.
    pub scheme: Scheme,
    /// Bell-pair fidelity each elementary link starts with.
    pub initial_fidelity: Fidelity,
    /// Bell-pair fidelity the scheme must reach.
    pub target_fidelity: Fidelity,
}

/// One run's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRunReport {
    pub run_index: u32,
    /// The substream seed this run drew from (`scenario.seed ^ run_index`).
    pub substream_seed: u64,
    /// Active top columns, ascending, 1-based.
    pub active_terminals: Vec<u32>,
    /// Destination bottom column for each active top column.
    pub destinations: BTreeMap<u32, u32>,
    /// Routed paths, one per active column in ascending column order.
    pub paths: Vec<Vec<usize>>,
    /// Pairs of demands (u, v), u < v, whose bottom columns satisfy
    /// b(u) ≥ b(v) — the order-inversion events.
    pub reversal_count: u32,
    /// Pairs of routed paths sharing at least one repeater.
    pub crossing_count: u32,
    /// Relay count of the busiest repeater.
    pub congestion: u32,
    /// Its name (smallest-index repeater on ties); `None` when no path has
    /// an interior.
    pub congested_repeater: Option<String>,
    /// Edge count of the longest routed path relaying through the busiest
    /// repeater; 0 when congestion is 0.
    pub path_length_at_max: u32,
    /// Scheme iterations priced into every run of the scenario.
    pub iterations: u32,
    /// congestion × memory formula at (iterations, path_length_at_max).
    pub qubits_at_max: u128,
    /// congestion × operation formula at the same point.
    pub operations_at_max: u128,
}

impl GridRunReport {
    /// Column header for [`GridRunReport::csv_row`].
    pub const CSV_HEADER: &'static str = "k,run,seed,active,reversals,congestion,ell,qubits,ops";

    /// One CSV data row; all fields are integers, so the text is exact.
    pub fn csv_row(&self, k: u32) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            k,
            self.run_index,
            self.substream_seed,
            self.active_terminals.len(),
            self.reversal_count,
            self.congestion,
            self.path_length_at_max,
            self.qubits_at_max,
            self.operations_at_max
        )
    }
}

/// A prepared scenario: grid built, distance fields cached, iteration count
/// fixed. Individual runs are cheap and independently addressable.
pub struct ScenarioRunner {
    scenario: GridScenario,
    graph: NetworkGraph,
    top_terminals: Vec<usize>,
    bottom_terminals: Vec<usize>,
    /// Distance field per bottom terminal, indexed by column − 1.
    fields: Vec<Vec<u32>>,
    iterations: u32,
}

impl ScenarioRunner {
    pub fn new(scenario: GridScenario) -> Result<Self, GridError> {
        if scenario.k < 2 {
            return Err(GridError::GridTooSmall(scenario.k));
        }
        if !(0.0..=1.0).contains(&scenario.p_activation) || !scenario.p_activation.is_finite() {
            return Err(GridError::InvalidProbability(scenario.p_activation));
        }
        if scenario.runs == 0 {
            return Err(GridError::NoRuns);
        }
        scenario.scheme.validate()?;
        let iterations = iterations_to_target(
            scenario.scheme,
            scenario.initial_fidelity,
            scenario.target_fidelity,
        )?
        .max(1);
        let graph = build_grid(scenario.k);
        let top_terminals: Vec<usize> = (1..=scenario.k)
            .map(|col| {
                graph
                    .index_of(&format!("ta{col:03}"))
                    .expect("grid has all top terminals")
            })
            .collect();
        let bottom_terminals: Vec<usize> = (1..=scenario.k)
            .map(|col| {
                graph
                    .index_of(&format!("tb{col:03}"))
                    .expect("grid has all bottom terminals")
            })
            .collect();
        let fields = bottom_terminals
            .iter()
            .map(|&t| crate::network::paths_distance_field(&graph, t))
            .collect();
        Ok(Self {
            scenario,
            graph,
            top_terminals,
            bottom_terminals,
            fields,
            iterations,
        })
    }

    pub fn graph(&self) -> &NetworkGraph {
        &self.graph
    }

    pub fn scenario(&self) -> &GridScenario {
        &self.scenario
    }

    /// Scheme iterations priced into every run.
    pub fn iterations(&self) -> u32 {
        self.iterations
    }

    /// Executes run `run_index` on its own random substream.
    pub fn run(&self, run_index: u32) -> Result<GridRunReport, GridError> {
        let k = self.scenario.k;
        let substream_seed = self.scenario.seed ^ u64::from(run_index);
        let mut rng = ChaCha8Rng::seed_from_u64(substream_seed);
        // Draw order is part of the reproducibility contract: activation
        // flags for columns 1..=k, then destinations in ascending order.
        let mut active_terminals = Vec::new();
        for col in 1..=k {
            if rng.gen_bool(self.scenario.p_activation) {
                active_terminals.push(col);
            }
        }
        let mut destinations = BTreeMap::new();
        for &col in &active_terminals {
            destinations.insert(col, rng.gen_range(1..=k));
        }
        let paths: Vec<Vec<usize>> = active_terminals
            .iter()
            .map(|&col| {
                let source = self.top_terminals[(col - 1) as usize];
                let dest_col = destinations[&col];
                let target = self.bottom_terminals[(dest_col - 1) as usize];
                crate::network::paths_walk_shortest(
                    &self.graph,
                    source,
                    target,
                    &self.fields[(dest_col - 1) as usize],
                )
                .expect("grid is connected")
            })
            .collect();

        let mut reversal_count = 0u32;
        for (i, &u) in active_terminals.iter().enumerate() {
            for &v in &active_terminals[i + 1..] {
                if destinations[&u] >= destinations[&v] {
                    reversal_count += 1;
                }
            }
        }

        // Interior vertex sets, sorted, for pairwise overlap tests.
        let interiors: Vec<Vec<usize>> = paths
            .iter()
            .map(|p| {
                let mut interior: Vec<usize> = p[1..p.len() - 1].to_vec();
                interior.sort_unstable();
                interior
            })
            .collect();
        let mut crossing_count = 0u32;
        for i in 0..interiors.len() {
            for j in i + 1..interiors.len() {
                if sorted_slices_intersect(&interiors[i], &interiors[j]) {
                    crossing_count += 1;
                }
            }
        }

        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for interior in &interiors {
            for &v in interior {
                *counts.entry(v).or_insert(0) += 1;
            }
        }
        let congested = counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&v, &c)| (v, c));

        let (congestion, congested_repeater, path_length_at_max) = match congested {
            None => (0, None, 0),
            Some((vertex, count)) => {
                let longest = paths
                    .iter()
                    .zip(&interiors)
                    .filter(|(_, interior)| interior.binary_search(&vertex).is_ok())
                    .map(|(path, _)| (path.len() - 1) as u32)
                    .max()
                    .expect("the congested vertex lies on some path");
                (count, Some(self.graph.name(vertex).to_string()), longest)
            }
        };

        let (qubits_at_max, operations_at_max) = if congestion == 0 {
            (0, 0)
        } else {
            let memory =
                memory_required(self.scenario.scheme, self.iterations, path_length_at_max)?;
            let operations =
                operations_required(self.scenario.scheme, self.iterations, path_length_at_max);
            (
                u128::from(congestion) * memory,
                u128::from(congestion) * operations,
            )
        };

        Ok(GridRunReport {
            run_index,
            substream_seed,
            active_terminals,
            destinations,
            paths,
            reversal_count,
            crossing_count,
            congestion,
            congested_repeater,
            path_length_at_max,
            iterations: self.iterations,
            qubits_at_max,
            operations_at_max,
        })
    }

    /// Executes all runs (in parallel, order preserved).
    pub fn run_all(&self) -> Result<Vec<GridRunReport>, GridError> {
        (0..self.scenario.runs)
            .into_par_iter()
            .map(|i| self.run(i))
            .collect()
    }

    /// The run's demands as a [`PathSet`], for cross-checking congestion
    /// against the network layer's capacity measure. Multiple demands can
    /// share endpoints, so only distinct endpoint pairs survive; the
    /// congestion figures above count every demand individually.
    pub fn path_set_of(&self, report: &GridRunReport) -> PathSet {
        let mut set = PathSet::new();
        for path in &report.paths {
            set.insert(path.clone());
        }
        set
    }
}

fn sorted_slices_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Prepares and executes a whole scenario.
pub fn run_scenario(scenario: &GridScenario) -> Result<Vec<GridRunReport>, GridError> {
    ScenarioRunner::new(scenario.clone())?.run_all()
}

/// Exact count of ordered destination pairs `(b_u, b_v)` with `b_u ≥ b_v`
/// out of the k² equally likely combinations: `k(k+1)/2`.
pub fn reversal_pair_count(k: u32) -> u64 {
    assert!(k >= 1, "grid side must be at least 1");
    let mut count = 0u64;
    for bu in 1..=u64::from(k) {
        for bv in 1..=u64::from(k) {
            if bu >= bv {
                count += 1;
            }
        }
    }
    count
}

/// Exact probability that two active demands' independent uniform
/// destinations come out reversed (or equal): `1/2 + 1/(2k)`, computed by
/// brute enumeration of the k² destination combinations.
pub fn reversal_probability_exact(k: u32) -> f64 {
    reversal_pair_count(k) as f64 / (f64::from(k) * f64::from(k))
}

/// Upper-bound formula for the expected number of crossings per run:
/// `(p·k)² · (1/2 + 1/(2k))` — all-pairs counting, no activation
/// correlation discount.
pub fn expected_crossings_bound(k: u32, p_activation: f64) -> f64 {
    let pk = p_activation * f64::from(k);
    pk * pk * (0.5 + 0.5 / f64::from(k))
}

/// The pairwise-exact alternative: `C(k,2) · p² · (1/2 + 1/(2k))` expected
/// *reversal* pairs per run (each unordered pair of top terminals is
/// simultaneously active with probability p²).
pub fn expected_reversal_pairs(k: u32, p_activation: f64) -> f64 {
    let pairs = f64::from(k) * f64::from(k - 1) / 2.0;
    pairs * p_activation * p_activation * (0.5 + 0.5 / f64::from(k))
}

/// Five-number summary plus mean for one per-run metric.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MetricSummary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

fn summarize_metric(values: &mut [f64]) -> MetricSummary {
    values.sort_by(|a, b| a.partial_cmp(b).expect("metrics are finite"));
    MetricSummary {
        min: values[0],
        q1: quantile(values, 0.25),
        median: quantile(values, 0.5),
        q3: quantile(values, 0.75),
        max: values[values.len() - 1],
        mean: values.iter().sum::<f64>() / values.len() as f64,
    }
}

/// Linear-interpolation quantile on a sorted slice (the common spreadsheet
/// convention: h = (n−1)·q).
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let low = h.floor() as usize;
    let high = h.ceil() as usize;
    sorted[low] + (h - low as f64) * (sorted[high] - sorted[low])
}

/// Distribution summaries over a scenario's runs.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct GridSummary {
    pub runs: usize,
    pub congestion: MetricSummary,
    pub qubits_at_max: MetricSummary,
    pub operations_at_max: MetricSummary,
    pub reversal_count: MetricSummary,
    pub crossing_count: MetricSummary,
}

/// Summarizes congestion, resource peaks, reversals, and crossings.
///
/// `u128` resource counts are summarized in `f64`; at the magnitudes the
/// summaries are read at, the 2⁻⁵³ relative rounding is irrelevant, and the
/// per-run CSV keeps the exact integers.
pub fn summarize(reports: &[GridRunReport]) -> Result<GridSummary, GridError> {
    if reports.is_empty() {
        return Err(GridError::EmptyInput);
    }
    let collect = |f: &dyn Fn(&GridRunReport) -> f64| -> Vec<f64> {
        reports.iter().map(f).collect()
    };
    let mut congestion = collect(&|r| f64::from(r.congestion));
    let mut qubits = collect(&|r| r.qubits_at_max as f64);
    let mut operations = collect(&|r| r.operations_at_max as f64);
    let mut reversals = collect(&|r| f64::from(r.reversal_count));
    let mut crossings = collect(&|r| f64::from(r.crossing_count));
    Ok(GridSummary {
        runs: reports.len(),
        congestion: summarize_metric(&mut congestion),
        qubits_at_max: summarize_metric(&mut qubits),
        operations_at_max: summarize_metric(&mut operations),
        reversal_count: summarize_metric(&mut reversals),
        crossing_count: summarize_metric(&mut crossings),
    })
}
