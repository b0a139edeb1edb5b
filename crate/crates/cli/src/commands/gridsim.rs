//! `purecc gridsim` — the seeded k-by-k congestion Monte Carlo, run for
//! both schemes over a range of grid sizes.
//!
//! Writes three artifacts: `{out}_purification.csv` and `{out}_ecc.csv`
//! with one row per run, plus `{out}_summary.json` with per-k distribution
//! summaries, the all-pairs crossing bound, and the empirical crossing
//! mean. Byte-identical reruns are guaranteed for identical configs.

use crate::config::{self, CliError};
use crate::output::float_value;
use clap::Args;
use purecc::analytic::{Fidelity, Scheme};
use purecc::gridsim::{
    expected_crossings_bound, expected_reversal_pairs, run_scenario, summarize, GridRunReport,
    GridScenario,
};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use std::path::PathBuf;

#[derive(Args)]
pub struct GridsimArgs {
    /// JSON config file; flags given here override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Smallest grid side
    #[arg(long)]
    k_min: Option<u32>,
    /// Largest grid side (inclusive)
    #[arg(long)]
    k_max: Option<u32>,
    /// Runs per grid size
    #[arg(long)]
    runs: Option<u32>,
    /// Per-terminal activation probability
    #[arg(long)]
    p: Option<f64>,
    /// Starting Bell-pair fidelity priced at the congested repeater
    #[arg(long)]
    f0: Option<f64>,
    /// Target fidelity the schemes must reach
    #[arg(long)]
    target: Option<f64>,
    /// Base seed (required): run i of grid size k draws from the
    /// substream seed ^ (k << 32) ^ i
    #[arg(long)]
    seed: Option<u64>,
    /// Output path prefix for the three artifact files
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct GridsimConfig {
    k_min: u32,
    k_max: u32,
    runs: u32,
    p: f64,
    f0: f64,
    target: f64,
    seed: Option<u64>,
    out: PathBuf,
}

impl Default for GridsimConfig {
    fn default() -> Self {
        GridsimConfig {
            k_min: 10,
            k_max: 20,
            runs: 50,
            p: 0.5,
            f0: 0.51,
            target: 0.99,
            seed: None,
            out: PathBuf::from("gridsim"),
        }
    }
}

fn scenario_seed(base: u64, k: u32) -> u64 {
    // Shift k into the high half so per-run substreams (base ^ k<<32 ^ i)
    // never collide across grid sizes.
    base ^ (u64::from(k) << 32)
}

pub fn run(args: GridsimArgs) -> Result<(), CliError> {
    let mut map = config::load_config_map(args.config.as_deref(), "gridsim")?;
    config::override_key(&mut map, "k_min", &args.k_min);
    config::override_key(&mut map, "k_max", &args.k_max);
    config::override_key(&mut map, "runs", &args.runs);
    config::override_key(&mut map, "p", &args.p);
    config::override_key(&mut map, "f0", &args.f0);
    config::override_key(&mut map, "target", &args.target);
    config::override_key(&mut map, "seed", &args.seed);
    config::override_key(&mut map, "out", &args.out);
    let cfg: GridsimConfig = config::finish(map)?;

    let Some(seed) = cfg.seed else {
        return Err(CliError::Config(
            "a seed is required (--seed or config key \"seed\"): runs are only meaningful as \
             reproducible experiments"
                .to_string(),
        ));
    };
    if cfg.k_min < 2 || cfg.k_min > cfg.k_max {
        return Err(CliError::Config(format!(
            "grid range {}..={} is invalid (need 2 <= k_min <= k_max)",
            cfg.k_min, cfg.k_max
        )));
    }
    if cfg.runs == 0 {
        return Err(CliError::Config("runs must be at least 1".to_string()));
    }
    if !(0.0..=1.0).contains(&cfg.p) {
        return Err(CliError::Config(format!(
            "activation probability {} is outside [0, 1]",
            cfg.p
        )));
    }
    let f0 = Fidelity::new(cfg.f0).map_err(|e| CliError::Config(e.to_string()))?;
    let target = Fidelity::new(cfg.target).map_err(|e| CliError::Config(e.to_string()))?;

    let prefix = cfg.out.to_string_lossy().into_owned();
    let mut scheme_reports = Map::new();
    for scheme in [Scheme::Purification, Scheme::ecc()] {
        let mut csv = String::from(GridRunReport::CSV_HEADER);
        csv.push('\n');
        let mut per_k = Vec::new();
        let mut iterations_used = 0u32;
        for k in cfg.k_min..=cfg.k_max {
            let scenario = GridScenario {
                k,
                p_activation: cfg.p,
                runs: cfg.runs,
                seed: scenario_seed(seed, k),
                scheme,
                initial_fidelity: f0,
                target_fidelity: target,
            };
            let reports = run_scenario(&scenario).map_err(|e| {
                CliError::Compute(format!("grid size {k}, scheme {}: {e}", scheme.label()))
            })?;
            iterations_used = reports.first().map_or(0, |r| r.iterations);
            for report in &reports {
                csv.push_str(&report.csv_row(k));
                csv.push('\n');
            }
            let summary = summarize(&reports)
                .map_err(|e| CliError::Compute(format!("grid size {k}: {e}")))?;
            per_k.push(json!({
                "k": k,
                "scenario_seed": scenario.seed,
                "crossing_bound": float_value(expected_crossings_bound(k, cfg.p)),
                "expected_reversal_pairs": float_value(expected_reversal_pairs(k, cfg.p)),
                "crossing_mean": float_value(summary.crossing_count.mean),
                "summary": serde_json::to_value(&summary).expect("summaries serialize"),
            }));
        }
        let path = PathBuf::from(format!("{prefix}_{}.csv", scheme.label()));
        std::fs::write(&path, &csv)
            .map_err(|e| CliError::Compute(format!("cannot write {}: {e}", path.display())))?;
        println!(
            "wrote {} ({} rows)",
            path.display(),
            csv.lines().count() - 1
        );
        scheme_reports.insert(
            scheme.label().to_string(),
            json!({ "iterations": iterations_used, "per_k": per_k }),
        );
    }

    let summary = json!({
        "rng": "chacha8",
        "seed": seed,
        "k_min": cfg.k_min,
        "k_max": cfg.k_max,
        "runs_per_k": cfg.runs,
        "p_activation": float_value(cfg.p),
        "f0": float_value(cfg.f0),
        "target": float_value(cfg.target),
        "schemes": Value::Object(scheme_reports),
    });
    let path = PathBuf::from(format!("{prefix}_summary.json"));
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    std::fs::write(&path, text)
        .map_err(|e| CliError::Compute(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}
