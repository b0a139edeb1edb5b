//! `purecc resources` — per-repeater memory/operation costs versus the
//! fidelity achieved, swept over rounds for each path length.

use super::{starting_fidelity, target_fidelity, SchemeChoice};
use crate::config::{self, CliError};
use crate::output::{count_value, emit, float_value, Format, Table};
use clap::Args;
use purecc::analytic::{
    fidelity_trajectory, iterations_to_target, memory_required, operations_required,
};
use serde::Deserialize;
use serde_json::Value;
use std::path::PathBuf;

#[derive(Args)]
pub struct ResourcesArgs {
    /// JSON config file; flags given here override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Starting fidelity in (0.5, 1]
    #[arg(long)]
    f0: Option<f64>,
    /// Target fidelity the sweep must reach
    #[arg(long)]
    target: Option<f64>,
    /// Path lengths (edge counts), comma separated
    #[arg(long, value_delimiter = ',')]
    lengths: Option<Vec<u32>>,
    /// Which scheme(s) to tabulate
    #[arg(long, value_enum)]
    scheme: Option<SchemeChoice>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct ResourcesConfig {
    f0: f64,
    target: f64,
    lengths: Vec<u32>,
    scheme: SchemeChoice,
    out: Option<PathBuf>,
    format: Format,
}

impl Default for ResourcesConfig {
    fn default() -> Self {
        ResourcesConfig {
            f0: 0.51,
            target: 0.99,
            lengths: vec![4, 6, 8],
            scheme: SchemeChoice::Both,
            out: None,
            format: Format::Csv,
        }
    }
}

pub fn run(args: ResourcesArgs) -> Result<(), CliError> {
    let mut map = config::load_config_map(args.config.as_deref(), "resources")?;
    config::override_key(&mut map, "f0", &args.f0);
    config::override_key(&mut map, "target", &args.target);
    config::override_key(&mut map, "lengths", &args.lengths);
    config::override_key(&mut map, "scheme", &args.scheme);
    config::override_key(&mut map, "out", &args.out);
    config::override_key(&mut map, "format", &args.format);
    let cfg: ResourcesConfig = config::finish(map)?;
    if cfg.lengths.is_empty() {
        return Err(CliError::Config("lengths list must not be empty".to_string()));
    }
    if cfg.lengths.iter().any(|&l| l == 0) {
        return Err(CliError::Config("path lengths must be positive".to_string()));
    }
    let start = starting_fidelity(cfg.f0)?;
    let goal = target_fidelity(cfg.target)?;

    let mut table = Table::new(vec![
        "scheme",
        "ell",
        "n",
        "achieved_fidelity",
        "qubits",
        "operations",
    ]);
    for scheme in cfg.scheme.schemes() {
        let rounds = iterations_to_target(scheme, start, goal)
            .map_err(|e| CliError::Compute(e.to_string()))?
            .max(1);
        let trajectory = fidelity_trajectory(scheme, start, rounds)
            .map_err(|e| CliError::Compute(e.to_string()))?;
        for &length in &cfg.lengths {
            for n in 1..=rounds {
                let qubits = memory_required(scheme, n, length).map_err(|e| {
                    CliError::Compute(format!("n={n}, ell={length}: {e}"))
                })?;
                let operations = operations_required(scheme, n, length);
                table.push(vec![
                    Value::from(scheme.label()),
                    Value::from(length),
                    Value::from(n),
                    float_value(trajectory.values[n as usize].value()),
                    count_value(qubits),
                    count_value(operations),
                ]);
            }
        }
    }
    emit(cfg.out.as_deref(), &table.render(cfg.format))
}
