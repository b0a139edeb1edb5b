//! `purecc fidelity` — fidelity trajectories for both schemes.

use super::{starting_fidelity, SchemeChoice};
use crate::config::{self, CliError};
use crate::output::{emit, float_value, Format, Table};
use clap::Args;
use serde::Deserialize;
use serde_json::Value;
use std::path::PathBuf;

#[derive(Args)]
pub struct FidelityArgs {
    /// JSON config file; flags given here override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Starting fidelities in (0.5, 1], comma separated
    #[arg(long, value_delimiter = ',')]
    f0: Option<Vec<f64>>,
    /// Number of rounds/concatenations to tabulate (rows n = 0..=rounds)
    #[arg(long)]
    rounds: Option<u32>,
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
struct FidelityConfig {
    f0: Vec<f64>,
    rounds: u32,
    scheme: SchemeChoice,
    out: Option<PathBuf>,
    format: Format,
}

impl Default for FidelityConfig {
    fn default() -> Self {
        FidelityConfig {
            f0: vec![0.51, 0.53, 0.55, 0.57, 0.59],
            rounds: 10,
            scheme: SchemeChoice::Both,
            out: None,
            format: Format::Csv,
        }
    }
}

pub fn run(args: FidelityArgs) -> Result<(), CliError> {
    let mut map = config::load_config_map(args.config.as_deref(), "fidelity")?;
    config::override_key(&mut map, "f0", &args.f0);
    config::override_key(&mut map, "rounds", &args.rounds);
    config::override_key(&mut map, "scheme", &args.scheme);
    config::override_key(&mut map, "out", &args.out);
    config::override_key(&mut map, "format", &args.format);
    let cfg: FidelityConfig = config::finish(map)?;
    if cfg.f0.is_empty() {
        return Err(CliError::Config("f0 list must not be empty".to_string()));
    }

    let mut table = Table::new(vec!["scheme", "F0", "n", "fidelity"]);
    for scheme in cfg.scheme.schemes() {
        for &f0 in &cfg.f0 {
            let start = starting_fidelity(f0)?;
            let trajectory = purecc::analytic::fidelity_trajectory(scheme, start, cfg.rounds)
                .map_err(|e| CliError::Compute(e.to_string()))?;
            for (n, value) in trajectory.values.iter().enumerate() {
                table.push(vec![
                    Value::from(scheme.label()),
                    float_value(f0),
                    Value::from(n as u64),
                    float_value(value.value()),
                ]);
            }
        }
    }
    emit(cfg.out.as_deref(), &table.render(cfg.format))
}
