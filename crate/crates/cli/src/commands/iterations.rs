//! `purecc iterations` — rounds needed to reach target fidelities.

use super::{starting_fidelity, target_fidelity, SchemeChoice};
use crate::config::{self, CliError};
use crate::output::{emit, float_value, Format, Table};
use clap::Args;
use serde::Deserialize;
use serde_json::Value;
use std::path::PathBuf;

#[derive(Args)]
pub struct IterationsArgs {
    /// JSON config file; flags given here override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Starting fidelities in (0.5, 1], comma separated
    #[arg(long, value_delimiter = ',')]
    f0: Option<Vec<f64>>,
    /// Target fidelities in (0.5, 1], comma separated
    #[arg(long, value_delimiter = ',')]
    targets: Option<Vec<f64>>,
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
struct IterationsConfig {
    f0: Vec<f64>,
    targets: Vec<f64>,
    scheme: SchemeChoice,
    out: Option<PathBuf>,
    format: Format,
}

impl Default for IterationsConfig {
    fn default() -> Self {
        let mut targets: Vec<f64> = (11..=19).map(|i| f64::from(i) / 20.0).collect();
        targets.push(0.99);
        targets.push(0.999);
        IterationsConfig {
            f0: vec![0.51, 0.75, 0.9],
            targets,
            scheme: SchemeChoice::Both,
            out: None,
            format: Format::Csv,
        }
    }
}

pub fn run(args: IterationsArgs) -> Result<(), CliError> {
    let mut map = config::load_config_map(args.config.as_deref(), "iterations")?;
    config::override_key(&mut map, "f0", &args.f0);
    config::override_key(&mut map, "targets", &args.targets);
    config::override_key(&mut map, "scheme", &args.scheme);
    config::override_key(&mut map, "out", &args.out);
    config::override_key(&mut map, "format", &args.format);
    let cfg: IterationsConfig = config::finish(map)?;
    if cfg.f0.is_empty() || cfg.targets.is_empty() {
        return Err(CliError::Config(
            "f0 and targets lists must not be empty".to_string(),
        ));
    }

    let mut table = Table::new(vec!["scheme", "F0", "target", "n"]);
    for scheme in cfg.scheme.schemes() {
        for &f0 in &cfg.f0 {
            let start = starting_fidelity(f0)?;
            for &target in &cfg.targets {
                let goal = target_fidelity(target)?;
                let n = purecc::analytic::iterations_to_target(scheme, start, goal)
                    .map_err(|e| CliError::Compute(e.to_string()))?;
                table.push(vec![
                    Value::from(scheme.label()),
                    float_value(f0),
                    float_value(target),
                    Value::from(n),
                ]);
            }
        }
    }
    emit(cfg.out.as_deref(), &table.render(cfg.format))
}
