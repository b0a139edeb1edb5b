//! `purecc verify` — formula-versus-circuit checks with an optional
//! deliberate-corruption fixture for exercising the failure path.

use crate::config::{self, CliError};
use crate::output::{emit, float_value, Format, Table};
use clap::Args;
use purecc::verify::{run_oracle_checks, FormulaSet, CHECK_NAMES};
use serde::Deserialize;
use serde_json::Value;
use std::path::PathBuf;

#[derive(Args)]
pub struct VerifyArgs {
    /// JSON config file; flags given here override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Substitute a deliberately wrong formula for the named check, to
    /// demonstrate the suite catches it (expects the check name)
    #[arg(long, hide = true)]
    corrupt: Option<String>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct VerifyConfig {
    corrupt: Option<String>,
    out: Option<PathBuf>,
    format: Format,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            corrupt: None,
            out: None,
            format: Format::Csv,
        }
    }
}

/// Builds the formula set, swapping in a wrong closed form for the named
/// check when corruption is requested.
fn formula_set(corrupt: Option<&str>) -> Result<FormulaSet, CliError> {
    let mut formulas = FormulaSet::default();
    match corrupt {
        None => {}
        Some("purification-fidelity") => formulas.purified_pair_fidelity = |p| 1.0 - p,
        Some("purification-acceptance") => formulas.purification_acceptance = |_| 1.0,
        Some("repetition-code-fidelity") => formulas.ecc_bell_fidelity = |p| 1.0 - p,
        Some("concatenation-level-1") => {
            formulas.concatenated_success = |levels, p| {
                if levels == 1 {
                    1.0 - p
                } else {
                    purecc::statevec::concatenated_success_probability(levels, p)
                }
            }
        }
        Some("concatenation-level-2") => {
            formulas.concatenated_success = |levels, p| {
                if levels == 2 {
                    1.0 - p
                } else {
                    purecc::statevec::concatenated_success_probability(levels, p)
                }
            }
        }
        Some("pair-error-reduction") => formulas.pair_error_reduction = |p| 2.0 * p,
        Some(other) => {
            return Err(CliError::Config(format!(
                "unknown check `{other}`; valid names: {}",
                CHECK_NAMES.join(", ")
            )))
        }
    }
    Ok(formulas)
}

pub fn run(args: VerifyArgs) -> Result<(), CliError> {
    let mut map = config::load_config_map(args.config.as_deref(), "verify")?;
    config::override_key(&mut map, "corrupt", &args.corrupt);
    config::override_key(&mut map, "out", &args.out);
    config::override_key(&mut map, "format", &args.format);
    let cfg: VerifyConfig = config::finish(map)?;

    let formulas = formula_set(cfg.corrupt.as_deref())?;
    let outcomes = run_oracle_checks(&formulas);

    let mut table = Table::new(vec!["check", "max_deviation", "tolerance", "status"]);
    for outcome in &outcomes {
        table.push(vec![
            Value::from(outcome.name),
            float_value(outcome.max_deviation),
            float_value(outcome.tolerance),
            Value::from(if outcome.passed() { "pass" } else { "FAIL" }),
        ]);
    }
    emit(cfg.out.as_deref(), &table.render(cfg.format))?;

    let failing: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.passed())
        .map(|o| o.name)
        .collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(CliError::Compute(format!(
            "checks failed: {}",
            failing.join(", ")
        )))
    }
}
