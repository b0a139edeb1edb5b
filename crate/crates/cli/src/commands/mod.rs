//! One module per subcommand.

pub mod capacity;
pub mod fidelity;
pub mod gridsim;
pub mod iterations;
pub mod resources;
pub mod verify;

use crate::config::CliError;
use purecc::analytic::{Fidelity, Scheme};
use serde::{Deserialize, Serialize};

/// Scheme selection shared by the tabulation commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SchemeChoice {
    Purification,
    Ecc,
    Both,
}

impl SchemeChoice {
    pub fn schemes(self) -> Vec<Scheme> {
        match self {
            SchemeChoice::Purification => vec![Scheme::Purification],
            SchemeChoice::Ecc => vec![Scheme::ecc()],
            SchemeChoice::Both => vec![Scheme::Purification, Scheme::ecc()],
        }
    }
}

/// Validates a starting fidelity for the tabulation commands, which all
/// require the purification-meaningful range (0.5, 1].
pub fn starting_fidelity(value: f64) -> Result<Fidelity, CliError> {
    if !(value > 0.5 && value <= 1.0) {
        return Err(CliError::Config(format!(
            "F0 = {value} is outside (0.5, 1]: purification only improves pairs strictly above \
             the 0.5 fixed point"
        )));
    }
    Fidelity::new(value).map_err(|e| CliError::Config(e.to_string()))
}

/// Validates a target fidelity in (0.5, 1].
pub fn target_fidelity(value: f64) -> Result<Fidelity, CliError> {
    if !(value > 0.5 && value <= 1.0) {
        return Err(CliError::Config(format!(
            "target fidelity {value} is outside (0.5, 1]"
        )));
    }
    Fidelity::new(value).map_err(|e| CliError::Config(e.to_string()))
}
