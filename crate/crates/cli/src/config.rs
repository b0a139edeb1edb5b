//! Config plumbing: JSON file + flag merging with strict key validation.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};
use std::path::Path;
use thiserror::Error;

/// The two failure classes the CLI distinguishes, mapped onto exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid parameters, unreadable or contradictory config: exit 2.
    #[error("{0}")]
    Config(String),
    /// A well-formed request whose computation failed: exit 1.
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

/// Loads a JSON config file into a key map, or an empty map without a path.
///
/// The optional `"command"` key must match the subcommand being run; it is
/// consumed here so the per-command deserialization only sees parameters.
pub fn load_config_map(path: Option<&Path>, command: &str) -> Result<Map<String, Value>, CliError> {
    let Some(path) = path else {
        return Ok(Map::new());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("config {} is not valid JSON: {e}", path.display())))?;
    let Value::Object(mut map) = value else {
        return Err(CliError::Config(format!(
            "config {} must be a JSON object",
            path.display()
        )));
    };
    if let Some(declared) = map.remove("command") {
        if declared != Value::String(command.to_string()) {
            return Err(CliError::Config(format!(
                "config declares command {declared}, but `{command}` was invoked"
            )));
        }
    }
    Ok(map)
}

/// Writes a flag value over the config map when the flag was given.
pub fn override_key<T: Serialize>(map: &mut Map<String, Value>, key: &str, flag: &Option<T>) {
    if let Some(value) = flag {
        map.insert(
            key.to_string(),
            serde_json::to_value(value).expect("flag values are serializable"),
        );
    }
}

/// Final step of the merge: deserialize into the command's config struct,
/// rejecting unknown keys.
pub fn finish<T: DeserializeOwned>(map: Map<String, Value>) -> Result<T, CliError> {
    serde_json::from_value(Value::Object(map))
        .map_err(|e| CliError::Config(format!("invalid configuration: {e}")))
}
