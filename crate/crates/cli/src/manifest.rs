//! Run manifests: enough to re-execute any command bit-identically.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::io::{read_json, write_json, CliError};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Flag values as strings, sorted by key for stable serialization.
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub tool_version: String,
    pub results_path: String,
}

impl RunManifest {
    pub fn new(
        command: &str,
        parameters: BTreeMap<String, String>,
        seed: u64,
        results_path: &Path,
    ) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            results_path: results_path.display().to_string(),
        }
    }

    pub fn save(&self, out_dir: &Path) -> Result<(), CliError> {
        write_json(&out_dir.join("manifest.json"), self)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }

    pub fn parameter(&self, key: &str) -> Result<&str, CliError> {
        self.parameters
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::BadFlag(format!("manifest is missing parameter '{key}'")))
    }

    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.parameter(key)?
            .parse()
            .map_err(|_| CliError::BadFlag(format!("manifest parameter '{key}' is malformed")))
    }
}
