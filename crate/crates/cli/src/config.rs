//! Run configuration: a JSON file merged under explicit flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub nodes: Option<usize>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub nodes: Option<usize>,
    pub tolerances: BTreeMap<String, f64>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Flags win over the file; the file wins over `CHARVAR_SEED`, which
    /// wins over the built-in seed 0.
    pub fn merge(file: FileConfig, seed_flag: Option<u64>, env_seed: Option<u64>, output_flag: Option<PathBuf>) -> Self {
        RunConfig {
            seed: seed_flag.or(file.seed).or(env_seed).unwrap_or(0),
            nodes: file.nodes,
            tolerances: file.tolerances,
            output: output_flag.or(file.output),
        }
    }

    pub fn load(path: Option<&Path>, seed_flag: Option<u64>, output_flag: Option<PathBuf>) -> Result<Self, CliError> {
        let env_seed = match std::env::var("CHARVAR_SEED") {
            Ok(v) => Some(v.trim().parse().map_err(|_| CliError::Usage(format!("CHARVAR_SEED is not an integer: {v}")))?),
            Err(_) => None,
        };
        let file = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("malformed config {}: {e}", p.display())))?
            }
            None => FileConfig::default(),
        };
        Ok(Self::merge(file, seed_flag, env_seed, output_flag))
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    /// An explicit flag, else the config file, else `default`.
    pub fn nodes_or(&self, flag: Option<usize>, default: usize) -> usize {
        flag.or(self.nodes).unwrap_or(default)
    }
}
