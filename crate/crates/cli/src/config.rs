//! Configuration resolution: defaults < TOML file < command-line flags.

use serde::Deserialize;
use std::fmt;
use std::path::{Path, PathBuf};

/// Runner error with its process exit status.
#[derive(Debug)]
pub enum RunError {
    /// Bad configuration (flags or file): exit 2.
    Config(String),
    /// Resource limit: exit 3.
    Resource(String),
    /// Computation or postcondition failure: exit 1.
    Failure(String),
}

impl RunError {
    pub fn status(&self) -> u8 {
        match self {
            RunError::Config(_) => 2,
            RunError::Resource(_) => 3,
            RunError::Failure(_) => 1,
        }
    }

    pub fn kind_label(&self) -> &'static str {
        match self {
            RunError::Config(_) => "config",
            RunError::Resource(_) => "resource-limit",
            RunError::Failure(_) => "failure",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RunError::Config(m) | RunError::Resource(m) | RunError::Failure(m) => m,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind_label(), self.message())
    }
}

impl From<ntmoments::Error> for RunError {
    fn from(e: ntmoments::Error) -> Self {
        match e {
            ntmoments::Error::ResourceLimit(m) => RunError::Resource(m),
            ntmoments::Error::InvalidArgument(m) => RunError::Config(m),
            other => RunError::Failure(other.to_string()),
        }
    }
}

/// TOML file shape: top-level global keys plus one optional table per
/// command carrying default parameter values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    #[serde(default)]
    pub sieve: toml::Table,
    #[serde(default)]
    pub delta: toml::Table,
    #[serde(default)]
    pub ecurve: toml::Table,
    #[serde(default)]
    pub moment: toml::Table,
    #[serde(default)]
    pub jutila: toml::Table,
    #[serde(default, rename = "voronoi-check")]
    pub voronoi_check: toml::Table,
    #[serde(default)]
    pub quadruples: toml::Table,
    #[serde(default, rename = "large-values")]
    pub large_values: toml::Table,
    #[serde(default, rename = "fit-summatory")]
    pub fit_summatory: toml::Table,
}

pub fn load_file(path: &Path) -> Result<FileConfig, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Config(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| RunError::Config(format!("{}: {e}", path.display())))
}

/// Typed lookups into a command's TOML table.
pub trait TableExt {
    fn get_u64(&self, key: &str) -> Option<u64>;
    fn get_f64(&self, key: &str) -> Option<f64>;
    fn get_str(&self, key: &str) -> Option<String>;
    fn get_u64_list(&self, key: &str) -> Option<Vec<u64>>;
}

impl TableExt for toml::Table {
    fn get_u64(&self, key: &str) -> Option<u64> {
        self.get(key).and_then(|v| v.as_integer()).map(|v| v as u64)
    }

    fn get_f64(&self, key: &str) -> Option<f64> {
        self.get(key)
            .and_then(|v| v.as_float().or_else(|| v.as_integer().map(|i| i as f64)))
    }

    fn get_str(&self, key: &str) -> Option<String> {
        self.get(key).and_then(|v| v.as_str()).map(String::from)
    }

    fn get_u64_list(&self, key: &str) -> Option<Vec<u64>> {
        self.get(key).and_then(|v| v.as_array()).map(|arr| {
            arr.iter()
                .filter_map(|v| v.as_integer())
                .map(|v| v as u64)
                .collect()
        })
    }
}

/// Resolved global settings.
#[derive(Debug, Clone)]
pub struct Globals {
    pub seed: u64,
    pub cache_dir: PathBuf,
    pub output: PathBuf,
    pub threads: Option<usize>,
}

pub fn resolve_globals(
    seed: Option<u64>,
    cache_dir: Option<PathBuf>,
    output: Option<PathBuf>,
    threads: Option<usize>,
    file: &FileConfig,
) -> Globals {
    let env_cache = std::env::var_os("NTMC_CACHE_DIR").map(PathBuf::from);
    Globals {
        seed: seed.or(file.seed).unwrap_or(1),
        cache_dir: cache_dir
            .or_else(|| file.cache_dir.clone())
            .or(env_cache)
            .unwrap_or_else(|| PathBuf::from("ntmc-cache")),
        output: output
            .or_else(|| file.output.clone())
            .unwrap_or_else(|| PathBuf::from("reports")),
        threads: threads.or(file.threads),
    }
}
