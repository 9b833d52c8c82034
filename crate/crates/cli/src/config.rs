use clap::Args;
use ddseries::TruncationPolicy;
use serde::Deserialize;
use std::path::{Path, PathBuf};

use crate::Failure;

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct Common {
    /// Absolute accuracy target for L-values.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Truncation point of the d- and m-sums.
    #[arg(long)]
    pub cutoff: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Seed for ChaCha8 draws.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Data file; a manifest is written next to it as `<out>.manifest.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with defaults for the flags above and a `policy` object.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    tolerance: Option<f64>,
    cutoff: Option<u64>,
    threads: Option<usize>,
    seed: Option<u64>,
    policy: Option<TruncationPolicy>,
}

/// Settings after applying flags over the config file over defaults.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub policy: TruncationPolicy,
    pub threads: Option<usize>,
    pub seed: u64,
}

fn read_config(path: &Path) -> Result<ConfigFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))
}

impl Common {
    pub fn resolve(&self) -> Result<Resolved, Failure> {
        let file = match &self.config {
            Some(p) => read_config(p)?,
            None => ConfigFile::default(),
        };
        let mut policy = file.policy.unwrap_or_default();
        if let Some(t) = self.tolerance.or(file.tolerance) {
            policy.tolerance = t;
        }
        if let Some(c) = self.cutoff.or(file.cutoff) {
            policy = policy.with_cutoffs(c, c);
        }
        policy.validate()?;
        let threads = self.threads.or(file.threads);
        if threads == Some(0) {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        Ok(Resolved {
            policy,
            threads,
            seed: self.seed.or(file.seed).unwrap_or(0),
        })
    }
}
