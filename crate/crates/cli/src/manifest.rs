use ddseries::TruncationPolicy;
use serde::Serialize;
use serde_json::{Map, Value};
use std::path::{Path, PathBuf};

pub const CODE_VERSION: &str = concat!("ddseries-cli ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: Map<String, Value>,
    pub policy: TruncationPolicy,
    pub code_version: String,
    pub outputs: Vec<String>,
    pub wall_time: f64,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}
