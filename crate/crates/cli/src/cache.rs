//! On-disk bundle cache keyed by the compute spec and engine version.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::config::ComputeSpec;
use crate::pipeline::{cache_key, content_hash, ResultBundle};

pub const CACHE_DIR_ENV: &str = "ORBIMIRROR_CACHE_DIR";

/// `--no-cache` wins, then the environment, then the config.
pub fn resolve_dir(no_cache: bool, config_dir: Option<&Path>) -> Option<PathBuf> {
    if no_cache {
        return None;
    }
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => config_dir.map(Path::to_path_buf),
    }
}

fn entry(dir: &Path, spec: &ComputeSpec) -> PathBuf {
    dir.join(format!("{}.json", cache_key(spec)))
}

/// A cached bundle, if present and intact.
pub fn load(dir: &Path, spec: &ComputeSpec) -> Option<ResultBundle> {
    let text = fs::read_to_string(entry(dir, spec)).ok()?;
    let mut b: ResultBundle = serde_json::from_str(&text).ok()?;
    let intact = b.config == *spec
        && b.engine_version == orbimirror::VERSION
        && b.content_hash == content_hash(&b.config, &b.outputs);
    if !intact {
        return None;
    }
    b.timing.cache_hit = true;
    Some(b)
}

pub fn store(dir: &Path, bundle: &ResultBundle) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let path = entry(dir, &bundle.config);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_vec(bundle).map_err(io::Error::other)?)?;
    fs::rename(tmp, path)
}
