//! One invocation: read the config, apply overrides, consult the cache, render.

use std::fmt;
use std::io::Read;
use std::path::PathBuf;

use crate::cache;
use crate::config::{parse_config, ConfigError, Format, OutputKind, RunConfig};
use crate::pipeline::{run_pipeline, ResultBundle, StageError};
use crate::render::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Compute,
    Sectors,
    Basis,
    Git,
}

#[derive(Debug, Clone, Default)]
pub struct Invocation {
    /// `None` or `-` reads standard input.
    pub config: Option<PathBuf>,
    pub emit: Option<Format>,
    pub truncation: Option<u32>,
    pub no_cache: bool,
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Stage(StageError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Stage(e) => e.exit_code(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => e.fmt(f),
            CliError::Stage(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

pub fn read_config(path: Option<&PathBuf>) -> Result<RunConfig, ConfigError> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| ConfigError::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| ConfigError::Io(e.to_string()))?;
            s
        }
    };
    parse_config(&text)
}

/// Apply the verb and the command-line overrides to a parsed config.
pub fn effective_config(mut cfg: RunConfig, verb: Verb, inv: &Invocation) -> RunConfig {
    if let Some(d) = inv.truncation {
        cfg.truncation_total_degree = d;
    }
    if let Some(f) = inv.emit {
        cfg.format = f;
    }
    let only = match verb {
        Verb::Compute => None,
        Verb::Sectors => Some(OutputKind::Sectors),
        Verb::Basis => Some(OutputKind::Basis),
        Verb::Git => Some(OutputKind::Git),
    };
    if let Some(k) = only {
        cfg.outputs = vec![k];
    }
    cfg
}

/// Compute or load the bundle for a config.
pub fn bundle_for(cfg: &RunConfig, no_cache: bool) -> Result<ResultBundle, StageError> {
    let spec = (cfg).into();
    let dir = cache::resolve_dir(no_cache, cfg.cache_dir.as_deref());
    if let Some(dir) = &dir {
        if let Some(b) = cache::load(dir, &spec) {
            return Ok(b);
        }
    }
    let bundle = run_pipeline(cfg)?;
    if let Some(dir) = &dir {
        if let Err(e) = cache::store(dir, &bundle) {
            eprintln!("warning: could not write cache entry in {}: {e}", dir.display());
        }
    }
    Ok(bundle)
}

pub fn execute(verb: Verb, inv: &Invocation) -> Result<(ResultBundle, Vec<u8>), CliError> {
    let cfg = read_config(inv.config.as_ref()).map_err(CliError::Config)?;
    let cfg = effective_config(cfg, verb, inv);
    let bundle = bundle_for(&cfg, inv.no_cache).map_err(CliError::Stage)?;
    let bytes = render(&bundle, cfg.format);
    Ok((bundle, bytes))
}
