//! Run configuration: a single JSON document.

use std::fmt;
use std::path::PathBuf;

use orbimirror::cohomology::ClassDescriptor;
use orbimirror::git::Extension;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub weights: Vec<i64>,
    pub degrees: Vec<i64>,
    #[serde(alias = "truncation")]
    pub truncation_total_degree: u32,
    #[serde(default)]
    pub extension: ExtensionSpec,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Invariants]
}

/// `"auto"` or an explicit list of classes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawExtension", into = "RawExtension")]
pub enum ExtensionSpec {
    #[default]
    Auto,
    Explicit(Vec<ClassSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    /// `"p/q"`.
    pub alpha: String,
    /// Coordinates set to zero for a special cycle.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawExtension {
    Keyword(String),
    List(Vec<ClassSpec>),
}

impl TryFrom<RawExtension> for ExtensionSpec {
    type Error = String;

    fn try_from(raw: RawExtension) -> Result<Self, String> {
        match raw {
            RawExtension::Keyword(k) if k == "auto" => Ok(ExtensionSpec::Auto),
            RawExtension::Keyword(k) => Err(format!("extension must be \"auto\" or a list of classes, got \"{k}\"")),
            RawExtension::List(l) => Ok(ExtensionSpec::Explicit(l)),
        }
    }
}

impl From<ExtensionSpec> for RawExtension {
    fn from(e: ExtensionSpec) -> Self {
        match e {
            ExtensionSpec::Auto => RawExtension::Keyword("auto".into()),
            ExtensionSpec::Explicit(l) => RawExtension::List(l),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputKind {
    Sectors,
    Basis,
    Git,
    IFunction,
    MirrorMap,
    Invariants,
    CrossChecks,
}

impl OutputKind {
    pub fn name(self) -> &'static str {
        match self {
            OutputKind::Sectors => "sectors",
            OutputKind::Basis => "basis",
            OutputKind::Git => "git",
            OutputKind::IFunction => "i-function",
            OutputKind::MirrorMap => "mirror-map",
            OutputKind::Invariants => "invariants",
            OutputKind::CrossChecks => "cross-checks",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    /// Malformed document, with the parser's line and column.
    Parse(String),
    /// A field that parsed but is not acceptable.
    Field { field: String, message: String },
    Io(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse(m) => write!(f, "invalid config: {m}"),
            ConfigError::Field { field, message } => write!(f, "invalid config field `{field}`: {message}"),
            ConfigError::Io(m) => write!(f, "cannot read config: {m}"),
        }
    }
}

impl std::error::Error for ConfigError {}

fn field(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Field { field: field.into(), message: message.into() }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let cfg: RunConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    /// Shape checks that do not need the geometry; the target itself is
    /// validated when the pipeline builds it.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.weights.is_empty() {
            return Err(field("weights", "must be non-empty"));
        }
        if self.degrees.is_empty() {
            return Err(field("degrees", "must be non-empty"));
        }
        if self.outputs.is_empty() {
            return Err(field("outputs", "must name at least one output"));
        }
        let mut seen = self.outputs.clone();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(field("outputs", "contains duplicates"));
        }
        self.core_extension()?;
        Ok(())
    }

    pub fn core_extension(&self) -> Result<Extension, ConfigError> {
        match &self.extension {
            ExtensionSpec::Auto => Ok(Extension::Auto),
            ExtensionSpec::Explicit(list) => {
                let mut out = Vec::with_capacity(list.len());
                for (i, c) in list.iter().enumerate() {
                    let alpha = orbimirror::rational::parse(&c.alpha)
                        .ok_or_else(|| field(format!("extension[{i}].alpha"), format!("\"{}\" is not a rational", c.alpha)))?;
                    if alpha <= orbimirror::Rational::from_integer(0.into())
                        || alpha >= orbimirror::Rational::from_integer(1.into())
                    {
                        return Err(field(format!("extension[{i}].alpha"), "must lie strictly between 0 and 1"));
                    }
                    let mut lambda = c.lambda.clone();
                    lambda.sort_unstable();
                    if lambda.windows(2).any(|w| w[0] == w[1]) || lambda.iter().any(|&x| x >= self.weights.len()) {
                        return Err(field(format!("extension[{i}].lambda"), "must list distinct coordinate indices"));
                    }
                    out.push(ClassDescriptor { alpha, lambda });
                }
                Ok(Extension::Explicit(out))
            }
        }
    }

    pub fn wants(&self, k: OutputKind) -> bool {
        self.outputs.contains(&k)
    }
}

/// The part of a config that determines the computed content.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComputeSpec {
    pub weights: Vec<i64>,
    pub degrees: Vec<i64>,
    pub truncation_total_degree: u32,
    pub extension: ExtensionSpec,
    pub outputs: Vec<OutputKind>,
}

impl From<&RunConfig> for ComputeSpec {
    fn from(c: &RunConfig) -> Self {
        ComputeSpec {
            weights: c.weights.clone(),
            degrees: c.degrees.clone(),
            truncation_total_degree: c.truncation_total_degree,
            extension: c.extension.clone(),
            outputs: c.outputs.clone(),
        }
    }
}
