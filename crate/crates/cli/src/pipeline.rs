//! Stage-by-stage orchestration into a [`ResultBundle`].

use std::fmt;
use std::time::{Duration, Instant};

use orbimirror::checks;
use orbimirror::cohomology::{
    pairing_matrix, sectorwise_algebra, special_strata, ClassKind, PairingNormalization, StateSpace, TargetSpec,
};
use orbimirror::git::{build_weight_matrix, resolve_extension, verify_calabi_yau};
use orbimirror::ifunction::{assemble_i, q_vars, raw_terms};
use orbimirror::mirror::{
    build_mirror_map, check_j_shape, extract_f, extract_mu, flat_vars, invert_mirror_map, normalized_i,
    transform_to_j, validate_extension, MirrorResult,
};
use orbimirror::rational::format as fmt_rat;
use orbimirror::{Error, Model, Rational, Series};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{ComputeSpec, OutputKind, RunConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ResultBundle {
    pub config: ComputeSpec,
    pub engine_version: String,
    pub outputs: Outputs,
    /// SHA-256 over the config, engine version and outputs.
    pub content_hash: String,
    #[serde(skip)]
    pub timing: Timing,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Timing {
    pub stages: Vec<(&'static str, Duration)>,
    pub cache_hit: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sectors: Option<Vec<SectorRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub git: Option<GitRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i_function: Option<Vec<ITermRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirror_map: Option<MirrorMapRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_checks: Option<Vec<CheckRecord>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SectorRecord {
    pub alpha: String,
    pub order: i64,
    pub age: i64,
    pub dimension: usize,
    pub degree: String,
    pub fixed_coordinates: Vec<usize>,
    pub fixed_equations: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strata: Vec<StratumRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StratumRecord {
    pub lambda: Vec<usize>,
    pub gamma: Vec<usize>,
    pub open_mass: String,
    pub closure_degree: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BasisRecord {
    pub classes: Vec<ClassRecord>,
    /// Nonzero pairing entries with `i <= j`.
    pub pairing: Vec<PairingEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassRecord {
    pub index: usize,
    pub label: String,
    pub alpha: String,
    pub kind: String,
    pub cr_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairingEntry {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GitRecord {
    pub extension: Vec<String>,
    pub weight_matrix: Vec<Vec<i64>>,
    pub multidegrees: Vec<Vec<i64>>,
    pub lcm: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ITermRecord {
    pub d: Vec<u32>,
    pub alpha: String,
    pub class: String,
    pub h_power: u32,
    pub z_exponent: i64,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub name: String,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub d: Vec<u32>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MirrorMapRecord {
    /// `(Q, t)` in terms of `q`.
    pub map: Vec<SeriesRecord>,
    /// `q` in terms of `(Q, t)`.
    pub inverse: Vec<SeriesRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantsRecord {
    /// Extension class labels, in the order of `k`.
    pub classes: Vec<String>,
    /// Curve degree against `H` is `d / lcm`.
    pub lcm: i64,
    pub truncation: u32,
    /// Coefficients of `Q^d t^k` in the potential.
    pub terms: Vec<InvariantTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantTerm {
    pub d: u32,
    pub k: Vec<u32>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A failure tagged with the stage that raised it.
#[derive(Debug, Clone, PartialEq)]
pub struct StageError {
    pub stage: &'static str,
    pub error: Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage `{}` failed: {}", self.stage, self.error)?;
        if let Error::NonInvertibleExtension { classes, .. } = &self.error {
            write!(
                f,
                "\nthe mirror map has no coordinate for {}; add them to the extension to make it invertible",
                classes.join(", ")
            )?;
        }
        Ok(())
    }
}

impl std::error::Error for StageError {}

impl StageError {
    pub fn exit_code(&self) -> i32 {
        self.error.exit_code()
    }
}

struct Clock {
    stages: Vec<(&'static str, Duration)>,
}

impl Clock {
    fn stage<T>(&mut self, name: &'static str, f: impl FnOnce() -> orbimirror::Result<T>) -> Result<T, StageError> {
        let t = Instant::now();
        let out = f().map_err(|error| StageError { stage: name, error });
        self.stages.push((name, t.elapsed()));
        out
    }
}

fn series_terms(s: &Series) -> Vec<TermRecord> {
    s.terms().map(|(m, c)| TermRecord { d: m.exponents().to_vec(), value: fmt_rat(c) }).collect()
}

fn kind_name(k: &ClassKind) -> &'static str {
    match k {
        ClassKind::UntwistedPower(_) => "untwisted-power",
        ClassKind::SectorFundamental(_) => "sector-fundamental",
        ClassKind::SectorHyperplane(_) => "sector-hyperplane",
        ClassKind::SpecialCycle(..) => "special-cycle",
    }
}

fn sector_records(space: &StateSpace) -> Result<Vec<SectorRecord>, StageError> {
    let mut out = Vec::with_capacity(space.sectors.len());
    for s in &space.sectors {
        let strata = if s.dimension == 0 && !s.is_untwisted() {
            special_strata(&space.target, s)
                .map_err(|error| StageError { stage: "sectors", error })?
                .into_iter()
                .map(|c| StratumRecord {
                    lambda: c.lambda,
                    gamma: c.gamma,
                    open_mass: fmt_rat(&c.open_mass),
                    closure_degree: fmt_rat(&c.closure_degree),
                })
                .collect()
        } else {
            Vec::new()
        };
        out.push(SectorRecord {
            alpha: s.label(),
            order: s.r,
            age: s.age,
            dimension: s.dimension,
            degree: fmt_rat(&s.degree),
            fixed_coordinates: s.fixed_coordinates.clone(),
            fixed_equations: s.fixed_equations.clone(),
            strata,
        });
    }
    Ok(out)
}

/// Run the stages needed for the requested outputs.
pub fn run_pipeline(config: &RunConfig) -> Result<ResultBundle, StageError> {
    let mut clock = Clock { stages: Vec::new() };
    let extension = config.core_extension().map_err(|e| StageError {
        stage: "config",
        error: Error::Validation(e.to_string()),
    })?;
    let target = clock.stage("target", || TargetSpec::new(&config.weights, &config.degrees))?;
    let space = clock.stage("sectors", || StateSpace::new(&target))?;
    let mut outputs = Outputs::default();
    if config.wants(OutputKind::Sectors) {
        outputs.sectors = Some(sector_records(&space)?);
    }
    let wants_model = config.outputs.iter().any(|k| *k != OutputKind::Sectors);
    if wants_model {
        let algebra = clock.stage("basis", || sectorwise_algebra(&space))?;
        let pairing = clock.stage("basis", || pairing_matrix(&space, PairingNormalization::default()))?;
        if config.wants(OutputKind::Basis) {
            outputs.basis = Some(basis_record(&space, &pairing));
        }
        let phi = clock.stage("extension", || resolve_extension(&space, &extension))?;
        let git = clock.stage("git", || {
            let g = build_weight_matrix(&space, &phi)?;
            verify_calabi_yau(&g)?;
            Ok(g)
        })?;
        if config.wants(OutputKind::Git) {
            outputs.git = Some(GitRecord {
                extension: git.extension.iter().map(|e| e.label.clone()).collect(),
                weight_matrix: git.a.clone(),
                multidegrees: git.xi.clone(),
                lcm: git.w,
            });
        }
        let model = Model { space, algebra, pairing, phi, git };
        run_series_stages(config, &model, &mut clock, &mut outputs)?;
    }
    let spec = ComputeSpec::from(config);
    let content_hash = content_hash(&spec, &outputs);
    Ok(ResultBundle {
        config: spec,
        engine_version: orbimirror::VERSION.to_string(),
        outputs,
        content_hash,
        timing: Timing { stages: clock.stages, cache_hit: false },
    })
}

fn basis_record(space: &StateSpace, pairing: &orbimirror::cohomology::PairingMatrix) -> BasisRecord {
    let classes = space
        .classes
        .iter()
        .enumerate()
        .map(|(index, c)| ClassRecord {
            index,
            label: c.label(),
            alpha: space.sectors[c.sector].label(),
            kind: kind_name(&c.kind).to_string(),
            cr_degree: c.cr_degree,
        })
        .collect();
    let mut entries = Vec::new();
    for i in 0..space.dim() {
        for j in i..space.dim() {
            let v: &Rational = pairing.get(i, j);
            if *v != Rational::from_integer(0.into()) {
                entries.push(PairingEntry { i, j, value: fmt_rat(v) });
            }
        }
    }
    BasisRecord { classes, pairing: entries }
}

fn run_series_stages(
    config: &RunConfig,
    model: &Model,
    clock: &mut Clock,
    outputs: &mut Outputs,
) -> Result<(), StageError> {
    let wants_mirror = [OutputKind::MirrorMap, OutputKind::Invariants, OutputKind::CrossChecks]
        .iter()
        .any(|k| config.wants(*k));
    if !wants_mirror && !config.wants(OutputKind::IFunction) {
        return Ok(());
    }
    let d = config.truncation_total_degree;
    let i = clock.stage("i-function", || assemble_i(&model.space, &model.algebra, &model.git, d))?;
    if config.wants(OutputKind::IFunction) {
        outputs.i_function = Some(
            raw_terms(&model.space, &i)
                .into_iter()
                .map(|t| ITermRecord {
                    d: t.d,
                    alpha: fmt_rat(&t.alpha),
                    class: t.class,
                    h_power: t.h_power,
                    z_exponent: t.z_exponent,
                    coefficient: fmt_rat(&t.coefficient),
                })
                .collect(),
        );
    }
    if !wants_mirror {
        return Ok(());
    }
    let (mu, mirror_map, inverse) = clock.stage("mirror-map", || {
        let mu = extract_mu(model, &i);
        validate_extension(model, &mu)?;
        let map = build_mirror_map(model, &mu)?;
        let inv = invert_mirror_map(model, &map)?;
        Ok((mu, map, inv))
    })?;
    let j = clock.stage("j-function", || {
        let jq = normalized_i(model, &i, &mu)?;
        let j = transform_to_j(model, &jq, &inverse)?;
        check_j_shape(model, &j)?;
        Ok(j)
    })?;
    let f = clock.stage("invariants", || extract_f(model, &j))?;
    if config.wants(OutputKind::MirrorMap) {
        let qn = q_vars(model.m());
        let fv = flat_vars(model.m());
        outputs.mirror_map = Some(MirrorMapRecord {
            map: fv.iter().zip(&mirror_map).map(|(n, s)| SeriesRecord { name: n.clone(), terms: series_terms(s) }).collect(),
            inverse: qn.iter().zip(&inverse).map(|(n, s)| SeriesRecord { name: n.clone(), terms: series_terms(s) }).collect(),
        });
    }
    if config.wants(OutputKind::Invariants) {
        outputs.invariants = Some(InvariantsRecord {
            classes: f.phi_labels.clone(),
            lcm: model.git.w,
            truncation: d,
            terms: f
                .terms()
                .into_iter()
                .map(|(e, c)| InvariantTerm { d: e[0], k: e[1..].to_vec(), value: fmt_rat(&c) })
                .collect(),
        });
    }
    if config.wants(OutputKind::CrossChecks) {
        let result = MirrorResult { i, mu, mirror_map, inverse, j, f };
        let report = checks::report(model, &result);
        outputs.cross_checks = Some(
            report
                .into_iter()
                .map(|c| CheckRecord { name: c.name.to_string(), passed: c.passed, detail: c.detail })
                .collect(),
        );
    }
    Ok(())
}

pub fn content_hash(spec: &ComputeSpec, outputs: &Outputs) -> String {
    let body = serde_json::to_string(&(spec, orbimirror::VERSION, outputs)).expect("serializable");
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// Cache key: the computed content depends only on the spec and the engine version.
pub fn cache_key(spec: &ComputeSpec) -> String {
    let body = serde_json::to_string(&(spec, orbimirror::VERSION)).expect("serializable");
    hex::encode(Sha256::digest(body.as_bytes()))
}
