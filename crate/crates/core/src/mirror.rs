//! Mirror map, its inverse, the J-function and the extraction of the potential.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ifunction::{assemble_i, component, CohomSeries};
use crate::model::Model;
use crate::rational::{factorial, format as fmt_rat, int};
use crate::series::{invert_triangular_map, var_names, MultiIndex, PowerCache};
use crate::{Rational, Series};

/// The `z^0` and `z^{-1}` parts of the I-function.
#[derive(Debug, Clone)]
pub struct MuDecomposition {
    pub i0: Series,
    pub i1_h: Series,
    /// One component per extension class.
    pub i1_phi: Vec<Series>,
    /// Degree-2 components outside `{H, phi}`, by basis index.
    pub residual: Vec<(usize, Series)>,
}

pub fn extract_mu(model: &Model, i: &CohomSeries) -> MuDecomposition {
    let space = &model.space;
    let h = model.untwisted(1);
    let mut residual = Vec::new();
    for k in space.classes_of_degree(2) {
        if k == h || model.phi.contains(&k) {
            continue;
        }
        let c = component(i, k);
        if !c.is_zero() {
            residual.push((k, c));
        }
    }
    MuDecomposition {
        i0: component(i, model.untwisted(0)),
        i1_h: component(i, h),
        i1_phi: model.phi.iter().map(|&k| component(i, k)).collect(),
        residual,
    }
}

/// Fails when the `z^{-1}` part of the I-function leaves the span of `H` and the extension.
pub fn validate_extension(model: &Model, mu: &MuDecomposition) -> Result<()> {
    if mu.residual.is_empty() {
        return Ok(());
    }
    let classes = mu.residual.iter().map(|(k, _)| model.space.classes[*k].label()).collect();
    let mut witnesses: Vec<Vec<u32>> = Vec::new();
    for (_, s) in &mu.residual {
        for (m, _) in s.terms() {
            let d = m.exponents().to_vec();
            if !witnesses.contains(&d) {
                witnesses.push(d);
            }
        }
    }
    witnesses.sort_by(|a, b| MultiIndex::from_slice(a).cmp(&MultiIndex::from_slice(b)));
    Err(Error::NonInvertibleExtension { classes, witnesses })
}

/// `Q = q_0 exp(I_{1,H} / (w I_0))`, `t_i = I_{1,phi_i} / I_0`, as series in the `q`.
pub fn build_mirror_map(model: &Model, mu: &MuDecomposition) -> Result<Vec<Series>> {
    let inv0 = mu.i0.reciprocal()?;
    let g = mu.i1_h.mul(&inv0)?.scale(&(Rational::one() / int(model.git.w)));
    let q0 = Series::scalar_variable(mu.i0.vars().clone(), mu.i0.truncation(), 0);
    let mut images = vec![q0.mul(&g.exp()?)?];
    for p in &mu.i1_phi {
        images.push(p.mul(&inv0)?);
    }
    Ok(images)
}

pub fn flat_vars(m: usize) -> Arc<[String]> {
    let mut names = vec!["Q".to_string()];
    names.extend((1..=m).map(|i| format!("t{i}")));
    var_names(&names)
}

/// `q` as series in `(Q, t)`.
pub fn invert_mirror_map(model: &Model, images: &[Series]) -> Result<Vec<Series>> {
    invert_triangular_map(images, flat_vars(model.m()))
}

/// `exp(-I_{1,H} H / (z I_0)) I / I_0` in the `q` variables.
pub fn normalized_i(model: &Model, i: &CohomSeries, mu: &MuDecomposition) -> Result<CohomSeries> {
    let alg = &model.algebra;
    let inv0 = mu.i0.reciprocal()?;
    let g = mu.i1_h.mul(&inv0)?;
    let h = model.space.hyperplane_vector();
    let minus_gh = g.map_coeffs(alg, |c| h.iter().map(|x| -(x * c)).collect());
    let e = minus_gh.exp_in(alg)?;
    e.mul_in(alg, i)?.mul_scalar_series(alg, &inv0)
}

/// The J-function in the flat coordinates `(Q, t_1..t_m)`.
pub fn transform_to_j(model: &Model, j_q: &CohomSeries, inverse: &[Series]) -> Result<CohomSeries> {
    PowerCache::new(inverse)?.substitute_in(&model.algebra, j_q)
}

/// `J = 1 + sum t_i phi_i / z + O(z^{-2})`.
pub fn check_j_shape(model: &Model, j: &CohomSeries) -> Result<()> {
    let space = &model.space;
    let vars = j.vars().clone();
    let d = j.truncation();
    for k in space.classes_of_degree(0).into_iter().chain(space.classes_of_degree(2)) {
        let got = component(j, k);
        let want = if k == model.untwisted(0) {
            Series::scalar_one(vars.clone(), d)
        } else if let Some(i) = model.phi.iter().position(|&p| p == k) {
            Series::scalar_variable(vars.clone(), d, i + 1)
        } else {
            Series::zero(vars.clone(), d)
        };
        if got != want {
            return Err(Error::Internal(format!(
                "J-function has the wrong {} component: {got}",
                space.classes[k].label()
            )));
        }
    }
    Ok(())
}

/// The genus-zero potential `F(Q, t)` with its coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingFunction {
    pub series: Series,
    pub phi_labels: Vec<String>,
}

impl GeneratingFunction {
    pub fn coefficient(&self, d0: u32, k: &[u32]) -> Rational {
        let mut e = vec![d0];
        e.extend_from_slice(k);
        self.series.get(&e)
    }

    /// `<phi^k>_{0, |k|, d0/w}`, that is the coefficient times `prod k_i!`.
    pub fn invariant(&self, d0: u32, k: &[u32]) -> Rational {
        let mut c = self.coefficient(d0, k);
        for &ki in k {
            c *= Rational::from_integer(factorial(ki as u64));
        }
        c
    }

    /// Nonzero coefficients in graded order.
    pub fn terms(&self) -> Vec<(Vec<u32>, Rational)> {
        self.series.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect()
    }
}

/// Read `F` off the `z^{-2}` part of `J`.
///
/// Twisted insertions come from `(phi_i, J) = dF/dt_i`; the pure `Q` terms from the
/// `H^2` component through the divisor equation, which is also checked against every
/// other term with `d_0 > 0`.
pub fn extract_f(model: &Model, j: &CohomSeries) -> Result<GeneratingFunction> {
    let space = &model.space;
    let pairing = &model.pairing;
    let d = j.truncation();
    let vars = j.vars().clone();
    let m = model.m();
    let deg4 = space.classes_of_degree(4);
    let comps: Vec<(usize, Series)> = deg4.iter().map(|&k| (k, component(j, k))).collect();
    let mut f: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
    for (i, &phi) in model.phi.iter().enumerate() {
        let mut row = Series::zero(vars.clone(), d);
        for (k, c) in &comps {
            let p = pairing.get(phi, *k);
            if !p.is_zero() && !c.is_zero() {
                row = row.add(&c.scale(p))?;
            }
        }
        for (mono, r) in row.terms() {
            let mut e = mono.clone();
            e.set(i + 1, mono.get(i + 1) + 1);
            if e.get(0) == 0 && e.degree() <= 2 {
                continue;
            }
            if e.degree() > d {
                continue;
            }
            let v = r / int(e.get(i + 1) as i64);
            insert_consistent(&mut f, &e, v)?;
        }
    }
    let h2 = component(j, model.untwisted(2));
    let scale = space.target.h_cubed() * int(model.git.w);
    for (mono, c) in h2.terms() {
        let d0 = mono.get(0);
        if d0 == 0 {
            continue;
        }
        let v = c * &scale / int(d0 as i64);
        if (1..=m).all(|i| mono.get(i) == 0) {
            insert_consistent(&mut f, mono, v)?;
        } else {
            let prev = f.get(mono).cloned().unwrap_or_else(Rational::zero);
            if prev != v {
                return Err(inconsistency(mono, &prev, &v));
            }
        }
    }
    // terms with d_0 > 0 that the H^2 component says are zero
    for (mono, v) in &f {
        if mono.get(0) > 0 && h2.coeff(mono).is_none() && !v.is_zero() {
            return Err(inconsistency(mono, v, &Rational::zero()));
        }
    }
    let series = Series::from_scalar_terms(vars, d, f)?;
    Ok(GeneratingFunction { series, phi_labels: model.phi_labels() })
}

fn insert_consistent(f: &mut BTreeMap<MultiIndex, Rational>, e: &MultiIndex, v: Rational) -> Result<()> {
    match f.get(e) {
        Some(prev) if *prev != v => Err(inconsistency(e, prev, &v)),
        Some(_) => Ok(()),
        None => {
            f.insert(e.clone(), v);
            Ok(())
        }
    }
}

fn inconsistency(e: &MultiIndex, first: &Rational, second: &Rational) -> Error {
    Error::ExtractionInconsistency {
        monomial: format!("{:?}", e.exponents()),
        first: fmt_rat(first),
        second: fmt_rat(second),
    }
}

/// Everything computed for one target at one truncation.
#[derive(Debug, Clone)]
pub struct MirrorResult {
    pub i: CohomSeries,
    pub mu: MuDecomposition,
    /// `(Q, t)` in terms of `q`.
    pub mirror_map: Vec<Series>,
    /// `q` in terms of `(Q, t)`.
    pub inverse: Vec<Series>,
    pub j: CohomSeries,
    pub f: GeneratingFunction,
}

pub fn run(model: &Model, truncation: u32) -> Result<MirrorResult> {
    let i = assemble_i(&model.space, &model.algebra, &model.git, truncation)?;
    let mu = extract_mu(model, &i);
    validate_extension(model, &mu)?;
    let mirror_map = build_mirror_map(model, &mu)?;
    let inverse = invert_mirror_map(model, &mirror_map)?;
    let j_q = normalized_i(model, &i, &mu)?;
    let j = transform_to_j(model, &j_q, &inverse)?;
    check_j_shape(model, &j)?;
    let f = extract_f(model, &j)?;
    Ok(MirrorResult { i, mu, mirror_map, inverse, j, f })
}
