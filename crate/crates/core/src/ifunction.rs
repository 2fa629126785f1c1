//! The extended I-function as a series in `q_0..q_m` with values in the admissible space.
//!
//! Each coefficient is stored as a vector over the admissible basis. The power
//! of `z` is implicit: a class of Chen-Ruan degree `2s` always carries `z^{-s}`,
//! and every class contribution is checked against that rule when it is built.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cohomology::StateSpace;
use crate::error::{Error, Result};
use crate::git::{enumerate_curve_classes, CurveClass, ExtendedGit};
use crate::rational::{int, is_negative_integer};
use crate::series::{var_names, MultiIndex, TruncatedSeries};
use crate::{CoefficientAlgebra, Rational};

/// Cohomology-valued series over the admissible basis.
pub type CohomSeries = TruncatedSeries<Vec<Rational>>;

/// One term `q^d` of the I-function.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassContribution {
    pub class: CurveClass,
    pub target_alpha: Rational,
    pub target_sector: usize,
    pub vdeg: i64,
    /// `prod w / prod b` over the pairings that are negative integers.
    pub scale: Rational,
    /// Coefficient vector over the admissible basis (zero if the term vanishes).
    pub value: Vec<Rational>,
}

/// Fractional part of `-e_0`.
pub fn target_sector(class: &CurveClass) -> Rational {
    class.target_alpha()
}

/// The class `1_beta` of a curve class together with the scale
/// `prod w_c / prod b_j` taken over negative-integer pairings.
///
/// On a point sector the scale is folded into the class, so the returned
/// scale is 1 and the class is the indicator of the closed stratum where the
/// coordinates with negative pairing vanish. `None` when that stratum is empty.
pub fn unit_class(space: &StateSpace, git: &ExtendedGit, class: &CurveClass) -> Option<(Vec<Rational>, Rational)> {
    let si = space.sector_index(&class.target_alpha())?;
    let (lambda, scale) = unit_scale(space, git, class);
    if space.sectors[si].dimension == 0 {
        let v = space.closed_stratum_class(si, &lambda);
        if v.iter().all(|x| x.is_zero()) {
            return None;
        }
        Some((v, Rational::one()))
    } else {
        space.power_class(si, 0).map(|k| (space.basis_vector(k), scale))
    }
}

/// Expansion of the products of `(cH + kz)^{+-1}` for one curve class.
///
/// Factors with `k != 0` are written `kz (1 + (c/k) H/z)` and expanded in the
/// nilpotent `h = H/z`; factors with `k = 0` contribute `c h z` and are counted
/// into `vdeg`. Columns of the extension block have `c = 0` and produce the
/// `1 / (e_a! z^{e_a})` prefactor.
pub fn hypergeometric_factor(space: &StateSpace, git: &ExtendedGit, class: &CurveClass) -> Result<ClassContribution> {
    let alpha = class.target_alpha();
    let si = space.sector_index(&alpha).ok_or_else(|| {
        Error::Internal(format!("curve class {:?} targets an empty sector", class.d))
    })?;
    let sector = &space.sectors[si];
    let dim = sector.dimension;
    let mut acc = FactorAcc::new(dim);
    for c in 0..git.ncols() {
        let coef = int(git.a[0][c]);
        let p = class.chi_pairing(git, c);
        if p.is_negative() {
            // numerator over k in (p, 0]
            let mut k = &p + int(1);
            while !k.is_positive() {
                acc.factor(&coef, &k, true);
                k += int(1);
            }
        } else if p.is_positive() {
            // denominator over k in (0, p]
            let mut k = p.clone();
            while k.is_positive() {
                acc.factor(&coef, &k, false);
                k -= int(1);
            }
        }
    }
    for (j, &b) in space.target.degrees().iter().enumerate() {
        let coef = int(b);
        let p = class.xi_pairing(git, j);
        if p.is_positive() {
            let mut k = p.clone();
            while k.is_positive() {
                acc.factor(&coef, &k, true);
                k -= int(1);
            }
        } else if p.is_negative() {
            let mut k = &p + int(1);
            while !k.is_positive() {
                acc.factor(&coef, &k, false);
                k += int(1);
            }
        }
    }
    let vdeg = acc.vdeg;
    if vdeg < 0 {
        return Err(Error::Internal(format!("negative virtual codimension for d = {:?}", class.d)));
    }
    if acc.z_exp != -sector.age {
        return Err(Error::Internal(format!(
            "I-function term d = {:?} is not homogeneous: z-exponent {} on a sector of age {}",
            class.d, acc.z_exp, sector.age
        )));
    }
    let mut value = space.zero_vector();
    let (_, scale) = unit_scale(space, git, class);
    if vdeg as usize <= dim && !acc.constant.is_zero() {
        if dim == 0 {
            if let Some((v, _)) = unit_class(space, git, class) {
                // the k = 0 constants cancel against the normalisation of 1_beta
                let coef = &acc.constant / &scale;
                for (x, y) in value.iter_mut().zip(v) {
                    *x = y * &coef;
                }
            }
        } else {
            for p in vdeg as usize..=dim {
                let k = space.power_class(si, p as u32).expect("power within sector dimension");
                value[k] = &acc.constant * &acc.poly[p - vdeg as usize];
            }
        }
    }
    Ok(ClassContribution { class: class.clone(), target_alpha: alpha, target_sector: si, vdeg, scale, value })
}

fn unit_scale(space: &StateSpace, git: &ExtendedGit, class: &CurveClass) -> (Vec<usize>, Rational) {
    let target = &space.target;
    let mut s = Rational::one();
    let mut lambda = Vec::new();
    for c in 0..git.ncoords {
        if is_negative_integer(&class.chi_pairing(git, c)) {
            s *= int(target.weights()[c]);
            lambda.push(c);
        }
    }
    for j in 0..target.degrees().len() {
        if is_negative_integer(&class.xi_pairing(git, j)) {
            s /= int(target.degrees()[j]);
        }
    }
    (lambda, s)
}

struct FactorAcc {
    constant: Rational,
    z_exp: i64,
    vdeg: i64,
    /// Polynomial in `h = H/z`, truncated at the sector dimension.
    poly: Vec<Rational>,
}

impl FactorAcc {
    fn new(dim: usize) -> Self {
        let mut poly = vec![Rational::zero(); dim + 1];
        poly[0] = Rational::one();
        FactorAcc { constant: Rational::one(), z_exp: 0, vdeg: 0, poly }
    }

    /// Multiply (or divide) by `c H + k z`.
    fn factor(&mut self, c: &Rational, k: &Rational, numerator: bool) {
        if k.is_zero() {
            if numerator {
                self.constant *= c;
                self.vdeg += 1;
                self.z_exp += 1;
            } else {
                self.constant /= c;
                self.vdeg -= 1;
                self.z_exp -= 1;
            }
            return;
        }
        if numerator {
            self.constant *= k;
            self.z_exp += 1;
        } else {
            self.constant /= k;
            self.z_exp -= 1;
        }
        if c.is_zero() || self.poly.len() == 1 {
            return;
        }
        let u = c / k;
        let n = self.poly.len();
        if numerator {
            for i in (1..n).rev() {
                let t = &self.poly[i - 1] * &u;
                self.poly[i] += t;
            }
        } else {
            // divide by (1 + u h): p_i -= u p_{i-1} in increasing order
            for i in 1..n {
                let t = &self.poly[i - 1] * &u;
                self.poly[i] -= t;
            }
        }
    }
}

/// The I-function through total degree `max_degree` in `q_0..q_m`.
pub fn assemble_i(
    space: &StateSpace,
    algebra: &CoefficientAlgebra<Rational>,
    git: &ExtendedGit,
    max_degree: u32,
) -> Result<CohomSeries> {
    let vars = q_vars(git.m());
    let classes = enumerate_curve_classes(space, git, max_degree);
    let terms: Vec<(MultiIndex, Vec<Rational>)> = classes
        .par_iter()
        .map(|c| hypergeometric_factor(space, git, c).map(|t| (c.d.clone(), t.value)))
        .collect::<Result<_>>()?;
    TruncatedSeries::from_terms(algebra, vars, max_degree, terms)
}

pub fn q_vars(m: usize) -> Arc<[String]> {
    let names: Vec<String> = (0..=m).map(|i| format!("q{i}")).collect();
    var_names(&names)
}

/// One stored monomial of a cohomology-valued series, with its `z` power made explicit.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTerm {
    pub d: Vec<u32>,
    pub alpha: Rational,
    pub class: String,
    pub h_power: u32,
    pub z_exponent: i64,
    pub coefficient: Rational,
}

/// Flatten a cohomology-valued series into explicit terms.
pub fn raw_terms(space: &StateSpace, series: &CohomSeries) -> Vec<RawTerm> {
    let mut out = Vec::new();
    for (m, v) in series.terms() {
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cl = &space.classes[k];
            out.push(RawTerm {
                d: m.exponents().to_vec(),
                alpha: space.sectors[cl.sector].alpha.clone(),
                class: cl.label(),
                h_power: cl.h_power,
                z_exponent: -cl.cr_degree / 2,
                coefficient: c.clone(),
            });
        }
    }
    out
}

/// Component of a cohomology-valued series along one basis class.
pub fn component(series: &CohomSeries, class: usize) -> TruncatedSeries<Rational> {
    let terms = series.terms().filter(|(_, v)| !v[class].is_zero()).map(|(m, v)| (m.clone(), v[class].clone()));
    TruncatedSeries::from_scalar_terms(series.vars().clone(), series.truncation(), terms)
        .expect("same variables")
}
