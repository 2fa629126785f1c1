use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive, Zero};

use super::target::TargetSpec;
use crate::error::{Error, Result};
use crate::rational::{floor_i64, int, product_ratio, rat};
use crate::Rational;

/// One component `X_alpha` of the inertia stack.
#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    pub alpha: Rational,
    /// Order of `exp(2 pi i alpha)`.
    pub r: i64,
    /// `C_alpha = { i : alpha w_i in Z }`.
    pub fixed_coordinates: Vec<usize>,
    /// `{ j : alpha b_j in Z }`.
    pub fixed_equations: Vec<usize>,
    pub dimension: usize,
    pub age: i64,
    /// `prod b_j / prod w_i` over the fixed equations and coordinates.
    pub degree: Rational,
}

impl Sector {
    pub fn is_untwisted(&self) -> bool {
        self.alpha.is_zero()
    }

    /// `<1 - alpha>`.
    pub fn dual_alpha(&self) -> Rational {
        dual_alpha(&self.alpha)
    }

    /// Short label such as `1/3`, `0` for the untwisted sector.
    pub fn label(&self) -> String {
        crate::rational::format(&self.alpha)
    }
}

pub fn dual_alpha(alpha: &Rational) -> Rational {
    if alpha.is_zero() {
        alpha.clone()
    } else {
        int(1) - alpha
    }
}

/// A closed coordinate stratum `Ubar_Lambda` of a zero-dimensional sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialCycle {
    /// Coordinates set to zero, a subset of the fixed coordinates, sorted.
    pub lambda: Vec<usize>,
    /// Fixed equations vanishing identically on `U_Lambda`.
    pub gamma: Vec<usize>,
    /// Degree of the open stratum `U_Lambda` intersected with the sector.
    pub open_mass: Rational,
    /// Degree of the closed stratum intersected with the sector.
    pub closure_degree: Rational,
}

/// `sum_j floor(alpha b_j) - sum_i floor(alpha w_i)`.
pub fn sector_age(target: &TargetSpec, alpha: &Rational) -> i64 {
    let fl = |x: i64| floor_i64(&(alpha * int(x)));
    target.degrees().iter().map(|&b| fl(b)).sum::<i64>() - target.weights().iter().map(|&w| fl(w)).sum::<i64>()
}

/// The sector at `alpha`, or `None` when `X_alpha` is empty for generic equations.
pub fn sector_at(target: &TargetSpec, alpha: &Rational) -> Result<Option<Sector>> {
    let integral = |x: i64| (alpha * int(x)).is_integer();
    let fixed_coordinates: Vec<usize> = (0..target.ncoords()).filter(|&i| integral(target.weights()[i])).collect();
    let fixed_equations: Vec<usize> =
        (0..target.degrees().len()).filter(|&j| integral(target.degrees()[j])).collect();
    if fixed_coordinates.is_empty() || fixed_coordinates.len() < 1 + fixed_equations.len() {
        return Ok(None);
    }
    let dimension = fixed_coordinates.len() - 1 - fixed_equations.len();
    if !alpha.is_zero() && dimension >= 2 {
        return Err(Error::Validation(format!(
            "sector {} has dimension {dimension}, the target is not quasi-smooth and well-formed",
            crate::rational::format(alpha)
        )));
    }
    let ws: Vec<i64> = fixed_coordinates.iter().map(|&i| target.weights()[i]).collect();
    if let Some(&j) = fixed_equations.iter().find(|&&j| !representable(target.degrees()[j], &ws)) {
        return Err(Error::Validation(format!(
            "equation {j} vanishes on the fixed locus of sector {}, the target is not quasi-smooth",
            crate::rational::format(alpha)
        )));
    }
    let age = sector_age(target, alpha);
    if age < 0 {
        return Err(Error::Internal(format!("negative age at {}", crate::rational::format(alpha))));
    }
    let degree = product_ratio(
        fixed_equations.iter().map(|&j| target.degrees()[j]),
        fixed_coordinates.iter().map(|&i| target.weights()[i]),
    );
    let r = alpha.denom().to_i64().expect("small denominator");
    Ok(Some(Sector { alpha: alpha.clone(), r, fixed_coordinates, fixed_equations, dimension, age, degree }))
}

/// All nonempty sectors, ascending in `alpha`, starting with the untwisted one.
pub fn enumerate_sectors(target: &TargetSpec) -> Result<Vec<Sector>> {
    let mut alphas: BTreeSet<Rational> = BTreeSet::new();
    for &w in target.weights() {
        for k in 0..w {
            alphas.insert(rat(k, w));
        }
    }
    let mut out = Vec::new();
    for a in alphas {
        if let Some(s) = sector_at(target, &a)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Whether `b` is a non-negative integer combination of `ws`.
pub fn representable(b: i64, ws: &[i64]) -> bool {
    if b < 0 {
        return false;
    }
    let b = b as usize;
    let mut ok = vec![false; b + 1];
    ok[0] = true;
    for v in 1..=b {
        ok[v] = ws.iter().any(|&w| w > 0 && (w as usize) <= v && ok[v - w as usize]);
    }
    ok[b]
}

/// Fixed equations that vanish identically on `U_Lambda` for generic equations.
pub fn vanishing_equations(target: &TargetSpec, sector: &Sector, lambda: &[usize]) -> Vec<usize> {
    let rest: Vec<i64> = sector
        .fixed_coordinates
        .iter()
        .filter(|i| !lambda.contains(i))
        .map(|&i| target.weights()[i])
        .collect();
    sector
        .fixed_equations
        .iter()
        .copied()
        .filter(|&j| !representable(target.degrees()[j], &rest))
        .collect()
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(1 << items.len());
    for mask in 0u64..(1u64 << items.len()) {
        out.push(items.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect());
    }
    out.sort();
    out
}

fn is_superset(big: &[usize], small: &[usize]) -> bool {
    small.iter().all(|i| big.contains(i))
}

/// Every stratum passing the weight and codimension filters, with its mass,
/// including those whose open part turns out empty.
pub fn special_strata(target: &TargetSpec, sector: &Sector) -> Result<Vec<SpecialCycle>> {
    if sector.dimension != 0 {
        return Err(Error::Domain(format!(
            "special cycles live on zero-dimensional sectors, {} has dimension {}",
            sector.label(),
            sector.dimension
        )));
    }
    let w = target.weights();
    let mut cands: Vec<SpecialCycle> = Vec::new();
    for lambda in subsets(&sector.fixed_coordinates) {
        let complement: Vec<usize> =
            sector.fixed_coordinates.iter().copied().filter(|i| !lambda.contains(i)).collect();
        let disjoint = lambda.iter().all(|&i| complement.iter().all(|&k| w[k] != w[i]));
        if !disjoint {
            continue;
        }
        let gamma = vanishing_equations(target, sector, &lambda);
        if gamma.len() != lambda.len() || complement.is_empty() {
            continue;
        }
        let closure_degree = product_ratio(
            sector.fixed_equations.iter().filter(|j| !gamma.contains(j)).map(|&j| target.degrees()[j]),
            complement.iter().map(|&i| w[i]),
        );
        cands.push(SpecialCycle { lambda, gamma, open_mass: Rational::zero(), closure_degree });
    }
    // inclusion-exclusion from the deepest strata outwards
    cands.sort_by(|a, b| b.lambda.len().cmp(&a.lambda.len()).then_with(|| a.lambda.cmp(&b.lambda)));
    for k in 0..cands.len() {
        let mut mass = cands[k].closure_degree.clone();
        for other in &cands[..k] {
            if other.lambda.len() > cands[k].lambda.len() && is_superset(&other.lambda, &cands[k].lambda) {
                mass -= &other.open_mass;
            }
        }
        if mass.is_negative() {
            return Err(Error::Internal(format!(
                "negative stratum mass {} at {:?} in sector {}",
                crate::rational::format(&mass),
                cands[k].lambda,
                sector.label()
            )));
        }
        cands[k].open_mass = mass;
    }
    cands.sort_by(|a, b| a.lambda.cmp(&b.lambda));
    Ok(cands)
}

/// Strata with nonempty open part, lexicographic in `Lambda`.
pub fn enumerate_special_cycles(target: &TargetSpec, sector: &Sector) -> Result<Vec<SpecialCycle>> {
    Ok(special_strata(target, sector)?.into_iter().filter(|c| c.open_mass.is_positive()).collect())
}
