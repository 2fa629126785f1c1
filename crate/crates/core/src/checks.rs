//! Consistency checks reported alongside a computation.

use num_traits::Zero;

use crate::cohomology::special_strata;
use crate::ifunction::component;
use crate::mirror::{check_j_shape, MirrorResult};
use crate::model::Model;
use crate::series::{substitute, MultiIndex};
use crate::{Rational, Series};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, failures: Vec<String>, ok: &str) -> CheckOutcome {
    if failures.is_empty() {
        CheckOutcome { name, passed: true, detail: ok.to_string() }
    } else {
        CheckOutcome { name, passed: false, detail: failures.join("; ") }
    }
}

pub fn age_duality(model: &Model) -> CheckOutcome {
    let sectors = &model.space.sectors;
    let mut bad = Vec::new();
    for s in sectors.iter().filter(|s| !s.is_untwisted()) {
        match sectors.iter().find(|t| t.alpha == s.dual_alpha()) {
            Some(d) if s.age + d.age == 3 - s.dimension as i64 => {}
            Some(d) => bad.push(format!("{}: ages {} + {} with dimension {}", s.label(), s.age, d.age, s.dimension)),
            None => bad.push(format!("{}: no dual sector", s.label())),
        }
    }
    outcome("age-duality", bad, &format!("{} twisted sectors", sectors.len() - 1))
}

pub fn stratum_masses(model: &Model) -> CheckOutcome {
    let target = &model.space.target;
    let mut bad = Vec::new();
    let mut n = 0;
    for s in model.space.sectors.iter().filter(|s| s.dimension == 0) {
        n += 1;
        match special_strata(target, s) {
            Ok(strata) => {
                let total: Rational = strata.iter().map(|c| c.open_mass.clone()).sum();
                match strata.iter().find(|c| c.lambda.is_empty()) {
                    Some(root) if root.closure_degree == total => {}
                    _ => bad.push(format!("{}: open masses sum to {total}", s.label())),
                }
            }
            Err(e) => bad.push(format!("{}: {e}", s.label())),
        }
    }
    outcome("stratum-masses", bad, &format!("{n} point sectors"))
}

/// `dI/dq_i` at `q = 0` is `phi_i / z`.
pub fn derivative_identity(model: &Model, result: &MirrorResult) -> CheckOutcome {
    let n = model.m() + 1;
    let mut bad = Vec::new();
    if result.i.truncation() >= 1 {
        for (a, &phi) in model.phi.iter().enumerate() {
            let got = result.i.coeff(&MultiIndex::unit(n, a + 1));
            if got != Some(&model.space.basis_vector(phi)) {
                bad.push(format!("q{}", a + 1));
            }
        }
    }
    outcome("derivative-identity", bad, &format!("m = {}", model.m()))
}

pub fn mirror_round_trip(result: &MirrorResult) -> CheckOutcome {
    let mut bad = Vec::new();
    for (i, g) in result.mirror_map.iter().enumerate() {
        match substitute(g, &result.inverse) {
            Ok(back) if back == Series::scalar_variable(back.vars().clone(), back.truncation(), i) => {}
            Ok(back) => bad.push(format!("coordinate {i} returns {back}")),
            Err(e) => bad.push(e.to_string()),
        }
    }
    outcome("mirror-map-round-trip", bad, "identity")
}

pub fn j_shape(model: &Model, result: &MirrorResult) -> CheckOutcome {
    let bad = check_j_shape(model, &result.j).err().map(|e| e.to_string()).into_iter().collect();
    outcome("j-shape", bad, "1 + sum t_i phi_i / z")
}

/// `Q dF/dQ` against the `H^2` row of `J`, away from `Q = 0`.
pub fn divisor_equation(model: &Model, result: &MirrorResult) -> CheckOutcome {
    let h2 = component(&result.j, model.untwisted(2));
    let scale = model.space.target.h_cubed() * Rational::from_integer(model.git.w.into());
    let mut bad = Vec::new();
    for (m, c) in result.f.series.terms() {
        let d0 = m.get(0);
        if d0 == 0 {
            continue;
        }
        let want = c * Rational::from_integer(d0.into()) / &scale;
        let got = h2.get(m.exponents());
        if got != want {
            bad.push(format!("{:?}", m.exponents()));
        }
    }
    for (m, c) in h2.terms() {
        if m.get(0) > 0 && !c.is_zero() && result.f.series.coeff(m).is_none() {
            bad.push(format!("{:?} missing from F", m.exponents()));
        }
    }
    outcome("divisor-equation", bad, &format!("{} terms with d > 0", result.f.series.terms().filter(|(m, _)| m.get(0) > 0).count()))
}

pub fn report(model: &Model, result: &MirrorResult) -> Vec<CheckOutcome> {
    vec![
        age_duality(model),
        stratum_masses(model),
        derivative_identity(model, result),
        mirror_round_trip(result),
        j_shape(model, result),
        divisor_equation(model, result),
    ]
}
