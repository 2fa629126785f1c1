use crate::error::{Error, Result};
use crate::rational::{gcd_all, lcm_all};
use crate::Rational;

/// A complete intersection of degrees `b_j` in the weighted projective stack `P(w_0..w_n)`,
/// checked to be a Calabi-Yau threefold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSpec {
    weights: Vec<i64>,
    degrees: Vec<i64>,
}

pub fn validate_target(weights: &[i64], degrees: &[i64]) -> Result<TargetSpec> {
    if weights.is_empty() || degrees.is_empty() {
        return Err(Error::Validation("weights and degrees must be non-empty".into()));
    }
    if let Some(w) = weights.iter().find(|&&w| w <= 0) {
        return Err(Error::Validation(format!("weights must be positive, found {w}")));
    }
    if let Some(b) = degrees.iter().find(|&&b| b <= 0) {
        return Err(Error::Validation(format!("degrees must be positive, found {b}")));
    }
    if degrees.len() + 4 != weights.len() {
        return Err(Error::Validation(format!(
            "a threefold in P^{} needs {} equations, got {}",
            weights.len() - 1,
            weights.len().saturating_sub(4),
            degrees.len()
        )));
    }
    let g = gcd_all(weights);
    if g != 1 {
        return Err(Error::Validation(format!("gcd of the weights is {g}, must be 1")));
    }
    let sw: i64 = weights.iter().sum();
    let sb: i64 = degrees.iter().sum();
    if sw != sb {
        return Err(Error::Validation(format!(
            "Calabi-Yau condition fails: degrees sum to {sb}, weights sum to {sw}"
        )));
    }
    Ok(TargetSpec { weights: weights.to_vec(), degrees: degrees.to_vec() })
}

impl TargetSpec {
    pub fn new(weights: &[i64], degrees: &[i64]) -> Result<Self> {
        validate_target(weights, degrees)
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Number of homogeneous coordinates, `n + 1`.
    pub fn ncoords(&self) -> usize {
        self.weights.len()
    }

    /// `lcm(w_0, ..., w_n)`.
    pub fn lcm(&self) -> i64 {
        lcm_all(&self.weights)
    }

    /// `int_X H^3 = prod b_j / prod w_i`.
    pub fn h_cubed(&self) -> Rational {
        crate::rational::product_ratio(self.degrees.iter().copied(), self.weights.iter().copied())
    }
}
