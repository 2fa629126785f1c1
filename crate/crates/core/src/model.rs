//! A target together with its admissible space, pairing and extended presentation.

use crate::cohomology::{pairing_matrix, sectorwise_algebra, PairingMatrix, PairingNormalization, StateSpace, TargetSpec};
use crate::error::Result;
use crate::git::{build_weight_matrix, resolve_extension, verify_calabi_yau, ExtendedGit, Extension};
use crate::{CoefficientAlgebra, Rational};

#[derive(Debug, Clone)]
pub struct Model {
    pub space: StateSpace,
    pub algebra: CoefficientAlgebra<Rational>,
    pub pairing: PairingMatrix,
    /// Basis indices of the extension classes `phi_1..phi_m`.
    pub phi: Vec<usize>,
    pub git: ExtendedGit,
}

impl Model {
    pub fn new(weights: &[i64], degrees: &[i64], extension: &Extension, norm: PairingNormalization) -> Result<Self> {
        let target = TargetSpec::new(weights, degrees)?;
        let space = StateSpace::new(&target)?;
        let algebra = sectorwise_algebra(&space)?;
        let pairing = pairing_matrix(&space, norm)?;
        let phi = resolve_extension(&space, extension)?;
        let git = build_weight_matrix(&space, &phi)?;
        verify_calabi_yau(&git)?;
        Ok(Model { space, algebra, pairing, phi, git })
    }

    pub fn m(&self) -> usize {
        self.phi.len()
    }

    pub fn phi_labels(&self) -> Vec<String> {
        self.phi.iter().map(|&k| self.space.classes[k].label()).collect()
    }

    /// Index of the untwisted class `H^p`.
    pub fn untwisted(&self, p: u32) -> usize {
        self.space.power_class(0, p).expect("untwisted sector has dimension 3")
    }
}
