//! Targets, inertia sectors, the admissible state space and its pairing.

mod basis;
mod pairing;
mod sector;
mod target;

pub use basis::{BasisClass, ClassDescriptor, ClassKind, StateSpace};
pub use pairing::{pairing_matrix, sectorwise_algebra, Nu, PairingMatrix, PairingNormalization};
pub use sector::{
    dual_alpha, enumerate_sectors, enumerate_special_cycles, representable, sector_age, sector_at, special_strata,
    vanishing_equations, Sector, SpecialCycle,
};
pub use target::{validate_target, TargetSpec};
