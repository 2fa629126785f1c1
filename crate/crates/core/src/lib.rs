//! Genus-0 orbifold Gromov-Witten invariants of Calabi-Yau threefold complete
//! intersections in weighted projective stacks, computed exactly from an
//! extended I-function and the inverse of its mirror map.
//!
//! The series layer is generic over the scalar type; the geometric pipeline
//! runs over [`Rational`] because sector bookkeeping needs exact floors.

pub mod algebra;
pub mod checks;
pub mod cohomology;
pub mod error;
pub mod git;
pub mod ifunction;
pub mod mirror;
pub mod model;
pub mod rational;
pub mod series;

pub use algebra::CoefficientAlgebra;
pub use error::{Error, Result};
pub use mirror::{run, GeneratingFunction, MirrorResult};
pub use model::Model;
pub use series::{CoeffRing, MultiIndex, Scalar, ScalarRing, TruncatedSeries};

/// Engine version recorded in result bundles.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exact rationals used throughout the geometric pipeline.
pub type Rational = num_rational::BigRational;
/// Scalar series over [`Rational`].
pub type Series = TruncatedSeries<Rational>;
