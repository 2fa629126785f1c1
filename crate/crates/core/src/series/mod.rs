//! Exact multivariate truncated power series over a coefficient ring.

mod map;
mod multi_index;
mod ring;
mod truncated;

pub use map::{invert_triangular_map, substitute, substitute_in, PowerCache};
pub use multi_index::MultiIndex;
pub use ring::{CoeffRing, Scalar, ScalarRing};
pub use truncated::{var_names, TruncatedSeries};
