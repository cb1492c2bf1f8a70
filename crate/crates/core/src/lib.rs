//! Exact pair-counting comparison of clusterings.
//!
//! Two partitions of the same objects are summarized by a contingency table,
//! from which the four pair-type counts and the classical agreement indices
//! (Rand, expected Rand, adjusted Rand, adjusted Rand distance) are computed
//! in exact rational arithmetic. On top of that sit the attainable minimum
//! of the adjusted Rand index for given cluster counts, the table that
//! attains it, the `[0, 1]`-normalized adjusted Rand distance, and a
//! brute-force oracle that re-derives the minimum by exhaustive enumeration.
//!
//! - [`Clustering`], [`ContingencyTable`], [`PairCounts`]: the domain types
//!   and the index computations.
//! - [`bounds`]: closed-form minimum, extremal witness, normalization.
//! - [`oracle`]: exhaustive enumeration and verification.

pub mod bounds;
mod clustering;
mod error;
pub mod oracle;
mod pair_counts;
mod ratio;
mod table;

pub use clustering::Clustering;
pub use error::{Error, Result};
pub use pair_counts::PairCounts;
pub use ratio::ExactRatio;
pub use table::ContingencyTable;
