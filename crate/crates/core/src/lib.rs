//! Exact graded representation theory of the blob algebra in its KLR
//! presentation: tableau and alcove combinatorics, graded characters,
//! explicit Specht modules and a classical diagram-algebra cross-check.

pub mod error;
pub mod exactmath;

pub use error::{Error, Result};
pub mod alcoves;
pub mod characters;
pub mod klr;
pub mod tlblob;
pub mod weights;
