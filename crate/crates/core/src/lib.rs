//! Folded Reed-Solomon codes over prime fields, their linear-algebraic list
//! decoder, and the machinery used to check list-size bounds empirically:
//! folded Wronskians, rank profiles, closed-form bounds and brute-force
//! oracles.

pub mod bounds;
pub mod cli;
pub mod decoder;
pub mod error;
pub mod field;
pub mod frs;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod sampling;
pub mod verify;
pub mod wronskian;

pub use error::{Error, Result};
pub use field::{Fe, PrimeField};
pub use frs::{FoldedWord, FrsParams};
pub use poly::Poly;

/// Exact rational used for every radius, rate and distance.
pub type Rational = num_rational::Ratio<i64>;
