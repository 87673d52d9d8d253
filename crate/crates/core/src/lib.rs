//! Exact computations with cluster seeds, semigroup-algebra charts, graded
//! seeds and minimal monomial lifts.

pub mod arith;
pub mod charts;
pub mod error;
pub mod graded;
pub mod lattice;
pub mod lifting;
pub mod linalg;
pub mod random;
pub mod report;
pub mod seeds;

pub use error::{Error, Result};
