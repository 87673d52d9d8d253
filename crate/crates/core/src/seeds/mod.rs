//! Seeds of geometric type: exchange matrices, quivers, mutation and the
//! ledger of cluster variables.

mod matrix;
mod schema;
mod seed;

pub use matrix::{
    is_skew_symmetrizable, matrix_is_maximal_rank, matrix_is_primitive, matrix_mutate, quiver_to_matrix,
    ExchangeMatrix, Quiver,
};
pub use schema::{SeedDocument, SeedFile};
pub use seed::Seed;

use crate::arith::LaurentPoly;
use crate::error::Result;

/// The two exchange monomials at `k`, in the seed's own cluster variables.
pub fn exchange_binomials(s: &Seed, k: usize) -> Result<(LaurentPoly, LaurentPoly)> {
    let (p, m) = s.exchange_exponents(k)?;
    Ok((LaurentPoly::monic_monomial(s.cluster_ctx(), &p), LaurentPoly::monic_monomial(s.cluster_ctx(), &m)))
}

pub fn seed_mutate(s: &Seed, k: usize) -> Result<Seed> {
    s.mutate(k)
}

pub fn mutate_sequence(s: &Seed, ks: &[usize]) -> Result<Seed> {
    s.mutate_sequence(ks)
}

pub fn is_maximal_rank(s: &Seed) -> bool {
    s.is_maximal_rank()
}

pub fn is_primitive_seed(s: &Seed) -> bool {
    s.is_primitive()
}

#[cfg(test)]
mod tests;
