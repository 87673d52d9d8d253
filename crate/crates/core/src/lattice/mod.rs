//! Lattices `N` and `M`, rational polyhedral cones and mutation data.

mod cone;
mod datum;
mod irreducible;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::LaurentPoly;
use crate::error::{Error, Result};
use crate::linalg::gcd_all;

pub use cone::{cone_contains, dual_contains, is_strongly_convex, Cone};
pub use datum::{datum_validate, IrreducibilityStatus, MutationDatum};
pub use irreducible::{certify_irreducible, Irreducibility};

/// Integer vector of fixed rank, used for both `N` and `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|x| x * k).collect())
    }

    /// The primitive vector on the same ray; `None` for the zero vector.
    pub fn primitive(&self) -> Option<Self> {
        let g = gcd_all(&self.0);
        (g != 0).then(|| LatticeVector(self.0.iter().map(|x| x / g).collect()))
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), o.rank(), "rank mismatch");
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), o.rank(), "rank mismatch");
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        self.scaled(-1)
    }
}

pub(crate) fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::RankMismatch { expected, found })
    }
}

/// `⟨u, m⟩ = Σ uᵢ mᵢ`.
pub fn pairing(u: &[i64], m: &[i64]) -> Result<i64> {
    check_rank(u.len(), m.len())?;
    Ok(u.iter().zip(m).map(|(a, b)| a * b).sum())
}

pub fn is_primitive(u: &[i64]) -> Result<bool> {
    match gcd_all(u) {
        0 => Err(Error::ZeroVector),
        g => Ok(g == 1),
    }
}

/// Minimum of `⟨w, m⟩` over the support of `f`.
pub fn monomial_valuation(w: &[i64], f: &LaurentPoly) -> Result<i64> {
    check_rank(f.arity(), w.len())?;
    f.support()
        .map(|m| w.iter().zip(&m.0).map(|(a, b)| a * b).sum::<i64>())
        .min()
        .ok_or(Error::ZeroPolynomial("valuation of zero is infinite"))
}
