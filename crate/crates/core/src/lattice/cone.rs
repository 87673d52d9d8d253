//! Rational polyhedral cones, decided exactly by Fourier–Motzkin elimination.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{check_rank, LatticeVector};
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linalg::rref;

/// `{Σ λᵢ gᵢ : λᵢ ≥ 0}`; no generators means the zero cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    generators: Vec<LatticeVector>,
}

impl Cone {
    pub fn new(rank: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        for g in &generators {
            check_rank(rank, g.rank())?;
            if g.is_zero() {
                return Err(Error::ZeroVector);
            }
        }
        Ok(Cone { rank, generators })
    }

    pub fn zero(rank: usize) -> Self {
        Cone { rank, generators: Vec::new() }
    }

    /// Cone spanned by the listed standard basis vectors.
    pub fn coordinate(rank: usize, indices: &[usize]) -> Self {
        Cone { rank, generators: indices.iter().map(|&i| LatticeVector::unit(rank, i)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn is_zero_cone(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        cone_contains(self, v)
    }

    pub fn dual_contains(&self, m: &[i64]) -> Result<bool> {
        dual_contains(self, m)
    }

    pub fn is_strongly_convex(&self) -> bool {
        is_strongly_convex(self)
    }

    /// Image under `w ↦ T·w` for a square integer matrix `T`.
    pub fn transformed(&self, t: &[Vec<i64>]) -> Result<Cone> {
        check_rank(self.rank, t.len())?;
        let gens = self
            .generators
            .iter()
            .map(|g| LatticeVector(t.iter().map(|row| row.iter().zip(&g.0).map(|(a, b)| a * b).sum()).collect()))
            .collect();
        Cone::new(self.rank, gens)
    }

    /// Primitive generators of the extremal rays, sorted. Only meaningful for
    /// strongly convex cones.
    pub fn rays(&self) -> Vec<LatticeVector> {
        let mut prim: Vec<LatticeVector> =
            self.generators.iter().map(|g| g.primitive().expect("generators are nonzero")).collect();
        prim.sort();
        prim.dedup();
        let mut out = Vec::new();
        for (i, g) in prim.iter().enumerate() {
            let others: Vec<LatticeVector> =
                prim.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
            let sub = Cone { rank: self.rank, generators: others };
            if !feasible(&sub, g) {
                out.push(g.clone());
            }
        }
        out
    }
}

pub fn cone_contains(sigma: &Cone, v: &LatticeVector) -> Result<bool> {
    check_rank(sigma.rank, v.rank())?;
    Ok(feasible(sigma, v))
}

pub fn dual_contains(sigma: &Cone, m: &[i64]) -> Result<bool> {
    check_rank(sigma.rank, m.len())?;
    Ok(sigma.generators.iter().all(|g| g.0.iter().zip(m).map(|(a, b)| a * b).sum::<i64>() >= 0))
}

/// No line through the origin: equivalently no generator has its negative
/// in the cone.
pub fn is_strongly_convex(sigma: &Cone) -> bool {
    sigma.generators.iter().all(|g| !feasible(sigma, &-g))
}

fn r(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

/// Decides `G·λ = v, λ ≥ 0`.
fn feasible(sigma: &Cone, v: &LatticeVector) -> bool {
    let n = sigma.generators.len();
    if n == 0 {
        return v.is_zero();
    }
    let mut a: Vec<Vec<Rat>> = (0..sigma.rank)
        .map(|i| {
            let mut row: Vec<Rat> = sigma.generators.iter().map(|g| r(g.0[i])).collect();
            row.push(r(v.0[i]));
            row
        })
        .collect();
    let pivots = rref(&mut a, n);
    // inconsistent rows
    for row in a.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return false;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // coeffs·λ_free ≤ rhs
    let mut system: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        debug_assert!(!a[i][p].is_zero());
        let coeffs: Vec<Rat> = free.iter().map(|&f| a[i][f].clone()).collect();
        system.push((coeffs, a[i][n].clone()));
    }
    for j in 0..free.len() {
        let mut coeffs = vec![Rat::zero(); free.len()];
        coeffs[j] = r(-1);
        system.push((coeffs, Rat::zero()));
    }
    fourier_motzkin(system, free.len())
}

fn normalize(coeffs: Vec<Rat>, rhs: Rat) -> (Vec<Rat>, Rat) {
    match coeffs.iter().find(|c| !c.is_zero()) {
        Some(c) => {
            let s = c.abs().recip();
            (coeffs.iter().map(|x| x * &s).collect(), rhs * s)
        }
        None => (coeffs, rhs),
    }
}

/// Feasibility of `{λ : cᵢ·λ ≤ bᵢ}` over the rationals.
fn fourier_motzkin(system: Vec<(Vec<Rat>, Rat)>, vars: usize) -> bool {
    let mut current: HashMap<Vec<Rat>, Rat> = HashMap::new();
    let insert = |map: &mut HashMap<Vec<Rat>, Rat>, c: Vec<Rat>, b: Rat| -> bool {
        if c.iter().all(Zero::is_zero) {
            return !b.is_negative();
        }
        let (c, b) = normalize(c, b);
        match map.get_mut(&c) {
            Some(old) if *old <= b => {}
            Some(old) => *old = b,
            None => {
                map.insert(c, b);
            }
        }
        true
    };
    for (c, b) in system {
        if !insert(&mut current, c, b) {
            return false;
        }
    }
    let mut remaining: Vec<usize> = (0..vars).collect();
    while !remaining.is_empty() {
        // eliminate the variable producing the fewest new rows
        let (pick, _) = remaining
            .iter()
            .enumerate()
            .map(|(pos, &j)| {
                let p = current.keys().filter(|c| c[j].is_positive()).count();
                let q = current.keys().filter(|c| c[j].is_negative()).count();
                (pos, p * q)
            })
            .min_by_key(|&(_, cost)| cost)
            .unwrap();
        let j = remaining.remove(pick);
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for (c, b) in current.drain() {
            if c[j].is_positive() {
                pos.push((c, b));
            } else if c[j].is_negative() {
                neg.push((c, b));
            } else {
                zero.push((c, b));
            }
        }
        let mut next = HashMap::new();
        for (c, b) in zero {
            next.insert(c, b);
        }
        for (cp, bp) in &pos {
            for (cn, bn) in &neg {
                let sp = cp[j].recip();
                let sn = -cn[j].recip();
                let c: Vec<Rat> = cp.iter().zip(cn).map(|(x, y)| x * &sp + y * &sn).collect();
                let b = bp * &sp + bn * &sn;
                if !insert(&mut next, c, b) {
                    return false;
                }
            }
        }
        current = next;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rank: usize, gens: &[&[i64]]) -> Cone {
        Cone::new(rank, gens.iter().map(|g| LatticeVector(g.to_vec())).collect()).unwrap()
    }

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector(x.to_vec())
    }

    #[test]
    fn containment_examples() {
        assert!(cone_contains(&cone(2, &[&[1, 0], &[0, 1]]), &v(&[3, 2])).unwrap());
        assert!(!cone_contains(&Cone::zero(2), &v(&[1, 0])).unwrap());
        assert!(cone_contains(&Cone::zero(2), &v(&[0, 0])).unwrap());
        assert!(!cone_contains(&cone(2, &[&[1, 1], &[1, -1]]), &v(&[0, 1])).unwrap());
        assert!(cone_contains(&cone(2, &[&[1, 1], &[1, -1]]), &v(&[2, 1])).unwrap());
        assert!(cone_contains(&cone(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]), &v(&[1, 1, 1])).unwrap());
        assert!(matches!(cone_contains(&Cone::zero(2), &v(&[0])), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn convexity_examples() {
        assert!(is_strongly_convex(&cone(2, &[&[1, 0], &[0, 1]])));
        assert!(!is_strongly_convex(&cone(2, &[&[1, 0], &[-1, 0]])));
        assert!(is_strongly_convex(&cone(2, &[&[1, 0], &[1, 1], &[1, -1]])));
        assert!(is_strongly_convex(&Cone::zero(3)));
        assert!(!is_strongly_convex(&cone(2, &[&[1, 0], &[-1, 1], &[-1, -1]])));
    }

    #[test]
    fn dual_examples() {
        assert!(dual_contains(&Cone::zero(2), &[-4, 7]).unwrap());
        let frozen = Cone::coordinate(3, &[0, 2]);
        assert!(!dual_contains(&frozen, &[1, -3, -1]).unwrap());
        assert!(dual_contains(&frozen, &[1, -3, 0]).unwrap());
        assert!(dual_contains(&cone(2, &[&[1, 2]]), &[2, -1]).unwrap());
    }

    #[test]
    fn rays_drop_redundant_generators() {
        let c = cone(2, &[&[1, 0], &[2, 2], &[0, 3], &[1, 0]]);
        assert_eq!(c.rays(), vec![v(&[0, 1]), v(&[1, 0])]);
    }
}
