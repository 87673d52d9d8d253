//! Minimal monomial lifting for the blow-up of projective `n`-space at
//! `n + 2` points in general position.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{rat, LaurentPoly, Rat, RationalFunction, VarContext};
use crate::error::{Error, Result};
use crate::graded::{grading_is_compatible, Grading};
use crate::linalg::{mat_mul, IntMatrix};
use crate::seeds::{ExchangeMatrix, Seed};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupConfig {
    pub n: usize,
    /// `q_1..q_n` the unit vectors, `q_{n+1} = (-1,…,-1)`, `q_{n+2} = 0`.
    pub points: Vec<Vec<Rat>>,
}

impl BlowupConfig {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("dimension n = {n}; n >= 2 is required")));
        }
        let mut points: Vec<Vec<Rat>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
        points.push(vec![rat(-1); n]);
        points.push(vec![Rat::zero(); n]);
        let cfg = BlowupConfig { n, points };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<()> {
        if self.points.len() != self.n + 2 || self.points.iter().any(|p| p.len() != self.n) {
            return Err(Error::Invalid("expected n + 2 points in n coordinates".into()));
        }
        for i in 0..self.points.len() {
            for j in 0..i {
                if self.points[i] == self.points[j] {
                    return Err(Error::Invalid(format!("points q{} and q{} coincide", j + 1, i + 1)));
                }
            }
        }
        Ok(())
    }
}

/// Path quiver `(i+1) → i` on `x_1..x_n` with `x_n` frozen and ledger
/// `x_1 = z_1`, `x_{k+1} = z_{k+1} x_k − x_{k−1}` (`x_0 = 1`, `x_{−1} = 0`).
pub fn build_base_seed(n: usize) -> Result<Seed> {
    if n < 2 {
        return Err(Error::Invalid(format!("dimension n = {n}; n >= 2 is required")));
    }
    let vertices: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut entries = vec![vec![0i64; n - 1]; n];
    for k in 0..n - 1 {
        if k + 1 < n {
            entries[k + 1][k] = 1;
        }
        if k >= 1 {
            entries[k - 1][k] = -1;
        }
    }
    let matrix = ExchangeMatrix::new(entries, (0..n - 1).collect())?;
    let seed = Seed::new(vertices, matrix)?;
    let zs: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let zctx = VarContext::new(&zs)?;
    let mut xs: Vec<LaurentPoly> = Vec::with_capacity(n);
    let mut prev = LaurentPoly::one(&zctx);
    let mut prev2 = LaurentPoly::zero(&zctx);
    for k in 0..n {
        let next = &(&LaurentPoly::var(&zctx, k) * &prev) - &prev2;
        prev2 = std::mem::replace(&mut prev, next.clone());
        xs.push(next);
    }
    let ledger: Vec<RationalFunction> = xs.iter().map(RationalFunction::from_laurent).collect();
    // z_{k+1} = (x_{k+1} + x_{k−1}) / x_k
    let cctx = seed.cluster_ctx().clone();
    let x = |i: usize| RationalFunction::var(&cctx, i);
    let mut inverse = vec![x(0)];
    for k in 1..n {
        let below = if k >= 2 { x(k - 2) } else { RationalFunction::one(&cctx) };
        inverse.push(x(k).try_add(&below)?.try_div(&x(k - 1))?);
    }
    seed.with_ledger(zctx, ledger, Some(inverse))
}

/// Least total degree of a nonzero term of `p(z + q)`.
pub fn multiplicity_at_point(p: &LaurentPoly, q: &[Rat]) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("multiplicity of zero"));
    }
    if !p.is_polynomial() {
        return Err(Error::Invalid(format!("{p} is not a polynomial")));
    }
    crate::lattice::check_rank(p.arity(), q.len())?;
    let ctx = p.ctx();
    let images: Vec<RationalFunction> = (0..ctx.arity())
        .map(|i| RationalFunction::from_laurent(&(&LaurentPoly::var(ctx, i) + &LaurentPoly::constant(ctx, q[i].clone()))))
        .collect();
    let shifted = crate::arith::substitute_poly(p, &images, ctx)?
        .to_laurent()
        .expect("a polynomial shift is a polynomial");
    Ok(shifted.min_total_degree().expect("nonzero") as u32)
}

/// Order along the hyperplane at infinity: minus the total degree.
pub fn valuation_e0(p: &LaurentPoly) -> Result<i64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("valuation of zero"));
    }
    Ok(-p.total_degree().expect("nonzero"))
}

fn base_polynomials(seed: &Seed) -> Vec<LaurentPoly> {
    seed.ledger().iter().map(|f| f.to_laurent().expect("base cluster variables are polynomials")).collect()
}

/// `ν_{ji} = −𝒱_{E_{j−1}}(x_i)`: row 0 is the degree, row `j ≥ 1` the
/// multiplicity at `q_j`.
pub fn nu_matrix(cfg: &BlowupConfig) -> Result<IntMatrix> {
    cfg.check()?;
    let seed = build_base_seed(cfg.n)?;
    let xs = base_polynomials(&seed);
    let mut nu = vec![vec![0i64; cfg.n]; cfg.n + 3];
    for (i, x) in xs.iter().enumerate() {
        nu[0][i] = -valuation_e0(x)?;
        for (j, q) in cfg.points.iter().enumerate() {
            nu[j + 1][i] = -(multiplicity_at_point(x, q)? as i64);
        }
    }
    Ok(nu)
}

#[derive(Debug, Clone)]
pub struct LiftedSeed {
    pub base: Seed,
    pub nu: IntMatrix,
    /// `(B; −ν·B)`, `(2n+3) × (n−1)`.
    pub lifted_matrix: IntMatrix,
    pub seed: Seed,
    pub grading: Grading,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftSummary {
    pub n: usize,
    pub nu: IntMatrix,
    pub lifted_matrix: IntMatrix,
    pub degrees: Vec<(String, Vec<i64>)>,
    pub compatible: bool,
}

impl LiftedSeed {
    pub fn summary(&self) -> LiftSummary {
        let degrees = self
            .seed
            .var_names()
            .iter()
            .map(|v| (v.clone(), self.grading.degree(v).expect("every vertex has a degree").to_vec()))
            .collect();
        LiftSummary {
            n: self.base.num_vertices(),
            nu: self.nu.clone(),
            lifted_matrix: self.lifted_matrix.clone(),
            degrees,
            compatible: grading_is_compatible(&self.seed, &self.grading).map(|r| r.compatible).unwrap_or(false),
        }
    }
}

/// Divisor vertex `n+1+j` carries the class `[E_j]`, `j = 0..n+2`.
pub fn divisor_vertex_name(j: usize) -> String {
    format!("E{j}")
}

pub fn lifted_seed(cfg: &BlowupConfig) -> Result<LiftedSeed> {
    let base = build_base_seed(cfg.n)?;
    let nu = nu_matrix(cfg)?;
    let b = base.matrix().entries().clone();
    let nub = mat_mul(&nu, &b);
    let mut lifted = b.clone();
    lifted.extend(nub.iter().map(|row| row.iter().map(|x| -x).collect::<Vec<i64>>()));

    let mut vertices: Vec<String> = base.vertices().to_vec();
    vertices.extend((0..cfg.n + 3).map(divisor_vertex_name));
    let matrix = ExchangeMatrix::new(lifted.clone(), base.mutable_vertices().to_vec())?;
    let seed = Seed::new(vertices.clone(), matrix)?;

    let rank = cfg.n + 3;
    let mut degrees = BTreeMap::new();
    for i in 0..cfg.n {
        degrees.insert(vertices[i].clone(), nu.iter().map(|row| row[i]).collect::<Vec<i64>>());
    }
    for j in 0..rank {
        let mut e = vec![0; rank];
        e[j] = 1;
        degrees.insert(divisor_vertex_name(j), e);
    }
    let grading = Grading::new(rank, degrees)?;
    let report = grading_is_compatible(&seed, &grading)?;
    if !report.compatible {
        let bad = report.vertices.iter().find(|v| !v.compatible).expect("some vertex fails");
        return Err(Error::NotCompatible {
            vertex: bad.vertex.clone(),
            detail: format!("degrees {:?} vs {:?}", bad.plus_degree, bad.minus_degree),
        });
    }
    Ok(LiftedSeed { base, nu, lifted_matrix: lifted, seed, grading })
}
