//! Seeded generators for the property suites.

use std::collections::BTreeMap;

use rand::Rng;

use crate::arith::{rat, Ctx, LaurentPoly, Monomial, Rat};
use crate::graded::Grading;
use crate::linalg::{integer_kernel, transpose, IntMatrix};
use crate::seeds::{ExchangeMatrix, Seed};

fn coefficient<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-bound..=bound);
    }
    if rng.gen_bool(0.2) {
        Rat::new(c.into(), rng.gen_range(1i64..=3).into())
    } else {
        rat(c)
    }
}

/// Up to `max_terms` terms with exponents in `lo..=hi`.
pub fn laurent<R: Rng>(rng: &mut R, ctx: &Ctx, max_terms: usize, lo: i64, hi: i64) -> LaurentPoly {
    let terms = rng.gen_range(0..=max_terms);
    LaurentPoly::from_terms(
        ctx,
        (0..terms).map(|_| {
            let m = Monomial((0..ctx.arity()).map(|_| rng.gen_range(lo..=hi)).collect());
            (m, coefficient(rng, 5))
        }),
    )
}

pub fn nonzero_laurent<R: Rng>(rng: &mut R, ctx: &Ctx, max_terms: usize, lo: i64, hi: i64) -> LaurentPoly {
    loop {
        let p = laurent(rng, ctx, max_terms.max(1), lo, hi);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn polynomial<R: Rng>(rng: &mut R, ctx: &Ctx, max_terms: usize, max_exp: i64) -> LaurentPoly {
    laurent(rng, ctx, max_terms, 0, max_exp)
}

pub fn nonzero_polynomial<R: Rng>(rng: &mut R, ctx: &Ctx, max_terms: usize, max_exp: i64) -> LaurentPoly {
    nonzero_laurent(rng, ctx, max_terms, 0, max_exp)
}

pub fn skew_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntMatrix {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-bound..=bound);
            m[i][j] = v;
            m[j][i] = -v;
        }
    }
    m
}

/// `b_ij = s_ij d_j` with `S` skew-symmetric, so `D·B` is skew-symmetric.
pub fn skew_symmetrizable<R: Rng>(rng: &mut R, n: usize, bound: i64) -> (IntMatrix, Vec<i64>) {
    let s = skew_symmetric(rng, n, bound);
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let b = (0..n).map(|i| (0..n).map(|j| s[i][j] * d[j]).collect()).collect();
    (b, d)
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Seed on `n` vertices whose first `mutable` are mutable; the principal
/// part is skew-symmetric and the frozen rows are arbitrary.
pub fn seed<R: Rng>(rng: &mut R, n: usize, mutable: usize, bound: i64) -> Seed {
    assert!(mutable >= 1 && mutable <= n);
    let principal = skew_symmetric(rng, mutable, bound);
    let mut entries = principal;
    for _ in mutable..n {
        entries.push((0..mutable).map(|_| rng.gen_range(-bound..=bound)).collect());
    }
    let m = ExchangeMatrix::new(entries, (0..mutable).collect()).expect("well-formed random matrix");
    Seed::new(names(n), m).expect("well-formed random seed")
}

/// Random seed on at most `max_vertices` vertices.
pub fn small_seed<R: Rng>(rng: &mut R, max_vertices: usize, bound: i64) -> Seed {
    let n = rng.gen_range(1..=max_vertices);
    let mutable = rng.gen_range(1..=n);
    seed(rng, n, mutable, bound)
}

/// A grading of the given rank under which every exchange relation of `s`
/// is homogeneous: degrees are random combinations of an integer basis of
/// the left kernel of `B`.
pub fn compatible_grading<R: Rng>(rng: &mut R, s: &Seed, rank: usize) -> Grading {
    let b = s.matrix().entries();
    let bt = transpose(b);
    let n = s.num_vertices();
    let kernel = if bt.is_empty() { crate::linalg::identity(n) } else { integer_kernel(&bt, n) };
    let mut degrees = BTreeMap::new();
    let coeffs: Vec<Vec<i64>> =
        (0..kernel.len()).map(|_| (0..rank).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    for (j, name) in s.var_names().iter().enumerate() {
        let d: Vec<i64> = (0..rank).map(|r| kernel.iter().zip(&coeffs).map(|(v, c)| v[j] * c[r]).sum()).collect();
        degrees.insert(name.clone(), d);
    }
    Grading::new(rank, degrees).expect("degrees have the right length")
}

pub fn mutation_sequence<R: Rng>(rng: &mut R, s: &Seed, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    let mutable = s.mutable_vertices();
    (0..len).map(|_| mutable[rng.gen_range(0..mutable.len())]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::grading_is_compatible;
    use crate::seeds::is_skew_symmetrizable;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_gradings_are_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let s = small_seed(&mut rng, 5, 2);
            let g = compatible_grading(&mut rng, &s, 3);
            assert!(grading_is_compatible(&s, &g).unwrap().compatible);
        }
    }

    #[test]
    fn generated_symmetrizers_work() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let (b, _) = skew_symmetrizable(&mut rng, 4, 2);
            assert!(is_skew_symmetrizable(&b).is_some());
        }
    }
}
