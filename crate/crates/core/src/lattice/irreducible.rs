//! Irreducibility certificates for Laurent polynomials supported on a lattice
//! segment. Such a polynomial is a monomial times `p(x^v)` for a primitive
//! `v` and a univariate `p` with `p(0) ≠ 0`, and is irreducible exactly when
//! `p` is irreducible over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{LaurentPoly, Rat};
use crate::error::{Error, Result};
use crate::linalg::gcd_all;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Irreducibility {
    CertifiedIrreducible { method: String },
    CertifiedReducible { witness: String },
    Unknown { reason: String },
}

impl Irreducibility {
    pub fn is_certified_irreducible(&self) -> bool {
        matches!(self, Irreducibility::CertifiedIrreducible { .. })
    }
}

const PRIMES: [u64; 25] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// Divisor enumeration is skipped above this bound.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

pub fn certify_irreducible(g: &LaurentPoly) -> Result<Irreducibility> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial("irreducibility of zero"));
    }
    if g.is_monomial() {
        return Err(Error::MonomialInput(g.to_string()));
    }
    let Some((dir, coeffs)) = segment_form(g) else {
        return Ok(Irreducibility::Unknown { reason: "support is not contained in a lattice segment".into() });
    };
    let p = integer_primitive(&coeffs);
    let deg = p.len() - 1;
    let dir_s = format!("{dir:?}");
    if deg == 1 {
        return Ok(Irreducibility::CertifiedIrreducible {
            method: format!("segment direction {dir_s}, degree 1"),
        });
    }
    match rational_root(&p) {
        RootSearch::Found(r) => {
            return Ok(Irreducibility::CertifiedReducible {
                witness: format!("root t = {r} along direction {dir_s}"),
            })
        }
        RootSearch::None if deg <= 3 => {
            return Ok(Irreducibility::CertifiedIrreducible {
                method: format!("segment direction {dir_s}, degree {deg}, no rational root"),
            })
        }
        RootSearch::Skipped if deg <= 3 => {
            return Ok(Irreducibility::Unknown { reason: "coefficients too large for the rational root test".into() })
        }
        _ => {}
    }
    let lead = &p[deg];
    let trail = &p[0];
    for &q in &PRIMES {
        let qb = BigInt::from(q);
        if (lead % &qb).is_zero() || (trail % &qb).is_zero() {
            continue;
        }
        let reduced: Vec<u64> = p.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect();
        if rabin_irreducible(&reduced, q) {
            return Ok(Irreducibility::CertifiedIrreducible {
                method: format!("segment direction {dir_s}, degree {deg}, irreducible modulo {q}"),
            });
        }
    }
    Ok(Irreducibility::Unknown { reason: format!("degree {deg}: no certifying prime among the first 25") })
}

/// Direction and coefficients of `p` (lowest degree first).
fn segment_form(g: &LaurentPoly) -> Option<(Vec<i64>, Vec<Rat>)> {
    let support: Vec<_> = g.terms().collect();
    let base = &support[0].0 .0;
    let diff = |m: &[i64]| -> Vec<i64> { m.iter().zip(base).map(|(a, b)| a - b).collect() };
    let first = support.iter().map(|(m, _)| diff(&m.0)).find(|d| d.iter().any(|&x| x != 0))?;
    let gg = gcd_all(&first);
    let dir: Vec<i64> = first.iter().map(|x| x / gg).collect();
    let k = dir.iter().position(|&x| x != 0)?;
    let mut ts = Vec::with_capacity(support.len());
    for (m, c) in &support {
        let d = diff(&m.0);
        if d[k] % dir[k] != 0 {
            return None;
        }
        let t = d[k] / dir[k];
        if d.iter().zip(&dir).any(|(a, b)| *a != t * b) {
            return None;
        }
        ts.push((t, (*c).clone()));
    }
    let tmin = ts.iter().map(|x| x.0).min()?;
    let tmax = ts.iter().map(|x| x.0).max()?;
    let mut coeffs = vec![Rat::zero(); (tmax - tmin) as usize + 1];
    for (t, c) in ts {
        coeffs[(t - tmin) as usize] = c;
    }
    Some((dir, coeffs))
}

fn integer_primitive(c: &[Rat]) -> Vec<BigInt> {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

enum RootSearch {
    Found(Rat),
    None,
    Skipped,
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_root(p: &[BigInt]) -> RootSearch {
    let (Some(num), Some(den)) = (divisors(&p[0]), divisors(&p[p.len() - 1])) else {
        return RootSearch::Skipped;
    };
    for &a in &num {
        for &b in &den {
            for s in [1i64, -1] {
                let r = Rat::new(BigInt::from(a) * s, BigInt::from(b));
                let mut acc = Rat::zero();
                for c in p.iter().rev() {
                    acc = acc * &r + Rat::from_integer(c.clone());
                }
                if acc.is_zero() {
                    return RootSearch::Found(r);
                }
            }
        }
    }
    RootSearch::None
}

// dense polynomials over F_q, lowest degree first, no trailing zeros

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

fn pow_mod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % q;
        }
        a = a * a % q;
        e >>= 1;
    }
    r
}

fn poly_rem(a: &[u64], f: &[u64], q: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let df = f.len() - 1;
    let li = inv_mod(f[df], q);
    while r.len() > df {
        let dr = r.len() - 1;
        let c = r[dr] * li % q;
        for i in 0..=df {
            let j = dr - df + i;
            r[j] = (r[j] + q - c * f[i] % q) % q;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    poly_rem(&out, f, q)
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], q: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mulmod(&r, &b, f, q);
        }
        b = poly_mulmod(&b, &b, f, q);
        e >>= 1;
    }
    r
}

fn poly_gcd_mod(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, q);
        a = b;
        b = r;
    }
    a
}

/// `x^(q^k) mod f`.
fn frobenius_power(f: &[u64], k: usize, q: u64) -> Vec<u64> {
    let mut h = poly_rem(&[0, 1], f, q);
    for _ in 0..k {
        h = poly_powmod(&h, q, f, q);
    }
    h
}

fn sub_x(h: &[u64], q: u64) -> Vec<u64> {
    let mut d = h.to_vec();
    if d.len() < 2 {
        d.resize(2, 0);
    }
    d[1] = (d[1] + q - 1) % q;
    trim(d)
}

/// Rabin's test: `f` of degree `n` is irreducible over `F_q` iff
/// `x^(q^n) ≡ x (mod f)` and `gcd(x^(q^(n/r)) - x, f) = 1` for each prime
/// `r | n`.
fn rabin_irreducible(f: &[u64], q: u64) -> bool {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if !sub_x(&frobenius_power(&f, n, q), q).is_empty() {
        return false;
    }
    let mut m = n;
    let mut r = 2;
    let mut prime_factors = Vec::new();
    while m > 1 {
        if m % r == 0 {
            prime_factors.push(r);
            while m % r == 0 {
                m /= r;
            }
        }
        r += 1;
    }
    prime_factors.into_iter().all(|r| {
        let g = poly_gcd_mod(&sub_x(&frobenius_power(&f, n / r, q), q), &f, q);
        g.len() == 1
    })
}
