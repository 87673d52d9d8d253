//! Sparse Laurent polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic in context order. The last entry of the map is
//! therefore always the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::context::{same_ctx, Ctx};
use super::ArithError;

/// Exponent vector. Ordered by total degree first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn unit(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn join(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// An element of `Q[x_1^{±1}, …, x_n^{±1}]` over a fixed [`VarContext`].
///
/// No stored coefficient is zero, so structural equality is semantic
/// equality.
///
/// [`VarContext`]: super::VarContext
#[derive(Clone)]
pub struct LaurentPoly {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(ctx: &Ctx) -> Self {
        LaurentPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rat::one())
    }

    pub fn constant(ctx: &Ctx, c: Rat) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.arity()), c)
    }

    pub fn from_int(ctx: &Ctx, n: i64) -> Self {
        Self::constant(ctx, rat(n))
    }

    pub fn var(ctx: &Ctx, i: usize) -> Self {
        Self::monomial(ctx, Monomial::unit(ctx.arity(), i), Rat::one())
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: Rat) -> Self {
        assert_eq!(m.0.len(), ctx.arity(), "exponent vector length differs from context arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { ctx: ctx.clone(), terms }
    }

    /// `x^e` with unit coefficient.
    pub fn monic_monomial(ctx: &Ctx, e: &[i64]) -> Self {
        Self::monomial(ctx, Monomial(e.to_vec()), Rat::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(ctx: &Ctx, it: I) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn arity(&self) -> usize {
        self.ctx.arity()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map_or(false, |(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_nonnegative)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Leading term under the graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree of the leading term; `None` stands for the degree of zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn min_total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::total_degree).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Componentwise minimum of the exponents in the support.
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.meet(m)))
    }

    pub fn max_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.join(m)))
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.ctx.arity());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ctx(&self, other: &LaurentPoly) -> Result<(), ArithError> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(ArithError::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, ArithError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, ArithError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, ArithError> {
        self.check_ctx(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() <= 1 {
            let mut out = LaurentPoly::zero(&self.ctx);
            for (ma, ca) in &small.terms {
                for (mb, cb) in &large.terms {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
            return Ok(out);
        }
        let mut acc: std::collections::HashMap<Monomial, Rat> =
            std::collections::HashMap::with_capacity(large.terms.len().saturating_mul(2));
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += c,
                }
            }
        }
        Ok(LaurentPoly { ctx: self.ctx.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.ctx);
        }
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by the monomial `x^e`.
    pub fn shift(&self, e: &Monomial) -> LaurentPoly {
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(e), a.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        if self.is_monomial() {
            let (m, c) = self.terms.iter().next().unwrap();
            return LaurentPoly::monomial(&self.ctx, m.scaled(k as i64), num_traits::pow(c.clone(), k as usize));
        }
        let mut result = LaurentPoly::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Inverse, defined only for monomials (the units of the Laurent ring).
    pub fn monomial_inverse(&self) -> Option<LaurentPoly> {
        if !self.is_monomial() {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some(LaurentPoly::monomial(&self.ctx, m.scaled(-1), c.recip()))
    }

    /// Divide every coefficient by the leading coefficient.
    pub fn monic(&self) -> LaurentPoly {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Rebuild over `ctx`, which must have the same arity.
    pub fn with_ctx(&self, ctx: &Ctx) -> LaurentPoly {
        assert_eq!(ctx.arity(), self.arity());
        LaurentPoly { ctx: ctx.clone(), terms: self.terms.clone() }
    }

    /// Coefficient of `x_var^d`, as a polynomial with that variable removed
    /// (its exponent set to zero).
    pub fn coeff_in(&self, var: usize, d: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m.0[var] == d {
                let mut e = m.clone();
                e.0[var] = 0;
                out.terms.insert(e, c.clone());
            }
        }
        out
    }

    /// Splits into coefficients by the exponent of `var`.
    pub fn collect_in(&self, var: usize) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.0[var];
            let mut e = m.clone();
            e.0[var] = 0;
            out.entry(d)
                .or_insert_with(|| LaurentPoly::zero(&self.ctx))
                .terms
                .insert(e, c.clone());
        }
        out
    }

    /// Evaluate at a rational point; `None` if a negative power hits zero.
    pub fn evaluate(&self, point: &[Rat]) -> Option<Rat> {
        assert_eq!(point.len(), self.arity());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                if *e > 0 {
                    t *= num_traits::pow(x.clone(), *e as usize);
                } else if *e < 0 {
                    if x.is_zero() {
                        return None;
                    }
                    t /= num_traits::pow(x.clone(), (-*e) as usize);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Lowest common denominator of the coefficients times the gcd
    /// normalisation, i.e. the integer polynomial `self * d` with `d > 0`.
    pub fn coefficient_denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading_coefficient().map_or(false, |c| c.is_negative())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a, 'b> $trait<&'b LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'b LaurentPoly) -> LaurentPoly {
                self.$try(rhs).expect("polynomial context mismatch")
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$try(&rhs).expect("polynomial context mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert!(same_ctx(&self.ctx, &rhs.ctx), "polynomial context mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        assert!(same_ctx(&self.ctx, &rhs.ctx), "polynomial context mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl LaurentPoly {
    /// `self -= c·x^m·g` in place.
    pub(crate) fn sub_scaled_shift(&mut self, c: &Rat, m: &Monomial, g: &LaurentPoly) {
        for (gm, gc) in &g.terms {
            self.add_term(gm.mul(m), -(c * gc));
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::VarContext;

    fn xy() -> (Ctx, LaurentPoly, LaurentPoly) {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let x = LaurentPoly::var(&c, 0);
        let y = LaurentPoly::var(&c, 1);
        (c, x, y)
    }

    #[test]
    fn add_cancels() {
        let (c, x, y) = xy();
        assert_eq!(&(&x + &y) + &(-&x), y);
        assert_eq!(&x + &LaurentPoly::zero(&c), x);
        let one = LaurentPoly::one(&c);
        let xinv = x.monomial_inverse().unwrap();
        let lhs = &(&one + &xinv) + &(&one + &x);
        let rhs = &(&LaurentPoly::from_int(&c, 2) + &x) + &xinv;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_basics() {
        let (c, x, y) = xy();
        assert_eq!(&(&x - &y) * &(&x + &y), &x.pow(2) - &y.pow(2));
        assert_eq!(&x.monomial_inverse().unwrap() * &x, LaurentPoly::one(&c));
        let h = &LaurentPoly::one(&c) + &LaurentPoly::monic_monomial(&c, &[1, -1]);
        assert_eq!(&h * &LaurentPoly::one(&c), h);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let (_, x, _) = xy();
        let d = VarContext::new(&["a"]).unwrap();
        let a = LaurentPoly::var(&d, 0);
        assert!(matches!(x.try_add(&a), Err(ArithError::ContextMismatch { .. })));
        assert!(x.try_mul(&a).is_err());
    }

    #[test]
    fn grlex_leading_term() {
        let (_, x, y) = xy();
        let p = &(&x.pow(2) + &(&x * &y)) + &y.pow(3);
        assert_eq!(p.leading_term().unwrap().0, &Monomial(vec![0, 3]));
        let q = &x + &y;
        assert_eq!(q.leading_term().unwrap().0, &Monomial(vec![1, 0]));
    }
}
