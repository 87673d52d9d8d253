//! Normalized quotients of polynomials.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::context::{same_ctx, Ctx};
use super::gcd::{exact_div_unchecked, gcd_unchecked};
use super::laurent::{LaurentPoly, Monomial, Rat};
use super::ArithError;

/// `num / den` with `gcd(num, den) = 1` and `den` monic under graded lex.
///
/// Both parts are ordinary polynomials. Because the normal form is unique,
/// derived `PartialEq` is equality in the function field.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Result of [`RationalFunction::laurent`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Laurentness {
    Laurent(LaurentPoly),
    /// The normalized denominator is not a monomial.
    NotLaurent { denominator: LaurentPoly },
}

impl Laurentness {
    pub fn is_laurent(&self) -> bool {
        matches!(self, Laurentness::Laurent(_))
    }

    pub fn into_option(self) -> Option<LaurentPoly> {
        match self {
            Laurentness::Laurent(p) => Some(p),
            Laurentness::NotLaurent { .. } => None,
        }
    }
}

/// Multiplies both polynomials by the least monomial making them ordinary.
fn clear_negative_exponents(num: &LaurentPoly, den: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let arity = num.arity();
    let mut need = Monomial(vec![0; arity]);
    for p in [num, den] {
        if let Some(m) = p.min_exponents() {
            for i in 0..arity {
                need.0[i] = need.0[i].max(-m.0[i]);
            }
        }
    }
    if need.is_one() {
        (num.clone(), den.clone())
    } else {
        (num.shift(&need), den.shift(&need))
    }
}

impl RationalFunction {
    /// Normalizes `num / den`. Laurent inputs are accepted and cleared by a
    /// monomial first.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        num.try_add(&den)?;
        if num.is_zero() {
            return Ok(Self::zero(num.ctx()));
        }
        let (num, den) = clear_negative_exponents(&num, &den);
        Ok(Self::normalize_polys(num, den))
    }

    fn normalize_polys(num: LaurentPoly, den: LaurentPoly) -> Self {
        // common monomial content
        let mn = num.min_exponents().unwrap();
        let md = den.min_exponents().unwrap();
        let common = mn.meet(&md).scaled(-1);
        let (mut num, mut den) = if common.is_one() {
            (num, den)
        } else {
            (num.shift(&common), den.shift(&common))
        };
        if !den.is_monomial() {
            let dmono = den.min_exponents().unwrap();
            let core = den.shift(&dmono.scaled(-1));
            if let Some(q) = exact_div_unchecked(&num, &core) {
                num = q;
                den = LaurentPoly::monic_monomial(num.ctx(), &dmono.0);
                let mn = num.min_exponents().unwrap();
                let c = mn.meet(&dmono).scaled(-1);
                num = num.shift(&c);
                den = den.shift(&c);
            } else {
                let g = gcd_unchecked(&num, &den);
                if !g.is_constant() {
                    num = exact_div_unchecked(&num, &g).expect("gcd divides numerator");
                    den = exact_div_unchecked(&den, &g).expect("gcd divides denominator");
                }
            }
        }
        let lc = den.leading_coefficient().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        RationalFunction { num: LaurentPoly::zero(ctx), den: LaurentPoly::one(ctx) }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::from_constant(ctx, Rat::one())
    }

    pub fn from_constant(ctx: &Ctx, c: Rat) -> Self {
        RationalFunction { num: LaurentPoly::constant(ctx, c), den: LaurentPoly::one(ctx) }
    }

    pub fn var(ctx: &Ctx, i: usize) -> Self {
        RationalFunction { num: LaurentPoly::var(ctx, i), den: LaurentPoly::one(ctx) }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        if p.is_zero() {
            return Self::zero(p.ctx());
        }
        match p.min_exponents() {
            Some(m) if m.is_nonnegative() => {
                RationalFunction { num: p.clone(), den: LaurentPoly::one(p.ctx()) }
            }
            Some(m) => {
                let lift = Monomial(m.0.iter().map(|&e| (-e).max(0)).collect());
                RationalFunction {
                    num: p.shift(&lift),
                    den: LaurentPoly::monic_monomial(p.ctx(), &lift.0),
                }
            }
            None => unreachable!(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        self.num.ctx()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Laurentness decision: yes iff the normalized denominator is a monomial.
    pub fn laurent(&self) -> Laurentness {
        if self.den.is_monomial() {
            let inv = self.den.monomial_inverse().unwrap();
            Laurentness::Laurent(&self.num * &inv)
        } else {
            Laurentness::NotLaurent { denominator: self.den.clone() }
        }
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.laurent().into_option()
    }

    fn check_ctx(&self, other: &Self) -> Result<(), ArithError> {
        if same_ctx(self.ctx(), other.ctx()) {
            Ok(())
        } else {
            Err(ArithError::ContextMismatch {
                left: self.ctx().to_string(),
                right: other.ctx().to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_ctx(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            let num = &self.num + &other.num;
            return Self::new(num, self.den.clone());
        }
        if self.den.is_monomial() && other.den.is_monomial() {
            let (a, b) = (self.to_laurent().unwrap(), other.to_laurent().unwrap());
            return Ok(Self::from_laurent(&(&a + &b)));
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ctx()));
        }
        if self.den.is_monomial() && other.den.is_monomial() {
            let (a, b) = (self.to_laurent().unwrap(), other.to_laurent().unwrap());
            return Ok(Self::from_laurent(&(&a * &b)));
        }
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_ctx(other)?;
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Result<Self, ArithError> {
        if k >= 0 {
            let k = k as u32;
            // numerator and denominator stay coprime under powers
            Ok(Self::normalize_scalar(self.num.pow(k), self.den.pow(k)))
        } else {
            self.recip()?.pow(-k)
        }
    }

    fn normalize_scalar(num: LaurentPoly, den: LaurentPoly) -> Self {
        let lc = den.leading_coefficient().unwrap().clone();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Substitute a rational function for every variable.
    ///
    /// `images[i]` replaces variable `i`; all images share `target`.
    pub fn substitute(&self, images: &[RationalFunction], target: &Ctx) -> Result<Self, ArithError> {
        let n = substitute_poly(&self.num, images, target)?;
        let d = substitute_poly(&self.den, images, target)?;
        n.try_div(&d)
    }

    /// Substitution by name. Every variable of `self` needs an image.
    pub fn substitute_map(
        &self,
        images: &HashMap<String, RationalFunction>,
        target: &Ctx,
    ) -> Result<Self, ArithError> {
        let list = images_by_name(self.ctx(), images)?;
        self.substitute(&list, target)
    }

    /// Rebuild over a context with the same variable names in another order
    /// or with extra variables.
    pub fn embed(&self, target: &Ctx) -> Result<Self, ArithError> {
        let images = embedding_images(self.ctx(), target)?;
        self.substitute(&images, target)
    }
}

pub(crate) fn images_by_name(
    src: &Ctx,
    images: &HashMap<String, RationalFunction>,
) -> Result<Vec<RationalFunction>, ArithError> {
    src.names()
        .iter()
        .map(|n| images.get(n).cloned().ok_or_else(|| ArithError::MissingImage(n.clone())))
        .collect()
}

pub(crate) fn embedding_images(src: &Ctx, target: &Ctx) -> Result<Vec<RationalFunction>, ArithError> {
    src.names()
        .iter()
        .map(|n| {
            target
                .index_of(n)
                .map(|i| RationalFunction::var(target, i))
                .ok_or_else(|| ArithError::UnknownVariable(n.clone()))
        })
        .collect()
}

/// Substitutes into a Laurent polynomial using a single common denominator,
/// so the result is normalized once.
pub fn substitute_poly(
    p: &LaurentPoly,
    images: &[RationalFunction],
    target: &Ctx,
) -> Result<RationalFunction, ArithError> {
    if images.len() != p.arity() {
        return Err(ArithError::MissingImage(format!(
            "expected {} images, got {}",
            p.arity(),
            images.len()
        )));
    }
    for im in images {
        if !same_ctx(im.ctx(), target) {
            return Err(ArithError::ContextMismatch {
                left: im.ctx().to_string(),
                right: target.to_string(),
            });
        }
    }
    if p.is_zero() {
        return Ok(RationalFunction::zero(target));
    }
    let arity = p.arity();
    let mut maxpos = vec![0i64; arity];
    let mut maxneg = vec![0i64; arity];
    for m in p.support() {
        for i in 0..arity {
            maxpos[i] = maxpos[i].max(m.0[i]);
            maxneg[i] = maxneg[i].max(-m.0[i]);
        }
    }
    for i in 0..arity {
        if maxneg[i] > 0 && images[i].is_zero() {
            return Err(ArithError::DivisionByZero);
        }
    }
    let mut cache: HashMap<(usize, bool, i64), LaurentPoly> = HashMap::new();
    let mut power = |i: usize, of_num: bool, k: i64| -> LaurentPoly {
        cache
            .entry((i, of_num, k))
            .or_insert_with(|| {
                let base = if of_num { &images[i].num } else { &images[i].den };
                base.pow(k as u32)
            })
            .clone()
    };
    // x_i^e with x_i = n_i/d_i, over the common denominator
    // prod_i d_i^{maxpos_i} n_i^{maxneg_i}
    let mut total = LaurentPoly::zero(target);
    for (m, c) in p.terms() {
        let mut t = LaurentPoly::constant(target, c.clone());
        for i in 0..arity {
            let e = m.0[i];
            let en = maxneg[i] + e;
            let ed = maxpos[i] - e;
            if en > 0 && !images[i].num.is_one() {
                t = &t * &power(i, true, en);
            }
            if ed > 0 && !images[i].den.is_one() {
                t = &t * &power(i, false, ed);
            }
        }
        total += &t;
    }
    let mut den = LaurentPoly::one(target);
    for i in 0..arity {
        if maxpos[i] > 0 && !images[i].den.is_one() {
            den = &den * &power(i, false, maxpos[i]);
        }
        if maxneg[i] > 0 && !images[i].num.is_one() {
            den = &den * &power(i, true, maxneg[i]);
        }
    }
    RationalFunction::new(total, den)
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self)
    }
}

macro_rules! rf_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a, 'b> $trait<&'b RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'b RationalFunction) -> RationalFunction {
                self.$try(rhs).expect("rational function context mismatch")
            }
        }
    };
}

rf_binop!(Add, add, try_add);
rf_binop!(Sub, sub, try_sub);
rf_binop!(Mul, mul, try_mul);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_expr, parse_laurent, VarContext};

    fn rf(ctx: &Ctx, s: &str) -> RationalFunction {
        parse_expr(s, ctx).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let f = RationalFunction::new(parse_laurent("x^2 - y^2", &c).unwrap(), parse_laurent("x - y", &c).unwrap()).unwrap();
        assert_eq!(f, rf(&c, "x + y"));
        assert!(f.denominator().is_one());
        let z = RationalFunction::new(LaurentPoly::zero(&c), parse_laurent("x + 1", &c).unwrap()).unwrap();
        assert!(z.is_zero());
        assert!(z.denominator().is_one());
        let h = RationalFunction::new(parse_laurent("2*x", &c).unwrap(), LaurentPoly::from_int(&c, 4)).unwrap();
        assert!(h.denominator().is_one());
        assert_eq!(h.numerator(), &parse_laurent("1/2*x", &c).unwrap());
        assert!(matches!(
            RationalFunction::new(LaurentPoly::one(&c), LaurentPoly::zero(&c)),
            Err(ArithError::DivisionByZero)
        ));
    }

    #[test]
    fn denominator_is_monic() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let f = rf(&c, "(x + 1)/(-3*x + 6*y)");
        assert_eq!(f.denominator().leading_coefficient().unwrap(), &Rat::one());
        assert_eq!(f, rf(&c, "(-1/3*x - 1/3)/(x - 2*y)"));
    }

    #[test]
    fn laurentness() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let f = rf(&c, "(1 + x*y)/x");
        assert_eq!(f.to_laurent(), Some(parse_laurent("x^(-1) + y", &c).unwrap()));
        assert!(!rf(&c, "(x + 1)/(x - 1)").is_laurent());
        let abc = VarContext::new(&["a", "b", "c"]).unwrap();
        let g = rf(&abc, "((a*c - b) + b)/a");
        assert_eq!(g.to_laurent(), Some(parse_laurent("c", &abc).unwrap()));
    }

    #[test]
    fn substitution_examples() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let f = rf(&c, "x^3*y^(-2)");
        let id = vec![RationalFunction::var(&c, 0), RationalFunction::var(&c, 1)];
        assert_eq!(f.substitute(&id, &c).unwrap(), f);

        let t = VarContext::new(&["x", "y3"]).unwrap();
        let images = vec![rf(&t, "x"), rf(&t, "(x + 2)/y3")];
        assert_eq!(rf(&c, "y").substitute(&images, &t).unwrap(), rf(&t, "(x + 2)/y3"));

        let r = VarContext::new(&["x1", "x2", "x3"]).unwrap();
        let relation = rf(&r, "x1*x3 - x2^2");
        let phi = vec![rf(&r, "x1"), rf(&r, "x2"), rf(&r, "(1 + x2^2)/x1")];
        assert!(relation.substitute(&phi, &r).unwrap().is_one());
    }

    #[test]
    fn substitution_missing_image() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let mut m = HashMap::new();
        m.insert("x".to_string(), RationalFunction::var(&c, 0));
        assert!(matches!(
            rf(&c, "x + y").substitute_map(&m, &c),
            Err(ArithError::MissingImage(n)) if n == "y"
        ));
    }
}
