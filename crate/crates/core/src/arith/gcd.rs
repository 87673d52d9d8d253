//! Exact division and greatest common divisors of ordinary polynomials.
//!
//! The GCD is a recursive primitive PRS: pick the first variable that occurs,
//! split off contents (computed recursively in the remaining variables), run
//! a pseudo-remainder sequence on the primitive parts and keep every
//! remainder primitive. Monomial factors are pulled out first since they are
//! by far the most common common factor in cluster computations.

use num_traits::Zero;

use super::laurent::{LaurentPoly, Monomial};
use super::ArithError;

fn require_polynomial(p: &LaurentPoly) -> Result<(), ArithError> {
    if p.is_polynomial() {
        Ok(())
    } else {
        Err(ArithError::NotPolynomial(p.to_string()))
    }
}

/// Returns `Some(q)` with `f = q·g`, or `None` if `g` does not divide `f`.
pub fn poly_exact_div(f: &LaurentPoly, g: &LaurentPoly) -> Result<Option<LaurentPoly>, ArithError> {
    if g.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    require_polynomial(f)?;
    require_polynomial(g)?;
    f.try_add(g)?;
    Ok(exact_div_unchecked(f, g))
}

pub(crate) fn exact_div_unchecked(f: &LaurentPoly, g: &LaurentPoly) -> Option<LaurentPoly> {
    if f.is_zero() {
        return Some(LaurentPoly::zero(f.ctx()));
    }
    if g.is_monomial() {
        let (gm, gc) = g.leading_term().unwrap();
        if !f.support().all(|m| gm.divides(m)) {
            return None;
        }
        return Some(f.shift(&gm.scaled(-1)).scale(&gc.recip()));
    }
    // cheap rejections: per-variable degree bounds and term counts
    let (fmax, gmax) = (f.max_exponents()?, g.max_exponents()?);
    let (fmin, gmin) = (f.min_exponents()?, g.min_exponents()?);
    for i in 0..f.arity() {
        if gmax.0[i] - gmin.0[i] > fmax.0[i] - fmin.0[i] {
            return None;
        }
    }
    let (glm, glc) = g.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut rem = f.clone();
    let mut quot = LaurentPoly::zero(f.ctx());
    while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        if !glm.divides(&rm) {
            return None;
        }
        let qm = rm.div(&glm);
        let qc = rc / &glc;
        rem.sub_scaled_shift(&qc, &qm, g);
        quot.add_term(qm, qc);
    }
    Some(quot)
}

/// Greatest common divisor, normalized monic under the graded lex order.
pub fn poly_gcd(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly, ArithError> {
    if f.is_zero() && g.is_zero() {
        return Err(ArithError::GcdOfZeros);
    }
    require_polynomial(f)?;
    require_polynomial(g)?;
    f.try_add(g)?;
    Ok(gcd_unchecked(f, g).monic())
}

pub(crate) fn gcd_unchecked(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let ctx = f.ctx();
    let mf = f.min_exponents().unwrap();
    let mg = g.min_exponents().unwrap();
    let common = mf.meet(&mg);
    let f0 = f.shift(&mf.scaled(-1));
    let g0 = g.shift(&mg.scaled(-1));
    let mono = LaurentPoly::monic_monomial(ctx, &common.0);
    if f0.is_constant() || g0.is_constant() {
        return mono;
    }
    if f0 == g0 || f0.monic() == g0.monic() {
        return &mono * &f0.monic();
    }
    &mono * &gcd_no_monomial(&f0, &g0)
}

fn first_var(p: &LaurentPoly) -> Option<usize> {
    (0..p.arity()).find(|&i| p.degree_in(i).unwrap_or(0) > 0)
}

/// GCD of polynomials with no monomial factor, up to a scalar.
fn gcd_no_monomial(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    let ctx = f.ctx();
    if f.is_constant() || g.is_constant() {
        return LaurentPoly::one(ctx);
    }
    let var = match (first_var(f), first_var(g)) {
        (Some(a), Some(b)) => a.min(b),
        _ => return LaurentPoly::one(ctx),
    };
    let df = f.degree_in(var).unwrap();
    let dg = g.degree_in(var).unwrap();
    if df == 0 {
        return gcd_with_content(f, g, var);
    }
    if dg == 0 {
        return gcd_with_content(g, f, var);
    }
    let cf = content_in(f, var);
    let cg = content_in(g, var);
    let c = gcd_unchecked(&cf, &cg);
    let mut a = exact_div_unchecked(f, &cf).expect("content divides");
    let mut b = exact_div_unchecked(g, &cg).expect("content divides");
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    let prim = loop {
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            break b;
        }
        if r.degree_in(var).unwrap() == 0 {
            break LaurentPoly::one(ctx);
        }
        a = b;
        b = primitive_part(&r, var);
    };
    (&c * &primitive_part(&prim, var)).monic()
}

/// `p` does not involve `var`; the gcd therefore divides every coefficient
/// of `q` with respect to `var`.
fn gcd_with_content(p: &LaurentPoly, q: &LaurentPoly, var: usize) -> LaurentPoly {
    let mut acc = p.clone();
    for (_, coeff) in q.collect_in(var) {
        acc = gcd_unchecked(&acc, &coeff);
        if acc.is_constant() {
            return LaurentPoly::one(p.ctx());
        }
    }
    acc.monic()
}

/// GCD of the coefficients of `p` viewed as a polynomial in `var`.
pub(crate) fn content_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let mut coeffs: Vec<LaurentPoly> = p.collect_in(var).into_values().collect();
    coeffs.sort_by_key(|c| c.num_terms());
    let mut acc = match coeffs.first() {
        Some(c) => c.monic(),
        None => return LaurentPoly::zero(p.ctx()),
    };
    for c in &coeffs[1..] {
        if acc.is_constant() {
            break;
        }
        acc = gcd_unchecked(&acc, c);
    }
    if acc.is_constant() {
        LaurentPoly::one(p.ctx())
    } else {
        acc.monic()
    }
}

pub(crate) fn primitive_part(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let c = content_in(p, var);
    exact_div_unchecked(p, &c).expect("content divides").monic()
}

/// Sparse pseudo-remainder of `a` by `b` in `var`.
fn pseudo_remainder(a: &LaurentPoly, b: &LaurentPoly, var: usize) -> LaurentPoly {
    let db = b.degree_in(var).unwrap();
    let lb = b.coeff_in(var, db);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(var).unwrap();
        if dr < db {
            break;
        }
        let lr = r.coeff_in(var, dr);
        let mut shift = vec![0; a.arity()];
        shift[var] = dr - db;
        let t = (&lr * b).shift(&Monomial(shift));
        r = &(&lb * &r) - &t;
    }
    if r.is_zero() {
        r
    } else {
        // scalar normalisation keeps rational coefficients from growing
        let lc = r.leading_coefficient().unwrap().clone();
        if lc.is_zero() {
            r
        } else {
            r.scale(&lc.recip())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_laurent, VarContext};

    fn p(ctx: &crate::arith::Ctx, s: &str) -> LaurentPoly {
        parse_laurent(s, ctx).unwrap()
    }

    #[test]
    fn exact_division_examples() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        let q = poly_exact_div(&p(&c, "x^2 - y^2"), &p(&c, "x - y")).unwrap();
        assert_eq!(q, Some(p(&c, "x + y")));
        assert_eq!(poly_exact_div(&p(&c, "x + 1"), &p(&c, "x - 1")).unwrap(), None);
        // (x+2)(x+3) / (x+2)
        let q = poly_exact_div(&p(&c, "x^2 + 5*x + 6"), &p(&c, "x + 2")).unwrap();
        assert_eq!(q, Some(p(&c, "x + 3")));
        assert!(matches!(
            poly_exact_div(&p(&c, "x"), &LaurentPoly::zero(&c)),
            Err(ArithError::DivisionByZero)
        ));
    }

    #[test]
    fn gcd_examples() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        assert_eq!(poly_gcd(&p(&c, "x^2 - y^2"), &p(&c, "x - y")).unwrap(), p(&c, "x - y"));
        assert_eq!(poly_gcd(&p(&c, "x^2 + 3*y"), &p(&c, "1")).unwrap(), p(&c, "1"));
        assert_eq!(poly_gcd(&p(&c, "x^2 + 5*x + 6"), &p(&c, "x^2 + 6*x + 8")).unwrap(), p(&c, "x + 2"));
        assert!(matches!(
            poly_gcd(&LaurentPoly::zero(&c), &LaurentPoly::zero(&c)),
            Err(ArithError::GcdOfZeros)
        ));
    }

    #[test]
    fn gcd_multivariate_with_monomials() {
        let c = VarContext::new(&["a", "b", "c"]).unwrap();
        let f = p(&c, "a^2*b*(a*c - b)*(b + c)^2");
        let g = p(&c, "a*b^3*(a*c - b)*(a + c)");
        let expected = p(&c, "a*b*(a*c - b)").monic();
        assert_eq!(poly_gcd(&f, &g).unwrap(), expected);
    }

    #[test]
    fn laurent_inputs_rejected() {
        let c = VarContext::new(&["x"]).unwrap();
        assert!(matches!(
            poly_gcd(&p(&c, "x^(-1)"), &p(&c, "x")),
            Err(ArithError::NotPolynomial(_))
        ));
    }
}
