//! Divisibility oracle for the two-point chart system
//! `K[x^±, y, z]/(yz − (x+λ₁)(x+λ₂))`, independent of the chart machinery.

use rand::Rng;

use mutalg::arith::{poly_exact_div, rat, Ctx, LaurentPoly, Monomial};
use mutalg::random;
use mutalg::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisibilityOracle {
    pub lambdas: [i64; 2],
}

impl DivisibilityOracle {
    pub fn new(lambdas: [i64; 2]) -> Result<Self> {
        if lambdas[0] == lambdas[1] {
            return Err(Error::Invalid(format!("the two points must be distinct, got {lambdas:?}")));
        }
        Ok(DivisibilityOracle { lambdas })
    }

    /// `(x + λ₁)(x + λ₂)` over `ctx`, whose first variable is `x`.
    pub fn quadric(&self, ctx: &Ctx) -> LaurentPoly {
        let linear = |l: i64| {
            LaurentPoly::from_terms(
                ctx,
                [(Monomial::unit(ctx.arity(), 0), rat(1)), (Monomial::one(ctx.arity()), rat(l))],
            )
        };
        &linear(self.lambdas[0]) * &linear(self.lambdas[1])
    }

    /// `f = Σ c_n(x) yⁿ` is a member iff `((x+λ₁)(x+λ₂))^{|n|}` divides
    /// `c_n` for every `n < 0`. `f` is over `(x, y)`.
    pub fn member(&self, f: &LaurentPoly) -> Result<bool> {
        let ctx = f.ctx();
        if ctx.arity() != 2 {
            return Err(Error::Invalid(format!("oracle expects two variables, got {ctx}")));
        }
        let q = self.quadric(ctx);
        for (n, c) in f.collect_in(1) {
            if n >= 0 {
                continue;
            }
            // c is Laurent in x alone; powers of x are units
            let shift = c.min_exponents().expect("collected coefficients are nonzero").scaled(-1);
            let c = c.shift(&shift);
            if poly_exact_div(&c, &q.pow((-n) as u32))?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Random `Σ c_n(x) yⁿ` with `n ∈ [-2, 2]`. Each negative coefficient
    /// is a multiple of the required power of the quadric with probability
    /// one half, so members and non-members both occur.
    pub fn random_element<R: Rng>(&self, rng: &mut R, ctx: &Ctx) -> LaurentPoly {
        let q = self.quadric(ctx);
        let mut total = LaurentPoly::zero(ctx);
        for n in -2i64..=2 {
            if rng.gen_bool(0.35) {
                continue;
            }
            let mut c = random::laurent(rng, ctx, 3, -1, 2);
            // keep only the x-part
            c = LaurentPoly::from_terms(ctx, c.terms().map(|(m, a)| (Monomial(vec![m.0[0], 0]), a.clone())));
            if n < 0 && rng.gen_bool(0.5) {
                c = &c * &q.pow((-n) as u32);
            } else if n < 0 && rng.gen_bool(0.5) {
                // one factor short
                c = &c * &q.pow((-n - 1) as u32);
            }
            let yn = LaurentPoly::monic_monomial(ctx, &[0, n]);
            total += &(&c * &yn);
        }
        total
    }
}
