use crate::arith::{Ctx, LaurentPoly, Monomial, RationalFunction};
use crate::error::{Error, Result};
use crate::lattice::{check_rank, Cone, MutationDatum};
use crate::linalg::{identity, mat_mul, transpose, unimodular_inverse, IntMatrix};

/// An embedded semigroup algebra `K[σ^∨ ∩ M]` inside the function field of
/// the reference chart.
///
/// Chart coordinate `i` is the pullback of `x^{b_i}` along the datum's
/// transition, where `b_i` is row `i` of the basis. The cone lives in the
/// chart's own `N`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub name: String,
    ctx: Ctx,
    reference: Ctx,
    cone: Cone,
    basis: IntMatrix,
    inverse_basis: IntMatrix,
    datum: Option<MutationDatum>,
    to_reference: Vec<RationalFunction>,
    from_reference: Vec<RationalFunction>,
}

/// `x^m · h^(-⟨u,m⟩)` over the datum's context.
pub fn pull_monomial(d: &MutationDatum, m: &[i64]) -> Result<RationalFunction> {
    let ctx = d.g.ctx();
    let mono = RationalFunction::from_laurent(&LaurentPoly::monic_monomial(ctx, m));
    let h = RationalFunction::from_laurent(&d.h);
    Ok(mono.try_mul(&h.pow(d.exponent_of(m))?)?)
}

/// Coordinate substitutions realising `x^m ↦ x^m h^(-⟨u,m⟩)` (forward) and
/// `x^m ↦ x^m h^(⟨u,m⟩)` (inverse) on the datum's own context.
pub fn transition_from_datum(d: &MutationDatum) -> Result<(Vec<RationalFunction>, Vec<RationalFunction>)> {
    let ctx = d.g.ctx();
    let n = ctx.arity();
    let h = RationalFunction::from_laurent(&d.h);
    let mut fwd = Vec::with_capacity(n);
    let mut inv = Vec::with_capacity(n);
    for i in 0..n {
        let x = RationalFunction::var(ctx, i);
        fwd.push(x.try_mul(&h.pow(-d.u.0[i])?)?);
        inv.push(x.try_mul(&h.pow(d.u.0[i])?)?);
    }
    Ok((fwd, inv))
}

impl Chart {
    /// A chart equal to the reference torus, or a cone restriction of it.
    pub fn reference(name: impl Into<String>, ctx: Ctx, cone: Cone) -> Result<Chart> {
        let n = ctx.arity();
        check_rank(n, cone.rank())?;
        let id: Vec<RationalFunction> = (0..n).map(|i| RationalFunction::var(&ctx, i)).collect();
        Ok(Chart {
            name: name.into(),
            cone,
            basis: identity(n),
            inverse_basis: identity(n),
            datum: None,
            to_reference: id.clone(),
            from_reference: id,
            reference: ctx.clone(),
            ctx,
        })
    }

    /// Chart related to the reference by `datum` (over the reference
    /// context), with coordinates `x^{b_i}` for the rows `b_i` of `basis`.
    pub fn from_datum(
        name: impl Into<String>,
        ctx: Ctx,
        cone: Cone,
        basis: IntMatrix,
        datum: MutationDatum,
    ) -> Result<Chart> {
        let reference = datum.g.ctx().clone();
        let n = reference.arity();
        check_rank(n, ctx.arity())?;
        check_rank(n, cone.rank())?;
        check_rank(n, basis.len())?;
        let inverse_basis = unimodular_inverse(&basis)
            .ok_or_else(|| Error::Invalid("chart basis is not a lattice basis (determinant ±1)".into()))?;
        let to_reference =
            basis.iter().map(|b| pull_monomial(&datum, b)).collect::<Result<Vec<RationalFunction>>>()?;
        // h in chart coordinates: its support is u-perp, so x^m = y^{C^T m}
        let ct = transpose(&inverse_basis);
        let h_chart = LaurentPoly::from_terms(
            &ctx,
            datum.h.terms().map(|(m, c)| {
                let e: Vec<i64> = ct.iter().map(|row| row.iter().zip(&m.0).map(|(a, b)| a * b).sum()).collect();
                (Monomial(e), c.clone())
            }),
        );
        let h_chart = RationalFunction::from_laurent(&h_chart);
        let mut from_reference = Vec::with_capacity(n);
        for j in 0..n {
            // x_j = y^{row j of C} · h^{u_j}
            let mono = RationalFunction::from_laurent(&LaurentPoly::monic_monomial(&ctx, &inverse_basis[j]));
            from_reference.push(mono.try_mul(&h_chart.pow(datum.u.0[j])?)?);
        }
        Ok(Chart {
            name: name.into(),
            ctx,
            reference,
            cone,
            basis,
            inverse_basis,
            datum: Some(datum),
            to_reference,
            from_reference,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn datum(&self) -> Option<&MutationDatum> {
        self.datum.as_ref()
    }

    pub fn to_reference(&self) -> &[RationalFunction] {
        &self.to_reference
    }

    pub fn from_reference(&self) -> &[RationalFunction] {
        &self.from_reference
    }

    /// The chart cone in reference `N`-coordinates, `w = C·w'`.
    pub fn cone_in_reference(&self) -> Result<Cone> {
        self.cone.transformed(&self.inverse_basis)
    }

    /// Reference exponent of the chart monomial `y^{m'}`, i.e. `B^T m'`.
    pub fn exponent_to_reference(&self, m: &[i64]) -> Vec<i64> {
        let col = vec![m.to_vec()];
        mat_mul(&col, &self.basis).remove(0)
    }

    /// `from_reference ∘ to_reference` is the identity on chart coordinates.
    pub fn round_trip_ok(&self) -> Result<bool> {
        for (i, f) in self.to_reference.iter().enumerate() {
            if f.substitute(&self.from_reference, &self.ctx)? != RationalFunction::var(&self.ctx, i) {
                return Ok(false);
            }
        }
        for (j, g) in self.from_reference.iter().enumerate() {
            if g.substitute(&self.to_reference, &self.reference)? != RationalFunction::var(&self.reference, j) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn reference_ctx(&self) -> &Ctx {
        &self.reference
    }

    pub fn express(&self, f: &RationalFunction) -> Result<RationalFunction> {
        if f.ctx().names() != self.reference.names() {
            return Err(Error::Invalid(format!("{f} is not over the reference variables {}", self.reference)));
        }
        Ok(f.substitute(&self.from_reference, &self.ctx)?)
    }
}
