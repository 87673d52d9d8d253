//! Semigroup-algebra charts, mutation transitions and membership in their
//! intersections.

mod chart;
mod schema;

pub use chart::{pull_monomial, transition_from_datum, Chart};
pub use schema::{ChartFile, ChartSystemFile, ConeRows, DatumFile};

use serde::Serialize;

use crate::arith::{Ctx, LaurentPoly, RationalFunction, VarContext};
use crate::error::{Error, Result};
use crate::lattice::{datum_validate, monomial_valuation, Cone, LatticeVector, MutationDatum};
use crate::linalg::IntMatrix;
use crate::report::{CheckStatus, ValidationReport};
use crate::seeds::Seed;

/// A reference chart (index 0) and charts differing from it by mutations.
#[derive(Debug, Clone)]
pub struct MsaPresentation {
    charts: Vec<Chart>,
    pub height_one_declared: bool,
    /// Named abbreviations over the reference variables.
    pub definitions: Vec<(String, RationalFunction)>,
}

impl MsaPresentation {
    pub fn new(reference: Chart, others: Vec<Chart>, height_one_declared: bool) -> Result<Self> {
        if reference.datum().is_some() {
            return Err(Error::Invalid("the reference chart carries no datum".into()));
        }
        for c in &others {
            if c.reference_ctx().names() != reference.ctx().names() {
                return Err(Error::Invalid(format!("chart {} is not attached to the reference variables", c.name)));
            }
        }
        let mut charts = vec![reference];
        charts.extend(others);
        Ok(MsaPresentation { charts, height_one_declared, definitions: Vec::new() })
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn chart(&self, i: usize) -> Result<&Chart> {
        self.charts.get(i).ok_or(Error::ChartIndex(i))
    }

    pub fn reference_ctx(&self) -> &Ctx {
        self.charts[0].ctx()
    }

    /// Parses an expression over the reference variables and the defined
    /// abbreviations.
    pub fn parse(&self, text: &str) -> Result<RationalFunction> {
        let reference = self.reference_ctx();
        if self.definitions.is_empty() {
            return Ok(crate::arith::parse_expr(text, reference)?);
        }
        let names: Vec<&str> = self.definitions.iter().map(|(n, _)| n.as_str()).collect();
        let ext = reference.extended(&names)?;
        let f = crate::arith::parse_expr(text, &ext)?;
        let mut images: Vec<RationalFunction> =
            (0..reference.arity()).map(|i| RationalFunction::var(reference, i)).collect();
        images.extend(self.definitions.iter().map(|(_, d)| d.clone()));
        Ok(f.substitute(&images, reference)?)
    }
}

pub fn chart_express(p: &MsaPresentation, i: usize, f: &RationalFunction) -> Result<RationalFunction> {
    p.chart(i)?.express(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartVerdict {
    pub chart: String,
    pub member: bool,
    /// Laurent expansion in chart coordinates, or the reason for rejection.
    pub certificate: String,
    #[serde(skip)]
    pub expansion: Option<LaurentPoly>,
}

pub fn chart_membership(p: &MsaPresentation, i: usize, f: &RationalFunction) -> Result<ChartVerdict> {
    let chart = p.chart(i)?;
    let g = chart.express(f)?;
    let name = chart.name.clone();
    let Some(l) = g.to_laurent() else {
        return Ok(ChartVerdict {
            chart: name,
            member: false,
            certificate: format!("not Laurent: denominator {}", g.denominator()),
            expansion: None,
        });
    };
    let mut violation = None;
    for m in l.support() {
        if !chart.cone().dual_contains(&m.0)? {
            violation = Some(m.0.clone());
            break;
        }
    }
    if let Some(m) = violation {
        let bad = chart
            .cone()
            .generators()
            .iter()
            .find(|w| w.0.iter().zip(&m).map(|(a, b)| a * b).sum::<i64>() < 0)
            .map(|w| w.to_string())
            .unwrap_or_default();
        return Ok(ChartVerdict {
            chart: name,
            member: false,
            certificate: format!("exponent {m:?} of {l} pairs negatively with cone generator {bad}"),
            expansion: Some(l),
        });
    }
    Ok(ChartVerdict { chart: name, member: true, certificate: l.to_string(), expansion: Some(l) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MsaVerdict {
    pub member: bool,
    pub charts: Vec<ChartVerdict>,
}

impl MsaVerdict {
    pub fn failing_chart(&self) -> Option<&ChartVerdict> {
        self.charts.iter().find(|c| !c.member)
    }
}

pub fn msa_membership(p: &MsaPresentation, f: &RationalFunction) -> Result<MsaVerdict> {
    let charts = (0..p.charts.len()).map(|i| chart_membership(p, i, f)).collect::<Result<Vec<_>>>()?;
    Ok(MsaVerdict { member: charts.iter().all(|c| c.member), charts })
}

/// Datum and basis `μ_k(f)` of the adjacent seed at `k`, without the
/// primitivity requirement.
fn exchange_datum(s: &Seed, k: usize) -> Result<(MutationDatum, IntMatrix)> {
    let (plus, minus) = s.exchange_exponents(k)?;
    let ctx = s.cluster_ctx();
    let n = s.num_vertices();
    let v: Vec<i64> = plus.iter().zip(&minus).map(|(a, b)| a - b).collect();
    let g = &LaurentPoly::one(ctx) + &LaurentPoly::monic_monomial(ctx, &v);
    let datum = MutationDatum::new(LatticeVector::unit(n, k), g, 1, false)?;
    let mut basis = crate::linalg::identity(n);
    let mut row = minus.clone();
    row[k] -= 1;
    basis[k] = row;
    Ok((datum, basis))
}

/// `u = e_k`, `h = 1 + x^{v_k}` with `v_k = Σ_j b_jk f_j`, and the basis
/// `μ_k(f)` (rows).
pub fn seed_to_datum(s: &Seed, k: usize) -> Result<(MutationDatum, IntMatrix)> {
    let col = {
        s.exchange_exponents(k)?;
        s.matrix().column(k)
    };
    if crate::linalg::gcd_all(&col) != 1 {
        return Err(Error::NonPrimitiveColumn(s.vertices()[k].clone()));
    }
    exchange_datum(s, k)
}

/// Reference chart `ℒ(t)` and the adjacent charts `ℒ(μ_k t)`, all with the
/// cone spanned by the non-invertible frozen directions.
pub fn upper_presentation(s: &Seed, non_invertible: &[usize]) -> Result<MsaPresentation> {
    if !s.is_maximal_rank() {
        return Err(Error::NotMaximalRank {
            rank: crate::linalg::rank(s.matrix().entries()),
            mutable: s.mutable_vertices().len(),
        });
    }
    for &j in non_invertible {
        if j >= s.num_vertices() || s.is_mutable(j) {
            return Err(Error::Invalid(format!("non-invertible vertex #{} is not frozen", j + 1)));
        }
    }
    let n = s.num_vertices();
    let cone = Cone::coordinate(n, non_invertible);
    let reference = Chart::reference("t", s.cluster_ctx().clone(), cone.clone())?;
    let mut others = Vec::new();
    for &k in s.mutable_vertices() {
        let (datum, basis) = exchange_datum(s, k)?;
        let adjacent = s.mutate(k)?;
        let ctx = adjacent.cluster_ctx().clone();
        others.push(Chart::from_datum(format!("mu_{}(t)", s.vertices()[k]), ctx, cone.clone(), basis, datum)?);
    }
    MsaPresentation::new(reference, others, true)
}

/// Membership in the upper cluster algebra with the listed frozen vertices
/// non-invertible. `f` may be over the ambient or the cluster variables.
pub fn upper_membership(s: &Seed, f: &RationalFunction, non_invertible: &[usize]) -> Result<MsaVerdict> {
    let p = upper_presentation(s, non_invertible)?;
    let g = s.to_cluster(f)?;
    msa_membership(&p, &g)
}

/// Requires `f` in the intersection; then checks `v_w(f) ≥ 0` on every
/// chart expansion for the listed `w` (chart `N`-coordinates).
pub fn valuation_membership(ws: &[Vec<LatticeVector>], p: &MsaPresentation, f: &RationalFunction) -> Result<bool> {
    let verdict = msa_membership(p, f)?;
    if let Some(bad) = verdict.failing_chart() {
        return Err(Error::NotMember(format!("chart {}: {}", bad.chart, bad.certificate)));
    }
    for (chart, wlist) in verdict.charts.iter().zip(ws) {
        let l = chart.expansion.as_ref().expect("members have expansions");
        for w in wlist {
            if l.is_zero() {
                continue;
            }
            if monomial_valuation(&w.0, l)? < 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Datum validity, admissibility for `σ₂` and the ray-transform surrogate
/// for the divisor bijection. Both cones are in reference `N`-coordinates.
pub fn validate_mutation(d: &MutationDatum, sigma1: &Cone, sigma2: &Cone) -> ValidationReport {
    let mut rep = datum_validate(d, sigma2);
    let mut transformed = Vec::new();
    for rho in sigma1.rays() {
        match monomial_valuation(&rho.0, &d.h) {
            Ok(v) => {
                let t = &rho - &d.u.scaled(v);
                match t.primitive() {
                    Some(p) => transformed.push(p),
                    None => {
                        rep.push("divisor bijection", CheckStatus::SurrogateFail, format!("ray {rho} maps to 0"));
                        return rep;
                    }
                }
            }
            Err(e) => {
                rep.push("divisor bijection", CheckStatus::SurrogateFail, e.to_string());
                return rep;
            }
        }
    }
    transformed.sort();
    transformed.dedup();
    let target = sigma2.rays();
    let show = |v: &[LatticeVector]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let detail = format!("transformed rays [{}], target rays [{}]", show(&transformed), show(&target));
    if sigma1.rays().is_empty() && target.is_empty() {
        rep.push("divisor bijection", CheckStatus::SurrogatePass, "no invariant divisors");
    } else if transformed == target {
        rep.push("divisor bijection", CheckStatus::SurrogatePass, detail);
    } else {
        rep.push("divisor bijection", CheckStatus::SurrogateFail, detail);
    }
    rep
}

/// Full report for a presentation: convexity, round trips, data,
/// admissibility, the surrogate, and the undecided height-one condition.
pub fn validate_presentation(p: &MsaPresentation) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let reference = &p.charts[0];
    rep.pass_if(
        format!("{}: cone strongly convex", reference.name),
        reference.cone().is_strongly_convex(),
        format!("{} generators", reference.cone().generators().len()),
    );
    for chart in &p.charts[1..] {
        let prefix = format!("{}: ", chart.name);
        rep.pass_if(
            format!("{prefix}cone strongly convex"),
            chart.cone().is_strongly_convex(),
            format!("{} generators", chart.cone().generators().len()),
        );
        match chart.round_trip_ok() {
            Ok(ok) => rep.pass_if(format!("{prefix}transition round trip"), ok, "from_reference ∘ to_reference"),
            Err(e) => rep.push(format!("{prefix}transition round trip"), CheckStatus::Fail, e.to_string()),
        }
        let datum = chart.datum().expect("non-reference charts carry a datum");
        match chart.cone_in_reference() {
            Ok(sigma2) => rep.extend(&prefix, validate_mutation(datum, reference.cone(), &sigma2)),
            Err(e) => rep.push(format!("{prefix}cone in reference coordinates"), CheckStatus::Fail, e.to_string()),
        }
        rep.push(
            format!("{prefix}height-one contraction"),
            CheckStatus::Unchecked,
            format!("declared {}; not decided", p.height_one_declared),
        );
    }
    rep
}

/// Context with fresh names for a chart built programmatically.
pub fn chart_ctx<S: AsRef<str>>(names: &[S]) -> Result<Ctx> {
    Ok(VarContext::new(names)?)
}

#[cfg(test)]
mod tests;
