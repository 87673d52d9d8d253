use serde::Serialize;

use super::{check_rank, certify_irreducible, is_primitive, Cone, Irreducibility, LatticeVector};
use crate::arith::LaurentPoly;
use crate::error::{Error, Result};
use crate::report::{CheckStatus, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IrreducibilityStatus {
    CertifiedIrreducible { method: String },
    DeclaredIrreducible,
    Unknown { reason: String },
    CertifiedReducible { witness: String },
    /// `g` is a monomial, hence a unit.
    Unit,
}

/// A pair `(u, h = g^k)` acting on monomials by `x^m ↦ x^m·h^(-⟨u,m⟩)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationDatum {
    pub u: LatticeVector,
    pub g: LaurentPoly,
    pub k: u32,
    pub h: LaurentPoly,
    pub irreducibility: IrreducibilityStatus,
}

impl MutationDatum {
    /// Checks only shapes; the mathematical conditions are reported by
    /// [`datum_validate`].
    pub fn new(u: LatticeVector, g: LaurentPoly, k: u32, declared_irreducible: bool) -> Result<Self> {
        check_rank(g.arity(), u.rank())?;
        if k == 0 {
            return Err(Error::InvalidDatum("exponent k must be positive".into()));
        }
        if g.is_zero() {
            return Err(Error::InvalidDatum("g is zero".into()));
        }
        let irreducibility = if g.is_monomial() {
            IrreducibilityStatus::Unit
        } else {
            match certify_irreducible(&g)? {
                Irreducibility::CertifiedIrreducible { method } => IrreducibilityStatus::CertifiedIrreducible { method },
                Irreducibility::CertifiedReducible { witness } => IrreducibilityStatus::CertifiedReducible { witness },
                Irreducibility::Unknown { .. } if declared_irreducible => IrreducibilityStatus::DeclaredIrreducible,
                Irreducibility::Unknown { reason } => IrreducibilityStatus::Unknown { reason },
            }
        };
        let h = g.pow(k);
        Ok(MutationDatum { u, g, k, h, irreducibility })
    }

    pub fn rank(&self) -> usize {
        self.u.rank()
    }

    /// `-⟨u, m⟩`, the power of `h` attached to `x^m` by the transition.
    pub fn exponent_of(&self, m: &[i64]) -> i64 {
        -self.u.0.iter().zip(m).map(|(a, b)| a * b).sum::<i64>()
    }
}

pub fn datum_validate(d: &MutationDatum, target: &Cone) -> ValidationReport {
    let mut rep = ValidationReport::new();
    match is_primitive(&d.u.0) {
        Ok(ok) => rep.pass_if("u primitive", ok, format!("u = {}", d.u)),
        Err(_) => rep.push("u primitive", CheckStatus::Fail, "u is zero"),
    }
    let bad: Vec<String> = d
        .g
        .support()
        .filter(|m| d.exponent_of(&m.0) != 0)
        .map(|m| format!("{:?}", m.0))
        .collect();
    rep.pass_if(
        "support(g) orthogonal to u",
        bad.is_empty(),
        if bad.is_empty() { "all exponents pair to 0".to_string() } else { format!("off u-perp: {}", bad.join(" ")) },
    );
    rep.pass_if("h = g^k", d.h == d.g.pow(d.k), format!("k = {}", d.k));
    match target.contains(&d.u) {
        Ok(inside) => rep.pass_if(
            "admissible (u not in target cone)",
            !inside,
            if inside { format!("u = {} lies in the target cone", d.u) } else { "u outside target cone".into() },
        ),
        Err(e) => rep.push("admissible (u not in target cone)", CheckStatus::Fail, e.to_string()),
    }
    let (status, detail) = match &d.irreducibility {
        IrreducibilityStatus::CertifiedIrreducible { method } => (CheckStatus::Pass, format!("certified: {method}")),
        IrreducibilityStatus::DeclaredIrreducible => (CheckStatus::Unchecked, "declared irreducible, uncertified".into()),
        IrreducibilityStatus::Unknown { reason } => (CheckStatus::Unchecked, format!("unknown: {reason}")),
        IrreducibilityStatus::CertifiedReducible { witness } => (CheckStatus::Fail, format!("reducible: {witness}")),
        IrreducibilityStatus::Unit => (CheckStatus::Fail, "g is a unit".into()),
    };
    rep.push("g irreducible", status, detail);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_laurent, VarContext};

    #[test]
    fn exchange_datum_is_valid() {
        let ctx = VarContext::new(&["x1", "x2", "x3"]).unwrap();
        let g = parse_laurent("1 + x1*x3^(-1)", &ctx).unwrap();
        let d = MutationDatum::new(LatticeVector(vec![0, 1, 0]), g, 1, false).unwrap();
        let rep = datum_validate(&d, &Cone::zero(3));
        assert!(rep.is_valid(), "{rep}");
        assert_eq!(rep.status_of("g irreducible"), Some(CheckStatus::Pass));
    }

    #[test]
    fn non_primitive_u_is_invalid() {
        let ctx = VarContext::new(&["x1", "x2", "x3"]).unwrap();
        let g = parse_laurent("1 + x2", &ctx).unwrap();
        let d = MutationDatum::new(LatticeVector(vec![2, 0, 0]), g, 1, false).unwrap();
        let rep = datum_validate(&d, &Cone::zero(3));
        assert!(!rep.is_valid());
        assert_eq!(rep.status_of("u primitive"), Some(CheckStatus::Fail));
    }

    #[test]
    fn translation_datum_and_admissibility() {
        let ctx = VarContext::new(&["x", "y"]).unwrap();
        let g = parse_laurent("x + 2", &ctx).unwrap();
        let d = MutationDatum::new(LatticeVector(vec![0, 1]), g.clone(), 1, false).unwrap();
        assert!(datum_validate(&d, &Cone::zero(2)).is_valid());
        // u inside the target cone is not admissible
        let rep = datum_validate(&d, &Cone::coordinate(2, &[1]));
        assert_eq!(rep.status_of("admissible (u not in target cone)"), Some(CheckStatus::Fail));
        // k > 1 caches the power
        let d3 = MutationDatum::new(LatticeVector(vec![0, 1]), g.clone(), 3, false).unwrap();
        assert_eq!(d3.h, g.pow(3));
        assert!(datum_validate(&d3, &Cone::zero(2)).is_valid());
        // support off u-perp
        let bad = MutationDatum::new(LatticeVector(vec![1, 0]), g, 1, false).unwrap();
        assert!(!datum_validate(&bad, &Cone::zero(2)).is_valid());
    }
}
