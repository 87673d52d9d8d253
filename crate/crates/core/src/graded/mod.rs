//! Free-group gradings on seeds and homogeneity of exchange relations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{LaurentPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::seeds::Seed;

/// Degrees in `ℤ^rank` keyed by variable name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grading {
    rank: usize,
    degrees: BTreeMap<String, Vec<i64>>,
}

impl Grading {
    pub fn new(rank: usize, degrees: BTreeMap<String, Vec<i64>>) -> Result<Self> {
        for (v, d) in &degrees {
            if d.len() != rank {
                return Err(Error::Invalid(format!("degree of '{v}' has length {}, expected {rank}", d.len())));
            }
        }
        Ok(Grading { rank, degrees })
    }

    pub fn zero<S: AsRef<str>>(rank: usize, names: &[S]) -> Self {
        Grading { rank, degrees: names.iter().map(|n| (n.as_ref().to_string(), vec![0; rank])).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degrees(&self) -> &BTreeMap<String, Vec<i64>> {
        &self.degrees
    }

    pub fn degree(&self, name: &str) -> Option<&[i64]> {
        self.degrees.get(name).map(Vec::as_slice)
    }

    fn require(&self, name: &str) -> Result<&[i64]> {
        self.degree(name).ok_or_else(|| Error::Invalid(format!("variable '{name}' has no degree")))
    }

    pub fn with_degree(mut self, name: &str, d: Vec<i64>) -> Result<Self> {
        if d.len() != self.rank {
            return Err(Error::Invalid(format!("degree of '{name}' has length {}, expected {}", d.len(), self.rank)));
        }
        self.degrees.insert(name.to_string(), d);
        Ok(self)
    }

    fn weighted(&self, names: &[String], exps: &[i64]) -> Result<Vec<i64>> {
        let mut out = vec![0; self.rank];
        for (name, &e) in names.iter().zip(exps) {
            if e != 0 {
                for (o, d) in out.iter_mut().zip(self.require(name)?) {
                    *o += e * d;
                }
            }
        }
        Ok(out)
    }
}

/// The common degree of all support monomials.
pub fn degree_of(f: &LaurentPoly, g: &Grading) -> Result<Vec<i64>> {
    let names = f.ctx().names();
    let mut first: Option<(String, Vec<i64>)> = None;
    for m in f.support() {
        let d = g.weighted(names, &m.0)?;
        match &first {
            None => first = Some((LaurentPoly::monic_monomial(f.ctx(), &m.0).to_string(), d)),
            Some((w, d0)) if *d0 != d => {
                return Err(Error::NotHomogeneous {
                    first: w.clone(),
                    first_degree: d0.clone(),
                    second: LaurentPoly::monic_monomial(f.ctx(), &m.0).to_string(),
                    second_degree: d,
                })
            }
            _ => {}
        }
    }
    first.map(|(_, d)| d).ok_or(Error::ZeroPolynomial("degree of zero"))
}

/// Degree of a quotient of homogeneous polynomials.
pub fn rf_degree(f: &RationalFunction, g: &Grading) -> Result<Vec<i64>> {
    let n = degree_of(f.numerator(), g)?;
    let d = degree_of(f.denominator(), g)?;
    Ok(n.iter().zip(&d).map(|(a, b)| a - b).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCompatibility {
    pub vertex: String,
    pub plus_degree: Vec<i64>,
    pub minus_degree: Vec<i64>,
    pub compatible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub compatible: bool,
    pub vertices: Vec<VertexCompatibility>,
}

fn exchange_degrees(s: &Seed, g: &Grading, k: usize) -> Result<(Vec<i64>, Vec<i64>)> {
    let (p, m) = s.exchange_exponents(k)?;
    Ok((g.weighted(s.var_names(), &p)?, g.weighted(s.var_names(), &m)?))
}

/// Both exchange monomials have equal degree at every mutable vertex.
pub fn grading_is_compatible(s: &Seed, g: &Grading) -> Result<CompatibilityReport> {
    for name in s.var_names() {
        g.require(name)?;
    }
    let mut vertices = Vec::new();
    for &k in s.mutable_vertices() {
        let (plus, minus) = exchange_degrees(s, g, k)?;
        vertices.push(VertexCompatibility {
            vertex: s.vertices()[k].clone(),
            compatible: plus == minus,
            plus_degree: plus,
            minus_degree: minus,
        });
    }
    Ok(CompatibilityReport { compatible: vertices.iter().all(|v| v.compatible), vertices })
}

/// `deg(x_k') = Σ_j [b_jk]₊ deg(x_j) − deg(x_k)`.
pub fn mutated_degree(s: &Seed, g: &Grading, k: usize) -> Result<Vec<i64>> {
    let (plus, minus) = exchange_degrees(s, g, k)?;
    if plus != minus {
        return Err(Error::NotCompatible {
            vertex: s.vertices()[k].clone(),
            detail: format!("exchange monomials have degrees {plus:?} and {minus:?}"),
        });
    }
    let dk = g.require(&s.var_names()[k])?;
    Ok(plus.iter().zip(dk).map(|(a, b)| a - b).collect())
}

/// Mutates the seed and extends the grading to the new variable.
pub fn mutate_graded(s: &Seed, g: &Grading, k: usize) -> Result<(Seed, Grading)> {
    let d = mutated_degree(s, g, k)?;
    let t = s.mutate(k)?;
    let name = t.var_names()[k].clone();
    Ok((t, g.clone().with_degree(&name, d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_laurent, VarContext};
    use crate::seeds::ExchangeMatrix;

    fn grading(rank: usize, pairs: &[(&str, &[i64])]) -> Grading {
        Grading::new(rank, pairs.iter().map(|(n, d)| (n.to_string(), d.to_vec())).collect()).unwrap()
    }

    fn sl3() -> Seed {
        let m = ExchangeMatrix::new(vec![vec![1], vec![0], vec![-1]], vec![1]).unwrap();
        Seed::new(vec!["x1".into(), "x2".into(), "x3".into()], m).unwrap()
    }

    #[test]
    fn degree_examples() {
        let xy = VarContext::new(&["x", "y"]).unwrap();
        let g = grading(1, &[("x", &[1]), ("y", &[1])]);
        assert_eq!(degree_of(&parse_laurent("3*x^2*y^(-1)", &xy).unwrap(), &g).unwrap(), vec![1]);
        assert_eq!(degree_of(&parse_laurent("x + y", &xy).unwrap(), &g).unwrap(), vec![1]);
        let h = grading(1, &[("x", &[1]), ("y", &[2])]);
        assert!(matches!(degree_of(&parse_laurent("x + y", &xy).unwrap(), &h), Err(Error::NotHomogeneous { .. })));
        assert!(degree_of(&LaurentPoly::zero(&xy), &g).is_err());
    }

    #[test]
    fn sl3_compatibility_and_mutation() {
        let s = sl3();
        let g = grading(2, &[("x1", &[1, 0]), ("x2", &[0, 1]), ("x3", &[1, 0])]);
        assert!(grading_is_compatible(&s, &g).unwrap().compatible);
        assert_eq!(mutated_degree(&s, &g, 1).unwrap(), vec![1, -1]);
        let (t, g2) = mutate_graded(&s, &g, 1).unwrap();
        assert!(grading_is_compatible(&t, &g2).unwrap().compatible);
        assert_eq!(mutated_degree(&t, &g2, 1).unwrap(), vec![0, 1]);

        let zero = Grading::zero(3, s.var_names());
        assert!(grading_is_compatible(&s, &zero).unwrap().compatible);
        assert_eq!(mutated_degree(&s, &zero, 1).unwrap(), vec![0, 0, 0]);

        let bad = grading(1, &[("x1", &[1]), ("x2", &[0]), ("x3", &[2])]);
        assert!(!grading_is_compatible(&s, &bad).unwrap().compatible);
        assert!(matches!(mutated_degree(&s, &bad, 1), Err(Error::NotCompatible { .. })));
    }
}
