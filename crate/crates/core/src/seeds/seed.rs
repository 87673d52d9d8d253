use crate::arith::{rat, Ctx, LaurentPoly, Monomial, RationalFunction, VarContext};
use crate::error::{Error, Result};

use super::matrix::{matrix_is_maximal_rank, matrix_is_primitive, matrix_mutate, ExchangeMatrix};

/// A seed of geometric type together with its ledger.
///
/// The ledger expresses every current cluster variable as a normalized
/// rational function in the ambient variables (by default the initial
/// cluster). When the inverse map is known, each ambient variable is also
/// kept as a rational function in the current cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    vertices: Vec<String>,
    matrix: ExchangeMatrix,
    var_names: Vec<String>,
    mutation_counts: Vec<u32>,
    cluster: Ctx,
    ambient: Ctx,
    ledger: Vec<RationalFunction>,
    inverse: Option<Vec<RationalFunction>>,
}

impl Seed {
    /// Seed whose ledger is the coordinate functions of the vertex names.
    pub fn new(vertices: Vec<String>, matrix: ExchangeMatrix) -> Result<Self> {
        if vertices.len() != matrix.num_vertices() {
            return Err(Error::Invalid(format!(
                "{} vertices but the exchange matrix has {} rows",
                vertices.len(),
                matrix.num_vertices()
            )));
        }
        let ctx = VarContext::new(&vertices)?;
        let ledger = (0..vertices.len()).map(|i| RationalFunction::var(&ctx, i)).collect();
        let inverse = Some((0..vertices.len()).map(|i| RationalFunction::var(&ctx, i)).collect());
        Ok(Seed {
            var_names: vertices.clone(),
            mutation_counts: vec![0; vertices.len()],
            vertices,
            matrix,
            cluster: ctx.clone(),
            ambient: ctx,
            ledger,
            inverse,
        })
    }

    /// Replaces the ledger. `inverse`, when given, expresses each ambient
    /// variable in the cluster variables and must invert the ledger.
    pub fn with_ledger(
        mut self,
        ambient: Ctx,
        ledger: Vec<RationalFunction>,
        inverse: Option<Vec<RationalFunction>>,
    ) -> Result<Self> {
        if ledger.len() != self.vertices.len() {
            return Err(Error::Invalid("ledger needs one entry per vertex".into()));
        }
        for f in &ledger {
            if f.ctx().names() != ambient.names() {
                return Err(Error::Invalid(format!("ledger entry {f} is not over {ambient}")));
            }
        }
        if let Some(inv) = &inverse {
            if inv.len() != ambient.arity() {
                return Err(Error::Invalid("inverse map needs one entry per ambient variable".into()));
            }
            for (a, g) in inv.iter().enumerate() {
                let back = g.substitute(&ledger, &ambient)?;
                if back != RationalFunction::var(&ambient, a) {
                    return Err(Error::Invalid(format!(
                        "coordinate {} = {g} does not invert the ledger (gives {back})",
                        ambient.name(a)
                    )));
                }
            }
            for (i, f) in ledger.iter().enumerate() {
                let back = f.substitute(inv, &self.cluster)?;
                if back != RationalFunction::var(&self.cluster, i) {
                    return Err(Error::Invalid(format!(
                        "ledger entry {} = {f} is not recovered from the coordinates (gives {back})",
                        self.vertices[i]
                    )));
                }
            }
        }
        self.ambient = ambient;
        self.ledger = ledger;
        self.inverse = inverse;
        Ok(self)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn is_mutable(&self, v: usize) -> bool {
        self.matrix.is_mutable(v)
    }

    pub fn mutable_vertices(&self) -> &[usize] {
        self.matrix.mutable_rows()
    }

    pub fn frozen_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| !self.is_mutable(v)).collect()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    /// Context of the current cluster variables.
    pub fn cluster_ctx(&self) -> &Ctx {
        &self.cluster
    }

    pub fn ambient_ctx(&self) -> &Ctx {
        &self.ambient
    }

    pub fn ledger(&self) -> &[RationalFunction] {
        &self.ledger
    }

    pub fn ledger_of(&self, v: usize) -> &RationalFunction {
        &self.ledger[v]
    }

    pub fn inverse(&self) -> Option<&[RationalFunction]> {
        self.inverse.as_deref()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Resolves a vertex by exact name, 1-based position, or the unique
    /// vertex whose trailing digits equal the token.
    pub fn resolve_vertex(&self, token: &str) -> Result<usize> {
        let token = token.trim();
        if let Some(i) = self.vertex_index(token) {
            return Ok(i);
        }
        if !token.is_empty() && token.chars().all(|c| c.is_ascii_digit()) {
            let hits: Vec<usize> = (0..self.num_vertices())
                .filter(|&i| {
                    let v = &self.vertices[i];
                    let digits: String = v.chars().rev().take_while(|c| c.is_ascii_digit()).collect();
                    let digits: String = digits.chars().rev().collect();
                    !digits.is_empty() && digits.trim_start_matches('0') == token.trim_start_matches('0')
                })
                .collect();
            if hits.len() == 1 {
                return Ok(hits[0]);
            }
            if hits.is_empty() {
                if let Ok(p) = token.parse::<usize>() {
                    if (1..=self.num_vertices()).contains(&p) {
                        return Ok(p - 1);
                    }
                }
            }
        }
        Err(Error::UnknownVertex(token.to_string()))
    }

    fn require_mutable(&self, k: usize) -> Result<()> {
        if k >= self.num_vertices() {
            return Err(Error::UnknownVertex(format!("#{}", k + 1)));
        }
        if !self.is_mutable(k) {
            return Err(Error::FrozenVertex(self.vertices[k].clone()));
        }
        Ok(())
    }

    /// Exponent vectors of `∏ x_j^[b_jk]₊` and `∏ x_j^[-b_jk]₊`.
    pub fn exchange_exponents(&self, k: usize) -> Result<(Vec<i64>, Vec<i64>)> {
        self.require_mutable(k)?;
        let col = self.matrix.column(k);
        Ok((col.iter().map(|&b| b.max(0)).collect(), col.iter().map(|&b| (-b).max(0)).collect()))
    }

    /// All-zero column: the exchange relation degenerates to `x_k x_k' = 2`.
    pub fn is_degenerate(&self, k: usize) -> bool {
        self.is_mutable(k) && self.matrix.column(k).iter().all(|&b| b == 0)
    }

    pub fn is_maximal_rank(&self) -> bool {
        matrix_is_maximal_rank(&self.matrix)
    }

    pub fn is_primitive(&self) -> bool {
        matrix_is_primitive(&self.matrix)
    }

    fn fresh_name(&self, k: usize, count: u32) -> String {
        let mut name = format!("{}_{count}", self.vertices[k]);
        while self.var_names.iter().enumerate().any(|(i, n)| i != k && *n == name) {
            name.push('_');
        }
        name
    }

    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let (plus, minus) = self.exchange_exponents(k)?;
        let matrix = matrix_mutate(&self.matrix, k)?;
        // ledger: x_k' = (M+ + M-) / x_k, evaluated in the ambient variables
        let mono = |e: &[i64]| -> Result<RationalFunction> {
            let mut acc = RationalFunction::one(&self.ambient);
            for (j, &p) in e.iter().enumerate() {
                if p > 0 {
                    acc = acc.try_mul(&self.ledger[j].pow(p)?)?;
                }
            }
            Ok(acc)
        };
        let numer = mono(&plus)?.try_add(&mono(&minus)?)?;
        let new_entry = numer.try_div(&self.ledger[k])?;
        let mut ledger = self.ledger.clone();
        ledger[k] = new_entry;

        let mut counts = self.mutation_counts.clone();
        counts[k] += 1;
        let mut names = self.var_names.clone();
        names[k] = self.fresh_name(k, counts[k]);
        let cluster = VarContext::new(&names)?;

        // old cluster variables in the new cluster: x_k = (M+ + M-) / x_k'
        let inverse = match &self.inverse {
            None => None,
            Some(inv) => {
                let mut images: Vec<RationalFunction> =
                    (0..names.len()).map(|i| RationalFunction::var(&cluster, i)).collect();
                let mp = LaurentPoly::monic_monomial(&cluster, &plus);
                let mm = LaurentPoly::monic_monomial(&cluster, &minus);
                let xk = LaurentPoly::monomial(&cluster, Monomial::unit(names.len(), k), rat(1));
                images[k] = RationalFunction::new(&mp + &mm, xk)?;
                Some(inv.iter().map(|g| g.substitute(&images, &cluster)).collect::<std::result::Result<_, _>>()?)
            }
        };
        Ok(Seed {
            vertices: self.vertices.clone(),
            matrix,
            var_names: names,
            mutation_counts: counts,
            cluster,
            ambient: self.ambient.clone(),
            ledger,
            inverse,
        })
    }

    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in ks {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Expresses an ambient-variable function in the current cluster.
    pub fn to_cluster(&self, f: &RationalFunction) -> Result<RationalFunction> {
        let over_ambient = f.ctx().names() == self.ambient.names();
        if over_ambient {
            if let Some(inv) = &self.inverse {
                return Ok(f.substitute(inv, &self.cluster)?);
            }
        }
        if f.ctx().names() == self.cluster.names() {
            return Ok(f.clone());
        }
        if over_ambient {
            return Err(Error::Invalid("the seed has no coordinate map from ambient variables".into()));
        }
        Err(Error::Invalid(format!("{f} is over neither {} nor {}", self.cluster, self.ambient)))
    }
}
