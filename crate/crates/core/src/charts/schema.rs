//! JSON chart-system documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Chart, MsaPresentation};
use crate::arith::{parse_expr, VarContext};
use crate::error::{Error, Result};
use crate::lattice::{Cone, LatticeVector, MutationDatum};

pub type ConeRows = Vec<Vec<i64>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub u: Vec<i64>,
    /// Expression over the reference variables.
    pub g: String,
    #[serde(default = "one")]
    pub k: u32,
    #[serde(default)]
    pub declared_irreducible: bool,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vars: Vec<String>,
    #[serde(default)]
    pub cone: ConeRows,
    /// Rows are the chart coordinates' exponents in the reference lattice;
    /// identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub reference: ChartFile,
    #[serde(default)]
    pub charts: Vec<ChartFile>,
    #[serde(default)]
    pub height_one_declared: bool,
    /// Abbreviations usable in membership expressions, in order.
    #[serde(default)]
    pub definitions: BTreeMap<String, String>,
}

fn cone_from_rows(rank: usize, rows: &ConeRows) -> Result<Cone> {
    Cone::new(rank, rows.iter().map(|r| LatticeVector(r.clone())).collect())
}

impl ChartSystemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn from_value(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn build(&self) -> Result<MsaPresentation> {
        let rctx = VarContext::new(&self.reference.vars)?;
        let n = rctx.arity();
        if self.reference.datum.is_some() || self.reference.basis.is_some() {
            return Err(Error::Schema("the reference chart takes no datum or basis".into()));
        }
        let reference = Chart::reference(
            self.reference.name.clone().unwrap_or_else(|| "R0".into()),
            rctx.clone(),
            cone_from_rows(n, &self.reference.cone)?,
        )?;
        let mut others = Vec::new();
        for (i, c) in self.charts.iter().enumerate() {
            let name = c.name.clone().unwrap_or_else(|| format!("R{}", i + 1));
            let d = c.datum.as_ref().ok_or_else(|| Error::Schema(format!("chart {name} has no datum")))?;
            let g = parse_expr(&d.g, &rctx)?
                .to_laurent()
                .ok_or_else(|| Error::Schema(format!("datum g of chart {name} is not a Laurent polynomial")))?;
            let datum = MutationDatum::new(LatticeVector(d.u.clone()), g, d.k, d.declared_irreducible)?;
            let ctx = VarContext::new(&c.vars)?;
            let basis = c.basis.clone().unwrap_or_else(|| crate::linalg::identity(n));
            others.push(Chart::from_datum(name, ctx, cone_from_rows(n, &c.cone)?, basis, datum)?);
        }
        let mut p = MsaPresentation::new(reference, others, self.height_one_declared)?;
        for (name, expr) in &self.definitions {
            let f = p.parse(expr)?;
            p.definitions.push((name.clone(), f));
        }
        Ok(p)
    }
}
