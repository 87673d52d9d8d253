//! JSON seed documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::matrix::{quiver_to_matrix, ExchangeMatrix, Quiver};
use super::seed::Seed;
use crate::arith::{is_identifier, parse_expr, RationalFunction, VarContext};
use crate::error::{Error, Result};
use crate::graded::Grading;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingFile {
    pub rank: usize,
    pub degrees: BTreeMap<String, Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeFile {
    #[serde(default)]
    pub non_invertible: Vec<String>,
}

/// On-disk form of a seed.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub frozen: Vec<String>,
    /// Either `|I| × |I_uf|` or a full `|I| × |I|` matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    /// Arrows `[source, target, multiplicity]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<Vec<(String, String, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ledger: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<String>>,
    /// Ambient variables as expressions in the vertex variables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeFile>,
}

/// A loaded seed with its optional grading and non-invertible frozen set.
#[derive(Debug, Clone)]
pub struct SeedDocument {
    pub seed: Seed,
    pub grading: Option<Grading>,
    pub non_invertible: Vec<usize>,
}

impl SeedDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SeedFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn from_value(v: &serde_json::Value) -> Result<Self> {
        let file: SeedFile = serde_json::from_value(v.clone()).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn from_file(f: &SeedFile) -> Result<Self> {
        let n = f.vertices.len();
        let index = |name: &str| -> Result<usize> {
            f.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut frozen = vec![false; n];
        for name in &f.frozen {
            frozen[index(name)?] = true;
        }
        let mutable: Vec<usize> = (0..n).filter(|&i| !frozen[i]).collect();
        let matrix = match (&f.matrix, &f.quiver) {
            (Some(_), Some(_)) => return Err(Error::Schema("give either \"matrix\" or \"quiver\", not both".into())),
            (None, None) => return Err(Error::Schema("missing \"matrix\" or \"quiver\"".into())),
            (Some(m), None) => {
                if m.len() != n {
                    return Err(Error::Schema(format!("matrix has {} rows for {n} vertices", m.len())));
                }
                if m.iter().all(|r| r.len() == n) && mutable.len() != n {
                    ExchangeMatrix::from_square(m, mutable)?
                } else {
                    ExchangeMatrix::new(m.clone(), mutable)?
                }
            }
            (None, Some(arrows)) => {
                let arrows = arrows
                    .iter()
                    .map(|(s, t, m)| Ok((index(s)?, index(t)?, *m)))
                    .collect::<Result<Vec<_>>>()?;
                quiver_to_matrix(&Quiver { vertices: f.vertices.clone(), frozen: frozen.clone(), arrows })?
            }
        };
        let mut seed = Seed::new(f.vertices.clone(), matrix)?;

        if let Some(ledger) = &f.ledger {
            for k in ledger.keys() {
                index(k)?;
            }
            let ambient_names = match &f.ambient {
                Some(a) => a.clone(),
                None => infer_ambient(&f.vertices, ledger),
            };
            let ambient = VarContext::new(&ambient_names)?;
            let entries = f
                .vertices
                .iter()
                .map(|v| match ledger.get(v) {
                    Some(e) => parse_expr(e, &ambient).map_err(Error::from),
                    None => Err(Error::Schema(format!("ledger has no entry for vertex '{v}'"))),
                })
                .collect::<Result<Vec<RationalFunction>>>()?;
            let inverse = match &f.coordinates {
                None => None,
                Some(coords) => Some(
                    ambient_names
                        .iter()
                        .map(|a| match coords.get(a) {
                            Some(e) => parse_expr(e, seed.cluster_ctx()).map_err(Error::from),
                            None => Err(Error::Schema(format!("coordinates have no entry for '{a}'"))),
                        })
                        .collect::<Result<Vec<_>>>()?,
                ),
            };
            seed = seed.with_ledger(ambient, entries, inverse)?;
        } else if f.coordinates.is_some() || f.ambient.is_some() {
            return Err(Error::Schema("\"coordinates\" and \"ambient\" require a \"ledger\"".into()));
        }

        let grading = match &f.grading {
            None => None,
            Some(g) => {
                if g.torsion.is_some() {
                    return Err(Error::Schema(
                        "torsion in the grading group is not supported; only free groups Z^r".into(),
                    ));
                }
                Some(Grading::new(g.rank, g.degrees.clone())?)
            }
        };

        let mut non_invertible = Vec::new();
        if let Some(c) = &f.cone {
            for name in &c.non_invertible {
                let i = index(name)?;
                if !frozen[i] {
                    return Err(Error::Schema(format!("non-invertible vertex '{name}' is not frozen")));
                }
                non_invertible.push(i);
            }
            non_invertible.sort_unstable();
            non_invertible.dedup();
        }
        Ok(SeedDocument { seed, grading, non_invertible })
    }
}

/// Identifiers of the ledger expressions in first-appearance order, taking
/// vertices in order.
fn infer_ambient(vertices: &[String], ledger: &BTreeMap<String, String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for v in vertices {
        let Some(expr) = ledger.get(v) else { continue };
        let mut cur = String::new();
        for c in expr.chars().chain(std::iter::once(' ')) {
            if c.is_ascii_alphanumeric() || c == '_' {
                cur.push(c);
            } else {
                if is_identifier(&cur) && !out.contains(&cur) {
                    out.push(cur.clone());
                }
                cur.clear();
            }
        }
    }
    out
}
