//! Case documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use mutalg::charts::ChartSystemFile;
use mutalg::seeds::SeedFile;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    /// Stated outright in the source material.
    Stated,
    /// Obtained by a short hand computation from stated data.
    Derived,
    /// Follows from definitions alone.
    Trivial,
}

/// A ledger entry after a mutation sequence, bound to a name.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Binding {
    pub sequence: Vec<String>,
    pub vertex: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    /// Frozen vertices kept non-invertible.
    pub non_invertible: Vec<String>,
    pub expected: Vec<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Check {
    /// Ledger entry of `vertex` after `sequence`, in ambient variables.
    Ledger { sequence: Vec<String>, vertex: String, expected: String },
    /// `expr` over the ambient variables and the bound names.
    Identity { bindings: BTreeMap<String, Binding>, expr: String, expected: String },
    /// `(M⁺, M⁻)` in the seed's cluster variables.
    ExchangeMonomials { vertex: String, expected: [String; 2] },
    MaximalRank { expected: bool },
    Primitive { expected: bool },
    /// Every ledger entry after `sequence` is a Laurent polynomial.
    LaurentLedger { sequence: Vec<String>, expected: bool },
    /// After `sequence`, vertex `v` carries the initial ledger entry of
    /// `expected[v]`.
    LedgerPermutation { sequence: Vec<String>, expected: BTreeMap<String, String> },
    /// Number of distinct new variables produced along `sequence`.
    DistinctVariables { sequence: Vec<String>, expected: usize },
    /// Homogeneity of the exchange relations under the seed's grading.
    GradingCompatible { expected: bool },
    /// After graded mutation along `sequence`, every ledger entry is
    /// homogeneous of the tracked degree.
    GradedLedger { sequence: Vec<String>, expected: bool },
    ChartExpress { chart: String, expr: String, expected: String },
    Membership {
        expr: String,
        expected: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        failing_chart: Option<String>,
    },
    /// Membership must agree with both `expected` and the divisibility
    /// oracle of the two-point chart system.
    OracleWitness { expr: String, expected: bool },
    /// Random elements checked against the divisibility oracle.
    OracleRandom { cases: usize, prng_seed: u64 },
    UpperMembership { expr: String, non_invertible: Vec<String>, expected: bool },
    MembershipTable { witnesses: Vec<String>, rows: Vec<TableRow> },
    Nu { expected: Vec<Vec<i64>> },
    /// `(B; −ν·B)` entrywise, and optionally an explicit matrix.
    LiftedMatrix {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<Vec<Vec<i64>>>,
    },
    LiftedCompatible { expected: bool },
    /// Validation report of another case's presentation. `required` maps a
    /// check-name suffix to the status every chart must report for it;
    /// `SURROGATE` accepts either surrogate outcome.
    Validate {
        case: String,
        /// Overrides the case's own non-invertible set.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        non_invertible: Option<Vec<String>>,
        required: BTreeMap<String, String>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Assertion {
    #[serde(flatten)]
    pub check: Check,
    pub origin: Origin,
    /// Formula or table location the expected value was read from.
    pub anchor: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftFile {
    pub n: usize,
}

/// Parameters of the divisibility oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleFile {
    pub lambdas: [i64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusCase {
    pub id: String,
    pub description: String,
    #[serde(default)]
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<SeedFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charts: Option<ChartSystemFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleFile>,
    pub assertions: Vec<Assertion>,
}

impl Check {
    /// The `op` tag.
    pub fn op(&self) -> &'static str {
        match self {
            Check::Ledger { .. } => "ledger",
            Check::Identity { .. } => "identity",
            Check::ExchangeMonomials { .. } => "exchange_monomials",
            Check::MaximalRank { .. } => "maximal_rank",
            Check::Primitive { .. } => "primitive",
            Check::LaurentLedger { .. } => "laurent_ledger",
            Check::LedgerPermutation { .. } => "ledger_permutation",
            Check::DistinctVariables { .. } => "distinct_variables",
            Check::GradingCompatible { .. } => "grading_compatible",
            Check::GradedLedger { .. } => "graded_ledger",
            Check::ChartExpress { .. } => "chart_express",
            Check::Membership { .. } => "membership",
            Check::OracleWitness { .. } => "oracle_witness",
            Check::OracleRandom { .. } => "oracle_random",
            Check::UpperMembership { .. } => "upper_membership",
            Check::MembershipTable { .. } => "membership_table",
            Check::Nu { .. } => "nu",
            Check::LiftedMatrix { .. } => "lifted_matrix",
            Check::LiftedCompatible { .. } => "lifted_compatible",
            Check::Validate { .. } => "validate",
        }
    }
}

impl CorpusCase {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.id == tag || self.tags.iter().any(|t| t == tag)
    }
}
