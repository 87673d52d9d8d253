//! Worked examples as machine-readable cases, and the runners that
//! recompute every assertion.

pub mod case;
pub mod oracle;
pub mod properties;
pub mod report;
pub mod runner;

use std::collections::BTreeSet;
use std::path::Path;

use mutalg::{Error, Result};

pub use case::{Assertion, Check, CorpusCase, Origin};
pub use report::{Record, Report, Verdict};

/// Overrides the embedded cases with the `*.json` files of a directory.
pub const CORPUS_DIR_VAR: &str = "MUTALG_CORPUS_DIR";

const EMBEDDED: &[(&str, &str)] = &[
    ("cubic_ix", include_str!("../data/cubic_ix.json")),
    ("cubic_viii", include_str!("../data/cubic_viii.json")),
    ("two_point", include_str!("../data/two_point.json")),
    ("lifting_p2", include_str!("../data/lifting_p2.json")),
    ("lifting_p3", include_str!("../data/lifting_p3.json")),
    ("lifting_p4", include_str!("../data/lifting_p4.json")),
    ("lifting_p5", include_str!("../data/lifting_p5.json")),
    ("msa_validation", include_str!("../data/msa_validation.json")),
    ("rank2_1_1", include_str!("../data/rank2_1_1.json")),
    ("rank2_2_1", include_str!("../data/rank2_2_1.json")),
    ("rank2_2_3", include_str!("../data/rank2_2_3.json")),
    ("rank2_a2_pentagon", include_str!("../data/rank2_a2_pentagon.json")),
    ("schubert_intersections", include_str!("../data/schubert_intersections.json")),
    ("sl3", include_str!("../data/sl3.json")),
    ("sl4", include_str!("../data/sl4.json")),
];

#[derive(Debug, Clone)]
pub struct Corpus {
    /// Sorted by id.
    cases: Vec<CorpusCase>,
}

impl Corpus {
    pub fn from_cases(mut cases: Vec<CorpusCase>) -> Result<Self> {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let mut ids = BTreeSet::new();
        for c in &cases {
            if !ids.insert(c.id.as_str()) {
                return Err(Error::Schema(format!("duplicate case id '{}'", c.id)));
            }
            for (i, a) in c.assertions.iter().enumerate() {
                if a.anchor.trim().is_empty() {
                    return Err(Error::Schema(format!("{}#{i} has no anchor", c.id)));
                }
            }
            if let Some(o) = &c.oracle {
                oracle::DivisibilityOracle::new(o.lambdas)?;
            }
        }
        Ok(Corpus { cases })
    }

    pub fn parse_case(text: &str) -> Result<CorpusCase> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn embedded() -> Result<Self> {
        let cases = EMBEDDED
            .iter()
            .map(|(name, text)| Self::parse_case(text).map_err(|e| Error::Schema(format!("{name}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_cases(cases)
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        let io = |e: std::io::Error| Error::Invalid(format!("{}: {e}", dir.display()));
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let cases = paths
            .iter()
            .map(|p| {
                let text = std::fs::read_to_string(p).map_err(io)?;
                Self::parse_case(&text).map_err(|e| Error::Schema(format!("{}: {e}", p.display())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_cases(cases)
    }

    /// The directory named by `MUTALG_CORPUS_DIR` if set, else the
    /// embedded cases.
    pub fn load() -> Result<Self> {
        match std::env::var_os(CORPUS_DIR_VAR) {
            Some(dir) if !dir.is_empty() => Self::from_dir(Path::new(&dir)),
            _ => Self::embedded(),
        }
    }

    pub fn cases(&self) -> &[CorpusCase] {
        &self.cases
    }

    pub fn ids(&self) -> Vec<&str> {
        self.cases.iter().map(|c| c.id.as_str()).collect()
    }

    pub fn case(&self, id: &str) -> Result<&CorpusCase> {
        self.cases.iter().find(|c| c.id == id).ok_or_else(|| Error::Invalid(format!("unknown case '{id}'")))
    }

    pub fn run_case(&self, id: &str) -> Result<Report> {
        Ok(runner::run_loaded_case(self, self.case(id)?))
    }

    /// Case ids selected by a tag (or id); all cases without a filter.
    pub fn select(&self, filter: Option<&str>) -> Vec<&str> {
        self.cases.iter().filter(|c| filter.map_or(true, |t| c.has_tag(t))).map(|c| c.id.as_str()).collect()
    }

    pub fn run_all(&self, filter: Option<&str>) -> Report {
        let mut report = Report::default();
        for id in self.select(filter) {
            report.merge(self.run_case(id).expect("selected ids exist"));
        }
        report.sort();
        report
    }
}
