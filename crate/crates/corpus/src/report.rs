//! Per-assertion records, text and line-delimited JSON output.

use std::fmt;

use serde::Serialize;

use crate::case::Origin;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Unchecked,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unchecked => "UNCHECKED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub case: String,
    pub index: usize,
    pub op: String,
    pub verdict: Verdict,
    pub origin: Origin,
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    /// Certificate or extra notes.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn merge(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// Orders records by case id, then assertion index.
    pub fn sort(&mut self) {
        self.records.sort_by(|a, b| (&a.case, a.index).cmp(&(&b.case, b.index)));
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == v).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Verdict::Fail) > 0
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failures())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!("{:<9} {}#{} {}", r.verdict.to_string(), r.case, r.index, r.op));
            match r.verdict {
                Verdict::Fail => {
                    out.push_str(&format!("\n    expected: {}\n    computed: {}", r.expected, r.computed));
                }
                _ => out.push_str(&format!(" = {}", r.computed)),
            }
            if !r.detail.is_empty() {
                out.push_str(&format!("\n    {}", r.detail));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} unchecked\n",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Unchecked)
        ));
        out
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize"))
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }
}
