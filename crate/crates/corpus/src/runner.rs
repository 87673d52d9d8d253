//! Evaluation of case assertions.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mutalg::arith::{parse_expr, parse_laurent, RationalFunction};
use mutalg::charts::{chart_express, msa_membership, upper_membership, upper_presentation, validate_presentation, MsaPresentation};
use mutalg::graded::{grading_is_compatible, mutate_graded, rf_degree};
use mutalg::lifting::{build_base_seed, lifted_seed, nu_matrix, BlowupConfig};
use mutalg::report::CheckStatus;
use mutalg::seeds::{exchange_binomials, Seed, SeedDocument};
use mutalg::{Error, Result};

use crate::case::{Assertion, Binding, Check, CorpusCase};
use crate::oracle::DivisibilityOracle;
use crate::report::{Record, Report, Verdict};
use crate::Corpus;

/// Documents of a case, built once per run.
struct Loaded {
    doc: Option<SeedDocument>,
    presentation: Option<MsaPresentation>,
    oracle: Option<DivisibilityOracle>,
    lift: Option<BlowupConfig>,
}

impl Loaded {
    fn new(case: &CorpusCase) -> Result<Self> {
        Ok(Loaded {
            doc: case.seed.as_ref().map(SeedDocument::from_file).transpose()?,
            presentation: case.charts.as_ref().map(|c| c.build()).transpose()?,
            oracle: case.oracle.as_ref().map(|o| DivisibilityOracle::new(o.lambdas)).transpose()?,
            lift: case.lift.as_ref().map(|l| BlowupConfig::new(l.n)).transpose()?,
        })
    }

    fn doc(&self) -> Result<&SeedDocument> {
        self.doc.as_ref().ok_or_else(|| Error::Invalid("case has no seed".into()))
    }

    fn seed(&self) -> Result<&Seed> {
        Ok(&self.doc()?.seed)
    }

    fn presentation(&self) -> Result<&MsaPresentation> {
        self.presentation.as_ref().ok_or_else(|| Error::Invalid("case has no chart system".into()))
    }

    fn oracle(&self) -> Result<&DivisibilityOracle> {
        self.oracle.as_ref().ok_or_else(|| Error::Invalid("case has no oracle parameters".into()))
    }

    fn lift(&self) -> Result<&BlowupConfig> {
        self.lift.as_ref().ok_or_else(|| Error::Invalid("case has no lift parameters".into()))
    }
}

struct Outcome {
    verdict: Verdict,
    expected: String,
    computed: String,
    detail: String,
}

fn outcome(ok: bool, expected: impl ToString, computed: impl ToString) -> Outcome {
    Outcome {
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        expected: expected.to_string(),
        computed: computed.to_string(),
        detail: String::new(),
    }
}

impl Outcome {
    fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

fn resolve_sequence(s: &Seed, seq: &[String]) -> Result<Vec<usize>> {
    seq.iter().map(|t| s.resolve_vertex(t)).collect()
}

fn resolve_all(s: &Seed, names: &[String]) -> Result<Vec<usize>> {
    let mut v: Vec<usize> = names.iter().map(|t| s.resolve_vertex(t)).collect::<Result<_>>()?;
    v.sort_unstable();
    Ok(v)
}

fn ledger_after(s: &Seed, b: &Binding) -> Result<RationalFunction> {
    let t = s.mutate_sequence(&resolve_sequence(s, &b.sequence)?)?;
    Ok(t.ledger_of(s.resolve_vertex(&b.vertex)?).clone())
}

fn show_bools(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn show_matrix(m: &[Vec<i64>]) -> String {
    format!("{m:?}")
}

fn status_matches(required: &str, got: CheckStatus) -> bool {
    match required {
        "SURROGATE" => matches!(got, CheckStatus::SurrogatePass | CheckStatus::SurrogateFail),
        other => got.to_string() == other,
    }
}

fn evaluate(corpus: &Corpus, l: &Loaded, check: &Check) -> Result<Outcome> {
    Ok(match check {
        Check::Ledger { sequence, vertex, expected } => {
            let s = l.seed()?;
            let got = ledger_after(s, &Binding { sequence: sequence.clone(), vertex: vertex.clone() })?;
            let want = parse_expr(expected, s.ambient_ctx())?;
            outcome(got == want, expected, &got)
        }
        Check::Identity { bindings, expr, expected } => {
            let s = l.seed()?;
            let ambient = s.ambient_ctx();
            let names: Vec<&str> = bindings.keys().map(String::as_str).collect();
            let ext = ambient.extended(&names)?;
            let mut images: Vec<RationalFunction> =
                (0..ambient.arity()).map(|i| RationalFunction::var(ambient, i)).collect();
            let mut detail = Vec::new();
            for (name, b) in bindings {
                let v = ledger_after(s, b)?;
                detail.push(format!("{name} = {v}"));
                images.push(v);
            }
            let got = parse_expr(expr, &ext)?.substitute(&images, ambient)?;
            let want = parse_expr(expected, ambient)?;
            outcome(got == want, expected, &got).with_detail(detail.join("; "))
        }
        Check::ExchangeMonomials { vertex, expected } => {
            let s = l.seed()?;
            let (p, m) = exchange_binomials(s, s.resolve_vertex(vertex)?)?;
            let ctx = s.cluster_ctx();
            let ok = p == parse_laurent(&expected[0], ctx)? && m == parse_laurent(&expected[1], ctx)?;
            outcome(ok, format!("[{}, {}]", expected[0], expected[1]), format!("[{p}, {m}]"))
        }
        Check::MaximalRank { expected } => {
            let got = l.seed()?.is_maximal_rank();
            outcome(got == *expected, expected, got)
        }
        Check::Primitive { expected } => {
            let got = l.seed()?.is_primitive();
            outcome(got == *expected, expected, got)
        }
        Check::LaurentLedger { sequence, expected } => {
            let s = l.seed()?;
            let t = s.mutate_sequence(&resolve_sequence(s, sequence)?)?;
            let mut bad = None;
            for (i, f) in t.ledger().iter().enumerate() {
                let g = s.to_cluster(f)?;
                if !g.is_laurent() {
                    bad = Some(format!("{}: {g}", t.vertices()[i]));
                    break;
                }
            }
            let got = bad.is_none();
            outcome(got == *expected, expected, got).with_detail(bad.unwrap_or_default())
        }
        Check::LedgerPermutation { sequence, expected } => {
            let s = l.seed()?;
            let t = s.mutate_sequence(&resolve_sequence(s, sequence)?)?;
            let mut pairs = Vec::new();
            for (v, w) in expected {
                pairs.push((s.resolve_vertex(v)?, s.resolve_vertex(w)?));
            }
            // which initial vertex, if any, each listed vertex now carries
            let carried: BTreeMap<String, String> = pairs
                .iter()
                .map(|&(v, _)| {
                    let src = (0..s.num_vertices())
                        .find(|&j| s.ledger_of(j) == t.ledger_of(v))
                        .map(|j| s.vertices()[j].clone())
                        .unwrap_or_else(|| "new".into());
                    (s.vertices()[v].clone(), src)
                })
                .collect();
            let ledger_ok = pairs.iter().all(|&(v, w)| t.ledger_of(v) == s.ledger_of(w));
            let matrix_ok = pairs.iter().all(|&(v, w)| {
                pairs
                    .iter()
                    .filter(|&&(v2, w2)| t.is_mutable(v2) && s.is_mutable(w2))
                    .all(|&(v2, w2)| t.matrix().get(v, v2) == s.matrix().get(w, w2))
            });
            outcome(ledger_ok && matrix_ok, format!("{expected:?}"), format!("{carried:?}"))
                .with_detail(if matrix_ok { "" } else { "exchange matrix is not the permuted initial one" })
        }
        Check::DistinctVariables { sequence, expected } => {
            let s = l.seed()?;
            let mut t = s.clone();
            let mut seen: Vec<RationalFunction> = Vec::new();
            for k in resolve_sequence(s, sequence)? {
                t = t.mutate(k)?;
                let f = t.ledger_of(k).clone();
                if !seen.contains(&f) {
                    seen.push(f);
                }
            }
            let shown: Vec<String> = seen.iter().map(|f| f.to_string()).collect();
            outcome(seen.len() == *expected, expected, seen.len()).with_detail(shown.join(", "))
        }
        Check::GradingCompatible { expected } => {
            let doc = l.doc()?;
            let g = doc.grading.as_ref().ok_or_else(|| Error::Invalid("seed has no grading".into()))?;
            let rep = grading_is_compatible(&doc.seed, g)?;
            let detail = rep
                .vertices
                .iter()
                .map(|v| format!("{}: {:?} vs {:?}", v.vertex, v.plus_degree, v.minus_degree))
                .collect::<Vec<_>>()
                .join("; ");
            outcome(rep.compatible == *expected, expected, rep.compatible).with_detail(detail)
        }
        Check::GradedLedger { sequence, expected } => {
            let doc = l.doc()?;
            let s = &doc.seed;
            let g = doc.grading.as_ref().ok_or_else(|| Error::Invalid("seed has no grading".into()))?;
            let (mut t, mut h) = (s.clone(), g.clone());
            for k in resolve_sequence(s, sequence)? {
                (t, h) = mutate_graded(&t, &h, k)?;
            }
            let mut bad = None;
            for (i, f) in t.ledger().iter().enumerate() {
                let d = rf_degree(&s.to_cluster(f)?, g)?;
                let tracked = h.degree(&t.var_names()[i]).map(<[i64]>::to_vec);
                if tracked.as_ref() != Some(&d) {
                    bad = Some(format!("{}: degree {d:?}, tracked {tracked:?}", t.vertices()[i]));
                    break;
                }
            }
            let got = bad.is_none();
            outcome(got == *expected, expected, got).with_detail(bad.unwrap_or_default())
        }
        Check::ChartExpress { chart, expr, expected } => {
            let p = l.presentation()?;
            let i = p
                .charts()
                .iter()
                .position(|c| &c.name == chart)
                .ok_or_else(|| Error::Invalid(format!("no chart named {chart}")))?;
            let got = chart_express(p, i, &p.parse(expr)?)?;
            let want = parse_expr(expected, p.chart(i)?.ctx())?;
            outcome(got == want, expected, &got)
        }
        Check::Membership { expr, expected, failing_chart } => {
            let p = l.presentation()?;
            let v = msa_membership(p, &p.parse(expr)?)?;
            let failing = v.failing_chart().map(|c| c.chart.clone());
            let ok = v.member == *expected && (failing_chart.is_none() || failing_chart == &failing);
            let show = |m: bool, f: &Option<String>| match f {
                Some(c) => format!("{m} (fails on {c})"),
                None => m.to_string(),
            };
            let certs = v.charts.iter().map(|c| format!("{}: {}", c.chart, c.certificate)).collect::<Vec<_>>();
            outcome(ok, show(*expected, failing_chart), show(v.member, &failing)).with_detail(certs.join("; "))
        }
        Check::OracleWitness { expr, expected } => {
            let p = l.presentation()?;
            let f = p.parse(expr)?;
            let member = msa_membership(p, &f)?.member;
            let oracle = match f.to_laurent() {
                Some(lp) => l.oracle()?.member(&lp)?,
                None => false,
            };
            let ok = member == *expected && oracle == *expected;
            outcome(ok, expected, format!("membership {member}, oracle {oracle}"))
        }
        Check::OracleRandom { cases, prng_seed } => {
            let p = l.presentation()?;
            let o = l.oracle()?;
            let mut rng = ChaCha8Rng::seed_from_u64(*prng_seed);
            let (mut agree, mut members) = (0, 0);
            let mut first_bad = None;
            for _ in 0..*cases {
                let f = o.random_element(&mut rng, p.reference_ctx());
                let want = o.member(&f)?;
                let got = msa_membership(p, &RationalFunction::from_laurent(&f))?.member;
                members += usize::from(want);
                if got == want {
                    agree += 1;
                } else if first_bad.is_none() {
                    first_bad = Some(format!("{f}: membership {got}, oracle {want}"));
                }
            }
            outcome(agree == *cases, format!("{cases}/{cases} agree"), format!("{agree}/{cases} agree"))
                .with_detail(first_bad.unwrap_or_else(|| format!("{members} members, {} non-members", cases - members)))
        }
        Check::UpperMembership { expr, non_invertible, expected } => {
            let s = l.seed()?;
            let f = parse_expr(expr, s.ambient_ctx())?;
            let v = upper_membership(s, &f, &resolve_all(s, non_invertible)?)?;
            let failing = v.failing_chart().map(|c| format!("{}: {}", c.chart, c.certificate)).unwrap_or_default();
            outcome(v.member == *expected, expected, v.member).with_detail(failing)
        }
        Check::MembershipTable { witnesses, rows } => {
            let s = l.seed()?;
            let fs = witnesses.iter().map(|w| parse_expr(w, s.ambient_ctx())).collect::<std::result::Result<Vec<_>, _>>()?;
            let mut got_rows = Vec::new();
            let mut want_rows = Vec::new();
            for row in rows {
                let ni = resolve_all(s, &row.non_invertible)?;
                let got = fs.iter().map(|f| Ok(upper_membership(s, f, &ni)?.member)).collect::<Result<Vec<bool>>>()?;
                got_rows.push(format!("{:?}: {}", row.non_invertible, show_bools(&got)));
                want_rows.push(format!("{:?}: {}", row.non_invertible, show_bools(&row.expected)));
            }
            outcome(got_rows == want_rows, want_rows.join(" | "), got_rows.join(" | "))
                .with_detail(format!("columns: {}", witnesses.join(", ")))
        }
        Check::Nu { expected } => {
            let nu = nu_matrix(l.lift()?)?;
            outcome(&nu == expected, show_matrix(expected), show_matrix(&nu))
        }
        Check::LiftedMatrix { expected } => {
            let cfg = l.lift()?;
            let b = build_base_seed(cfg.n)?.matrix().entries().clone();
            let nu = nu_matrix(cfg)?;
            let mut block = b.clone();
            for row in &nu {
                block.push(
                    (0..b[0].len()).map(|c| -row.iter().zip(&b).map(|(v, brow)| v * brow[c]).sum::<i64>()).collect(),
                );
            }
            let got = lifted_seed(cfg)?.lifted_matrix;
            let ok = got == block && expected.as_ref().map_or(true, |e| e == &got);
            outcome(ok, show_matrix(expected.as_ref().unwrap_or(&block)), show_matrix(&got))
        }
        Check::LiftedCompatible { expected } => {
            let cfg = l.lift()?;
            let (got, detail) = match lifted_seed(cfg) {
                Ok(ls) => {
                    let mut ok = grading_is_compatible(&ls.seed, &ls.grading)?.compatible;
                    for &k in ls.seed.mutable_vertices() {
                        let (t, h) = mutate_graded(&ls.seed, &ls.grading, k)?;
                        ok &= grading_is_compatible(&t, &h)?.compatible;
                    }
                    (ok, "initial seed and every single mutation".to_string())
                }
                Err(Error::NotCompatible { vertex, detail }) => (false, format!("{vertex}: {detail}")),
                Err(e) => return Err(e),
            };
            outcome(got == *expected, expected, got).with_detail(detail)
        }
        Check::Validate { case, non_invertible, required } => {
            let target = corpus.case(case)?;
            let tl = Loaded::new(target)?;
            let p = match (&tl.presentation, &tl.doc) {
                (Some(p), _) => p.clone(),
                (None, Some(doc)) => {
                    let ni = match non_invertible {
                        Some(names) => resolve_all(&doc.seed, names)?,
                        None => doc.non_invertible.clone(),
                    };
                    upper_presentation(&doc.seed, &ni)?
                }
                (None, None) => return Err(Error::Invalid(format!("case {case} has no presentation"))),
            };
            let rep = validate_presentation(&p);
            let mut problems = Vec::new();
            for (suffix, want) in required {
                let hits: Vec<_> = rep.checks.iter().filter(|c| c.name.ends_with(suffix.as_str())).collect();
                if hits.is_empty() {
                    problems.push(format!("{suffix}: not reported"));
                }
                for c in hits {
                    if !status_matches(want, c.status) {
                        problems.push(format!("{}: {}", c.name, c.status));
                    }
                }
            }
            let expected: Vec<String> = required.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            let unchecked: Vec<&str> =
                rep.checks.iter().filter(|c| c.status == CheckStatus::Unchecked).map(|c| c.name.as_str()).collect();
            let verdict = if !problems.is_empty() {
                Verdict::Fail
            } else if !unchecked.is_empty() {
                Verdict::Unchecked
            } else {
                Verdict::Pass
            };
            let computed = if problems.is_empty() { "all required statuses".to_string() } else { problems.join("; ") };
            let surrogate: Vec<String> = rep
                .checks
                .iter()
                .filter(|c| matches!(c.status, CheckStatus::SurrogatePass | CheckStatus::SurrogateFail))
                .map(|c| format!("{}: {}", c.name, c.status))
                .collect();
            let mut detail = surrogate;
            if !unchecked.is_empty() {
                detail.push(format!("not decided: {}", unchecked.join(", ")));
            }
            Outcome { verdict, expected: expected.join("; "), computed, detail: detail.join("; ") }
        }
    })
}

fn record(case: &CorpusCase, index: usize, a: &Assertion, o: Outcome) -> Record {
    Record {
        case: case.id.clone(),
        index,
        op: a.check.op().to_string(),
        verdict: o.verdict,
        origin: a.origin,
        anchor: a.anchor.clone(),
        expected: o.expected,
        computed: o.computed,
        detail: o.detail,
    }
}

/// Runs every assertion of `case`. Errors become FAIL records.
pub fn run_loaded_case(corpus: &Corpus, case: &CorpusCase) -> Report {
    let loaded = Loaded::new(case);
    let records = case
        .assertions
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let o = match &loaded {
                Ok(l) => evaluate(corpus, l, &a.check),
                Err(e) => Err(Error::Invalid(format!("case failed to load: {e}"))),
            };
            let o = o.unwrap_or_else(|e| Outcome {
                verdict: Verdict::Fail,
                expected: "no error".into(),
                computed: format!("error: {e}"),
                detail: String::new(),
            });
            record(case, i, a, o)
        })
        .collect();
    Report { records }
}
