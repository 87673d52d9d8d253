//! The `mutalg` command line.
//!
//! Exit status: 0 for success or membership, 1 for a verified negative
//! answer, 2 for usage, parse and validation errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use mutalg::charts::{msa_membership, upper_membership, upper_presentation, validate_presentation, ChartSystemFile, MsaPresentation};
use mutalg::graded::{grading_is_compatible, mutate_graded};
use mutalg::lifting::{divisor_vertex_name, lifted_seed, BlowupConfig};
use mutalg::seeds::{Seed, SeedDocument};
use mutalg_corpus::properties::{self, DEFAULT_PRNG_SEED};
use mutalg_corpus::{Corpus, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON record per line.
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "mutalg", version, about = "Exact seed mutation, chart membership, graded seeds and monomial lifts")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for independent cases or queries.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mutate a seed along a comma-separated sequence of vertices.
    Mutate {
        seed: PathBuf,
        #[arg(long, default_value = "")]
        sequence: String,
    },
    /// Membership in a chart system, or with --upper in an upper cluster algebra.
    Member {
        charts: Option<PathBuf>,
        #[arg(long = "expr", required = true)]
        exprs: Vec<String>,
        #[arg(long)]
        upper: Option<PathBuf>,
        /// Frozen vertices to invert although the seed lists them as non-invertible.
        #[arg(long, value_delimiter = ',')]
        frozen_invertible: Vec<String>,
    },
    /// Membership in the upper cluster algebra of a seed.
    UpperMember {
        seed: PathBuf,
        #[arg(long = "expr", required = true)]
        exprs: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        frozen_invertible: Vec<String>,
        /// Replaces the seed's own non-invertible set.
        #[arg(long, value_delimiter = ',')]
        non_invertible: Option<Vec<String>>,
    },
    /// Minimal monomial lift for the blow-up of P^n in n+2 points.
    Lift {
        #[arg(long)]
        n: usize,
    },
    /// Grading compatibility, optionally after graded mutations.
    GradeCheck {
        seed: PathBuf,
        #[arg(long, default_value = "")]
        sequence: String,
    },
    /// Validation report of a chart system, or of the presentation of a seed.
    Validate {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        non_invertible: Option<Vec<String>>,
    },
    /// Run corpus cases: `all`, a case id or a tag.
    Verify {
        #[arg(default_value = "all")]
        target: String,
        /// Also run the seeded property suites.
        #[arg(long)]
        properties: bool,
        #[arg(long, default_value_t = DEFAULT_PRNG_SEED)]
        prng_seed: u64,
    },
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Ctx<'a> {
    format: Format,
    pool: rayon::ThreadPool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> CliResult<()> {
        writeln!(self.out, "{}", s.as_ref())?;
        Ok(())
    }

    fn record(&mut self, v: &Value) -> CliResult<()> {
        self.line(serde_json::to_string(v)?)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs as usize).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let mut ctx = Ctx { format: cli.format, pool, out };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> CliResult<i32> {
    match command {
        Command::Mutate { seed, sequence } => cmd_mutate(ctx, &seed, &sequence),
        Command::Member { charts, exprs, upper, frozen_invertible } => match (charts, upper) {
            (Some(c), None) => {
                if !frozen_invertible.is_empty() {
                    return Err(CliError("--frozen-invertible applies to --upper only".into()));
                }
                cmd_member(ctx, &c, &exprs)
            }
            (None, Some(s)) => cmd_upper_member(ctx, &s, &exprs, &frozen_invertible, None),
            (Some(_), Some(_)) => Err(CliError("give a chart file or --upper, not both".into())),
            (None, None) => Err(CliError("give a chart file or --upper SEED".into())),
        },
        Command::UpperMember { seed, exprs, frozen_invertible, non_invertible } => {
            cmd_upper_member(ctx, &seed, &exprs, &frozen_invertible, non_invertible.as_deref())
        }
        Command::Lift { n } => cmd_lift(ctx, n),
        Command::GradeCheck { seed, sequence } => cmd_grade_check(ctx, &seed, &sequence),
        Command::Validate { file, non_invertible } => cmd_validate(ctx, &file, non_invertible.as_deref()),
        Command::Verify { target, properties, prng_seed } => cmd_verify(ctx, &target, properties, prng_seed),
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

/// A corpus case document contributes its embedded `field`.
fn unwrap_case(v: Value, field: &str) -> Value {
    match v {
        Value::Object(mut m) if m.contains_key("assertions") => m.remove(field).unwrap_or(Value::Null),
        other => other,
    }
}

fn load_seed(path: &Path) -> CliResult<SeedDocument> {
    let v = unwrap_case(read_json(path)?, "seed");
    Ok(SeedDocument::from_value(&v).map_err(|e| CliError(format!("{}: {e}", path.display())))?)
}

fn is_chart_system(v: &Value) -> bool {
    v.get("reference").is_some() || v.get("charts").is_some_and(Value::is_object)
}

fn load_charts(path: &Path) -> CliResult<MsaPresentation> {
    let v = unwrap_case(read_json(path)?, "charts");
    let file = ChartSystemFile::from_value(&v).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok(file.build()?)
}

/// Resolves each step against the seed reached so far, so a step may also
/// name a mutated variable such as `x2_1`.
fn parse_sequence(s: &Seed, text: &str) -> CliResult<Vec<usize>> {
    let mut current = s.clone();
    let mut ks = Vec::new();
    for t in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let k = match current.resolve_vertex(t) {
            Ok(k) => k,
            Err(e) => current.var_names().iter().position(|v| v == t).ok_or(e)?,
        };
        current = current.mutate(k)?;
        ks.push(k);
    }
    Ok(ks)
}

fn resolve_names(s: &Seed, names: &[String]) -> CliResult<Vec<usize>> {
    names.iter().map(|t| Ok(s.resolve_vertex(t)?)).collect()
}

/// Right-aligned integer matrix with row and column labels.
pub fn format_matrix(rows: &[String], cols: &[String], m: &[Vec<i64>]) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(i64::to_string).collect()).collect();
    let label_w = rows.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols.len())
        .map(|j| cells.iter().map(|r| r[j].len()).chain(std::iter::once(cols[j].len())).max().unwrap_or(1))
        .collect();
    let mut out = format!("{:label_w$}", "");
    for (c, w) in cols.iter().zip(&widths) {
        out.push_str(&format!("  {c:>w$}"));
    }
    for (label, r) in rows.iter().zip(&cells) {
        out.push_str(&format!("\n{label:<label_w$}"));
        for (c, w) in r.iter().zip(&widths) {
            out.push_str(&format!("  {c:>w$}"));
        }
    }
    out
}

fn mutable_names(s: &Seed) -> Vec<String> {
    s.mutable_vertices().iter().map(|&k| s.vertices()[k].clone()).collect()
}

fn cmd_mutate(ctx: &mut Ctx, path: &Path, sequence: &str) -> CliResult<i32> {
    let doc = load_seed(path)?;
    let s = doc.seed;
    let ks = parse_sequence(&s, sequence)?;
    let t = s.mutate_sequence(&ks)?;
    let ledger: Vec<(String, String)> =
        t.vertices().iter().zip(t.ledger()).map(|(v, f)| (v.clone(), f.to_string())).collect();
    match ctx.format {
        Format::Text => {
            ctx.line(format!("sequence: {}", ks.iter().map(|&k| s.vertices()[k].as_str()).collect::<Vec<_>>().join(",")))?;
            ctx.line(format!("cluster: {}", t.var_names().join(" ")))?;
            ctx.line("matrix:")?;
            ctx.line(format_matrix(t.vertices(), &mutable_names(&t), t.matrix().entries()))?;
            ctx.line("ledger:")?;
            for (v, f) in &ledger {
                ctx.line(format!("  {v} = {f}"))?;
            }
        }
        Format::Machine => {
            let rec = json!({
                "command": "mutate",
                "sequence": ks.iter().map(|&k| &s.vertices()[k]).collect::<Vec<_>>(),
                "vertices": t.vertices(),
                "mutable": mutable_names(&t),
                "cluster": t.var_names(),
                "matrix": t.matrix().entries(),
                "ledger": ledger.iter().map(|(v, f)| json!({"vertex": v, "value": f})).collect::<Vec<_>>(),
            });
            ctx.record(&rec)?;
        }
    }
    Ok(EXIT_OK)
}

struct Answer {
    expr: String,
    member: bool,
    failing: Option<(String, String)>,
    certificates: Vec<(String, String)>,
}

fn answer_from(expr: &str, v: mutalg::charts::MsaVerdict) -> Answer {
    Answer {
        expr: expr.to_string(),
        member: v.member,
        failing: v.failing_chart().map(|c| (c.chart.clone(), c.certificate.clone())),
        certificates: v.charts.iter().map(|c| (c.chart.clone(), c.certificate.clone())).collect(),
    }
}

fn report_answers(ctx: &mut Ctx, answers: Vec<CliResult<Answer>>) -> CliResult<i32> {
    let mut code = EXIT_OK;
    for a in answers {
        let a = a?;
        match ctx.format {
            Format::Text => {
                match &a.failing {
                    None => ctx.line(format!("{}: member", a.expr))?,
                    Some((chart, cert)) => ctx.line(format!("{}: not a member, fails on chart {chart}: {cert}", a.expr))?,
                }
                for (chart, cert) in &a.certificates {
                    ctx.line(format!("  {chart}: {cert}"))?;
                }
            }
            Format::Machine => {
                let rec = json!({
                    "command": "member",
                    "expr": a.expr,
                    "member": a.member,
                    "failing_chart": a.failing.as_ref().map(|f| &f.0),
                    "charts": a.certificates.iter().map(|(c, s)| json!({"chart": c, "certificate": s})).collect::<Vec<_>>(),
                });
                ctx.record(&rec)?;
            }
        }
        if !a.member {
            code = EXIT_NEGATIVE;
        }
    }
    Ok(code)
}

fn cmd_member(ctx: &mut Ctx, path: &Path, exprs: &[String]) -> CliResult<i32> {
    let p = load_charts(path)?;
    let answers: Vec<CliResult<Answer>> = ctx.pool.install(|| {
        exprs
            .par_iter()
            .map(|e| {
                let f = p.parse(e).map_err(|err| CliError(format!("{e}: {err}")))?;
                Ok(answer_from(e, msa_membership(&p, &f)?))
            })
            .collect()
    });
    report_answers(ctx, answers)
}

fn cmd_upper_member(
    ctx: &mut Ctx,
    path: &Path,
    exprs: &[String],
    frozen_invertible: &[String],
    non_invertible: Option<&[String]>,
) -> CliResult<i32> {
    let doc = load_seed(path)?;
    let s = &doc.seed;
    let mut ni = match non_invertible {
        Some(names) => resolve_names(s, names)?,
        None => doc.non_invertible.clone(),
    };
    let inverted = resolve_names(s, frozen_invertible)?;
    ni.retain(|j| !inverted.contains(j));
    ni.sort_unstable();
    ni.dedup();
    let answers: Vec<CliResult<Answer>> = ctx.pool.install(|| {
        exprs
            .par_iter()
            .map(|e| {
                let f = mutalg::arith::parse_expr(e, s.ambient_ctx()).map_err(|err| CliError(format!("{e}: {err}")))?;
                Ok(answer_from(e, upper_membership(s, &f, &ni)?))
            })
            .collect()
    });
    report_answers(ctx, answers)
}

fn cmd_lift(ctx: &mut Ctx, n: usize) -> CliResult<i32> {
    let cfg = BlowupConfig::new(n)?;
    let lifted = match lifted_seed(&cfg) {
        Ok(l) => l,
        Err(e @ mutalg::Error::NotCompatible { .. }) => {
            ctx.line(format!("compatibility: FAIL: {e}"))?;
            return Ok(EXIT_NEGATIVE);
        }
        Err(e) => return Err(e.into()),
    };
    let summary = lifted.summary();
    let base_names: Vec<String> = lifted.base.vertices().to_vec();
    match ctx.format {
        Format::Text => {
            let divisors: Vec<String> = (0..n + 3).map(divisor_vertex_name).collect();
            ctx.line("nu:")?;
            ctx.line(format_matrix(&divisors, &base_names, &summary.nu))?;
            ctx.line("lifted B:")?;
            ctx.line(format_matrix(lifted.seed.vertices(), &mutable_names(&lifted.seed), &summary.lifted_matrix))?;
            ctx.line("degrees:")?;
            let rows: Vec<String> = summary.degrees.iter().map(|(v, _)| v.clone()).collect();
            let m: Vec<Vec<i64>> = summary.degrees.iter().map(|(_, d)| d.clone()).collect();
            ctx.line(format_matrix(&rows, &divisors, &m))?;
            ctx.line(format!("compatibility: {}", if summary.compatible { "PASS" } else { "FAIL" }))?;
        }
        Format::Machine => {
            let mut v = serde_json::to_value(&summary)?;
            v["command"] = json!("lift");
            ctx.record(&v)?;
        }
    }
    Ok(if summary.compatible { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_grade_check(ctx: &mut Ctx, path: &Path, sequence: &str) -> CliResult<i32> {
    let doc = load_seed(path)?;
    let g = doc.grading.clone().ok_or_else(|| CliError(format!("{} has no grading", path.display())))?;
    let (mut t, mut h) = (doc.seed.clone(), g);
    for k in parse_sequence(&doc.seed, sequence)? {
        (t, h) = mutate_graded(&t, &h, k)?;
    }
    let rep = grading_is_compatible(&t, &h)?;
    match ctx.format {
        Format::Text => {
            for v in &rep.vertices {
                let mark = if v.compatible { "PASS" } else { "FAIL" };
                ctx.line(format!("{mark} {}: {:?} vs {:?}", v.vertex, v.plus_degree, v.minus_degree))?;
            }
            ctx.line(format!("compatible: {}", rep.compatible))?;
        }
        Format::Machine => {
            let mut v = serde_json::to_value(&rep)?;
            v["command"] = json!("grade-check");
            ctx.record(&v)?;
        }
    }
    Ok(if rep.compatible { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_validate(ctx: &mut Ctx, path: &Path, non_invertible: Option<&[String]>) -> CliResult<i32> {
    let raw = read_json(path)?;
    let charts = unwrap_case(raw.clone(), "charts");
    let p = if is_chart_system(&charts) {
        if non_invertible.is_some() {
            return Err(CliError("--non-invertible applies to seeds only".into()));
        }
        load_charts(path)?
    } else {
        let doc = load_seed(path)?;
        let ni = match non_invertible {
            Some(names) => resolve_names(&doc.seed, names)?,
            None => doc.non_invertible.clone(),
        };
        upper_presentation(&doc.seed, &ni)?
    };
    let rep = validate_presentation(&p);
    match ctx.format {
        Format::Text => {
            write!(ctx.out, "{rep}")?;
            ctx.line(format!("valid: {}", rep.is_valid()))?;
        }
        Format::Machine => {
            for c in &rep.checks {
                ctx.record(&serde_json::to_value(c)?)?;
            }
        }
    }
    Ok(if rep.is_valid() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_verify(ctx: &mut Ctx, target: &str, run_properties: bool, prng_seed: u64) -> CliResult<i32> {
    let corpus = Corpus::load()?;
    let ids: Vec<&str> = if target == "all" {
        corpus.ids()
    } else if corpus.case(target).is_ok() {
        vec![target]
    } else {
        let tagged = corpus.select(Some(target));
        if tagged.is_empty() {
            return Err(CliError(format!("unknown case '{target}'")));
        }
        tagged
    };
    let reports: Vec<CliResult<Report>> =
        ctx.pool.install(|| ids.par_iter().map(|id| Ok(corpus.run_case(id)?)).collect());
    let mut report = Report::default();
    for r in reports {
        report.merge(r?);
    }
    report.sort();
    let mut failed = report.has_failures();
    match ctx.format {
        Format::Text => write!(ctx.out, "{}", report.to_text())?,
        Format::Machine => write!(ctx.out, "{}", report.to_json_lines())?,
    }
    if run_properties {
        let suites: Vec<properties::SuiteResult> = ctx.pool.install(|| {
            (0..properties::SUITES.len()).into_par_iter().map(|i| properties::run_suite(i, prng_seed)).collect()
        });
        for s in &suites {
            failed |= !s.passed();
            match ctx.format {
                Format::Text => {
                    let verdict = if s.passed() { "PASS" } else { "FAIL" };
                    ctx.line(format!("{verdict:<9} property {} ({} cases, seed {prng_seed}, {:.2?})", s.name, s.cases, s.elapsed))?;
                    for f in &s.failures {
                        ctx.line(format!("    {f}"))?;
                    }
                }
                Format::Machine => {
                    let mut v = serde_json::to_value(s)?;
                    v["verdict"] = json!(if s.passed() { "PASS" } else { "FAIL" });
                    v["prng_seed"] = json!(prng_seed);
                    ctx.record(&v)?;
                }
            }
        }
    }
    Ok(if failed { EXIT_NEGATIVE } else { EXIT_OK })
}
