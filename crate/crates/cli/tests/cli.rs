use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../corpus/data").join(name).to_string_lossy().into_owned()
}

fn mutalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mutalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn mutate_sl3() {
    let o = mutalg(&["mutate", &data("sl3.json"), "--sequence", "x2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("cluster: x1 x2_1 x3"), "{out}");
    assert!(out.contains("  x2 = c\n"), "{out}");
    assert!(out.contains("  x1 = a*c - b\n"), "{out}");
}

#[test]
fn mutate_twice_returns() {
    let o = mutalg(&["--format", "machine", "mutate", &data("sl3.json"), "--sequence", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["matrix"], serde_json::json!([[1], [0], [-1]]));
    assert_eq!(v["ledger"][1]["value"], "a");
}

#[test]
fn mutate_empty_sequence_echoes() {
    let o = mutalg(&["mutate", &data("sl3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("  x2 = a\n"));
}

#[test]
fn mutate_frozen_is_an_error() {
    let o = mutalg(&["mutate", &data("sl3.json"), "--sequence", "x1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("frozen"));
}

#[test]
fn member_exit_codes() {
    let charts = data("two_point.json");
    let yes = mutalg(&["member", &charts, "--expr", "z"]);
    assert_eq!(yes.status.code(), Some(0), "{}", stderr(&yes));
    assert!(stdout(&yes).contains("z: member"));

    let no = mutalg(&["member", &charts, "--expr", "1/y"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).contains("fails on chart T3"), "{}", stdout(&no));

    let bad = mutalg(&["member", &charts, "--expr", "(x+"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("error"));
}

#[test]
fn member_needs_exactly_one_source() {
    assert_eq!(mutalg(&["member", "--expr", "x"]).status.code(), Some(2));
    let both = mutalg(&["member", &data("two_point.json"), "--upper", &data("sl3.json"), "--expr", "a"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn upper_membership_with_inverted_frozen() {
    let seed = data("sl3.json");
    assert_eq!(mutalg(&["upper-member", &seed, "--expr", "c"]).status.code(), Some(0));
    assert_eq!(mutalg(&["upper-member", &seed, "--expr", "1/b"]).status.code(), Some(1));
    let o = mutalg(&["member", "--upper", &seed, "--frozen-invertible", "x3", "--expr", "1/b"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = mutalg(&["member", "--upper", &seed, "--frozen-invertible", "x3", "--expr", "1/a"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn lift_dimensions() {
    let two = mutalg(&["lift", "--n", "2"]);
    assert_eq!(two.status.code(), Some(0));
    assert!(stdout(&two).contains("compatibility: PASS"));
    let five = mutalg(&["--format", "machine", "lift", "--n", "5"]);
    assert_eq!(five.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&five).trim()).unwrap();
    assert_eq!(v["compatible"], true);
    assert_eq!(mutalg(&["lift", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn grade_check_after_mutations() {
    let o = mutalg(&["grade-check", &data("cubic_ix.json"), "--sequence", "T6,T7,T6"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("compatible: true"));
    let ungraded = mutalg(&["grade-check", &data("sl3.json")]);
    assert_eq!(ungraded.status.code(), Some(2));
}

#[test]
fn validate_reports_unchecked_height_one() {
    let o = mutalg(&["validate", &data("sl3.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("SURROGATE-PASS  mu_x2(t): divisor bijection"), "{out}");
    assert!(out.contains("UNCHECKED       mu_x2(t): height-one contraction"), "{out}");
    let charts = mutalg(&["--format", "machine", "validate", &data("two_point.json")]);
    assert_eq!(charts.status.code(), Some(0));
    assert!(stdout(&charts).lines().all(|l| serde_json::from_str::<serde_json::Value>(l).is_ok()));
}

#[test]
fn verify_all_and_single() {
    let all = mutalg(&["--jobs", "4", "verify", "all"]);
    assert_eq!(all.status.code(), Some(0), "{}", stdout(&all));
    assert!(stdout(&all).contains(" 0 failed"));
    let one = mutalg(&["verify", "cubic_ix"]);
    assert_eq!(one.status.code(), Some(0));
    assert!(stdout(&one).lines().filter(|l| l.starts_with("PASS")).all(|l| l.contains("cubic_ix#")));
    let missing = mutalg(&["verify", "nosuchcase"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("nosuchcase"));
}

#[test]
fn verify_jobs_do_not_change_output() {
    let serial = mutalg(&["verify", "rank2"]);
    let parallel = mutalg(&["--jobs", "3", "verify", "rank2"]);
    assert_eq!(stdout(&serial), stdout(&parallel));
}

#[test]
fn machine_and_text_agree() {
    let text = stdout(&mutalg(&["verify", "sl3"]));
    let machine = stdout(&mutalg(&["--format", "machine", "verify", "sl3"]));
    let text_verdicts: Vec<&str> =
        text.lines().filter(|l| !l.starts_with(' ')).filter_map(|l| l.split_whitespace().next()).collect();
    let machine_verdicts: Vec<String> = machine
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["verdict"].as_str().unwrap().to_string())
        .collect();
    // text has a trailing summary line
    assert_eq!(text_verdicts.len(), machine_verdicts.len() + 1);
    for (t, m) in text_verdicts.iter().zip(&machine_verdicts) {
        assert_eq!(t, m);
    }
}

#[test]
fn verify_properties_with_seed() {
    let o = mutalg(&["--jobs", "4", "verify", "sl3", "--properties", "--prng-seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("property mutation involution"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mutalg(&[]).status.code(), Some(2));
    assert_eq!(mutalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mutalg(&["--version"]).status.code(), Some(0));
    assert_eq!(mutalg(&["mutate", "/nonexistent.json"]).status.code(), Some(2));
}
