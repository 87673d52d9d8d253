use proptest::prelude::*;

use super::*;
use crate::arith::{parse_expr, parse_laurent, RationalFunction, VarContext};

const SL3: &str = r#"{
  "vertices": ["x1", "x2", "x3"],
  "frozen": ["x1", "x3"],
  "quiver": [["x1", "x2", 1], ["x2", "x3", 1]],
  "ledger": {"x1": "a*c - b", "x2": "a", "x3": "b"},
  "ambient": ["a", "b", "c"],
  "coordinates": {"a": "x2", "b": "x3", "c": "(x1 + x3)/x2"}
}"#;

const SL4: &str = r#"{
  "vertices": ["x1", "x2", "x3", "x4", "x5"],
  "frozen": ["x3", "x4", "x5"],
  "quiver": [["x1", "x4", 1], ["x3", "x1", 1], ["x3", "x2", 1], ["x2", "x5", 1]],
  "ledger": {"x1": "e", "x2": "a", "x3": "a*d - c", "x4": "c - a*d - b*e", "x5": "c"},
  "ambient": ["a", "b", "c", "d", "e"],
  "coordinates": {"a": "x2", "b": "-(x3 + x4)/x1", "c": "x5", "d": "(x3 + x5)/x2", "e": "x1"}
}"#;

pub(crate) fn cubic_ix() -> Seed {
    let names = ["x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x11"];
    let idx = |n: &str| names.iter().position(|v| *v == n).unwrap();
    let arrows = [
        ("x5", "x6", 1),
        ("x6", "x1", 1),
        ("x6", "x2", 1),
        ("x6", "x7", 1),
        ("x6", "x8", 1),
        ("x7", "x1", 1),
        ("x7", "x4", 1),
        ("x7", "x8", 2),
        ("x11", "x6", 1),
        ("x11", "x7", 1),
        ("x3", "x7", 1),
    ];
    let q = Quiver {
        vertices: names.iter().map(|s| s.to_string()).collect(),
        frozen: names.iter().map(|n| *n != "x6" && *n != "x7").collect(),
        arrows: arrows.iter().map(|(s, t, m)| (idx(s), idx(t), *m)).collect(),
    };
    Seed::new(q.vertices.clone(), quiver_to_matrix(&q).unwrap()).unwrap()
}

fn rf(s: &Seed, text: &str) -> RationalFunction {
    parse_expr(text, s.ambient_ctx()).unwrap()
}

#[test]
fn sl3_mutation_gives_c() {
    let doc = SeedDocument::from_json(SL3).unwrap();
    let s = doc.seed;
    assert_eq!(s.matrix().entries(), &vec![vec![1], vec![0], vec![-1]]);
    let t = seed_mutate(&s, 1).unwrap();
    assert_eq!(t.ledger_of(1), &rf(&s, "c"));
    assert_eq!(t.var_names()[1], "x2_1");
    // the inverse map follows the new cluster
    let c = t.to_cluster(&rf(&s, "c")).unwrap();
    assert_eq!(c, RationalFunction::var(t.cluster_ctx(), 1));
    assert!(matches!(seed_mutate(&s, 0), Err(crate::Error::FrozenVertex(_))));
}

#[test]
fn sl4_mutations() {
    let s = SeedDocument::from_json(SL4).unwrap().seed;
    assert_eq!(seed_mutate(&s, 0).unwrap().ledger_of(0), &rf(&s, "-b"));
    assert_eq!(seed_mutate(&s, 1).unwrap().ledger_of(1), &rf(&s, "d"));
    assert!(is_maximal_rank(&s));
}

#[test]
fn rank_two_affinizations() {
    for (a, b) in [(1i64, 1i64), (2, 1), (2, 3)] {
        let m = ExchangeMatrix::from_square(&[vec![0, -b], vec![a, 0]], vec![0, 1]).unwrap();
        let s = Seed::new(vec!["x1".into(), "x2".into()], m).unwrap();
        let ctx = s.cluster_ctx().clone();
        let x3 = seed_mutate(&s, 0).unwrap().ledger_of(0).clone();
        let x4 = seed_mutate(&s, 1).unwrap().ledger_of(1).clone();
        assert_eq!(x3, parse_expr(&format!("(1 + x2^{a})/x1"), &ctx).unwrap());
        assert_eq!(x4, parse_expr(&format!("(1 + x1^{b})/x2"), &ctx).unwrap());
        let x1 = RationalFunction::var(&ctx, 0);
        let x2 = RationalFunction::var(&ctx, 1);
        let one = RationalFunction::one(&ctx);
        let r1 = x1.try_mul(&x3).unwrap().try_sub(&one).unwrap().try_sub(&x2.pow(a).unwrap()).unwrap();
        let r2 = x2.try_mul(&x4).unwrap().try_sub(&one).unwrap().try_sub(&x1.pow(b).unwrap()).unwrap();
        assert!(r1.is_zero() && r2.is_zero());
        assert_eq!(is_primitive_seed(&s), a == 1 && b == 1 || (a != 2 && b != 2 && a * b == 1) || (a == 1 && b == 1));
    }
}

#[test]
fn cubic_exchange_binomials() {
    let s = cubic_ix();
    let c = s.cluster_ctx().clone();
    let (p6, m6) = exchange_binomials(&s, 5).unwrap();
    assert_eq!(p6, parse_laurent("x5*x11", &c).unwrap());
    assert_eq!(m6, parse_laurent("x1*x2*x7*x8", &c).unwrap());
    let (p7, m7) = exchange_binomials(&s, 6).unwrap();
    assert_eq!(p7, parse_laurent("x3*x6*x11", &c).unwrap());
    assert_eq!(m7, parse_laurent("x1*x4*x8^2", &c).unwrap());
    assert_eq!(s.matrix().get(7, 6), -2);
    assert!(is_maximal_rank(&s));
}

#[test]
fn cubic_composite_mutation() {
    let s = cubic_ix();
    let c = s.cluster_ctx().clone();
    let t9 = parse_expr("(x5*x11 + x1*x2*x7*x8)/x6", &c).unwrap();
    let t10 = parse_expr("(x3*x6*x11 + x1*x4*x8^2)/x7", &c).unwrap();
    assert_eq!(seed_mutate(&s, 5).unwrap().ledger_of(5), &t9);
    assert_eq!(seed_mutate(&s, 6).unwrap().ledger_of(6), &t10);
    let u = mutate_sequence(&s, &[5, 6]).unwrap();
    assert_eq!(u.ledger_of(5), &t9);
    let expected = t9
        .try_mul(&t10)
        .unwrap()
        .try_sub(&parse_expr("x1*x2*x3*x8*x11", &c).unwrap())
        .unwrap();
    assert_eq!(u.ledger_of(6), &expected);
}

#[test]
fn pentagon_period() {
    let m = ExchangeMatrix::from_square(&[vec![0, 1], vec![-1, 0]], vec![0, 1]).unwrap();
    let s = Seed::new(vec!["x1".into(), "x2".into()], m).unwrap();
    let seq: Vec<usize> = (0..10).map(|i| i % 2).collect();
    let back = mutate_sequence(&s, &seq).unwrap();
    assert_eq!(back.ledger(), s.ledger());
    assert_eq!(back.matrix(), s.matrix());
    let half = mutate_sequence(&s, &seq[..5]).unwrap();
    assert_eq!(half.ledger_of(0), s.ledger_of(1));
    assert_eq!(half.ledger_of(1), s.ledger_of(0));
    let distinct: std::collections::BTreeSet<String> =
        (0..5).map(|i| mutate_sequence(&s, &seq[..=i]).unwrap().ledger_of(i % 2).to_string()).collect();
    assert_eq!(distinct.len(), 5);
}

#[test]
fn schema_rejections() {
    let bad = SL3.replace("\"frozen\"", "\"frozn\"");
    assert!(matches!(SeedDocument::from_json(&bad), Err(crate::Error::Schema(_))));
    let wrong_coords = SL3.replace("(x1 + x3)/x2", "x1/x2");
    assert!(SeedDocument::from_json(&wrong_coords).is_err());
    let torsion = SL3.replace(
        "\"ambient\"",
        "\"grading\": {\"rank\": 1, \"degrees\": {}, \"torsion\": [2]}, \"ambient\"",
    );
    assert!(matches!(SeedDocument::from_json(&torsion), Err(crate::Error::Schema(_))));
    let cone = SL3.replace("\"ambient\"", "\"cone\": {\"non_invertible\": [\"x2\"]}, \"ambient\"");
    assert!(SeedDocument::from_json(&cone).is_err());
}

#[test]
fn matrix_form_matches_quiver() {
    let text = r#"{"vertices": ["x1","x2","x3"], "frozen": ["x1","x3"], "matrix": [[1],[0],[-1]]}"#;
    let a = SeedDocument::from_json(text).unwrap().seed;
    let b = SeedDocument::from_json(SL3).unwrap().seed;
    assert_eq!(a.matrix(), b.matrix());
    assert_eq!(a.ambient_ctx().names(), a.cluster_ctx().names());
}

#[test]
fn vertex_resolution() {
    let s = cubic_ix();
    assert_eq!(s.resolve_vertex("x11").unwrap(), 8);
    assert_eq!(s.resolve_vertex("11").unwrap(), 8);
    assert_eq!(s.resolve_vertex("6").unwrap(), 5);
    assert!(s.resolve_vertex("12").is_err());
}

#[test]
fn degenerate_column() {
    let m = ExchangeMatrix::new(vec![vec![0], vec![0]], vec![0]).unwrap();
    let s = Seed::new(vec!["p".into(), "q".into()], m).unwrap();
    assert!(s.is_degenerate(0));
    let (p, q) = exchange_binomials(&s, 0).unwrap();
    assert!(p.is_one() && q.is_one());
    let t = seed_mutate(&s, 0).unwrap();
    let ctx = VarContext::new(&["p", "q"]).unwrap();
    assert_eq!(t.ledger_of(0), &parse_expr("2/p", &ctx).unwrap());
}

fn skew_matrix(n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(-bound..=bound, n * (n - 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![0; n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap();
                m[i][j] = v;
                m[j][i] = -v;
            }
        }
        m
    })
}

fn seed_from(m: &[Vec<i64>], mutable: usize) -> Seed {
    let n = m.len();
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Seed::new(names, ExchangeMatrix::from_square(m, (0..mutable).collect()).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutation_is_an_involution(m in skew_matrix(4, 2), k in 0usize..3) {
        let s = seed_from(&m, 3);
        let back = s.mutate(k).unwrap().mutate(k).unwrap();
        prop_assert_eq!(back.matrix(), s.matrix());
        prop_assert_eq!(back.ledger(), s.ledger());
    }

    #[test]
    fn ledger_stays_laurent(m in skew_matrix(4, 1), seq in proptest::collection::vec(0usize..3, 0..=6)) {
        let s = seed_from(&m, 3);
        let t = s.mutate_sequence(&seq).unwrap();
        for f in t.ledger() {
            prop_assert!(f.is_laurent(), "{} is not Laurent", f);
        }
        // the inverse map recovers every initial variable
        for (a, g) in t.inverse().unwrap().iter().enumerate() {
            let back = g.substitute(t.ledger(), t.ambient_ctx()).unwrap();
            prop_assert_eq!(back, RationalFunction::var(t.ambient_ctx(), a));
        }
    }

    #[test]
    fn skew_symmetry_preserved(m in skew_matrix(5, 2), seq in proptest::collection::vec(0usize..3, 1..8)) {
        let b = ExchangeMatrix::from_square(&m, vec![0, 1, 2]).unwrap();
        let mut t = b.clone();
        for &k in &seq {
            t = matrix_mutate(&t, k).unwrap();
        }
        let full = t.entries();
        for j in 0..3 {
            for k in 0..3 {
                prop_assert_eq!(full[j][k], -full[k][j]);
            }
        }
        prop_assert_eq!(matrix_is_maximal_rank(&t), matrix_is_maximal_rank(&b));
        prop_assert_eq!(matrix_is_primitive(&t), matrix_is_primitive(&b));
    }
}
