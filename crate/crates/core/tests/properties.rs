use mutalg::arith::{parse_expr, poly_exact_div, LaurentPoly, RationalFunction, VarContext};
use mutalg::graded::{grading_is_compatible, mutate_graded, mutated_degree, rf_degree};
use mutalg::lattice::{cone_contains, dual_contains, is_strongly_convex, monomial_valuation, Cone, LatticeVector};
use mutalg::lifting::{build_base_seed, lifted_seed, multiplicity_at_point, BlowupConfig};
use mutalg::random;
use mutalg::seeds::{is_skew_symmetrizable, matrix_mutate, ExchangeMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn xyz() -> mutalg::arith::Ctx {
    VarContext::new(&["x", "y", "z"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = xyz();
        let f = random::laurent(&mut r, &c, 4, -2, 3);
        let g = random::laurent(&mut r, &c, 4, -2, 3);
        let h = random::laurent(&mut r, &c, 4, -2, 3);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn exact_division_recovers_factor(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = xyz();
        let f = random::polynomial(&mut r, &c, 5, 3);
        let g = random::nonzero_polynomial(&mut r, &c, 4, 3);
        prop_assert_eq!(poly_exact_div(&(&f * &g), &g).unwrap(), Some(f));
    }

    #[test]
    fn normalization_cancels_common_factors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = xyz();
        let f = random::nonzero_polynomial(&mut r, &c, 3, 2);
        let g = random::nonzero_polynomial(&mut r, &c, 3, 2);
        let h = random::nonzero_polynomial(&mut r, &c, 3, 2);
        let a = RationalFunction::new(&f * &h, &g * &h).unwrap();
        let b = RationalFunction::new(f, g).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn laurent_polynomials_stay_laurent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = xyz();
        let p = random::laurent(&mut r, &c, 6, -3, 3);
        let f = RationalFunction::from_laurent(&p);
        prop_assert!(f.is_laurent());
        prop_assert_eq!(f.to_laurent(), Some(p));
    }

    #[test]
    fn format_parse_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = xyz();
        let n = random::laurent(&mut r, &c, 4, -2, 2);
        let d = random::nonzero_polynomial(&mut r, &c, 3, 2);
        let f = RationalFunction::new(n, d).unwrap();
        prop_assert_eq!(parse_expr(&f.to_string(), &c).unwrap(), f);
    }

    #[test]
    fn valuation_is_additive_and_ultrametric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = xyz();
        let w: Vec<i64> = (0..3).map(|_| r.gen_range(-3..=3)).collect();
        let f = random::nonzero_laurent(&mut r, &c, 4, -2, 2);
        let g = random::nonzero_laurent(&mut r, &c, 4, -2, 2);
        let vf = monomial_valuation(&w, &f).unwrap();
        let vg = monomial_valuation(&w, &g).unwrap();
        prop_assert_eq!(monomial_valuation(&w, &(&f * &g)).unwrap(), vf + vg);
        let s = &f + &g;
        if !s.is_zero() {
            prop_assert!(monomial_valuation(&w, &s).unwrap() >= vf.min(vg));
        }
    }

    #[test]
    fn dual_cone_is_a_semigroup(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let gens: Vec<LatticeVector> = (0..r.gen_range(1..=4))
            .map(|_| LatticeVector((0..n).map(|_| r.gen_range(-2..=2)).collect()))
            .filter(|v| !v.is_zero())
            .collect();
        let sigma = Cone::new(n, gens).unwrap();
        let m1: Vec<i64> = (0..n).map(|_| r.gen_range(-3..=3)).collect();
        let m2: Vec<i64> = (0..n).map(|_| r.gen_range(-3..=3)).collect();
        if dual_contains(&sigma, &m1).unwrap() && dual_contains(&sigma, &m2).unwrap() {
            let sum: Vec<i64> = m1.iter().zip(&m2).map(|(a, b)| a + b).collect();
            prop_assert!(dual_contains(&sigma, &sum).unwrap());
        }
    }

    #[test]
    fn opposite_generators_break_strong_convexity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let mut v = LatticeVector((0..n).map(|_| r.gen_range(-3..=3)).collect());
        if v.is_zero() {
            v.0[0] = 1;
        }
        let mut gens = vec![v.clone(), -&v];
        gens.extend((0..r.gen_range(0..3)).map(|_| LatticeVector((0..n).map(|_| r.gen_range(0..=2)).collect())).filter(|g| !g.is_zero()));
        prop_assert!(!is_strongly_convex(&Cone::new(n, gens).unwrap()));
    }
}

/// Searches `q·v = Σ p_i g_i` with `1 ≤ q ≤ max_q`, `0 ≤ p_i ≤ max_p`.
fn brute_force_contains(gens: &[Vec<i64>], v: &[i64], max_q: i64, max_p: i64) -> bool {
    fn go(gens: &[Vec<i64>], i: usize, acc: &mut Vec<i64>, target: &[i64], max_p: i64) -> bool {
        if i == gens.len() {
            return acc == target;
        }
        for p in 0..=max_p {
            for (a, g) in acc.iter_mut().zip(&gens[i]) {
                *a += p * g;
            }
            let hit = go(gens, i + 1, acc, target, max_p);
            for (a, g) in acc.iter_mut().zip(&gens[i]) {
                *a -= p * g;
            }
            if hit {
                return true;
            }
        }
        false
    }
    (1..=max_q).any(|q| {
        let target: Vec<i64> = v.iter().map(|x| q * x).collect();
        go(gens, 0, &mut vec![0; v.len()], &target, max_p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cone_membership_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=3);
        let gens: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| r.gen_range(-1..=1)).collect::<Vec<i64>>())
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        prop_assume!(!gens.is_empty());
        let v: Vec<i64> = (0..n).map(|_| r.gen_range(-2..=2)).collect();
        let sigma = Cone::new(n, gens.iter().cloned().map(LatticeVector).collect()).unwrap();
        // entries in {-1,0,1} and at most three generators: |det| ≤ 4
        let fast = cone_contains(&sigma, &LatticeVector(v.clone())).unwrap();
        prop_assert_eq!(fast, brute_force_contains(&gens, &v, 4, 8));
    }

    #[test]
    fn mutation_preserves_structure(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=5);
        let mutable = r.gen_range(1..=n);
        let (principal, d) = random::skew_symmetrizable(&mut r, mutable, 2);
        let mut rows = principal.clone();
        for _ in mutable..n {
            rows.push((0..mutable).map(|_| r.gen_range(-2..=2)).collect());
        }
        let b = ExchangeMatrix::new(rows, (0..mutable).collect()).unwrap();
        let k = r.gen_range(0..mutable);
        let b2 = matrix_mutate(&b, k).unwrap();
        let p2 = b2.principal_part();
        for i in 0..mutable {
            for j in 0..mutable {
                prop_assert_eq!(d[i] * p2[i][j], -d[j] * p2[j][i]);
            }
        }
        prop_assert!(is_skew_symmetrizable(&p2).is_some());
        prop_assert_eq!(mutalg::seeds::matrix_is_maximal_rank(&b2), mutalg::seeds::matrix_is_maximal_rank(&b));
        prop_assert_eq!(mutalg::seeds::matrix_is_primitive(&b2), mutalg::seeds::matrix_is_primitive(&b));
        prop_assert_eq!(matrix_mutate(&b2, k).unwrap(), b);
    }

    #[test]
    fn graded_mutation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random::small_seed(&mut r, 5, 2);
        let g = random::compatible_grading(&mut r, &s, 3);
        let seq = random::mutation_sequence(&mut r, &s, 3);
        let (mut t, mut h) = (s.clone(), g.clone());
        for &k in &seq {
            let before = h.degree(&t.var_names()[k]).unwrap().to_vec();
            let (t2, h2) = mutate_graded(&t, &h, k).unwrap();
            prop_assert!(grading_is_compatible(&t2, &h2).unwrap().compatible);
            prop_assert_eq!(mutated_degree(&t2, &h2, k).unwrap(), before);
            t = t2;
            h = h2;
        }
        for (i, f) in t.ledger().iter().enumerate() {
            let d = rf_degree(f, &g).unwrap();
            prop_assert_eq!(d.as_slice(), h.degree(&t.var_names()[i]).unwrap());
        }
        for &j in &s.frozen_vertices() {
            prop_assert_eq!(t.ledger_of(j), s.ledger_of(j));
        }
    }

    #[test]
    fn multiplicity_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = VarContext::new(&["z1", "z2", "z3"]).unwrap();
        let p = random::nonzero_polynomial(&mut r, &c, 4, 2);
        let q = random::nonzero_polynomial(&mut r, &c, 4, 2);
        let pt: Vec<_> = (0..3).map(|_| mutalg::arith::rat(r.gen_range(-1..=1))).collect();
        let a = multiplicity_at_point(&p, &pt).unwrap();
        let b = multiplicity_at_point(&q, &pt).unwrap();
        prop_assert_eq!(multiplicity_at_point(&(&p * &q), &pt).unwrap(), a + b);
    }
}

#[test]
fn nu_first_row_is_total_degree() {
    for n in 2..=4 {
        let cfg = BlowupConfig::new(n).unwrap();
        let l = lifted_seed(&cfg).unwrap();
        let base = build_base_seed(n).unwrap();
        for (i, f) in base.ledger().iter().enumerate() {
            let p: LaurentPoly = f.to_laurent().unwrap();
            assert_eq!(l.nu[0][i], p.total_degree().unwrap());
        }
    }
}

#[test]
fn lifted_mutation_stays_compatible() {
    for n in 2..=5 {
        let l = lifted_seed(&BlowupConfig::new(n).unwrap()).unwrap();
        for &k in l.seed.mutable_vertices() {
            let (t, h) = mutate_graded(&l.seed, &l.grading, k).unwrap();
            assert!(grading_is_compatible(&t, &h).unwrap().compatible, "n = {n}, k = {k}");
        }
    }
}
