use casimir_core::exact_math::rational::int;
use casimir_core::lie_algebras::{algebra, AlgebraKind, LieAlgebra};
use casimir_core::poly_invariants::{
    act, act_congruence, build_invariant, c_k_poly, charpoly_pfaffian_identity, check_relation,
    compile_graph, det_poly, g_poly, is_invariant, pf_full_poly, pfaffian_poly, random_graph,
    sum_pf_sq_poly, trace_poly, Domain, Family, MPolynomial, PolyMatrix, RelationParams,
};
use casimir_core::sampling::{admissible_variables, random_poly, random_vector, rng, DEFAULT_SEED};
use proptest::prelude::*;

fn m(i: usize, j: usize) -> MPolynomial {
    MPolynomial::m(i, j)
}

fn so(n: usize) -> std::sync::Arc<LieAlgebra> {
    algebra(AlgebraKind::So(n)).unwrap()
}

#[test]
fn literal_and_contragredient_actions() {
    let so3 = so(3);
    let f12 = so3.basis_vector(0);
    // M -> V M + M V^t with V = E_12 - E_21 sends m_11 to m_21 + m_12.
    assert_eq!(act_congruence(&so3, &f12, &m(0, 0)).unwrap(), &m(1, 0) + &m(0, 1));
    assert_eq!(act(&so3, &f12, &m(0, 0), Domain::General).unwrap(), -(&m(1, 0) + &m(0, 1)));
    for n in 2..=5 {
        let alg = so(n);
        for a in 0..alg.dim() {
            assert!(act(&alg, &alg.basis_vector(a), &trace_poly(n), Domain::General).unwrap().is_zero());
        }
    }
}

#[test]
fn invariance_verdicts() {
    let so3 = so(3);
    let v = is_invariant(&so3, &m(0, 1), Domain::Skew).unwrap();
    assert!(!v.invariant);
    assert!(!v.witness.unwrap().1.is_zero());
    assert!(is_invariant(&so3, &trace_poly(3), Domain::General).unwrap().invariant);
    assert!(is_invariant(&so(4), &pf_full_poly(4).unwrap(), Domain::Skew).unwrap().invariant);
    assert!(is_invariant(&so3, &m(3, 0), Domain::General).is_err());
}

#[test]
fn pfaffian_and_determinant_expansions() {
    let pf = pfaffian_poly(&[0, 1, 2, 3]).unwrap();
    let expected = &(&(&m(0, 1) * &m(2, 3)) - &(&m(0, 2) * &m(1, 3))) + &(&m(0, 3) * &m(1, 2));
    assert_eq!(pf, expected);
    assert_eq!(det_poly(&[0, 1], &[0, 1]).unwrap(), &(&m(0, 0) * &m(1, 1)) - &(&m(0, 1) * &m(1, 0)));
    let skew_det = PolyMatrix::symbolic(4, 0).det().skew_substitute();
    assert_eq!(&pf * &pf, skew_det);
    assert!(pfaffian_poly(&[0, 1, 2]).is_err());
    assert!(det_poly(&[0, 1], &[0]).is_err());
}

#[test]
fn family_examples() {
    for n in 1..=5 {
        assert_eq!(c_k_poly(n, 1).unwrap(), trace_poly(n));
    }
    let squares = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .fold(MPolynomial::zero(), |acc, (i, j)| &acc + &(&m(i, j) * &m(i, j)));
    assert_eq!(sum_pf_sq_poly(4, 1).unwrap(), squares);
    let pf = pf_full_poly(4).unwrap();
    assert_eq!(sum_pf_sq_poly(4, 2).unwrap(), &pf * &pf);
    assert!(sum_pf_sq_poly(4, 3).is_err());
    assert!(pf_full_poly(5).is_err());
}

#[test]
fn families_are_invariant_over_so() {
    for n in 2..=6 {
        let alg = so(n);
        let mut polys = vec![(trace_poly(n), Domain::General)];
        for k in 1..=n.min(3) {
            polys.push((c_k_poly(n, k).unwrap(), Domain::General));
            if 2 * k <= n {
                polys.push((sum_pf_sq_poly(n, k).unwrap(), Domain::Skew));
            }
        }
        if n % 2 == 0 {
            polys.push((pf_full_poly(n).unwrap(), Domain::Skew));
        }
        for (i, (p, domain)) in polys.iter().enumerate() {
            assert!(is_invariant(&alg, p, *domain).unwrap().invariant, "so{n} candidate {i}");
        }
    }
}

#[test]
fn g_functions() {
    let squares = (0..7)
        .flat_map(|i| (0..7).map(move |j| (i, j)))
        .fold(MPolynomial::zero(), |acc, (i, j)| &acc + &(&m(i, j) * &m(i, j)));
    let g2 = g_poly(&[2], &[2]).unwrap();
    let c = g2.ratio_to(&squares).expect("proportional to the sum of squares");
    assert_ne!(c, int(0));
    assert!(g_poly(&[5], &[5]).unwrap().is_zero());
    assert!(g_poly(&[6], &[6]).unwrap().is_zero());

    let alg = algebra(AlgebraKind::G2).unwrap();
    for sizes in [[2usize], [3], [4]] {
        let p = g_poly(&sizes, &sizes).unwrap();
        assert!(is_invariant(&alg, &p, Domain::Skew).unwrap().invariant, "G({sizes:?})");
    }
    let mixed = g_poly(&[2, 2], &[4]).unwrap();
    assert!(is_invariant(&alg, &mixed, Domain::Skew).unwrap().invariant);
}

#[test]
fn random_graphs_compile_to_invariants() {
    let mut r = rng(DEFAULT_SEED);
    for n in [3usize, 4, 5] {
        let alg = so(n);
        // An odd N needs an even number of black vertices to pair up all ends.
        let blacks = if n % 2 == 0 { 1 } else { 2 };
        for _ in 0..4 {
            let graph = random_graph(n, blacks, 2, &mut r).unwrap();
            let p = compile_graph(&graph, n).unwrap();
            assert!(is_invariant(&alg, &p, Domain::Skew).unwrap().invariant, "{graph:?}");
        }
        let odd = random_graph(n, 1, 0, &mut r);
        assert_eq!(odd.is_err(), n % 2 == 1);
    }
}

#[test]
fn family_json_builds_same_polynomial() {
    let fam: Family = serde_json::from_str(r#"{"family":"pf","indices":[0,1,2,3]}"#).unwrap();
    let inv = build_invariant(&fam, 4).unwrap();
    assert_eq!(inv.poly, pfaffian_poly(&[0, 1, 2, 3]).unwrap());
    assert_eq!(inv.prefactor, Some(int(8)));
}

#[test]
fn relations() {
    assert!(check_relation(1, &RelationParams { n: Some(2), k: None }).unwrap().holds);
    assert!(check_relation(2, &RelationParams::default()).unwrap().holds);
    assert!(check_relation(3, &RelationParams::default()).unwrap().holds);
    assert!(check_relation(4, &RelationParams { n: Some(4), k: Some(3) }).unwrap().holds);
    assert!(check_relation(4, &RelationParams { n: Some(4), k: Some(2) }).is_err());
    assert!(check_relation(5, &RelationParams::default()).is_err());
    for n in [2, 4, 6] {
        let v = charpoly_pfaffian_identity(n).unwrap();
        assert!(v.holds, "N = {n}");
        assert!(v.residual.is_zero());
    }
}

fn arb_algebra() -> impl Strategy<Value = AlgebraKind> {
    prop_oneof![Just(AlgebraKind::So(4)), Just(AlgebraKind::Gl(3)), Just(AlgebraKind::G2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn action_is_a_derivation(kind in arb_algebra(), seed in any::<u64>()) {
        let alg = algebra(kind).unwrap();
        let mut r = rng(seed);
        let vars = admissible_variables(&alg);
        let p = random_poly(&vars, 3, &mut r);
        let q = random_poly(&vars, 3, &mut r);
        let g = random_vector(&alg, &mut r);
        let lhs = act(&alg, &g, &(&p * &q), Domain::General).unwrap();
        let ap = act(&alg, &g, &p, Domain::General).unwrap();
        let aq = act(&alg, &g, &q, Domain::General).unwrap();
        prop_assert_eq!(lhs, &(&ap * &q) + &(&p * &aq));
    }

    #[test]
    fn action_is_a_lie_action(kind in arb_algebra(), seed in any::<u64>()) {
        let alg = algebra(kind).unwrap();
        let mut r = rng(seed);
        let p = random_poly(&admissible_variables(&alg), 3, &mut r);
        let g1 = random_vector(&alg, &mut r);
        let g2 = random_vector(&alg, &mut r);
        let d = Domain::General;
        let a12 = act(&alg, &g1, &act(&alg, &g2, &p, d).unwrap(), d).unwrap();
        let a21 = act(&alg, &g2, &act(&alg, &g1, &p, d).unwrap(), d).unwrap();
        let bracket = act(&alg, &alg.bracket(&g1, &g2), &p, d).unwrap();
        prop_assert_eq!(&a12 - &a21, bracket);
    }
}
