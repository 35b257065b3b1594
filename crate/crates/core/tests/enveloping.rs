use casimir_core::central_elements::{
    casimir, det_family, g2_G, g2_det_check, pfaffian_family, G2DetMode, PfaffianSpec,
};
use casimir_core::exact_math::rational::{int, ratio, Rational};
use casimir_core::lie_algebras::{algebra, build_l, AlgebraKind, AlgebraRef, LieVector};
use casimir_core::poly_invariants::{pf_full_poly, trace_poly, MPolynomial};
use casimir_core::sampling::{admissible_variables, random_poly, random_vector, random_word, rng, DEFAULT_SEED};
use casimir_core::uea::{
    brute_force_commutator, brute_force_normalize, commutator, equivariance_check, is_central,
    is_central_brute_force, multiply, pbw_normalize, sym_product, symmetrize_poly, PbwMonomial, UEAElement,
};
use proptest::prelude::*;

fn alg(kind: AlgebraKind) -> AlgebraRef {
    algebra(kind).unwrap()
}

fn element(a: &AlgebraRef, terms: &[(&[u16], Rational)]) -> UEAElement {
    UEAElement::from_terms(a, terms.iter().map(|(m, c)| (PbwMonomial::from_slice(m), c.clone()))).unwrap()
}

fn basis(a: &AlgebraRef, i: usize) -> LieVector {
    a.basis_vector(i)
}

#[test]
fn straightening_examples() {
    // so3 basis: F12, F13, F23.
    let so3 = alg(AlgebraKind::So(3));
    let w = pbw_normalize(&so3, &[basis(&so3, 2), basis(&so3, 0)]).unwrap();
    assert_eq!(w, element(&so3, &[(&[0, 2], int(1)), (&[1], int(-1))]));
    assert_eq!(pbw_normalize(&so3, &[basis(&so3, 1)]).unwrap(), UEAElement::generator(&so3, 1));
    assert_eq!(pbw_normalize(&so3, &[]).unwrap(), UEAElement::one(&so3));
    assert_eq!(brute_force_normalize(&so3, &[]).unwrap(), UEAElement::one(&so3));

    // gl2 basis: E11, E12, E21, E22.
    let gl2 = alg(AlgebraKind::Gl(2));
    let w = pbw_normalize(&gl2, &[basis(&gl2, 2), basis(&gl2, 1)]).unwrap();
    assert_eq!(w, element(&gl2, &[(&[1, 2], int(1)), (&[3], int(1)), (&[0], int(-1))]));
}

#[test]
fn transposition_matches_bracket() {
    let so4 = alg(AlgebraKind::So(4));
    for a in 0..so4.dim() {
        for b in 0..a {
            let swapped = brute_force_normalize(&so4, &[basis(&so4, a), basis(&so4, b)]).unwrap();
            let mut expected = element(&so4, &[(&[b as u16, a as u16], int(1))]);
            for (c, k) in so4.bracket_basis(a, b) {
                expected.add_scaled(&UEAElement::generator(&so4, *c), k);
            }
            assert_eq!(swapped, expected);
        }
    }
}

#[test]
fn hundred_random_words_over_so4() {
    let so4 = alg(AlgebraKind::So(4));
    let mut r = rng(DEFAULT_SEED);
    for _ in 0..100 {
        let word = random_word(&so4, 4, &mut r);
        assert_eq!(pbw_normalize(&so4, &word).unwrap(), brute_force_normalize(&so4, &word).unwrap());
    }
}

#[test]
fn symmetrized_products() {
    let so3 = alg(AlgebraKind::So(3));
    let x = basis(&so3, 0);
    let y = basis(&so3, 2);
    assert_eq!(sym_product(&so3, std::slice::from_ref(&x)).unwrap(), UEAElement::generator(&so3, 0));
    let xy = pbw_normalize(&so3, &[x.clone(), y.clone()]).unwrap();
    let yx = pbw_normalize(&so3, &[y.clone(), x.clone()]).unwrap();
    let half = (&xy + &yx).scale(&ratio(1, 2));
    assert_eq!(sym_product(&so3, &[x.clone(), y.clone()]).unwrap(), half);
    assert_eq!(sym_product(&so3, &[y, x]).unwrap(), half);
}

#[test]
fn symmetrization_examples() {
    let so3 = alg(AlgebraKind::So(3));
    let l = build_l(&so3).unwrap();
    assert_eq!(symmetrize_poly(&l, &MPolynomial::m(0, 1)).unwrap(), UEAElement::generator(&so3, 0));
    assert!(symmetrize_poly(&l, &trace_poly(3)).unwrap().is_zero());
    let all_squares = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .fold(MPolynomial::zero(), |acc, (i, j)| &acc + &(&MPolynomial::m(i, j) * &MPolynomial::m(i, j)));
    let expected = element(&so3, &[(&[0, 0], int(2)), (&[1, 1], int(2)), (&[2, 2], int(2))]);
    assert_eq!(symmetrize_poly(&l, &all_squares).unwrap(), expected);
}

#[test]
fn centrality_examples() {
    let so3 = alg(AlgebraKind::So(3));
    assert!(is_central(&UEAElement::one(&so3)).unwrap().central);
    let cas = element(&so3, &[(&[0, 0], int(1)), (&[1, 1], int(1)), (&[2, 2], int(1))]);
    assert!(is_central(&cas).unwrap().central);
    let f12 = UEAElement::generator(&so3, 0);
    let verdict = is_central(&f12).unwrap();
    assert!(!verdict.central);
    let (a, residual) = verdict.witness.unwrap();
    assert_eq!(residual, commutator(&basis(&so3, a), &f12).unwrap());
    assert!(!residual.is_zero());
    // [F13, F12] = F23 in the defining representation.
    assert_eq!(commutator(&basis(&so3, 1), &f12).unwrap(), UEAElement::generator(&so3, 2));
}

#[test]
fn equivariance_examples() {
    let so4 = alg(AlgebraKind::So(4));
    let l = build_l(&so4).unwrap();
    for a in 0..so4.dim() {
        let v = equivariance_check(&l, &MPolynomial::m(0, 1), &basis(&so4, a)).unwrap();
        assert!(v.holds);
        assert!(v.lhs.degree().unwrap_or(1) <= 1);
    }
    let mut r = rng(DEFAULT_SEED);
    let p = random_poly(&admissible_variables(&so4), 2, &mut r);
    for a in 0..so4.dim() {
        assert!(equivariance_check(&l, &p, &basis(&so4, a)).unwrap().holds);
    }
    let g2 = alg(AlgebraKind::G2);
    let l = build_l(&g2).unwrap();
    let p = random_poly(&admissible_variables(&g2), 2, &mut r);
    for _ in 0..3 {
        let g = random_vector(&g2, &mut r);
        assert!(equivariance_check(&l, &p, &g).unwrap().holds);
    }
}

#[test]
fn named_elements() {
    let so3 = alg(AlgebraKind::So(3));
    let c3 = casimir(&so3).unwrap();
    assert!(c3.is_central());
    assert_eq!(c3.element, element(&so3, &[(&[0, 0], int(1)), (&[1, 1], int(1)), (&[2, 2], int(1))]));

    let so5 = alg(AlgebraKind::So(5));
    let c5 = casimir(&so5).unwrap();
    assert!(c5.is_central());
    assert_eq!(c5.element.num_terms(), 10);
    assert!(c5.element.terms().all(|(m, c)| m.len() == 2 && m[0] == m[1] && *c == int(1)));

    for n in 3..=6 {
        let a = alg(AlgebraKind::So(n));
        assert_eq!(casimir(&a).unwrap().element, pfaffian_family(&a, PfaffianSpec::SumOfSquares(1)).unwrap().element);
    }
    assert!(casimir(&alg(AlgebraKind::G2)).unwrap().is_central());
    assert!(casimir(&alg(AlgebraKind::Gl(3))).is_err());

    assert!(det_family(&alg(AlgebraKind::Gl(2)), 2).unwrap().is_central());
    assert!(det_family(&alg(AlgebraKind::Gl(3)), 2).unwrap().is_central());
    assert!(det_family(&alg(AlgebraKind::So(4)), 4).unwrap().is_central());
    assert!(det_family(&alg(AlgebraKind::So(4)), 5).is_err());

    // so4 basis: F12, F13, F14, F23, F24, F34.
    let so4 = alg(AlgebraKind::So(4));
    let pf = pfaffian_family(&so4, PfaffianSpec::Full).unwrap();
    assert!(pf.is_central());
    assert_eq!(pf.element, element(&so4, &[(&[0, 5], int(1)), (&[1, 4], int(-1)), (&[2, 3], int(1))]));
    assert!(pfaffian_family(&so5, PfaffianSpec::SumOfSquares(2)).unwrap().is_central());
    let so6 = pfaffian_family(&alg(AlgebraKind::So(6)), PfaffianSpec::Full).unwrap();
    assert!(so6.is_central());
    assert_eq!(so6.element.degree(), Some(3));
    assert!(pfaffian_family(&so5, PfaffianSpec::Full).is_err());
}

#[test]
fn pfaffian_square_matches_determinant_in_the_enveloping_algebra() {
    let so4 = alg(AlgebraKind::So(4));
    let l = build_l(&so4).unwrap();
    let pf = pf_full_poly(4).unwrap();
    let sym_sq = symmetrize_poly(&l, &(&pf * &pf)).unwrap();
    let det = det_family(&so4, 4).unwrap().element;
    assert_eq!(sym_sq.ratio_to(&det), Some(int(1)));
}

#[test]
fn reports_agree_with_the_brute_force_path() {
    let reports = [
        casimir(&alg(AlgebraKind::So(4))).unwrap(),
        pfaffian_family(&alg(AlgebraKind::So(4)), PfaffianSpec::Full).unwrap(),
        det_family(&alg(AlgebraKind::Gl(2)), 2).unwrap(),
        casimir(&alg(AlgebraKind::G2)).unwrap(),
    ];
    for r in &reports {
        assert_eq!(is_central_brute_force(&r.element).unwrap().central, r.is_central(), "{}", r.family);
    }
    let not_central = UEAElement::generator(&alg(AlgebraKind::So(4)), 2);
    assert!(!is_central_brute_force(&not_central).unwrap().central);
}

#[test]
fn g2_family() {
    let g2 = alg(AlgebraKind::G2);
    let g22 = g2_G(&[2], &[2]).unwrap();
    assert!(g22.is_central());
    let c = g22.element.ratio_to(&casimir(&g2).unwrap().element);
    assert!(c.is_some_and(|c| c != int(0)));
    let g33 = g2_G(&[3], &[3]).unwrap();
    assert!(g33.element.is_zero() && g33.is_central());
    let g44 = g2_G(&[4], &[4]).unwrap();
    assert!(g44.is_central());
    assert_eq!(g44.element.degree(), Some(4));
    assert!(g2_G(&[5], &[5]).unwrap().element.is_zero());
    assert!(g2_G(&[8], &[8]).is_err());
}

#[test]
fn g2_degree_seven_polynomial_route() {
    let report = g2_det_check(&G2DetMode::Polynomial).unwrap();
    assert!(report.verified());
    assert_eq!(report.constant, Some(int(5040)));
    assert!(report.det_invariant);
    assert!(report.skew_det_zero);
}

fn arb_kind() -> impl Strategy<Value = AlgebraKind> {
    prop_oneof![Just(AlgebraKind::So(4)), Just(AlgebraKind::Gl(2)), Just(AlgebraKind::G2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn engine_agrees_with_rewriter(kind in arb_kind(), seed in any::<u64>()) {
        let a = alg(kind);
        let mut r = rng(seed);
        let word = random_word(&a, 4, &mut r);
        let fast = pbw_normalize(&a, &word).unwrap();
        prop_assert_eq!(&fast, &brute_force_normalize(&a, &word).unwrap());
        prop_assert!(fast.degree().unwrap_or(0) <= word.len());
    }

    #[test]
    fn multiplication_is_associative(kind in arb_kind(), seed in any::<u64>()) {
        let a = alg(kind);
        let mut r = rng(seed);
        let mut factor = || pbw_normalize(&a, &random_word(&a, 2, &mut r)).unwrap();
        let (x, y, z) = (factor(), factor(), factor());
        let left = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
        let right = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutator_respects_filtration(kind in arb_kind(), seed in any::<u64>()) {
        let a = alg(kind);
        let mut r = rng(seed);
        let t = pbw_normalize(&a, &random_word(&a, 3, &mut r)).unwrap();
        let g = random_vector(&a, &mut r);
        let fast = commutator(&g, &t).unwrap();
        prop_assert_eq!(&fast, &brute_force_commutator(&g, &t).unwrap());
        if let (Some(dc), Some(dt)) = (fast.degree(), t.degree()) {
            prop_assert!(dc <= dt);
        }
    }

    #[test]
    fn centrality_ignores_rescaling(num in -5i64..=5, den in 1i64..=4, n in 3usize..=5) {
        prop_assume!(num != 0);
        let a = alg(AlgebraKind::So(n));
        let c = ratio(num, den);
        let cas = casimir(&a).unwrap().element;
        prop_assert!(is_central(&cas.scale(&c)).unwrap().central);
        let g = UEAElement::generator(&a, 0);
        prop_assert!(!is_central(&g.scale(&c)).unwrap().central);
    }

    #[test]
    fn sym_product_is_order_blind(seed in any::<u64>()) {
        let a = alg(AlgebraKind::So(4));
        let mut r = rng(seed);
        let xs: Vec<LieVector> = (0..3).map(|_| random_vector(&a, &mut r)).collect();
        let rev: Vec<LieVector> = xs.iter().rev().cloned().collect();
        prop_assert_eq!(sym_product(&a, &xs).unwrap(), sym_product(&a, &rev).unwrap());
    }
}
