use casimir_core::central_elements::casimir;
use casimir_core::exact_math::rational::{int, ratio};
use casimir_core::exact_math::{perfect_matchings, signed_permutations, subsets, SparseTensor};
use casimir_core::lie_algebras::{
    build_l, derivation_matrix, g2_generator, make_g2, make_g2_with_order, make_gl, make_so, LieAlgebra,
    LieVector,
};
use casimir_core::octonions::{omega3, Octonion, IMAG};

fn index_of(alg: &LieAlgebra, pair: (usize, usize)) -> usize {
    // gl_N lists E_ij in row-major order and records no pair table.
    if alg.basis_pairs().is_empty() {
        return pair.0 * alg.rep_dim() + pair.1;
    }
    alg.basis_pairs().iter().position(|&p| p == pair).expect("pair in basis")
}

fn vector(alg: &LieAlgebra, terms: &[((usize, usize), i64)]) -> LieVector {
    let sparse: Vec<_> = terms.iter().map(|&(p, c)| (index_of(alg, p), int(c))).collect();
    LieVector::from_sparse(alg.dim(), &sparse)
}

#[test]
fn antisymmetrize_examples() {
    let mut t = SparseTensor::zeros(vec![3, 3]);
    t.set(vec![0, 1], int(1)).unwrap();
    let a = t.antisymmetrize(&[0, 1]).unwrap();
    assert_eq!(a.get(&[0, 1]), ratio(1, 2));
    assert_eq!(a.get(&[1, 0]), ratio(-1, 2));
    assert_eq!(a.nnz(), 2);
    assert_eq!(a.antisymmetrize(&[0, 1]).unwrap(), a);

    let mut sym = SparseTensor::zeros(vec![3, 3]);
    sym.set(vec![0, 2], int(5)).unwrap();
    sym.set(vec![2, 0], int(5)).unwrap();
    assert!(sym.antisymmetrize(&[0, 1]).unwrap().is_zero());

    let mut bad = SparseTensor::zeros(vec![2, 3]);
    bad.set(vec![0, 0], int(1)).unwrap();
    assert!(bad.antisymmetrize(&[0, 1]).is_err());
}

#[test]
fn enumeration_counts() {
    assert_eq!(signed_permutations(1).count(), 1);
    let two: Vec<_> = signed_permutations(2).map(|(p, s)| (p.image().to_vec(), s)).collect();
    assert_eq!(two, vec![(vec![0, 1], 1), (vec![1, 0], -1)]);
    let four: Vec<_> = signed_permutations(4).collect();
    assert_eq!(four.len(), 24);
    assert_eq!(four.iter().filter(|(_, s)| *s > 0).count(), 12);
    for n in 2..=5 {
        assert_eq!(signed_permutations(n).map(|(_, s)| s as i64).sum::<i64>(), 0);
    }
    assert_eq!(subsets(3, 2).collect::<Vec<_>>(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    assert_eq!(subsets(5, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    assert_eq!(subsets(6, 3).count(), 20);
    assert_eq!(perfect_matchings(&[0, 1, 2, 3, 4, 5]).unwrap().len(), 15);
    let signs: Vec<i8> = perfect_matchings(&[0, 1, 2, 3]).unwrap().into_iter().map(|(_, s)| s).collect();
    assert_eq!(signs, vec![1, -1, 1]);
    assert!(perfect_matchings(&[0, 1, 2]).is_err());
}

#[test]
fn alternator_contraction_reproduces_matching_expansion() {
    // eps_{abcd} A_ab A_cd / (2^2 2!) against the matching sum for a generic skew A.
    let vals = [[0, 2, -3, 5], [-2, 0, 7, 1], [3, -7, 0, 4], [-5, -1, -4, 0]];
    let mut a = SparseTensor::zeros(vec![4, 4]);
    for (i, row) in vals.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if *v != 0 {
                a.set(vec![i, j], int(*v)).unwrap();
            }
        }
    }
    let eps = SparseTensor::alternator(4);
    let once = eps.contract(&a, &[(0, 0), (1, 1)]).unwrap();
    let twice = once.contract(&a, &[(0, 0), (1, 1)]).unwrap();
    let via_alternator = twice.scalar().unwrap() / int(8);
    let via_matchings = perfect_matchings(&[0, 1, 2, 3])
        .unwrap()
        .into_iter()
        .map(|(pairs, s)| pairs.iter().fold(int(s as i64), |acc, &(p, q)| acc * a.get(&[p, q])))
        .fold(int(0), |acc, t| acc + t);
    assert_eq!(via_alternator, via_matchings);
    assert_eq!(via_matchings, int(2 * 4 - (-3) + 5 * 7));
}

#[test]
fn gl_examples() {
    let gl1 = make_gl(1).unwrap();
    assert!(gl1.structure_constants().is_zero());
    let gl2 = make_gl(2).unwrap();
    let e12 = vector(&gl2, &[((0, 1), 1)]);
    let e21 = vector(&gl2, &[((1, 0), 1)]);
    assert_eq!(gl2.bracket(&e12, &e21), vector(&gl2, &[((0, 0), 1), ((1, 1), -1)]));
    let gl3 = make_gl(3).unwrap();
    assert_eq!(gl3.dim(), 9);
    assert!(gl3.check_jacobi().is_ok());
    assert!(gl3.check_representation().is_ok());
}

#[test]
fn so_examples() {
    let so3 = make_so(3).unwrap();
    let f12 = vector(&so3, &[((0, 1), 1)]);
    let f23 = vector(&so3, &[((1, 2), 1)]);
    assert_eq!(so3.bracket(&f12, &f23), vector(&so3, &[((0, 2), 1)]));
    let so4 = make_so(4).unwrap();
    assert!(so4.bracket(&vector(&so4, &[((0, 1), 1)]), &vector(&so4, &[((2, 3), 1)])).is_zero());
    assert_eq!(make_so(5).unwrap().dim(), 10);
    for n in 2..=6 {
        let alg = make_so(n).unwrap();
        assert!(alg.check_antisymmetry());
        assert!(alg.check_jacobi().is_ok(), "so{n}");
        assert!(alg.check_representation().is_ok(), "so{n}");
    }
}

#[test]
fn derivation_matrices() {
    let e = Octonion::unit;
    assert!(derivation_matrix(&e(3), &e(3)).unwrap().is_zero());
    assert!(derivation_matrix(&e(0), &e(3)).is_err());
    for i in 1..=IMAG {
        for j in 1..=IMAG {
            let m = derivation_matrix(&e(i), &e(j)).unwrap();
            assert!(m.is_skew(), "G{i}{j}");
            let swapped = derivation_matrix(&e(j), &e(i)).unwrap();
            assert_eq!(m.scale(&int(-1)), swapped);
        }
    }
    // e1, e2, e3 span a quaternion subalgebra, so G_12 kills e3.
    let g12 = derivation_matrix(&e(1), &e(2)).unwrap();
    for r in 0..IMAG {
        assert_eq!(*g12.get(r, 2), int(0));
    }
}

#[test]
fn g2_structure() {
    let g2 = make_g2().unwrap();
    assert_eq!(g2.dim(), 14);
    assert_eq!(g2.rep_dim(), 7);
    assert!(g2.check_jacobi().is_ok());
    assert!(g2.check_representation().is_ok());
    for i in 0..IMAG {
        assert!(g2_generator(&g2, i, i).unwrap().is_zero());
        for j in 0..IMAG {
            let gij = g2_generator(&g2, i, j).unwrap();
            assert_eq!(g2_generator(&g2, j, i).unwrap(), -&gij);
        }
    }
    let w = omega3();
    for l in 0..IMAG {
        let mut total = g2.zero_vector();
        for i in 0..IMAG {
            for j in 0..IMAG {
                let c = w.get(&[i, j, l]);
                total.add_scaled(&g2_generator(&g2, i, j).unwrap(), &c);
            }
        }
        assert!(total.is_zero(), "omega relation {l}");
    }
}

#[test]
fn generator_matrices() {
    let so3 = make_so(3).unwrap();
    let l = build_l(&so3).unwrap();
    assert!(l.entry(0, 0).is_zero());
    assert_eq!(*l.entry(0, 1), vector(&so3, &[((0, 1), 1)]));
    assert_eq!(*l.entry(1, 0), vector(&so3, &[((0, 1), -1)]));
    assert_eq!(*l.entry(2, 1), vector(&so3, &[((1, 2), -1)]));

    let gl2 = make_gl(2).unwrap();
    let l = build_l(&gl2).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(*l.entry(i, j), vector(&gl2, &[((i, j), 1)]));
        }
    }

    for alg in [make_gl(3).unwrap(), make_so(5).unwrap(), make_g2().unwrap()] {
        let l = build_l(&alg).unwrap();
        assert!(l.failing_relation().is_none(), "{}", alg.name());
        assert!(l.check_equivariance().is_ok(), "{}", alg.name());
    }
    let g2 = make_g2().unwrap();
    assert_eq!(build_l(&g2).unwrap().relations().len(), 1 + IMAG);
}

#[test]
fn g2_basis_order_does_not_change_centrality() {
    let forward = make_g2().unwrap();
    let order: Vec<(usize, usize)> = (0..IMAG).flat_map(|i| (i + 1..IMAG).map(move |j| (i, j))).rev().collect();
    let backward = make_g2_with_order(&order).unwrap();
    assert_ne!(forward.labels(), backward.labels());
    assert!(casimir(&forward).unwrap().is_central());
    assert!(casimir(&backward).unwrap().is_central());
}
