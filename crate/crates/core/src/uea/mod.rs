//! The universal enveloping algebra: PBW normal forms, symmetrized products,
//! the symmetrization map `m_ij -> L_ij`, commutators and centrality.
//!
//! Basis elements are ordered by their index in the algebra's basis; a
//! monomial is in normal form when its indices are nondecreasing.

mod element;
mod engine;

use std::collections::HashMap;

use num_traits::Zero;

pub use element::{ElementJson, PbwMonomial, TermJson, UEAElement};
pub use engine::{engine, PbwEngine};

use engine::Terms;

use crate::error::{invalid, Error, Result};
use crate::exact_math::rational::{factorial, int, Rational};
use crate::exact_math::signed_permutations;
use crate::exact_math::tensor::accumulate;
use crate::lie_algebras::{AlgebraRef, LMatrix, LieVector};
use crate::par;
use crate::poly_invariants::{act, Domain, MPolynomial};

fn check_word(alg: &AlgebraRef, word: &[LieVector]) -> Result<()> {
    match word.iter().find(|v| v.dim() != alg.dim()) {
        Some(v) => Err(invalid(format!(
            "vector of dimension {} does not belong to {} (dimension {})",
            v.dim(),
            alg.name(),
            alg.dim()
        ))),
        None => Ok(()),
    }
}

/// Normal form of the product `word[0] * word[1] * ..`, using the memoized
/// engine.
pub fn pbw_normalize(alg: &AlgebraRef, word: &[LieVector]) -> Result<UEAElement> {
    check_word(alg, word)?;
    let eng = engine(alg);
    let mut terms = Terms::new();
    terms.insert(PbwMonomial::new(), int(1));
    for v in word {
        let mut next = Terms::new();
        for (a, c) in v.nonzero() {
            for (m, x) in eng.mul_terms_generator(&terms, a as u16) {
                accumulate(&mut next, m, &(&x * c));
            }
        }
        terms = next;
    }
    Ok(UEAElement::from_map(alg, terms))
}

/// Normal form of a product of basis generators `x_{w_1} .. x_{w_r}`.
pub fn normalize_basis_word(alg: &AlgebraRef, word: &[usize]) -> Result<UEAElement> {
    if let Some(&a) = word.iter().find(|&&a| a >= alg.dim()) {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: a + 1 });
    }
    let mut start = Terms::new();
    start.insert(PbwMonomial::new(), int(1));
    let w: Vec<u16> = word.iter().map(|&a| a as u16).collect();
    Ok(UEAElement::from_map(alg, engine(alg).mul_terms_word(start, &w)))
}

/// Independent normalizer: expands the word over basis generators and
/// repeatedly swaps the leftmost out-of-order adjacent pair, with no
/// caching.
pub fn brute_force_normalize(alg: &AlgebraRef, word: &[LieVector]) -> Result<UEAElement> {
    check_word(alg, word)?;
    let mut words: Vec<(Vec<u16>, Rational)> = vec![(Vec::new(), int(1))];
    for v in word {
        let mut next = Vec::new();
        for (w, c) in &words {
            for (a, x) in v.nonzero() {
                let mut w2 = w.clone();
                w2.push(a as u16);
                next.push((w2, c * x));
            }
        }
        words = next;
    }
    Ok(UEAElement::from_map(alg, brute_force_words(alg, words)))
}

fn brute_force_words(alg: &AlgebraRef, mut stack: Vec<(Vec<u16>, Rational)>) -> Terms {
    let mut out = Terms::new();
    while let Some((w, c)) = stack.pop() {
        match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            None => accumulate(&mut out, PbwMonomial::from_slice(&w), &c),
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                stack.push((swapped, c.clone()));
                for (g, k) in alg.bracket_basis(w[i] as usize, w[i + 1] as usize) {
                    let mut shorter = Vec::with_capacity(w.len() - 1);
                    shorter.extend_from_slice(&w[..i]);
                    shorter.push(*g as u16);
                    shorter.extend_from_slice(&w[i + 2..]);
                    stack.push((shorter, &c * k));
                }
            }
        }
    }
    out
}

/// Product of two elements in normal form.
pub fn multiply(a: &UEAElement, b: &UEAElement) -> Result<UEAElement> {
    a.same_algebra(b)?;
    let alg = a.algebra();
    let eng = engine(alg);
    let right: Vec<(&PbwMonomial, &Rational)> = b.terms().collect();
    let merged = par::map_reduce(
        &right,
        Terms::new,
        |(m, c)| {
            let mut t = eng.mul_terms_word(a.term_map().clone(), m);
            for v in t.values_mut() {
                *v *= *c;
            }
            t
        },
        merge_terms,
    );
    Ok(UEAElement::from_map(alg, merged))
}

fn merge_terms(mut a: Terms, b: Terms) -> Terms {
    if a.len() < b.len() {
        return merge_terms(b, a);
    }
    for (m, c) in b {
        accumulate(&mut a, m, &c);
    }
    a
}

/// `(1/k!) * sum over all k! orderings` of the product of `factors`.
pub fn sym_product(alg: &AlgebraRef, factors: &[LieVector]) -> Result<UEAElement> {
    check_word(alg, factors)?;
    let k = factors.len();
    let perms: Vec<Vec<usize>> = signed_permutations(k).map(|(p, _)| p.image().to_vec()).collect();
    let parts = par::map(&perms, |p| {
        let word: Vec<LieVector> = p.iter().map(|&i| factors[i].clone()).collect();
        pbw_normalize(alg, &word)
    });
    let mut total = UEAElement::zero(alg);
    for part in parts {
        total.add_scaled(&part?, &int(1));
    }
    Ok(total.scale(&(int(1) / factorial(k))))
}

/// Replaces every monomial `prod m_{i_t j_t}` of `p` by the symmetrized
/// product of the entries `L_{i_t j_t}`.
///
/// The entries are first expanded over the basis, giving a commutative
/// polynomial in the basis elements; each of its monomials is then mapped
/// to its symmetrized product. Linear relations among the `L_ij` are
/// resolved before any straightening happens.
pub fn symmetrize_poly(l: &LMatrix, p: &MPolynomial) -> Result<UEAElement> {
    let alg = l.algebra();
    let n = l.size();
    for v in p.variables() {
        if v.is_aux() || v.mat != 0 {
            return Err(invalid(format!("variable {v} is not an entry of M")));
        }
        if v.row as usize >= n || v.col as usize >= n {
            return Err(Error::DimensionMismatch { expected: n, found: v.row.max(v.col) as usize + 1 });
        }
    }
    let commutative = expand_commutative(l, p);
    let eng = engine(alg);
    let items: Vec<(PbwMonomial, Rational)> = commutative.into_iter().collect();
    let merged = par::map_reduce(
        &items,
        Terms::new,
        |(s, c)| {
            let mut t = (*eng.symmetrized_monomial(s)).clone();
            for v in t.values_mut() {
                *v *= c;
            }
            t
        },
        merge_terms,
    );
    Ok(UEAElement::from_map(alg, merged))
}

/// `p` with `m_ij` replaced by `L_ij`, as a commutative polynomial in the
/// basis elements (sorted index multisets).
pub fn expand_commutative(l: &LMatrix, p: &MPolynomial) -> Terms {
    let terms: Vec<_> = p.terms().collect();
    let merged = par::map_reduce(
        &terms,
        HashMap::<PbwMonomial, Rational>::new,
        |(mono, c)| {
            let mut cur: HashMap<PbwMonomial, Rational> = HashMap::from([(PbwMonomial::new(), (*c).clone())]);
            for v in mono.iter() {
                let entry = l.entry(v.row as usize, v.col as usize);
                let mut next = HashMap::new();
                for (m, x) in &cur {
                    for (a, y) in entry.nonzero() {
                        let mut m2 = m.clone();
                        let pos = m2.partition_point(|&b| b <= a as u16);
                        m2.insert(pos, a as u16);
                        *next.entry(m2).or_insert_with(Rational::zero) += x * y;
                    }
                }
                cur = next;
            }
            cur
        },
        |mut a, b| {
            for (m, c) in b {
                *a.entry(m).or_insert_with(Rational::zero) += c;
            }
            a
        },
    );
    merged.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `[g, T]` via the derivation rule on each monomial:
/// `[x_b, x_1 .. x_r] = sum_t x_1 .. [x_b, x_t] .. x_r`.
pub fn commutator(g: &LieVector, t: &UEAElement) -> Result<UEAElement> {
    let alg = t.algebra();
    check_word(alg, std::slice::from_ref(g))?;
    let eng = engine(alg);
    let items: Vec<(&PbwMonomial, &Rational)> = t.terms().collect();
    let merged = par::map_reduce(
        &items,
        Terms::new,
        |(m, c)| {
            let mut acc = Terms::new();
            for (b, gb) in g.nonzero() {
                for pos in 0..m.len() {
                    for (gamma, k) in alg.bracket_basis(b, m[pos] as usize) {
                        let mut start = Terms::new();
                        start.insert(PbwMonomial::from_slice(&m[..pos]), gb * k * *c);
                        let mut word: Vec<u16> = vec![*gamma as u16];
                        word.extend_from_slice(&m[pos + 1..]);
                        for (w, x) in eng.mul_terms_word(start, &word) {
                            accumulate(&mut acc, w, &x);
                        }
                    }
                }
            }
            acc
        },
        merge_terms,
    );
    Ok(UEAElement::from_map(alg, merged))
}

/// `[g, T]` computed as `g T - T g` with both products straightened by the
/// brute-force rewriter.
pub fn brute_force_commutator(g: &LieVector, t: &UEAElement) -> Result<UEAElement> {
    let alg = t.algebra();
    check_word(alg, std::slice::from_ref(g))?;
    let mut words = Vec::new();
    for (m, c) in t.terms() {
        for (b, gb) in g.nonzero() {
            let mut left = vec![b as u16];
            left.extend_from_slice(m);
            words.push((left, gb * c));
            let mut right = m.to_vec();
            right.push(b as u16);
            words.push((right, -(gb * c)));
        }
    }
    Ok(UEAElement::from_map(alg, brute_force_words(alg, words)))
}

/// Outcome of a centrality check. The witness is the first basis index
/// (zero-based) whose commutator with the element is nonzero, with that
/// commutator.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralityVerdict {
    pub central: bool,
    pub witness: Option<(usize, UEAElement)>,
}

fn centrality_with(t: &UEAElement, bracket: impl Fn(&LieVector, &UEAElement) -> Result<UEAElement> + Sync) -> Result<CentralityVerdict> {
    let alg = t.algebra();
    let basis: Vec<usize> = (0..alg.dim()).collect();
    // Commutators are linear in g, so the basis suffices.
    let results = par::map(&basis, |&a| bracket(&alg.basis_vector(a), t));
    for (a, r) in results.into_iter().enumerate() {
        let r = r?;
        if !r.is_zero() {
            return Ok(CentralityVerdict { central: false, witness: Some((a, r)) });
        }
    }
    Ok(CentralityVerdict { central: true, witness: None })
}

/// True when `T` commutes with every basis element.
pub fn is_central(t: &UEAElement) -> Result<CentralityVerdict> {
    centrality_with(t, commutator)
}

/// [`is_central`] computed through the brute-force rewriter.
pub fn is_central_brute_force(t: &UEAElement) -> Result<CentralityVerdict> {
    centrality_with(t, brute_force_commutator)
}

/// Both sides of `symmetrize(g . p) = [g, symmetrize(p)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivarianceVerdict {
    pub holds: bool,
    pub lhs: UEAElement,
    pub rhs: UEAElement,
}

pub fn equivariance_check(l: &LMatrix, p: &MPolynomial, g: &LieVector) -> Result<EquivarianceVerdict> {
    let alg = l.algebra();
    let lhs = symmetrize_poly(l, &act(alg, g, p, Domain::General)?)?;
    let rhs = commutator(g, &symmetrize_poly(l, p)?)?;
    Ok(EquivarianceVerdict { holds: lhs == rhs, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::rational::ratio;
    use crate::lie_algebras::{algebra, build_l, AlgebraKind};

    fn so(n: usize) -> AlgebraRef {
        algebra(AlgebraKind::So(n)).unwrap()
    }

    fn index_of(alg: &AlgebraRef, label: &str) -> usize {
        alg.labels().iter().position(|l| l == label).unwrap_or_else(|| panic!("no {label} in {:?}", alg.labels()))
    }

    #[test]
    fn so3_straightening() {
        let alg = so(3);
        let (f12, f13, f23) = (index_of(&alg, "F12"), index_of(&alg, "F13"), index_of(&alg, "F23"));
        let e = normalize_basis_word(&alg, &[f23, f12]).unwrap();
        let expect = UEAElement::from_terms(
            &alg,
            [(PbwMonomial::from_slice(&[f12 as u16, f23 as u16]), int(1)), (PbwMonomial::from_slice(&[f13 as u16]), int(-1))],
        )
        .unwrap();
        assert_eq!(e, expect);
    }

    #[test]
    fn gl2_straightening() {
        let alg = algebra(AlgebraKind::Gl(2)).unwrap();
        let (e11, e12, e21, e22) =
            (index_of(&alg, "E11"), index_of(&alg, "E12"), index_of(&alg, "E21"), index_of(&alg, "E22"));
        let e = normalize_basis_word(&alg, &[e21, e12]).unwrap();
        let expect = UEAElement::from_terms(
            &alg,
            [
                (PbwMonomial::from_slice(&[e12 as u16, e21 as u16]), int(1)),
                (PbwMonomial::from_slice(&[e22 as u16]), int(1)),
                (PbwMonomial::from_slice(&[e11 as u16]), int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(e, expect);
    }

    #[test]
    fn brute_force_agrees_on_fixed_words() {
        let alg = so(4);
        for word in [vec![5, 4, 3, 2, 1], vec![3, 0, 3, 1], vec![]] {
            let vecs: Vec<LieVector> = word.iter().map(|&a| alg.basis_vector(a)).collect();
            assert_eq!(pbw_normalize(&alg, &vecs).unwrap(), brute_force_normalize(&alg, &vecs).unwrap());
        }
        assert_eq!(brute_force_normalize(&alg, &[]).unwrap(), UEAElement::one(&alg));
    }

    #[test]
    fn symmetrized_pair_is_half_anticommutator() {
        let alg = so(3);
        let (x, y) = (alg.basis_vector(2), alg.basis_vector(0));
        let s = sym_product(&alg, &[x.clone(), y.clone()]).unwrap();
        let xy = pbw_normalize(&alg, &[x.clone(), y.clone()]).unwrap();
        let yx = pbw_normalize(&alg, &[y, x]).unwrap();
        assert_eq!(s, (&xy + &yx).scale(&ratio(1, 2)));
    }

    #[test]
    fn symmetrize_matches_sym_product() {
        let alg = so(4);
        let l = build_l(&alg).unwrap();
        let p = &(&MPolynomial::m(0, 1) * &MPolynomial::m(2, 3)) * &MPolynomial::m(1, 2);
        let direct = sym_product(&alg, &[l.entry(0, 1).clone(), l.entry(2, 3).clone(), l.entry(1, 2).clone()]).unwrap();
        assert_eq!(symmetrize_poly(&l, &p).unwrap(), direct);
    }

    #[test]
    fn so3_casimir_is_central() {
        let alg = so(3);
        let l = build_l(&alg).unwrap();
        let sq = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .fold(MPolynomial::zero(), |acc, (i, j)| &acc + &(&MPolynomial::m(i, j) * &MPolynomial::m(i, j)));
        let c = symmetrize_poly(&l, &sq).unwrap();
        assert_eq!(c.num_terms(), 3);
        assert!(c.terms().all(|(m, v)| m.len() == 2 && m[0] == m[1] && *v == int(2)));
        assert!(is_central(&c).unwrap().central);
        assert!(is_central_brute_force(&c).unwrap().central);
        let single = UEAElement::generator(&alg, 0);
        let v = is_central(&single).unwrap();
        assert!(!v.central && v.witness.is_some());
    }

    #[test]
    fn trace_symmetrizes_to_zero_over_so() {
        let alg = so(4);
        let l = build_l(&alg).unwrap();
        assert!(symmetrize_poly(&l, &crate::poly_invariants::trace_poly(4)).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let alg = so(3);
        let e = normalize_basis_word(&alg, &[2, 1, 0]).unwrap();
        let text = serde_json::to_string(&e.to_json()).unwrap();
        let back = UEAElement::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(e, back);
    }
}
