//! Memoized PBW multiplication.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use dashmap::DashMap;
use num_traits::Zero;

use super::element::PbwMonomial;
use crate::exact_math::rational::{int, ratio, Rational};
use crate::exact_math::tensor::accumulate;
use crate::lie_algebras::{AlgebraKind, AlgebraRef};

pub(crate) type Terms = BTreeMap<PbwMonomial, Rational>;
type Products = Arc<Vec<(PbwMonomial, Rational)>>;

/// Multiplication by a single generator on the right of a normal-ordered
/// monomial, with every result cached. Symmetrized monomials are cached as
/// well.
pub struct PbwEngine {
    alg: AlgebraRef,
    products: DashMap<(PbwMonomial, u16), Products>,
    symmetrized: DashMap<PbwMonomial, Arc<Terms>>,
}

impl PbwEngine {
    pub fn new(alg: &AlgebraRef) -> Self {
        Self { alg: alg.clone(), products: DashMap::new(), symmetrized: DashMap::new() }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    /// Number of cached monomial-times-generator products.
    pub fn cached_products(&self) -> usize {
        self.products.len()
    }

    /// Normal form of `m * x_b` for a nondecreasing `m`.
    ///
    /// With `m = m' x_c` and `c > b`, `m' x_c x_b = (m' x_b) x_c + m' [x_c, x_b]`,
    /// and both pieces are shorter or already closer to normal order.
    pub fn mul_generator(&self, m: &[u16], b: u16) -> Products {
        match m.last() {
            None => return Arc::new(vec![(PbwMonomial::from_slice(&[b]), int(1))]),
            Some(&c) if c <= b => {
                let mut out = PbwMonomial::from_slice(m);
                out.push(b);
                return Arc::new(vec![(out, int(1))]);
            }
            _ => {}
        }
        let key = (PbwMonomial::from_slice(m), b);
        if let Some(hit) = self.products.get(&key) {
            return hit.clone();
        }
        let (prefix, c) = (&m[..m.len() - 1], m[m.len() - 1]);
        let mut acc: HashMap<PbwMonomial, Rational> = HashMap::new();
        for (u, x) in self.mul_generator(prefix, b).iter() {
            for (w, y) in self.mul_generator(u, c).iter() {
                *acc.entry(w.clone()).or_insert_with(Rational::zero) += x * y;
            }
        }
        for (g, k) in self.alg.bracket_basis(c as usize, b as usize) {
            for (u, x) in self.mul_generator(prefix, *g as u16).iter() {
                *acc.entry(u.clone()).or_insert_with(Rational::zero) += k * x;
            }
        }
        let mut out: Vec<(PbwMonomial, Rational)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let out = Arc::new(out);
        self.products.insert(key, out.clone());
        out
    }

    /// `terms * x_b`.
    pub(crate) fn mul_terms_generator(&self, terms: &Terms, b: u16) -> Terms {
        let mut out = Terms::new();
        for (m, c) in terms {
            for (w, x) in self.mul_generator(m, b).iter() {
                accumulate(&mut out, w.clone(), &(c * x));
            }
        }
        out
    }

    /// `terms * x_{w_1} * .. * x_{w_r}`.
    pub(crate) fn mul_terms_word(&self, terms: Terms, word: &[u16]) -> Terms {
        word.iter().fold(terms, |acc, &b| self.mul_terms_generator(&acc, b))
    }

    /// Normal form of the symmetrized product of the multiset `s` (sorted):
    /// `sym(S) = sum over distinct a in S of mult(a)/|S| * sym(S - a) * x_a`.
    pub fn symmetrized_monomial(&self, s: &[u16]) -> Arc<Terms> {
        if s.len() <= 1 {
            let mut t = Terms::new();
            t.insert(PbwMonomial::from_slice(s), int(1));
            return Arc::new(t);
        }
        if let Some(hit) = self.symmetrized.get(s) {
            return hit.clone();
        }
        let k = s.len() as i64;
        let mut out = Terms::new();
        let mut t = 0;
        while t < s.len() {
            let a = s[t];
            let mult = s[t..].iter().take_while(|&&x| x == a).count();
            let mut rest = PbwMonomial::from_slice(s);
            rest.remove(t);
            let weight = ratio(mult as i64, k);
            let part = self.mul_terms_generator(&self.symmetrized_monomial(&rest), a);
            for (m, c) in part {
                accumulate(&mut out, m, &(&c * &weight));
            }
            t += mult;
        }
        let out = Arc::new(out);
        self.symmetrized.insert(PbwMonomial::from_slice(s), out.clone());
        out
    }
}

/// Shared engine for `alg`. Engines are kept per algebra kind for the
/// cached algebra instances; any other instance (such as a g2 built with a
/// non-default basis order) gets a fresh engine.
pub fn engine(alg: &AlgebraRef) -> Arc<PbwEngine> {
    static ENGINES: OnceLock<Mutex<HashMap<AlgebraKind, Arc<PbwEngine>>>> = OnceLock::new();
    let map = ENGINES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("engine registry poisoned");
    let e = guard.entry(alg.kind()).or_insert_with(|| Arc::new(PbwEngine::new(alg)));
    if Arc::ptr_eq(e.algebra(), alg) {
        e.clone()
    } else if crate::lie_algebras::algebra(alg.kind()).is_ok_and(|shared| Arc::ptr_eq(&shared, alg)) {
        *e = Arc::new(PbwEngine::new(alg));
        e.clone()
    } else {
        Arc::new(PbwEngine::new(alg))
    }
}
