use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};
use smallvec::SmallVec;

use crate::exact_math::rational::{int, Rational};
use crate::exact_math::tensor::accumulate;
use crate::par;

/// Matrix tag reserved for auxiliary scalar variables such as the spectral
/// parameter of a characteristic polynomial.
pub const AUX: u8 = u8::MAX;

/// A variable `m_ij` of matrix `mat` (zero-based indices). Several matrices
/// can coexist (`M`, `M'`, ..); auxiliary scalars use `mat == AUX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub mat: u8,
    pub row: u8,
    pub col: u8,
}

impl Var {
    pub fn m(row: usize, col: usize) -> Self {
        Self::of(0, row, col)
    }

    pub fn of(mat: u8, row: usize, col: usize) -> Self {
        Self { mat, row: row as u8, col: col as u8 }
    }

    pub fn aux(index: usize) -> Self {
        Self { mat: AUX, row: index as u8, col: 0 }
    }

    pub fn is_aux(&self) -> bool {
        self.mat == AUX
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_aux() {
            return if self.row == 0 { write!(f, "lambda") } else { write!(f, "t{}", self.row) };
        }
        let primes = "'".repeat(self.mat as usize);
        write!(f, "m{primes}{}_{}", self.row + 1, self.col + 1)
    }
}

/// Commutative monomial: variables in nondecreasing order, repeats allowed.
pub type Monomial = SmallVec<[Var; 8]>;

pub fn monomial_mul(a: &[Var], b: &[Var]) -> Monomial {
    let mut out = Monomial::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn insert_sorted(m: &mut Monomial, v: Var) {
    let pos = m.partition_point(|x| *x <= v);
    m.insert(pos, v);
}

/// How the entries of `M` are constrained when a polynomial is read as a
/// function of the matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// Independent entries.
    General,
    /// Skew-symmetric `M`: `m_ji = -m_ij`, `m_ii = 0`, so only variables with
    /// `row < col` survive.
    Skew,
}

/// Commutative polynomial with exact rational coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        accumulate(&mut p.terms, Monomial::new(), &c);
        p
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::from_slice(&[v]), int(1))
    }

    pub fn m(i: usize, j: usize) -> Self {
        Self::var(Var::m(i, j))
    }

    pub fn term(mono: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        let mut mono = mono;
        mono.sort_unstable();
        accumulate(&mut p.terms, mono, &c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (mut m, c) in terms {
            m.sort_unstable();
            accumulate(&mut p.terms, m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[Var]) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.len());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn add_assign_scaled(&mut self, other: &MPolynomial, c: &Rational) {
        for (m, v) in &other.terms {
            accumulate(&mut self.terms, m.clone(), &(v * c));
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Applies the skew pattern: `m_ii -> 0`, `m_ji -> -m_ij` for `j > i`.
    pub fn skew_substitute(&self) -> Self {
        let mut out = BTreeMap::new();
        'terms: for (m, c) in &self.terms {
            let mut sign = false;
            let mut mono = Monomial::with_capacity(m.len());
            for v in m {
                if v.is_aux() {
                    mono.push(*v);
                    continue;
                }
                match v.row.cmp(&v.col) {
                    std::cmp::Ordering::Equal => continue 'terms,
                    std::cmp::Ordering::Less => mono.push(*v),
                    std::cmp::Ordering::Greater => {
                        sign = !sign;
                        mono.push(Var { mat: v.mat, row: v.col, col: v.row });
                    }
                }
            }
            mono.sort_unstable();
            accumulate(&mut out, mono, &if sign { -c.clone() } else { c.clone() });
        }
        Self { terms: out }
    }

    pub fn restrict(&self, domain: Domain) -> Self {
        match domain {
            Domain::General => self.clone(),
            Domain::Skew => self.skew_substitute(),
        }
    }

    /// Substitutes every variable by a polynomial.
    pub fn substitute(&self, image: impl Fn(Var) -> MPolynomial) -> Self {
        let mut cache: HashMap<Var, MPolynomial> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for v in m {
                let img = cache.entry(*v).or_insert_with(|| image(*v));
                acc = &acc * img;
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Rational `c` with `self = c * other`, if one exists.
    pub fn ratio_to(&self, other: &MPolynomial) -> Option<Rational> {
        if other.is_zero() {
            return self.is_zero().then(|| int(1));
        }
        let (m, v) = other.terms.iter().next()?;
        let c = self.coeff(m) / v;
        (other.scale(&c) == *self).then_some(c)
    }

    /// Applies a derivation given by the images of single variables
    /// (Leibniz rule). `image` must return linear forms.
    pub fn derive(&self, image: impl Fn(Var) -> Vec<(Var, Rational)> + Sync) -> Self {
        let terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        let chunks: Vec<&[(&Monomial, &Rational)]> = terms.chunks(64).collect();
        let merged = par::map_reduce(
            &chunks,
            HashMap::<Monomial, Rational>::new,
            |chunk| {
                let mut acc: HashMap<Monomial, Rational> = HashMap::new();
                let mut cache: HashMap<Var, Vec<(Var, Rational)>> = HashMap::new();
                for (m, c) in chunk.iter() {
                    let mut t = 0;
                    while t < m.len() {
                        let v = m[t];
                        let mut e = 1;
                        while t + e < m.len() && m[t + e] == v {
                            e += 1;
                        }
                        let mut rest: Monomial = (*m).clone();
                        rest.remove(t);
                        let scaled = (*c).clone() * int(e as i64);
                        for (w, k) in cache.entry(v).or_insert_with(|| image(v)).iter() {
                            let mut mono = rest.clone();
                            insert_sorted(&mut mono, *w);
                            add_hash(&mut acc, mono, &scaled * k);
                        }
                        t += e;
                    }
                }
                acc
            },
            merge_hash,
        );
        Self::from_hash(merged)
    }

    pub(crate) fn from_hash(map: HashMap<Monomial, Rational>) -> Self {
        Self { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

pub(crate) fn add_hash(map: &mut HashMap<Monomial, Rational>, key: Monomial, value: Rational) {
    if value.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += value;
        }
    }
}

pub(crate) fn merge_hash(
    mut a: HashMap<Monomial, Rational>,
    b: HashMap<Monomial, Rational>,
) -> HashMap<Monomial, Rational> {
    if a.len() < b.len() {
        return merge_hash(b, a);
    }
    for (k, v) in b {
        add_hash(&mut a, k, v);
    }
    a
}

impl std::ops::Add for &MPolynomial {
    type Output = MPolynomial;
    fn add(self, rhs: &MPolynomial) -> MPolynomial {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            accumulate(&mut out.terms, m.clone(), v);
        }
        out
    }
}

impl std::ops::Sub for &MPolynomial {
    type Output = MPolynomial;
    fn sub(self, rhs: &MPolynomial) -> MPolynomial {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            accumulate(&mut out.terms, m.clone(), &-v.clone());
        }
        out
    }
}

impl std::ops::Neg for &MPolynomial {
    type Output = MPolynomial;
    fn neg(self) -> MPolynomial {
        self.scale(&int(-1))
    }
}

impl std::ops::Neg for MPolynomial {
    type Output = MPolynomial;
    fn neg(self) -> MPolynomial {
        -&self
    }
}

impl std::ops::Mul for &MPolynomial {
    type Output = MPolynomial;
    fn mul(self, rhs: &MPolynomial) -> MPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return MPolynomial::zero();
        }
        let left: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        let work = left.len() * rhs.terms.len();
        let product = |chunk: &[(&Monomial, &Rational)]| {
            let mut acc: HashMap<Monomial, Rational> = HashMap::new();
            for (m, c) in chunk {
                for (n, d) in &rhs.terms {
                    add_hash(&mut acc, monomial_mul(m, n), *c * d);
                }
            }
            acc
        };
        let merged = if work < 4096 {
            product(&left)
        } else {
            let chunks: Vec<&[(&Monomial, &Rational)]> = left.chunks(16).collect();
            par::map_reduce(&chunks, HashMap::new, |c| product(c), merge_hash)
        };
        MPolynomial::from_hash(merged)
    }
}

impl fmt::Display for MPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (t, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (t > 0, negative) {
                (true, true) => write!(f, " - ")?,
                (true, false) => write!(f, " + ")?,
                (false, true) => write!(f, "-")?,
                (false, false) => {}
            }
            let c = c.abs();
            let vars: Vec<String> = m.iter().map(|v| v.to_string()).collect();
            match (vars.is_empty(), c == int(1)) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Square matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<MPolynomial>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> MPolynomial) -> Self {
        Self { n, entries: (0..n * n).map(|t| f(t / n, t % n)).collect() }
    }

    /// `(m_ij)` of matrix `mat` with independent entries.
    pub fn symbolic(n: usize, mat: u8) -> Self {
        Self::from_fn(n, |i, j| MPolynomial::var(Var::of(mat, i, j)))
    }

    /// Skew-symmetric symbolic matrix over the variables `m_ij`, `i < j`.
    pub fn skew_symbolic(n: usize, mat: u8) -> Self {
        Self::from_fn(n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => MPolynomial::var(Var::of(mat, i, j)),
            std::cmp::Ordering::Greater => -&MPolynomial::var(Var::of(mat, j, i)),
            std::cmp::Ordering::Equal => MPolynomial::zero(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &MPolynomial {
        &self.entries[i * self.n + j]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len());
        Self::from_fn(rows.len(), |a, b| self.get(rows[a], cols[b]).clone())
    }

    pub fn principal(&self, idx: &[usize]) -> Self {
        self.submatrix(idx, idx)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let mut acc = MPolynomial::zero();
            for k in 0..n {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let id = Self::from_fn(self.n, |i, j| if i == j { MPolynomial::one() } else { MPolynomial::zero() });
        (0..k).fold(id, |acc, _| acc.mul(self))
    }

    pub fn is_skew(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| (self.get(i, j) + self.get(j, i)).is_zero()))
    }

    /// Determinant by the signed permutation sum.
    pub fn det(&self) -> MPolynomial {
        let perms: Vec<_> = crate::exact_math::signed_permutations(self.n).collect();
        let merged = par::map_reduce(
            &perms,
            MPolynomial::zero,
            |(p, s)| {
                let mut acc = MPolynomial::constant(int(*s as i64));
                for i in 0..self.n {
                    let e = self.get(i, p.apply(i));
                    if e.is_zero() {
                        return MPolynomial::zero();
                    }
                    acc = &acc * e;
                }
                acc
            },
            |a, b| &a + &b,
        );
        merged
    }

    /// Pfaffian by perfect matchings of the upper triangle. The matrix is
    /// assumed skew; only entries above the diagonal are read.
    pub fn pfaffian(&self) -> MPolynomial {
        let idx: Vec<usize> = (0..self.n).collect();
        let matchings = crate::exact_math::perfect_matchings(&idx).expect("even size checked by caller");
        par::map_reduce(
            &matchings,
            MPolynomial::zero,
            |(pairing, s)| {
                let mut acc = MPolynomial::constant(int(*s as i64));
                for &(p, q) in pairing {
                    acc = &acc * self.get(p, q);
                }
                acc
            },
            |a, b| &a + &b,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let a = &MPolynomial::m(0, 1) + &MPolynomial::m(1, 0);
        let sq = &a * &a;
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coeff(&[Var::m(0, 1), Var::m(1, 0)]), int(2));
        assert!((&a - &a).is_zero());
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(a.skew_substitute(), MPolynomial::zero());
    }

    #[test]
    fn skew_substitution() {
        let p = &(&MPolynomial::m(2, 0) * &MPolynomial::m(0, 1)) + &MPolynomial::m(1, 1);
        let s = p.skew_substitute();
        assert_eq!(s, MPolynomial::term(Monomial::from_slice(&[Var::m(0, 1), Var::m(0, 2)]), int(-1)));
    }

    #[test]
    fn det_and_pf_small() {
        let m = PolyMatrix::symbolic(2, 0);
        let d = m.det();
        let expect = &(&MPolynomial::m(0, 0) * &MPolynomial::m(1, 1)) - &(&MPolynomial::m(0, 1) * &MPolynomial::m(1, 0));
        assert_eq!(d, expect);
        let s = PolyMatrix::skew_symbolic(4, 0);
        assert_eq!(&s.pfaffian() * &s.pfaffian(), s.det());
    }

    #[test]
    fn ratio_detection() {
        let p = &MPolynomial::m(0, 0) + &MPolynomial::m(1, 1);
        assert_eq!(p.scale(&int(-3)).ratio_to(&p), Some(int(-3)));
        assert_eq!(MPolynomial::m(0, 0).ratio_to(&p), None);
    }
}
