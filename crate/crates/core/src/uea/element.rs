use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};
use crate::exact_math::rational::{self, int, Rational};
use crate::exact_math::tensor::accumulate;
use crate::lie_algebras::{algebra, AlgebraKind, AlgebraRef};

/// Nondecreasing sequence of zero-based basis indices.
pub type PbwMonomial = SmallVec<[u16; 8]>;

/// An element of the enveloping algebra in PBW normal form: a rational
/// combination of nondecreasing monomials. No zero coefficient is stored.
#[derive(Clone, Debug)]
pub struct UEAElement {
    algebra: AlgebraRef,
    terms: BTreeMap<PbwMonomial, Rational>,
}

impl PartialEq for UEAElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.kind() == other.algebra.kind() && self.terms == other.terms
    }
}

impl Eq for UEAElement {}

impl UEAElement {
    pub fn zero(alg: &AlgebraRef) -> Self {
        Self { algebra: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &AlgebraRef) -> Self {
        Self::scalar(alg, int(1))
    }

    pub fn scalar(alg: &AlgebraRef, c: Rational) -> Self {
        let mut e = Self::zero(alg);
        accumulate(&mut e.terms, PbwMonomial::new(), &c);
        e
    }

    /// The degree-one element `x_a`.
    pub fn generator(alg: &AlgebraRef, a: usize) -> Self {
        let mut e = Self::zero(alg);
        e.terms.insert(PbwMonomial::from_slice(&[a as u16]), int(1));
        e
    }

    /// Builds an element from already normal-ordered monomials; rejects
    /// decreasing monomials and indices outside the basis.
    pub fn from_terms(alg: &AlgebraRef, terms: impl IntoIterator<Item = (PbwMonomial, Rational)>) -> Result<Self> {
        let mut e = Self::zero(alg);
        for (m, c) in terms {
            if m.windows(2).any(|w| w[0] > w[1]) {
                return Err(invalid(format!("monomial {m:?} is not in PBW order")));
            }
            if let Some(&a) = m.iter().find(|&&a| a as usize >= alg.dim()) {
                return Err(Error::DimensionMismatch { expected: alg.dim(), found: a as usize + 1 });
            }
            accumulate(&mut e.terms, m, &c);
        }
        Ok(e)
    }

    pub(crate) fn from_map(alg: &AlgebraRef, terms: BTreeMap<PbwMonomial, Rational>) -> Self {
        Self { algebra: alg.clone(), terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Rational)> {
        self.terms.iter()
    }

    pub(crate) fn term_map(&self) -> &BTreeMap<PbwMonomial, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u16]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest monomial length, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    /// Part of exactly the given degree.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.len() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        Self { algebra: self.algebra.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.algebra);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        Self { algebra: self.algebra.clone(), terms }
    }

    pub fn add_scaled(&mut self, other: &UEAElement, c: &Rational) {
        for (m, v) in &other.terms {
            accumulate(&mut self.terms, m.clone(), &(v * c));
        }
    }

    /// `c` with `self = c * other`, when `other` is nonzero and such a
    /// constant exists.
    pub fn ratio_to(&self, other: &UEAElement) -> Option<Rational> {
        let (m, c) = other.terms.iter().next()?;
        let r = self.coeff(m) / c;
        (other.scale(&r) == *self).then_some(r)
    }

    pub(crate) fn same_algebra(&self, other: &UEAElement) -> Result<()> {
        if self.algebra.kind() != other.algebra.kind() {
            return Err(invalid(format!(
                "elements live in different algebras: {} and {}",
                self.algebra.name(),
                other.algebra.name()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            algebra: self.algebra.name(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { monomial: m.iter().map(|&a| a as usize + 1).collect(), coeff: rational::to_string(c) })
                .collect(),
        }
    }

    pub fn from_json(doc: &ElementJson) -> Result<Self> {
        let alg = algebra(AlgebraKind::parse(&doc.algebra)?)?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in &doc.terms {
            if t.monomial.contains(&0) {
                return Err(invalid("monomial indices are 1-based"));
            }
            let m: PbwMonomial = t.monomial.iter().map(|&a| (a - 1) as u16).collect();
            terms.push((m, rational::parse(&t.coeff)?));
        }
        Self::from_terms(&alg, terms)
    }
}

impl std::ops::Add for &UEAElement {
    type Output = UEAElement;
    fn add(self, other: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        out.add_scaled(other, &int(1));
        out
    }
}

impl std::ops::Sub for &UEAElement {
    type Output = UEAElement;
    fn sub(self, other: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        out.add_scaled(other, &int(-1));
        out
    }
}

impl fmt::Display for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let labels = self.algebra.labels();
        for (t, (m, c)) in self.terms.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<&str> = m.iter().map(|&a| labels[a as usize].as_str()).collect();
            if word.is_empty() {
                write!(f, "{c}")?;
            } else if *c == int(1) {
                write!(f, "{}", word.join("*"))?;
            } else {
                write!(f, "({c})*{}", word.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Serialized form of a [`UEAElement`]: 1-based basis indices, coefficients
/// as `p/q` strings, terms sorted by monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub algebra: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<usize>,
    pub coeff: String,
}
