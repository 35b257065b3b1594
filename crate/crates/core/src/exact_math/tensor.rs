use std::collections::BTreeMap;

use num_traits::Zero;

use super::combinatorics::{signed_permutations, sign_of_sequence};
use super::rational::{factorial, int, Rational};
use crate::error::{invalid, Error, Result};

pub type MultiIndex = Vec<usize>;

/// Sparse tensor over the rationals. Zero entries are never stored and every
/// stored index lies within `dims`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTensor {
    dims: Vec<usize>,
    entries: BTreeMap<MultiIndex, Rational>,
}

impl SparseTensor {
    pub fn zeros(dims: Vec<usize>) -> Self {
        Self { dims, entries: BTreeMap::new() }
    }

    /// The rank-`n` alternator `eps[i_1..i_n] = sign`, dimension `n` on
    /// every axis.
    pub fn alternator(n: usize) -> Self {
        let mut t = Self::zeros(vec![n; n]);
        for (p, s) in signed_permutations(n) {
            t.entries.insert(p.image().to_vec(), int(s as i64));
        }
        t
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &[usize]) -> Rational {
        self.entries.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    /// Entries in lexicographic index order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.entries.iter()
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.dims.len() {
            return Err(Error::DimensionMismatch { expected: self.dims.len(), found: idx.len() });
        }
        if let Some((a, (&i, &d))) = idx.iter().zip(&self.dims).enumerate().find(|(_, (i, d))| i >= d) {
            return Err(invalid(format!("index {i} out of range {d} on axis {a}")));
        }
        Ok(())
    }

    pub fn set(&mut self, idx: MultiIndex, value: Rational) -> Result<()> {
        self.check_index(&idx)?;
        if value.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, value);
        }
        Ok(())
    }

    pub fn add_to(&mut self, idx: MultiIndex, value: &Rational) -> Result<()> {
        self.check_index(&idx)?;
        accumulate(&mut self.entries, idx, value);
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zeros(self.dims.clone());
        }
        Self {
            dims: self.dims.clone(),
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// `(1/k!) sum_sigma sgn(sigma) t o sigma` over permutations of the named
    /// axes.
    pub fn antisymmetrize(&self, axes: &[usize]) -> Result<Self> {
        let k = axes.len();
        let mut sorted = axes.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("repeated axis in antisymmetrization"));
        }
        if let Some(&a) = axes.iter().find(|&&a| a >= self.order()) {
            return Err(invalid(format!("axis {a} out of range for order {}", self.order())));
        }
        if let Some(&a) = axes.first() {
            if let Some(&b) = axes.iter().find(|&&b| self.dims[b] != self.dims[a]) {
                return Err(Error::DimensionMismatch { expected: self.dims[a], found: self.dims[b] });
            }
        }
        let perms: Vec<_> = signed_permutations(k).collect();
        let norm = factorial(k);
        let mut out = BTreeMap::new();
        for (idx, v) in &self.entries {
            let v = v / &norm;
            let neg = -v.clone();
            for (p, s) in &perms {
                let mut target = idx.clone();
                for (t, &axis) in axes.iter().enumerate() {
                    target[axes[p.apply(t)]] = idx[axis];
                }
                accumulate(&mut out, target, if *s > 0 { &v } else { &neg });
            }
        }
        Ok(Self { dims: self.dims.clone(), entries: out })
    }

    /// True if swapping any two of the named axes negates the tensor.
    pub fn is_alternating(&self, axes: &[usize]) -> bool {
        self.entries.iter().all(|(idx, v)| {
            let vals: Vec<usize> = axes.iter().map(|&a| idx[a]).collect();
            if sign_of_sequence(&vals) == 0 {
                return false;
            }
            (0..axes.len()).all(|x| {
                (x + 1..axes.len()).all(|y| {
                    let mut j = idx.clone();
                    j.swap(axes[x], axes[y]);
                    self.get(&j) == -v.clone()
                })
            })
        })
    }

    /// Contracts axis `pairs[t].0` of `self` with axis `pairs[t].1` of
    /// `other`. Remaining axes of `self` come first, then those of `other`.
    pub fn contract(&self, other: &SparseTensor, pairs: &[(usize, usize)]) -> Result<SparseTensor> {
        for &(a, b) in pairs {
            if a >= self.order() || b >= other.order() {
                return Err(invalid("contraction axis out of range"));
            }
            if self.dims[a] != other.dims[b] {
                return Err(Error::DimensionMismatch { expected: self.dims[a], found: other.dims[b] });
            }
        }
        let free_a: Vec<usize> = (0..self.order()).filter(|a| pairs.iter().all(|p| p.0 != *a)).collect();
        let free_b: Vec<usize> = (0..other.order()).filter(|b| pairs.iter().all(|p| p.1 != *b)).collect();
        let dims: Vec<usize> =
            free_a.iter().map(|&a| self.dims[a]).chain(free_b.iter().map(|&b| other.dims[b])).collect();
        // Bucket `other` by its contracted indices.
        let mut buckets: BTreeMap<Vec<usize>, Vec<(&MultiIndex, &Rational)>> = BTreeMap::new();
        for (idx, v) in &other.entries {
            let key: Vec<usize> = pairs.iter().map(|p| idx[p.1]).collect();
            buckets.entry(key).or_default().push((idx, v));
        }
        let mut out = BTreeMap::new();
        for (idx, v) in &self.entries {
            let key: Vec<usize> = pairs.iter().map(|p| idx[p.0]).collect();
            if let Some(list) = buckets.get(&key) {
                for (jdx, w) in list {
                    let target: Vec<usize> =
                        free_a.iter().map(|&a| idx[a]).chain(free_b.iter().map(|&b| jdx[b])).collect();
                    accumulate(&mut out, target, &(v * *w));
                }
            }
        }
        Ok(SparseTensor { dims, entries: out })
    }

    /// Scalar value of an order-0 tensor.
    pub fn scalar(&self) -> Option<Rational> {
        (self.order() == 0).then(|| self.get(&[]))
    }
}

impl std::ops::Add for &SparseTensor {
    type Output = SparseTensor;

    fn add(self, rhs: &SparseTensor) -> SparseTensor {
        assert_eq!(self.dims, rhs.dims, "tensor shapes differ");
        let mut out = self.entries.clone();
        for (k, v) in &rhs.entries {
            accumulate(&mut out, k.clone(), v);
        }
        SparseTensor { dims: self.dims.clone(), entries: out }
    }
}

impl std::ops::Sub for &SparseTensor {
    type Output = SparseTensor;

    fn sub(self, rhs: &SparseTensor) -> SparseTensor {
        self + &rhs.scale(&int(-1))
    }
}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, value: &Rational) {
    use std::collections::btree_map::Entry;
    if value.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(value.clone());
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}
