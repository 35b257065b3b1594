//! Octonions over the rationals and the omega tensor family.
//!
//! The multiplication table is generated by Cayley-Dickson doubling
//! `(p, q)(r, s) = (pr - s*q, sp + qr*)` starting from the reals, giving the
//! basis `1, e1 = i, e2 = j, e3 = k, e4 = l, e5 = il, e6 = jl, e7 = kl`.
//! Under this table `e1 e2 = e3` and the oriented lines `(a, b, c)` with
//! `ea eb = ec` are
//!
//! ```text
//! (1,2,3) (1,4,5) (1,7,6) (2,4,6) (2,5,7) (3,4,7) (3,6,5)
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use sha2::{Digest, Sha256};

use crate::exact_math::rational::{int, Rational};
use crate::exact_math::{signed_permutations, SparseTensor};
use crate::error::{invalid, Result};

/// Number of imaginary units.
pub const IMAG: usize = 7;

/// `basis_product(a, b) = (sign, c)` with `e_a e_b = sign * e_c`; index 0 is
/// the real unit.
#[derive(Debug)]
pub struct MultiplicationTable {
    table: [[(i8, u8); 8]; 8],
}

impl MultiplicationTable {
    pub fn get() -> &'static MultiplicationTable {
        static TABLE: OnceLock<MultiplicationTable> = OnceLock::new();
        TABLE.get_or_init(build_table)
    }

    pub fn basis_product(&self, a: usize, b: usize) -> (i8, usize) {
        let (s, c) = self.table[a][b];
        (s, c as usize)
    }

    /// Oriented lines `(a, b, c)` with `a < b`, `e_a e_b = +e_c`, rotated so
    /// the smallest index comes first and deduplicated.
    pub fn fano_lines(&self) -> Vec<[usize; 3]> {
        let mut lines = Vec::new();
        for a in 1..8 {
            for b in a + 1..8 {
                let (s, c) = self.basis_product(a, b);
                let t = if s > 0 { [a, b, c] } else { [b, a, c] };
                let m = (0..3).min_by_key(|&r| t[r]).unwrap();
                let rot = [t[m], t[(m + 1) % 3], t[(m + 2) % 3]];
                if !lines.contains(&rot) {
                    lines.push(rot);
                }
            }
        }
        lines.sort();
        lines
    }

    /// Canonical text rendering: one `a b sign c` line per basis pair.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        for a in 0..8 {
            for b in 0..8 {
                let (sg, c) = self.basis_product(a, b);
                s.push_str(&format!("{a} {b} {sg} {c}\n"));
            }
        }
        s
    }

    /// Hex SHA-256 of [`canonical_text`](Self::canonical_text); pins the
    /// sign convention in every emitted result.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.canonical_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn conj(x: &[i64]) -> Vec<i64> {
    x.iter().enumerate().map(|(i, &v)| if i == 0 { v } else { -v }).collect()
}

fn cayley_dickson(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let (p, q) = a.split_at(h);
    let (r, s) = b.split_at(h);
    let pr = cayley_dickson(p, r);
    let sq = cayley_dickson(&conj(s), q);
    let sp = cayley_dickson(s, p);
    let qr = cayley_dickson(q, &conj(r));
    pr.iter().zip(&sq).map(|(x, y)| x - y).chain(sp.iter().zip(&qr).map(|(x, y)| x + y)).collect()
}

fn build_table() -> MultiplicationTable {
    let mut table = [[(0i8, 0u8); 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let mut ea = vec![0i64; 8];
            let mut eb = vec![0i64; 8];
            ea[a] = 1;
            eb[b] = 1;
            let prod = cayley_dickson(&ea, &eb);
            let (c, &v) = prod.iter().enumerate().find(|(_, v)| **v != 0).expect("basis product is a unit");
            table[a][b] = (v as i8, c as u8);
        }
    }
    MultiplicationTable { table }
}

/// An octonion `x0 + x1 e1 + .. + x7 e7` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion {
    coords: [Rational; 8],
}

impl Octonion {
    pub fn zero() -> Self {
        Self { coords: std::array::from_fn(|_| Rational::zero()) }
    }

    pub fn one() -> Self {
        Self::unit(0)
    }

    /// Basis element `e_i` (`e_0 = 1`).
    pub fn unit(i: usize) -> Self {
        assert!(i < 8, "octonion basis index {i} out of range");
        let mut o = Self::zero();
        o.coords[i] = int(1);
        o
    }

    pub fn from_coords(coords: [Rational; 8]) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[Rational; 8] {
        &self.coords
    }

    pub fn real(&self) -> &Rational {
        &self.coords[0]
    }

    pub fn is_imaginary(&self) -> bool {
        self.coords[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coords: std::array::from_fn(|i| &self.coords[i] * c) }
    }

    pub fn conj(&self) -> Self {
        Self { coords: std::array::from_fn(|i| if i == 0 { self.coords[0].clone() } else { -self.coords[i].clone() }) }
    }

    /// Sum of squared coordinates.
    pub fn norm(&self) -> Rational {
        self.coords.iter().map(|c| c * c).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn commutator(&self, other: &Octonion) -> Octonion {
        &(self * other) - &(other * self)
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(x: &Octonion, y: &Octonion, z: &Octonion) -> Octonion {
        &(&(x * y) * z) - &(x * &(y * z))
    }
}

/// Bilinear product under the fixed table.
pub fn oct_mul(a: &Octonion, b: &Octonion) -> Octonion {
    let table = MultiplicationTable::get();
    let mut out = Octonion::zero();
    for (i, x) in a.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            let (s, k) = table.basis_product(i, j);
            let p = x * y;
            if s > 0 {
                out.coords[k] += p;
            } else {
                out.coords[k] -= p;
            }
        }
    }
    out
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        oct_mul(self, rhs)
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, rhs: &Octonion) -> Octonion {
        Octonion { coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]) }
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &Octonion) -> Octonion {
        Octonion { coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]) }
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion { coords: std::array::from_fn(|i| -self.coords[i].clone()) }
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*e{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An omega tensor of order `k` over the seven imaginary units. Axes are
/// zero-based: axis value `a` stands for `e_{a+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaTensor {
    order: usize,
    tensor: SparseTensor,
    /// `tensor = scale * (antisymmetrized chain tensor)`; 1 for the chain
    /// tensor itself (order 2).
    scale: Rational,
    antisymmetric: bool,
}

impl OmegaTensor {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn tensor(&self) -> &SparseTensor {
        &self.tensor
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetric
    }

    pub fn get(&self, idx: &[usize]) -> Rational {
        self.tensor.get(idx)
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }
}

/// Structure constants: `e_i e_j = -delta_ij + sum_k omega_ijk e_k`.
pub fn omega3() -> OmegaTensor {
    let table = MultiplicationTable::get();
    let mut t = SparseTensor::zeros(vec![IMAG; 3]);
    for i in 0..IMAG {
        for j in 0..IMAG {
            let (s, k) = table.basis_product(i + 1, j + 1);
            if k != 0 {
                t.set(vec![i, j, k - 1], int(s as i64)).expect("index in range");
            }
        }
    }
    OmegaTensor { order: 3, tensor: t, scale: int(1), antisymmetric: true }
}

/// Real part of the left-associated product `((e_{i1} e_{i2}) e_{i3}) .. e_{ik}`
/// for every index tuple.
pub fn omega_chain(k: usize) -> Result<SparseTensor> {
    if !(2..=IMAG).contains(&k) {
        return Err(invalid(format!("omega chain order must be in 2..=7, got {k}")));
    }
    let mut t = SparseTensor::zeros(vec![IMAG; k]);
    // Basis products stay signed units, so track (sign, unit) along the chain.
    let mut idx = vec![0usize; k];
    loop {
        let (sign, unit) = chain_product(&idx);
        if unit == 0 {
            t.set(idx.clone(), int(sign as i64))?;
        }
        if !advance(&mut idx, IMAG) {
            break;
        }
    }
    Ok(t)
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in (0..idx.len()).rev() {
        idx[d] += 1;
        if idx[d] < base {
            return true;
        }
        idx[d] = 0;
    }
    false
}

/// Antisymmetrized chain tensor rescaled to entries in `{-1, 0, 1}`.
///
/// Order 2 is the unscaled chain tensor `-delta` (its antisymmetrization
/// would vanish). Orders outside `2..=7` are rejected.
pub fn omega_skew(k: usize) -> Result<OmegaTensor> {
    if k == 2 {
        return Ok(OmegaTensor { order: 2, tensor: omega_chain(2)?, scale: int(1), antisymmetric: false });
    }
    if !(3..=IMAG).contains(&k) {
        return Err(invalid(format!("omega order must be in 2..=7, got {k}")));
    }
    let skew = antisymmetrized_chain(k);
    let scale = match skew.iter().next() {
        None => int(1),
        Some((_, v)) => int(1) / v.abs(),
    };
    let tensor = skew.scale(&scale);
    if tensor.iter().any(|(_, v)| *v != int(1) && *v != int(-1)) {
        return Err(crate::error::Error::Consistency(format!(
            "omega_{k} entries are not all of equal magnitude"
        )));
    }
    Ok(OmegaTensor { order: k, tensor, scale, antisymmetric: true })
}

/// `(1/k!) sum_sigma sgn(sigma) chain(i o sigma)`, evaluated once per sorted
/// index set and spread over its orderings. Tuples with a repeated index
/// vanish under antisymmetrization and are skipped.
fn antisymmetrized_chain(k: usize) -> SparseTensor {
    let mut out = SparseTensor::zeros(vec![IMAG; k]);
    let perms: Vec<_> = signed_permutations(k).collect();
    let norm = crate::exact_math::rational::factorial(k);
    for set in crate::exact_math::subsets(IMAG, k) {
        let total: i64 = perms
            .iter()
            .map(|(p, s)| {
                let word: Vec<usize> = p.image().iter().map(|&t| set[t]).collect();
                let (sign, unit) = chain_product(&word);
                if unit == 0 {
                    (sign * s) as i64
                } else {
                    0
                }
            })
            .sum();
        if total == 0 {
            continue;
        }
        let v = int(total) / &norm;
        for (p, s) in &perms {
            let idx: Vec<usize> = p.image().iter().map(|&t| set[t]).collect();
            let entry = if *s > 0 { v.clone() } else { -v.clone() };
            out.set(idx, entry).expect("index in range");
        }
    }
    out
}

/// Left-associated product of imaginary units `e_{w0+1} e_{w1+1} ..` as
/// `(sign, unit)`.
fn chain_product(word: &[usize]) -> (i8, usize) {
    let table = MultiplicationTable::get();
    let (mut sign, mut unit) = (1i8, word[0] + 1);
    for &i in &word[1..] {
        let (s, u) = table.basis_product(unit, i + 1);
        sign *= s;
        unit = u;
    }
    (sign, unit)
}

/// Sign `c` with `omega_skew(7) = c * eps_7`, or `None` if not proportional.
pub fn omega7_alternator_sign() -> Option<i8> {
    let w = omega_skew(7).ok()?;
    let first = w.get(&[0, 1, 2, 3, 4, 5, 6]);
    let c = crate::exact_math::rational::sign_of(&first);
    if c == 0 {
        return None;
    }
    let proportional = w.tensor().nnz() == 5040
        && signed_permutations(7).all(|(p, s)| w.get(p.image()) == int((s * c) as i64));
    proportional.then_some(c)
}
