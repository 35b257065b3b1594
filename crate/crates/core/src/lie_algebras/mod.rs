//! gl_N, so_N and g2 with exact structure constants and defining
//! representations, plus the generator matrix `L`.

mod g2;
mod linalg;
mod lmatrix;
mod matrix;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exact_math::rational::{int, Rational};
use crate::exact_math::SparseTensor;

pub use g2::{derivation_matrix, g2_generator, g2_generator_matrix, make_g2, make_g2_with_order};
pub use linalg::SpanReducer;
pub use lmatrix::{build_l, LMatrix, LinearRelation};
pub use matrix::RatMatrix;

/// Which family an algebra belongs to. Determines how an algebra element
/// moves the index pair `(i, j)` of a generator-matrix entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", content = "n", rename_all = "lowercase")]
pub enum AlgebraKind {
    Gl(usize),
    So(usize),
    G2,
}

impl AlgebraKind {
    /// Parses labels such as `gl3`, `so5`, `g2`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim().to_ascii_lowercase();
        let num = |s: &str| -> Result<usize> {
            s.trim_start_matches('_').parse().map_err(|_| Error::UnsupportedAlgebra(name.clone()))
        };
        if name == "g2" {
            Ok(Self::G2)
        } else if let Some(rest) = name.strip_prefix("gl") {
            Ok(Self::Gl(num(rest)?))
        } else if let Some(rest) = name.strip_prefix("so") {
            Ok(Self::So(num(rest)?))
        } else {
            Err(Error::UnsupportedAlgebra(name))
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Gl(n) => format!("gl{n}"),
            Self::So(n) => format!("so{n}"),
            Self::G2 => "g2".to_string(),
        }
    }

    /// True when both indices of `L_ij` transform as vectors (so_N, g2), so
    /// `L` is skew; false for gl_N where the column index is a covector.
    pub fn is_orthogonal(&self) -> bool {
        !matches!(self, Self::Gl(_))
    }
}

/// A finite-dimensional Lie algebra with an ordered basis, exact structure
/// constants `[v_a, v_b] = sum_c c_ab^c v_c` and a faithful matrix
/// representation.
#[derive(Debug)]
pub struct LieAlgebra {
    kind: AlgebraKind,
    labels: Vec<String>,
    rep_matrices: Vec<RatMatrix>,
    structure: SparseTensor,
    brackets: Vec<Vec<Vec<(usize, Rational)>>>,
    decomposer: SpanReducer,
    /// For g2: the `(i, j)` pairs (zero-based) whose derivation matrices
    /// form the basis.
    basis_pairs: Vec<(usize, usize)>,
}

pub type AlgebraRef = Arc<LieAlgebra>;

impl LieAlgebra {
    fn from_matrices(
        kind: AlgebraKind,
        labels: Vec<String>,
        rep_matrices: Vec<RatMatrix>,
        basis_pairs: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let d = rep_matrices.len();
        let n = rep_matrices.first().map_or(0, RatMatrix::size);
        let mut decomposer = SpanReducer::new(n * n);
        for (a, m) in rep_matrices.iter().enumerate() {
            if !decomposer.try_insert(m.as_slice()) {
                return Err(Error::Consistency(format!("basis matrix {} is dependent", labels[a])));
            }
        }
        let mut structure = SparseTensor::zeros(vec![d, d, d]);
        let mut brackets = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in 0..d {
                let c = rep_matrices[a].commutator(&rep_matrices[b]);
                let coeffs = decomposer.express(c.as_slice()).ok_or_else(|| {
                    Error::Consistency(format!("[{}, {}] leaves the span", labels[a], labels[b]))
                })?;
                for (g, v) in coeffs.into_iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    structure.set(vec![a, b, g], v.clone())?;
                    brackets[a][b].push((g, v));
                }
            }
        }
        Ok(Self { kind, labels, rep_matrices, structure, brackets, decomposer, basis_pairs })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn name(&self) -> String {
        self.kind.label()
    }

    pub fn dim(&self) -> usize {
        self.rep_matrices.len()
    }

    pub fn rep_dim(&self) -> usize {
        self.rep_matrices.first().map_or(0, RatMatrix::size)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rep_matrix(&self, a: usize) -> &RatMatrix {
        &self.rep_matrices[a]
    }

    pub fn rep_matrices(&self) -> &[RatMatrix] {
        &self.rep_matrices
    }

    pub fn structure_constants(&self) -> &SparseTensor {
        &self.structure
    }

    /// Nonzero `(c, coeff)` with `[v_a, v_b] = sum coeff v_c`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.brackets[a][b]
    }

    pub fn basis_pairs(&self) -> &[(usize, usize)] {
        &self.basis_pairs
    }

    pub fn basis_vector(&self, a: usize) -> LieVector {
        let mut coeffs = vec![Rational::zero(); self.dim()];
        coeffs[a] = int(1);
        LieVector { coeffs }
    }

    pub fn zero_vector(&self) -> LieVector {
        LieVector::zero(self.dim())
    }

    pub fn bracket(&self, x: &LieVector, y: &LieVector) -> LieVector {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, xa) in x.nonzero() {
            for (b, yb) in y.nonzero() {
                let p = xa * yb;
                for (c, v) in &self.brackets[a][b] {
                    out[*c] += &p * v;
                }
            }
        }
        LieVector { coeffs: out }
    }

    /// Matrix of `x` in the defining representation.
    pub fn to_matrix(&self, x: &LieVector) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rep_dim());
        for (a, c) in x.nonzero() {
            m = &m + &self.rep_matrices[a].scale(c);
        }
        m
    }

    /// Expansion of a representation matrix in the basis.
    pub fn from_matrix(&self, m: &RatMatrix) -> Result<LieVector> {
        if m.size() != self.rep_dim() {
            return Err(Error::DimensionMismatch { expected: self.rep_dim(), found: m.size() });
        }
        self.decomposer
            .express(m.as_slice())
            .map(|coeffs| LieVector { coeffs })
            .ok_or_else(|| invalid(format!("matrix is not in {}", self.name())))
    }

    /// Action of basis element `a` on the index pair `(i, j)` of `L_ij`:
    /// `v_a . (i, j) = sum_k V_ki (k, j) + sum_k C_kj (i, k)` with `C = V` for
    /// so_N and g2 and `C = -V^t` for gl_N. Zero coefficients are dropped.
    pub fn pair_action(&self, a: usize, i: usize, j: usize) -> Vec<((usize, usize), Rational)> {
        let v = &self.rep_matrices[a];
        let n = self.rep_dim();
        let mut out: Vec<((usize, usize), Rational)> = Vec::new();
        for k in 0..n {
            let r = v.get(k, i);
            if !r.is_zero() {
                out.push(((k, j), r.clone()));
            }
            let c = if self.kind.is_orthogonal() { v.get(k, j).clone() } else { -v.get(j, k).clone() };
            if !c.is_zero() {
                out.push(((i, k), c));
            }
        }
        out
    }

    /// Exhaustive Jacobi check over basis triples; returns the first failing
    /// triple.
    pub fn check_jacobi(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in a + 1..d {
                let ab = self.bracket(&self.basis_vector(a), &self.basis_vector(b));
                for c in b + 1..d {
                    let vc = self.basis_vector(c);
                    let va = self.basis_vector(a);
                    let vb = self.basis_vector(b);
                    let t1 = self.bracket(&ab, &vc);
                    let t2 = self.bracket(&self.bracket(&vb, &vc), &va);
                    let t3 = self.bracket(&self.bracket(&vc, &va), &vb);
                    if !(&(&t1 + &t2) + &t3).is_zero() {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Antisymmetry of the structure constants.
    pub fn check_antisymmetry(&self) -> bool {
        self.structure.iter().all(|(idx, v)| self.structure.get(&[idx[1], idx[0], idx[2]]) == -v.clone())
    }

    /// `[R_a, R_b] = sum_c c_ab^c R_c` for all basis pairs.
    pub fn check_representation(&self) -> std::result::Result<(), (usize, usize)> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                let lhs = self.rep_matrices[a].commutator(&self.rep_matrices[b]);
                let rhs = self.to_matrix(&LieVector::from_sparse(d, self.bracket_basis(a, b)));
                if lhs != rhs {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }
}

/// A vector of the Lie algebra in its basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieVector {
    coeffs: Vec<Rational>,
}

impl LieVector {
    pub fn zero(dim: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); dim] }
    }

    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn from_sparse(dim: usize, terms: &[(usize, Rational)]) -> Self {
        let mut v = Self::zero(dim);
        for (a, c) in terms {
            v.coeffs[*a] += c;
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> &Rational {
        &self.coeffs[a]
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add_scaled(&mut self, other: &LieVector, c: &Rational) {
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !y.is_zero() {
                *x += y * c;
            }
        }
    }
}

impl std::ops::Add for &LieVector {
    type Output = LieVector;
    fn add(self, rhs: &LieVector) -> LieVector {
        assert_eq!(self.dim(), rhs.dim());
        LieVector { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl std::ops::Sub for &LieVector {
    type Output = LieVector;
    fn sub(self, rhs: &LieVector) -> LieVector {
        assert_eq!(self.dim(), rhs.dim());
        LieVector { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl std::ops::Neg for &LieVector {
    type Output = LieVector;
    fn neg(self) -> LieVector {
        self.scale(&int(-1))
    }
}

/// Displays with basis labels, e.g. `F12 - 2*F13`.
pub struct Labelled<'a>(pub &'a LieAlgebra, pub &'a LieVector);

impl fmt::Display for Labelled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, c) in self.1.nonzero() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c == int(1) {
                write!(f, "{}", self.0.labels[a])?;
            } else {
                write!(f, "{}*{}", c, self.0.labels[a])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// gl_N with basis `E_ij` in lexicographic `(i, j)` order.
pub fn make_gl(n: usize) -> Result<AlgebraRef> {
    if n == 0 {
        return Err(invalid("gl_N needs N >= 1"));
    }
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            labels.push(format!("E{}{}", i + 1, j + 1));
            mats.push(RatMatrix::unit(n, i, j));
        }
    }
    Ok(Arc::new(LieAlgebra::from_matrices(AlgebraKind::Gl(n), labels, mats, Vec::new())?))
}

/// so_N with basis `F_ij = E_ij - E_ji`, `i < j`, lexicographic.
pub fn make_so(n: usize) -> Result<AlgebraRef> {
    if n < 2 {
        return Err(invalid("so_N needs N >= 2"));
    }
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            labels.push(format!("F{}{}", i + 1, j + 1));
            mats.push(&RatMatrix::unit(n, i, j) - &RatMatrix::unit(n, j, i));
            pairs.push((i, j));
        }
    }
    Ok(Arc::new(LieAlgebra::from_matrices(AlgebraKind::So(n), labels, mats, pairs)?))
}

pub fn make_algebra(kind: AlgebraKind) -> Result<AlgebraRef> {
    match kind {
        AlgebraKind::Gl(n) => make_gl(n),
        AlgebraKind::So(n) => make_so(n),
        AlgebraKind::G2 => make_g2(),
    }
}

/// Cached constructor keyed by kind; algebras are immutable so sharing is
/// free.
pub fn algebra(kind: AlgebraKind) -> Result<AlgebraRef> {
    use std::collections::HashMap;
    use std::sync::Mutex;
    static CACHE: std::sync::OnceLock<Mutex<HashMap<AlgebraKind, AlgebraRef>>> = std::sync::OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().expect("algebra cache poisoned");
    if let Some(a) = guard.get(&kind) {
        return Ok(a.clone());
    }
    let a = make_algebra(kind)?;
    guard.insert(kind, a.clone());
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_brackets() {
        let gl1 = make_gl(1).unwrap();
        assert!(gl1.structure_constants().is_zero());
        let gl2 = make_gl(2).unwrap();
        // [E12, E21] = E11 - E22
        let b = gl2.bracket(&gl2.basis_vector(1), &gl2.basis_vector(2));
        assert_eq!(b, LieVector::new(vec![int(1), int(0), int(0), int(-1)]));
        let gl3 = make_gl(3).unwrap();
        assert_eq!(gl3.dim(), 9);
        assert!(gl3.check_jacobi().is_ok());
        assert!(gl3.check_representation().is_ok());
    }

    #[test]
    fn so_brackets() {
        let so3 = make_so(3).unwrap();
        // basis F12, F13, F23
        let b = so3.bracket(&so3.basis_vector(0), &so3.basis_vector(2));
        assert_eq!(b, so3.basis_vector(1));
        let so4 = make_so(4).unwrap();
        // F12 = 0, F34 = 5
        assert!(so4.bracket(&so4.basis_vector(0), &so4.basis_vector(5)).is_zero());
        assert_eq!(make_so(5).unwrap().dim(), 10);
        assert!(so4.check_antisymmetry());
        assert!(make_so(1).is_err());
    }

    #[test]
    fn parse_kinds() {
        assert_eq!(AlgebraKind::parse("so5").unwrap(), AlgebraKind::So(5));
        assert_eq!(AlgebraKind::parse("GL3").unwrap(), AlgebraKind::Gl(3));
        assert_eq!(AlgebraKind::parse("g2").unwrap(), AlgebraKind::G2);
        assert!(AlgebraKind::parse("e8").is_err());
        assert!(AlgebraKind::parse("sox").is_err());
    }

    #[test]
    fn labelled_display() {
        let so3 = make_so(3).unwrap();
        let v = &so3.basis_vector(0) - &so3.basis_vector(2).scale(&int(2));
        assert_eq!(Labelled(&so3, &v).to_string(), "F12 + -2*F23");
    }
}
