//! Named central elements: each is an invariant polynomial pushed through
//! the symmetrization map and checked for centrality in PBW form.

use std::time::{Duration, Instant};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact_math::rational::{self, factorial, int, Rational};
use crate::lie_algebras::{algebra, build_l, AlgebraKind, AlgebraRef};
use crate::octonions::IMAG;
use crate::poly_invariants::{
    c_k_poly, contraction_poly, det_poly, g_poly, is_invariant, pf_full_poly, sum_pf_sq_poly, vanishing_parts, Domain,
    MPolynomial, Slot,
};
use crate::uea::{is_central, symmetrize_poly, CentralityVerdict, UEAElement};

#[derive(Clone, Debug)]
pub struct CentralElementReport {
    pub family: String,
    pub parameters: Value,
    pub element: UEAElement,
    pub centrality: CentralityVerdict,
    pub metadata: Map<String, Value>,
    /// Not part of any serialized output, so reports stay reproducible.
    pub wall_time: Duration,
}

impl CentralElementReport {
    pub fn is_central(&self) -> bool {
        self.centrality.central
    }
}

fn report(
    family: &str,
    parameters: Value,
    alg: &AlgebraRef,
    poly: &MPolynomial,
    extra: Value,
) -> Result<CentralElementReport> {
    let start = Instant::now();
    let l = build_l(alg)?;
    let element = symmetrize_poly(&l, poly)?;
    let centrality = is_central(&element)?;
    let mut metadata = Map::new();
    metadata.insert("algebra".into(), json!(alg.name()));
    metadata.insert("polynomial_terms".into(), json!(poly.num_terms()));
    metadata.insert("element_terms".into(), json!(element.num_terms()));
    metadata.insert("degree".into(), json!(element.degree()));
    if alg.kind() == AlgebraKind::G2 {
        let basis: Vec<[usize; 2]> = alg.basis_pairs().iter().map(|&(i, j)| [i + 1, j + 1]).collect();
        metadata.insert("g2_basis".into(), json!(basis));
    }
    if let Value::Object(m) = extra {
        metadata.extend(m);
    }
    Ok(CentralElementReport {
        family: family.into(),
        parameters,
        element,
        centrality,
        metadata,
        wall_time: start.elapsed(),
    })
}

fn rational_json(r: &Rational) -> Value {
    json!(rational::to_string(r))
}

/// The quadratic Casimir: `sum_{i<j} F_ij^2` for so_N, and the
/// symmetrization of the order-two omega contraction `sum m_ij^2` for g2.
pub fn casimir(alg: &AlgebraRef) -> Result<CentralElementReport> {
    match alg.kind() {
        AlgebraKind::So(n) => report("casimir", json!({ "N": n }), alg, &sum_pf_sq_poly(n, 1)?, json!({})),
        AlgebraKind::G2 => report("casimir", json!({}), alg, &g_poly(&[2], &[2])?, json!({ "source": "G([2],[2])" })),
        AlgebraKind::Gl(_) => Err(Error::UnsupportedAlgebra(format!("casimir is built for so_N and g2, not {}", alg.name()))),
    }
}

/// `C_k = sum_{|I|=k} det L_I`; `k = N` is `det L`.
pub fn det_family(alg: &AlgebraRef, k: usize) -> Result<CentralElementReport> {
    let n = match alg.kind() {
        AlgebraKind::Gl(n) | AlgebraKind::So(n) => n,
        AlgebraKind::G2 => return Err(Error::UnsupportedAlgebra("det family is built for gl_N and so_N".into())),
    };
    if k < 1 || k > n {
        return Err(Error::InvalidInput(format!("det family needs 1 <= k <= N, got k = {k}, N = {n}")));
    }
    let extra = json!({ "prefactor": rational_json(&factorial(k)), "is_full_det": k == n });
    report("det", json!({ "N": n, "k": k }), alg, &c_k_poly(n, k)?, extra)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfaffianSpec {
    /// `sum_{|I|=2k} (Pf L_I)^2`.
    SumOfSquares(usize),
    /// `Pf L` for even N.
    Full,
}

pub fn pfaffian_family(alg: &AlgebraRef, spec: PfaffianSpec) -> Result<CentralElementReport> {
    let AlgebraKind::So(n) = alg.kind() else {
        return Err(Error::UnsupportedAlgebra(format!("pfaffian family needs so_N, got {}", alg.name())));
    };
    match spec {
        PfaffianSpec::SumOfSquares(k) => {
            report("sumpf2", json!({ "N": n, "k": k }), alg, &sum_pf_sq_poly(n, k)?, json!({}))
        }
        PfaffianSpec::Full => {
            let k = n / 2;
            let extra = json!({ "prefactor": rational_json(&(factorial(k) * int(1 << k))) });
            report("pf", json!({ "N": n }), alg, &pf_full_poly(n)?, extra)
        }
    }
}

fn g2_algebra() -> Result<AlgebraRef> {
    algebra(AlgebraKind::G2)
}

fn g2_extra(rows: &[usize], cols: &[usize], poly: &MPolynomial) -> Value {
    let k: usize = rows.iter().sum();
    let mut notes = Vec::new();
    let mut vanishing = vanishing_parts(rows);
    vanishing.extend(vanishing_parts(cols));
    if !vanishing.is_empty() {
        notes.push(format!("omega vanishes for part sizes {vanishing:?}; the element is 0"));
    }
    if k % 2 == 1 && !poly.is_zero() && poly.restrict(Domain::Skew).is_zero() {
        notes.push("odd degree: the polynomial vanishes on skew-symmetric L, so the element is 0".into());
    }
    json!({ "polynomial_zero": poly.is_zero(), "notes": notes })
}

/// Symmetrized `G` element for row and column partitions over the seven
/// imaginary octonion indices.
#[allow(non_snake_case)]
pub fn g2_G(rows: &[usize], cols: &[usize]) -> Result<CentralElementReport> {
    let poly = g_poly(rows, cols)?;
    let extra = g2_extra(rows, cols, &poly);
    report("g2G", json!({ "rows": rows, "cols": cols }), &g2_algebra()?, &poly, extra)
}

/// Symmetrized contraction of `L_{i1 j1} .. L_{ik jk}` with one omega tensor
/// per group of index slots. Groups holding both indices of one factor are
/// rejected.
pub fn g2_contraction(k: usize, groups: &[Vec<Slot>]) -> Result<CentralElementReport> {
    let poly = contraction_poly(k, groups)?;
    let sizes: Vec<usize> = groups.iter().map(|g| g.len()).collect();
    let extra = g2_extra(&sizes, &[], &poly);
    report("g2contraction", json!({ "k": k, "groups": groups }), &g2_algebra()?, &poly, extra)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum G2DetMode {
    Polynomial,
    /// Also commutes the symmetrized determinant with the listed basis
    /// generators (zero-based).
    Spot(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct G2DetReport {
    /// `g_poly([7],[7]) = constant * det M` over independent entries.
    pub constant: Option<Rational>,
    pub det_invariant: bool,
    /// Whether the 7x7 determinant vanishes once `M` is skew.
    pub skew_det_zero: bool,
    pub g_poly_terms: usize,
    pub element_terms: Option<usize>,
    /// `(generator, commutator is zero)` for spot mode.
    pub spot: Vec<(usize, bool)>,
    pub wall_time: Duration,
}

impl G2DetReport {
    pub fn verified(&self) -> bool {
        self.constant.as_ref().is_some_and(|c| *c != int(0)) && self.det_invariant && self.spot.iter().all(|(_, z)| *z)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "constant": self.constant.as_ref().map(rational::to_string),
            "det_invariant": self.det_invariant,
            "skew_det_zero": self.skew_det_zero,
            "g_poly_terms": self.g_poly_terms,
            "element_terms": self.element_terms,
            "spot": self.spot.iter().map(|(a, z)| json!({ "generator": a + 1, "zero": z })).collect::<Vec<_>>(),
            "verified": self.verified(),
        })
    }
}

/// Degree-seven check: `g_poly([7],[7])` against the 7x7 determinant, the
/// g2-invariance of that determinant and, in spot mode, commutators of the
/// symmetrized determinant with selected generators.
pub fn g2_det_check(mode: &G2DetMode) -> Result<G2DetReport> {
    let start = Instant::now();
    let alg = g2_algebra()?;
    let all: Vec<usize> = (0..IMAG).collect();
    let det = det_poly(&all, &all)?;
    let g = g_poly(&[7], &[7])?;
    let constant = g.ratio_to(&det);
    let det_invariant = is_invariant(&alg, &det, Domain::General)?.invariant;
    let skew_det_zero = det.skew_substitute().is_zero();
    let mut spot = Vec::new();
    let mut element_terms = None;
    if let G2DetMode::Spot(generators) = mode {
        if let Some(&a) = generators.iter().find(|&&a| a >= alg.dim()) {
            return Err(Error::DimensionMismatch { expected: alg.dim(), found: a + 1 });
        }
        let element = symmetrize_poly(&build_l(&alg)?, &det)?;
        element_terms = Some(element.num_terms());
        for &a in generators {
            let c = crate::uea::commutator(&alg.basis_vector(a), &element)?;
            spot.push((a, c.is_zero()));
        }
    }
    Ok(G2DetReport {
        constant,
        det_invariant,
        skew_det_zero,
        g_poly_terms: g.num_terms(),
        element_terms,
        spot,
        wall_time: start.elapsed(),
    })
}
