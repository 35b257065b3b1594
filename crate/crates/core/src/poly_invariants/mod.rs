//! Commutative invariants of the matrix `M = (m_ij)`: the derivation action
//! of a Lie algebra on the entries, invariance checking, and the invariant
//! families (trace, pfaffians, determinants, omega contractions, graphs).

mod families;
mod g2_functions;
mod graph;
mod poly;
mod relations;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_math::rational::Rational;
use crate::lie_algebras::{LieAlgebra, LieVector};
use crate::par;

pub use families::{
    build_invariant, c_k_poly, det_poly, pf_full_poly, pfaffian_poly, sum_pf_sq_poly, trace_poly, Family,
    Invariant,
};
pub use g2_functions::{contraction_poly, g_poly, row_tensor, vanishing_parts, Slot};
pub use graph::{compile_graph, random_graph, Color, Edge, End, EndRef, InvariantGraph, Vertex};
pub use poly::{monomial_mul, Domain, MPolynomial, Monomial, PolyMatrix, Var, AUX};
pub use relations::{charpoly_pfaffian_identity, check_relation, RelationParams, RelationVerdict};

/// Images of the variable `m_ij` under basis element `a`: the index pair
/// moves as `L_ij` does under `[v_a, .]`.
fn basis_image(alg: &LieAlgebra, a: usize, v: Var) -> Vec<(Var, Rational)> {
    alg.pair_action(a, v.row as usize, v.col as usize)
        .into_iter()
        .map(|((k, l), c)| (Var::of(v.mat, k, l), c))
        .collect()
}

fn check_dims(alg: &LieAlgebra, p: &MPolynomial) -> Result<()> {
    let n = alg.rep_dim();
    if let Some(v) = p.variables().into_iter().find(|v| !v.is_aux() && (v.row as usize >= n || v.col as usize >= n)) {
        return Err(Error::DimensionMismatch { expected: n, found: v.row.max(v.col) as usize + 1 });
    }
    Ok(())
}

/// The derivation by which `g` acts on polynomials in the entries of `M`.
///
/// For so_N and g2 a variable moves as `m_ij -> sum_k V_ki m_kj + sum_k V_kj m_ik`,
/// i.e. `M -> V^t M + M V`, which is `-(V M + M V^t)` since `V` is skew. For
/// gl_N the column index is dual: `M -> V^t M - M V^t`. With this sign the map
/// `g -> act(g, .)` is a Lie algebra homomorphism and matches `[g, L_ij]`.
/// Auxiliary variables are invariant. On the skew domain the result is
/// re-expressed in the upper-triangular variables.
pub fn act(alg: &LieAlgebra, g: &LieVector, p: &MPolynomial, domain: Domain) -> Result<MPolynomial> {
    if g.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: g.dim() });
    }
    check_dims(alg, p)?;
    let terms: Vec<(usize, Rational)> = g.nonzero().map(|(a, c)| (a, c.clone())).collect();
    let out = p.derive(|v| {
        if v.is_aux() {
            return Vec::new();
        }
        let mut img: Vec<(Var, Rational)> = Vec::new();
        for (a, c) in &terms {
            for (w, k) in basis_image(alg, *a, v) {
                img.push((w, &k * c));
            }
        }
        img
    });
    Ok(out.restrict(domain))
}

/// `M -> V M + M V^t` applied literally to the entries (no sign change). This
/// is the negative of [`act`] on so_N and g2.
pub fn act_congruence(alg: &LieAlgebra, g: &LieVector, p: &MPolynomial) -> Result<MPolynomial> {
    check_dims(alg, p)?;
    let v = alg.to_matrix(g);
    let n = alg.rep_dim();
    Ok(p.derive(|var| {
        if var.is_aux() {
            return Vec::new();
        }
        let (i, j) = (var.row as usize, var.col as usize);
        let mut img = Vec::new();
        for k in 0..n {
            if !v.get(i, k).is_zero() {
                img.push((Var::of(var.mat, k, j), v.get(i, k).clone()));
            }
            if !v.get(j, k).is_zero() {
                img.push((Var::of(var.mat, i, k), v.get(j, k).clone()));
            }
        }
        img
    }))
}

/// Outcome of an invariance check: on failure, the first basis index whose
/// action leaves a nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceVerdict {
    pub invariant: bool,
    pub witness: Option<(usize, MPolynomial)>,
}

/// Checks `act(v_a, p) = 0` for every basis element `v_a`.
pub fn is_invariant(alg: &LieAlgebra, p: &MPolynomial, domain: Domain) -> Result<InvarianceVerdict> {
    check_dims(alg, p)?;
    let p = p.restrict(domain);
    let basis: Vec<usize> = (0..alg.dim()).collect();
    let residuals = par::map(&basis, |&a| act(alg, &alg.basis_vector(a), &p, domain));
    for (a, r) in residuals.into_iter().enumerate() {
        let r = r?;
        if !r.is_zero() {
            return Ok(InvarianceVerdict { invariant: false, witness: Some((a, r)) });
        }
    }
    Ok(InvarianceVerdict { invariant: true, witness: None })
}
