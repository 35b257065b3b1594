use num_traits::Zero;

use super::{g2_generator, AlgebraKind, AlgebraRef, LieVector};
use crate::error::Result;
use crate::exact_math::rational::int;
use crate::octonions::omega3;

/// A linear identity satisfied by the entries of an [`LMatrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearRelation {
    /// `L_ij + L_ji = 0` for all `i, j`.
    Skew,
    /// `sum_ij omega_ijl L_ij = 0` for the given (zero-based) `l`.
    OmegaContraction { l: usize },
}

impl LinearRelation {
    pub fn describe(&self) -> String {
        match self {
            Self::Skew => "L_ij + L_ji = 0".to_string(),
            Self::OmegaContraction { l } => format!("sum_ij omega_ij{} L_ij = 0", l + 1),
        }
    }

    pub fn holds(&self, l: &LMatrix) -> bool {
        let n = l.size();
        match self {
            Self::Skew => (0..n).all(|i| (0..n).all(|j| (l.entry(i, j) + l.entry(j, i)).is_zero())),
            Self::OmegaContraction { l: k } => {
                let w = omega3();
                let mut sum = l.algebra().zero_vector();
                for i in 0..n {
                    for j in 0..n {
                        let c = w.get(&[i, j, *k]);
                        if !c.is_zero() {
                            sum.add_scaled(l.entry(i, j), &c);
                        }
                    }
                }
                sum.is_zero()
            }
        }
    }
}

/// The `N x N` generator matrix whose entries are Lie algebra vectors:
/// `E_ij` for gl_N, `F_ij` for so_N, `G_ij` for g2.
#[derive(Clone, Debug)]
pub struct LMatrix {
    algebra: AlgebraRef,
    n: usize,
    entries: Vec<LieVector>,
    relations: Vec<LinearRelation>,
}

impl LMatrix {
    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &LieVector {
        &self.entries[i * self.n + j]
    }

    pub fn relations(&self) -> &[LinearRelation] {
        &self.relations
    }

    /// `(i, j)` of the first relation that fails, if any.
    pub fn failing_relation(&self) -> Option<&LinearRelation> {
        self.relations.iter().find(|r| !r.holds(self))
    }

    /// Checks `[v_a, L_ij] = sum c L_kl` over `v_a . (i, j) = sum c (k, l)` for
    /// every basis element and index pair; the left side comes from the
    /// structure constants, the right from the representation matrices.
    /// Returns the first failing `(a, i, j)`.
    pub fn check_equivariance(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let alg = &self.algebra;
        for a in 0..alg.dim() {
            let g = alg.basis_vector(a);
            for i in 0..self.n {
                for j in 0..self.n {
                    let lhs = alg.bracket(&g, self.entry(i, j));
                    let mut rhs = alg.zero_vector();
                    for ((k, l), c) in alg.pair_action(a, i, j) {
                        rhs.add_scaled(self.entry(k, l), &c);
                    }
                    if lhs != rhs {
                        return Err((a, i, j));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds `L` for gl_N, so_N or g2.
pub fn build_l(alg: &AlgebraRef) -> Result<LMatrix> {
    let n = alg.rep_dim();
    let mut entries = Vec::with_capacity(n * n);
    let mut relations = Vec::new();
    match alg.kind() {
        AlgebraKind::Gl(_) => {
            for a in 0..n * n {
                entries.push(alg.basis_vector(a));
            }
        }
        AlgebraKind::So(_) => {
            let index = |i: usize, j: usize| alg.basis_pairs().iter().position(|&p| p == (i, j)).unwrap();
            for i in 0..n {
                for j in 0..n {
                    entries.push(match i.cmp(&j) {
                        std::cmp::Ordering::Less => alg.basis_vector(index(i, j)),
                        std::cmp::Ordering::Greater => alg.basis_vector(index(j, i)).scale(&int(-1)),
                        std::cmp::Ordering::Equal => alg.zero_vector(),
                    });
                }
            }
            relations.push(LinearRelation::Skew);
        }
        AlgebraKind::G2 => {
            for i in 0..n {
                for j in 0..n {
                    entries.push(g2_generator(alg, i, j)?);
                }
            }
            relations.push(LinearRelation::Skew);
            relations.extend((0..n).map(|l| LinearRelation::OmegaContraction { l }));
        }
    }
    Ok(LMatrix { algebra: alg.clone(), n, entries, relations })
}
