use serde::{Deserialize, Serialize};

use super::graph::{compile_graph, InvariantGraph};
use super::g2_functions::g_poly;
use super::poly::{Domain, MPolynomial, PolyMatrix};
use crate::error::{invalid, Result};
use crate::exact_math::rational::{factorial, int, Rational};
use crate::exact_math::subsets;

/// `sum_i m_ii`.
pub fn trace_poly(n: usize) -> MPolynomial {
    (0..n).fold(MPolynomial::zero(), |acc, i| &acc + &MPolynomial::m(i, i))
}

/// Unit-normalized pfaffian of the skew pattern on the (sorted, distinct)
/// index set `idx`, over the variables `m_ij` with `i < j`.
pub fn pfaffian_poly(idx: &[usize]) -> Result<MPolynomial> {
    if !idx.len().is_multiple_of(2) {
        return Err(invalid(format!("pfaffian needs an even index set, got {}", idx.len())));
    }
    let n = idx.iter().max().map_or(0, |m| m + 1);
    let sub = PolyMatrix::skew_symbolic(n, 0).principal(idx);
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("pfaffian index set must be strictly increasing"));
    }
    Ok(sub.pfaffian())
}

/// `det (m_{r c})_{r in rows, c in cols}` over independent entries.
pub fn det_poly(rows: &[usize], cols: &[usize]) -> Result<MPolynomial> {
    if rows.len() != cols.len() {
        return Err(invalid(format!("determinant needs |I| = |J|, got {} and {}", rows.len(), cols.len())));
    }
    let n = rows.iter().chain(cols).max().map_or(0, |m| m + 1);
    Ok(PolyMatrix::symbolic(n, 0).submatrix(rows, cols).det())
}

/// `sum_{|I| = k} det M_I`.
pub fn c_k_poly(n: usize, k: usize) -> Result<MPolynomial> {
    if k > n {
        return Err(invalid(format!("C_k needs k <= N, got k = {k}, N = {n}")));
    }
    let m = PolyMatrix::symbolic(n, 0);
    Ok(subsets(n, k).fold(MPolynomial::zero(), |acc, s| &acc + &m.principal(&s).det()))
}

/// `sum_{|I| = 2k} (Pf M_I)^2` over the skew pattern.
pub fn sum_pf_sq_poly(n: usize, k: usize) -> Result<MPolynomial> {
    if 2 * k > n {
        return Err(invalid(format!("sum of squared pfaffians needs 2k <= N, got k = {k}, N = {n}")));
    }
    let m = PolyMatrix::skew_symbolic(n, 0);
    Ok(subsets(n, 2 * k).fold(MPolynomial::zero(), |acc, s| {
        let pf = m.principal(&s).pfaffian();
        &acc + &(&pf * &pf)
    }))
}

/// `Pf M` for even `N`.
pub fn pf_full_poly(n: usize) -> Result<MPolynomial> {
    if !n.is_multiple_of(2) {
        return Err(invalid(format!("Pf M needs even N, got {n}")));
    }
    Ok(PolyMatrix::skew_symbolic(n, 0).pfaffian())
}

/// A named invariant family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Trace,
    /// Zero-based, increasing index set.
    Pf { indices: Option<Vec<usize>> },
    Det { rows: Option<Vec<usize>>, cols: Option<Vec<usize>> },
    Ck { k: usize },
    Sumpf2 { k: usize },
    G { rows: Vec<usize>, cols: Vec<usize> },
    Graph { graph: InvariantGraph },
}

/// A unit-normalized invariant candidate together with the domain on which
/// it is meant to be invariant and the combinatorial prefactor of its
/// tensor-contraction form, when it has one.
#[derive(Clone, Debug)]
pub struct Invariant {
    pub label: String,
    pub poly: MPolynomial,
    pub domain: Domain,
    pub prefactor: Option<Rational>,
}

/// Builds the polynomial of `family` for matrices of size `n`.
pub fn build_invariant(family: &Family, n: usize) -> Result<Invariant> {
    let all: Vec<usize> = (0..n).collect();
    Ok(match family {
        Family::Trace => Invariant { label: "trace".into(), poly: trace_poly(n), domain: Domain::General, prefactor: None },
        Family::Pf { indices } => {
            let idx = indices.clone().unwrap_or_else(|| all.clone());
            let k = idx.len() / 2;
            Invariant {
                label: "pf".into(),
                poly: pfaffian_poly(&idx)?,
                domain: Domain::Skew,
                prefactor: Some(factorial(k) * int(1 << k)),
            }
        }
        Family::Det { rows, cols } => {
            let r = rows.clone().unwrap_or_else(|| all.clone());
            let c = cols.clone().unwrap_or_else(|| r.clone());
            let k = r.len();
            Invariant { label: "det".into(), poly: det_poly(&r, &c)?, domain: Domain::General, prefactor: Some(factorial(k)) }
        }
        Family::Ck { k } => Invariant { label: format!("c{k}"), poly: c_k_poly(n, *k)?, domain: Domain::General, prefactor: None },
        Family::Sumpf2 { k } => {
            Invariant { label: format!("sumpf2_{k}"), poly: sum_pf_sq_poly(n, *k)?, domain: Domain::Skew, prefactor: None }
        }
        Family::G { rows, cols } => {
            if n != crate::octonions::IMAG {
                return Err(invalid("G functions are defined for 7x7 matrices"));
            }
            Invariant { label: format!("g{rows:?}{cols:?}"), poly: g_poly(rows, cols)?, domain: Domain::General, prefactor: None }
        }
        Family::Graph { graph } => {
            Invariant { label: "graph".into(), poly: compile_graph(graph, n)?, domain: Domain::General, prefactor: None }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::super::poly::{Monomial, Var};
    use super::*;

    fn mono(vs: &[(usize, usize)]) -> Monomial {
        let mut m: Monomial = vs.iter().map(|&(i, j)| Var::m(i, j)).collect();
        m.sort();
        m
    }

    #[test]
    fn pfaffian_four() {
        let pf = pfaffian_poly(&[0, 1, 2, 3]).unwrap();
        let expect = MPolynomial::from_terms([
            (mono(&[(0, 1), (2, 3)]), int(1)),
            (mono(&[(0, 2), (1, 3)]), int(-1)),
            (mono(&[(0, 3), (1, 2)]), int(1)),
        ]);
        assert_eq!(pf, expect);
        assert!(pfaffian_poly(&[0, 1, 2]).is_err());
    }

    #[test]
    fn det_two() {
        let d = det_poly(&[0, 1], &[0, 1]).unwrap();
        let expect = MPolynomial::from_terms([(mono(&[(0, 0), (1, 1)]), int(1)), (mono(&[(0, 1), (1, 0)]), int(-1))]);
        assert_eq!(d, expect);
        assert!(det_poly(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn pfaffian_squares_to_skew_det() {
        let pf = pfaffian_poly(&[0, 1, 2, 3]).unwrap();
        let det = PolyMatrix::skew_symbolic(4, 0).det();
        assert_eq!(&pf * &pf, det);
        assert_eq!(det_poly(&[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap().skew_substitute(), det);
    }

    #[test]
    fn family_small_cases() {
        assert_eq!(c_k_poly(4, 1).unwrap(), trace_poly(4));
        let s1 = sum_pf_sq_poly(4, 1).unwrap();
        let sq = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .fold(MPolynomial::zero(), |acc, (i, j)| &acc + &(&MPolynomial::m(i, j) * &MPolynomial::m(i, j)));
        assert_eq!(s1, sq);
        let pf = pf_full_poly(4).unwrap();
        assert_eq!(sum_pf_sq_poly(4, 2).unwrap(), &pf * &pf);
        assert!(pf_full_poly(5).is_err());
        assert!(sum_pf_sq_poly(4, 3).is_err());
        assert!(c_k_poly(3, 4).is_err());
    }
}
