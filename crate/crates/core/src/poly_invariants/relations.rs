//! Identities between pfaffians and determinants of skew and general
//! symbolic matrices, checked by exact expansion.

use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Map, Value};

use super::families::sum_pf_sq_poly;
use super::poly::{MPolynomial, PolyMatrix, Var};
use crate::error::{invalid, Result};
use crate::exact_math::rational::ratio;

/// Optional sizes for the relation checks. Missing fields take the smallest
/// size at which the relation is meaningful.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationParams {
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub k: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationVerdict {
    pub id: String,
    pub holds: bool,
    #[serde(serialize_with = "as_text")]
    pub residual: MPolynomial,
    pub metadata: Map<String, Value>,
}

fn as_text<S: Serializer>(p: &MPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn verdict(id: impl Into<String>, residual: MPolynomial, metadata: Value) -> RelationVerdict {
    let metadata = match metadata {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    RelationVerdict { id: id.into(), holds: residual.is_zero(), residual, metadata }
}

fn mp(mat: u8, i: usize, j: usize) -> MPolynomial {
    MPolynomial::var(Var::of(mat, i, j))
}

fn fixed_size(params: &RelationParams, n: usize, id: u8) -> Result<()> {
    match params.n {
        Some(m) if m != n => Err(invalid(format!("relation {id} is stated for {n}x{n} matrices, got N = {m}"))),
        _ => Ok(()),
    }
}

/// Checks relation `id` (1 to 4):
///
/// 1. `(Pf M)^2 = det M` for skew `M` (default 2x2; any even size up to 6).
/// 2. `det(M + M') - det M - det M' = 1/2 (sum of the eight cross products)`
///    for general 2x2 `M`, `M'`.
/// 3. `Pf(M + M') - Pf M - Pf M'` against half the symmetrized cross terms
///    for skew 4x4 `M`, `M'`. The three-term right-hand side as usually
///    printed is also evaluated, and its residual is reported in metadata.
/// 4. `Pf(M^k) = (Pf M)^k` for skew `M` of even size and odd `k`. The
///    signed form `Pf(M^k) = (-1)^{(N/2)(k-1)/2} (Pf M)^k` is reported in
///    metadata.
pub fn check_relation(id: u8, params: &RelationParams) -> Result<RelationVerdict> {
    match id {
        1 => relation_one(params),
        2 => relation_two(params),
        3 => relation_three(params),
        4 => relation_four(params),
        _ => Err(invalid(format!("unknown relation {id}; expected 1, 2, 3 or 4"))),
    }
}

fn relation_one(params: &RelationParams) -> Result<RelationVerdict> {
    let n = params.n.unwrap_or(2);
    if n == 0 || !n.is_multiple_of(2) || n > 6 {
        return Err(invalid(format!("relation 1 needs even N in 2..=6, got {n}")));
    }
    let m = PolyMatrix::skew_symbolic(n, 0);
    let pf = m.pfaffian();
    let residual = &(&pf * &pf) - &m.det().skew_substitute();
    Ok(verdict("1", residual, json!({ "n": n, "domain": "skew" })))
}

fn relation_two(params: &RelationParams) -> Result<RelationVerdict> {
    fixed_size(params, 2, 2)?;
    let (a, b) = (PolyMatrix::symbolic(2, 0), PolyMatrix::symbolic(2, 1));
    let lhs = &(&a.add(&b).det() - &a.det()) - &b.det();
    let (x, y) = (|i, j| mp(0, i, j), |i, j| mp(1, i, j));
    let half_sum = [
        &x(0, 0) * &y(1, 1),
        -(&x(1, 0) * &y(0, 1)),
        -(&x(0, 1) * &y(1, 0)),
        &x(1, 1) * &y(0, 0),
        &y(1, 1) * &x(0, 0),
        -(&y(0, 1) * &x(1, 0)),
        -(&y(1, 0) * &x(0, 1)),
        &y(0, 0) * &x(1, 1),
    ]
    .iter()
    .fold(MPolynomial::zero(), |acc, t| &acc + t);
    let rhs = half_sum.scale(&ratio(1, 2));
    Ok(verdict("2", &lhs - &rhs, json!({ "n": 2, "domain": "general", "normalization": "1/2" })))
}

fn relation_three(params: &RelationParams) -> Result<RelationVerdict> {
    fixed_size(params, 4, 3)?;
    let (a, b) = (PolyMatrix::skew_symbolic(4, 0), PolyMatrix::skew_symbolic(4, 1));
    let lhs = &(&a.add(&b).pfaffian() - &a.pfaffian()) - &b.pfaffian();
    // Signed pairs (i j | k l) of the 4x4 pfaffian.
    let pairs = [((0, 1), (2, 3), 1i64), ((0, 2), (1, 3), -1), ((0, 3), (1, 2), 1)];
    let cross = |first: u8, second: u8| {
        pairs.iter().fold(MPolynomial::zero(), |acc, &((i, j), (k, l), s)| {
            &acc + &(&mp(first, i, j) * &mp(second, k, l)).scale(&ratio(s, 1))
        })
    };
    // As printed: each product m_{ij} m'_{kl} listed in both orders.
    let printed = (&cross(0, 1) + &cross(0, 1)).scale(&ratio(1, 2));
    // Both assignments of M and M' to the two factors, each in both orders.
    let both = &cross(0, 1) + &cross(1, 0);
    let full = (&both + &both).scale(&ratio(1, 2));
    let literal_residual = &lhs - &printed;
    Ok(verdict(
        "3",
        &lhs - &full,
        json!({
            "n": 4,
            "domain": "skew",
            "normalization": "1/2",
            "printed_rhs_holds": literal_residual.is_zero(),
            "printed_rhs_residual": literal_residual.to_string(),
        }),
    ))
}

fn relation_four(params: &RelationParams) -> Result<RelationVerdict> {
    let n = params.n.unwrap_or(4);
    let k = params.k.unwrap_or(3);
    if n == 0 || !n.is_multiple_of(2) {
        return Err(invalid(format!("relation 4 needs even N, got {n}")));
    }
    if k == 0 || k.is_multiple_of(2) {
        return Err(invalid(format!("relation 4 needs odd k: M^{k} is not skew-symmetric")));
    }
    if !(n <= 4 && k <= 5 || n == 6 && k <= 3) {
        return Err(invalid(format!("relation 4 is limited to N <= 4 with k <= 5, or N = 6 with k <= 3; got N = {n}, k = {k}")));
    }
    let m = PolyMatrix::skew_symbolic(n, 0);
    let mk = m.pow(k as u32);
    if !mk.is_skew() {
        return Err(crate::error::Error::Consistency("odd power of a skew matrix is not skew".into()));
    }
    let lhs = mk.pfaffian();
    let rhs = m.pfaffian().pow(k as u32);
    let sign = if ((n / 2) * ((k - 1) / 2)).is_multiple_of(2) { 1 } else { -1 };
    let signed_residual = &lhs - &rhs.scale(&ratio(sign, 1));
    Ok(verdict(
        "4",
        &lhs - &rhs,
        json!({
            "n": n,
            "k": k,
            "domain": "skew",
            "sign": sign,
            "signed_form_holds": signed_residual.is_zero(),
        }),
    ))
}

/// Verifies `det(lambda I - M) = sum_k lambda^{N-2k} sum_{|I|=2k} (Pf M_I)^2`
/// for a symbolic skew `M` of even size `N` in 2..=6.
pub fn charpoly_pfaffian_identity(n: usize) -> Result<RelationVerdict> {
    if n == 0 || !n.is_multiple_of(2) || n > 6 {
        return Err(invalid(format!("the characteristic-polynomial identity is checked for N in {{2, 4, 6}}, got {n}")));
    }
    let lambda = MPolynomial::var(Var::aux(0));
    let m = PolyMatrix::skew_symbolic(n, 0);
    let shifted = PolyMatrix::from_fn(n, |i, j| {
        let entry = -m.get(i, j).clone();
        if i == j {
            &entry + &lambda
        } else {
            entry
        }
    });
    let lhs = shifted.det().skew_substitute();
    let mut rhs = MPolynomial::zero();
    for k in 0..=n / 2 {
        rhs = &rhs + &(&lambda.pow((n - 2 * k) as u32) * &sum_pf_sq_poly(n, k)?);
    }
    Ok(verdict("charpoly", &lhs - &rhs, json!({ "n": n, "domain": "skew" })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_one_and_two() {
        assert!(check_relation(1, &RelationParams::default()).unwrap().holds);
        assert!(check_relation(1, &RelationParams { n: Some(4), k: None }).unwrap().holds);
        assert!(check_relation(2, &RelationParams::default()).unwrap().holds);
        assert!(check_relation(2, &RelationParams { n: Some(3), k: None }).is_err());
    }

    #[test]
    fn relation_three_needs_all_cross_terms() {
        let v = check_relation(3, &RelationParams::default()).unwrap();
        assert!(v.holds);
        assert_eq!(v.metadata["printed_rhs_holds"], json!(false));
        assert_eq!(v.metadata["printed_rhs_residual"], json!("m2_3*m'1_4 - m2_4*m'1_3 + m3_4*m'1_2"));
    }

    #[test]
    fn relation_four_sign() {
        assert!(check_relation(4, &RelationParams { n: Some(4), k: Some(3) }).unwrap().holds);
        let v = check_relation(4, &RelationParams { n: Some(2), k: Some(3) }).unwrap();
        assert!(!v.holds);
        assert_eq!(v.metadata["signed_form_holds"], json!(true));
        assert!(check_relation(4, &RelationParams { n: Some(4), k: Some(2) }).is_err());
    }

    #[test]
    fn charpoly_small() {
        assert!(charpoly_pfaffian_identity(2).unwrap().holds);
        assert!(charpoly_pfaffian_identity(4).unwrap().holds);
        assert!(charpoly_pfaffian_identity(3).is_err());
    }
}
