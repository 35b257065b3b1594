use std::sync::Arc;

use super::{AlgebraKind, AlgebraRef, LieAlgebra, LieVector, RatMatrix, SpanReducer};
use crate::error::{invalid, Error, Result};
use crate::octonions::{Octonion, IMAG};

/// Matrix of `z -> [[x, y], z] - 3 [x, y, z]` on the imaginary octonions;
/// column `c` holds the image of `e_{c+1}`.
pub fn derivation_matrix(x: &Octonion, y: &Octonion) -> Result<RatMatrix> {
    if !x.is_imaginary() || !y.is_imaginary() {
        return Err(invalid("derivation generators must be purely imaginary"));
    }
    let xy = x.commutator(y);
    let mut m = RatMatrix::zeros(IMAG);
    for c in 0..IMAG {
        let z = Octonion::unit(c + 1);
        let image = &xy.commutator(&z) - &Octonion::associator(x, y, &z).scale(&crate::exact_math::rational::int(3));
        if !image.is_imaginary() {
            return Err(Error::Consistency("derivation leaves the imaginary octonions".into()));
        }
        for r in 0..IMAG {
            m.set(r, c, image.coords()[r + 1].clone());
        }
    }
    Ok(m)
}

/// `G_ij = derivation_matrix(e_{i+1}, e_{j+1})` (zero-based indices).
pub fn g2_generator_matrix(i: usize, j: usize) -> Result<RatMatrix> {
    if i >= IMAG || j >= IMAG {
        return Err(invalid(format!("g2 generator index ({i}, {j}) out of range")));
    }
    derivation_matrix(&Octonion::unit(i + 1), &Octonion::unit(j + 1))
}

/// g2 as derivations of the octonions, basis chosen greedily from the `G_ij`
/// with `i < j` in lexicographic order.
pub fn make_g2() -> Result<AlgebraRef> {
    let order: Vec<(usize, usize)> = (0..IMAG).flat_map(|i| (i + 1..IMAG).map(move |j| (i, j))).collect();
    make_g2_with_order(&order)
}

/// g2 with the greedy basis scan running over `order`.
pub fn make_g2_with_order(order: &[(usize, usize)]) -> Result<AlgebraRef> {
    let mut reducer = SpanReducer::new(IMAG * IMAG);
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut pairs = Vec::new();
    for &(i, j) in order {
        let m = g2_generator_matrix(i, j)?;
        if reducer.try_insert(m.as_slice()) {
            labels.push(format!("G{}{}", i + 1, j + 1));
            mats.push(m);
            pairs.push((i, j));
        }
    }
    if mats.len() != 14 {
        return Err(Error::Consistency(format!("derivation span has dimension {}, expected 14", mats.len())));
    }
    Ok(Arc::new(LieAlgebra::from_matrices(AlgebraKind::G2, labels, mats, pairs)?))
}

/// Expansion of `G_ij` in the basis of `alg` (zero-based indices).
pub fn g2_generator(alg: &LieAlgebra, i: usize, j: usize) -> Result<LieVector> {
    if alg.kind() != AlgebraKind::G2 {
        return Err(Error::UnsupportedAlgebra(alg.name()));
    }
    let m = g2_generator_matrix(i, j)?;
    alg.from_matrix(&m).map_err(|_| Error::Consistency(format!("G{}{} outside the g2 basis span", i + 1, j + 1)))
}
