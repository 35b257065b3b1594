//! Seeded random inputs for property checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact_math::rational::{int, ratio, Rational};
use crate::lie_algebras::{AlgebraKind, LieAlgebra, LieVector};
use crate::poly_invariants::{MPolynomial, Var};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero rational with numerator in -3..=3 and denominator in 1..=3.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let n = rng.gen_range(-3i64..=3);
        if n != 0 {
            return ratio(n, rng.gen_range(1i64..=3));
        }
    }
}

/// Sparse random vector with one to three nonzero coordinates.
pub fn random_vector<R: Rng + ?Sized>(alg: &LieAlgebra, rng: &mut R) -> LieVector {
    let d = alg.dim();
    let mut v = alg.zero_vector();
    for _ in 0..rng.gen_range(1..=3usize) {
        v.add_scaled(&alg.basis_vector(rng.gen_range(0..d)), &small_rational(rng));
    }
    if v.is_zero() {
        return alg.basis_vector(rng.gen_range(0..d));
    }
    v
}

/// Word of random vectors with length in `0..=max_len`.
pub fn random_word<R: Rng + ?Sized>(alg: &LieAlgebra, max_len: usize, rng: &mut R) -> Vec<LieVector> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| random_vector(alg, rng)).collect()
}

/// Variables compatible with the relations on `L`: the upper triangle for
/// so_N and g2, every entry for gl_N.
pub fn admissible_variables(alg: &LieAlgebra) -> Vec<Var> {
    let n = alg.rep_dim();
    match alg.kind() {
        AlgebraKind::Gl(_) => (0..n).flat_map(|i| (0..n).map(move |j| Var::m(i, j))).collect(),
        _ => (0..n).flat_map(|i| (i + 1..n).map(move |j| Var::m(i, j))).collect(),
    }
}

/// Random polynomial of degree at most `max_degree` with up to four terms
/// over `vars`.
pub fn random_poly<R: Rng + ?Sized>(vars: &[Var], max_degree: usize, rng: &mut R) -> MPolynomial {
    let mut p = MPolynomial::zero();
    for _ in 0..rng.gen_range(1..=4usize) {
        let deg = rng.gen_range(1..=max_degree.max(1));
        let mut t = MPolynomial::constant(small_rational(rng));
        for _ in 0..deg {
            t = &t * &MPolynomial::var(vars[rng.gen_range(0..vars.len())]);
        }
        p = &p + &t;
    }
    if p.is_zero() {
        MPolynomial::constant(int(1))
    } else {
        p
    }
}
