//! Exact construction of central elements in universal enveloping algebras
//! from polynomial invariants of the generator matrix `L`.
//!
//! Modules, bottom up:
//!
//! * [`exact_math`]: rationals, sparse tensors, permutations and matchings.
//! * [`octonions`]: the octonion table and the omega tensors.
//! * [`lie_algebras`]: gl_N, so_N, g2 and the generator matrix `L`.
//! * [`poly_invariants`]: commutative polynomials in `m_ij`, the derivation
//!   action and the invariant families.
//! * [`uea`]: PBW normal form, symmetrization and centrality.
//! * [`central_elements`]: the named central-element families.

pub mod error;
pub mod exact_math;
pub mod lie_algebras;
pub mod octonions;
pub mod par;
pub mod poly_invariants;
pub mod sampling;
pub mod uea;
pub mod central_elements;
pub mod checks;

pub use error::{Error, Result};
