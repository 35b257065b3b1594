//! Exact rational arithmetic, sparse tensors and the permutation, subset and
//! matching enumerations everything else is built on.

pub mod combinatorics;
pub mod rational;
pub mod tensor;

pub use combinatorics::{
    binomial, multiset_permutations, ordered_set_partitions, perfect_matchings, sign_of_sequence,
    signed_permutations, subsets, Pairing, Permutation,
};
pub use rational::Rational;
pub use tensor::{MultiIndex, SparseTensor};
