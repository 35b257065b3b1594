//! Permutations, subsets and perfect matchings.
//!
//! All indices are zero-based; all enumerations are lexicographic and
//! deterministic.

use crate::error::{invalid, Result};

/// A bijection of `{0, .., n-1}` stored by its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return Err(invalid(format!("{image:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Self { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// Parity sign, counted by inversions.
    pub fn sign(&self) -> i8 {
        sign_of_sequence(&self.image)
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { image: other.image.iter().map(|&i| self.image[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { image: inv }
    }
}

/// Sign of the permutation that sorts `seq` (entries must be distinct);
/// zero if an entry repeats.
pub fn sign_of_sequence<T: Ord>(seq: &[T]) -> i8 {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            match seq[i].cmp(&seq[j]) {
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// Lexicographic enumeration of `S_n` with parity signs.
pub struct SignedPermutations {
    current: Option<Vec<usize>>,
    sign: i8,
}

impl Iterator for SignedPermutations {
    type Item = (Permutation, i8);

    fn next(&mut self) -> Option<Self::Item> {
        let cur = self.current.take()?;
        let out = (Permutation { image: cur.clone() }, self.sign);
        let mut next = cur;
        // Standard next-permutation: one swap plus a suffix reversal.
        let n = next.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| next[i] < next[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| next[j] > next[i]).unwrap();
                next.swap(i, j);
                next[i + 1..].reverse();
                let len = n - i - 1;
                let reversal_parity = (len * len.saturating_sub(1) / 2) % 2;
                self.sign = -self.sign * if reversal_parity == 1 { -1 } else { 1 };
                self.current = Some(next);
            }
        }
        Some(out)
    }
}

pub fn signed_permutations(n: usize) -> SignedPermutations {
    SignedPermutations { current: Some((0..n).collect()), sign: 1 }
}

/// Size-`k` subsets of `{0, .., n-1}` as sorted vectors, lexicographic.
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        if let Some(i) = (0..k).rev().find(|&i| next[i] < self.n - k + i) {
            next[i] += 1;
            for t in i + 1..k {
                next[t] = next[t - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(cur)
    }
}

pub fn subsets(n: usize, k: usize) -> Subsets {
    Subsets { n, current: (k <= n).then(|| (0..k).collect()) }
}

/// A perfect matching as a list of pairs `(p, q)` with `p < q`, pairs sorted
/// by first element.
pub type Pairing = Vec<(usize, usize)>;

/// All perfect matchings of `set` with the sign of the permutation
/// `(p1 q1 p2 q2 ..)` relative to the sorted order of `set`.
pub fn perfect_matchings(set: &[usize]) -> Result<Vec<(Pairing, i8)>> {
    if !set.len().is_multiple_of(2) {
        return Err(invalid(format!("perfect matching needs an even set, got {} elements", set.len())));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("perfect matching set has repeated elements"));
    }
    let mut out = Vec::new();
    matchings_rec(&sorted, &mut Vec::new(), 1, &mut out);
    Ok(out)
}

fn matchings_rec(rest: &[usize], acc: &mut Pairing, sign: i8, out: &mut Vec<(Pairing, i8)>) {
    if rest.is_empty() {
        out.push((acc.clone(), sign));
        return;
    }
    let first = rest[0];
    for t in 1..rest.len() {
        // Moving rest[t] next to rest[0] costs t-1 transpositions.
        let s = if (t - 1) % 2 == 0 { sign } else { -sign };
        let remaining: Vec<usize> =
            rest.iter().enumerate().filter(|&(i, _)| i != 0 && i != t).map(|(_, &v)| v).collect();
        acc.push((first, rest[t]));
        matchings_rec(&remaining, acc, s, out);
        acc.pop();
    }
}

/// Assignments of positions `0..sizes.sum()` to labelled blocks with the
/// prescribed sizes. Each item lists the positions of every block in
/// increasing order. Blocks of equal size are distinguished by label.
pub fn ordered_set_partitions(sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let total: usize = sizes.iter().sum();
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
    partition_rec(0, total, sizes, &mut blocks, &mut out);
    out
}

fn partition_rec(
    pos: usize,
    total: usize,
    sizes: &[usize],
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if pos == total {
        out.push(blocks.clone());
        return;
    }
    for b in 0..sizes.len() {
        if blocks[b].len() < sizes[b] {
            blocks[b].push(pos);
            partition_rec(pos + 1, total, sizes, blocks, out);
            blocks[b].pop();
        }
    }
}

/// Distinct orderings of a multiset given as a sorted slice, lexicographic.
pub fn multiset_permutations<T: Ord + Clone>(sorted: &[T]) -> Vec<Vec<T>> {
    let mut cur = sorted.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    let n = cur.len();
    if n < 2 {
        return out;
    }
    while let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) {
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_small() {
        let p1: Vec<_> = signed_permutations(1).collect();
        assert_eq!(p1, vec![(Permutation::identity(1), 1)]);
        let p2: Vec<_> = signed_permutations(2).map(|(p, s)| (p.image().to_vec(), s)).collect();
        assert_eq!(p2, vec![(vec![0, 1], 1), (vec![1, 0], -1)]);
        let p4: Vec<_> = signed_permutations(4).collect();
        assert_eq!(p4.len(), 24);
        assert_eq!(p4.iter().filter(|(_, s)| *s == 1).count(), 12);
    }

    #[test]
    fn tracked_sign_matches_inversions() {
        for n in 1..=6 {
            let mut prev: Option<Vec<usize>> = None;
            for (p, s) in signed_permutations(n) {
                assert_eq!(s, p.sign());
                if let Some(prev) = prev {
                    assert!(prev < p.image().to_vec());
                }
                prev = Some(p.image().to_vec());
            }
        }
    }

    #[test]
    fn sign_sum_vanishes() {
        for n in 2..=6 {
            let total: i64 = signed_permutations(n).map(|(_, s)| s as i64).sum();
            assert_eq!(total, 0);
        }
    }

    #[test]
    fn subset_enumeration() {
        let s: Vec<_> = subsets(3, 2).collect();
        assert_eq!(s, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let empty: Vec<_> = subsets(5, 0).collect();
        assert_eq!(empty, vec![Vec::<usize>::new()]);
        assert_eq!(subsets(6, 3).count(), 20);
        assert_eq!(subsets(2, 3).count(), 0);
    }

    #[test]
    fn matchings() {
        let m = perfect_matchings(&[0, 1]).unwrap();
        assert_eq!(m, vec![(vec![(0, 1)], 1)]);
        let m = perfect_matchings(&[0, 1, 2, 3]).unwrap();
        assert_eq!(
            m,
            vec![(vec![(0, 1), (2, 3)], 1), (vec![(0, 2), (1, 3)], -1), (vec![(0, 3), (1, 2)], 1)]
        );
        assert_eq!(perfect_matchings(&[0, 1, 2, 3, 4, 5]).unwrap().len(), 15);
        assert!(perfect_matchings(&[0, 1, 2]).is_err());
    }

    #[test]
    fn matching_sign_is_permutation_sign() {
        for (pairing, sign) in perfect_matchings(&[0, 1, 2, 3, 4, 5, 6, 7]).unwrap() {
            let flat: Vec<usize> = pairing.iter().flat_map(|&(p, q)| [p, q]).collect();
            assert_eq!(sign, sign_of_sequence(&flat));
        }
    }

    #[test]
    fn set_partitions() {
        assert_eq!(ordered_set_partitions(&[2, 1]).len(), 3);
        assert_eq!(ordered_set_partitions(&[2, 2]).len(), 6);
        assert_eq!(ordered_set_partitions(&[4]), vec![vec![vec![0, 1, 2, 3]]]);
    }

    #[test]
    fn multiset_orderings() {
        assert_eq!(multiset_permutations(&[1, 1, 2]).len(), 3);
        assert_eq!(multiset_permutations(&[0, 1, 2, 3]).len(), 24);
        assert_eq!(multiset_permutations::<u8>(&[]).len(), 1);
    }
}
