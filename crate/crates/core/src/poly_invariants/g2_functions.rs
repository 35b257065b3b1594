//! Omega-tensor contractions of `m_{i1 j1} .. m_{ik jk}` over the seven
//! imaginary octonion units.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::poly::{MPolynomial, Monomial, Var};
use crate::error::{Error, Result};
use crate::exact_math::rational::{as_i64, int};
use crate::exact_math::{ordered_set_partitions, SparseTensor};
use crate::octonions::{omega_skew, IMAG};
use crate::par;

/// One index slot of the product `m_{i1 j1} .. m_{ik jk}`: `Row(t)` is `i_t`,
/// `Col(t)` is `j_t` (zero-based `t`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    Row(usize),
    Col(usize),
}

fn omega_entries(size: usize) -> Result<Vec<(Vec<usize>, i64)>> {
    let w = omega_skew(size)?;
    w.tensor()
        .iter()
        .map(|(idx, v)| {
            as_i64(v).map(|v| (idx.clone(), v)).ok_or_else(|| Error::Consistency("non-integer omega entry".into()))
        })
        .collect()
}

fn check_sizes(sizes: &[usize]) -> Result<usize> {
    if sizes.is_empty() {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    if let Some(s) = sizes.iter().find(|s| !(2..=IMAG).contains(*s)) {
        return Err(Error::InvalidPartition(format!("part size {s} outside 2..=7")));
    }
    Ok(sizes.iter().sum())
}

/// `R(i_1..i_k) = sum over ordered set partitions of the positions into blocks
/// of the given sizes of prod_b omega_{|b|}(i restricted to b)`.
pub fn row_tensor(sizes: &[usize]) -> Result<SparseTensor> {
    let k = check_sizes(sizes)?;
    if k > IMAG {
        return Err(Error::InvalidPartition(format!("total degree {k} exceeds 7")));
    }
    let entries: Vec<Vec<(Vec<usize>, i64)>> = sizes.iter().map(|&s| omega_entries(s)).collect::<Result<_>>()?;
    let mut acc: HashMap<Vec<usize>, i64> = HashMap::new();
    for blocks in ordered_set_partitions(sizes) {
        let mut idx = vec![0usize; k];
        fill_blocks(&blocks, &entries, 0, 1, &mut idx, &mut acc);
    }
    let mut t = SparseTensor::zeros(vec![IMAG; k]);
    for (idx, v) in acc.into_iter().filter(|(_, v)| *v != 0) {
        t.set(idx, int(v))?;
    }
    Ok(t)
}

fn fill_blocks(
    blocks: &[Vec<usize>],
    entries: &[Vec<(Vec<usize>, i64)>],
    b: usize,
    coeff: i64,
    idx: &mut Vec<usize>,
    acc: &mut HashMap<Vec<usize>, i64>,
) {
    if b == blocks.len() {
        *acc.entry(idx.clone()).or_insert(0) += coeff;
        return;
    }
    for (vals, w) in &entries[b] {
        for (&pos, &v) in blocks[b].iter().zip(vals) {
            idx[pos] = v;
        }
        fill_blocks(blocks, entries, b + 1, coeff * w, idx, acc);
    }
}

/// Positions of parts whose omega tensor vanishes identically (sizes 5, 6).
pub fn vanishing_parts(sizes: &[usize]) -> Vec<usize> {
    sizes.iter().copied().filter(|s| *s == 5 || *s == 6).collect()
}

/// `sum_{i, j} R_rows(i) R_cols(j) prod_t m_{i_t j_t}` over all row and column
/// partitions into parts of the prescribed sizes. Parts of size 2 use the
/// chain tensor `-delta`.
pub fn g_poly(rows: &[usize], cols: &[usize]) -> Result<MPolynomial> {
    let k = check_sizes(rows)?;
    if check_sizes(cols)? != k {
        return Err(Error::InvalidPartition(format!("row parts {rows:?} and column parts {cols:?} differ in total")));
    }
    let r = integer_entries(&row_tensor(rows)?)?;
    let c = integer_entries(&row_tensor(cols)?)?;
    if r.is_empty() || c.is_empty() {
        return Ok(MPolynomial::zero());
    }
    let chunks: Vec<&[(Vec<usize>, i64)]> = r.chunks(32).collect();
    let merged = par::map_reduce(
        &chunks,
        HashMap::<Monomial, i64>::new,
        |chunk| {
            let mut acc: HashMap<Monomial, i64> = HashMap::new();
            for (i, x) in chunk.iter() {
                for (j, y) in &c {
                    let mut mono: Monomial = i.iter().zip(j).map(|(&a, &b)| Var::m(a, b)).collect();
                    mono.sort_unstable();
                    *acc.entry(mono).or_insert(0) += x * y;
                }
            }
            acc
        },
        merge_counts,
    );
    Ok(MPolynomial::from_terms(merged.into_iter().filter(|(_, v)| *v != 0).map(|(m, v)| (m, int(v)))))
}

fn integer_entries(t: &SparseTensor) -> Result<Vec<(Vec<usize>, i64)>> {
    t.iter()
        .map(|(idx, v)| as_i64(v).map(|v| (idx.clone(), v)).ok_or_else(|| Error::Consistency("non-integer entry".into())))
        .collect()
}

fn merge_counts(mut a: HashMap<Monomial, i64>, b: HashMap<Monomial, i64>) -> HashMap<Monomial, i64> {
    if a.len() < b.len() {
        return merge_counts(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Contracts each group of slots of `m_{i1 j1} .. m_{ik jk}` with the omega
/// tensor of the group's size, in the listed slot order.
///
/// Every slot must appear in exactly one group, and no group may hold both
/// slots of one factor `m_{it jt}`.
pub fn contraction_poly(k: usize, groups: &[Vec<Slot>]) -> Result<MPolynomial> {
    let mut seen = HashMap::new();
    for (g, group) in groups.iter().enumerate() {
        if !(2..=IMAG).contains(&group.len()) {
            return Err(Error::InvalidPartition(format!("group {g} has size {} outside 2..=7", group.len())));
        }
        for s in group {
            let t = match s {
                Slot::Row(t) | Slot::Col(t) => *t,
            };
            if t >= k {
                return Err(Error::InvalidPartition(format!("slot {s:?} beyond degree {k}")));
            }
            if seen.insert(*s, g).is_some() {
                return Err(Error::InvalidPartition(format!("slot {s:?} used twice")));
            }
            let partner = match s {
                Slot::Row(t) => Slot::Col(*t),
                Slot::Col(t) => Slot::Row(*t),
            };
            if group.contains(&partner) {
                return Err(Error::InvalidPartition(format!(
                    "group {g} contains both indices of factor {}; such contractions are excluded",
                    t + 1
                )));
            }
        }
    }
    if seen.len() != 2 * k {
        return Err(Error::InvalidPartition(format!("{} of {} slots covered", seen.len(), 2 * k)));
    }
    let entries: Vec<Vec<(Vec<usize>, i64)>> =
        groups.iter().map(|g| omega_entries(g.len())).collect::<Result<_>>()?;
    let mut rows = vec![0usize; k];
    let mut cols = vec![0usize; k];
    let mut acc: HashMap<Monomial, i64> = HashMap::new();
    contract_rec(groups, &entries, 0, 1, &mut rows, &mut cols, &mut acc);
    Ok(MPolynomial::from_terms(acc.into_iter().filter(|(_, v)| *v != 0).map(|(m, v)| (m, int(v)))))
}

fn contract_rec(
    groups: &[Vec<Slot>],
    entries: &[Vec<(Vec<usize>, i64)>],
    g: usize,
    coeff: i64,
    rows: &mut Vec<usize>,
    cols: &mut Vec<usize>,
    acc: &mut HashMap<Monomial, i64>,
) {
    if g == groups.len() {
        let mut mono: Monomial = rows.iter().zip(cols.iter()).map(|(&a, &b)| Var::m(a, b)).collect();
        mono.sort_unstable();
        *acc.entry(mono).or_insert(0) += coeff;
        return;
    }
    for (vals, w) in &entries[g] {
        for (s, &v) in groups[g].iter().zip(vals) {
            match s {
                Slot::Row(t) => rows[*t] = v,
                Slot::Col(t) => cols[*t] = v,
            }
        }
        contract_rec(groups, entries, g + 1, coeff * w, rows, cols, acc);
    }
}
