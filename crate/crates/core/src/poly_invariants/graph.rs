//! Invariants encoded by oriented two-coloured graphs.
//!
//! Edge `e` stands for the factor `m_{i_e j_e}`: its tail end carries the row
//! index `i_e` and its head end the column index `j_e`. A white vertex ties
//! the indices at its two ends with a Kronecker delta. A black vertex feeds
//! the indices at its ends, in its incidence order, into the rank-`N`
//! alternator.
//!
//! Vertices and edges are numbered from 1 in this representation, which is
//! also the JSON form.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::{MPolynomial, Monomial, Var};
use crate::error::{Error, Result};
use crate::exact_math::rational::int;
use crate::exact_math::signed_permutations;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

/// One end of a numbered edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EndRef {
    pub edge: usize,
    pub end: End,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub color: Color,
    /// Order of the ends at a black vertex. When absent, ends are taken by
    /// increasing edge number, tail before head.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Vec<EndRef>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Vertex {
    pub fn white() -> Self {
        Vertex { color: Color::White, incidence: None }
    }

    pub fn black(incidence: Option<Vec<EndRef>>) -> Self {
        Vertex { color: Color::Black, incidence }
    }
}

impl InvariantGraph {
    /// Ends attached to each vertex (zero-based vertex positions), in the
    /// order the vertex contracts them. Validates degrees against `n`.
    pub fn slots(&self, n: usize) -> Result<Vec<Vec<EndRef>>> {
        let nv = self.vertices.len();
        let mut attached: Vec<Vec<EndRef>> = vec![Vec::new(); nv];
        for (e, edge) in self.edges.iter().enumerate() {
            for (v, end) in [(edge.tail, End::Tail), (edge.head, End::Head)] {
                if v == 0 || v > nv {
                    return Err(Error::MalformedGraph {
                        vertex: v,
                        reason: format!("edge {} refers to a vertex outside 1..={nv}", e + 1),
                    });
                }
                attached[v - 1].push(EndRef { edge: e + 1, end });
            }
        }
        let mut out = Vec::with_capacity(nv);
        for (v, (vertex, ends)) in self.vertices.iter().zip(attached).enumerate() {
            let malformed = |reason: String| Error::MalformedGraph { vertex: v + 1, reason };
            match vertex.color {
                Color::White => {
                    if vertex.incidence.is_some() {
                        return Err(malformed("white vertices carry no incidence order".into()));
                    }
                    if ends.len() != 2 {
                        return Err(malformed(format!("white vertex has degree {}, expected 2", ends.len())));
                    }
                    out.push(ends);
                }
                Color::Black => {
                    if ends.len() != n {
                        return Err(malformed(format!("black vertex has degree {}, expected {n}", ends.len())));
                    }
                    match &vertex.incidence {
                        None => out.push(ends),
                        Some(order) => {
                            let mut a = order.clone();
                            let mut b = ends.clone();
                            a.sort();
                            b.sort();
                            if a != b {
                                return Err(malformed(
                                    "incidence list does not match the edges attached to the vertex".into(),
                                ));
                            }
                            out.push(order.clone());
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Expands the graph invariant over `N = n` as a polynomial in independent
/// entries `m_ij`.
pub fn compile_graph(graph: &InvariantGraph, n: usize) -> Result<MPolynomial> {
    if n == 0 {
        return Err(Error::InvalidInput("representation dimension must be positive".into()));
    }
    let slots = graph.slots(n)?;
    let k = graph.edges.len();
    let colors: Vec<Color> = graph.vertices.iter().map(|v| v.color).collect();
    let perms: Vec<(Vec<usize>, i64)> = if colors.contains(&Color::Black) {
        signed_permutations(n).map(|(p, s)| (p.image().to_vec(), s as i64)).collect()
    } else {
        Vec::new()
    };
    let choices = |c: Color| -> Vec<(Vec<usize>, i64)> {
        match c {
            Color::White => (0..n).map(|c| (vec![c, c], 1)).collect(),
            Color::Black => perms.clone(),
        }
    };
    let options: Vec<Vec<(Vec<usize>, i64)>> = colors.iter().map(|&c| choices(c)).collect();
    if k == 0 {
        return Ok(MPolynomial::one());
    }

    // Split on the first vertex's choices; the rest is enumerated per task.
    let first = &options[0];
    let merged = par::map_reduce(
        first,
        HashMap::<Monomial, i64>::new,
        |(vals, sign)| {
            let mut rows = vec![0usize; k];
            let mut cols = vec![0usize; k];
            assign(&slots[0], vals, &mut rows, &mut cols);
            let mut acc = HashMap::new();
            enumerate(&slots, &options, 1, *sign, &mut rows, &mut cols, &mut acc);
            acc
        },
        |mut a, b| {
            for (m, v) in b {
                *a.entry(m).or_insert(0) += v;
            }
            a
        },
    );
    Ok(MPolynomial::from_terms(merged.into_iter().filter(|(_, v)| *v != 0).map(|(m, v)| (m, int(v)))))
}

fn assign(ends: &[EndRef], vals: &[usize], rows: &mut [usize], cols: &mut [usize]) {
    for (r, &v) in ends.iter().zip(vals) {
        match r.end {
            End::Tail => rows[r.edge - 1] = v,
            End::Head => cols[r.edge - 1] = v,
        }
    }
}

fn enumerate(
    slots: &[Vec<EndRef>],
    options: &[Vec<(Vec<usize>, i64)>],
    v: usize,
    coeff: i64,
    rows: &mut Vec<usize>,
    cols: &mut Vec<usize>,
    acc: &mut HashMap<Monomial, i64>,
) {
    if v == slots.len() {
        let mut mono: Monomial = rows.iter().zip(cols.iter()).map(|(&a, &b)| Var::m(a, b)).collect();
        mono.sort_unstable();
        *acc.entry(mono).or_insert(0) += coeff;
        return;
    }
    for (vals, s) in &options[v] {
        assign(&slots[v], vals, rows, cols);
        enumerate(slots, options, v + 1, coeff * s, rows, cols, acc);
    }
}

/// A random valid graph with `blacks` black vertices of degree `n` and
/// `whites` white vertices. Ends are paired uniformly at random.
pub fn random_graph<R: Rng + ?Sized>(n: usize, blacks: usize, whites: usize, rng: &mut R) -> Result<InvariantGraph> {
    let total = blacks * n + 2 * whites;
    if total == 0 || !total.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("{blacks} black vertices of degree {n} leave an odd number of ends")));
    }
    // One entry per end: the vertex it belongs to (black vertices first).
    let mut ends: Vec<usize> = (0..blacks).flat_map(|b| std::iter::repeat_n(b, n)).collect();
    ends.extend((0..whites).flat_map(|w| [blacks + w, blacks + w]));
    ends.shuffle(rng);
    let mut edges = Vec::with_capacity(total / 2);
    let mut incidence: Vec<Vec<EndRef>> = vec![Vec::new(); blacks];
    for (e, pair) in ends.chunks(2).enumerate() {
        edges.push(Edge { tail: pair[0] + 1, head: pair[1] + 1 });
        for (v, end) in [(pair[0], End::Tail), (pair[1], End::Head)] {
            if v < blacks {
                incidence[v].push(EndRef { edge: e + 1, end });
            }
        }
    }
    for order in incidence.iter_mut() {
        order.shuffle(rng);
    }
    let mut vertices: Vec<Vertex> = incidence.into_iter().map(|o| Vertex::black(Some(o))).collect();
    vertices.extend((0..whites).map(|_| Vertex::white()));
    Ok(InvariantGraph { vertices, edges })
}
