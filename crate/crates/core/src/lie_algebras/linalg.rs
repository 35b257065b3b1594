use num_traits::Zero;

use crate::exact_math::rational::{int, Rational};

/// Incremental exact row reduction over a fixed list of generator vectors.
///
/// Each stored row is reduced and remembers its expansion in the accepted
/// generators, so arbitrary vectors in the span can be expressed in them.
#[derive(Clone, Debug, Default)]
pub struct SpanReducer {
    len: usize,
    rows: Vec<ReducedRow>,
    accepted: usize,
}

#[derive(Clone, Debug)]
struct ReducedRow {
    pivot: usize,
    values: Vec<Rational>,
    /// Expansion of `values` in the accepted generators.
    combo: Vec<Rational>,
}

impl SpanReducer {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new(), accepted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.accepted
    }

    /// Reduces `v` against the stored rows; returns the residual and the
    /// coefficients (in accepted generators) of what was subtracted.
    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut residual = v.to_vec();
        let mut taken = vec![Rational::zero(); self.accepted];
        for row in &self.rows {
            let c = residual[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(&row.values) {
                if !x.is_zero() {
                    *r -= &c * x;
                }
            }
            for (t, x) in taken.iter_mut().zip(&row.combo) {
                if !x.is_zero() {
                    *t += &c * x;
                }
            }
        }
        (residual, taken)
    }

    /// Adds `v` as a new generator if it is independent of the current ones.
    pub fn try_insert(&mut self, v: &[Rational]) -> bool {
        let (residual, taken) = self.reduce(v);
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = int(1) / &residual[pivot];
        let values: Vec<Rational> = residual.iter().map(|x| x * &inv).collect();
        // values = (v - sum taken_a g_a) / residual[pivot]
        let mut combo: Vec<Rational> = taken.iter().map(|t| -(t * &inv)).collect();
        combo.push(inv);
        for row in &mut self.rows {
            row.combo.push(Rational::zero());
        }
        self.accepted += 1;
        // Keep earlier rows reduced at the new pivot (full RREF).
        for row in &mut self.rows {
            let c = row.values[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (r, x) in row.values.iter_mut().zip(&values) {
                if !x.is_zero() {
                    *r -= &c * x;
                }
            }
            for (r, x) in row.combo.iter_mut().zip(&combo) {
                if !x.is_zero() {
                    *r -= &c * x;
                }
            }
        }
        self.rows.push(ReducedRow { pivot, values, combo });
        true
    }

    /// Coefficients of `v` in the accepted generators, or `None` if `v` is
    /// outside their span.
    pub fn express(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (residual, taken) = self.reduce(v);
        residual.iter().all(Zero::is_zero).then_some(taken)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn greedy_rank_and_expression() {
        let mut r = SpanReducer::new(3);
        assert!(r.try_insert(&v(&[1, 2, 0])));
        assert!(r.try_insert(&v(&[0, 1, 1])));
        assert!(!r.try_insert(&v(&[2, 5, 1])));
        assert_eq!(r.rank(), 2);
        assert_eq!(r.express(&v(&[3, 7, 1])), Some(v(&[3, 1])));
        assert_eq!(r.express(&v(&[0, 0, 1])), None);
    }
}
