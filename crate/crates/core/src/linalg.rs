//! Exact Gaussian elimination over `Q`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// A sparse row: column index to coefficient.
pub type SparseRow = BTreeMap<usize, Rational>;

/// Reduced row echelon form; returns the pivot rows and their pivot columns.
fn rref(rows: Vec<SparseRow>) -> Vec<(usize, SparseRow)> {
    let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
    for mut row in rows {
        // eliminate existing pivots
        for (col, prow) in &pivots {
            if let Some(c) = row.get(col).cloned() {
                for (j, v) in prow {
                    let slot = row.entry(*j).or_insert_with(Rational::zero);
                    *slot -= &c * v;
                }
                row.retain(|_, v| !v.is_zero());
            }
        }
        let Some((&col, lead)) = row.iter().next() else {
            continue;
        };
        let inv = lead.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        // back-substitute into earlier pivots
        for (_, prow) in pivots.iter_mut() {
            if let Some(c) = prow.get(&col).cloned() {
                for (j, v) in &row {
                    let slot = prow.entry(*j).or_insert_with(Rational::zero);
                    *slot -= &c * v;
                }
                prow.retain(|_, v| !v.is_zero());
            }
        }
        pivots.push((col, row));
    }
    pivots
}

pub fn rank(rows: Vec<SparseRow>) -> usize {
    rref(rows).len()
}

/// A basis of `{x : row · x = 0 for all rows}` in `Q^ncols`.
pub fn nullspace(rows: Vec<SparseRow>, ncols: usize) -> Vec<Vec<Rational>> {
    let pivots = rref(rows);
    let pivot_cols: BTreeMap<usize, &SparseRow> = pivots.iter().map(|(c, r)| (*c, r)).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains_key(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (&pc, row) in &pivot_cols {
            if let Some(c) = row.get(&free) {
                v[pc] = -c.clone();
            }
        }
        basis.push(v);
    }
    basis
}
