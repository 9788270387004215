//! Exact rank computation for sparse matrices over a [`Field`].

use std::collections::HashMap;

use crate::field::Field;

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Rank of the matrix whose rows are given, by Gaussian elimination.
///
/// Pivot rows are normalized to a leading one; each incoming row is reduced
/// against the pivots until it is zero or has a fresh leading column.
pub fn rank<F: Field>(field: &F, rows: impl IntoIterator<Item = SparseRow<F::Elem>>) -> usize {
    let mut pivots: HashMap<usize, SparseRow<F::Elem>> = HashMap::new();
    let mut rows: Vec<SparseRow<F::Elem>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    // short rows first keeps fill-in down
    rows.sort_by_key(|r| r.len());
    for mut row in rows {
        loop {
            let Some(&(lead, ref c)) = row.first() else { break };
            match pivots.get(&lead) {
                Some(p) => {
                    let c = c.clone();
                    row = axpy(field, &row, &c, p);
                }
                None => {
                    let inv = field.inv(c).expect("nonzero entry");
                    for (_, v) in row.iter_mut() {
                        *v = field.mul(v, &inv);
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `row - c * pivot`.
fn axpy<F: Field>(field: &F, row: &SparseRow<F::Elem>, c: &F::Elem, pivot: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, field.neg(&field.mul(c, &pivot[j].1))));
            j += 1;
        } else {
            let v = field.sub(&row[i].1, &field.mul(c, &pivot[j].1));
            if !field.is_zero(&v) {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Converts a dense row to sparse form.
pub fn sparse_row<F: Field>(field: &F, dense: &[F::Elem]) -> SparseRow<F::Elem> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(j, v)| (j, v.clone()))
        .collect()
}

pub fn dense_rank<F: Field>(field: &F, matrix: &[Vec<F::Elem>]) -> usize {
    rank(field, matrix.iter().map(|r| sparse_row(field, r)))
}
