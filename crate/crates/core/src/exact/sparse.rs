//! Sparse exact elimination for the large PDE coefficient systems.

use std::collections::BTreeMap;

use super::matrix::ExactMatrix;
use super::field::Field;
use super::scalar::Scalar;

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<F = Scalar> = Vec<(usize, F)>;

fn axpy<F: Field>(row: &SparseRow<F>, factor: &F, pivot: &SparseRow<F>) -> SparseRow<F> {
    // row - factor * pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, factor.mul(&pivot[j].1).neg()));
            j += 1;
        } else {
            let mut v = row[i].1.clone();
            v.sub_mul(factor, &pivot[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon builder. Pivot rows are kept monic.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F = Scalar> {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(cols: usize) -> Self {
        SparseEchelon {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots, in ascending column order.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        let mut k = 0;
        while k < row.len() {
            let c = row[k].0;
            if let Some(p) = self.pivots.get(&c) {
                let f = row[k].1.clone();
                row = axpy(&row, &f, p);
                // Entries before position k are untouched; column c is now gone.
            } else {
                k += 1;
            }
        }
        row
    }

    /// Adds a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let row: SparseRow<F> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv();
        for e in r.iter_mut() {
            e.1 = e.1.mul(&inv);
        }
        self.pivots.insert(r[0].0, r);
        true
    }

    /// Inserts rows shortest first, which limits fill-in.
    pub fn extend_sorted(&mut self, mut rows: Vec<SparseRow<F>>) {
        rows.sort_by_key(|r| r.len());
        for r in rows {
            self.insert(r);
        }
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Back-substitutes to the reduced echelon form (unique for the row space).
    pub fn reduced(&self) -> BTreeMap<usize, SparseRow<F>> {
        let mut done: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
        for (&c, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.len() {
                let col = r[k].0;
                if let Some(p) = done.get(&col) {
                    let f = r[k].1.clone();
                    r = axpy(&r, &f, p);
                } else {
                    k += 1;
                }
            }
            done.insert(c, r);
        }
        done
    }

    /// Canonical kernel basis, identical to [`ExactMatrix::kernel`] on the same rows.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let reduced = self.reduced();
        let mut basis: BTreeMap<usize, Vec<F>> = BTreeMap::new();
        for f in 0..self.cols {
            if !reduced.contains_key(&f) {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                basis.insert(f, v);
            }
        }
        for (&p, row) in &reduced {
            for (c, val) in row.iter().skip(1) {
                if let Some(v) = basis.get_mut(c) {
                    v[p] = val.neg();
                }
            }
        }
        basis.into_values().collect()
    }

    /// Sparse kernel vectors as (free column, entries).
    pub fn kernel_sparse(&self) -> Vec<SparseRow<F>> {
        let reduced = self.reduced();
        let mut basis: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
        for f in 0..self.cols {
            if !reduced.contains_key(&f) {
                basis.insert(f, Vec::new());
            }
        }
        for (&p, row) in &reduced {
            for (c, val) in row.iter().skip(1) {
                if let Some(v) = basis.get_mut(c) {
                    v.push((p, val.neg()));
                }
            }
        }
        basis
            .into_iter()
            .map(|(f, mut v)| {
                v.push((f, F::one()));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

/// Evaluates a sparse row against a dense vector.
pub fn dot<F: Field>(row: &SparseRow<F>, v: &[F]) -> F {
    let mut acc = F::zero();
    for (c, a) in row {
        if !v[*c].is_zero() {
            acc = acc.add(&a.mul(&v[*c]));
        }
    }
    acc
}

/// Converts a dense matrix into sparse rows.
pub fn to_sparse<F: Field>(m: &ExactMatrix<F>) -> Vec<SparseRow<F>> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn sparse_matches_dense(cols in 1..7usize, seed in prop::collection::vec(-2..3i64, 0..42)) {
            let rows: Vec<Vec<Scalar>> = seed.chunks(cols).filter(|c| c.len() == cols)
                .map(|c| c.iter().map(|&v| Scalar::from_int(v)).collect()).collect();
            let dense = ExactMatrix::from_rows(cols, rows).unwrap();
            let mut e = SparseEchelon::new(cols);
            e.extend_sorted(to_sparse(&dense));
            prop_assert_eq!(e.rank(), dense.rank());
            prop_assert_eq!(e.kernel(), dense.kernel());
            let sparse_dense: Vec<Vec<Scalar>> = e.kernel_sparse().iter().map(|r| {
                let mut v = vec![Scalar::zero(); cols];
                for (c, x) in r { v[*c] = x.clone(); }
                v
            }).collect();
            prop_assert_eq!(sparse_dense, dense.kernel());
        }
    }
}
