//! Dense exact matrices with two elimination routes: classical Gauss–Jordan
//! and fraction-free Bareiss. Both produce the same canonical kernel basis.

use std::fmt;

use super::field::Field;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct ExactMatrix<F = Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row echelon form and its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<F> {
    pub reduced: ExactMatrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend(r);
        }
        Ok(ExactMatrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::<F>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss–Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let pj = m.get(r, j).clone();
                    if !pj.is_zero() {
                        let mut v = m.get(i, j).clone();
                        v.sub_mul(&f, &pj);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    /// Fraction-free Bareiss elimination. Returns the echelon matrix and pivots;
    /// every division performed is exact.
    pub fn bareiss(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let piv = m.get(r, c).clone();
            let prev_inv = prev.inv();
            for i in r + 1..m.rows {
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    // m[i][j] = (piv*m[i][j] - f*m[r][j]) / prev
                    let v = piv.mul(m.get(i, j)).sub(&f.mul(m.get(r, j))).mul(&prev_inv);
                    m.set(i, j, v);
                }
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn rank_bareiss(&self) -> usize {
        self.bareiss().pivots.len()
    }

    /// Canonical kernel basis: one vector per free column `f`, with entry 1 at
    /// `f`, zero at the other free columns.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let e = self.rref();
        kernel_from_rref(&e.reduced, &e.pivots)
    }

    /// Kernel through the Bareiss echelon form and back-substitution.
    pub fn kernel_bareiss(&self) -> Vec<Vec<F>> {
        let e = self.bareiss();
        let mut m = e.reduced;
        let k = e.pivots.len();
        // Back-substitute to reduced form.
        for i in (0..k).rev() {
            let c = e.pivots[i];
            let inv = m.get(i, c).inv();
            for j in c..m.cols {
                let v = m.get(i, j).mul(&inv);
                m.set(i, j, v);
            }
            for above in 0..i {
                let f = m.get(above, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pj = m.get(i, j).clone();
                    if !pj.is_zero() {
                        let mut v = m.get(above, j).clone();
                        v.sub_mul(&f, &pj);
                        m.set(above, j, v);
                    }
                }
            }
        }
        kernel_from_rref(&m, &e.pivots)
    }

    /// Determinant via Bareiss; `None` for non-square input.
    pub fn determinant(&self) -> Option<F> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(F::one());
        }
        let mut m = self.clone();
        let mut sign_neg = false;
        let mut prev = F::one();
        for k in 0..n {
            let p = (k..n).find(|&i| !m.get(i, k).is_zero())?;
            if p != k {
                m.swap_rows(p, k);
                sign_neg = !sign_neg;
            }
            let piv = m.get(k, k).clone();
            let prev_inv = prev.inv();
            for i in k + 1..n {
                let f = m.get(i, k).clone();
                for j in k..n {
                    let v = piv.mul(m.get(i, j)).sub(&f.mul(m.get(k, j))).mul(&prev_inv);
                    m.set(i, j, v);
                }
            }
            prev = piv;
        }
        let d = m.get(n - 1, n - 1).clone();
        Some(if sign_neg { d.neg() } else { d })
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut out = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, e.reduced.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Coordinates `x` with `self · x = b`, if solvable.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let e = aug.rref();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in e.pivots.iter().enumerate() {
            x[p] = e.reduced.get(i, self.cols).clone();
        }
        Some(x)
    }
}

fn kernel_from_rref<F: Field>(m: &ExactMatrix<F>, pivots: &[usize]) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; m.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![F::zero(); m.cols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = m.get(i, f).neg();
            }
            v
        })
        .collect()
}

impl<F: fmt::Debug> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.data[r * self.cols..(r + 1) * self.cols].iter().map(|v| format!("{v:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
