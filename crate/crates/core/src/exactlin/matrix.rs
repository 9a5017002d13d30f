use std::fmt;

use super::field::{Field, Scalar};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape {rows}x{cols}");
        Matrix { rows, cols, data }
    }

    pub fn zeros<F: Field<Elem = S>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = S>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from equal-length rows. An empty row list yields a
    /// 0 x 0 matrix; use [`Matrix::from_rows_with_cols`] to keep the width.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: Vec<Vec<S>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec<F: Field<Elem = S>>(&self, field: &F, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(field.zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn mul<F: Field<Elem = S>>(&self, field: &F, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).add(&a.mul(b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    /// `self - lambda * I` for a square matrix.
    pub fn shifted(&self, lambda: &S) -> Matrix<S> {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i).sub(lambda);
            m.set(i, i, v);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse<F: Field<Elem = S>>(&self, field: &F) -> Option<Matrix<S>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, field.one());
        }
        let (red, pivots) = super::rref_with_pivots(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "]")
    }
}
