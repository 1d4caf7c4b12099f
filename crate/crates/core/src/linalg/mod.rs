//! Dense exact matrices under the row-vector convention.
//!
//! A linear map `V -> W` is stored with one row per basis vector of `V`, so
//! applying it to a row vector is `x * M`, and "first `f`, then `g`" is the
//! product `F * G`.

mod basis;
mod elim;

use std::fmt;

use crate::arith::Ring;
use crate::error::{Error, Result};

pub use basis::{image_basis, kernel_basis, transition_matrix, RowBasis};
pub use elim::{determinant, rank, rref, solve_row, solve_rows, Rref};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from row vectors; `cols` fixes the width when there
    /// are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Integer entries, for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| R::from_i64(v)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn diagonal(entries: Vec<R>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[R]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        self.iter_rows().map(<[R]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + &(a.clone() * b);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.rows, "vector length does not match rows");
        let mut out = vec![R::zero(); self.cols];
        for (k, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if !b.is_zero() {
                    *o = o.clone() + &(a.clone() * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    pub fn neg(&self) -> Matrix<R> {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, c: &R) -> Matrix<R> {
        self.map(|a| a.clone() * c)
    }

    /// `[[self, 0], [0, other]]`.
    pub fn block_diag(&self, other: &Matrix<R>) -> Matrix<R> {
        Self::block(
            self,
            &Self::zeros(self.rows, other.cols),
            &Self::zeros(other.rows, self.cols),
            other,
        )
    }

    /// `[[a, b], [c, d]]`; panics if the blocks do not tile.
    pub fn block(a: &Matrix<R>, b: &Matrix<R>, c: &Matrix<R>, d: &Matrix<R>) -> Matrix<R> {
        Self::vstack(&Self::hstack(a, b), &Self::hstack(c, d))
    }

    pub fn vstack(top: &Matrix<R>, bottom: &Matrix<R>) -> Matrix<R> {
        assert_eq!(top.cols, bottom.cols, "vstack width mismatch");
        let mut data = top.data.clone();
        data.extend_from_slice(&bottom.data);
        Matrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            data,
        }
    }

    /// Stacks any number of blocks of equal width.
    pub fn vstack_all<'a>(cols: usize, blocks: impl IntoIterator<Item = &'a Matrix<R>>) -> Matrix<R> {
        let mut out = Matrix::zeros(0, cols);
        for b in blocks {
            out = Self::vstack(&out, b);
        }
        out
    }

    pub fn hstack(left: &Matrix<R>, right: &Matrix<R>) -> Matrix<R> {
        assert_eq!(left.rows, right.rows, "hstack height mismatch");
        let mut data = Vec::with_capacity(left.data.len() + right.data.len());
        for i in 0..left.rows {
            data.extend_from_slice(left.row(i));
            data.extend_from_slice(right.row(i));
        }
        Matrix {
            rows: left.rows,
            cols: left.cols + right.cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<R> {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix<R> {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            for &j in idx {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> Matrix<R> {
        Matrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Columns `start..end`.
    pub fn col_range(&self, start: usize, end: usize) -> Matrix<R> {
        self.select_cols(&(start..end).collect::<Vec<_>>())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.data[src * self.cols + j].clone() * c;
            let idx = dst * self.cols + j;
            self.data[idx] = self.data[idx].clone() + &v;
        }
    }

    /// `col[dst] += c * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.data[i * self.cols + src].clone() * c;
            let idx = i * self.cols + dst;
            self.data[idx] = self.data[idx].clone() + &v;
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &R) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = self.data[idx].clone() * c;
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &R) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = self.data[idx].clone() * c;
        }
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.iter_rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    type M = Matrix<Rational>;

    #[test]
    fn product_follows_row_convention() {
        let a = M::from_i64(&[&[1, 2], &[3, 4]]);
        let b = M::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), M::from_i64(&[&[2, 1], &[4, 3]]));
        let x = vec![Rational::from(1), Rational::from(1)];
        assert_eq!(a.apply(&x), vec![Rational::from(4), Rational::from(6)]);
    }

    #[test]
    fn empty_shapes_are_legal() {
        let a = M::zeros(0, 3);
        let b = M::zeros(3, 0);
        assert_eq!(a.mul(&M::identity(3)).shape(), (0, 3));
        assert_eq!(b.mul(&a), M::zeros(3, 3));
        assert_eq!(a.mul(&b).shape(), (0, 0));
        assert_eq!(a.transpose().shape(), (3, 0));
    }

    #[test]
    fn blocks() {
        let a = M::from_i64(&[&[1]]);
        let b = M::from_i64(&[&[2, 3]]);
        let d = a.block_diag(&b);
        assert_eq!(d, M::from_i64(&[&[1, 0, 0], &[0, 2, 3]]));
        assert_eq!(d.col_range(1, 3), M::from_i64(&[&[0, 0], &[2, 3]]));
        assert_eq!(d.row_range(1, 2), M::from_i64(&[&[0, 2, 3]]));
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![Rational::from(1)], vec![]];
        assert!(matches!(M::from_rows(1, rows), Err(Error::DimensionMismatch(_))));
    }
}
