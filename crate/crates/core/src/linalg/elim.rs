//! Gaussian elimination over a field.

use super::Matrix;
use crate::arith::Field;
use crate::error::{Error, Result};

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        a.scale_row(r, &inv);
        for i in 0..a.rows() {
            if i != r && !a.get(i, c).is_zero() {
                let factor = -a.get(i, c).clone();
                a.add_row_multiple(i, r, &factor);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    // Row echelon form is enough for the rank.
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        for i in r + 1..a.rows() {
            if !a.get(i, c).is_zero() {
                let factor = -(a.get(i, c).clone() * &inv);
                a.add_row_multiple(i, r, &factor);
            }
        }
        r += 1;
    }
    r
}

/// Exact determinant; the empty matrix has determinant 1.
pub fn determinant<F: Field>(m: &Matrix<F>) -> Result<F> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Ok(F::zero());
        };
        if p != c {
            a.swap_rows(c, p);
            det = -det;
        }
        let pivot = a.get(c, c).clone();
        let inv = pivot.inv().expect("nonzero pivot");
        for i in c + 1..n {
            if !a.get(i, c).is_zero() {
                let factor = -(a.get(i, c).clone() * &inv);
                a.add_row_multiple(i, c, &factor);
            }
        }
        det = det * &pivot;
    }
    Ok(det)
}

/// Solves `X * a = targets` row by row, choosing free coordinates zero.
pub fn solve_rows<F: Field>(a: &Matrix<F>, targets: &Matrix<F>) -> Result<Matrix<F>> {
    if targets.cols() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "targets have length {}, matrix has {} columns",
            targets.cols(),
            a.cols()
        )));
    }
    // x a = y  <=>  a^T x^T = y^T; reduce [a^T | y^T] once for all targets.
    let aug = Matrix::hstack(&a.transpose(), &targets.transpose());
    let red = rref(&aug);
    let n = a.rows();
    if red.pivots.iter().any(|&p| p >= n) {
        return Err(Error::NoSolution);
    }
    let mut x = Matrix::zeros(targets.rows(), n);
    for (r, &p) in red.pivots.iter().enumerate() {
        for k in 0..targets.rows() {
            x.set(k, p, red.matrix.get(r, n + k).clone());
        }
    }
    Ok(x)
}

/// One solution `x` of `x * a = target`.
pub fn solve_row<F: Field>(a: &Matrix<F>, target: &[F]) -> Result<Vec<F>> {
    let t = Matrix::from_rows(target.len(), vec![target.to_vec()])?;
    Ok(solve_rows(a, &t)?.row(0).to_vec())
}

impl<F: Field> Matrix<F> {
    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn determinant(&self) -> Result<F> {
        determinant(self)
    }

    pub fn inverse(&self) -> Result<Matrix<F>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        let red = rref(&Matrix::hstack(self, &Matrix::identity(n)));
        // Invertible iff the left block reduces to the identity.
        if red.pivots.iter().take_while(|&&p| p < n).count() < n {
            return Err(Error::Singular);
        }
        Ok(red.matrix.col_range(n, 2 * n))
    }
}
