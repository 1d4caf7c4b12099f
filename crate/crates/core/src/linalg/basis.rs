//! Ordered bases of subspaces, kernels, images and transition matrices.

use super::{rank, rref, solve_rows, Matrix};
use crate::arith::Field;
use crate::error::{Error, Result};

/// An ordered, linearly independent list of row vectors in `F^ambient_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowBasis<F: Field> {
    vectors: Matrix<F>,
}

impl<F: Field> RowBasis<F> {
    /// Checks linear independence.
    pub fn new(vectors: Matrix<F>) -> Result<Self> {
        if rank(&vectors) != vectors.rows() {
            return Err(Error::LinearlyDependent);
        }
        Ok(RowBasis { vectors })
    }

    pub(crate) fn new_unchecked(vectors: Matrix<F>) -> Self {
        RowBasis { vectors }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        RowBasis {
            vectors: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn standard(n: usize) -> Self {
        RowBasis {
            vectors: Matrix::identity(n),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.vectors.cols()
    }

    pub fn len(&self) -> usize {
        self.vectors.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.rows() == 0
    }

    pub fn vectors(&self) -> &Matrix<F> {
        &self.vectors
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.vectors
    }

    pub fn vector(&self, i: usize) -> &[F] {
        self.vectors.row(i)
    }

    /// Whether `v` lies in the span of this basis.
    pub fn contains(&self, v: &[F]) -> bool {
        let t = Matrix::from_rows(v.len(), vec![v.to_vec()]).expect("single row");
        solve_rows(&self.vectors, &t).is_ok()
    }

    /// Whether both bases span the same subspace.
    pub fn same_span(&self, other: &RowBasis<F>) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.len() == other.len()
            && solve_rows(&other.vectors, &self.vectors).is_ok()
    }
}

/// Canonical basis of the left kernel `{x : x m = 0}`.
///
/// One vector per free column of `rref(m^T)`, in increasing order, scaled so
/// its first nonzero entry is 1.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> RowBasis<F> {
    let n = m.rows();
    let red = rref(&m.transpose());
    let mut is_pivot = vec![false; n];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (r, &p) in red.pivots.iter().enumerate() {
            v[p] = -red.matrix.get(r, free).clone();
        }
        let lead = v.iter().find(|x| !x.is_zero()).expect("free coordinate is 1").clone();
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            v.iter_mut().for_each(|x| *x = x.clone() * &inv);
        }
        vectors.push(v);
    }
    RowBasis::new_unchecked(Matrix::from_rows(n, vectors).expect("rows of length n"))
}

/// Basis of the row space made of rows of `m` itself: scanning rows in
/// order, keep each row that is independent of the ones kept so far.
///
/// The returned indices name the kept rows, so the corresponding standard
/// basis vectors of the domain form a lifting of the image basis.
pub fn image_basis<F: Field>(m: &Matrix<F>) -> (RowBasis<F>, Vec<usize>) {
    // Pivot columns of rref(m^T) are exactly the greedily independent rows.
    let rows = rref(&m.transpose()).pivots;
    (RowBasis::new_unchecked(m.select_rows(&rows)), rows)
}

/// The matrix `(b / b2)` with `b[i] = sum_j (b/b2)[i][j] * b2[j]`.
pub fn transition_matrix<F: Field>(b: &RowBasis<F>, b2: &RowBasis<F>) -> Result<Matrix<F>> {
    if b.len() != b2.len() || b.ambient_dim() != b2.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "bases of sizes {} and {} in dimensions {} and {}",
            b.len(),
            b2.len(),
            b.ambient_dim(),
            b2.ambient_dim()
        )));
    }
    solve_rows(&b2.vectors, &b.vectors).map_err(|e| match e {
        Error::NoSolution => Error::NotSameSpan,
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Rational, Ring};

    type M = Matrix<Rational>;

    #[test]
    fn kernel_of_triangle_boundary() {
        // rows: e1 -> v2 - v1, e2 -> v3 - v2, e3 -> v1 - v3
        let d = M::from_i64(&[&[-1, 1, 0], &[0, -1, 1], &[1, 0, -1]]);
        let k = kernel_basis(&d);
        assert_eq!(k.vectors(), &M::from_i64(&[&[1, 1, 1]]));
    }

    #[test]
    fn kernel_edge_cases() {
        assert!(kernel_basis(&M::from_i64(&[&[2, 1], &[1, 1]])).is_empty());
        assert_eq!(kernel_basis(&M::zeros(2, 3)).vectors(), &M::identity(2));
        // x -> x * 0 from F^3 to the zero space: everything is a cycle
        assert_eq!(kernel_basis(&M::zeros(3, 0)).vectors(), &M::identity(3));
    }

    #[test]
    fn kernel_normalizes_first_entry() {
        // x1 * 2 + x2 * 1 = 0 -> (1, -2)
        let k = kernel_basis(&M::from_i64(&[&[2], &[1]]));
        assert_eq!(k.vectors(), &M::from_i64(&[&[1, -2]]));
    }

    #[test]
    fn image_of_triangle_boundary() {
        let d = M::from_i64(&[&[-1, 1, 0], &[0, -1, 1], &[1, 0, -1]]);
        let (img, lift) = image_basis(&d);
        assert_eq!(img.vectors(), &M::from_i64(&[&[-1, 1, 0], &[0, -1, 1]]));
        assert_eq!(lift, vec![0, 1]);

        let (img, lift) = image_basis(&M::zeros(2, 2));
        assert!(img.is_empty());
        assert!(lift.is_empty());

        let (img, lift) = image_basis(&M::identity(3));
        assert_eq!(img.vectors(), &M::identity(3));
        assert_eq!(lift, vec![0, 1, 2]);
    }

    #[test]
    fn transition_examples() {
        let b = RowBasis::new(M::from_i64(&[&[2, 0], &[0, 3]])).unwrap();
        let std = RowBasis::standard(2);
        assert_eq!(transition_matrix(&b, &std).unwrap(), M::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(transition_matrix(&b, &b).unwrap(), M::identity(2));

        let line = RowBasis::new(M::from_i64(&[&[1, 0, 0]])).unwrap();
        let other = RowBasis::new(M::from_i64(&[&[0, 1, 0]])).unwrap();
        assert_eq!(transition_matrix(&line, &other), Err(Error::NotSameSpan));
        assert!(matches!(
            transition_matrix(&line, &RowBasis::standard(3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn dependent_rows_rejected() {
        assert_eq!(
            RowBasis::new(M::from_i64(&[&[1, 2], &[2, 4]])),
            Err(Error::LinearlyDependent)
        );
        assert!(RowBasis::<Rational>::empty(3).contains(&vec![Rational::zero(); 3]));
    }
}
