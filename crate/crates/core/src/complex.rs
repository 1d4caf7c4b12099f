//! Based chain complexes with standard distinguished bases.
//!
//! Degree `i` is `R^{n_i}`. The boundary `d_i : C_{i+1} -> C_i` is stored as
//! an `n_{i+1} x n_i` matrix, so `d d = 0` reads `d_i * d_{i-1} = 0`.

use crate::arith::{Field, FieldTag, Ring};
use crate::error::{Error, Result};
use crate::linalg::{image_basis, kernel_basis, rref, Matrix, RowBasis};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainComplex<R: Ring> {
    dims: Vec<usize>,
    boundaries: Vec<Matrix<R>>,
}

impl<R: Ring> ChainComplex<R> {
    /// Checks shapes and `d d = 0`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<Matrix<R>>) -> Result<Self> {
        let c = ChainComplex { dims, boundaries };
        c.validate()?;
        Ok(c)
    }

    /// Re-runs the structural checks: `ShapeMismatch`, then `NotAComplex`
    /// at the first degree `i` with `d_i * d_{i-1} != 0`.
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::ShapeMismatch("a complex needs at least one degree".into()));
        }
        if self.boundaries.len() + 1 != self.dims.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions need {} boundaries, got {}",
                self.dims.len(),
                self.dims.len() - 1,
                self.boundaries.len()
            )));
        }
        for (i, d) in self.boundaries.iter().enumerate() {
            let want = (self.dims[i + 1], self.dims[i]);
            if d.shape() != want {
                return Err(Error::ShapeMismatch(format!(
                    "boundary {i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        for i in 1..self.boundaries.len() {
            if !self.boundaries[i].mul(&self.boundaries[i - 1]).is_zero() {
                return Err(Error::NotAComplex { degree: i });
            }
        }
        Ok(())
    }

    /// The zero complex `0^m`.
    pub fn zero(length: usize) -> Self {
        Self::from_dims_zero(vec![0; length + 1])
    }

    /// A complex with the given dimensions and all boundaries zero.
    pub fn from_dims_zero(dims: Vec<usize>) -> Self {
        let boundaries = (0..dims.len().saturating_sub(1))
            .map(|i| Matrix::zeros(dims[i + 1], dims[i]))
            .collect();
        ChainComplex { dims, boundaries }
    }

    /// `C(R^n, i)` inside a complex of length `m`: identity boundary from
    /// degree `i + 1` to degree `i`, zero elsewhere.
    pub fn elementary(n: usize, i: usize, m: usize) -> Result<Self> {
        if i >= m {
            return Err(Error::DegreeOutOfRange { degree: i, length: m });
        }
        let mut dims = vec![0; m + 1];
        dims[i] = n;
        dims[i + 1] = n;
        let mut c = Self::from_dims_zero(dims);
        c.boundaries[i] = Matrix::identity(n);
        Ok(c)
    }

    pub fn length(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    /// `d_i : C_{i+1} -> C_i`.
    pub fn boundary(&self, i: usize) -> &Matrix<R> {
        &self.boundaries[i]
    }

    pub fn boundaries(&self) -> &[Matrix<R>] {
        &self.boundaries
    }

    /// Appends zero spaces at the top until the length is `m`.
    pub fn padded(&self, m: usize) -> Self {
        assert!(m >= self.length(), "cannot shrink a complex");
        let mut c = self.clone();
        while c.length() < m {
            let top = *c.dims.last().expect("nonempty");
            c.boundaries.push(Matrix::zeros(0, top));
            c.dims.push(0);
        }
        c
    }

    /// Degree-wise block sum; the basis of `self` comes first. The shorter
    /// complex is padded at the top.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let m = self.length().max(other.length());
        let (a, b) = (self.padded(m), other.padded(m));
        let dims = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
        let boundaries = a
            .boundaries
            .iter()
            .zip(&b.boundaries)
            .map(|(x, y)| x.block_diag(y))
            .collect();
        ChainComplex { dims, boundaries }
    }

    /// Dual complex: `(C*)_i = (C_{m-i})*` with `(d*)_i = d_{m-i-1}^T`.
    pub fn dual(&self) -> Self {
        let m = self.length();
        let dims = self.dims.iter().rev().copied().collect();
        let boundaries = (0..m).map(|i| self.boundaries[m - i - 1].transpose()).collect();
        ChainComplex { dims, boundaries }
    }

    /// Same matrices with every entry sent through `f`.
    pub fn map_entries<S: Ring>(&self, mut f: impl FnMut(&R) -> S) -> ChainComplex<S> {
        ChainComplex {
            dims: self.dims.clone(),
            boundaries: self.boundaries.iter().map(|d| d.map(&mut f)).collect(),
        }
    }

    /// Change of distinguished basis. Row `k` of `q[i]` is the `k`-th new
    /// basis vector of `C_i` in old coordinates; old coordinates are
    /// `x_old = x_new * q[i]`, so `d_new = q[i+1] * d * q[i]^{-1}`.
    /// `q_inv` must hold the inverses.
    pub fn rebase(&self, q: &[Matrix<R>], q_inv: &[Matrix<R>]) -> Result<Self> {
        check_square_family(&self.dims, q)?;
        check_square_family(&self.dims, q_inv)?;
        let boundaries = (0..self.length())
            .map(|i| q[i + 1].mul(&self.boundaries[i]).mul(&q_inv[i]))
            .collect();
        Self::new(self.dims.clone(), boundaries)
    }
}

pub(crate) fn check_square_family<R: Ring>(dims: &[usize], q: &[Matrix<R>]) -> Result<()> {
    if q.len() != dims.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} matrices for {} degrees",
            q.len(),
            dims.len()
        )));
    }
    for (i, (m, &n)) in q.iter().zip(dims).enumerate() {
        if m.shape() != (n, n) {
            return Err(Error::ShapeMismatch(format!(
                "degree {i}: matrix is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(())
}

/// Boundary ranks `x_i = dim B_i` and Betti numbers `y_i = dim H_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionProfile {
    pub boundary_ranks: Vec<usize>,
    pub betti: Vec<usize>,
}

impl DimensionProfile {
    /// `x_i`, zero outside `0..=m` (in particular `x_{-1} = 0`).
    pub fn x(&self, i: isize) -> usize {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.boundary_ranks.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn y(&self, i: isize) -> usize {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.betti.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.betti.len() - 1
    }
}

/// Canonical homology data of one degree, all rows in the coordinates of `C_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHomology<F: Field> {
    /// Basis of `Z_i = ker d_{i-1}`.
    pub cycles: RowBasis<F>,
    /// Basis `b_i` of `B_i = im d_i`.
    pub boundaries: RowBasis<F>,
    /// Lifting of `b_{i-1}`: standard vectors of `C_i` mapping onto `b_{i-1}`.
    pub lifting: Matrix<F>,
    /// Which standard vectors make up `lifting`.
    pub lifting_rows: Vec<usize>,
    /// Cycles whose classes form a basis of `H_i`.
    pub reps: Matrix<F>,
}

impl<F: Field> DegreeHomology<F> {
    pub fn betti(&self) -> usize {
        self.reps.rows()
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundaries.len()
    }

    /// Rows `(b_i, h_i, lifting of b_{i-1})`, a basis of `C_i`.
    pub fn full_basis(&self) -> Matrix<F> {
        let n = self.cycles.ambient_dim();
        Matrix::vstack_all(n, [self.boundaries.vectors(), &self.reps, &self.lifting])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyData<F: Field> {
    pub degrees: Vec<DegreeHomology<F>>,
}

impl<F: Field> HomologyData<F> {
    pub fn degree(&self, i: usize) -> &DegreeHomology<F> {
        &self.degrees[i]
    }

    pub fn profile(&self) -> DimensionProfile {
        DimensionProfile {
            boundary_ranks: self.degrees.iter().map(DegreeHomology::boundary_rank).collect(),
            betti: self.degrees.iter().map(DegreeHomology::betti).collect(),
        }
    }
}

/// Homology classes of `reps` independent modulo `b`: scanning `cycles` in
/// order, keep each vector independent of `b` and of the ones kept so far.
pub(crate) fn complement_in<F: Field>(b: &Matrix<F>, cycles: &Matrix<F>) -> Matrix<F> {
    let stacked = Matrix::vstack(b, cycles);
    let picks: Vec<usize> = rref(&stacked.transpose())
        .pivots
        .into_iter()
        .filter(|&p| p >= b.rows())
        .collect();
    stacked.select_rows(&picks)
}

impl<F: Field> ChainComplex<F> {
    pub fn field(&self) -> FieldTag {
        F::TAG
    }

    pub fn homology(&self) -> HomologyData<F> {
        let m = self.length();
        let images: Vec<(RowBasis<F>, Vec<usize>)> = self.boundaries.iter().map(image_basis).collect();
        let degrees = (0..=m)
            .map(|i| {
                let n = self.dims[i];
                let cycles = if i == 0 {
                    RowBasis::standard(n)
                } else {
                    kernel_basis(&self.boundaries[i - 1])
                };
                let boundaries = if i < m { images[i].0.clone() } else { RowBasis::empty(n) };
                let lifting_rows = if i == 0 { Vec::new() } else { images[i - 1].1.clone() };
                let lifting = Matrix::identity(n).select_rows(&lifting_rows);
                let reps = complement_in(boundaries.vectors(), cycles.vectors());
                DegreeHomology {
                    cycles,
                    boundaries,
                    lifting,
                    lifting_rows,
                    reps,
                }
            })
            .collect();
        HomologyData { degrees }
    }

    /// Ranks only; cheaper than [`ChainComplex::homology`].
    pub fn profile(&self) -> DimensionProfile {
        let m = self.length();
        let x: Vec<usize> = (0..=m)
            .map(|i| if i < m { self.boundaries[i].rank() } else { 0 })
            .collect();
        let y = (0..=m)
            .map(|i| self.dims[i] - x[i] - if i > 0 { x[i - 1] } else { 0 })
            .collect();
        DimensionProfile {
            boundary_ranks: x,
            betti: y,
        }
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.profile().betti
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti_numbers().iter().all(|&y| y == 0)
    }
}
