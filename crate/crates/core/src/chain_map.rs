//! Chain maps, induced maps on homology, and chain homotopies.
//!
//! `f_i` is an `n_i x n'_i` matrix, and the chain condition reads
//! `f_i * d'_{i-1} = d_{i-1} * f_{i-1}`.

use crate::arith::{Field, Ring};
use crate::complex::{ChainComplex, HomologyData};
use crate::error::{Error, Result};
use crate::linalg::{solve_rows, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainMap<R: Ring> {
    source: ChainComplex<R>,
    target: ChainComplex<R>,
    mats: Vec<Matrix<R>>,
}

impl<R: Ring> ChainMap<R> {
    /// Checks shapes and every commuting square.
    pub fn new(source: ChainComplex<R>, target: ChainComplex<R>, mats: Vec<Matrix<R>>) -> Result<Self> {
        let f = ChainMap { source, target, mats };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: ChainComplex<R>, target: ChainComplex<R>, mats: Vec<Matrix<R>>) -> Self {
        ChainMap { source, target, mats }
    }

    /// `ShapeMismatch`, or `NotChainMap` at the first failing degree.
    pub fn validate(&self) -> Result<()> {
        let (c, d) = (&self.source, &self.target);
        if c.length() != d.length() {
            return Err(Error::ShapeMismatch(format!(
                "source has length {}, target has length {}",
                c.length(),
                d.length()
            )));
        }
        if self.mats.len() != c.length() + 1 {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for a map of length {}",
                self.mats.len(),
                c.length()
            )));
        }
        for (i, f) in self.mats.iter().enumerate() {
            if f.shape() != (c.dim(i), d.dim(i)) {
                return Err(Error::ShapeMismatch(format!(
                    "degree {i}: matrix is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    c.dim(i),
                    d.dim(i)
                )));
            }
        }
        for i in 1..self.mats.len() {
            let lhs = self.mats[i].mul(d.boundary(i - 1));
            let rhs = c.boundary(i - 1).mul(&self.mats[i - 1]);
            if lhs != rhs {
                return Err(Error::NotChainMap { degree: i });
            }
        }
        Ok(())
    }

    pub fn identity(c: &ChainComplex<R>) -> Self {
        let mats = c.dims().iter().map(|&n| Matrix::identity(n)).collect();
        ChainMap::new_unchecked(c.clone(), c.clone(), mats)
    }

    pub fn zero(source: &ChainComplex<R>, target: &ChainComplex<R>) -> Result<Self> {
        let mats = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&a, &b)| Matrix::zeros(a, b))
            .collect();
        ChainMap::new(source.clone(), target.clone(), mats)
    }

    pub fn source(&self) -> &ChainComplex<R> {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex<R> {
        &self.target
    }

    pub fn mats(&self) -> &[Matrix<R>] {
        &self.mats
    }

    pub fn mat(&self, i: usize) -> &Matrix<R> {
        &self.mats[i]
    }

    pub fn length(&self) -> usize {
        self.source.length()
    }

    pub fn is_self_map(&self) -> bool {
        self.source == self.target
    }

    /// First `self`, then `g`.
    pub fn then(&self, g: &ChainMap<R>) -> Result<ChainMap<R>> {
        compose(g, self)
    }

    /// Pads source, target and matrices with zero spaces up to length `m`.
    pub fn padded(&self, m: usize) -> Self {
        let (s, t) = (self.source.padded(m), self.target.padded(m));
        let mut mats = self.mats.clone();
        mats.resize_with(m + 1, || Matrix::zeros(0, 0));
        ChainMap::new_unchecked(s, t, mats)
    }

    pub fn map_entries<S: Ring>(&self, mut f: impl FnMut(&R) -> S) -> ChainMap<S> {
        ChainMap {
            source: self.source.map_entries(&mut f),
            target: self.target.map_entries(&mut f),
            mats: self.mats.iter().map(|m| m.map(&mut f)).collect(),
        }
    }

    /// The same map after re-basing source by `q` and target by `qt`
    /// (see [`ChainComplex::rebase`]): `f_new = q[i] * f * qt[i]^{-1}`.
    pub fn rebase(&self, q: (&[Matrix<R>], &[Matrix<R>]), qt: (&[Matrix<R>], &[Matrix<R>])) -> Result<Self> {
        let source = self.source.rebase(q.0, q.1)?;
        let target = self.target.rebase(qt.0, qt.1)?;
        let mats = (0..self.mats.len())
            .map(|i| q.0[i].mul(&self.mats[i]).mul(&qt.1[i]))
            .collect();
        ChainMap::new(source, target, mats)
    }

    /// `f + g` for maps with the same source and target.
    pub fn add(&self, g: &ChainMap<R>) -> Result<Self> {
        if self.source != g.source || self.target != g.target {
            return Err(Error::ComplexMismatch);
        }
        let mats = self.mats.iter().zip(&g.mats).map(|(a, b)| a.add(b)).collect();
        Ok(ChainMap::new_unchecked(self.source.clone(), self.target.clone(), mats))
    }
}

/// `g . f`: first `f`, then `g`. Requires `f.target == g.source` as values.
pub fn compose<R: Ring>(g: &ChainMap<R>, f: &ChainMap<R>) -> Result<ChainMap<R>> {
    if f.target != g.source {
        return Err(Error::ComplexMismatch);
    }
    let mats = f.mats.iter().zip(&g.mats).map(|(a, b)| a.mul(b)).collect();
    Ok(ChainMap::new_unchecked(f.source.clone(), g.target.clone(), mats))
}

/// `f (+) g : C (+) C'' -> C' (+) C'''`, block diagonal, padded at the top.
pub fn direct_sum_map<R: Ring>(f: &ChainMap<R>, g: &ChainMap<R>) -> ChainMap<R> {
    let m = f.length().max(g.length());
    let (f, g) = (f.padded(m), g.padded(m));
    let mats = f.mats.iter().zip(&g.mats).map(|(a, b)| a.block_diag(b)).collect();
    ChainMap::new_unchecked(f.source.direct_sum(&g.source), f.target.direct_sum(&g.target), mats)
}

/// `f* : C'* -> C*` with `(f*)_i = f_{m-i}^T`.
pub fn dual_map<R: Ring>(f: &ChainMap<R>) -> ChainMap<R> {
    let m = f.length();
    let mats = (0..=m).map(|i| f.mats[m - i].transpose()).collect();
    ChainMap::new_unchecked(f.target.dual(), f.source.dual(), mats)
}

/// The map `x (+) y -> f(x) (+) (g(x) + f2(y))` on `C (+) C2`, where
/// `f : C -> C'`, `f2 : C2 -> C2'` and `g : C -> C2'`.
pub fn triangular_extension<R: Ring>(f: &ChainMap<R>, f2: &ChainMap<R>, g: &ChainMap<R>) -> Result<ChainMap<R>> {
    if g.source != f.source || g.target != f2.target {
        return Err(Error::ComplexMismatch);
    }
    let mats = (0..=f.length())
        .map(|i| {
            let below = Matrix::zeros(f2.mats[i].rows(), f.mats[i].cols());
            Matrix::block(&f.mats[i], &g.mats[i], &below, &f2.mats[i])
        })
        .collect();
    ChainMap::new(f.source.direct_sum(&f2.source), f.target.direct_sum(&f2.target), mats)
}

/// `C -> C (+) C2`, `x -> x (+) 0`.
pub fn injection<R: Ring>(c: &ChainComplex<R>, c2: &ChainComplex<R>) -> ChainMap<R> {
    let m = c.length().max(c2.length());
    let (a, b) = (c.padded(m), c2.padded(m));
    let mats = (0..=m)
        .map(|i| Matrix::hstack(&Matrix::identity(a.dim(i)), &Matrix::zeros(a.dim(i), b.dim(i))))
        .collect();
    ChainMap::new_unchecked(a.clone(), a.direct_sum(&b), mats)
}

/// `C (+) C2 -> C`, `x (+) y -> x`.
pub fn projection<R: Ring>(c: &ChainComplex<R>, c2: &ChainComplex<R>) -> ChainMap<R> {
    let m = c.length().max(c2.length());
    let (a, b) = (c.padded(m), c2.padded(m));
    let mats = (0..=m)
        .map(|i| Matrix::vstack(&Matrix::identity(a.dim(i)), &Matrix::zeros(b.dim(i), a.dim(i))))
        .collect();
    ChainMap::new_unchecked(a.direct_sum(&b), a, mats)
}

/// Degree-raising maps `T_i : C_i -> C'_{i+1}` (`n_i x n'_{i+1}`), for
/// `i = 0..m-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainHomotopy<R: Ring> {
    pub mats: Vec<Matrix<R>>,
}

impl<R: Ring> ChainHomotopy<R> {
    pub fn zero(source: &ChainComplex<R>, target: &ChainComplex<R>) -> Self {
        let m = source.length();
        ChainHomotopy {
            mats: (0..m)
                .map(|i| Matrix::zeros(source.dim(i), target.dim(i + 1)))
                .collect(),
        }
    }

    fn check_shapes(&self, source: &ChainComplex<R>, target: &ChainComplex<R>) -> Result<()> {
        let m = source.length();
        if self.mats.len() != m || target.length() != m {
            return Err(Error::ShapeMismatch(format!(
                "{} homotopy matrices for length {m}",
                self.mats.len()
            )));
        }
        for (i, t) in self.mats.iter().enumerate() {
            if t.shape() != (source.dim(i), target.dim(i + 1)) {
                return Err(Error::ShapeMismatch(format!(
                    "homotopy degree {i}: {}x{}, expected {}x{}",
                    t.rows(),
                    t.cols(),
                    source.dim(i),
                    target.dim(i + 1)
                )));
            }
        }
        Ok(())
    }

    /// `d'T + Td` in degree `i`: `T_i d'_i + d_{i-1} T_{i-1}`, with
    /// `T_m = T_{-1} = 0`.
    fn boundary_term(&self, source: &ChainComplex<R>, target: &ChainComplex<R>, i: usize) -> Matrix<R> {
        let mut acc = Matrix::zeros(source.dim(i), target.dim(i));
        if i < self.mats.len() {
            acc = acc.add(&self.mats[i].mul(target.boundary(i)));
        }
        if i > 0 {
            acc = acc.add(&source.boundary(i - 1).mul(&self.mats[i - 1]));
        }
        acc
    }

    /// The chain map `g + d'T + Td`.
    pub fn perturb(&self, g: &ChainMap<R>) -> Result<ChainMap<R>> {
        self.check_shapes(&g.source, &g.target)?;
        let mats = (0..=g.length())
            .map(|i| g.mats[i].add(&self.boundary_term(&g.source, &g.target, i)))
            .collect();
        Ok(ChainMap::new_unchecked(g.source.clone(), g.target.clone(), mats))
    }

    /// The homotopy `T . f` between `h . f` and `k . f` when `T` joins `h`
    /// and `k`.
    pub fn precompose(&self, f: &ChainMap<R>) -> ChainHomotopy<R> {
        ChainHomotopy {
            mats: self.mats.iter().enumerate().map(|(i, t)| f.mats[i].mul(t)).collect(),
        }
    }

    /// The homotopy `g . T` between `g . h` and `g . k` when `T` joins `h`
    /// and `k`.
    pub fn postcompose(&self, g: &ChainMap<R>) -> ChainHomotopy<R> {
        ChainHomotopy {
            mats: self
                .mats
                .iter()
                .enumerate()
                .map(|(i, t)| t.mul(&g.mats[i + 1]))
                .collect(),
        }
    }

    pub fn add(&self, other: &ChainHomotopy<R>) -> ChainHomotopy<R> {
        ChainHomotopy {
            mats: self.mats.iter().zip(&other.mats).map(|(a, b)| a.add(b)).collect(),
        }
    }
}

/// Whether `f_i - g_i = T_i d'_i + d_{i-1} T_{i-1}` in every degree.
pub fn check_homotopy<R: Ring>(f: &ChainMap<R>, g: &ChainMap<R>, t: &ChainHomotopy<R>) -> Result<bool> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::ComplexMismatch);
    }
    t.check_shapes(&f.source, &f.target)?;
    Ok((0..=f.length()).all(|i| f.mats[i].sub(&g.mats[i]) == t.boundary_term(&f.source, &f.target, i)))
}

/// Matrices of the induced maps `H_i(C) -> H_i(C')` in the canonical
/// homology bases; degree `i` is `y_i x y'_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMaps<F: Field> {
    pub mats: Vec<Matrix<F>>,
}

impl<F: Field> InducedMaps<F> {
    pub fn is_isomorphism(&self) -> bool {
        self.mats
            .iter()
            .all(|m| m.is_square() && !m.determinant().expect("square").is_zero())
    }
}

impl<F: Field> ChainMap<F> {
    pub fn induced(&self) -> InducedMaps<F> {
        self.induced_with(&self.source.homology(), &self.target.homology())
    }

    pub(crate) fn induced_with(&self, hs: &HomologyData<F>, ht: &HomologyData<F>) -> InducedMaps<F> {
        let mats = (0..=self.length())
            .map(|i| {
                let (s, t) = (hs.degree(i), ht.degree(i));
                let images = s.reps.mul(&self.mats[i]);
                let basis = Matrix::vstack(t.boundaries.vectors(), &t.reps);
                let coords = solve_rows(&basis, &images).expect("image of a cycle is a cycle");
                let x = t.boundary_rank();
                coords.col_range(x, x + t.betti())
            })
            .collect();
        InducedMaps { mats }
    }

    pub fn is_quasi_isomorphism(&self) -> bool {
        self.induced().is_isomorphism()
    }

    /// Degree-wise inverse of a chain isomorphism.
    pub fn inverse(&self) -> Result<ChainMap<F>> {
        let mats = self.mats.iter().map(Matrix::inverse).collect::<Result<Vec<_>>>()?;
        Ok(ChainMap::new_unchecked(self.target.clone(), self.source.clone(), mats))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    type M = Matrix<Rational>;

    fn triangle() -> ChainComplex<Rational> {
        ChainComplex::new(vec![3, 3], vec![M::from_i64(&[&[-1, 1, 0], &[0, -1, 1], &[1, 0, -1]])]).unwrap()
    }

    fn double_cover() -> ChainMap<Rational> {
        let c = triangle();
        let f0 = M::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let f1 = M::from_i64(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        ChainMap::new(c.clone(), c, vec![f0, f1]).unwrap()
    }

    #[test]
    fn validation() {
        let f = double_cover();
        assert!(ChainMap::identity(f.source()).validate().is_ok());
        let mut mats = f.mats().to_vec();
        mats[1].set(0, 0, Rational::from(2));
        assert_eq!(
            ChainMap::new(f.source().clone(), f.target().clone(), mats),
            Err(Error::NotChainMap { degree: 1 })
        );
    }

    #[test]
    fn induced_and_composition() {
        let f = double_cover();
        let ind = f.induced();
        assert_eq!(ind.mats, vec![M::from_i64(&[&[1]]), M::from_i64(&[&[2]])]);
        assert!(f.is_quasi_isomorphism());
        let ff = compose(&f, &f).unwrap();
        assert_eq!(ff.induced().mats[1], M::from_i64(&[&[4]]));
        assert_eq!(compose(&ChainMap::identity(f.target()), &f).unwrap(), f);
        let z = ChainMap::zero(f.source(), f.target()).unwrap();
        assert!(z.induced().mats.iter().all(Matrix::is_zero));
        assert!(!z.is_quasi_isomorphism());
    }

    #[test]
    fn duals_sums_and_homotopies() {
        let f = double_cover();
        assert_eq!(dual_map(&dual_map(&f)), f);
        assert!(dual_map(&f).validate().is_ok());
        let e = ChainMap::identity(&ChainComplex::<Rational>::zero(1));
        assert_eq!(direct_sum_map(&f, &e), f);
        let t = ChainHomotopy::zero(f.source(), f.target());
        assert!(check_homotopy(&f, &f, &t).unwrap());
        assert!(!check_homotopy(&f, &ChainMap::identity(f.source()), &t).unwrap());
        let t = ChainHomotopy {
            mats: vec![M::from_i64(&[&[1, 0, 2], &[0, -1, 0], &[3, 0, 0]])],
        };
        let g = t.perturb(&f).unwrap();
        assert!(g.validate().is_ok());
        assert!(check_homotopy(&g, &f, &t).unwrap());
        assert_eq!(g.induced(), f.induced());
    }

    #[test]
    fn injections_and_projections() {
        let c = triangle();
        let e = ChainComplex::<Rational>::elementary(2, 0, 1).unwrap();
        let i = injection(&c, &e);
        let p = projection(&c, &e);
        assert!(i.validate().is_ok() && p.validate().is_ok());
        assert_eq!(compose(&p, &i).unwrap(), ChainMap::identity(&c));
        assert!(i.is_quasi_isomorphism() && p.is_quasi_isomorphism());
        let f = double_cover();
        let zero = ChainMap::zero(&c, &c).unwrap();
        assert_eq!(triangular_extension(&f, &f, &zero).unwrap(), direct_sum_map(&f, &f));
    }
}
