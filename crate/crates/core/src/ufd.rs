//! Free complexes over `Q[t]`: Smith normal form, orders of homology, and
//! torsion after tensoring with `Q(t)`.

use crate::arith::{Field, Polynomial, Rational, RationalFunction, Ring};
use crate::chain_map::ChainMap;
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::torsion::{torsion, torsion_acyclic};

pub type PolyMatrix = Matrix<Polynomial>;
pub type PolyComplex = ChainComplex<Polynomial>;
pub type PolyMap = ChainMap<Polynomial>;

/// `u * a * v = d` with `u`, `v` invertible over `Q[t]` (`u_inv` is the
/// inverse of `u`), `d` diagonal with monic entries `d_1 | d_2 | ...`
/// followed by zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: PolyMatrix,
    pub u_inv: PolyMatrix,
    pub v: PolyMatrix,
    pub d: PolyMatrix,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<Polynomial> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|k| self.d.get(k, k).clone())
            .take_while(|p| !p.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Smith {
    d: PolyMatrix,
    u: PolyMatrix,
    u_inv: PolyMatrix,
    v: PolyMatrix,
}

impl Smith {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    /// `row[dst] += c * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, c: &Polynomial) {
        self.d.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c.clone());
    }

    /// `col[dst] += c * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, c: &Polynomial) {
        self.d.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
    }

    fn scale_row(&mut self, k: usize, c: &Rational) {
        let inv = c.inv().expect("nonzero scale");
        self.d.scale_row(k, &Polynomial::constant(c.clone()));
        self.u.scale_row(k, &Polynomial::constant(c.clone()));
        self.u_inv.scale_col(k, &Polynomial::constant(inv));
    }

    /// Position of a nonzero entry of least degree in the block `k.., k..`.
    fn smallest(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..self.d.rows() {
            for j in k..self.d.cols() {
                if let Some(deg) = self.d.get(i, j).degree() {
                    if best.is_none_or(|b| deg < b.2) {
                        best = Some((i, j, deg));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `k` below and right of the pivot; returns
    /// whether everything cleared exactly.
    fn clear(&mut self, k: usize) -> bool {
        let pivot = self.d.get(k, k).clone();
        let mut clean = true;
        for i in k + 1..self.d.rows() {
            let (q, r) = self.d.get(i, k).divmod(&pivot).expect("nonzero pivot");
            self.add_row(i, k, &-q);
            clean &= r.is_zero();
        }
        for j in k + 1..self.d.cols() {
            let (q, r) = self.d.get(k, j).divmod(&pivot).expect("nonzero pivot");
            self.add_col(j, k, &-q);
            clean &= r.is_zero();
        }
        clean
    }

    fn run(&mut self) {
        let n = self.d.rows().min(self.d.cols());
        for k in 0..n {
            loop {
                let Some((i, j)) = self.smallest(k) else {
                    return;
                };
                self.swap_rows(k, i);
                self.swap_cols(k, j);
                if !self.clear(k) {
                    continue;
                }
                // Divisibility: fold an offending row into the pivot row.
                let pivot = self.d.get(k, k).clone();
                let bad =
                    (k + 1..self.d.rows()).find(|&i| (k + 1..self.d.cols()).any(|j| !pivot.divides(self.d.get(i, j))));
                match bad {
                    Some(i) => self.add_row(k, i, &Polynomial::one()),
                    None => break,
                }
            }
            let lc = self.d.get(k, k).leading().expect("nonzero pivot").clone();
            self.scale_row(k, &lc.inv().expect("nonzero"));
        }
    }
}

pub fn smith_normal_form(a: &PolyMatrix) -> SmithDecomposition {
    let mut s = Smith {
        d: a.clone(),
        u: Matrix::identity(a.rows()),
        u_inv: Matrix::identity(a.rows()),
        v: Matrix::identity(a.cols()),
    };
    s.run();
    SmithDecomposition {
        u: s.u,
        u_inv: s.u_inv,
        v: s.v,
        d: s.d,
    }
}

/// Presentation of `H_i = Z_i / B_i`: rows are the boundaries written in a
/// basis of `Z_i` over `Q[t]`.
pub fn homology_presentation(c: &PolyComplex, i: usize) -> Result<PolyMatrix> {
    let m = c.length();
    if i > m {
        return Err(Error::DegreeOutOfRange { degree: i, length: m });
    }
    let n = c.dim(i);
    // Z_i is spanned by rows r.. of U where U d_{i-1} V is in Smith form.
    let (u_inv, r) = if i == 0 {
        (Matrix::identity(n), 0)
    } else {
        let s = smith_normal_form(c.boundary(i - 1));
        let r = s.rank();
        (s.u_inv, r)
    };
    let boundary = if i < m {
        c.boundary(i).clone()
    } else {
        Matrix::zeros(0, n)
    };
    Ok(boundary.mul(&u_inv).col_range(r, n))
}

/// `ord H_i`: the monic product of the invariant factors of a presentation.
pub fn order_of_homology(c: &PolyComplex, i: usize) -> Result<Polynomial> {
    let p = homology_presentation(c, i)?;
    let s = smith_normal_form(&p);
    let factors = s.invariant_factors();
    if factors.len() != p.cols() {
        return Err(Error::PositiveRankHomology { degree: i });
    }
    Ok(factors.iter().fold(Polynomial::one(), |acc, f| acc * f))
}

pub fn tensor_to_fractions(c: &PolyComplex) -> ChainComplex<RationalFunction> {
    c.map_entries(|p| RationalFunction::from_poly(p.clone()))
}

pub fn tensor_map(f: &PolyMap) -> ChainMap<RationalFunction> {
    f.map_entries(|p| RationalFunction::from_poly(p.clone()))
}

/// Torsion of `id (x) f` over `Q(t)`.
pub fn torsion_over_ufd(f: &PolyMap) -> Result<RationalFunction> {
    let g = tensor_map(f);
    if !g.is_quasi_isomorphism() {
        return Err(Error::NotQuasiIsomorphismAfterTensor);
    }
    torsion(&g)
}

/// `prod_i (ord H_i)^((-1)^(i+1))`.
pub fn turaev_torsion(c: &PolyComplex) -> Result<RationalFunction> {
    let mut acc = RationalFunction::one();
    for i in 0..=c.length() {
        let ord = RationalFunction::from_poly(order_of_homology(c, i)?);
        acc = acc * ord.alternate(i);
    }
    Ok(acc)
}

/// `prod_i (ord H_i(C) / ord H_i(C'))^((-1)^(i+1))` for `f : C -> C'`.
pub fn order_quotient(f: &PolyMap) -> Result<RationalFunction> {
    Ok(turaev_torsion(f.source())? / turaev_torsion(f.target())?)
}

/// Torsion of the tensored acyclic complex.
pub fn torsion_of_tensor(c: &PolyComplex) -> Result<RationalFunction> {
    torsion_acyclic(&tensor_to_fractions(c))
}

/// The rational constant `a / b`, if the quotient is one.
pub fn unit_ratio(a: &RationalFunction, b: &RationalFunction) -> Option<Rational> {
    if b.is_zero() {
        return None;
    }
    (a.clone() / b).as_constant().filter(|c| !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn pm(rows: &[&[&[i64]]]) -> PolyMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|c| p(c)).collect()).collect()).unwrap()
    }

    fn check(a: &PolyMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(a.rows()));
        for m in [&s.u, &s.v] {
            let det = m.map(|x| RationalFunction::from_poly(x.clone())).determinant().unwrap();
            assert!(det.as_constant().is_some_and(|c| !c.is_zero()));
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        assert!(f.iter().all(|x| x.leading().unwrap().is_one()));
        s
    }

    #[test]
    fn smith_examples() {
        let s = check(&pm(&[&[&[0, 1], &[0]], &[&[0], &[-1, 1]]]));
        assert_eq!(s.invariant_factors(), vec![p(&[1]), p(&[0, -1, 1])]);
        assert!(check(&Matrix::zeros(2, 3)).invariant_factors().is_empty());
        assert_eq!(check(&Matrix::identity(3)).d, Matrix::identity(3));
        check(&pm(&[&[&[1, 1], &[0, 2], &[3]], &[&[2, 0, 1], &[1], &[0, 1]]]));
    }

    fn tminus1() -> PolyComplex {
        ChainComplex::new(vec![1, 1], vec![pm(&[&[&[-1, 1]]])]).unwrap()
    }

    #[test]
    fn orders() {
        let c = tminus1();
        assert_eq!(order_of_homology(&c, 0).unwrap(), p(&[-1, 1]));
        assert_eq!(order_of_homology(&c, 1).unwrap(), p(&[1]));
        let sq = ChainComplex::new(vec![1, 1], vec![pm(&[&[&[-1, 0, 1]]])]).unwrap();
        assert_eq!(order_of_homology(&sq, 0).unwrap(), p(&[-1, 0, 1]));
        let e = PolyComplex::elementary(2, 0, 1).unwrap();
        assert_eq!(order_of_homology(&e, 0).unwrap(), p(&[1]));
        let free = PolyComplex::from_dims_zero(vec![1]);
        assert_eq!(
            order_of_homology(&free, 0),
            Err(Error::PositiveRankHomology { degree: 0 })
        );
    }

    #[test]
    fn turaev_examples() {
        let c = tminus1();
        let expected = RationalFunction::new(p(&[1]), p(&[-1, 1])).unwrap();
        assert_eq!(turaev_torsion(&c).unwrap(), expected);
        assert_eq!(torsion_of_tensor(&c).unwrap(), expected);
        let two = ChainComplex::new(vec![2, 2], vec![pm(&[&[&[-1, 1], &[0]], &[&[0], &[2, 1]]])]).unwrap();
        let expected = RationalFunction::new(p(&[1]), p(&[-1, 1]) * p(&[2, 1])).unwrap();
        assert_eq!(turaev_torsion(&two).unwrap(), expected);
        assert_eq!(
            turaev_torsion(&PolyComplex::elementary(2, 1, 2).unwrap()).unwrap(),
            RationalFunction::one()
        );
    }

    #[test]
    fn maps_over_polynomials() {
        let c = tminus1();
        let id = ChainMap::identity(&c);
        assert_eq!(torsion_over_ufd(&id).unwrap(), RationalFunction::one());
        let t = ChainMap::new(c.clone(), c.clone(), vec![pm(&[&[&[0, 1]]]), pm(&[&[&[0, 1]]])]).unwrap();
        let tau = torsion_over_ufd(&t).unwrap();
        assert_eq!(tau, crate::torsion::torsion_self_map(&tensor_map(&t)).unwrap());
        assert_eq!(tau, RationalFunction::one());
        assert_eq!(unit_ratio(&tau, &order_quotient(&t).unwrap()), Some(Rational::from(1)));
    }
}
