//! Torsion of quasi-isomorphisms and of acyclic complexes.
//!
//! In degree `i` the source bracket is the determinant of the rows
//! `(b_i, h_i, b~_{i-1})` and the target bracket that of
//! `(b'_i, f_i(h_i), b~'_{i-1})`. The torsion is
//! `prod_i (source_i / target_i)^((-1)^(i+1))`.

use crate::arith::Field;
use crate::chain_map::ChainMap;
use crate::complex::{ChainComplex, DimensionProfile, HomologyData};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowBasis};

/// Both brackets of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket<F: Field> {
    pub source: F,
    pub target: F,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport<F: Field> {
    pub value: F,
    pub brackets: Vec<Bracket<F>>,
}

/// Boundary bases and liftings of one complex, one entry per degree.
/// `boundaries[i]` holds `b_i` and `liftings[i]` holds rows of `C_i`
/// mapping onto `b_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideBases<F: Field> {
    pub boundaries: Vec<Matrix<F>>,
    pub liftings: Vec<Matrix<F>>,
}

impl<F: Field> SideBases<F> {
    pub fn canonical(h: &HomologyData<F>) -> Self {
        SideBases {
            boundaries: h.degrees.iter().map(|d| d.boundaries.vectors().clone()).collect(),
            liftings: h.degrees.iter().map(|d| d.lifting.clone()).collect(),
        }
    }

    fn validate(&self, c: &ChainComplex<F>, h: &HomologyData<F>) -> Result<()> {
        let m = c.length();
        let bad = |degree: usize, reason: String| Error::InvalidBasisChoice { degree, reason };
        if self.boundaries.len() != m + 1 || self.liftings.len() != m + 1 {
            return Err(bad(0, format!("expected {} degrees", m + 1)));
        }
        for i in 0..=m {
            let b = &self.boundaries[i];
            let canonical = &h.degree(i).boundaries;
            if b.cols() != c.dim(i) {
                return Err(bad(i, "boundary basis has the wrong width".into()));
            }
            let basis = RowBasis::new(b.clone()).map_err(|_| bad(i, "boundary rows are dependent".into()))?;
            if !basis.same_span(canonical) {
                return Err(bad(i, "boundary rows do not span the boundaries".into()));
            }
            let lift = &self.liftings[i];
            let expected = if i == 0 {
                Matrix::zeros(0, 0)
            } else {
                self.boundaries[i - 1].clone()
            };
            let image = if i == 0 {
                Matrix::zeros(lift.rows(), 0)
            } else {
                lift.mul(c.boundary(i - 1))
            };
            if lift.cols() != c.dim(i) || image != expected {
                return Err(bad(i, "lifting does not map onto the boundary basis below".into()));
            }
        }
        Ok(())
    }
}

/// Alternative bases and liftings for both sides, plus homology
/// representatives `h_i` of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChoice<F: Field> {
    pub source: SideBases<F>,
    pub target: SideBases<F>,
    pub homology: Vec<Matrix<F>>,
}

impl<F: Field> BasisChoice<F> {
    pub fn canonical(f: &ChainMap<F>) -> Self {
        let (hs, ht) = (f.source().homology(), f.target().homology());
        BasisChoice {
            source: SideBases::canonical(&hs),
            target: SideBases::canonical(&ht),
            homology: hs.degrees.iter().map(|d| d.reps.clone()).collect(),
        }
    }

    fn validate(&self, f: &ChainMap<F>, hs: &HomologyData<F>, ht: &HomologyData<F>) -> Result<()> {
        self.source.validate(f.source(), hs)?;
        self.target.validate(f.target(), ht)?;
        let c = f.source();
        if self.homology.len() != c.length() + 1 {
            return Err(Error::InvalidBasisChoice {
                degree: 0,
                reason: format!("expected {} degrees", c.length() + 1),
            });
        }
        for (i, h) in self.homology.iter().enumerate() {
            let bad = |reason: &str| Error::InvalidBasisChoice {
                degree: i,
                reason: reason.to_string(),
            };
            let d = hs.degree(i);
            if h.cols() != c.dim(i) || h.rows() != d.betti() {
                return Err(bad("wrong number of homology representatives"));
            }
            if i > 0 && !h.mul(c.boundary(i - 1)).is_zero() {
                return Err(bad("homology representative is not a cycle"));
            }
            let zb = Matrix::vstack(&self.source.boundaries[i], h);
            if zb.rank() != zb.rows() {
                return Err(bad("homology representatives are dependent modulo boundaries"));
            }
        }
        Ok(())
    }
}

fn bracket<F: Field>(rows: [&Matrix<F>; 3], n: usize) -> F {
    Matrix::vstack_all(n, rows)
        .determinant()
        .expect("bracket rows form a square matrix")
}

fn evaluate<F: Field>(f: &ChainMap<F>, choice: &BasisChoice<F>) -> Result<TorsionReport<F>> {
    let mut value = F::one();
    let mut brackets = Vec::new();
    for i in 0..=f.length() {
        let (n, n2) = (f.source().dim(i), f.target().dim(i));
        let h = &choice.homology[i];
        let src = bracket([&choice.source.boundaries[i], h, &choice.source.liftings[i]], n);
        let fh = h.mul(f.mat(i));
        let tgt = bracket([&choice.target.boundaries[i], &fh, &choice.target.liftings[i]], n2);
        if tgt.is_zero() {
            return Err(Error::NotQuasiIsomorphism);
        }
        value = value * (src.clone() / &tgt).alternate(i);
        brackets.push(Bracket {
            source: src,
            target: tgt,
        });
    }
    Ok(TorsionReport { value, brackets })
}

/// Torsion with the canonical bases, and the bracket of each degree.
pub fn torsion_report<F: Field>(f: &ChainMap<F>) -> Result<TorsionReport<F>> {
    f.validate()?;
    if !f.is_quasi_isomorphism() {
        return Err(Error::NotQuasiIsomorphism);
    }
    evaluate(f, &BasisChoice::canonical(f))
}

pub fn torsion<F: Field>(f: &ChainMap<F>) -> Result<F> {
    Ok(torsion_report(f)?.value)
}

/// Torsion evaluated with caller-supplied bases and liftings.
pub fn torsion_with_bases<F: Field>(f: &ChainMap<F>, choice: &BasisChoice<F>) -> Result<F> {
    f.validate()?;
    let (hs, ht) = (f.source().homology(), f.target().homology());
    if !f.induced_with(&hs, &ht).is_isomorphism() {
        return Err(Error::NotQuasiIsomorphism);
    }
    choice.validate(f, &hs, &ht)?;
    Ok(evaluate(f, choice)?.value)
}

/// `prod_i [b_i b~_{i-1} / c_i]^((-1)^(i+1))`; the zero complex gives 1.
pub fn torsion_acyclic<F: Field>(c: &ChainComplex<F>) -> Result<F> {
    let h = c.homology();
    if h.degrees.iter().any(|d| d.betti() > 0) {
        return Err(Error::NotAcyclic);
    }
    Ok(h.degrees.iter().enumerate().fold(F::one(), |acc, (i, d)| {
        let det = Matrix::vstack(d.boundaries.vectors(), &d.lifting)
            .determinant()
            .expect("square");
        acc * det.alternate(i)
    }))
}

/// Torsion of a self-map from the induced maps alone:
/// `prod_{i even} det f_i* / prod_{i odd} det f_i*`.
pub fn torsion_self_map<F: Field>(f: &ChainMap<F>) -> Result<F> {
    if !f.is_self_map() {
        return Err(Error::NotSelfMap);
    }
    let induced = f.induced();
    if !induced.is_isomorphism() {
        return Err(Error::NotQuasiIsomorphism);
    }
    Ok(induced.mats.iter().enumerate().fold(F::one(), |acc, (i, m)| {
        let det = m.determinant().expect("square");
        if i % 2 == 0 {
            acc * det
        } else {
            acc / det
        }
    }))
}

/// `prod_i [new_i / old_i]^((-1)^(i+1))` with `[new/old] = det new / det old`.
///
/// For a map `f` re-based by `q` on the source and `q2` on the target
/// (rows = new basis in old coordinates),
/// `torsion(new f) = factor(I, q2) / factor(I, q) * torsion(f)`.
pub fn base_change_factor<F: Field>(old: &[Matrix<F>], new: &[Matrix<F>]) -> Result<F> {
    if old.len() != new.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} old and {} new degrees",
            old.len(),
            new.len()
        )));
    }
    let mut acc = F::one();
    for (i, (a, b)) in old.iter().zip(new).enumerate() {
        if a.shape() != b.shape() {
            return Err(Error::DimensionMismatch(format!("degree {i} shapes differ")));
        }
        let (da, db) = (a.determinant()?, b.determinant()?);
        if da.is_zero() || db.is_zero() {
            return Err(Error::Singular);
        }
        acc = acc * (db / da).alternate(i);
    }
    Ok(acc)
}

/// `tau(f) / tau(g) = prod_i (det G_i* / det F_i*)^((-1)^(i+1))`, from the
/// induced maps only.
pub fn torsion_quotient<F: Field>(f: &ChainMap<F>, g: &ChainMap<F>) -> Result<F> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::ComplexMismatch);
    }
    let (hs, ht) = (f.source().homology(), f.target().homology());
    let (fi, gi) = (f.induced_with(&hs, &ht), g.induced_with(&hs, &ht));
    if !fi.is_isomorphism() || !gi.is_isomorphism() {
        return Err(Error::NotQuasiIsomorphism);
    }
    Ok((0..=f.length()).fold(F::one(), |acc, i| {
        let df = fi.mats[i].determinant().expect("square");
        let dg = gi.mats[i].determinant().expect("square");
        acc * (dg / df).alternate(i)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_exponent(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn apply<F: Field>(self, x: F) -> F {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Sign `s` with `tau(f (+) g) = s tau(f) tau(g)` for `f : C -> C'` and
/// `g : C'' -> C'''`, from the profiles of the four complexes.
pub fn predict_sum_sign(
    c: &DimensionProfile,
    c1: &DimensionProfile,
    c2: &DimensionProfile,
    c3: &DimensionProfile,
) -> Sign {
    let m = [c, c1, c2, c3].iter().map(|p| p.length()).max().unwrap_or(0) as isize;
    let mut e: i64 = 0;
    for i in 0..=m {
        let (x, x1, x2, x3) = (c.x(i - 1) as i64, c1.x(i - 1) as i64, c2.x(i) as i64, c3.x(i) as i64);
        let (y, y2) = (c.y(i) as i64, c2.y(i) as i64);
        e += (x2 * y + x * (x2 + y2)) - (x3 * y + x1 * (x3 + y2));
    }
    Sign::from_exponent(e)
}

/// Sign `s` with `tau(f*) = s tau(f)^((-1)^m)` for `f : C -> C'`.
pub fn predict_dual_sign(c: &DimensionProfile, c1: &DimensionProfile) -> Sign {
    let m = c.length().max(c1.length()) as isize;
    let mut e: i64 = 0;
    for i in 0..=m {
        let (x, xp) = (c.x(i) as i64, c.x(i - 1) as i64);
        let (x1, x1p) = (c1.x(i) as i64, c1.x(i - 1) as i64);
        let y = c.y(i) as i64;
        e += (x1 * (x1p + y) + x1p * y) - (x * (xp + y) + xp * y);
    }
    Sign::from_exponent(e)
}
