//! Seeded random instances.
//!
//! A complex is produced in a standard form (homology part with zero
//! boundary plus elementary acyclic blocks) and then re-based by a random
//! invertible change of basis in every degree. Maps are built between
//! standard forms, where the chain condition is easy to meet, and carried
//! along by the same changes of basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, Polynomial, Rational, RationalFunction, Ring};
use crate::chain_map::{ChainHomotopy, ChainMap};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix};
use crate::torsion::{BasisChoice, SideBases};

pub const MAX_LENGTH: usize = 6;
pub const MAX_DIM: usize = 8;

/// Random small scalars of a ring.
pub trait Sample: Ring {
    fn small(rng: &mut ChaCha8Rng) -> Self;

    /// A random unit together with its inverse.
    fn unit(rng: &mut ChaCha8Rng) -> (Self, Self);
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    match rng.gen_range(0..10) {
        0..=2 => Rational::from(0),
        3..=8 => Rational::from(rng.gen_range(-3..=3)),
        _ => Rational::new(rng.gen_range(-3..=3), rng.gen_range(2..=3)),
    }
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    const CHOICES: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (1, 2), (-1, 3), (2, 3)];
    let (n, d) = CHOICES[rng.gen_range(0..CHOICES.len())];
    Rational::new(n, d)
}

impl Sample for Rational {
    fn small(rng: &mut ChaCha8Rng) -> Self {
        small_rational(rng)
    }

    fn unit(rng: &mut ChaCha8Rng) -> (Self, Self) {
        let u = nonzero_rational(rng);
        let inv = u.inv().expect("nonzero");
        (u, inv)
    }
}

impl Sample for RationalFunction {
    fn small(rng: &mut ChaCha8Rng) -> Self {
        if rng.gen_bool(0.3) {
            RationalFunction::from_poly(Polynomial::small(rng))
        } else {
            small_rational(rng).into()
        }
    }

    fn unit(rng: &mut ChaCha8Rng) -> (Self, Self) {
        let u: RationalFunction = if rng.gen_bool(0.3) {
            let a = rng.gen_range(-2..=2);
            Polynomial::from_ints(&[a, 1]).into()
        } else {
            nonzero_rational(rng).into()
        };
        let inv = u.inv().expect("nonzero");
        (u, inv)
    }
}

impl Sample for Polynomial {
    /// Degree at most one, small integer coefficients.
    fn small(rng: &mut ChaCha8Rng) -> Self {
        Polynomial::from_ints(&[rng.gen_range(-2..=2), rng.gen_range(-1..=1)])
    }

    fn unit(rng: &mut ChaCha8Rng) -> (Self, Self) {
        let u = nonzero_rational(rng);
        let inv = u.inv().expect("nonzero");
        (Polynomial::constant(u), Polynomial::constant(inv))
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix<R: Sample>(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<R> {
    let data = (0..rows * cols).map(|_| R::small(rng)).collect();
    Matrix::from_vec(rows, cols, data).expect("sized")
}

/// An invertible `n x n` matrix and its inverse, as a product of random
/// elementary operations.
pub fn random_invertible<R: Sample>(rng: &mut ChaCha8Rng, n: usize) -> (Matrix<R>, Matrix<R>) {
    let mut q = Matrix::identity(n);
    let mut q_inv = Matrix::identity(n);
    if n == 0 {
        return (q, q_inv);
    }
    for _ in 0..2 * n + 1 {
        let i = rng.gen_range(0..n);
        match rng.gen_range(0..5) {
            0 => {
                let j = rng.gen_range(0..n);
                q.swap_rows(i, j);
                q_inv.swap_cols(i, j);
            }
            1 => {
                let (u, u_inv) = R::unit(rng);
                q.scale_row(i, &u);
                q_inv.scale_col(i, &u_inv);
            }
            _ => {
                let j = rng.gen_range(0..n);
                if i != j {
                    let c = R::small(rng);
                    q.add_row_multiple(i, j, &c);
                    q_inv.add_col_multiple(j, i, &-c);
                }
            }
        }
    }
    (q, q_inv)
}

/// A random invertible matrix for each degree, with inverses.
pub fn random_change<R: Sample>(rng: &mut ChaCha8Rng, dims: &[usize]) -> (Vec<Matrix<R>>, Vec<Matrix<R>>) {
    dims.iter().map(|&n| random_invertible(rng, n)).unzip()
}

/// Sizes of a standard form: `betti[i]` homology generators in degree `i`
/// and `pieces[j]` elementary blocks joining degrees `j + 1` and `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub betti: Vec<usize>,
    pub pieces: Vec<usize>,
}

impl Shape {
    pub fn length(&self) -> usize {
        self.betti.len() - 1
    }

    pub fn dim(&self, i: usize) -> usize {
        let below = if i > 0 { self.pieces[i - 1] } else { 0 };
        let above = self.pieces.get(i).copied().unwrap_or(0);
        self.betti[i] + above + below
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.length()).map(|i| self.dim(i)).collect()
    }

    /// Offset in degree `i` of the lower ends of the blocks `i`.
    fn lower(&self, i: usize) -> usize {
        self.betti[i]
    }

    /// Offset in degree `i` of the upper ends of the blocks `i - 1`.
    fn upper(&self, i: usize) -> usize {
        self.betti[i] + self.pieces.get(i).copied().unwrap_or(0)
    }

    /// The standard complex; block `j`, entry `k`, has boundary
    /// `factor(j, k)` times the matching lower basis vector.
    pub fn standard<R: Ring>(&self, mut factor: impl FnMut(usize, usize) -> R) -> ChainComplex<R> {
        let dims = self.dims();
        let boundaries = (0..self.length())
            .map(|j| {
                let mut d = Matrix::zeros(dims[j + 1], dims[j]);
                for k in 0..self.pieces[j] {
                    d.set(self.upper(j + 1) + k, self.lower(j) + k, factor(j, k));
                }
                d
            })
            .collect();
        ChainComplex::new(dims, boundaries).expect("standard form is a complex")
    }
}

/// A complex together with the change of basis from its standard form.
#[derive(Debug, Clone)]
pub struct Based<R: Ring> {
    pub shape: Shape,
    pub standard: ChainComplex<R>,
    pub complex: ChainComplex<R>,
    pub q: Vec<Matrix<R>>,
    pub q_inv: Vec<Matrix<R>>,
}

/// What kind of map [`Generator::instance`] produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Iso,
    Qiso,
    SelfMap,
    Acyclic,
    NonQiso,
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iso" => Ok(Profile::Iso),
            "qiso" => Ok(Profile::Qiso),
            "self" => Ok(Profile::SelfMap),
            "acyclic" => Ok(Profile::Acyclic),
            "non-qiso" => Ok(Profile::NonQiso),
            other => Err(Error::ParamOutOfRange(format!("unknown profile {other:?}"))),
        }
    }
}

pub struct Generator<F: Field + Sample> {
    pub rng: ChaCha8Rng,
    pub length: usize,
    pub max_dim: usize,
    _field: std::marker::PhantomData<F>,
}

impl<F: Field + Sample> Generator<F> {
    pub fn new(seed: u64, length: usize, max_dim: usize) -> Result<Self> {
        if length > MAX_LENGTH {
            return Err(Error::ParamOutOfRange(format!("length {length} exceeds {MAX_LENGTH}")));
        }
        if max_dim > MAX_DIM {
            return Err(Error::ParamOutOfRange(format!("dimension {max_dim} exceeds {MAX_DIM}")));
        }
        Ok(Generator {
            rng: rng_from_seed(seed),
            length,
            max_dim,
            _field: std::marker::PhantomData,
        })
    }

    pub fn random_betti(&mut self) -> Vec<usize> {
        let cap = self.max_dim.min(2);
        (0..=self.length).map(|_| self.rng.gen_range(0..=cap)).collect()
    }

    /// A random shape with the given homology, respecting `max_dim`.
    pub fn shape(&mut self, betti: &[usize]) -> Shape {
        let m = self.length;
        let mut pieces = vec![0; m];
        let mut dims: Vec<usize> = betti.to_vec();
        for j in 0..m {
            let room = self
                .max_dim
                .saturating_sub(dims[j])
                .min(self.max_dim.saturating_sub(dims[j + 1]));
            let a = self.rng.gen_range(0..=room.min(3));
            pieces[j] = a;
            dims[j] += a;
            dims[j + 1] += a;
        }
        Shape {
            betti: betti.to_vec(),
            pieces,
        }
    }

    pub fn based(&mut self, shape: Shape) -> Based<F> {
        let standard = shape.standard(|_, _| F::one());
        let (q, q_inv) = random_change(&mut self.rng, standard.dims());
        let complex = standard.rebase(&q, &q_inv).expect("invertible change");
        Based {
            shape,
            standard,
            complex,
            q,
            q_inv,
        }
    }

    pub fn random_complex(&mut self) -> Based<F> {
        let betti = self.random_betti();
        let shape = self.shape(&betti);
        self.based(shape)
    }

    /// A chain map between standard forms inducing `phi[i]` on homology.
    fn standard_map(&mut self, src: &Based<F>, tgt: &Based<F>, phi: &[Matrix<F>]) -> Vec<Matrix<F>> {
        let (s, t) = (&src.shape, &tgt.shape);
        let m = s.length();
        let mut mats: Vec<Matrix<F>> = (0..=m).map(|i| Matrix::zeros(s.dim(i), t.dim(i))).collect();
        for i in 0..=m {
            // homology part: phi plus boundaries of the target
            for r in 0..s.betti[i] {
                for c in 0..t.betti[i] {
                    mats[i].set(r, c, phi[i].get(r, c).clone());
                }
                for k in 0..t.pieces.get(i).copied().unwrap_or(0) {
                    mats[i].set(r, t.lower(i) + k, F::small(&mut self.rng));
                }
            }
        }
        for j in 0..m {
            // upper ends go anywhere; lower ends follow by the chain condition
            for k in 0..s.pieces[j] {
                let u: Vec<F> = (0..t.dim(j + 1)).map(|_| F::small(&mut self.rng)).collect();
                let image = tgt.standard.boundary(j).apply(&u);
                for (c, x) in u.into_iter().enumerate() {
                    mats[j + 1].set(s.upper(j + 1) + k, c, x);
                }
                for (c, x) in image.into_iter().enumerate() {
                    mats[j].set(s.lower(j) + k, c, x);
                }
            }
        }
        mats
    }

    /// A chain map `src -> tgt` inducing `phi` in the standard homology bases.
    pub fn map_with_induced(&mut self, src: &Based<F>, tgt: &Based<F>, phi: &[Matrix<F>]) -> ChainMap<F> {
        let mats = self.standard_map(src, tgt, phi);
        let mats = (0..mats.len())
            .map(|i| src.q[i].mul(&mats[i]).mul(&tgt.q_inv[i]))
            .collect();
        ChainMap::new(src.complex.clone(), tgt.complex.clone(), mats).expect("generated chain map")
    }

    pub fn invertible_phi(&mut self, betti: &[usize]) -> Vec<Matrix<F>> {
        betti.iter().map(|&y| random_invertible(&mut self.rng, y).0).collect()
    }

    /// Like [`Generator::invertible_phi`] but singular in one degree.
    fn singular_phi(&mut self, betti: &[usize]) -> Vec<Matrix<F>> {
        let mut phi = self.invertible_phi(betti);
        let degrees: Vec<usize> = (0..betti.len()).filter(|&i| betti[i] > 0).collect();
        let i = degrees[self.rng.gen_range(0..degrees.len())];
        let row = self.rng.gen_range(0..betti[i]);
        for c in 0..betti[i] {
            phi[i].set(row, c, F::zero());
        }
        phi
    }

    /// A quasi-isomorphism between two random complexes with equal homology.
    pub fn qiso(&mut self) -> ChainMap<F> {
        self.chain(1).pop().expect("one map")
    }

    /// `k` composable quasi-isomorphisms `C_0 -> C_1 -> ... -> C_k`.
    pub fn chain(&mut self, k: usize) -> Vec<ChainMap<F>> {
        let betti = self.random_betti();
        let complexes: Vec<Based<F>> = (0..=k)
            .map(|_| {
                let shape = self.shape(&betti);
                self.based(shape)
            })
            .collect();
        complexes
            .windows(2)
            .map(|w| {
                let phi = self.invertible_phi(&betti);
                self.map_with_induced(&w[0], &w[1], &phi)
            })
            .collect()
    }

    pub fn self_map(&mut self) -> ChainMap<F> {
        let c = self.random_complex();
        let phi = self.invertible_phi(&c.shape.betti);
        self.map_with_induced(&c, &c, &phi)
    }

    /// A map between acyclic complexes.
    pub fn acyclic_map(&mut self) -> ChainMap<F> {
        let zero = vec![0; self.length + 1];
        let (s1, s2) = (self.shape(&zero), self.shape(&zero));
        let (a, b) = (self.based(s1), self.based(s2));
        self.map_with_induced(&a, &b, &vec![Matrix::zeros(0, 0); self.length + 1])
    }

    pub fn acyclic_complex(&mut self) -> Based<F> {
        let zero = vec![0; self.length + 1];
        let shape = self.shape(&zero);
        self.based(shape)
    }

    /// A chain isomorphism `C -> C'` and its inverse.
    pub fn iso(&mut self) -> (ChainMap<F>, ChainMap<F>) {
        let c = self.random_complex().complex;
        let (r, r_inv) = random_change(&mut self.rng, c.dims());
        let target = c.rebase(&r, &r_inv).expect("invertible change");
        let f = ChainMap::new(c.clone(), target.clone(), r_inv).expect("iso");
        let g = ChainMap::new(target, c, r).expect("iso");
        (f, g)
    }

    /// A map that is not a quasi-isomorphism; some homology is forced.
    pub fn non_qiso(&mut self) -> ChainMap<F> {
        let mut betti = self.random_betti();
        if betti.iter().all(|&y| y == 0) {
            let i = self.rng.gen_range(0..betti.len());
            betti[i] = 1;
        }
        let (s1, s2) = (self.shape(&betti), self.shape(&betti));
        let (a, b) = (self.based(s1), self.based(s2));
        let phi = self.singular_phi(&betti);
        self.map_with_induced(&a, &b, &phi)
    }

    pub fn instance(&mut self, profile: Profile) -> ChainMap<F> {
        match profile {
            Profile::Iso => self.iso().0,
            Profile::Qiso => self.qiso(),
            Profile::SelfMap => self.self_map(),
            Profile::Acyclic => self.acyclic_map(),
            Profile::NonQiso => self.non_qiso(),
        }
    }

    pub fn homotopy(&mut self, source: &ChainComplex<F>, target: &ChainComplex<F>) -> ChainHomotopy<F> {
        ChainHomotopy {
            mats: (0..source.length())
                .map(|i| random_matrix(&mut self.rng, source.dim(i), target.dim(i + 1)))
                .collect(),
        }
    }

    /// Random bases and liftings for both sides of `f`, obtained from the
    /// canonical ones by invertible recombination, adding boundaries to the
    /// homology representatives, and adding cycles to the liftings.
    pub fn basis_choice(&mut self, f: &ChainMap<F>) -> BasisChoice<F> {
        let hs = f.source().homology();
        let mut choice = BasisChoice::canonical(f);
        let source = self.side(&choice.source, f.source());
        let target = self.side(&choice.target, f.target());
        for (i, h) in choice.homology.iter_mut().enumerate() {
            let (a, _) = random_invertible(&mut self.rng, h.rows());
            let b = random_matrix(&mut self.rng, h.rows(), hs.degree(i).boundary_rank());
            *h = a.mul(h).add(&b.mul(&source.boundaries[i]));
        }
        choice.source = source;
        choice.target = target;
        choice
    }

    fn side(&mut self, canonical: &SideBases<F>, c: &ChainComplex<F>) -> SideBases<F> {
        let m = c.length();
        let p: Vec<Matrix<F>> = canonical
            .boundaries
            .iter()
            .map(|b| random_invertible(&mut self.rng, b.rows()).0)
            .collect();
        let boundaries = (0..=m).map(|i| p[i].mul(&canonical.boundaries[i])).collect();
        let liftings = (0..=m)
            .map(|i| {
                let lift = &canonical.liftings[i];
                if i == 0 {
                    return lift.clone();
                }
                let cycles = kernel_basis(c.boundary(i - 1)).into_matrix();
                let offset = random_matrix(&mut self.rng, lift.rows(), cycles.rows()).mul(&cycles);
                p[i - 1].mul(lift).add(&offset)
            })
            .collect();
        SideBases { boundaries, liftings }
    }
}

/// Random polynomial matrices and complexes over `Q[t]` with torsion
/// homology.
pub struct PolyGenerator {
    pub rng: ChaCha8Rng,
}

impl PolyGenerator {
    pub fn new(seed: u64) -> Self {
        PolyGenerator {
            rng: rng_from_seed(seed),
        }
    }

    pub fn poly(&mut self, max_degree: usize) -> Polynomial {
        if self.rng.gen_bool(0.25) {
            return Polynomial::zero();
        }
        let d = self.rng.gen_range(0..=max_degree);
        let coeffs: Vec<i64> = (0..=d).map(|_| self.rng.gen_range(-3..=3)).collect();
        Polynomial::from_ints(&coeffs)
    }

    pub fn matrix(&mut self, max_size: usize, max_degree: usize) -> Matrix<Polynomial> {
        let (r, c) = (self.rng.gen_range(1..=max_size), self.rng.gen_range(1..=max_size));
        let data = (0..r * c).map(|_| self.poly(max_degree)).collect();
        Matrix::from_vec(r, c, data).expect("sized")
    }

    /// A nonzero polynomial of degree at most two.
    fn factor(&mut self) -> Polynomial {
        loop {
            let p = self.poly(2);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A complex with zero-rank homology and the expected orders of its
    /// homology, read off before the change of basis.
    pub fn torsion_complex(&mut self, length: usize, max_dim: usize) -> (ChainComplex<Polynomial>, Vec<Polynomial>) {
        let mut pieces = vec![0; length];
        let mut dims = vec![0; length + 1];
        for j in 0..length {
            let room = max_dim.saturating_sub(dims[j]).min(max_dim - dims[j + 1]);
            pieces[j] = self.rng.gen_range(0..=room.min(2));
            dims[j] += pieces[j];
            dims[j + 1] += pieces[j];
        }
        let shape = Shape {
            betti: vec![0; length + 1],
            pieces,
        };
        let factors: Vec<Vec<Polynomial>> = shape
            .pieces
            .iter()
            .map(|&a| (0..a).map(|_| self.factor()).collect())
            .collect();
        let standard = shape.standard(|j, k| factors[j][k].clone());
        let mut orders: Vec<Polynomial> = factors
            .iter()
            .map(|fs| fs.iter().fold(Polynomial::one(), |acc, f| acc * f.monic()))
            .collect();
        orders.push(Polynomial::one());
        let (q, q_inv) = random_change(&mut self.rng, standard.dims());
        let c = standard.rebase(&q, &q_inv).expect("unimodular change");
        (c, orders)
    }

    /// The null-homotopic chain map `T d + d T` between two complexes.
    pub fn null_homotopic(
        &mut self,
        source: &ChainComplex<Polynomial>,
        target: &ChainComplex<Polynomial>,
    ) -> ChainMap<Polynomial> {
        let t = ChainHomotopy {
            mats: (0..source.length())
                .map(|i| random_matrix(&mut self.rng, source.dim(i), target.dim(i + 1)))
                .collect(),
        };
        let zero = ChainMap::zero(source, target).expect("same length");
        t.perturb(&zero).expect("shapes match")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::{torsion, torsion_with_bases};

    #[test]
    fn generated_maps_are_valid() {
        for seed in 0..20 {
            let mut g = Generator::<Rational>::new(seed, (seed % 4) as usize, 5).unwrap();
            let f = g.qiso();
            assert!(f.validate().is_ok());
            assert!(f.is_quasi_isomorphism());
            assert!(!g.non_qiso().is_quasi_isomorphism());
            let (a, b) = g.iso();
            assert_eq!(
                crate::chain_map::compose(&b, &a).unwrap(),
                ChainMap::identity(a.source())
            );
            let choice = g.basis_choice(&f);
            assert_eq!(torsion_with_bases(&f, &choice).unwrap(), torsion(&f).unwrap());
        }
    }

    #[test]
    fn deterministic() {
        let a = Generator::<RationalFunction>::new(7, 2, 4).unwrap().qiso();
        let b = Generator::<RationalFunction>::new(7, 2, 4).unwrap().qiso();
        assert_eq!(a, b);
        assert!(Generator::<Rational>::new(1, 7, 4).is_err());
        assert!(Generator::<Rational>::new(1, 2, 9).is_err());
    }

    #[test]
    fn torsion_complexes() {
        let mut g = PolyGenerator::new(3);
        for _ in 0..10 {
            let (c, orders) = g.torsion_complex(3, 4);
            for (i, o) in orders.iter().enumerate() {
                assert_eq!(&crate::ufd::order_of_homology(&c, i).unwrap(), o);
            }
        }
    }
}
