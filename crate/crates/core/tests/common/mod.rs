//! Seeded instance checks shared by the acceptance runner and the property
//! tests. Each check builds one instance from a seed and returns `Err` with
//! a description when an identity fails.

#![allow(dead_code)]

use std::path::PathBuf;

use rtorsion::arith::{Field, Polynomial, Rational, RationalFunction, Ring};
use rtorsion::chain_map::{
    check_homotopy, direct_sum_map, dual_map, injection, projection, triangular_extension, ChainHomotopy, ChainMap,
};
use rtorsion::complex::ChainComplex;
use rtorsion::gen::{random_change, random_invertible, random_matrix, Based, Generator, PolyGenerator, Sample};
use rtorsion::linalg::Matrix;
use rtorsion::torsion::{
    base_change_factor, predict_dual_sign, predict_sum_sign, torsion, torsion_acyclic, torsion_quotient,
    torsion_self_map, torsion_with_bases, Sign,
};
use rtorsion::ufd;

pub type Check = Result<(), String>;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn tau<F: Field>(f: &ChainMap<F>) -> Result<F, String> {
    torsion(f).map_err(|e| format!("torsion failed: {e}"))
}

fn expect_eq<F: Field>(what: &str, got: F, want: F) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

/// `x^((-1)^(i+1))`: inverted in even degrees.
fn alt<F: Field>(x: F, i: usize) -> F {
    if i.is_multiple_of(2) {
        x.inv().expect("nonzero")
    } else {
        x
    }
}

fn generator<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Generator<F> {
    Generator::new(seed, length, max_dim).expect("parameters in range")
}

/// Length in `0..=4` and a dimension cap, both drawn from the seed.
pub fn small_params(seed: u64, max_dim: usize) -> (usize, usize) {
    ((seed % 5) as usize, 2 + (seed / 5) as usize % (max_dim - 1))
}

pub fn multiplicativity<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let mut g = generator::<F>(seed, length, max_dim);
    let maps = g.chain(2);
    let (f, h) = (&maps[0], &maps[1]);
    let composite = f.then(h).map_err(|e| e.to_string())?;
    expect_eq("tau(h o f)", tau(&composite)?, tau(f)? * tau(h)?)
}

pub fn basis_independence<F: Field + Sample>(seed: u64, length: usize, max_dim: usize, choices: usize) -> Check {
    let mut g = generator::<F>(seed, length, max_dim);
    let f = if seed.is_multiple_of(3) { g.self_map() } else { g.qiso() };
    let reference = tau(&f)?;
    for k in 0..choices {
        let choice = g.basis_choice(&f);
        let value = torsion_with_bases(&f, &choice).map_err(|e| format!("choice {k}: {e}"))?;
        expect_eq(&format!("choice {k}"), value, reference.clone())?;
    }
    Ok(())
}

/// Checks the sum law and reports which sign it predicted.
pub fn sum_sign<F: Field + Sample>(seed: u64, max_dim: usize) -> Result<Sign, String> {
    let (m1, m2) = ((seed % 5) as usize, (seed / 5 % 5) as usize);
    let f = generator::<F>(seed, m1, max_dim).qiso();
    let h = generator::<F>(seed.wrapping_add(1 << 32), m2, max_dim).qiso();
    let m = m1.max(m2);
    let (f, h) = (f.padded(m), h.padded(m));
    let sign = predict_sum_sign(
        &f.source().profile(),
        &f.target().profile(),
        &h.source().profile(),
        &h.target().profile(),
    );
    let sum = direct_sum_map(&f, &h);
    expect_eq("tau(f + g)", tau(&sum)?, sign.apply(tau(&f)? * tau(&h)?))?;
    Ok(sign)
}

pub fn dual_sign<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Result<Sign, String> {
    let f = generator::<F>(seed, length, max_dim).qiso();
    let sign = predict_dual_sign(&f.source().profile(), &f.target().profile());
    let t = tau(&f)?;
    let expected = if length.is_multiple_of(2) {
        t
    } else {
        t.inv().expect("nonzero")
    };
    expect_eq("tau(f*)", tau(&dual_map(&f))?, sign.apply(expected))?;
    Ok(sign)
}

/// A map between acyclic complexes has torsion `tau(C) / tau(C')`.
pub fn acyclic_quotient<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let f = generator::<F>(seed, length, max_dim).acyclic_map();
    if !f.is_quasi_isomorphism() {
        return Err("map between acyclic complexes is not a quasi-isomorphism".into());
    }
    let c = torsion_acyclic(f.source()).map_err(|e| e.to_string())?;
    let c1 = torsion_acyclic(f.target()).map_err(|e| e.to_string())?;
    expect_eq("tau(f)", tau(&f)?, c / c1)
}

pub fn zero_maps<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let c = generator::<F>(seed, length, max_dim).acyclic_complex().complex;
    let zero = ChainComplex::from_dims_zero(vec![0; length + 1]);
    let t = torsion_acyclic(&c).map_err(|e| e.to_string())?;
    let into = ChainMap::zero(&zero, &c).map_err(|e| e.to_string())?;
    let out = ChainMap::zero(&c, &zero).map_err(|e| e.to_string())?;
    expect_eq("tau(0 -> C)", tau(&into)?, t.inv().expect("nonzero"))?;
    expect_eq("tau(C -> 0)", tau(&out)?, t)
}

/// Injection and projection against an acyclic summand. Beyond the
/// `+-` relation this checks the exact sign predicted by the sum law.
pub fn injection_projection<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let mut g = generator::<F>(seed, length, max_dim);
    let c = g.random_complex().complex;
    let c2 = g.acyclic_complex().complex;
    let zero = ChainComplex::<F>::from_dims_zero(vec![0; length + 1]);
    let t2 = torsion_acyclic(&c2).map_err(|e| e.to_string())?;
    let (pc, p2, p0) = (c.profile(), c2.profile(), zero.profile());

    let i = injection(&c, &c2);
    let ti = tau(&i)?;
    let product = ti.clone() * &t2;
    if product != F::one() && product != -F::one() {
        return Err(format!("tau(i) tau(C') = {product}"));
    }
    expect_eq(
        "tau(i)",
        ti,
        predict_sum_sign(&pc, &pc, &p0, &p2).apply(t2.inv().expect("nonzero")),
    )?;

    let p = projection(&c, &c2);
    let tp = tau(&p)?;
    let quotient = tp.clone() / &t2;
    if quotient != F::one() && quotient != -F::one() {
        return Err(format!("tau(p) / tau(C') = {quotient}"));
    }
    expect_eq("tau(p)", tp, predict_sum_sign(&pc, &pc, &p2, &p0).apply(t2))
}

/// Re-basing both sides multiplies torsion by the ratio of determinant
/// alternating products, computed here directly from the change matrices.
pub fn base_change<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let mut g = generator::<F>(seed, length, max_dim);
    let f = g.qiso();
    let (q, q_inv) = random_change::<F>(&mut g.rng, f.source().dims());
    let (q2, q2_inv) = random_change::<F>(&mut g.rng, f.target().dims());
    let rebased = f
        .rebase((&q[..], &q_inv[..]), (&q2[..], &q2_inv[..]))
        .map_err(|e| e.to_string())?;
    let mut factor = F::one();
    for i in 0..=length {
        let d = q[i].determinant().map_err(|e| e.to_string())?;
        let d2 = q2[i].determinant().map_err(|e| e.to_string())?;
        factor = factor * alt(d2 / d, i);
    }
    let expected = factor.clone() * tau(&f)?;
    expect_eq("tau(rebased f)", tau(&rebased)?, expected)?;
    let ident: Vec<Matrix<F>> = q.iter().map(|m| Matrix::identity(m.rows())).collect();
    let ident2: Vec<Matrix<F>> = q2.iter().map(|m| Matrix::identity(m.rows())).collect();
    let lib = base_change_factor(&ident2, &q2).map_err(|e| e.to_string())?
        / base_change_factor(&ident, &q).map_err(|e| e.to_string())?;
    expect_eq("base_change_factor ratio", lib, factor)
}

pub fn self_map_fast_path<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let f = generator::<F>(seed, length, max_dim).self_map();
    let fast = torsion_self_map(&f).map_err(|e| e.to_string())?;
    expect_eq("self-map determinant formula", fast, tau(&f)?)
}

/// Self-maps `f`, `f2` and a chain map `g` between their complexes.
pub fn triangular<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let mut g = generator::<F>(seed, length, max_dim);
    let (a, b) = (g.random_complex(), g.random_complex());
    let phi_a = g.invertible_phi(&a.shape.betti);
    let phi_b = g.invertible_phi(&b.shape.betti);
    let f = g.map_with_induced(&a, &a, &phi_a);
    let f2 = g.map_with_induced(&b, &b, &phi_b);
    let cross: Vec<Matrix<F>> = (0..=length)
        .map(|i| random_matrix(&mut g.rng, a.shape.betti[i], b.shape.betti[i]))
        .collect();
    let off = g.map_with_induced(&a, &b, &cross);
    let ext = triangular_extension(&f, &f2, &off).map_err(|e| e.to_string())?;
    expect_eq("tau(triangular)", tau(&ext)?, tau(&f)? * tau(&f2)?)
}

/// Two quasi-isomorphisms between the same complexes.
pub fn quotient<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let mut g = generator::<F>(seed, length, max_dim);
    let betti = g.random_betti();
    let (sa, sb) = (g.shape(&betti), g.shape(&betti));
    let (a, b) = (g.based(sa), g.based(sb));
    let (p1, p2) = (g.invertible_phi(&betti), g.invertible_phi(&betti));
    let f = g.map_with_induced(&a, &b, &p1);
    let h = g.map_with_induced(&a, &b, &p2);
    let q = torsion_quotient(&f, &h).map_err(|e| e.to_string())?;
    expect_eq("tau(f)/tau(g)", q, tau(&f)? / tau(&h)?)
}

pub fn homotopy_invariance<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let mut g = generator::<F>(seed, length, max_dim);
    let f = g.qiso();
    let t = g.homotopy(f.source(), f.target());
    let f2 = t.perturb(&f).map_err(|e| e.to_string())?;
    if !check_homotopy(&f2, &f, &t).map_err(|e| e.to_string())? {
        return Err("perturbed map fails the homotopy check".into());
    }
    let back = ChainHomotopy {
        mats: t.mats.iter().map(Matrix::neg).collect(),
    };
    if !check_homotopy(&f, &f2, &back).map_err(|e| e.to_string())? {
        return Err("negated homotopy fails".into());
    }
    if f.induced() != f2.induced() {
        return Err("homotopic maps induce different maps".into());
    }
    expect_eq("tau(f + dT + Td)", tau(&f2)?, tau(&f)?)
}

/// Contraction of the elementary part of a standard form: each lower end
/// goes to the matching upper end.
fn contraction<F: Field>(b: &Based<F>) -> ChainHomotopy<F> {
    let s = &b.shape;
    let m = s.length();
    let mats = (0..m)
        .map(|i| {
            let mut t = Matrix::zeros(s.dim(i), s.dim(i + 1));
            let upper = s.betti[i + 1] + s.pieces.get(i + 1).copied().unwrap_or(0);
            for k in 0..s.pieces[i] {
                t.set(s.betti[i] + k, upper + k, F::one());
            }
            b.q[i].mul(&t).mul(&b.q_inv[i + 1])
        })
        .collect();
    ChainHomotopy { mats }
}

/// Map between standard forms that is `phi` on homology and zero elsewhere.
fn homology_only<F: Field>(a: &Based<F>, b: &Based<F>, phi: &[Matrix<F>]) -> ChainMap<F> {
    let mats = (0..=a.shape.length())
        .map(|i| {
            let mut m = Matrix::zeros(a.shape.dim(i), b.shape.dim(i));
            for r in 0..a.shape.betti[i] {
                for c in 0..b.shape.betti[i] {
                    m.set(r, c, phi[i].get(r, c).clone());
                }
            }
            a.q[i].mul(&m).mul(&b.q_inv[i])
        })
        .collect();
    ChainMap::new(a.complex.clone(), b.complex.clone(), mats).expect("chain map")
}

/// A chain equivalence with explicit homotopies for both composites, then
/// perturbed on both sides.
pub fn chain_equivalence<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let mut g = generator::<F>(seed, length, max_dim);
    let betti = g.random_betti();
    let (sa, sb) = (g.shape(&betti), g.shape(&betti));
    let (a, b) = (g.based(sa), g.based(sb));
    let (phi, phi_inv): (Vec<_>, Vec<_>) = betti.iter().map(|&y| random_invertible::<F>(&mut g.rng, y)).unzip();
    let f0 = homology_only(&a, &b, &phi);
    let h0 = homology_only(&b, &a, &phi_inv);
    let (ta, tb) = (contraction(&a), contraction(&b));
    let (ida, idb) = (ChainMap::identity(&a.complex), ChainMap::identity(&b.complex));
    let ok = |x: &ChainMap<F>, y: &ChainMap<F>, t: &ChainHomotopy<F>, what: &str| -> Check {
        match check_homotopy(x, y, t) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("{what}: homotopy check fails")),
            Err(e) => Err(format!("{what}: {e}")),
        }
    };
    ok(&ida, &f0.then(&h0).unwrap(), &ta, "id - h0 f0")?;
    ok(&idb, &h0.then(&f0).unwrap(), &tb, "id - f0 h0")?;

    // f = f0 + dS + Sd and h = h0 + dS' + S'd
    let s = g.homotopy(&a.complex, &b.complex);
    let s2 = g.homotopy(&b.complex, &a.complex);
    let f = s.perturb(&f0).map_err(|e| e.to_string())?;
    let h = s2.perturb(&h0).map_err(|e| e.to_string())?;
    // f then h  -  f0 then h0  =  (f then (h - h0)) + ((f - f0) then h0)
    let diff = s2.precompose(&f).add(&s.postcompose(&h0));
    ok(&f.then(&h).unwrap(), &f0.then(&h0).unwrap(), &diff, "h f - h0 f0")?;
    let total = diff.add(&ChainHomotopy {
        mats: ta.mats.iter().map(Matrix::neg).collect(),
    });
    ok(&f.then(&h).unwrap(), &ida, &total, "h f - id")?;
    let diff2 = s.precompose(&h).add(&s2.postcompose(&f0));
    let total2 = diff2.add(&ChainHomotopy {
        mats: tb.mats.iter().map(Matrix::neg).collect(),
    });
    ok(&h.then(&f).unwrap(), &idb, &total2, "f h - id")?;

    expect_eq("tau(f) tau(h)", tau(&f)? * tau(&h)?, F::one())
}

/// `f` conjugated by a chain automorphism: invertible blocks on the
/// homology part and on each elementary piece of the standard form.
pub fn conjugacy<F: Field + Sample>(seed: u64, length: usize, max_dim: usize) -> Check {
    let mut g = generator::<F>(seed, length, max_dim);
    let c = g.random_complex();
    let phi = g.invertible_phi(&c.shape.betti);
    let f = g.map_with_induced(&c, &c, &phi);
    let s = &c.shape;
    let blocks: Vec<Matrix<F>> = s
        .pieces
        .iter()
        .map(|&k| random_invertible::<F>(&mut g.rng, k).0)
        .collect();
    let mats: Vec<Matrix<F>> = (0..=length)
        .map(|i| {
            let mut m = random_invertible::<F>(&mut g.rng, s.betti[i]).0;
            if i < length {
                m = m.block_diag(&blocks[i]);
            }
            if i > 0 {
                m = m.block_diag(&blocks[i - 1]);
            }
            c.q[i].mul(&m).mul(&c.q_inv[i])
        })
        .collect();
    let h = ChainMap::new(c.complex.clone(), c.complex.clone(), mats).map_err(|e| format!("automorphism: {e}"))?;
    let h_inv = h.inverse().map_err(|e| e.to_string())?;
    h_inv.validate().map_err(|e| e.to_string())?;
    if !h.is_quasi_isomorphism() {
        return Err("chain isomorphism is not a quasi-isomorphism".into());
    }
    let conj = h_inv.then(&f).unwrap().then(&h).unwrap();
    expect_eq("tau(h^-1 f h)", tau(&conj)?, tau(&f)?)
}

fn poly_det(m: &Matrix<Polynomial>) -> RationalFunction {
    m.map(|p| RationalFunction::from_poly(p.clone()))
        .determinant()
        .expect("square")
}

pub fn smith_validity(seed: u64) -> Check {
    let a = PolyGenerator::new(seed).matrix(5, 3);
    let s = ufd::smith_normal_form(&a);
    if s.u.mul(&a).mul(&s.v) != s.d {
        return Err(format!("U A V != D for {a:?}"));
    }
    if s.u.mul(&s.u_inv) != Matrix::identity(a.rows()) {
        return Err("u_inv is not the inverse of U".into());
    }
    for (name, m) in [("U", &s.u), ("V", &s.v)] {
        match poly_det(m).as_constant() {
            Some(c) if !c.is_zero() => {}
            _ => return Err(format!("det {name} is not a nonzero constant")),
        }
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d.get(i, j).is_zero() {
                return Err(format!("D has an off-diagonal entry at ({i}, {j})"));
            }
        }
    }
    let diagonal: Vec<Polynomial> = (0..a.rows().min(a.cols())).map(|k| s.d.get(k, k).clone()).collect();
    let factors = s.invariant_factors();
    if diagonal[factors.len()..].iter().any(|p| !p.is_zero()) {
        return Err("nonzero entry after a zero on the diagonal".into());
    }
    if factors.iter().any(|p| p.leading() != Some(&Rational::one())) {
        return Err("invariant factor is not monic".into());
    }
    for w in factors.windows(2) {
        if !w[0].divides(&w[1]) {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    // rank over Q(t) agrees with plain elimination
    let rank = a.map(|p| RationalFunction::from_poly(p.clone())).rank();
    if rank != factors.len() {
        return Err(format!("rank {rank} but {} invariant factors", factors.len()));
    }
    Ok(())
}

/// `prod_i x_i^((-1)^(i+1))` over polynomials.
fn alternating(orders: &[Polynomial]) -> RationalFunction {
    orders.iter().enumerate().fold(RationalFunction::one(), |acc, (i, p)| {
        acc * alt(RationalFunction::from_poly(p.clone()), i)
    })
}

/// Checks the order product against the torsion over `Q(t)` and against the
/// orders known from construction; returns the rational unit between them.
pub fn turaev_consistency(seed: u64, length: usize, max_dim: usize) -> Result<Rational, String> {
    let (c, orders) = PolyGenerator::new(seed).torsion_complex(length, max_dim);
    let value = ufd::turaev_torsion(&c).map_err(|e| e.to_string())?;
    expect_eq("order product", value.clone(), alternating(&orders))?;
    let direct = ufd::torsion_of_tensor(&c).map_err(|e| e.to_string())?;
    ufd::unit_ratio(&direct, &value).ok_or_else(|| format!("{direct} / {value} is not a nonzero rational"))
}

/// A map between two torsion complexes: its torsion over `Q(t)` against the
/// quotient of order products.
pub fn two_sided(seed: u64, length: usize, max_dim: usize) -> Result<Rational, String> {
    let mut g = PolyGenerator::new(seed);
    let (c, oc) = g.torsion_complex(length, max_dim);
    let (c1, oc1) = g.torsion_complex(length, max_dim);
    let f = g.null_homotopic(&c, &c1);
    let value = ufd::torsion_over_ufd(&f).map_err(|e| e.to_string())?;
    let orders = ufd::order_quotient(&f).map_err(|e| e.to_string())?;
    expect_eq("order quotient", orders.clone(), alternating(&oc) / alternating(&oc1))?;
    ufd::unit_ratio(&value, &orders).ok_or_else(|| format!("{value} / {orders} is not a nonzero rational"))
}
