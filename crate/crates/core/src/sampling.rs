//! Seeded random inputs for property checks.

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cherednik::{CherednikElement, PbwKey, RcaContext};
use crate::jets::JetDiffOp;
use crate::scalars::{MPoly, Monomial, Ring, Scalar};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero integer in `[-bound, bound]`.
pub fn small_int(rng: &mut TestRng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// Mostly small integers, occasionally linear in one deformation parameter.
pub fn random_scalar(rng: &mut TestRng, classes: usize) -> Scalar {
    let base = Scalar::from_i64(small_int(rng, 3));
    if rng.gen_bool(0.2) {
        let p = rng.gen_range(0..=classes);
        let v = if p == 0 { Scalar::t() } else { Scalar::c(p) };
        base.add(&v)
    } else {
        base
    }
}

/// Random exponent vector in `n` variables of total degree at most `max_deg`.
pub fn random_monomial(rng: &mut TestRng, n: usize, max_deg: u32) -> Monomial {
    let d = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; n];
    if n > 0 {
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
    }
    Monomial::from_exps(&e)
}

/// Random element with up to `terms` PBW terms of y-degree and u-degree at
/// most `max_y` and `max_u`.
pub fn random_cherednik(
    rng: &mut TestRng,
    ctx: &RcaContext,
    max_y: u32,
    max_u: u32,
    terms: usize,
) -> CherednikElement {
    let l = ctx.dim();
    let n = rng.gen_range(1..=terms.max(1));
    CherednikElement::from_terms((0..n).map(|_| {
        let key = PbwKey::new(
            random_monomial(rng, l, max_y),
            rng.gen_range(0..ctx.group().order()),
            random_monomial(rng, l, max_u),
        );
        (key, random_scalar(rng, ctx.num_classes()))
    }))
}

/// Random element whose PBW terms have `deg y + deg u <= max_deg`.
pub fn random_cherednik_total(rng: &mut TestRng, ctx: &RcaContext, max_deg: u32, terms: usize) -> CherednikElement {
    let l = ctx.dim();
    let n = rng.gen_range(1..=terms.max(1));
    CherednikElement::from_terms((0..n).map(|_| {
        let y = random_monomial(rng, l, max_deg);
        let g = rng.gen_range(0..ctx.group().order());
        let u = random_monomial(rng, l, max_deg - y.degree());
        (PbwKey::new(y, g, u), random_scalar(rng, ctx.num_classes()))
    }))
}

/// Random polynomial in `n` variables of degree at most `max_deg`.
pub fn random_poly(rng: &mut TestRng, n: usize, max_deg: u32, terms: usize) -> MPoly<Scalar> {
    MPoly::from_terms((0..terms).map(|_| (random_monomial(rng, n, max_deg), Scalar::from_i64(small_int(rng, 3)))))
}

/// Random differential operator with polynomial coefficients.
pub fn random_operator(rng: &mut TestRng, n: usize, max_d: u32, max_deg: u32, terms: usize) -> JetDiffOp<Scalar> {
    let k = rng.gen_range(1..=terms.max(1));
    JetDiffOp::from_terms(
        n,
        None,
        (0..k).map(|_| {
            let key = (random_monomial(rng, n, max_deg), random_monomial(rng, n, max_d));
            (key, Scalar::from_i64(small_int(rng, 3)))
        }),
    )
}

/// Polynomial chart `x -> p + L x + q(x)` with `L` unitriangular, so the
/// Jacobian at the origin is invertible.
pub fn random_chart(rng: &mut TestRng, n: usize) -> Vec<MPoly<Scalar>> {
    (0..n)
        .map(|i| {
            let mut p = MPoly::var(i).add(&MPoly::constant(Scalar::from_i64(rng.gen_range(-2..=2))));
            for j in i + 1..n {
                p = p.add(&MPoly::var(j).scale(&Scalar::from_i64(rng.gen_range(-2..=2))));
            }
            for _ in 0..2 {
                let m = Monomial::all_of_degree(n, 2);
                let q = m[rng.gen_range(0..m.len())].clone();
                p = p.add(&MPoly::term(q, Scalar::from_i64(rng.gen_range(-2..=2))));
            }
            p
        })
        .collect()
}
