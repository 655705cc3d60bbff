//! Values computed by hand or by independent formulas, compared with the
//! library.

use std::sync::Arc;

use forge_core::cherednik::RcaContext;
use forge_core::dunkl::DunklContext;
use forge_core::groups::{find_reflections, num_classes, Group, GroupSpec};
use forge_core::induction::{self, FinAlgebra, RepChoice};
use forge_core::jets::{w_basis, JetAutomorphism};
use forge_core::scalars::ring::kernel;
use forge_core::{CycNum, MPoly, Monomial, Ring, Scalar};

fn s(n: i64) -> Scalar {
    Scalar::from_i64(n)
}

#[test]
fn reflection_counts() {
    // Z/m on C: every nonidentity element is a reflection, each its own class
    for m in 2..=6u32 {
        let g = Group::cyclic(m);
        let r = find_reflections(&g);
        assert_eq!(r.len(), m as usize - 1);
        assert_eq!(num_classes(&r), m as usize - 1);
    }
    // S_n: the n(n-1)/2 transpositions, one class
    for n in 2..=4usize {
        let g = Group::symmetric(n);
        assert_eq!(g.order(), (1..=n).product::<usize>());
        let r = find_reflections(&g);
        assert_eq!(r.len(), n * (n - 1) / 2);
        assert_eq!(num_classes(&r), 1);
    }
    // {+-Id} on C^2 has no reflections
    let spec = GroupSpec { cyclotomic_order: 1, dim: 2, generators: vec![vec![vec!["-1".into(), "0".into()], vec!["0".into(), "-1".into()]]] };
    let g = spec.build(100).unwrap();
    assert_eq!(g.order(), 2);
    assert!(find_reflections(&g).is_empty());
}

#[test]
fn roots_pair_to_two() {
    for g in [Group::cyclic(3), Group::cyclic(4), Group::symmetric(3)] {
        for r in find_reflections(&g) {
            let pairing = r.alpha.iter().zip(&r.alpha_vee).fold(CycNum::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
            assert_eq!(pairing, CycNum::from_int(2));
            assert_eq!(r.lambda.mul(&r.lambda_vee), CycNum::one());
        }
    }
}

#[test]
fn rank_one_commutator() {
    // [u, y] = t - sum_s c(s) (u, alpha_s)(y, alpha_s^vee) s, and in rank one
    // (u, alpha_s)(y, alpha_s^vee) = 2
    for m in [2u32, 3, 4] {
        let ctx = RcaContext::new(Group::cyclic(m));
        let mut want = ctx.scalar(Scalar::t());
        for r in ctx.reflections() {
            want = want.sub(&ctx.group_element(r.element).scale(&Scalar::c(r.class + 1).scale_i64(2)));
        }
        assert_eq!(ctx.bracket(&ctx.u(0), &ctx.y(0)), want, "Z{m}");
    }
}

#[test]
fn dunkl_on_powers_of_x() {
    // D = d - (c/x)(1 - s) on C with s x = -x:
    // D x^n = (n - c (1 - (-1)^n)) x^{n-1}
    let ctx = DunklContext::new(RcaContext::new(Group::cyclic(2)));
    let d = ctx.dunkl_basis(0);
    for n in 1..=6u32 {
        let got = ctx.apply(&d, &ctx.coeff_monomial(&Monomial::var_pow(0, n)));
        let odd = if n % 2 == 1 { 2 } else { 0 };
        let k = s(n as i64).sub(&Scalar::c(1).scale_i64(odd));
        let want = ctx.coeff_poly(MPoly::term(Monomial::var_pow(0, n - 1), k));
        assert_eq!(got, want, "n = {n}");
    }
}

#[test]
fn dunkl_on_symmetric_group() {
    // D_1 x1^2 = 2 x1 - c (x1^2 - x2^2)/(x1 - x2) = (2 - c) x1 - c x2 on S2
    let ctx = DunklContext::new(RcaContext::new(Group::symmetric(2)));
    let got = ctx.apply(&ctx.dunkl_basis(0), &ctx.coeff_monomial(&Monomial::from_exps(&[2, 0])));
    let c = Scalar::c(1);
    let want = MPoly::term(Monomial::var(0), s(2).sub(&c)).add(&MPoly::term(Monomial::var(1), c.neg()));
    assert_eq!(got, ctx.coeff_poly(want));
}

fn choose(n: u32, k: u32) -> u64 {
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

#[test]
fn vector_field_dimensions() {
    for m in 1..=3usize {
        for k in 0..=3u32 {
            assert_eq!(w_basis(m, k).len() as u64, m as u64 * choose(m as u32 + k, m as u32), "W_{{{m},{k}}}");
        }
    }
}

#[test]
fn inverse_series_is_catalan() {
    // the inverse of x + x^2 is sum (-1)^n C_n x^{n+1}
    let x = MPoly::var(0);
    let f = JetAutomorphism::new(vec![x.add(&x.mul(&x))], 6).unwrap();
    let g = f.invert().unwrap();
    let catalan = [1i64, 1, 2, 5, 14, 42];
    for (n, c) in catalan.iter().enumerate() {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(g.components[0].coeff(&Monomial::var_pow(0, n as u32 + 1)), s(sign * c));
    }
}

/// Dimension of the center, as the kernel of `z -> [e_i, z]` over all i.
fn center_dim(a: &FinAlgebra) -> usize {
    let d = a.dim();
    let mut rows = Vec::new();
    for i in 0..d {
        let cols: Vec<Vec<CycNum>> = (0..d)
            .map(|j| {
                let (ei, ej) = (a.basis(i), a.basis(j));
                a.mul(&ei, &ej).iter().zip(a.mul(&ej, &ei)).map(|(x, y)| x.sub(&y)).collect()
            })
            .collect();
        rows.extend((0..d).map(|r| cols.iter().map(|c| c[r].clone()).collect::<Vec<_>>()));
    }
    kernel(&rows, d).len()
}

#[test]
fn puig_induction_of_scalars_is_a_matrix_algebra() {
    // Ind(C) = End(C[G/H]): dimension [G:H]^2 with one dimensional center
    for (gn, hn, index) in [("S3", "S2", 3usize), ("Z4", "Z2", 2), ("S3", "1", 6)] {
        let (g, h) = induction::standard_pair(gn, hn).unwrap();
        let c = FinAlgebra::scalars().with_trivial_interior(&h);
        let p = induction::puig_induce(&c, Arc::new(g), h, RepChoice::Smallest).unwrap();
        assert_eq!(p.algebra.dim(), index * index);
        assert_eq!(center_dim(&p.algebra), 1, "{gn}/{hn}");
    }
}

#[test]
fn turull_induction_of_scalars_is_commutative() {
    // Ind(C) = C^{G/H}
    let (g, h) = induction::standard_pair("S3", "S2").unwrap();
    let c = FinAlgebra::scalars().with_determinant_action(&g, &h);
    let t = induction::turull_induce(&c, Arc::new(g), h, RepChoice::Smallest).unwrap();
    assert_eq!(center_dim(&t.algebra), 3);
}

#[test]
fn subgroup_orders() {
    for (gn, hn, order) in [("S3", "S2", 2usize), ("S4", "S3", 6), ("Z6", "Z3", 3), ("Z4", "1", 1), ("S3", "S3", 6)] {
        let (_, h) = induction::standard_pair(gn, hn).unwrap();
        assert_eq!(h.len(), order, "{hn} in {gn}");
    }
}
