//! Property tests. Structured inputs are drawn from seeded generators so a
//! shrunk failure is reproducible from its seed.

use std::sync::Arc;

use forge_core::cherednik::RcaContext;
use forge_core::dunkl::{homomorphism_residual, DunklContext};
use forge_core::groups::Group;
use forge_core::induction::{self, FinAlgebra, RepChoice};
use forge_core::jets::{exact_chart, taylor_product_residual, JetAutomorphism};
use forge_core::sampling::{random_chart, random_cherednik_total, random_operator, random_poly, rng};
use forge_core::{CycNum, MPoly, Ring, Q};
use proptest::prelude::*;

fn cyc(order: u32, coeffs: &[i64]) -> CycNum {
    CycNum::from_coeffs(order, coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(order in 1u32..=12, a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (cyc(order, &a), cyc(order, &b), cyc(order, &c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.sub(&a), CycNum::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inverse().unwrap()), CycNum::one());
        }
    }

    #[test]
    fn roots_of_unity_have_the_right_order(order in 1u32..=12, k in 0i64..24) {
        let z = CycNum::root_of_unity(order, k);
        prop_assert_eq!(z.pow(order), CycNum::one());
        prop_assert_eq!(z.mul(&CycNum::root_of_unity(order, -k)), CycNum::one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pbw_product_is_associative(seed in any::<u64>(), which in 0usize..4) {
        let g = [Group::cyclic(2), Group::cyclic(3), Group::symmetric(2), Group::symmetric(3)][which].clone();
        let ctx = RcaContext::new(g);
        let mut r = rng(seed);
        let [a, b, c] = [0, 1, 2].map(|_| random_cherednik_total(&mut r, &ctx, 3, 3));
        prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
    }

    #[test]
    fn dunkl_embedding_is_multiplicative(seed in any::<u64>(), which in 0usize..3) {
        let g = [Group::cyclic(2), Group::cyclic(3), Group::symmetric(2)][which].clone();
        let d = DunklContext::new(RcaContext::new(g));
        let mut r = rng(seed);
        let a = random_cherednik_total(&mut r, d.rca(), 2, 2);
        let b = random_cherednik_total(&mut r, d.rca(), 2, 2);
        prop_assert_eq!(homomorphism_residual(&d, &a, &b), None);
    }

    #[test]
    fn jet_inverse_composes_to_identity(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = rng(seed);
        let comps: Vec<MPoly<_>> = random_chart(&mut r, n)
            .into_iter()
            .map(|p| p.sub(&MPoly::constant(p.constant_term())))
            .collect();
        let f = JetAutomorphism::new(comps, 4).unwrap();
        let id = JetAutomorphism::identity(n, 4);
        prop_assert_eq!(f.compose(&f.invert().unwrap()).unwrap().components, id.components.clone());
        prop_assert_eq!(f.invert().unwrap().compose(&f).unwrap().components, id.components);
    }

    #[test]
    fn taylor_expansion_is_multiplicative(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = rng(seed);
        let d1 = random_operator(&mut r, n, 2, 2, 3);
        let d2 = random_operator(&mut r, n, 2, 2, 3);
        let chart = exact_chart(&random_chart(&mut r, n));
        prop_assert!(taylor_product_residual(&d1, &d2, &chart, 2).unwrap().is_zero());
    }

    #[test]
    fn polynomial_ring_is_commutative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q) = (random_poly(&mut r, 3, 3, 4), random_poly(&mut r, 3, 3, 4));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
    }

    #[test]
    fn induced_products_are_associative(seed in any::<u64>(), pair in 0usize..2) {
        let (gn, hn) = [("S3", "S2"), ("Z4", "Z2")][pair];
        let (g, h) = induction::standard_pair(gn, hn).unwrap();
        let g = Arc::new(g);
        let a = FinAlgebra::truncated_polynomials(3).with_determinant_action(&g, &h);
        let ah = induction::smash_product(&a, &g, &h).unwrap();
        let p = induction::puig_induce(&ah, g.clone(), h.clone(), RepChoice::Smallest).unwrap();
        let t = induction::turull_induce(&a, g, h, RepChoice::Smallest).unwrap();
        let mut r = rng(seed);
        for alg in [&p.algebra, &t.algebra] {
            let [x, y, z] = [0, 1, 2].map(|_| alg.random_element(&mut r, 4));
            prop_assert!(alg.associativity_residual(&x, &y, &z).iter().all(CycNum::is_zero));
            prop_assert_eq!(alg.mul(&alg.unit, &x), x.clone());
            prop_assert_eq!(alg.mul(&x, &alg.unit), x);
        }
    }
}
