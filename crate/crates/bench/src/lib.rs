//! Shared fixtures for the criterion benches.

use std::sync::Arc;

use forge_core::cherednik::{CherednikElement, RcaContext};
use forge_core::groups::Group;
use forge_core::jets::JetDiffOp;
use forge_core::sampling::{random_chart, random_cherednik_total, random_operator, rng};
use forge_core::{MPoly, Scalar};

/// Seeded pairs of degree `deg` elements for the given group.
pub fn cherednik_pairs(group: Group, deg: u32, n: usize) -> (Arc<RcaContext>, Vec<(CherednikElement, CherednikElement)>) {
    let ctx = RcaContext::new(group);
    let mut r = rng(0);
    let pairs = (0..n).map(|_| (random_cherednik_total(&mut r, &ctx, deg, 3), random_cherednik_total(&mut r, &ctx, deg, 3))).collect();
    (ctx, pairs)
}

/// A second order operator on `C^n` with cubic coefficients and a chart.
pub fn operator_and_chart(n: usize) -> (JetDiffOp<Scalar>, Vec<MPoly<Scalar>>) {
    let mut r = rng(1);
    (random_operator(&mut r, n, 2, 3, 4), random_chart(&mut r, n))
}
