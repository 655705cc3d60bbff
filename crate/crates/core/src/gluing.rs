//! Model of the gluing conditions on one slice `C^m × C` with a cyclic group
//! acting on the transversal coordinate `y`.
//!
//! An element is given as a word in slice generators. Side 0 evaluates it as
//! a Dunkl-side operator on the punctured slice and expands in `y`; side 1
//! evaluates it in `D_m ⊗ H_{1,c}(C)` and applies `id ⊗ Theta_c`. Both end up
//! as Laurent data keyed by `(x^a, y^b, h, dx^d, dy^e)` in the normal order
//! `coefficient * h * derivatives`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cherednik::{add_to, RcaContext};
use crate::dunkl::{DunklContext, LocalizedOp};
use crate::error::{ForgeError, Result};
use crate::groups::{Group, Matrix};
use crate::hc::{theta_tensor, TensorElement, WeylTensor};
use crate::jets::JetAutomorphism;
use crate::scalars::ring::rank;
use crate::scalars::{CycNum, MPoly, Monomial, Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceGen {
    /// Stratum coordinate `x_i`.
    X(usize),
    /// `d/dx_i`.
    DX(usize),
    /// Transversal coordinate.
    Y,
    /// Dunkl operator in the transversal direction.
    DunklY,
    /// The generator of H.
    H,
    /// Multiplication by `y^{-k}`; has no formal-side representative.
    PoleY(u32),
}

impl fmt::Display for SliceGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceGen::X(i) => write!(f, "x{}", i + 1),
            SliceGen::DX(i) => write!(f, "dx{}", i + 1),
            SliceGen::Y => write!(f, "y"),
            SliceGen::DunklY => write!(f, "Dy"),
            SliceGen::H => write!(f, "h"),
            SliceGen::PoleY(k) => write!(f, "y^-{k}"),
        }
    }
}

/// Linear combination of words.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SliceExpr {
    pub terms: Vec<(Scalar, Vec<SliceGen>)>,
}

impl SliceExpr {
    pub fn word(w: Vec<SliceGen>) -> Self {
        SliceExpr { terms: vec![(Scalar::one(), w)] }
    }

    pub fn generator(g: SliceGen) -> Self {
        Self::word(vec![g])
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn add(&self, o: &Self) -> Self {
        SliceExpr { terms: self.terms.iter().chain(&o.terms).cloned().collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SliceExpr { terms: self.terms.iter().map(|(c, w)| (c.mul(s), w.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = Vec::new();
        for (c1, w1) in &self.terms {
            for (c2, w2) in &o.terms {
                terms.push((c1.mul(c2), w1.iter().chain(w2).copied().collect()));
            }
        }
        SliceExpr { terms }
    }

    /// Both sides live in `H_{1,c}`: set `t = 1` in the coefficients.
    pub fn at_t_one(&self) -> Self {
        SliceExpr {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.substitute_param(0, &Scalar::one()).expect("polynomial in t"), w.clone()))
                .collect(),
        }
    }

    /// Pole bound: the largest number of Dunkl factors in a word.
    pub fn pole_bound(&self) -> u32 {
        self.terms.iter().map(|(_, w)| w.iter().filter(|g| **g == SliceGen::DunklY).count() as u32).max().unwrap_or(0)
    }

    /// Geometric filtration degree: derivatives and Dunkl operators count 1.
    pub fn filtration_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, w)| w.iter().filter(|g| matches!(g, SliceGen::DX(_) | SliceGen::DunklY)).count() as u32)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for SliceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, w)| {
                let word = if w.is_empty() { "1".to_string() } else { w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*") };
                if c.is_one() {
                    word
                } else {
                    format!("({c})*{word}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Key `(x^a, y^b, h, dx^d, dy^e)`.
pub type MixedKey = (Monomial, i32, usize, Monomial, u32);

/// Laurent data of an operator on the slice.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MixedSeriesOp {
    pub terms: BTreeMap<MixedKey, Scalar>,
}

impl MixedSeriesOp {
    pub fn min_y_exponent(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.1).min()
    }

    /// Differential order in all variables.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|k| k.3.degree() + k.4).max().unwrap_or(0)
    }

    /// Keep `|a| <= kx` and `b <= ky`.
    pub fn window(&self, kx: u32, ky: i32) -> Self {
        MixedSeriesOp { terms: self.terms.iter().filter(|(k, _)| k.0.degree() <= kx && k.1 <= ky).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            add_to(&mut terms, k.clone(), c.neg());
        }
        MixedSeriesOp { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn format_key(k: &MixedKey, c: &Scalar) -> String {
    let (a, b, h, d, e) = k;
    format!("({c}) x^{:?} y^{b} h{h} dx^{:?} dy^{e}", a.exps(a.len()), d.exps(d.len()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    pub element: String,
    /// Pole order along y bounded by the number of Dunkl factors.
    pub condition_i: bool,
    /// Side 0 equals side 1 on the truncation window.
    pub condition_ii: bool,
    pub pole_bound: u32,
    pub offending_terms: Vec<String>,
    pub mismatches: Vec<String>,
}

impl GluingReport {
    pub fn passed(&self) -> bool {
        self.condition_i && self.condition_ii
    }
}

/// `C^m × C` with `H = Z/order` acting on `y` by a primitive root of unity.
pub struct SliceModel {
    pub m: usize,
    pub order: u32,
    full: Arc<DunklContext>,
    fiber: Arc<RcaContext>,
    fiber_dunkl: Arc<DunklContext>,
    /// Element of the full group -> element of the fiber group.
    to_fiber: Vec<usize>,
    h_full: usize,
    h_fiber: usize,
}

impl SliceModel {
    pub fn new(m: usize, order: u32) -> Result<Self> {
        if order < 2 {
            return Err(ForgeError::InvalidGroup("H must be nontrivial".into()));
        }
        let z = CycNum::root_of_unity(order, 1);
        let mut diag = vec![CycNum::one(); m];
        diag.push(z.clone());
        let full_group = Group::diagonal(&diag, order)?;
        let fiber_group = Group::diagonal(std::slice::from_ref(&z), order)?;
        let to_fiber = full_group
            .elements()
            .iter()
            .map(|g| fiber_group.index_of(&Matrix::diag(&[g.get(m, m).clone()])).expect("same cyclic group"))
            .collect();
        let h_full = full_group.index_of(&Matrix::diag(&diag)).expect("generator");
        let h_fiber = fiber_group.index_of(&Matrix::diag(&[z])).expect("generator");
        let full = DunklContext::new(RcaContext::new(full_group));
        let fiber = RcaContext::new(fiber_group);
        let fiber_dunkl = DunklContext::new(fiber.clone());
        let model = SliceModel { m, order, full, fiber, fiber_dunkl, to_fiber, h_full, h_fiber };
        let classes_match = model.full.rca().reflections().iter().all(|r| {
            let f = model.to_fiber[r.element];
            model.fiber.reflection_index(f).is_some_and(|k| model.fiber.reflections()[k].class == r.class)
        });
        if !classes_match {
            return Err(ForgeError::InvalidGroup("reflection classes of slice and fiber disagree".into()));
        }
        Ok(model)
    }

    pub fn generators(&self) -> Vec<SliceGen> {
        let mut g: Vec<SliceGen> = (0..self.m).map(SliceGen::X).collect();
        g.extend((0..self.m).map(SliceGen::DX));
        g.extend([SliceGen::Y, SliceGen::DunklY, SliceGen::H]);
        g
    }

    fn side0_gen(&self, g: SliceGen) -> LocalizedOp {
        let d = &self.full;
        match g {
            SliceGen::X(i) => d.multiplication(d.coeff_monomial(&Monomial::var(i))),
            SliceGen::DX(i) => d.dunkl_basis(i),
            SliceGen::Y => d.multiplication(d.coeff_monomial(&Monomial::var(self.m))),
            SliceGen::DunklY => d.dunkl_basis(self.m),
            SliceGen::H => d.group_op(self.h_full),
            SliceGen::PoleY(k) => {
                // alpha_s = kappa * y for the first reflection
                let kappa = self.full.rca().reflections()[0].alpha[self.m].clone();
                let c = d.coeff_over_root(MPoly::constant(Scalar::from_cyc(kappa.pow(k))), 0, k);
                d.multiplication(c)
            }
        }
    }

    /// Dunkl-side operator on the punctured slice.
    pub fn side0_operator(&self, e: &SliceExpr) -> LocalizedOp {
        let d = &self.full;
        let mut out = LocalizedOp::default();
        for (c, w) in &e.at_t_one().terms {
            let mut acc = d.op_scale(&d.identity(), c);
            for g in w {
                acc = d.op_mul(&acc, &self.side0_gen(*g));
            }
            out = d.op_add(&out, &acc);
        }
        out
    }

    /// Laurent expansion in y of the Dunkl-side operator.
    pub fn side0_laurent(&self, e: &SliceExpr) -> MixedSeriesOp {
        let op = self.side0_operator(e);
        let mut terms = BTreeMap::new();
        for ((g, beta), coeff) in op.terms() {
            let k = coeff.denominator().first().copied().unwrap_or(0) as i32;
            let (dx, dy) = split(beta, self.m);
            for (mon, c) in coeff.numerator().terms() {
                let (xa, yb) = split(mon, self.m);
                add_to(&mut terms, (xa, yb as i32 - k, self.to_fiber[*g], dx.clone(), dy), c.clone());
            }
        }
        MixedSeriesOp { terms }
    }

    fn side1_gen(&self, g: SliceGen, kx: u32) -> Result<TensorElement> {
        let f = &*self.fiber;
        let mut t = WeylTensor::zero(kx);
        match g {
            SliceGen::X(i) => t.push(f, Monomial::var(i), Monomial::one(), f.scalar(Scalar::one())),
            SliceGen::DX(i) => t.push(f, Monomial::one(), Monomial::var(i), f.scalar(Scalar::one())),
            SliceGen::Y => t.push(f, Monomial::one(), Monomial::one(), f.y(0)),
            SliceGen::DunklY => t.push(f, Monomial::one(), Monomial::one(), f.u(0)),
            SliceGen::H => t.push(f, Monomial::one(), Monomial::one(), f.group_element(self.h_fiber)),
            SliceGen::PoleY(_) => return Err(ForgeError::Invalid("no formal-side representative".into())),
        }
        Ok(t)
    }

    /// Formal-side element in `D_m ⊗ H_{1,c}(C)`, x-degree truncated at `kx`.
    pub fn side1_element(&self, e: &SliceExpr, kx: u32) -> Result<TensorElement> {
        let f = &*self.fiber;
        let mut out = WeylTensor::zero(kx);
        for (c, w) in &e.terms {
            let mut acc = WeylTensor::zero(kx);
            acc.push(f, Monomial::one(), Monomial::one(), f.scalar(c.clone()));
            for g in w {
                // left factors never lose x-degree, so truncating the
                // running product is exact
                acc = acc.mul(f, &self.side1_gen(*g, kx)?);
            }
            out = out.add(f, &acc);
        }
        Ok(out)
    }

    /// `(id ⊗ Theta_c)` of the formal-side element, as Laurent data.
    pub fn side1_formal(&self, e: &SliceExpr, kx: u32) -> Result<MixedSeriesOp> {
        let img = theta_tensor(&self.fiber_dunkl, &self.side1_element(e, kx)?);
        let mut terms = BTreeMap::new();
        for ((xa, dx), op) in img.terms() {
            for ((g, beta), coeff) in op.terms() {
                let k = coeff.denominator().first().copied().unwrap_or(0) as i32;
                for (mon, c) in coeff.numerator().terms() {
                    add_to(&mut terms, (xa.clone(), mon.get(0) as i32 - k, *g, dx.clone(), beta.get(0)), c.clone());
                }
            }
        }
        Ok(MixedSeriesOp { terms })
    }

    pub fn check_gluing(&self, e: &SliceExpr, kx: u32, ky: u32) -> GluingReport {
        let side0 = self.side0_laurent(e);
        let bound = e.pole_bound();
        let offending: Vec<String> =
            side0.terms.iter().filter(|(k, _)| k.1 < -(bound as i32)).map(|(k, c)| format_key(k, c)).collect();
        let (cond_ii, mismatches) = match self.side1_formal(e, kx) {
            Err(err) => (false, vec![err.to_string()]),
            Ok(side1) => {
                let d = side0.window(kx, ky as i32).sub(&side1.window(kx, ky as i32));
                (d.is_zero(), d.terms.iter().map(|(k, c)| format_key(k, c)).collect())
            }
        };
        GluingReport {
            element: e.to_string(),
            condition_i: offending.is_empty(),
            condition_ii: cond_ii,
            pole_bound: bound,
            offending_terms: offending,
            mismatches,
        }
    }

    /// Rewrite an element in the chart `x -> kappa(x)` of the stratum:
    /// `x_i -> kappa_i(x)` and `d/dx_i -> sum_k (J^{-1})_{ki} d/dx_k`, the
    /// inverse Jacobian expanded to `order`.
    pub fn conjugate_expr(&self, e: &SliceExpr, kappa: &JetAutomorphism, order: u32) -> Result<SliceExpr> {
        if kappa.dim() != self.m {
            return Err(ForgeError::Shape("automorphism of the wrong dimension".into()));
        }
        let m = self.m;
        let poly_expr = |p: &MPoly<Scalar>| SliceExpr {
            terms: p
                .terms()
                .map(|(mon, c)| {
                    let mut w = Vec::new();
                    for i in 0..m {
                        w.extend(std::iter::repeat_n(SliceGen::X(i), mon.get(i) as usize));
                    }
                    (c.clone(), w)
                })
                .collect(),
        };
        let chart = kappa.as_chart();
        let jac: Vec<Vec<crate::jets::JetPoly>> =
            (0..m).map(|i| (0..m).map(|k| chart[i].derivative(k).with_order(order)).collect()).collect();
        let jinv = crate::scalars::ring::invert_matrix(&jac).ok_or_else(|| ForgeError::Singular("chart Jacobian".into()))?;
        let mut out = SliceExpr::default();
        for (c, w) in &e.terms {
            let mut acc = SliceExpr { terms: vec![(c.clone(), Vec::new())] };
            for g in w {
                let img = match g {
                    SliceGen::X(i) => poly_expr(&kappa.components[*i]),
                    SliceGen::DX(i) => {
                        let mut s = SliceExpr::default();
                        for (k, row) in jinv.iter().enumerate() {
                            s = s.add(&poly_expr(row[*i].poly()).mul(&SliceExpr::generator(SliceGen::DX(k))));
                        }
                        s
                    }
                    other => SliceExpr::generator(*other),
                };
                acc = acc.mul(&img);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// PBW-type words `x^a dx^d y^b h^j Dy^k` with total degree at most `deg`.
    pub fn pbw_basis(&self, deg: u32) -> Vec<SliceExpr> {
        let m = self.m;
        let mut out = Vec::new();
        for mon in Monomial::all_up_to(2 * m + 2, deg) {
            for j in 0..self.order {
                let mut w = Vec::new();
                for i in 0..m {
                    w.extend(std::iter::repeat_n(SliceGen::X(i), mon.get(i) as usize));
                }
                for i in 0..m {
                    w.extend(std::iter::repeat_n(SliceGen::DX(i), mon.get(m + i) as usize));
                }
                w.extend(std::iter::repeat_n(SliceGen::Y, mon.get(2 * m) as usize));
                w.extend(std::iter::repeat_n(SliceGen::H, j as usize));
                w.extend(std::iter::repeat_n(SliceGen::DunklY, mon.get(2 * m + 1) as usize));
                out.push(SliceExpr::word(w));
            }
        }
        out
    }

    /// Rank of the side-0 images of the bounded basis; equal to the basis
    /// size when side 0 determines the element.
    pub fn side0_rank(&self, basis: &[SliceExpr]) -> usize {
        let images: Vec<MixedSeriesOp> = basis.iter().map(|e| self.side0_laurent(e)).collect();
        let mut keys: Vec<&MixedKey> = images.iter().flat_map(|i| i.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        let rows: Vec<Vec<Scalar>> = images
            .iter()
            .map(|img| keys.iter().map(|k| img.terms.get(*k).cloned().unwrap_or_else(Scalar::zero)).collect())
            .collect();
        rank(&rows)
    }
}

fn split(m: &Monomial, k: usize) -> (Monomial, u32) {
    let e = m.exps(k + 1);
    (Monomial::from_exps(&e[..k]), e[k])
}

pub mod sample {
    //! Random slice elements.

    use rand::Rng as _;

    use super::*;
    use crate::sampling::{random_scalar, TestRng};

    /// Sum of up to three words of length at most `max_len` over the
    /// generators.
    pub fn random_slice_expr(rng: &mut TestRng, model: &SliceModel, max_len: usize) -> SliceExpr {
        let gens = model.generators();
        let n = rng.gen_range(1..=3);
        SliceExpr {
            terms: (0..n)
                .map(|_| {
                    let len = rng.gen_range(0..=max_len);
                    let w = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
                    (random_scalar(rng, 1), w)
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::sample::*;
    use super::*;
    use crate::sampling::rng;

    fn model() -> SliceModel {
        SliceModel::new(1, 2).unwrap()
    }

    #[test]
    fn dunkl_in_y_has_simple_pole() {
        let sm = model();
        let e = SliceExpr::generator(SliceGen::DunklY);
        let l = sm.side0_laurent(&e);
        assert_eq!(l.min_y_exponent(), Some(-1));
        let c1 = Scalar::c(1);
        let one = Monomial::one();
        assert_eq!(l.terms.get(&(one.clone(), -1, 0, one.clone(), 0)), Some(&c1.neg()));
        assert_eq!(l.terms.get(&(one.clone(), -1, 1, one.clone(), 0)), Some(&c1));
        assert_eq!(l.terms.get(&(one.clone(), 0, 0, one.clone(), 1)), Some(&Scalar::one()));
        assert!(sm.check_gluing(&e, 4, 4).passed());
    }

    #[test]
    fn trivial_generators() {
        let sm = model();
        let x = sm.side0_laurent(&SliceExpr::generator(SliceGen::X(0)));
        assert_eq!(x.terms.len(), 1);
        assert_eq!(x.min_y_exponent(), Some(0));
        let dx = sm.side0_laurent(&SliceExpr::generator(SliceGen::DX(0)));
        assert_eq!(dx.terms.keys().next().unwrap().3, Monomial::var(0));
        for g in sm.generators() {
            assert!(sm.check_gluing(&SliceExpr::generator(g), 4, 4).passed(), "{g}");
        }
        assert!(sm.check_gluing(&SliceExpr::one(), 4, 4).passed());
    }

    #[test]
    fn injected_double_pole_is_rejected() {
        let sm = model();
        let e = SliceExpr::generator(SliceGen::PoleY(2));
        let r = sm.check_gluing(&e, 4, 4);
        assert!(!r.condition_i);
        assert!(!r.condition_ii);
        assert_eq!(r.offending_terms.len(), 1);
        // a pole paid for by Dunkl factors is fine for condition i)
        let ok = SliceExpr::word(vec![SliceGen::DunklY, SliceGen::DunklY]);
        assert!(sm.check_gluing(&ok, 4, 4).condition_i);
    }

    #[test]
    fn random_elements_glue() {
        let sm = model();
        let mut r = rng(5);
        for _ in 0..10 {
            let e = random_slice_expr(&mut r, &sm, 2);
            let rep = sm.check_gluing(&e, 4, 4);
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn chart_change_preserves_gluing() {
        let sm = model();
        let x = MPoly::var(0);
        let kappa = JetAutomorphism::new(vec![x.add(&x.mul(&x))], 6).unwrap();
        let mut r = rng(9);
        for _ in 0..5 {
            let e = random_slice_expr(&mut r, &sm, 2);
            let conj = sm.conjugate_expr(&e, &kappa, 6).unwrap();
            assert!(sm.check_gluing(&conj, 4, 4).passed());
        }
    }

    #[test]
    fn order_three_slice() {
        let sm = SliceModel::new(1, 3).unwrap();
        for g in sm.generators() {
            assert!(sm.check_gluing(&SliceExpr::generator(g), 3, 3).passed(), "{g}");
        }
    }

    #[test]
    fn side0_is_injective_on_small_basis() {
        let sm = model();
        let basis = sm.pbw_basis(2);
        assert_eq!(sm.side0_rank(&basis), basis.len());
    }

    #[test]
    fn filtration_is_preserved() {
        let sm = model();
        for e in sm.pbw_basis(2) {
            assert_eq!(sm.side0_laurent(&e).order(), e.filtration_degree(), "{e}");
        }
    }
}
