//! Jets of differential operators, their Taylor expansion in charts and the
//! flat connection on the bundle of jets.

use std::collections::BTreeMap;
use std::fmt;

use super::series::{FormalVectorFieldJet, Infinitesimal, JetAutomorphism, JetPoly, ScalarAlgebra};
use crate::cherednik::add_to;
use crate::error::{ForgeError, Result};
use crate::scalars::ring::{cofactors, determinant, invert_matrix};
use crate::scalars::{MPoly, Monomial, Ring, Scalar};

/// `sum f_{beta, alpha} x^beta d^alpha`, keyed by `(beta, alpha)`, with
/// coefficients known up to x-degree `order` (`None`: exact).
#[derive(Clone, PartialEq)]
pub struct JetDiffOp<C: Ring = Scalar> {
    terms: BTreeMap<(Monomial, Monomial), C>,
    vars: usize,
    order: Option<u32>,
}

fn cap_min(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

impl<C: Ring> JetDiffOp<C> {
    pub fn zero(vars: usize, order: Option<u32>) -> Self {
        JetDiffOp { terms: BTreeMap::new(), vars, order }
    }

    pub fn from_terms(vars: usize, order: Option<u32>, it: impl IntoIterator<Item = ((Monomial, Monomial), C)>) -> Self {
        let mut op = Self::zero(vars, order);
        for (k, c) in it {
            op.push(k.0, k.1, c);
        }
        op
    }

    fn push(&mut self, x: Monomial, d: Monomial, c: C) {
        if self.order.is_some_and(|k| x.degree() > k) {
            return;
        }
        add_to(&mut self.terms, (x, d), c);
    }

    /// Multiplication by `p`.
    pub fn multiplication(vars: usize, p: &MPoly<C>, order: Option<u32>) -> Self {
        Self::from_terms(vars, order, p.terms().map(|(m, c)| ((m.clone(), Monomial::one()), c.clone())))
    }

    pub fn partial(vars: usize, i: usize) -> Self {
        Self::from_terms(vars, None, [((Monomial::one(), Monomial::var(i)), C::one())])
    }

    /// Vector field `sum v_j d_j` as a first-order operator.
    pub fn from_vector_field(v: &FormalVectorFieldJet<C>) -> Self {
        let mut op = Self::zero(v.dim(), Some(v.order));
        for (j, p) in v.components.iter().enumerate() {
            for (m, c) in p.terms() {
                op.push(m.clone(), Monomial::var(j), c.clone());
            }
        }
        op
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &C)> {
        self.terms.iter()
    }

    /// `f_{beta, alpha}`: coefficient of `x^beta d^alpha`.
    pub fn coeff(&self, beta: &Monomial, alpha: &Monomial) -> C {
        self.terms.get(&(beta.clone(), alpha.clone())).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn diff_order(&self) -> u32 {
        self.terms.keys().map(|(_, d)| d.degree()).max().unwrap_or(0)
    }

    pub fn truncate(&self, k: u32) -> Self {
        let order = Some(self.order.map_or(k, |o| o.min(k)));
        Self::from_terms(self.vars, order, self.terms.iter().map(|(k, c)| (k.clone(), c.clone())))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.vars.max(o.vars), cap_min(self.order, o.order));
        for (k, c) in self.terms.iter().chain(o.terms.iter()) {
            out.push(k.0.clone(), k.1.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(self.vars, self.order, self.terms.iter().map(|(k, c)| (k.clone(), c.mul(s))))
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Composition `self o o`, using
    /// `d^b x^a' = sum_g binom(b, g) a'!/(a'-g)! x^{a'-g} d^{b-g}`.
    /// The caller keeps enough order in reserve: the right factor loses
    /// `diff_order(self)` orders of accuracy.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.vars.max(o.vars), cap_min(self.order, o.order));
        for ((xa, da), ca) in &self.terms {
            let gammas = da.sub_monomials();
            for ((xb, db), cb) in &o.terms {
                let c = ca.mul(cb);
                for g in &gammas {
                    if !g.le(xb) {
                        continue;
                    }
                    let n = da.binom(g) * xb.falling(g);
                    let x = xa.mul(&xb.div(g).unwrap());
                    let d = da.div(g).unwrap().mul(db);
                    out.push(x, d, c.mul(&C::from_i64(n as i64)));
                }
            }
        }
        out
    }

    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Apply to a polynomial.
    pub fn apply(&self, p: &MPoly<C>) -> MPoly<C> {
        let mut out = MPoly::zero();
        for ((x, d), c) in &self.terms {
            let mut q = p.clone();
            for i in 0..d.len() {
                for _ in 0..d.get(i) {
                    q = q.derivative(i);
                }
            }
            out = out.add(&q.mul_term(x, c));
        }
        match self.order {
            Some(k) => out.truncate(k),
            None => out,
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> JetDiffOp<D> {
        JetDiffOp::from_terms(self.vars, self.order, self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for JetDiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((x, d), c) in self.terms.iter().rev() {
            let mut word = Vec::new();
            for i in 0..x.len() {
                match x.get(i) {
                    0 => {}
                    1 => word.push(format!("x{}", i + 1)),
                    e => word.push(format!("x{}^{e}", i + 1)),
                }
            }
            for i in 0..d.len() {
                match d.get(i) {
                    0 => {}
                    1 => word.push(format!("d{}", i + 1)),
                    e => word.push(format!("d{}^{e}", i + 1)),
                }
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            if word.is_empty() {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{}", word.join("*"))?;
            } else {
                write!(f, "({cs})*{}", word.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for JetDiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Chart jet: coordinate functions of the chart `x -> phi(x)` around the
/// base point `phi(0)`.
pub type ChartJet<C = Scalar> = Vec<JetPoly<C>>;

pub fn exact_chart(components: &[MPoly<Scalar>]) -> ChartJet {
    components.iter().map(|p| JetPoly::exact(p.clone())).collect()
}

fn jacobian<C: Ring>(chart: &[JetPoly<C>], order: u32) -> Vec<Vec<JetPoly<C>>> {
    let n = chart.len();
    (0..n).map(|i| (0..n).map(|k| chart[i].derivative(k).with_order(order)).collect()).collect()
}

/// K-jet at `x = 0` of the operator written in the chart: coefficients are
/// pulled back along `phi` and `d/dX_i` becomes `sum_k (J^{-1})_{ki} d/dx_k`.
/// `op` must be a polynomial operator unless the chart fixes the origin.
pub fn taylor_of_operator<C: ScalarAlgebra>(op: &JetDiffOp<Scalar>, chart: &[JetPoly<C>], k: u32) -> Result<JetDiffOp<C>> {
    let n = chart.len();
    if op.vars() > n {
        return Err(ForgeError::Shape(format!("operator in {} variables, chart of dimension {n}", op.vars())));
    }
    let w = k + op.diff_order();
    let chart_w: Vec<JetPoly<C>> = chart.iter().map(|p| p.with_order(w + 1)).collect();
    let jac = jacobian(&chart_w, w);
    let jinv = invert_matrix(&jac).ok_or_else(|| ForgeError::Singular("chart Jacobian at the base point".into()))?;
    let mut pd_pows: Vec<Vec<JetDiffOp<C>>> = (0..n)
        .map(|i| {
            let mut p = JetDiffOp::zero(n, Some(w));
            for (kk, row) in jinv.iter().enumerate() {
                for (m, c) in row[i].poly().terms() {
                    p.push(m.clone(), Monomial::var(kk), c.clone());
                }
            }
            let mut id = JetDiffOp::zero(n, Some(w));
            id.push(Monomial::one(), Monomial::one(), C::one());
            vec![id, p]
        })
        .collect();
    // group coefficients by derivative multi-index
    let mut by_alpha: BTreeMap<Monomial, MPoly<Scalar>> = BTreeMap::new();
    for ((x, d), c) in op.terms() {
        by_alpha.entry(d.clone()).or_insert_with(MPoly::zero).add_term(x.clone(), c.clone());
    }
    let mut out = JetDiffOp::zero(n, Some(w));
    for (alpha, a) in by_alpha {
        let lifted = JetPoly::new(a.map_coeffs(C::from_scalar), op.order().map(|o| o.min(w)));
        let coeff = lifted.compose(&chart_w).with_order(w);
        let mut acc = JetDiffOp::multiplication(n, coeff.poly(), Some(w));
        for i in 0..n {
            let e = alpha.get(i) as usize;
            while pd_pows[i].len() <= e {
                let next = pd_pows[i].last().unwrap().mul(&pd_pows[i][1]);
                pd_pows[i].push(next);
            }
            acc = acc.mul(&pd_pows[i][e]);
        }
        out = out.add(&acc);
    }
    Ok(out.truncate(k))
}

/// `T(D1 D2) - T(D1) T(D2)` modulo `m^{k+1}`. The right factor is expanded
/// with a margin of `ord(D1)` because derivatives lower the x-degree.
pub fn taylor_product_residual(
    d1: &JetDiffOp<Scalar>,
    d2: &JetDiffOp<Scalar>,
    chart: &[JetPoly<Scalar>],
    k: u32,
) -> Result<JetDiffOp<Scalar>> {
    let lhs = taylor_of_operator(&d1.mul(d2), chart, k)?;
    let t1 = taylor_of_operator(d1, chart, k)?;
    let t2 = taylor_of_operator(d2, chart, k + d1.diff_order())?;
    Ok(lhs.sub(&t1.mul(&t2)).truncate(k))
}

/// Conjugate a jet of an operator at the origin by an automorphism jet.
pub fn conjugate_by(op: &JetDiffOp<Scalar>, rho: &JetAutomorphism) -> Result<JetDiffOp<Scalar>> {
    let k = op.order().unwrap_or(rho.order);
    taylor_of_operator(op, &rho.as_chart(), k)
}

/// `omega = -(d phi)^{-1} dphi/dt` at a point of a path of charts.
pub fn maurer_cartan_value(phi: &[JetPoly<Scalar>], phi_dot: &[JetPoly<Scalar>], k: u32) -> Result<FormalVectorFieldJet> {
    let n = phi.len();
    if phi_dot.len() != n {
        return Err(ForgeError::Shape("path and velocity of different dimension".into()));
    }
    let jac = jacobian(&phi.iter().map(|p| p.with_order(k + 1)).collect::<Vec<_>>(), k);
    let jinv = invert_matrix(&jac).ok_or_else(|| ForgeError::Singular("chart Jacobian at the base point".into()))?;
    let comps = (0..n)
        .map(|i| {
            (0..n)
                .fold(JetPoly::zero(), |acc: JetPoly, j| acc.add(&jinv[i][j].mul(&phi_dot[j].with_order(k))))
                .neg()
                .poly()
                .clone()
        })
        .collect();
    Ok(FormalVectorFieldJet::new(comps, k))
}

#[derive(Clone, Debug)]
pub struct FlatnessReport {
    /// `ds + [omega, s]`, truncated at K.
    pub residual: JetDiffOp<Scalar>,
    pub section: JetDiffOp<Scalar>,
    pub derivative: JetDiffOp<Scalar>,
    pub omega: FormalVectorFieldJet,
}

impl FlatnessReport {
    pub fn is_flat(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Differentiate the Taylor section along `phi + t phi_dot` and compare with
/// `-[omega, s]`.
pub fn flatness_check(
    op: &JetDiffOp<Scalar>,
    phi: &[JetPoly<Scalar>],
    phi_dot: &[JetPoly<Scalar>],
    k: u32,
) -> Result<FlatnessReport> {
    let m = op.diff_order().max(1);
    let w = k + m;
    let t = Infinitesimal::t(0);
    let family: Vec<JetPoly<Infinitesimal>> = phi
        .iter()
        .zip(phi_dot)
        .map(|(p, v)| {
            p.map_coeffs(Infinitesimal::from_scalar).add(&v.map_coeffs(|c| Infinitesimal::from_scalar(c).mul(&t)))
        })
        .collect();
    let s_t = taylor_of_operator(op, &family, w)?;
    let section = s_t.map_coeffs(Infinitesimal::constant_part);
    let derivative = s_t.map_coeffs(|c| c.d(0).constant_part());
    let omega = maurer_cartan_value(phi, phi_dot, w)?;
    let om = JetDiffOp::from_vector_field(&omega);
    let residual = derivative.add(&om.bracket(&section)).truncate(k);
    Ok(FlatnessReport { residual, section: section.truncate(k), derivative: derivative.truncate(k), omega })
}

/// Seed data `f_{alpha, 0}` as a function of the chart.
pub type SeedFn<'a> = dyn Fn(&[JetPoly<Infinitesimal>]) -> Result<BTreeMap<Monomial, Infinitesimal>> + Sync + 'a;

/// Seeds read off the 0-jet of the operator itself.
pub fn operator_seeds(op: &JetDiffOp<Scalar>) -> impl Fn(&[JetPoly<Infinitesimal>]) -> Result<BTreeMap<Monomial, Infinitesimal>> + Sync + '_ {
    move |chart| {
        let s = taylor_of_operator(op, chart, 0)?;
        Ok(s.terms().map(|((_, a), c)| (a.clone(), c.clone())).collect())
    }
}

/// Default frame `v_r = (1 + x_r + x_{r+1}^2) e_r`; its value at the origin
/// is the identity, so `xi_0 = -Id`.
pub fn default_frames(n: usize) -> Vec<Vec<MPoly<Scalar>>> {
    (0..n)
        .map(|r| {
            let mut v = vec![MPoly::zero(); n];
            let nxt = (r + 1) % n;
            v[r] = MPoly::one().add(&MPoly::var(r)).add(&MPoly::var(nxt).pow(2));
            v
        })
        .collect()
}

/// Rebuilds the K-jet `f_{alpha, beta}` from the seeds `f_{alpha, 0}` by the
/// flatness recursion along a frame of vector fields.
pub struct Reconstructor<'a> {
    frames: Vec<Vec<MPoly<Scalar>>>,
    /// `xi[r][j]`: j-th component of `omega(X_r) = -v_r`.
    xi: Vec<Vec<MPoly<Scalar>>>,
    cof: Vec<Vec<Scalar>>,
    det: Scalar,
    max_alpha: u32,
    seeds: &'a SeedFn<'a>,
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub coeffs: BTreeMap<(Monomial, Monomial), Scalar>,
    /// Coefficients reached by two different recursion steps with
    /// different values. Zero for flat data.
    pub inconsistencies: usize,
}

impl Reconstruction {
    pub fn as_op(&self, vars: usize, k: u32) -> JetDiffOp<Scalar> {
        JetDiffOp::from_terms(vars, Some(k), self.coeffs.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.clone())))
    }
}

impl<'a> Reconstructor<'a> {
    pub fn new(frames: Vec<Vec<MPoly<Scalar>>>, max_alpha: u32, seeds: &'a SeedFn<'a>) -> Result<Self> {
        let n = frames.len();
        if frames.iter().any(|v| v.len() != n) {
            return Err(ForgeError::Shape("frame must have n fields on C^n".into()));
        }
        let xi: Vec<Vec<MPoly<Scalar>>> = frames.iter().map(|v| v.iter().map(MPoly::neg).collect()).collect();
        let xi0: Vec<Vec<Scalar>> = xi.iter().map(|row| row.iter().map(MPoly::constant_term).collect()).collect();
        let det = determinant(&xi0);
        if det.is_zero() {
            return Err(ForgeError::Singular("frame is not a basis at the base point".into()));
        }
        Ok(Reconstructor { cof: cofactors(&xi0), det, xi, frames, max_alpha, seeds })
    }

    /// K-jet at the base point of `chart`.
    pub fn run(&self, chart: &[JetPoly<Scalar>], k: u32) -> Result<Reconstruction> {
        let n = self.frames.len();
        if chart.len() != n {
            return Err(ForgeError::Shape("chart and frame of different dimension".into()));
        }
        let margin = k + self.max_alpha + 2;
        let family: Vec<JetPoly<Infinitesimal>> =
            chart.iter().map(|p| p.with_order(margin + k).map_coeffs(Infinitesimal::from_scalar)).collect();
        let mut bad = 0;
        let out = self.level(&family, 0, k, &mut bad)?;
        Ok(Reconstruction { coeffs: out.into_iter().map(|(key, v)| (key, v.constant_part())).collect(), inconsistencies: bad })
    }

    /// All `f_{alpha, beta}` with `|beta| <= depth` as functions of the
    /// infinitesimals `t_0 .. t_{used-1}`.
    fn level(
        &self,
        family: &[JetPoly<Infinitesimal>],
        used: usize,
        depth: u32,
        bad: &mut usize,
    ) -> Result<BTreeMap<(Monomial, Monomial), Infinitesimal>> {
        let n = self.frames.len();
        if depth == 0 {
            let seeds = (self.seeds)(family)?;
            return Ok(seeds.into_iter().map(|(a, v)| ((a, Monomial::one()), v)).collect());
        }
        if used >= 31 {
            return Err(ForgeError::Invalid("recursion too deep".into()));
        }
        let t = Infinitesimal::t(used);
        let order = family.iter().filter_map(JetPoly::order).min().unwrap_or(u32::MAX);
        let subs: Vec<BTreeMap<(Monomial, Monomial), Infinitesimal>> = (0..n)
            .map(|r| {
                // flow rho^r_t(x) = x + t v_r(x)
                let moved: Vec<JetPoly<Infinitesimal>> = (0..n)
                    .map(|j| {
                        let v = self.frames[r][j].map_coeffs(|c| Infinitesimal::from_scalar(c).mul(&t));
                        JetPoly::new(MPoly::var(j).add(&v), Some(order))
                    })
                    .collect();
                let fam_r: Vec<JetPoly<Infinitesimal>> =
                    family.iter().map(|p| p.compose(&moved).with_order(order.saturating_sub(1))).collect();
                self.level(&fam_r, used + 1, depth - 1, bad)
            })
            .collect::<Result<_>>()?;
        let mut f: BTreeMap<(Monomial, Monomial), Infinitesimal> = BTreeMap::new();
        for (key, v) in &subs[0] {
            let v0 = v.at_zero(used);
            if !v0.is_zero() {
                f.insert(key.clone(), v0);
            }
        }
        let get = |f: &BTreeMap<(Monomial, Monomial), Infinitesimal>, a: &Monomial, b: &Monomial| {
            f.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Infinitesimal::zero)
        };
        let sc = |s: &Scalar| Infinitesimal::from_scalar(s);
        let mut new: BTreeMap<(Monomial, Monomial), Infinitesimal> = BTreeMap::new();
        for alpha in Monomial::all_up_to(n, self.max_alpha) {
            for b in Monomial::all_of_degree(n, depth - 1) {
                let rhs: Vec<Infinitesimal> = (0..n)
                    .map(|r| {
                        let mut acc = get(&subs[r], &alpha, &b).d(used).neg();
                        for j in 0..n {
                            let bj = b.shift(j, 1);
                            for (mu, xi) in self.xi[r][j].terms() {
                                if mu.is_one() {
                                    continue;
                                }
                                let xi = sc(xi);
                                // -xi f_{A, B - mu + e_j} (B_j - mu_j + 1)
                                if let Some(beta) = bj.div(mu) {
                                    let fac = (b.get(j) + 1) as i64 - mu.get(j) as i64;
                                    acc = acc.sub(&xi.mul(&get(&f, &alpha, &beta)).mul(&Infinitesimal::from_i64(fac)));
                                }
                                // + xi f_{A + g - e_j, B - mu + g} binom(A + g - e_j, g) mu!/(mu - g)!
                                for g in mu.sub_monomials() {
                                    if g.is_one() {
                                        continue;
                                    }
                                    let ag = alpha.mul(&g);
                                    let Some(a2) = ag.div(&Monomial::var(j)) else { continue };
                                    let Some(bm) = b.mul(&g).div(mu) else { continue };
                                    let n = a2.binom(&g) * mu.falling(&g);
                                    acc = acc.add(&xi.mul(&get(&f, &a2, &bm)).mul(&Infinitesimal::from_i64(n as i64)));
                                }
                            }
                        }
                        acc
                    })
                    .collect();
                for j in 0..n {
                    let mut z = Infinitesimal::zero();
                    for (r, rhs_r) in rhs.iter().enumerate() {
                        z = z.add(&rhs_r.mul(&sc(&self.cof[r][j])));
                    }
                    let den = self.det.mul(&Scalar::from_i64((b.get(j) + 1) as i64));
                    z = z.mul(&sc(&den.try_inv().expect("nonzero determinant")));
                    let key = (alpha.clone(), b.shift(j, 1));
                    match new.get(&key) {
                        Some(prev) if *prev != z => *bad += 1,
                        Some(_) => {}
                        None => {
                            new.insert(key, z);
                        }
                    }
                }
            }
        }
        for (key, v) in new {
            if !v.is_zero() {
                f.insert(key, v);
            }
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly<Scalar> {
        MPoly::var(i)
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    fn op1(items: &[((u32, u32), i64)]) -> JetDiffOp<Scalar> {
        JetDiffOp::from_terms(
            1,
            None,
            items.iter().map(|((xe, de), c)| ((Monomial::var_pow(0, *xe), Monomial::var_pow(0, *de)), s(*c))),
        )
    }

    #[test]
    fn weyl_relation() {
        let d = JetDiffOp::<Scalar>::partial(1, 0);
        let xm = JetDiffOp::multiplication(1, &x(0), None);
        let c = d.bracket(&xm);
        assert_eq!(c, op1(&[((0, 0), 1)]));
    }

    #[test]
    fn identity_chart_is_truncation() {
        let op = op1(&[((2, 1), 3), ((0, 2), 1), ((5, 0), 1)]);
        let chart = exact_chart(&[x(0)]);
        assert_eq!(taylor_of_operator(&op, &chart, 3).unwrap(), op.truncate(3));
    }

    #[test]
    fn translated_chart_moves_base_point() {
        // x d/dx at the point 2: (x + 2) d/dx
        let op = op1(&[((1, 1), 1)]);
        let chart = exact_chart(&[x(0).add(&MPoly::constant(s(2)))]);
        let got = taylor_of_operator(&op, &chart, 2).unwrap();
        assert_eq!(got, op1(&[((1, 1), 1), ((0, 1), 2)]).truncate(2));
    }

    #[test]
    fn taylor_is_multiplicative() {
        let d1 = op1(&[((2, 2), 1), ((0, 1), 3)]);
        let d2 = op1(&[((3, 1), 2), ((1, 0), -1)]);
        let chart = exact_chart(&[x(0).add(&MPoly::constant(s(1))).add(&x(0).pow(2))]);
        assert!(taylor_product_residual(&d1, &d2, &chart, 3).unwrap().is_zero());
    }

    #[test]
    fn euler_path_gives_negative_euler_field() {
        let phi = exact_chart(&[x(0)]);
        let omega = maurer_cartan_value(&phi, &phi, 3).unwrap();
        assert_eq!(omega.components[0], x(0).neg());
    }

    #[test]
    fn flat_along_paths() {
        let op = op1(&[((2, 2), 1), ((1, 1), 3), ((3, 0), 1)]);
        let phi = exact_chart(&[x(0).add(&MPoly::constant(s(1))).add(&x(0).pow(2))]);
        let dot = exact_chart(&[MPoly::one().add(&x(0).pow(3))]);
        let rep = flatness_check(&op, &phi, &dot, 3).unwrap();
        assert!(rep.is_flat(), "{:?}", rep.residual);
        assert!(!rep.derivative.is_zero());
    }

    #[test]
    fn reconstruction_matches_taylor() {
        let op = JetDiffOp::from_terms(
            2,
            None,
            [
                ((Monomial::from_exps(&[1, 1]), Monomial::from_exps(&[1, 0])), s(1)),
                ((Monomial::from_exps(&[0, 2]), Monomial::from_exps(&[0, 1])), s(2)),
                ((Monomial::from_exps(&[0, 0]), Monomial::from_exps(&[1, 1])), s(1)),
                ((Monomial::from_exps(&[2, 0]), Monomial::one()), s(-1)),
            ],
        );
        let chart = exact_chart(&[x(0).add(&MPoly::constant(s(1))).add(&x(1).pow(2)), x(1).add(&x(0).mul(&x(1)))]);
        let seeds = operator_seeds(&op);
        let rec = Reconstructor::new(default_frames(2), op.diff_order(), &seeds).unwrap();
        let got = rec.run(&chart, 2).unwrap();
        assert_eq!(got.inconsistencies, 0);
        assert_eq!(got.as_op(2, 2), taylor_of_operator(&op, &chart, 2).unwrap());
    }
}
