//! The centralizer action, the map `phi_c` and the Harish-Chandra embeddings
//! of `W ⋉ z⊗O` into the completed tensor algebra.
//!
//! Everything here lives in `H_{1,c}`: brackets of `phi_c` values are
//! compared after specializing `t = 1`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::cherednik::{add_to, CherednikElement, PbwKey, RcaContext};
use crate::dunkl::{DunklContext, LocalizedOp, Residual};
use crate::error::{ForgeError, Result};
use crate::groups::{centralizer_lie_basis, in_centralizer, lambda_a_s, Group, Matrix};
use crate::jets::{w_bracket, FormalVectorFieldJet};
use crate::scalars::{CycNum, MPoly, Monomial, Ring, Scalar};

fn lift(c: &CycNum) -> Scalar {
    Scalar::from_cyc(c.clone())
}

fn t_one(x: &CherednikElement) -> CherednikElement {
    x.at_t(&Scalar::one())
}

fn linear_image(cols: impl Fn(usize) -> Vec<CycNum>, l: usize) -> Vec<MPoly<CycNum>> {
    (0..l)
        .map(|i| MPoly::from_terms(cols(i).into_iter().enumerate().map(|(k, c)| (Monomial::var(k), c))))
        .collect()
}

/// `theta(g)`: `u -> g u`, `y -> g^{-T} y`, group elements fixed.
pub fn theta_action(ctx: &RcaContext, g: &Matrix, x: &CherednikElement) -> Result<CherednikElement> {
    let l = ctx.dim();
    if g.dim() != l {
        return Err(ForgeError::Shape(format!("{}x{} matrix on a rank {l} algebra", g.dim(), g.dim())));
    }
    if !in_centralizer(ctx.group(), g) {
        return Err(ForgeError::NotInCentralizer(format!("{g:?}")));
    }
    let ginv = g.inverse().ok_or_else(|| ForgeError::Singular("centralizer element".into()))?;
    // u_i -> sum_k g_{ki} u_k ; y_j -> sum_k (g^{-1})_{jk} y_k
    let u_img = linear_image(|i| (0..l).map(|k| g.get(k, i).clone()).collect(), l);
    let y_img = linear_image(|j| (0..l).map(|k| ginv.get(j, k).clone()).collect(), l);
    let mut terms = BTreeMap::new();
    for (k, c) in x.terms() {
        let ys = MPoly::term(k.y.clone(), CycNum::one()).substitute(&y_img, |v| v.clone(), None);
        let us = MPoly::term(k.u.clone(), CycNum::one()).substitute(&u_img, |v| v.clone(), None);
        for (my, cy) in ys.terms() {
            for (mu, cu) in us.terms() {
                add_to(&mut terms, PbwKey::new(my.clone(), k.g, mu.clone()), c.mul(&lift(&cy.mul(cu))));
            }
        }
    }
    let out = CherednikElement::from_terms(terms);
    Ok(match x.y_truncation() {
        Some(k) => out.truncate_y(k),
        None => out,
    })
}

/// `theta(g)(ab) = theta(g)(a) theta(g)(b)` on all generator pairs; this is
/// the statement that theta(g) kills the defining relations.
pub fn theta_relation_residuals(ctx: &RcaContext, g: &Matrix) -> Result<Vec<Residual>> {
    let gens = ctx.generators();
    let mut out = Vec::new();
    for (na, a) in &gens {
        for (nb, b) in &gens {
            let lhs = theta_action(ctx, g, &ctx.mul(a, b))?;
            let rhs = ctx.mul(&theta_action(ctx, g, a)?, &theta_action(ctx, g, b)?);
            let d = lhs.sub(&rhs);
            if !d.is_zero() {
                out.push(Residual { label: format!("theta({na}*{nb})"), dump: ctx.format(&d) });
            }
        }
    }
    Ok(out)
}

/// `sum_s (2 c(s)/(1 - lambda_s)) lambda_{A,s} (1 - s)`.
pub fn central_part(ctx: &RcaContext, a: &Matrix) -> Result<CherednikElement> {
    let mut out = CherednikElement::zero();
    for r in ctx.reflections() {
        let lam = lambda_a_s(a, r)?;
        if lam.is_zero() {
            continue;
        }
        let one_minus = CycNum::one().sub(&r.lambda);
        let k = CycNum::from_int(2).mul(&one_minus.try_inv().expect("nontrivial eigenvalue")).mul(&lam);
        let coeff = ctx.c_of(r).mul(&lift(&k));
        out = out.add(&ctx.scalar(coeff.clone())).sub(&ctx.group_element(r.element).scale(&coeff));
    }
    Ok(out)
}

/// `phi_c(A) = -sum A_ij y_j u_i + sum_s (2 c(s)/(1 - lambda_s)) lambda_{A,s} (1 - s)`.
pub fn phi_c(ctx: &RcaContext, a: &Matrix) -> Result<CherednikElement> {
    let l = ctx.dim();
    if a.dim() != l {
        return Err(ForgeError::Shape(format!("{}x{} matrix on a rank {l} algebra", a.dim(), a.dim())));
    }
    if !in_centralizer(ctx.group(), a) {
        return Err(ForgeError::NotInCentralizer(format!("{a:?}")));
    }
    let mut terms = BTreeMap::new();
    for i in 0..l {
        for j in 0..l {
            let c = a.get(i, j);
            if !c.is_zero() {
                add_to(&mut terms, PbwKey::new(Monomial::var(j), 0, Monomial::var(i)), lift(c).neg());
            }
        }
    }
    Ok(CherednikElement::from_terms(terms).add(&central_part(ctx, a)?))
}

/// The centralizer Lie algebra of the group of `ctx`.
pub fn centralizer_basis(ctx: &RcaContext) -> Vec<Matrix> {
    centralizer_lie_basis(ctx.group())
}

/// `[phi_c(A), phi_c(B)] = phi_c([A, B])` on all basis pairs, at t = 1.
pub fn phi_homomorphism_residuals(ctx: &RcaContext) -> Result<Vec<Residual>> {
    let basis = centralizer_basis(ctx);
    let phis: Vec<CherednikElement> = basis.iter().map(|a| phi_c(ctx, a)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let lhs = t_one(&ctx.bracket(&phis[i], &phis[j]));
            let rhs = phi_c(ctx, &basis[i].commutator(&basis[j]))?;
            let d = lhs.sub(&rhs);
            if !d.is_zero() {
                out.push(Residual { label: format!("[phi(A{i}), phi(A{j})]"), dump: ctx.format(&d) });
            }
        }
    }
    Ok(out)
}

/// `[phi(A), y_m] = -sum_j A_mj y_j`, `[phi(A), u] = A u`, `[phi(A), h] = 0`.
pub fn generator_equivariance_residuals(ctx: &RcaContext) -> Result<Vec<Residual>> {
    let l = ctx.dim();
    let mut out = Vec::new();
    for (bi, a) in centralizer_basis(ctx).iter().enumerate() {
        let p = phi_c(ctx, a)?;
        let mut push = |label: String, d: CherednikElement| {
            if !d.is_zero() {
                out.push(Residual { label, dump: ctx.format(&d) });
            }
        };
        for m in 0..l {
            let want = ctx.y_vec(&(0..l).map(|j| a.get(m, j).neg()).collect::<Vec<_>>());
            push(format!("[phi(A{bi}), y{}]", m + 1), t_one(&ctx.bracket(&p, &ctx.y(m))).sub(&want));
            let want = ctx.u_vec(&(0..l).map(|k| a.get(k, m).clone()).collect::<Vec<_>>());
            push(format!("[phi(A{bi}), u{}]", m + 1), t_one(&ctx.bracket(&p, &ctx.u(m))).sub(&want));
        }
        for h in 0..ctx.group().order() {
            push(format!("[phi(A{bi}), {}]", ctx.group_label(h)), ctx.bracket(&p, &ctx.group_element(h)));
        }
    }
    Ok(out)
}

/// `lambda_{[A,B],s} = 0` and the central part of `phi_c(A)` commutes with H.
pub fn lemma_residuals(ctx: &RcaContext) -> Result<Vec<Residual>> {
    let basis = centralizer_basis(ctx);
    let mut out = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let ab = a.commutator(b);
            for r in ctx.reflections() {
                let lam = lambda_a_s(&ab, r)?;
                if !lam.is_zero() {
                    out.push(Residual {
                        label: format!("lambda([A{i}, A{j}], s at {})", r.element),
                        dump: lam.to_string(),
                    });
                }
            }
        }
        let z = central_part(ctx, a)?;
        for h in 0..ctx.group().order() {
            let d = ctx.bracket(&z, &ctx.group_element(h));
            if !d.is_zero() {
                out.push(Residual { label: format!("[z(A{i}), {}]", ctx.group_label(h)), dump: ctx.format(&d) });
            }
        }
    }
    Ok(out)
}

/// Algebras that can sit in the fiber of a Weyl tensor.
pub trait Fiber {
    type Elem: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, s: &Scalar) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
}

impl Fiber for RcaContext {
    type Elem = CherednikElement;
    fn zero(&self) -> CherednikElement {
        CherednikElement::zero()
    }
    fn one(&self) -> CherednikElement {
        CherednikElement::one()
    }
    fn is_zero(&self, a: &CherednikElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CherednikElement, b: &CherednikElement) -> CherednikElement {
        a.add(b)
    }
    fn scale(&self, a: &CherednikElement, s: &Scalar) -> CherednikElement {
        a.scale(s)
    }
    fn mul(&self, a: &CherednikElement, b: &CherednikElement) -> CherednikElement {
        RcaContext::mul(self, a, b)
    }
    fn format(&self, a: &CherednikElement) -> String {
        RcaContext::format(self, a)
    }
}

impl Fiber for DunklContext {
    type Elem = LocalizedOp;
    fn zero(&self) -> LocalizedOp {
        LocalizedOp::default()
    }
    fn one(&self) -> LocalizedOp {
        self.identity()
    }
    fn is_zero(&self, a: &LocalizedOp) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &LocalizedOp, b: &LocalizedOp) -> LocalizedOp {
        self.op_add(a, b)
    }
    fn scale(&self, a: &LocalizedOp, s: &Scalar) -> LocalizedOp {
        self.op_scale(a, s)
    }
    fn mul(&self, a: &LocalizedOp, b: &LocalizedOp) -> LocalizedOp {
        self.op_mul(a, b)
    }
    fn format(&self, a: &LocalizedOp) -> String {
        self.format_op(a)
    }
}

/// `sum x^a d^b ⊗ f_{a,b}` in `D_m ⊗ F`, x-degree truncated at `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylTensor<E> {
    terms: BTreeMap<(Monomial, Monomial), E>,
    pub order: u32,
}

/// Tensor element with a Cherednik fiber.
pub type TensorElement = WeylTensor<CherednikElement>;

impl<E: Clone + PartialEq + Debug> WeylTensor<E> {
    pub fn zero(order: u32) -> Self {
        WeylTensor { terms: BTreeMap::new(), order }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &E)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, x: &Monomial, d: &Monomial) -> Option<&E> {
        self.terms.get(&(x.clone(), d.clone()))
    }

    pub fn push<F: Fiber<Elem = E>>(&mut self, fiber: &F, x: Monomial, d: Monomial, e: E) {
        if x.degree() > self.order || fiber.is_zero(&e) {
            return;
        }
        let key = (x, d);
        let sum = match self.terms.remove(&key) {
            Some(prev) => fiber.add(&prev, &e),
            None => e,
        };
        if !fiber.is_zero(&sum) {
            self.terms.insert(key, sum);
        }
    }

    pub fn add<F: Fiber<Elem = E>>(&self, fiber: &F, o: &Self) -> Self {
        let mut out = WeylTensor { terms: self.terms.clone(), order: self.order.min(o.order) };
        out.terms.retain(|(x, _), _| x.degree() <= out.order);
        for ((x, d), e) in &o.terms {
            out.push(fiber, x.clone(), d.clone(), e.clone());
        }
        out
    }

    pub fn scale<F: Fiber<Elem = E>>(&self, fiber: &F, s: &Scalar) -> Self {
        let mut out = Self::zero(self.order);
        for ((x, d), e) in &self.terms {
            out.push(fiber, x.clone(), d.clone(), fiber.scale(e, s));
        }
        out
    }

    pub fn sub<F: Fiber<Elem = E>>(&self, fiber: &F, o: &Self) -> Self {
        self.add(fiber, &o.scale(fiber, &Scalar::one().neg()))
    }

    /// Product of the representatives, truncated at the common order.
    pub fn mul<F: Fiber<Elem = E>>(&self, fiber: &F, o: &Self) -> Self {
        let mut out = Self::zero(self.order.min(o.order));
        for ((xa, da), ea) in &self.terms {
            let gammas = da.sub_monomials();
            for ((xb, db), eb) in &o.terms {
                let e = fiber.mul(ea, eb);
                if fiber.is_zero(&e) {
                    continue;
                }
                for g in &gammas {
                    if !g.le(xb) {
                        continue;
                    }
                    let n = da.binom(g) * xb.falling(g);
                    let x = xa.mul(&xb.div(g).unwrap());
                    let d = da.div(g).unwrap().mul(db);
                    out.push(fiber, x, d, fiber.scale(&e, &Scalar::from_i64(n as i64)));
                }
            }
        }
        out
    }

    pub fn bracket<F: Fiber<Elem = E>>(&self, fiber: &F, o: &Self) -> Self {
        self.mul(fiber, o).sub(fiber, &o.mul(fiber, self))
    }

    pub fn map_fiber<F: Fiber>(&self, target: &F, f: impl Fn(&E) -> F::Elem) -> WeylTensor<F::Elem> {
        let mut out = WeylTensor::zero(self.order);
        for ((x, d), e) in &self.terms {
            out.push(target, x.clone(), d.clone(), f(e));
        }
        out
    }

    pub fn format<F: Fiber<Elem = E>>(&self, fiber: &F) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((x, d), e)| {
                let mut w = Vec::new();
                for i in 0..x.len().max(d.len()) {
                    match x.get(i) {
                        0 => {}
                        1 => w.push(format!("x{}", i + 1)),
                        k => w.push(format!("x{}^{k}", i + 1)),
                    }
                }
                for i in 0..d.len() {
                    match d.get(i) {
                        0 => {}
                        1 => w.push(format!("dx{}", i + 1)),
                        k => w.push(format!("dx{}^{k}", i + 1)),
                    }
                }
                let left = if w.is_empty() { "1".to_string() } else { w.join("*") };
                format!("{left} (x) [{}]", fiber.format(e))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `v + sum A ⊗ p` in `W_m ⋉ z⊗O_m`, stored as a vector field and an l×l
/// matrix of polynomials `M(x) = sum p A`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemidirectElement {
    pub v: FormalVectorFieldJet,
    pub g: Vec<Vec<MPoly<Scalar>>>,
    pub order: u32,
}

impl SemidirectElement {
    pub fn new(v: FormalVectorFieldJet, g: Vec<Vec<MPoly<Scalar>>>) -> Self {
        let order = v.order;
        let g = g.into_iter().map(|row| row.into_iter().map(|p| p.truncate(order)).collect()).collect();
        SemidirectElement { v, g, order }
    }

    pub fn from_pairs(v: FormalVectorFieldJet, l: usize, pairs: &[(Matrix, MPoly<Scalar>)]) -> Self {
        let mut g = vec![vec![MPoly::zero(); l]; l];
        for (a, p) in pairs {
            for (i, row) in g.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    let c = a.get(i, j);
                    if !c.is_zero() {
                        *e = e.add(&p.scale(&lift(c)));
                    }
                }
            }
        }
        Self::new(v, g)
    }

    pub fn stratum_dim(&self) -> usize {
        self.v.dim()
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    /// Coefficient matrices `A_mu` of `M(x) = sum_mu x^mu A_mu`.
    pub fn matrix_coefficients(&self) -> Result<BTreeMap<Monomial, Matrix>> {
        let l = self.rank();
        let mut mons: Vec<Monomial> = self.g.iter().flatten().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
        mons.sort();
        mons.dedup();
        mons.into_iter()
            .map(|mu| {
                let mut rows = vec![vec![CycNum::zero(); l]; l];
                for i in 0..l {
                    for j in 0..l {
                        rows[i][j] = self.g[i][j]
                            .coeff(&mu)
                            .as_cyc()
                            .ok_or_else(|| ForgeError::Invalid("matrix coefficients must be numbers".into()))?;
                    }
                }
                Ok((mu, Matrix::new(rows)))
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let g = self.g.iter().zip(&o.g).map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| a.add(b)).collect()).collect();
        Self::new(self.v.add(&o.v), g)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let g = self.g.iter().map(|r| r.iter().map(|a| a.scale(s)).collect()).collect();
        Self::new(self.v.scale(s), g)
    }
}

fn mat_poly_mul(a: &[Vec<MPoly<Scalar>>], b: &[Vec<MPoly<Scalar>>]) -> Vec<Vec<MPoly<Scalar>>> {
    let l = a.len();
    (0..l)
        .map(|i| (0..l).map(|j| (0..l).fold(MPoly::zero(), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))).collect())
        .collect()
}

/// `[v + M, w + N] = [v, w] + [M, N] + v(N) - w(M)`.
pub fn semidirect_bracket(a: &SemidirectElement, b: &SemidirectElement) -> Result<SemidirectElement> {
    if a.rank() != b.rank() {
        return Err(ForgeError::Shape("different centralizer ranks".into()));
    }
    let v = w_bracket(&a.v, &b.v)?;
    let mn = mat_poly_mul(&a.g, &b.g);
    let nm = mat_poly_mul(&b.g, &a.g);
    let l = a.rank();
    let g = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| mn[i][j].sub(&nm[i][j]).add(&a.v.apply(&b.g[i][j])).sub(&b.v.apply(&a.g[i][j])))
                .collect()
        })
        .collect();
    Ok(SemidirectElement::new(v, g))
}

/// `Phi_c(v + A⊗p) = v⊗1 + p⊗phi_c(A)`.
pub fn big_phi_c(ctx: &RcaContext, e: &SemidirectElement) -> Result<TensorElement> {
    let mut out = WeylTensor::zero(e.order);
    for (j, vj) in e.v.components.iter().enumerate() {
        for (mu, c) in vj.terms() {
            out.push(ctx, mu.clone(), Monomial::var(j), ctx.scalar(c.clone()));
        }
    }
    for (mu, a) in e.matrix_coefficients()? {
        out.push(ctx, mu, Monomial::one(), phi_c(ctx, &a)?);
    }
    Ok(out)
}

/// `-sum_ij A_ij y_j d_{y_i}` as a Dunkl-side operator.
pub fn linear_vector_field(dctx: &DunklContext, a: &Matrix) -> LocalizedOp {
    let l = dctx.dim();
    let mut out = LocalizedOp::default();
    for i in 0..l {
        for j in 0..l {
            let c = a.get(i, j);
            if c.is_zero() {
                continue;
            }
            let yj = dctx.multiplication(dctx.coeff_monomial(&Monomial::var(j)));
            let term = dctx.op_mul(&yj, &dctx.partial(i));
            out = dctx.op_sub(&out, &dctx.op_scale(&term, &lift(c)));
        }
    }
    out
}

/// `sigma(v + A⊗p) = v⊗id - p⊗sum A_ij y_j d_{y_i}`.
pub fn sigma_map(dctx: &DunklContext, e: &SemidirectElement) -> Result<WeylTensor<LocalizedOp>> {
    let mut out = WeylTensor::zero(e.order);
    for (j, vj) in e.v.components.iter().enumerate() {
        for (mu, c) in vj.terms() {
            out.push(dctx, mu.clone(), Monomial::var(j), dctx.op_scale(&dctx.identity(), c));
        }
    }
    for (mu, a) in e.matrix_coefficients()? {
        out.push(dctx, mu, Monomial::one(), linear_vector_field(dctx, &a));
    }
    Ok(out)
}

/// `id ⊗ Theta_c`.
pub fn theta_tensor(dctx: &DunklContext, x: &TensorElement) -> WeylTensor<LocalizedOp> {
    x.map_fiber(dctx, |e| dctx.theta_c(e))
}

/// `(id⊗Theta_c)(Phi_c(e)) - sigma(e)`, term by term.
pub fn verify_factorization(dctx: &DunklContext, e: &SemidirectElement) -> Result<Vec<Residual>> {
    let lhs = theta_tensor(dctx, &big_phi_c(dctx.rca(), e)?);
    let rhs = sigma_map(dctx, e)?;
    let diff = lhs.sub(dctx, &rhs);
    Ok(diff
        .terms()
        .map(|((x, d), op)| Residual { label: format!("x^{x:?} dx^{d:?}"), dump: dctx.format_op(op) })
        .collect())
}

/// `Phi_c([a, b]) = [Phi_c(a), Phi_c(b)]` at t = 1.
pub fn big_phi_bracket_residual(ctx: &RcaContext, a: &SemidirectElement, b: &SemidirectElement) -> Result<Option<Residual>> {
    let lhs = big_phi_c(ctx, &semidirect_bracket(a, b)?)?;
    let br = big_phi_c(ctx, a)?.bracket(ctx, &big_phi_c(ctx, b)?);
    let rhs = br.map_fiber(ctx, t_one);
    let d = lhs.sub(ctx, &rhs);
    Ok((!d.is_zero()).then(|| Residual { label: "Phi_c([a, b])".into(), dump: d.format(ctx) }))
}

/// `sigma([a, b]) = [sigma(a), sigma(b)]`.
pub fn sigma_bracket_residual(dctx: &DunklContext, a: &SemidirectElement, b: &SemidirectElement) -> Result<Option<Residual>> {
    let lhs = sigma_map(dctx, &semidirect_bracket(a, b)?)?;
    let rhs = sigma_map(dctx, a)?.bracket(dctx, &sigma_map(dctx, b)?);
    let d = lhs.sub(dctx, &rhs);
    Ok((!d.is_zero()).then(|| Residual { label: "sigma([a, b])".into(), dump: d.format(dctx) }))
}

/// Standard test groups: `<diag(-1,1,1)>` in GL(3) and `<diag(zeta_3)>` in GL(1).
pub fn reflection_in_gl3() -> Group {
    let m1 = CycNum::from_int(-1);
    Group::diagonal(&[m1, CycNum::one(), CycNum::one()], 1).expect("finite group")
}

pub fn cyclic_scalar(m: u32) -> Group {
    Group::diagonal(&[CycNum::root_of_unity(m, 1)], m).expect("finite group")
}

pub mod sample {
    //! Seeded random inputs for the tensor checks.

    use rand::Rng as _;

    use super::*;
    use crate::sampling::{random_monomial, small_int, TestRng};

    pub fn random_poly(rng: &mut TestRng, m: usize, k: u32, terms: usize) -> MPoly<Scalar> {
        let n = rng.gen_range(0..=terms);
        MPoly::from_terms((0..n).map(|_| (random_monomial(rng, m, k), Scalar::from_i64(small_int(rng, 3)))))
    }

    /// Random element over the stratum `C^m` with centralizer part drawn from
    /// integer combinations of the basis.
    pub fn random_semidirect(rng: &mut TestRng, basis: &[Matrix], l: usize, m: usize, k: u32) -> SemidirectElement {
        let v = FormalVectorFieldJet::new((0..m).map(|_| random_poly(rng, m, k, 2)).collect(), k);
        let mut pairs: Vec<(Matrix, MPoly<Scalar>)> = Vec::new();
        for a in basis {
            if rng.gen_bool(0.6) {
                pairs.push((a.clone(), random_poly(rng, m, k, 2)));
            }
        }
        SemidirectElement::from_pairs(v, l, &pairs)
    }

    /// Invertible element of the centralizer: identity plus a small
    /// combination of basis elements.
    pub fn random_centralizer_element(rng: &mut TestRng, basis: &[Matrix], l: usize) -> Matrix {
        loop {
            let mut g = Matrix::identity(l);
            for a in basis {
                let c = rng.gen_range(-2..=2);
                if c != 0 {
                    g = g.add(&a.scale(&CycNum::from_int(c)));
                }
            }
            if g.inverse().is_some() {
                return g;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::sample::*;
    use super::*;
    use crate::sampling::{random_cherednik, rng};

    fn ctx_z2() -> Arc<RcaContext> {
        RcaContext::new(Group::cyclic(2))
    }

    #[test]
    fn phi_rank_one() {
        let ctx = ctx_z2();
        let a = Matrix::diag(&[CycNum::from_int(3)]);
        assert_eq!(ctx.format(&phi_c(&ctx, &a).unwrap()), "-3*y1*u1 - 3*c1 + 3*c1*s1");
        assert!(phi_c(&ctx, &Matrix::zero(1)).unwrap().is_zero());
        let g = reflection_in_gl3();
        let ctx3 = RcaContext::new(g);
        let bad = Matrix::unit(3, 0, 1);
        assert!(matches!(phi_c(&ctx3, &bad), Err(ForgeError::NotInCentralizer(_))));
    }

    #[test]
    fn phi_without_deformation() {
        let ctx = RcaContext::new(reflection_in_gl3());
        for a in centralizer_basis(&ctx) {
            let p = phi_c(&ctx, &a).unwrap().map_coeffs(|c| {
                (1..=ctx.num_classes()).fold(c.clone(), |acc, j| acc.substitute_param(j, &Scalar::zero()).unwrap())
            });
            assert!(p.terms().all(|(k, _)| k.y.degree() == 1 && k.u.degree() == 1 && k.g == 0));
        }
    }

    #[test]
    fn theta_rank_one_scaling() {
        let ctx = ctx_z2();
        let g = Matrix::diag(&[CycNum::from_int(2)]);
        let u = theta_action(&ctx, &g, &ctx.u(0)).unwrap();
        let y = theta_action(&ctx, &g, &ctx.y(0)).unwrap();
        assert_eq!(ctx.format(&u), "2*u1");
        assert_eq!(ctx.format(&y), "1/2*y1");
        assert_eq!(ctx.bracket(&u, &y), ctx.bracket(&ctx.u(0), &ctx.y(0)));
        let id = Matrix::identity(1);
        let x = ctx.mul(&ctx.y(0), &ctx.u(0));
        assert_eq!(theta_action(&ctx, &id, &x).unwrap(), x);
    }

    #[test]
    fn theta_is_multiplicative() {
        let ctx = RcaContext::new(reflection_in_gl3());
        let basis = centralizer_basis(&ctx);
        assert_eq!(basis.len(), 5);
        let mut r = rng(3);
        let g = random_centralizer_element(&mut r, &basis, 3);
        assert!(theta_relation_residuals(&ctx, &g).unwrap().is_empty());
        for _ in 0..20 {
            let a = random_cherednik(&mut r, &ctx, 2, 2, 2);
            let b = random_cherednik(&mut r, &ctx, 2, 2, 2);
            let lhs = theta_action(&ctx, &g, &ctx.mul(&a, &b)).unwrap();
            let rhs = ctx.mul(&theta_action(&ctx, &g, &a).unwrap(), &theta_action(&ctx, &g, &b).unwrap());
            assert_eq!(lhs, rhs);
        }
        let outside = Matrix::unit(3, 0, 1).add(&Matrix::identity(3));
        assert!(theta_action(&ctx, &outside, &ctx.u(0)).is_err());
    }

    #[test]
    fn section_four_identities() {
        for grp in [reflection_in_gl3(), cyclic_scalar(3), Group::cyclic(2)] {
            let ctx = RcaContext::new(grp);
            assert!(phi_homomorphism_residuals(&ctx).unwrap().is_empty());
            assert!(generator_equivariance_residuals(&ctx).unwrap().is_empty());
            assert!(lemma_residuals(&ctx).unwrap().is_empty());
        }
    }

    #[test]
    fn factorization_rank_one() {
        let ctx = ctx_z2();
        let dctx = DunklContext::new(ctx.clone());
        let a = Matrix::identity(1);
        let e = SemidirectElement::from_pairs(FormalVectorFieldJet::zero(1, 3), 1, &[(a, MPoly::one())]);
        assert!(verify_factorization(&dctx, &e).unwrap().is_empty());
        let sig = sigma_map(&dctx, &e).unwrap();
        let euler = sig.get(&Monomial::one(), &Monomial::one()).unwrap();
        assert_eq!(dctx.format_op(euler), "-x1*d1");
    }

    #[test]
    fn factorization_and_brackets_random() {
        let mut r = rng(11);
        for grp in [reflection_in_gl3(), cyclic_scalar(3)] {
            let ctx = RcaContext::new(grp);
            let dctx = DunklContext::new(ctx.clone());
            let basis = centralizer_basis(&ctx);
            let l = ctx.dim();
            for _ in 0..5 {
                let a = random_semidirect(&mut r, &basis, l, 1, 3);
                let b = random_semidirect(&mut r, &basis, l, 1, 3);
                assert!(verify_factorization(&dctx, &a).unwrap().is_empty());
                assert_eq!(big_phi_bracket_residual(&ctx, &a, &b).unwrap(), None);
                assert_eq!(sigma_bracket_residual(&dctx, &a, &b).unwrap(), None);
            }
        }
    }

    #[test]
    fn phi_of_pure_parts() {
        let ctx = ctx_z2();
        let v = FormalVectorFieldJet::new(vec![MPoly::var(0)], 3);
        let e = SemidirectElement::new(v, vec![vec![MPoly::zero()]]);
        let t = big_phi_c(&ctx, &e).unwrap();
        assert_eq!(t.num_terms(), 1);
        assert_eq!(t.get(&Monomial::var(0), &Monomial::var(0)), Some(&CherednikElement::one()));
        let a = Matrix::diag(&[CycNum::from_int(2)]);
        let x2 = MPoly::var(0).pow(2);
        let e = SemidirectElement::from_pairs(FormalVectorFieldJet::zero(1, 3), 1, &[(a.clone(), x2)]);
        let t = big_phi_c(&ctx, &e).unwrap();
        assert_eq!(t.get(&Monomial::var_pow(0, 2), &Monomial::one()), Some(&phi_c(&ctx, &a).unwrap()));
    }
}
