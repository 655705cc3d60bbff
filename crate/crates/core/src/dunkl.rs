//! The algebra D(h_reg) x| CG of differential operators with poles along the
//! reflection hyperplanes, Dunkl operators and the Dunkl embedding.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::cherednik::{CherednikElement, RcaContext, EPSILON};
use crate::groups::{dot, normalize_direction, proportionality};
use crate::scalars::{CycNum, MPoly, Monomial, Ring, Scalar};

/// Polynomial in the coordinates x_1..x_l of h with parameter coefficients.
pub type CoordPoly = MPoly<Scalar>;

/// `p / prod_h ell_h^{e_h}` over the distinct reflection hyperplanes.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalizedCoeff {
    num: CoordPoly,
    den: Vec<u32>,
}

/// Finite sum of `coeff * g * d^beta`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LocalizedOp {
    terms: BTreeMap<(usize, Monomial), LocalizedCoeff>,
}

/// Reflection data organised by hyperplane, plus caches for Dunkl powers.
pub struct DunklContext {
    rca: Arc<RcaContext>,
    /// Normalized linear forms, leading coordinate 1.
    hyperplanes: Vec<Vec<CycNum>>,
    hyper_polys: Vec<CoordPoly>,
    /// For reflection r: (hyperplane, k) with `alpha_r = k * ell_h`.
    refl_hyper: Vec<(usize, CycNum)>,
    /// `perm[g][h] = (h', mu)` with `g.ell_h = mu * ell_h'`.
    perm: Vec<Vec<(usize, CycNum)>>,
    /// `g.x_j` as linear forms.
    x_lin: Vec<Vec<CoordPoly>>,
    /// `g.d_i` as linear forms in the d's.
    d_lin: Vec<Vec<MPoly<CycNum>>>,
    power_cache: Mutex<HashMap<Monomial, Arc<LocalizedOp>>>,
}

impl fmt::Debug for DunklContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DunklContext({:?}, {} hyperplanes)", self.rca, self.hyperplanes.len())
    }
}

fn lift(c: &CycNum) -> Scalar {
    Scalar::from_cyc(c.clone())
}

fn linear_poly(v: &[CycNum]) -> CoordPoly {
    MPoly::from_terms(v.iter().enumerate().map(|(k, c)| (Monomial::var(k), lift(c))))
}

impl DunklContext {
    pub fn new(rca: Arc<RcaContext>) -> Arc<Self> {
        let g = rca.group();
        let n = g.order();
        let l = g.dim();
        let mut hyperplanes: Vec<Vec<CycNum>> = Vec::new();
        let mut refl_hyper = Vec::new();
        for r in rca.reflections() {
            let dir = normalize_direction(&r.alpha);
            let h = match hyperplanes.iter().position(|x| *x == dir) {
                Some(h) => h,
                None => {
                    hyperplanes.push(dir.clone());
                    hyperplanes.len() - 1
                }
            };
            let k = proportionality(&r.alpha, &hyperplanes[h]).expect("same direction");
            refl_hyper.push((h, k));
        }
        let perm = (0..n)
            .map(|gi| {
                hyperplanes
                    .iter()
                    .map(|ell| {
                        let img = g.dual(gi).apply(ell);
                        let dir = normalize_direction(&img);
                        let h2 = hyperplanes.iter().position(|x| *x == dir).expect("G permutes hyperplanes");
                        (h2, proportionality(&img, &hyperplanes[h2]).unwrap())
                    })
                    .collect()
            })
            .collect();
        let x_lin = (0..n)
            .map(|gi| {
                (0..l)
                    .map(|j| linear_poly(&(0..l).map(|k| g.dual(gi).get(k, j).clone()).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        let d_lin = (0..n)
            .map(|gi| {
                (0..l)
                    .map(|i| MPoly::from_terms((0..l).map(|k| (Monomial::var(k), g.element(gi).get(k, i).clone()))))
                    .collect()
            })
            .collect();
        let hyper_polys = hyperplanes.iter().map(|h| linear_poly(h)).collect();
        Arc::new(DunklContext {
            rca,
            hyperplanes,
            hyper_polys,
            refl_hyper,
            perm,
            x_lin,
            d_lin,
            power_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn rca(&self) -> &Arc<RcaContext> {
        &self.rca
    }

    pub fn dim(&self) -> usize {
        self.rca.dim()
    }

    pub fn hyperplanes(&self) -> &[Vec<CycNum>] {
        &self.hyperplanes
    }

    fn nh(&self) -> usize {
        self.hyperplanes.len()
    }

    // ---- coefficients ----

    pub fn coeff_poly(&self, p: CoordPoly) -> LocalizedCoeff {
        LocalizedCoeff { num: p, den: vec![0; self.nh()] }
    }

    pub fn coeff_scalar(&self, s: Scalar) -> LocalizedCoeff {
        self.coeff_poly(MPoly::constant(s))
    }

    /// Monomial `x^a` as a coefficient.
    pub fn coeff_monomial(&self, a: &Monomial) -> LocalizedCoeff {
        self.coeff_poly(MPoly::term(a.clone(), Scalar::one()))
    }

    /// `p / alpha_r^k` for reflection r.
    pub fn coeff_over_root(&self, p: CoordPoly, r: usize, k: u32) -> LocalizedCoeff {
        let (h, kappa) = &self.refl_hyper[r];
        let inv = kappa.try_inv().unwrap().pow(k);
        let mut den = vec![0; self.nh()];
        den[*h] = k;
        self.reduce(LocalizedCoeff { num: p.scale(&lift(&inv)), den })
    }

    fn reduce(&self, mut c: LocalizedCoeff) -> LocalizedCoeff {
        if c.num.is_zero() {
            c.den.iter_mut().for_each(|e| *e = 0);
            return c;
        }
        for h in 0..self.nh() {
            while c.den[h] > 0 {
                match c.num.div_exact(&self.hyper_polys[h]) {
                    Some(q) => {
                        c.num = q;
                        c.den[h] -= 1;
                    }
                    None => break,
                }
            }
        }
        c
    }

    fn raise(&self, c: &LocalizedCoeff, den: &[u32]) -> CoordPoly {
        let mut p = c.num.clone();
        for h in 0..self.nh() {
            for _ in c.den[h]..den[h] {
                p = p.mul(&self.hyper_polys[h]);
            }
        }
        p
    }

    pub fn coeff_add(&self, a: &LocalizedCoeff, b: &LocalizedCoeff) -> LocalizedCoeff {
        if a.den == b.den {
            return self.reduce(LocalizedCoeff { num: a.num.add(&b.num), den: a.den.clone() });
        }
        let den: Vec<u32> = a.den.iter().zip(&b.den).map(|(x, y)| *x.max(y)).collect();
        let num = self.raise(a, &den).add(&self.raise(b, &den));
        self.reduce(LocalizedCoeff { num, den })
    }

    pub fn coeff_mul(&self, a: &LocalizedCoeff, b: &LocalizedCoeff) -> LocalizedCoeff {
        let den = a.den.iter().zip(&b.den).map(|(x, y)| x + y).collect();
        self.reduce(LocalizedCoeff { num: a.num.mul(&b.num), den })
    }

    /// `g.f = f o g^{-1}`.
    pub fn coeff_act(&self, g: usize, c: &LocalizedCoeff) -> LocalizedCoeff {
        if g == 0 {
            return c.clone();
        }
        let num = c.num.substitute(&self.x_lin[g], |s| s.clone(), None);
        let mut den = vec![0; self.nh()];
        let mut factor = CycNum::one();
        for h in 0..self.nh() {
            let (h2, mu) = &self.perm[g][h];
            den[*h2] = c.den[h];
            factor = factor.mul(&mu.pow(c.den[h]));
        }
        let inv = factor.try_inv().unwrap();
        LocalizedCoeff { num: num.scale(&lift(&inv)), den }
    }

    pub fn coeff_diff(&self, c: &LocalizedCoeff, i: usize) -> LocalizedCoeff {
        let mut acc = LocalizedCoeff { num: c.num.derivative(i), den: c.den.clone() };
        acc = self.reduce(acc);
        for h in 0..self.nh() {
            let e = c.den[h];
            let lh = &self.hyperplanes[h][i];
            if e == 0 || lh.is_zero() {
                continue;
            }
            let mut den = c.den.clone();
            den[h] += 1;
            let f = lift(lh).scale_i64(-(e as i64));
            let term = self.reduce(LocalizedCoeff { num: c.num.scale(&f), den });
            acc = self.coeff_add(&acc, &term);
        }
        acc
    }

    fn coeff_diff_multi(&self, c: &LocalizedCoeff, g: &Monomial) -> LocalizedCoeff {
        let mut out = c.clone();
        for i in 0..g.len() {
            for _ in 0..g.get(i) {
                out = self.coeff_diff(&out, i);
            }
        }
        out
    }

    // ---- operators ----

    pub fn op_term(&self, g: usize, beta: Monomial, c: LocalizedCoeff) -> LocalizedOp {
        let mut op = LocalizedOp::default();
        self.op_add_term(&mut op, g, beta, c);
        op
    }

    fn op_add_term(&self, op: &mut LocalizedOp, g: usize, beta: Monomial, c: LocalizedCoeff) {
        if c.num.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match op.terms.entry((g, beta)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = self.coeff_add(e.get(), &c);
                if v.num.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn identity(&self) -> LocalizedOp {
        self.op_term(0, Monomial::one(), self.coeff_scalar(Scalar::one()))
    }

    pub fn group_op(&self, g: usize) -> LocalizedOp {
        self.op_term(g, Monomial::one(), self.coeff_scalar(Scalar::one()))
    }

    pub fn multiplication(&self, c: LocalizedCoeff) -> LocalizedOp {
        self.op_term(0, Monomial::one(), c)
    }

    pub fn partial(&self, i: usize) -> LocalizedOp {
        self.op_term(0, Monomial::var(i), self.coeff_scalar(Scalar::one()))
    }

    pub fn op_add(&self, a: &LocalizedOp, b: &LocalizedOp) -> LocalizedOp {
        let mut out = a.clone();
        for ((g, beta), c) in &b.terms {
            self.op_add_term(&mut out, *g, beta.clone(), c.clone());
        }
        out
    }

    pub fn op_scale(&self, a: &LocalizedOp, s: &Scalar) -> LocalizedOp {
        let mut out = LocalizedOp::default();
        for ((g, beta), c) in &a.terms {
            let v = LocalizedCoeff { num: c.num.scale(s), den: c.den.clone() };
            self.op_add_term(&mut out, *g, beta.clone(), v);
        }
        out
    }

    pub fn op_sub(&self, a: &LocalizedOp, b: &LocalizedOp) -> LocalizedOp {
        self.op_add(a, &self.op_scale(b, &Scalar::from_i64(-1)))
    }

    /// Composition `a o b` in normal form.
    pub fn op_mul(&self, a: &LocalizedOp, b: &LocalizedOp) -> LocalizedOp {
        let grp = self.rca.group();
        let mut out = LocalizedOp::default();
        for ((g, beta), f) in &a.terms {
            for ((gp, betap), fp) in &b.terms {
                let gg = grp.mul(*g, *gp);
                let gp_inv = grp.inv(*gp);
                for gamma in beta.sub_monomials() {
                    let bin = beta.binom(&gamma) as i64;
                    let dfp = self.coeff_diff_multi(fp, &gamma);
                    if dfp.num.is_zero() {
                        continue;
                    }
                    let coeff = self.coeff_mul(f, &self.coeff_act(*g, &dfp));
                    let coeff = LocalizedCoeff { num: coeff.num.scale(&Scalar::from_i64(bin)), den: coeff.den };
                    let rest = beta.div(&gamma).unwrap();
                    let dpart = MPoly::term(rest, CycNum::one()).substitute(&self.d_lin[gp_inv], |c| c.clone(), None);
                    for (m, v) in dpart.terms() {
                        let c2 = LocalizedCoeff { num: coeff.num.scale(&lift(v)), den: coeff.den.clone() };
                        self.op_add_term(&mut out, gg, m.mul(betap), c2);
                    }
                }
            }
        }
        out
    }

    pub fn op_bracket(&self, a: &LocalizedOp, b: &LocalizedOp) -> LocalizedOp {
        self.op_sub(&self.op_mul(a, b), &self.op_mul(b, a))
    }

    /// Action of an operator on a rational function.
    pub fn apply(&self, op: &LocalizedOp, f: &LocalizedCoeff) -> LocalizedCoeff {
        let mut acc = self.coeff_scalar(Scalar::zero());
        for ((g, beta), c) in &op.terms {
            let v = self.coeff_act(*g, &self.coeff_diff_multi(f, beta));
            acc = self.coeff_add(&acc, &self.coeff_mul(c, &v));
        }
        acc
    }

    /// `D_xi = d_xi - sum_s (2 c(s) / (1 - lambda_s)) (xi, alpha_s) / alpha_s (1 - s)`.
    pub fn dunkl_operator(&self, xi: &[CycNum]) -> LocalizedOp {
        let mut op = LocalizedOp::default();
        for (i, v) in xi.iter().enumerate() {
            if !v.is_zero() {
                self.op_add_term(&mut op, 0, Monomial::var(i), self.coeff_scalar(lift(v)));
            }
        }
        for (r, refl) in self.rca.reflections().iter().enumerate() {
            let pairing = dot(xi, &refl.alpha);
            if pairing.is_zero() {
                continue;
            }
            let two_over = CycNum::from_int(2).mul(&CycNum::one().sub(&refl.lambda).try_inv().unwrap());
            let k = self.rca.c_of(refl).mul(&lift(&two_over.mul(&pairing))).neg();
            let c = self.coeff_over_root(MPoly::constant(k), r, 1);
            self.op_add_term(&mut op, 0, Monomial::one(), c.clone());
            self.op_add_term(&mut op, refl.element, Monomial::one(), LocalizedCoeff { num: c.num.neg(), den: c.den });
        }
        op
    }

    pub fn dunkl_basis(&self, i: usize) -> LocalizedOp {
        let xi: Vec<CycNum> = (0..self.dim()).map(|k| if k == i { CycNum::one() } else { CycNum::zero() }).collect();
        self.dunkl_operator(&xi)
    }

    /// Ordered product `D_1^{b_1} ... D_l^{b_l}`.
    pub fn dunkl_power(&self, b: &Monomial) -> Arc<LocalizedOp> {
        if let Some(v) = self.power_cache.lock().unwrap().get(b) {
            return v.clone();
        }
        let out = match (0..b.len()).rev().find(|&i| b.get(i) > 0) {
            None => self.identity(),
            Some(i) => {
                let prev = self.dunkl_power(&b.shift(i, -1));
                self.op_mul(&prev, &self.dunkl_basis(i))
            }
        };
        let out = Arc::new(out);
        self.power_cache.lock().unwrap().insert(b.clone(), out.clone());
        out
    }

    /// Dunkl embedding, applied after specializing t = 1.
    pub fn theta_c(&self, x: &CherednikElement) -> LocalizedOp {
        let x = x.at_t(&Scalar::one());
        let mut out = LocalizedOp::default();
        for (k, c) in x.terms() {
            let left = self.coeff_poly(MPoly::term(k.y.clone(), c.clone()));
            let power = self.dunkl_power(&k.u);
            for ((g, beta), f) in &power.terms {
                // y^a * h * (f g d^beta) = y^a (h.f) (h g) d^beta
                let coeff = self.coeff_mul(&left, &self.coeff_act(k.g, f));
                self.op_add_term(&mut out, self.rca.group().mul(k.g, *g), beta.clone(), coeff);
            }
        }
        out
    }

    /// Sign of the c-term forced by Dunkl operators in rank one: compares
    /// `[D, x]` with `t (u, y) + eps * sum_s c(s) (u, alpha_s)(y, alpha_s^vee) s` at t = 1.
    pub fn sign_oracle(&self) -> Option<i64> {
        if self.dim() != 1 {
            return None;
        }
        let d = self.dunkl_basis(0);
        let x = self.multiplication(self.coeff_monomial(&Monomial::var(0)));
        let br = self.op_bracket(&d, &x);
        for eps in [1i64, -1] {
            let mut want = self.identity();
            for r in self.rca.reflections() {
                let k = self.rca.c_of(r).mul(&lift(&r.alpha[0].mul(&r.alpha_vee[0]))).scale_i64(eps);
                want = self.op_add(&want, &self.op_term(r.element, Monomial::one(), self.coeff_scalar(k)));
            }
            if want == br {
                return Some(eps);
            }
        }
        None
    }

    pub fn format_coeff(&self, c: &LocalizedCoeff) -> String {
        let num = format_coord_poly(&c.num);
        let mut dens = Vec::new();
        for h in 0..self.nh() {
            if c.den[h] == 0 {
                continue;
            }
            let l = format_coord_poly(&self.hyper_polys[h]);
            let l = if self.hyper_polys[h].num_terms() > 1 { format!("({l})") } else { l };
            dens.push(if c.den[h] == 1 { l } else { format!("{l}^{}", c.den[h]) });
        }
        if dens.is_empty() {
            num
        } else {
            let num = if c.num.num_terms() > 1 { format!("({num})") } else { num };
            format!("{num}/{}", dens.join("*"))
        }
    }

    pub fn format_op(&self, op: &LocalizedOp) -> String {
        if op.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((g, beta), c) in op.terms.iter().rev() {
            let mut factors = Vec::new();
            let coeff = self.format_coeff(c);
            let gl = self.rca.group_label(*g);
            if !gl.is_empty() {
                factors.push(gl);
            }
            for i in 0..beta.len() {
                match beta.get(i) {
                    0 => {}
                    1 => factors.push(format!("d{}", i + 1)),
                    e => factors.push(format!("d{}^{e}", i + 1)),
                }
            }
            let body = factors.join("*");
            let coeff = if c.num.num_terms() > 1 && c.den.iter().all(|&e| e == 0) { format!("({coeff})") } else { coeff };
            parts.push(match (body.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => body,
                (false, "-1") => format!("-{body}"),
                _ => format!("{coeff}*{body}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

pub fn format_coord_poly(p: &CoordPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (m, c)) in p.terms().rev().enumerate() {
        let (neg, mag) = c.sign_split();
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = (0..m.len())
            .filter(|&i| m.get(i) > 0)
            .map(|i| if m.get(i) == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, m.get(i)) })
            .collect();
        let mono = mono.join("*");
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", mag.factor_string()));
        }
    }
    out
}

impl LocalizedCoeff {
    pub fn numerator(&self) -> &CoordPoly {
        &self.num
    }

    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.iter().all(|&e| e == 0)
    }
}

impl fmt::Debug for LocalizedCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {:?}", format_coord_poly(&self.num), self.den)
    }
}

impl LocalizedOp {
    pub fn terms(&self) -> impl Iterator<Item = (&(usize, Monomial), &LocalizedCoeff)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, g: usize, beta: &Monomial) -> Option<&LocalizedCoeff> {
        self.terms.get(&(g, beta.clone()))
    }

    /// Highest total derivative order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(_, b)| b.degree()).max().unwrap_or(0)
    }

    /// Terms of derivative order exactly `d`.
    pub fn part_of_order(&self, d: u32) -> LocalizedOp {
        LocalizedOp {
            terms: self.terms.iter().filter(|((_, b), _)| b.degree() == d).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }
}

impl fmt::Debug for LocalizedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Structured residual of a failed identity.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Residual {
    pub label: String,
    pub dump: String,
}

/// `[D_i, D_j] = 0` for all basis pairs.
pub fn dunkl_commutativity(ctx: &DunklContext) -> Vec<Residual> {
    let l = ctx.dim();
    let mut out = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            let br = ctx.op_bracket(&ctx.dunkl_basis(i), &ctx.dunkl_basis(j));
            if !br.is_zero() {
                out.push(Residual { label: format!("[D{}, D{}]", i + 1, j + 1), dump: ctx.format_op(&br) });
            }
        }
    }
    out
}

/// `g D_xi g^{-1} = D_{g xi}` for every group element and basis vector.
pub fn dunkl_equivariance(ctx: &DunklContext) -> Vec<Residual> {
    let grp = ctx.rca().group();
    let l = ctx.dim();
    let mut out = Vec::new();
    for g in 0..grp.order() {
        for i in 0..l {
            let lhs = ctx.op_mul(&ctx.op_mul(&ctx.group_op(g), &ctx.dunkl_basis(i)), &ctx.group_op(grp.inv(g)));
            let gxi: Vec<CycNum> = (0..l).map(|k| grp.element(g).get(k, i).clone()).collect();
            let diff = ctx.op_sub(&lhs, &ctx.dunkl_operator(&gxi));
            if !diff.is_zero() {
                out.push(Residual { label: format!("g{g} D{} g{g}^-1", i + 1), dump: ctx.format_op(&diff) });
            }
        }
    }
    out
}

/// `Theta_c(ab) = Theta_c(a) Theta_c(b)`.
pub fn homomorphism_residual(ctx: &DunklContext, a: &CherednikElement, b: &CherednikElement) -> Option<Residual> {
    let rca = ctx.rca();
    let lhs = ctx.theta_c(&rca.mul(a, b));
    let rhs = ctx.op_mul(&ctx.theta_c(a), &ctx.theta_c(b));
    let diff = ctx.op_sub(&lhs, &rhs);
    (!diff.is_zero()).then(|| Residual {
        label: format!("Theta({} * {})", rca.format(a), rca.format(b)),
        dump: ctx.format_op(&diff),
    })
}

/// Top-order part of `Theta_c(u^b)` is `d^b`.
pub fn leading_symbol_ok(ctx: &DunklContext, b: &Monomial) -> bool {
    let op = ctx.theta_c(&CherednikElement::monomial(
        crate::cherednik::PbwKey::new(Monomial::one(), 0, b.clone()),
        Scalar::one(),
    ));
    let top = op.part_of_order(b.degree());
    top == ctx.op_term(0, b.clone(), ctx.coeff_scalar(Scalar::one())) && op.order() == b.degree()
}

/// Also re-exported for reports: the sign used by the algebra.
pub fn engine_sign() -> i64 {
    EPSILON
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Group;

    fn rank_one(m: u32) -> Arc<DunklContext> {
        DunklContext::new(RcaContext::new(Group::cyclic(m)))
    }

    #[test]
    fn rank_one_dunkl_operator() {
        let ctx = rank_one(2);
        assert_eq!(ctx.format_op(&ctx.dunkl_basis(0)), "c1/x1*s1 + d1 - c1/x1");
        // D x = 1 - 2c, D x^2 = 2x
        let d = ctx.dunkl_basis(0);
        let x = ctx.coeff_monomial(&Monomial::var(0));
        let x2 = ctx.coeff_monomial(&Monomial::var_pow(0, 2));
        let one_minus_2c = Scalar::one().sub(&Scalar::c(1).scale_i64(2));
        assert_eq!(ctx.apply(&d, &x), ctx.coeff_scalar(one_minus_2c));
        assert_eq!(ctx.apply(&d, &x2), ctx.coeff_poly(MPoly::term(Monomial::var(0), Scalar::from_i64(2))));
        assert_eq!(ctx.apply(&ctx.identity(), &x2), x2);
    }

    #[test]
    fn degenerate_dunkl_operators() {
        let ctx = rank_one(2);
        assert!(ctx.dunkl_operator(&[CycNum::zero()]).is_zero());
        let at_zero = ctx.theta_c(&ctx.rca().u(0));
        let mut specialized = LocalizedOp::default();
        for ((g, b), c) in at_zero.terms() {
            let num = c.numerator().map_coeffs(|s| s.substitute_param(1, &Scalar::zero()).unwrap());
            ctx.op_add_term(&mut specialized, *g, b.clone(), LocalizedCoeff { num, den: c.den.clone() });
        }
        assert_eq!(specialized, ctx.partial(0));
    }

    #[test]
    fn weyl_and_group_relations() {
        let ctx = rank_one(2);
        let x = ctx.multiplication(ctx.coeff_monomial(&Monomial::var(0)));
        let d = ctx.partial(0);
        assert_eq!(ctx.format_op(&ctx.op_mul(&d, &x)), "x1*d1 + 1");
        assert_eq!(ctx.format_op(&ctx.op_mul(&ctx.group_op(1), &x)), "-x1*s1");
        let inv_x = ctx.multiplication(ctx.coeff_over_root(MPoly::constant(Scalar::from_i64(2)), 0, 1));
        assert_eq!(ctx.format_op(&ctx.op_mul(&d, &inv_x)), "1/x1*d1 + -1/x1^2".replace("+ -", "- "));
    }

    #[test]
    fn oracle_picks_engine_sign() {
        for m in 2..=4 {
            assert_eq!(rank_one(m).sign_oracle(), Some(EPSILON));
        }
    }

    #[test]
    fn s2_and_s3_commute() {
        for n in [2, 3] {
            let ctx = DunklContext::new(RcaContext::new(Group::symmetric(n)));
            assert!(dunkl_commutativity(&ctx).is_empty());
            assert!(dunkl_equivariance(&ctx).is_empty());
        }
    }

    #[test]
    fn generators_map_homomorphically() {
        let ctx = DunklContext::new(RcaContext::new(Group::symmetric(2)));
        let gens = ctx.rca().generators();
        for (_, a) in &gens {
            for (_, b) in &gens {
                assert_eq!(homomorphism_residual(&ctx, a, b), None);
            }
        }
        assert!(leading_symbol_ok(&ctx, &Monomial::from_exps(&[1, 2])));
    }
}
