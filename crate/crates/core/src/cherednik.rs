//! PBW normal-form arithmetic in the rational Cherednik algebra H_{t,c}(h, G).
//!
//! Basis: `y^a * g * u^b` with `y_j` the coordinate covectors (h*) and `u_i`
//! the basis vectors of h. Relations:
//!
//! ```text
//! [u_i, y_j] = t delta_ij + EPSILON * sum_s c(s) (u_i, alpha_s)(y_j, alpha_s^vee) s
//! g y g^{-1} = g.y,   g u g^{-1} = g.u,   [y, y'] = [u, u'] = 0
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{ForgeError, Result};
use crate::groups::{find_reflections, num_classes, Group, ReflectionData};
use crate::scalars::{CycNum, MPoly, Monomial, Ring, Scalar};

/// Sign of the c-term in `[u, y]`, fixed by comparing with Dunkl operators
/// (`D = d - (c/x)(1 - s)` forces `[D, x] = 1 - 2c s` in rank one).
pub const EPSILON: i64 = -1;

/// Polynomial in the y (or u) variables with cyclotomic coefficients.
pub type LinPoly = MPoly<CycNum>;

type Shift = Arc<Vec<(PbwKey, Scalar)>>;

/// Group, reflection data and caches shared by all elements of one algebra.
pub struct RcaContext {
    group: Arc<Group>,
    reflections: Vec<ReflectionData>,
    refl_of: Vec<Option<usize>>,
    classes: usize,
    /// `y_lin[g][j]`: g.y_j as a linear form in the y's.
    y_lin: Vec<Vec<LinPoly>>,
    /// `u_lin[g][i]`: g.u_i as a linear form in the u's.
    u_lin: Vec<Vec<LinPoly>>,
    /// `refl_u_coeff[s][i] = EPSILON * c(s) * (u_i, alpha_s)`.
    refl_u_coeff: Vec<Vec<Scalar>>,
    shift_cache: Mutex<HashMap<(Monomial, Monomial), Shift>>,
    delta_cache: Mutex<HashMap<(usize, Monomial), Arc<LinPoly>>>,
}

impl fmt::Debug for RcaContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RcaContext({:?}, {} reflections)", self.group, self.reflections.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwKey {
    pub y: Monomial,
    pub g: usize,
    pub u: Monomial,
}

impl PbwKey {
    pub fn new(y: Monomial, g: usize, u: Monomial) -> Self {
        PbwKey { y, g, u }
    }
}

/// Element of H_{t,c} in PBW normal form, optionally truncated in y-degree.
#[derive(Clone, PartialEq, Eq)]
pub struct CherednikElement {
    terms: BTreeMap<PbwKey, Scalar>,
    y_truncation: Option<u32>,
}

fn linear_form(coeffs: impl Iterator<Item = CycNum>) -> LinPoly {
    MPoly::from_terms(coeffs.enumerate().map(|(k, c)| (Monomial::var(k), c)))
}

impl RcaContext {
    pub fn new(group: Group) -> Arc<Self> {
        let reflections = find_reflections(&group);
        Self::with_reflections(group, reflections)
    }

    pub fn with_reflections(group: Group, reflections: Vec<ReflectionData>) -> Arc<Self> {
        let l = group.dim();
        let n = group.order();
        let mut refl_of = vec![None; n];
        for (k, r) in reflections.iter().enumerate() {
            refl_of[r.element] = Some(k);
        }
        let y_lin = (0..n)
            .map(|g| (0..l).map(|j| linear_form((0..l).map(|k| group.dual(g).get(k, j).clone()))).collect())
            .collect();
        let u_lin = (0..n)
            .map(|g| (0..l).map(|i| linear_form((0..l).map(|k| group.element(g).get(k, i).clone()))).collect())
            .collect();
        let refl_u_coeff = reflections
            .iter()
            .map(|r| {
                let c = Scalar::c(r.class + 1).scale_i64(EPSILON);
                r.alpha.iter().map(|a| c.mul(&Scalar::from_cyc(a.clone()))).collect()
            })
            .collect();
        Arc::new(RcaContext {
            classes: num_classes(&reflections),
            group: Arc::new(group),
            reflections,
            refl_of,
            y_lin,
            u_lin,
            refl_u_coeff,
            shift_cache: Mutex::new(HashMap::new()),
            delta_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<Group> {
        self.group.clone()
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn reflections(&self) -> &[ReflectionData] {
        &self.reflections
    }

    pub fn reflection_index(&self, g: usize) -> Option<usize> {
        self.refl_of[g]
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    /// The parameter c(s) of a reflection.
    pub fn c_of(&self, r: &ReflectionData) -> Scalar {
        Scalar::c(r.class + 1)
    }

    /// `g.f` for a polynomial in the y's.
    pub fn act_y(&self, g: usize, f: &LinPoly) -> LinPoly {
        if g == 0 {
            return f.clone();
        }
        f.substitute(&self.y_lin[g], |c| c.clone(), None)
    }

    /// `g.f` for a polynomial in the u's.
    pub fn act_u(&self, g: usize, f: &LinPoly) -> LinPoly {
        if g == 0 {
            return f.clone();
        }
        f.substitute(&self.u_lin[g], |c| c.clone(), None)
    }

    /// `Delta_s(y^c)` with `[u_i, y^c] = t d_i(y^c) + sum_s eps c(s) (u_i, alpha_s) Delta_s(y^c) s`.
    fn delta(&self, r: usize, m: &Monomial) -> Arc<LinPoly> {
        let key = (r, m.clone());
        if let Some(v) = self.delta_cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        // Delta(f y_j) = Delta(f) (s.y_j) + f (y_j, alpha^vee)
        let out = match (0..m.len()).find(|&j| m.get(j) > 0) {
            None => LinPoly::zero(),
            Some(j) => {
                let f = m.shift(j, -1);
                let s = self.reflections[r].element;
                let prev = self.delta(r, &f);
                let av = &self.reflections[r].alpha_vee[j];
                prev.mul(&self.y_lin[s][j]).add(&MPoly::term(f, av.clone()))
            }
        };
        let out = Arc::new(out);
        self.delta_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Left multiplication of a normal-form element by u_i.
    fn left_mul_u(&self, i: usize, x: &BTreeMap<PbwKey, Scalar>) -> BTreeMap<PbwKey, Scalar> {
        let mut out = BTreeMap::new();
        for (k, c) in x {
            // y^c u_i h u^d = y^c h (h^{-1}.u_i) u^d
            let hinv = self.group.inv(k.g);
            for (m, v) in self.u_lin[hinv][i].terms() {
                add_to(&mut out, PbwKey::new(k.y.clone(), k.g, k.u.mul(m)), c.mul(&Scalar::from_cyc(v.clone())));
            }
            // [u_i, y^c] h u^d
            let e = k.y.get(i);
            if e > 0 {
                let coeff = c.mul(&Scalar::t()).scale_i64(e as i64);
                add_to(&mut out, PbwKey::new(k.y.shift(i, -1), k.g, k.u.clone()), coeff);
            }
            if k.y.is_one() {
                continue;
            }
            for (r, refl) in self.reflections.iter().enumerate() {
                let rc = &self.refl_u_coeff[r][i];
                if rc.is_zero() {
                    continue;
                }
                let d = self.delta(r, &k.y);
                let sg = self.group.mul(refl.element, k.g);
                let base = c.mul(rc);
                for (m, v) in d.terms() {
                    add_to(&mut out, PbwKey::new(m.clone(), sg, k.u.clone()), base.mul(&Scalar::from_cyc(v.clone())));
                }
            }
        }
        out
    }

    /// Normal form of `u^b y^a`.
    fn shift(&self, b: &Monomial, a: &Monomial) -> Shift {
        let key = (b.clone(), a.clone());
        if let Some(v) = self.shift_cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let out = match (0..b.len()).rev().find(|&i| b.get(i) > 0) {
            None => vec![(PbwKey::new(a.clone(), 0, Monomial::one()), Scalar::one())],
            Some(i) => {
                let rest = self.shift(&b.shift(i, -1), a);
                let map: BTreeMap<PbwKey, Scalar> = rest.iter().cloned().collect();
                self.left_mul_u(i, &map).into_iter().collect()
            }
        };
        let out = Arc::new(out);
        self.shift_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn mul_keys(&self, k1: &PbwKey, k2: &PbwKey, coeff: &Scalar, cap: Option<u32>, out: &mut BTreeMap<PbwKey, Scalar>) {
        let g = k1.g;
        let gp = k2.g;
        let gp_inv = self.group.inv(gp);
        for (mid, c) in self.shift(&k1.u, &k2.y).iter() {
            let coef = coeff.mul(c);
            let ypart = self.act_y(g, &MPoly::term(mid.y.clone(), CycNum::one()));
            let upart = self.act_u(gp_inv, &MPoly::term(mid.u.clone(), CycNum::one()));
            let grp = self.group.mul(self.group.mul(g, mid.g), gp);
            for (ym, yc) in ypart.terms() {
                let yy = k1.y.mul(ym);
                if cap.is_some_and(|k| yy.degree() > k) {
                    continue;
                }
                let cy = coef.mul(&Scalar::from_cyc(yc.clone()));
                for (um, uc) in upart.terms() {
                    add_to(out, PbwKey::new(yy.clone(), grp, um.mul(&k2.u)), cy.mul(&Scalar::from_cyc(uc.clone())));
                }
            }
        }
    }

    /// Product in PBW normal form.
    ///
    /// Truncation: left factors may be truncated freely, while a right factor
    /// truncated at K only determines the product up to y-degree K - F(left),
    /// since each u can lower y-degree by one.
    pub fn multiply(&self, a: &CherednikElement, b: &CherednikElement) -> Result<CherednikElement> {
        self.check(a)?;
        self.check(b)?;
        let cap = match (a.y_truncation, b.y_truncation) {
            (None, None) => None,
            (Some(k), None) => Some(k),
            (ka, Some(kb)) => {
                let f = a.filtration_degree();
                let kb = kb.saturating_sub(f);
                Some(ka.map_or(kb, |k| k.min(kb)))
            }
        };
        let mut out = BTreeMap::new();
        for (k1, c1) in &a.terms {
            for (k2, c2) in &b.terms {
                self.mul_keys(k1, k2, &c1.mul(c2), cap, &mut out);
            }
        }
        Ok(CherednikElement { terms: out, y_truncation: cap })
    }

    pub fn mul(&self, a: &CherednikElement, b: &CherednikElement) -> CherednikElement {
        self.multiply(a, b).expect("elements of this algebra")
    }

    pub fn bracket(&self, a: &CherednikElement, b: &CherednikElement) -> CherednikElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// Structural validity of an element for this context.
    pub fn check(&self, x: &CherednikElement) -> Result<()> {
        let l = self.dim();
        for k in x.terms.keys() {
            if k.g >= self.group.order() || k.y.len() > l || k.u.len() > l {
                return Err(ForgeError::ContextMismatch(format!(
                    "term {:?} does not belong to an algebra of rank {l} with {} group elements",
                    k,
                    self.group.order()
                )));
            }
        }
        Ok(())
    }

    pub fn y(&self, j: usize) -> CherednikElement {
        CherednikElement::monomial(PbwKey::new(Monomial::var(j), 0, Monomial::one()), Scalar::one())
    }

    pub fn u(&self, i: usize) -> CherednikElement {
        CherednikElement::monomial(PbwKey::new(Monomial::one(), 0, Monomial::var(i)), Scalar::one())
    }

    pub fn group_element(&self, g: usize) -> CherednikElement {
        CherednikElement::monomial(PbwKey::new(Monomial::one(), g, Monomial::one()), Scalar::one())
    }

    pub fn scalar(&self, s: Scalar) -> CherednikElement {
        CherednikElement::monomial(PbwKey::new(Monomial::one(), 0, Monomial::one()), s)
    }

    /// Covector `sum_j v_j y_j`.
    pub fn y_vec(&self, v: &[CycNum]) -> CherednikElement {
        CherednikElement::from_terms(
            v.iter()
                .enumerate()
                .map(|(j, c)| (PbwKey::new(Monomial::var(j), 0, Monomial::one()), Scalar::from_cyc(c.clone()))),
        )
    }

    /// Vector `sum_i v_i u_i`.
    pub fn u_vec(&self, v: &[CycNum]) -> CherednikElement {
        CherednikElement::from_terms(
            v.iter()
                .enumerate()
                .map(|(i, c)| (PbwKey::new(Monomial::one(), 0, Monomial::var(i)), Scalar::from_cyc(c.clone()))),
        )
    }

    /// All generators: y_j, u_i and the group generators.
    pub fn generators(&self) -> Vec<(String, CherednikElement)> {
        let l = self.dim();
        let mut out: Vec<(String, CherednikElement)> = (0..l).map(|j| (format!("y{}", j + 1), self.y(j))).collect();
        out.extend((0..l).map(|i| (format!("u{}", i + 1), self.u(i))));
        for &g in self.group.generators() {
            out.push((self.group_label(g), self.group_element(g)));
        }
        out
    }

    /// Printed name of a group element: empty for the identity, `s<k>` for the
    /// k-th reflection, `g<index>` otherwise.
    pub fn group_label(&self, g: usize) -> String {
        if g == 0 {
            String::new()
        } else if let Some(r) = self.refl_of[g] {
            format!("s{}", r + 1)
        } else {
            format!("g{g}")
        }
    }

    pub fn format(&self, x: &CherednikElement) -> String {
        let mut keys: Vec<(&PbwKey, &Scalar)> = x.terms.iter().collect();
        keys.sort_by(|(a, _), (b, _)| {
            (b.y.degree() + b.u.degree())
                .cmp(&(a.y.degree() + a.u.degree()))
                .then(a.g.cmp(&b.g))
                .then(b.y.cmp(&a.y))
                .then(b.u.cmp(&a.u))
        });
        if keys.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (k, c)) in keys.into_iter().enumerate() {
            let mut factors = Vec::new();
            push_powers(&mut factors, "y", &k.y);
            let gl = self.group_label(k.g);
            if !gl.is_empty() {
                factors.push(gl);
            }
            push_powers(&mut factors, "u", &k.u);
            let (neg, mag) = c.sign_split();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = factors.join("*");
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
}

fn push_powers(out: &mut Vec<String>, name: &str, m: &Monomial) {
    for i in 0..m.len() {
        match m.get(i) {
            0 => {}
            1 => out.push(format!("{name}{}", i + 1)),
            e => out.push(format!("{name}{}^{e}", i + 1)),
        }
    }
}

pub(crate) fn add_to<K: Ord, C: Ring>(map: &mut BTreeMap<K, C>, k: K, c: C) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let v = e.get().add(&c);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

impl CherednikElement {
    pub fn zero() -> Self {
        CherednikElement { terms: BTreeMap::new(), y_truncation: None }
    }

    pub fn one() -> Self {
        Self::monomial(PbwKey::new(Monomial::one(), 0, Monomial::one()), Scalar::one())
    }

    pub fn monomial(k: PbwKey, c: Scalar) -> Self {
        Self::from_terms([(k, c)])
    }

    pub fn from_terms(it: impl IntoIterator<Item = (PbwKey, Scalar)>) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in it {
            add_to(&mut terms, k, c);
        }
        CherednikElement { terms, y_truncation: None }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: &PbwKey) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn y_truncation(&self) -> Option<u32> {
        self.y_truncation
    }

    fn joint_cap(&self, o: &Self) -> Option<u32> {
        match (self.y_truncation, o.y_truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            add_to(&mut terms, k.clone(), c.clone());
        }
        CherednikElement { terms, y_truncation: self.joint_cap(o) }.enforce()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_i64(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            add_to(&mut terms, k.clone(), c.mul(s));
        }
        CherednikElement { terms, y_truncation: self.y_truncation }
    }

    fn enforce(mut self) -> Self {
        if let Some(k) = self.y_truncation {
            self.terms.retain(|key, _| key.y.degree() <= k);
        }
        self
    }

    /// Geometric filtration degree: max |b| (deg h = 1, deg h* = deg G = 0).
    pub fn filtration_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.u.degree()).max().unwrap_or(0)
    }

    pub fn y_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.y.degree()).max().unwrap_or(0)
    }

    /// Drop terms with |a| > K and record the cap.
    pub fn truncate_y(&self, k: u32) -> Self {
        let cap = self.y_truncation.map_or(k, |c| c.min(k));
        CherednikElement { terms: self.terms.clone(), y_truncation: Some(cap) }.enforce()
    }

    pub fn without_truncation(&self) -> Self {
        CherednikElement { terms: self.terms.clone(), y_truncation: None }
    }

    /// Apply a map to every coefficient (used to specialize parameters).
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            add_to(&mut terms, k.clone(), f(c));
        }
        CherednikElement { terms, y_truncation: self.y_truncation }
    }

    /// Specialize `t`.
    pub fn at_t(&self, t: &Scalar) -> Self {
        self.map_coeffs(|c| c.substitute_param(0, t).expect("polynomial substitution"))
    }
}

impl fmt::Debug for CherednikElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (format!("y{:?} g{} u{:?}", k.y, k.g, k.u), c.to_string())))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<RcaContext> {
        RcaContext::new(Group::cyclic(2))
    }

    #[test]
    fn rank_one_commutator() {
        let ctx = z2();
        let prod = ctx.mul(&ctx.u(0), &ctx.y(0));
        assert_eq!(ctx.format(&prod), "y1*u1 + t - 2*c1*s1");
        let br = ctx.bracket(&ctx.u(0), &ctx.y(0));
        assert_eq!(ctx.format(&br), "t - 2*c1*s1");
        assert_eq!(br.filtration_degree(), 0);
    }

    #[test]
    fn group_moves_past_u() {
        let ctx = z2();
        let s = ctx.group_element(1);
        // s u is already ordered; u s = s (s^{-1}.u) = -s u
        assert_eq!(ctx.format(&ctx.mul(&s, &ctx.u(0))), "s1*u1");
        assert_eq!(ctx.format(&ctx.mul(&ctx.u(0), &s)), "-s1*u1");
        // s y = (s.y) s = -y s
        assert_eq!(ctx.format(&ctx.mul(&s, &ctx.y(0))), "-y1*s1");
    }

    #[test]
    fn ys_commute() {
        let ctx = RcaContext::new(Group::symmetric(2));
        let a = ctx.mul(&ctx.y(0), &ctx.y(1));
        let b = ctx.mul(&ctx.y(1), &ctx.y(0));
        assert_eq!(a, b);
    }

    #[test]
    fn filtration_degrees() {
        let ctx = z2();
        let y3g = ctx.mul(&ctx.mul(&ctx.mul(&ctx.y(0), &ctx.y(0)), &ctx.y(0)), &ctx.group_element(1));
        assert_eq!(y3g.filtration_degree(), 0);
        assert_eq!(ctx.mul(&ctx.u(0), &ctx.u(0)).filtration_degree(), 2);
        assert_eq!(CherednikElement::zero().filtration_degree(), 0);
    }

    #[test]
    fn truncation() {
        let ctx = z2();
        let y = ctx.y(0);
        let y5u = (0..4).fold(y.clone(), |acc, _| ctx.mul(&acc, &y));
        let y5u = ctx.mul(&y5u, &ctx.u(0));
        assert!(y5u.truncate_y(3).is_zero());
        let e = CherednikElement::one().add(&y).add(&ctx.mul(&y, &y));
        assert_eq!(e.truncate_y(1), CherednikElement::one().add(&y).truncate_y(1));
    }

    #[test]
    fn context_mismatch() {
        let ctx = z2();
        let bad = CherednikElement::monomial(PbwKey::new(Monomial::var(3), 0, Monomial::one()), Scalar::one());
        assert!(matches!(ctx.multiply(&bad, &ctx.y(0)), Err(ForgeError::ContextMismatch(_))));
    }

    #[test]
    fn s3_associativity_on_generators() {
        let ctx = RcaContext::new(Group::symmetric(3));
        let gens: Vec<CherednikElement> = ctx.generators().into_iter().map(|(_, e)| e).collect();
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let l = ctx.mul(&ctx.mul(a, b), c);
                    let r = ctx.mul(a, &ctx.mul(b, c));
                    assert_eq!(l, r);
                }
            }
        }
    }
}
