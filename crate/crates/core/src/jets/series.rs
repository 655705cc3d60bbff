//! Truncated power series, formal vector fields and jet automorphisms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{ForgeError, Result};
use crate::scalars::ring::invert_matrix;
use crate::scalars::{binom, MPoly, Monomial, Ring, Scalar};

/// Rings that receive parameter scalars.
pub trait ScalarAlgebra: Ring {
    fn from_scalar(s: &Scalar) -> Self;
}

impl ScalarAlgebra for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

/// `Scalar[t_0, t_1, ...] / (t_i^2)`: first-order infinitesimal directions.
/// Keys are bit masks of the t's present in a monomial.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Infinitesimal {
    parts: BTreeMap<u32, Scalar>,
}

impl Infinitesimal {
    /// The infinitesimal t_k.
    pub fn t(k: usize) -> Self {
        let mut parts = BTreeMap::new();
        parts.insert(1u32 << k, Scalar::one());
        Infinitesimal { parts }
    }

    pub fn constant_part(&self) -> Scalar {
        self.parts.get(&0).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of t_k, itself a function of the other t's.
    pub fn d(&self, k: usize) -> Self {
        let bit = 1u32 << k;
        Infinitesimal {
            parts: self.parts.iter().filter(|(m, _)| *m & bit != 0).map(|(m, c)| (m & !bit, c.clone())).collect(),
        }
    }

    /// Set t_k = 0.
    pub fn at_zero(&self, k: usize) -> Self {
        let bit = 1u32 << k;
        Infinitesimal { parts: self.parts.iter().filter(|(m, _)| *m & bit == 0).map(|(m, c)| (*m, c.clone())).collect() }
    }

    fn insert(parts: &mut BTreeMap<u32, Scalar>, m: u32, c: Scalar) {
        crate::cherednik::add_to(parts, m, c);
    }
}

impl Ring for Infinitesimal {
    fn zero() -> Self {
        Infinitesimal::default()
    }
    fn one() -> Self {
        Self::from_scalar(&Scalar::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::from_scalar(&Scalar::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut parts = self.parts.clone();
        for (m, c) in &o.parts {
            Self::insert(&mut parts, *m, c.clone());
        }
        Infinitesimal { parts }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut parts = BTreeMap::new();
        for (m1, c1) in &self.parts {
            for (m2, c2) in &o.parts {
                if m1 & m2 == 0 {
                    Self::insert(&mut parts, m1 | m2, c1.mul(c2));
                }
            }
        }
        Infinitesimal { parts }
    }
    fn neg(&self) -> Self {
        Infinitesimal { parts: self.parts.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }
    fn try_inv(&self) -> Option<Self> {
        // (c + n)^{-1} = c^{-1} sum_k (-n/c)^k, finite since n is nilpotent
        let c_inv = self.constant_part().try_inv()?;
        let n = Infinitesimal { parts: self.parts.iter().filter(|(m, _)| **m != 0).map(|(m, c)| (*m, c.clone())).collect() };
        let step = n.mul(&Self::from_scalar(&c_inv)).neg();
        let mut acc = Self::one();
        let mut pow = Self::one();
        for _ in 0..32 {
            pow = pow.mul(&step);
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Some(acc.mul(&Self::from_scalar(&c_inv)))
    }
}

impl ScalarAlgebra for Infinitesimal {
    fn from_scalar(s: &Scalar) -> Self {
        let mut parts = BTreeMap::new();
        Self::insert(&mut parts, 0, s.clone());
        Infinitesimal { parts }
    }
}

impl fmt::Debug for Infinitesimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.parts.iter()).finish()
    }
}

/// Power series in `vars` variables known modulo m^{order+1}.
/// `order = None` marks an exact polynomial.
#[derive(Clone, PartialEq)]
pub struct JetPoly<C: Ring = Scalar> {
    poly: MPoly<C>,
    order: Option<u32>,
}

fn min_cap(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

impl<C: Ring> JetPoly<C> {
    pub fn new(poly: MPoly<C>, order: Option<u32>) -> Self {
        let poly = match order {
            Some(k) => poly.truncate(k),
            None => poly,
        };
        JetPoly { poly, order }
    }

    pub fn exact(poly: MPoly<C>) -> Self {
        JetPoly { poly, order: None }
    }

    pub fn var(i: usize, order: Option<u32>) -> Self {
        Self::new(MPoly::var(i), order)
    }

    pub fn constant(c: C, order: Option<u32>) -> Self {
        Self::new(MPoly::constant(c), order)
    }

    pub fn poly(&self) -> &MPoly<C> {
        &self.poly
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn with_order(&self, k: u32) -> Self {
        Self::new(self.poly.clone(), Some(self.order.map_or(k, |o| o.min(k))))
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.poly.coeff(m)
    }

    pub fn constant_term(&self) -> C {
        self.poly.constant_term()
    }

    pub fn derivative(&self, i: usize) -> Self {
        JetPoly { poly: self.poly.derivative(i), order: self.order }
    }

    /// Substitute series for the variables. Valid when the substituted series
    /// have nilpotent constant terms, or when `self` is exact.
    pub fn compose(&self, subs: &[JetPoly<C>]) -> Self {
        let cap = subs.iter().fold(self.order, |acc, s| min_cap(acc, s.order));
        let polys: Vec<MPoly<C>> = subs.iter().map(|s| s.poly.clone()).collect();
        JetPoly::new(self.poly.substitute(&polys, |c| c.clone(), cap), cap)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> JetPoly<D> {
        JetPoly { poly: self.poly.map_coeffs(f), order: self.order }
    }
}

impl<C: Ring> Ring for JetPoly<C> {
    fn zero() -> Self {
        Self::exact(MPoly::zero())
    }
    fn one() -> Self {
        Self::exact(MPoly::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::exact(MPoly::constant(C::from_i64(n)))
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Self::new(self.poly.add(&o.poly), min_cap(self.order, o.order))
    }
    fn sub(&self, o: &Self) -> Self {
        Self::new(self.poly.sub(&o.poly), min_cap(self.order, o.order))
    }
    fn mul(&self, o: &Self) -> Self {
        let cap = min_cap(self.order, o.order);
        JetPoly { poly: self.poly.mul_truncated(&o.poly, cap), order: cap }
    }
    fn neg(&self) -> Self {
        JetPoly { poly: self.poly.neg(), order: self.order }
    }
    fn try_inv(&self) -> Option<Self> {
        let c0 = self.constant_term();
        let c_inv = c0.try_inv()?;
        if self.poly.is_constant() {
            return Some(JetPoly { poly: MPoly::constant(c_inv), order: self.order });
        }
        let k = self.order?;
        let n = self.poly.sub(&MPoly::constant(c0));
        let step = JetPoly::new(n.scale(&c_inv).neg(), Some(k));
        let mut acc = JetPoly::constant(C::one(), Some(k));
        let mut pow = acc.clone();
        for _ in 0..=k {
            pow = pow.mul(&step);
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Some(JetPoly { poly: acc.poly.scale(&c_inv), order: Some(k) })
    }
}

impl<C: Ring> fmt::Debug for JetPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod deg>{:?}", self.poly, self.order)
    }
}

/// Element of W_{m,K}: `sum_j v_j d_j`, components known mod m^{K+1}.
#[derive(Clone, PartialEq, Debug)]
pub struct FormalVectorFieldJet<C: Ring = Scalar> {
    pub components: Vec<MPoly<C>>,
    pub order: u32,
}

impl<C: Ring> FormalVectorFieldJet<C> {
    pub fn new(components: Vec<MPoly<C>>, order: u32) -> Self {
        FormalVectorFieldJet { components: components.into_iter().map(|p| p.truncate(order)).collect(), order }
    }

    pub fn zero(m: usize, order: u32) -> Self {
        Self::new(vec![MPoly::zero(); m], order)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MPoly::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.components.iter().zip(&o.components).map(|(a, b)| a.add(b)).collect(), self.order.min(o.order))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.components.iter().zip(&o.components).map(|(a, b)| a.sub(b)).collect(), self.order.min(o.order))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.components.iter().map(|a| a.scale(c)).collect(), self.order)
    }

    /// Derivation `v(p) = sum_i v_i d_i p`, computed on representatives.
    pub fn apply(&self, p: &MPoly<C>) -> MPoly<C> {
        self.components
            .iter()
            .enumerate()
            .fold(MPoly::zero(), |acc, (i, vi)| acc.add(&vi.mul(&p.derivative(i))))
    }
}

/// `[v, w] = sum (v_i dw_j/dy_i - w_i dv_j/dy_i) d_j`, on the polynomial
/// representatives, truncated at the common order.
pub fn w_bracket<C: Ring>(v: &FormalVectorFieldJet<C>, w: &FormalVectorFieldJet<C>) -> Result<FormalVectorFieldJet<C>> {
    if v.dim() != w.dim() {
        return Err(ForgeError::Shape(format!("vector fields on C^{} and C^{}", v.dim(), w.dim())));
    }
    let comps = (0..v.dim()).map(|j| v.apply(&w.components[j]).sub(&w.apply(&v.components[j]))).collect();
    Ok(FormalVectorFieldJet::new(comps, v.order.min(w.order)))
}

/// Basis `x^mu d_j`, `|mu| <= K`, of W_{m,K}.
pub fn w_basis(m: usize, k: u32) -> Vec<FormalVectorFieldJet> {
    let mut out = Vec::new();
    for j in 0..m {
        for mu in Monomial::all_up_to(m, k) {
            let mut comps = vec![MPoly::zero(); m];
            comps[j] = MPoly::term(mu, Scalar::one());
            out.push(FormalVectorFieldJet::new(comps, k));
        }
    }
    out
}

pub fn w_dimension(m: usize, k: u32) -> u128 {
    m as u128 * binom(m as u32 + k, m as u32)
}

/// Coordinates of an element of Aut_{m,K}: (component, monomial) with
/// `1 <= |mu| <= K`.
pub fn aut_parameters(m: usize, k: u32) -> Vec<(usize, Monomial)> {
    (0..m).flat_map(|j| Monomial::all_up_to(m, k).into_iter().filter(|mu| !mu.is_one()).map(move |mu| (j, mu))).collect()
}

/// Origin-fixing jet of a coordinate change, components mod m^{K+1}.
#[derive(Clone, PartialEq, Debug)]
pub struct JetAutomorphism {
    pub components: Vec<MPoly<Scalar>>,
    pub order: u32,
}

impl JetAutomorphism {
    pub fn new(components: Vec<MPoly<Scalar>>, order: u32) -> Result<Self> {
        let f = JetAutomorphism { components: components.into_iter().map(|p| p.truncate(order)).collect(), order };
        if f.components.iter().any(|p| !p.constant_term().is_zero()) {
            return Err(ForgeError::Invalid("jet automorphisms fix the origin".into()));
        }
        if invert_matrix(&f.linear_part()).is_none() {
            return Err(ForgeError::Singular("linear part of the jet".into()));
        }
        Ok(f)
    }

    pub fn identity(m: usize, order: u32) -> Self {
        JetAutomorphism { components: (0..m).map(MPoly::var).collect(), order }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn linear_part(&self) -> Vec<Vec<Scalar>> {
        let m = self.dim();
        (0..m).map(|i| (0..m).map(|j| self.components[i].coeff(&Monomial::var(j))).collect()).collect()
    }

    pub fn as_chart(&self) -> Vec<JetPoly> {
        self.components.iter().map(|p| JetPoly::new(p.clone(), Some(self.order))).collect()
    }

    /// `f o g`.
    pub fn compose(&self, g: &JetAutomorphism) -> Result<JetAutomorphism> {
        if self.dim() != g.dim() {
            return Err(ForgeError::Shape("jets of different dimension".into()));
        }
        let k = self.order.min(g.order);
        let comps = self.components.iter().map(|p| p.substitute(&g.components, |c| c.clone(), Some(k))).collect();
        Ok(JetAutomorphism { components: comps, order: k })
    }

    /// Inverse by the fixed point `f^{-1} = L^{-1}(y - N(f^{-1}))`.
    pub fn invert(&self) -> Result<JetAutomorphism> {
        let m = self.dim();
        let k = self.order;
        let lin = self.linear_part();
        let linv = invert_matrix(&lin).ok_or_else(|| ForgeError::Singular("linear part of the jet".into()))?;
        let nonlinear: Vec<MPoly<Scalar>> = self
            .components
            .iter()
            .map(|p| MPoly::from_terms(p.terms().filter(|(m, _)| m.degree() >= 2).map(|(m, c)| (m.clone(), c.clone()))))
            .collect();
        let apply_linv = |v: &[MPoly<Scalar>]| -> Vec<MPoly<Scalar>> {
            (0..m).map(|i| (0..m).fold(MPoly::zero(), |acc, j| acc.add(&v[j].scale(&linv[i][j])))).collect()
        };
        let ys: Vec<MPoly<Scalar>> = (0..m).map(MPoly::var).collect();
        let mut g = apply_linv(&ys);
        for _ in 0..k {
            let n_of_g: Vec<MPoly<Scalar>> =
                nonlinear.iter().map(|p| p.substitute(&g, |c| c.clone(), Some(k))).collect();
            let rhs: Vec<MPoly<Scalar>> = ys.iter().zip(&n_of_g).map(|(y, n)| y.sub(n)).collect();
            g = apply_linv(&rhs).into_iter().map(|p| p.truncate(k)).collect();
        }
        Ok(JetAutomorphism { components: g, order: k })
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

    #[test]
    fn bracket_examples() {
        let xd = FormalVectorFieldJet::new(vec![x(0)], 3);
        let d = FormalVectorFieldJet::new(vec![MPoly::one()], 3);
        assert_eq!(w_bracket(&xd, &d).unwrap(), d.scale(&s(-1)));
        assert!(w_bracket(&xd, &xd).unwrap().is_zero());
        let two = FormalVectorFieldJet::zero(2, 3);
        assert!(w_bracket(&xd, &two).is_err());
    }

    #[test]
    fn dimensions() {
        for (m, k) in [(1usize, 3u32), (2, 2), (3, 1)] {
            assert_eq!(w_basis(m, k).len() as u128, w_dimension(m, k));
        }
        assert_eq!(aut_parameters(1, 2).len(), 2);
    }

    #[test]
    fn series_inverse() {
        let f = JetAutomorphism::new(vec![x(0).add(&x(0).mul(&x(0)))], 3).unwrap();
        let g = f.invert().unwrap();
        let want = x(0).sub(&x(0).pow(2)).add(&x(0).pow(3).scale(&s(2)));
        assert_eq!(g.components[0], want);
        assert_eq!(f.compose(&g).unwrap(), JetAutomorphism::identity(1, 3));
        assert_eq!(g.compose(&f).unwrap(), JetAutomorphism::identity(1, 3));
    }

    #[test]
    fn singular_jets_are_rejected() {
        assert!(JetAutomorphism::new(vec![x(0).mul(&x(0))], 2).is_err());
        assert!(JetAutomorphism::new(vec![x(0).add(&MPoly::one())], 2).is_err());
    }

    #[test]
    fn infinitesimal_arithmetic() {
        let t0 = Infinitesimal::t(0);
        let t1 = Infinitesimal::t(1);
        assert!(t0.mul(&t0).is_zero());
        let u = Infinitesimal::one().add(&t0).add(&t1);
        let inv = u.try_inv().unwrap();
        assert!(u.mul(&inv).is_one());
        assert_eq!(t0.mul(&t1).d(1), t0);
        assert!(t0.try_inv().is_none());
    }

    #[test]
    fn jet_inverse_of_unit() {
        let p = JetPoly::new(MPoly::one().add(&x(0)), Some(3));
        let inv = p.try_inv().unwrap();
        assert!(p.mul(&inv).is_one() || p.mul(&inv).poly().sub(&MPoly::one()).is_zero());
    }
}
