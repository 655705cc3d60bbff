use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::ring::Ring;

/// Exponent vector, trailing zeros trimmed so vectors of different lengths
/// compare correctly. Ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u16; 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        let mut v: SmallVec<[u16; 6]> = exps.iter().map(|&e| e as u16).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = e;
        Self::from_exps(&v)
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0) as u32
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.get(i)).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Monomial((0..n).map(|i| (self.get(i) + o.get(i)) as u16).collect())
    }

    pub fn divides(&self, o: &Self) -> bool {
        (0..self.0.len()).all(|i| self.get(i) <= o.get(i))
    }

    /// `o / self`, assuming divisibility.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if !o.divides(self) {
            return None;
        }
        let v: Vec<u32> = (0..self.0.len()).map(|i| self.get(i) - o.get(i)).collect();
        Some(Self::from_exps(&v))
    }

    pub fn with(&self, i: usize, e: u32) -> Self {
        let mut v = self.exps(self.0.len().max(i + 1));
        v[i] = e;
        Self::from_exps(&v)
    }

    /// Increment variable `i` by `d` (may be negative; caller guarantees it stays >= 0).
    pub fn shift(&self, i: usize, d: i32) -> Self {
        self.with(i, (self.get(i) as i32 + d) as u32)
    }

    /// Highest variable index with a positive exponent.
    pub fn max_var(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// All exponent vectors in `n` variables of total degree exactly `d`.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(Monomial::from_exps(prefix));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(n, d, &mut Vec::new(), &mut out);
        out
    }

    /// All exponent vectors in `n` variables of total degree at most `d`.
    pub fn all_up_to(n: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Self::all_of_degree(n, k)).collect()
    }

    /// Componentwise `self <= o`.
    pub fn le(&self, o: &Self) -> bool {
        self.divides(o)
    }

    /// Exponent-vectors `g` with `0 <= g <= self` componentwise.
    pub fn sub_monomials(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        for i in 0..self.0.len() {
            let top = self.get(i);
            let mut next = Vec::with_capacity(out.len() * (top as usize + 1));
            for m in &out {
                for e in 0..=top {
                    next.push(m.with(i, e));
                }
            }
            out = next;
        }
        out
    }

    /// Multinomial coefficient pieces.
    pub fn factorial(&self) -> u128 {
        self.0.iter().map(|&e| (1..=e as u128).product::<u128>()).product()
    }

    /// prod_i binom(self_i, o_i)
    pub fn binom(&self, o: &Self) -> u128 {
        (0..self.0.len().max(o.0.len()))
            .map(|i| binom(self.get(i), o.get(i)))
            .product()
    }

    /// prod_i self_i! / (self_i - o_i)!
    pub fn falling(&self, o: &Self) -> u128 {
        (0..self.0.len().max(o.0.len()))
            .map(|i| {
                let (a, b) = (self.get(i) as u128, o.get(i) as u128);
                if b > a {
                    0
                } else {
                    ((a - b + 1)..=a).product::<u128>()
                }
            })
            .product()
    }
}

pub fn binom(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            let n = self.0.len().max(o.0.len());
            for i in 0..n {
                match self.get(i).cmp(&o.get(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Sparse multivariate polynomial with coefficients in a ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Default for MPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Ring> MPoly<C> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), C::one())
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.get(v)).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))))
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (k.mul(m), v.mul(c))))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_truncated(o, None)
    }

    /// Product keeping only monomials of total degree `<= cap`.
    pub fn mul_truncated(&self, o: &Self, cap: Option<u32>) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some(k) = cap {
                    if m1.degree() + m2.degree() > k {
                        continue;
                    }
                }
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn truncate(&self, cap: u32) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, v: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.get(v) > 0).map(|(m, c)| {
            let e = m.get(v);
            (m.with(v, e - 1), c.scale_i64(e as i64))
        }))
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Substitute a polynomial (in an arbitrary ring `R` that the coefficients
    /// embed into) for every variable. `subs[i]` replaces variable i; `lift`
    /// embeds coefficients. Products are truncated at `cap` if given.
    pub fn substitute<R: Ring>(
        &self,
        subs: &[MPoly<R>],
        lift: impl Fn(&C) -> R,
        cap: Option<u32>,
    ) -> MPoly<R> {
        let mut powers: Vec<Vec<MPoly<R>>> = subs.iter().map(|s| vec![MPoly::one(), s.clone()]).collect();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = MPoly::constant(lift(c));
            for i in 0..m.len() {
                let e = m.get(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul_truncated(&subs[i], cap);
                    powers[i].push(next);
                }
                acc = acc.mul_truncated(&powers[i][e], cap);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.try_inv()?;
        let mut r = self.clone();
        let mut quo = Self::zero();
        while let Some((m, c)) = r.leading() {
            let qm = m.div(lm)?;
            let qc = c.mul(&lc_inv);
            r = r.sub(&d.mul_term(&qm, &qc));
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Coefficients with respect to variable `v`, as polynomials free of `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.get(v) as usize].add_term(m.with(v, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                out.add_term(m.with(v, k as u32), c.clone());
            }
        }
        out
    }

    /// Divide every coefficient by the leading one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.try_inv().expect("leading coefficient must be a unit");
                self.scale(&inv)
            }
        }
    }

    pub fn eval_var(&self, v: usize, value: &C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.get(v);
            out.add_term(m.with(v, 0), c.mul(&value.pow(e)));
        }
        out
    }
}

/// Greatest common divisor of multivariate polynomials over a field,
/// normalized monic. Recursive primitive polynomial remainder sequences.
pub fn gcd<C: Ring>(a: &MPoly<C>, b: &MPoly<C>) -> MPoly<C> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let v = a.max_var().max(b.max_var()).unwrap();
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if da == 0 {
        return gcd(a, &content(b, v));
    }
    if db == 0 {
        return gcd(&content(a, v), b);
    }
    let (ca, cb) = (content(a, v), content(b, v));
    let cg = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let (mut r0, mut r1) = if da >= db { (pa, pb) } else { (pb, pa) };
    loop {
        let r = pseudo_rem(&r0, &r1, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            r1 = MPoly::one();
            break;
        }
        r0 = r1;
        r1 = primitive_part(&r, v);
    }
    cg.mul(&primitive_part(&r1, v)).monic()
}

fn content<C: Ring>(a: &MPoly<C>, v: usize) -> MPoly<C> {
    let mut g = MPoly::zero();
    for c in a.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return MPoly::one();
        }
    }
    g
}

fn primitive_part<C: Ring>(a: &MPoly<C>, v: usize) -> MPoly<C> {
    let c = content(a, v);
    a.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` as polynomials in variable `v`, up to a
/// factor free of `v`.
fn pseudo_rem<C: Ring>(a: &MPoly<C>, b: &MPoly<C>, v: usize) -> MPoly<C> {
    let db = b.degree_in(v);
    let bc = b.coeffs_in(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coeffs_in(v)[dr as usize].clone();
        let shift = MPoly::term(Monomial::var_pow(v, dr - db), C::one());
        r = r.mul(&lb).sub(&b.mul(&lr).mul(&shift));
    }
    r
}

impl<C: Ring + fmt::Debug> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::cyclotomic::{q, Q};

    fn x(i: usize) -> MPoly<Q> {
        MPoly::var(i)
    }

    fn c(n: i64) -> MPoly<Q> {
        MPoly::constant(q(n))
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exps(&[2, 0]);
        let b = Monomial::from_exps(&[1, 1]);
        let d = Monomial::from_exps(&[0, 3]);
        assert!(a > b);
        assert!(d > a);
        assert_eq!(Monomial::from_exps(&[1, 0, 0]), Monomial::var(0));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(Monomial::all_up_to(2, 2).len(), 6);
        assert_eq!(Monomial::all_up_to(3, 1).len(), 4);
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
    }

    #[test]
    fn exact_division() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(1));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.add(&c(1)).div_exact(&a).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let g = x(0).mul(&x(1)).add(&c(2));
        let a = g.mul(&x(0).add(&c(3)));
        let b = g.mul(&x(1).sub(&x(0)).mul(&x(1)));
        assert_eq!(gcd(&a, &b), g.monic());
        assert!(gcd(&x(0), &x(1)).is_constant());
    }

    #[test]
    fn substitution() {
        // (x0 + 1)^2 with x0 -> x1 - 1 gives x1^2
        let p = x(0).add(&c(1)).pow(2);
        let s = p.substitute(&[x(1).sub(&c(1))], |v| v.clone(), None);
        assert_eq!(s, x(1).pow(2));
    }
}
