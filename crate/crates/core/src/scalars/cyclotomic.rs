use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::Ring;
use crate::error::{ForgeError, Result};

pub type Q = BigRational;

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

pub fn q(n: i64) -> Q {
    <Q as Ring>::from_i64(n)
}

pub fn q_frac(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<Q>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Q>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![q(0); n as usize + 1];
    num[0] = q(-1);
    num[n as usize] = q(1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = upoly_divexact(&num, &phi_d);
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

fn trim(v: &mut Vec<Q>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn upoly_divexact(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (quo, rem) = upoly_divrem(a, b);
    debug_assert!(rem.is_empty());
    quo
}

fn upoly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quo = vec![q(0); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let f = &r[r.len() - 1] * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            let v = &r[k + i] - &f * bc;
            r[k + i] = v;
        }
        quo[k] = f;
        r.pop();
        trim(&mut r);
    }
    (quo, r)
}

fn upoly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![q(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Zero::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn upoly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out: Vec<Q> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| q(0));
            let y = b.get(i).cloned().unwrap_or_else(|| q(0));
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Element of the cyclotomic field Q(zeta_N), stored as a polynomial in zeta
/// reduced modulo the N-th cyclotomic polynomial.
///
/// Rational values are always stored with order 1, so they mix freely with
/// elements of any field. Two non-rational values of different orders do not.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Q>,
}

impl CycNum {
    pub fn from_q(v: Q) -> Self {
        let mut coeffs = vec![v];
        trim(&mut coeffs);
        CycNum { order: 1, coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(q(n))
    }

    /// Reduce an arbitrary polynomial in zeta (lowest degree first).
    pub fn from_coeffs(order: u32, coeffs: Vec<Q>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = cyclotomic_polynomial(order);
        let (_, mut rem) = upoly_divrem(&coeffs, &phi);
        trim(&mut rem);
        Self::canonical(order, rem)
    }

    fn canonical(order: u32, coeffs: Vec<Q>) -> Self {
        if coeffs.len() <= 1 {
            CycNum { order: 1, coeffs }
        } else {
            CycNum { order, coeffs }
        }
    }

    /// zeta_N^k for any integer k.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut c = vec![q(0); e + 1];
        c[e] = q(1);
        Self::from_coeffs(order, c)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(q(0)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn common_order(&self, other: &Self) -> Result<u32> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.order),
            (_, true) => Ok(self.order),
            _ if self.order == other.order => Ok(self.order),
            _ => Err(ForgeError::OrderMismatch(self.order, other.order)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let order = self.common_order(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c: Vec<Q> = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => q(0),
            })
            .collect();
        trim(&mut c);
        Ok(Self::canonical(order, c))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let order = self.common_order(other)?;
        if self.is_rational() || other.is_rational() {
            let (s, v) = if self.is_rational() { (self, other) } else { (other, self) };
            let Some(f) = s.as_rational() else { unreachable!() };
            if Zero::is_zero(&f) {
                return Ok(CycNum::from_int(0));
            }
            let c = v.coeffs.iter().map(|x| x * &f).collect();
            return Ok(Self::canonical(order, c));
        }
        Ok(Self::from_coeffs(order, upoly_mul(&self.coeffs, &other.coeffs)))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.coeffs.is_empty() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_q(r.recip()));
        }
        // Extended Euclid: find s with s * self = 1 mod Phi_N.
        let phi = cyclotomic_polynomial(self.order);
        let (mut r0, mut r1) = (phi.to_vec(), self.coeffs.clone());
        let (mut s0, mut s1) = (Vec::<Q>::new(), vec![q(1)]);
        while !r1.is_empty() {
            let (quo, rem) = upoly_divrem(&r0, &r1);
            let s2 = upoly_sub(&s0, &upoly_mul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Phi_N is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let inv_c = r0[0].recip();
        let s: Vec<Q> = s0.iter().map(|x| x * &inv_c).collect();
        Some(Self::from_coeffs(self.order, s))
    }

    /// Complex-conjugate-free "sign" used for printing: true if the leading
    /// rational coefficient is negative.
    pub fn is_negative_rational(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_negative())
    }
}

impl Ring for CycNum {
    fn zero() -> Self {
        CycNum { order: 1, coeffs: Vec::new() }
    }
    fn one() -> Self {
        CycNum::from_int(1)
    }
    fn from_i64(n: i64) -> Self {
        CycNum::from_int(n)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("cyclotomic order mismatch")
    }
    fn sub(&self, o: &Self) -> Self {
        self.try_add(&o.neg()).expect("cyclotomic order mismatch")
    }
    fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("cyclotomic order mismatch")
    }
    fn neg(&self) -> Self {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn try_inv(&self) -> Option<Self> {
        self.inverse()
    }
}

fn fmt_q(f: &mut fmt::Formatter<'_>, v: &Q) -> fmt::Result {
    if v.is_integer() {
        write!(f, "{}", v.numer())
    } else {
        write!(f, "{}/{}", v.numer(), v.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = One::is_one(&a);
            match k {
                0 => fmt_q(f, &a)?,
                _ => {
                    if !unit {
                        fmt_q(f, &a)?;
                        write!(f, "*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{self}")
        } else {
            write!(f, "{self} [z^{}=1]", self.order)
        }
    }
}
