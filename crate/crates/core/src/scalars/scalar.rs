use std::fmt;

use super::cyclotomic::{CycNum, Q};
use super::poly::{gcd, MPoly, Monomial};
use super::ring::Ring;
use crate::error::{ForgeError, Result};

/// Polynomial in the deformation parameters. Variable 0 is `t`, variable j is `c_j`.
pub type ParamPoly = MPoly<CycNum>;

/// Exact ratio of polynomials in `t, c_1, .., c_k` with cyclotomic coefficients.
///
/// Canonical form: numerator and denominator coprime, denominator monic with
/// respect to the graded-lex leading term, and equal to 1 when constant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: ParamPoly,
    den: ParamPoly,
}

impl Scalar {
    pub fn from_poly(p: ParamPoly) -> Self {
        Scalar { num: p, den: MPoly::one() }
    }

    pub fn from_cyc(c: CycNum) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn from_q(v: Q) -> Self {
        Self::from_cyc(CycNum::from_q(v))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_q(super::cyclotomic::q_frac(n, d))
    }

    pub fn t() -> Self {
        Self::from_poly(MPoly::var(0))
    }

    /// Parameter of the j-th reflection class (1-based, as printed).
    pub fn c(j: usize) -> Self {
        assert!(j >= 1, "parameter classes are numbered from 1");
        Self::from_poly(MPoly::var(j))
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_cyc(&self) -> Option<CycNum> {
        (self.num.is_constant() && self.is_polynomial()).then(|| self.num.constant_term())
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.as_cyc().and_then(|c| c.as_rational())
    }

    pub fn from_fraction(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(ForgeError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.constant_term().try_inv().expect("nonzero constant");
            return Scalar { num: num.scale(&inv), den: MPoly::one() };
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = d.leading().unwrap().1.clone();
        let inv = lc.try_inv().unwrap();
        n = n.scale(&inv);
        d = d.scale(&inv);
        if d.is_constant() {
            d = MPoly::one();
        }
        Scalar { num: n, den: d }
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        let inv = o.try_inv().ok_or(ForgeError::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    /// Specialize one parameter (0 = t, j = c_j) to a value.
    pub fn substitute_param(&self, var: usize, value: &Scalar) -> Result<Self> {
        let subst = |p: &ParamPoly| -> Scalar {
            let mut acc = Scalar::zero();
            for (m, c) in p.terms() {
                let e = m.get(var);
                let rest = Scalar::from_poly(MPoly::term(m.with(var, 0), c.clone()));
                acc = acc.add(&rest.mul(&value.pow(e)));
            }
            acc
        };
        subst(&self.num).try_div(&subst(&self.den))
    }

    /// Number of parameter variables in use (1 + highest c index).
    pub fn max_param(&self) -> Option<usize> {
        self.num.max_var().max(self.den.max_var())
    }

    pub fn exact_div_int(&self, n: i64) -> Self {
        self.mul(&Scalar::from_frac(1, n))
    }

    /// True when the scalar prints as a single signed term (no parentheses needed).
    fn is_atomic(&self) -> bool {
        self.is_polynomial()
            && self.num.num_terms() == 1
            && self.num.terms().next().unwrap().1.is_rational()
    }

    /// Sign and magnitude split used by printers of sums.
    pub fn sign_split(&self) -> (bool, Scalar) {
        if self.is_atomic() && self.num.terms().next().unwrap().1.is_negative_rational() {
            (true, self.neg())
        } else {
            (false, self.clone())
        }
    }

    /// Render as a factor in a product: parenthesized unless atomic.
    pub fn factor_string(&self) -> String {
        if self.is_atomic() {
            self.to_string()
        } else {
            format!("({self})")
        }
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar { num: MPoly::zero(), den: MPoly::one() }
    }
    fn one() -> Self {
        Scalar { num: MPoly::one(), den: MPoly::one() }
    }
    fn from_i64(n: i64) -> Self {
        Self::from_cyc(CycNum::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_polynomial() && o.is_polynomial() {
            return Scalar { num: self.num.add(&o.num), den: MPoly::one() };
        }
        let g = gcd(&self.den, &o.den);
        let a = o.den.div_exact(&g).unwrap();
        let b = self.den.div_exact(&g).unwrap();
        Self::reduce(self.num.mul(&a).add(&o.num.mul(&b)), self.den.mul(&a))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_polynomial() && o.is_polynomial() {
            return Scalar { num: self.num.mul(&o.num), den: MPoly::one() };
        }
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
    fn try_inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }
}

fn param_name(i: usize) -> String {
    if i == 0 {
        "t".to_string()
    } else {
        format!("c{i}")
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    (0..m.len())
        .filter(|&i| m.get(i) > 0)
        .map(|i| match m.get(i) {
            1 => param_name(i),
            e => format!("{}^{e}", param_name(i)),
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn fmt_poly(p: &ParamPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let (neg, mag) = if c.is_negative_rational() { (true, c.neg()) } else { (false, c.clone()) };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = fmt_monomial(m);
        let coeff = if mag.is_rational() { mag.to_string() } else { format!("({mag})") };
        if mono.is_empty() {
            out.push_str(&coeff);
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{coeff}*{mono}"));
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", fmt_poly(&self.num))
        } else {
            let n = fmt_poly(&self.num);
            let d = fmt_poly(&self.den);
            let wrap = |s: String, p: &ParamPoly| if p.num_terms() > 1 { format!("({s})") } else { s };
            write!(f, "{}/{}", wrap(n, &self.num), wrap(d, &self.den))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl From<CycNum> for Scalar {
    fn from(c: CycNum) -> Self {
        Scalar::from_cyc(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    #[test]
    fn rank_one_dunkl_coefficient() {
        // 2c / (1 - lambda) with lambda = -1
        let lambda = s(-1);
        let v = s(2).mul(&Scalar::c(1)).try_div(&s(1).sub(&lambda)).unwrap();
        assert_eq!(v, Scalar::c(1));
    }

    #[test]
    fn t_over_t() {
        assert!(Scalar::t().try_div(&Scalar::t()).unwrap().is_one());
    }

    #[test]
    fn commutativity_cancels() {
        let a = Scalar::c(1).add(&Scalar::c(2));
        let b = Scalar::c(2).add(&Scalar::c(1));
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(s(1).try_div(&s(0)), Err(ForgeError::DivisionByZero)));
    }

    #[test]
    fn fractions_reduce() {
        let t = Scalar::t();
        let c = Scalar::c(1);
        // (t^2 - c^2) / (t + c) = t - c
        let v = t.mul(&t).sub(&c.mul(&c)).try_div(&t.add(&c)).unwrap();
        assert_eq!(v, t.sub(&c));
        assert!(v.is_polynomial());
        // 1/(t+c) + 1/(t-c) = 2t/(t^2-c^2)
        let a = s(1).try_div(&t.add(&c)).unwrap();
        let b = s(1).try_div(&t.sub(&c)).unwrap();
        let want = s(2).mul(&t).try_div(&t.mul(&t).sub(&c.mul(&c))).unwrap();
        assert_eq!(a.add(&b), want);
    }

    #[test]
    fn substitution() {
        let v = Scalar::t().mul(&Scalar::c(1)).add(&Scalar::t());
        assert_eq!(v.substitute_param(0, &s(1)).unwrap(), Scalar::c(1).add(&s(1)));
    }

    #[test]
    fn printing() {
        let v = Scalar::t().sub(&s(2).mul(&Scalar::c(1)));
        assert_eq!(v.to_string(), "t - 2*c1");
        assert_eq!(s(2).mul(&Scalar::c(1)).neg().sign_split().1.to_string(), "2*c1");
        let f = s(1).try_div(&Scalar::t().add(&s(1))).unwrap();
        assert_eq!(f.to_string(), "1/(t + 1)");
    }
}
