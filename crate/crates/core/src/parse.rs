//! Command line syntax for algebra elements, differential operators and
//! vectors, on top of the shared expression parser.

use crate::cherednik::{CherednikElement, RcaContext};
use crate::error::{ForgeError, Result};
use crate::jets::JetDiffOp;
use crate::scalars::literal::ScalarEval;
use crate::scalars::{parse_expr, CycNum, Evaluator, MPoly, Monomial, Ring, Scalar, Q};

fn index(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok())
}

/// `y1`, `u2`, `s1` (first reflection), `g3` (group element by index) and
/// scalar identifiers.
pub struct ElementEval<'a> {
    pub ctx: &'a RcaContext,
}

impl Evaluator for ElementEval<'_> {
    type Value = CherednikElement;

    fn number(&self, v: Q) -> CherednikElement {
        CherednikElement::one().scale(&Scalar::from_q(v))
    }

    fn ident(&self, name: &str) -> Result<CherednikElement> {
        let l = self.ctx.dim();
        let bad = || ForgeError::Parse(format!("unknown identifier '{name}'"));
        if let Some(s) = ScalarEval::scalar_ident(self.ctx.group().cyclotomic_order(), name) {
            return Ok(self.ctx.scalar(s));
        }
        if let Some(j) = index(name, "y").filter(|&j| (1..=l).contains(&j)) {
            return Ok(self.ctx.y(j - 1));
        }
        if let Some(i) = index(name, "u").filter(|&i| (1..=l).contains(&i)) {
            return Ok(self.ctx.u(i - 1));
        }
        if let Some(k) = index(name, "s") {
            let r = self.ctx.reflections().get(k.wrapping_sub(1)).ok_or_else(bad)?;
            return Ok(self.ctx.group_element(r.element));
        }
        if let Some(g) = index(name, "g").filter(|&g| g < self.ctx.group().order()) {
            return Ok(self.ctx.group_element(g));
        }
        Err(bad())
    }

    fn add(&self, a: &CherednikElement, b: &CherednikElement) -> Result<CherednikElement> {
        Ok(a.add(b))
    }

    fn mul(&self, a: &CherednikElement, b: &CherednikElement) -> Result<CherednikElement> {
        self.ctx.multiply(a, b)
    }

    fn div(&self, a: &CherednikElement, b: &CherednikElement) -> Result<CherednikElement> {
        let s = scalar_part(b).ok_or_else(|| ForgeError::Parse("division by a non-scalar element".into()))?;
        Ok(a.scale(&Scalar::one().try_div(&s)?))
    }
}

fn scalar_part(x: &CherednikElement) -> Option<Scalar> {
    if x.num_terms() != 1 {
        return None;
    }
    let (k, c) = x.terms().next()?;
    (k.y.is_one() && k.u.is_one() && k.g == 0).then(|| c.clone())
}

pub fn parse_element(ctx: &RcaContext, s: &str) -> Result<CherednikElement> {
    ElementEval { ctx }.eval(&parse_expr(s)?)
}

/// `x1`, `d1` (or `x`, `d` in one variable) and scalar identifiers.
pub struct OperatorEval {
    pub vars: usize,
}

impl Evaluator for OperatorEval {
    type Value = JetDiffOp<Scalar>;

    fn number(&self, v: Q) -> JetDiffOp<Scalar> {
        JetDiffOp::multiplication(self.vars, &MPoly::constant(Scalar::from_q(v)), None)
    }

    fn ident(&self, name: &str) -> Result<JetDiffOp<Scalar>> {
        let n = self.vars;
        let var = |p: &str| {
            if n == 1 && name == p {
                Some(0)
            } else {
                index(name, p).filter(|&i| (1..=n).contains(&i)).map(|i| i - 1)
            }
        };
        if let Some(i) = var("x") {
            return Ok(JetDiffOp::multiplication(n, &MPoly::var(i), None));
        }
        if let Some(i) = var("d") {
            return Ok(JetDiffOp::partial(n, i));
        }
        ScalarEval::scalar_ident(1, name)
            .map(|s| JetDiffOp::multiplication(n, &MPoly::constant(s), None))
            .ok_or_else(|| ForgeError::Parse(format!("unknown identifier '{name}'")))
    }

    fn add(&self, a: &JetDiffOp<Scalar>, b: &JetDiffOp<Scalar>) -> Result<JetDiffOp<Scalar>> {
        Ok(a.add(b))
    }

    fn mul(&self, a: &JetDiffOp<Scalar>, b: &JetDiffOp<Scalar>) -> Result<JetDiffOp<Scalar>> {
        Ok(a.mul(b))
    }

    fn div(&self, a: &JetDiffOp<Scalar>, b: &JetDiffOp<Scalar>) -> Result<JetDiffOp<Scalar>> {
        let one = (Monomial::one(), Monomial::one());
        let s = match b.terms().collect::<Vec<_>>().as_slice() {
            [(k, c)] if **k == one => (*c).clone(),
            _ => return Err(ForgeError::Parse("division by a non-constant operator".into())),
        };
        Ok(a.scale(&Scalar::one().try_div(&s)?))
    }
}

pub fn parse_operator(vars: usize, s: &str) -> Result<JetDiffOp<Scalar>> {
    OperatorEval { vars }.eval(&parse_expr(s)?)
}

/// Linear combination of `e1, ..., el` with cyclotomic coefficients.
pub fn parse_vector(s: &str, dim: usize, order: u32) -> Result<Vec<CycNum>> {
    struct VecEval {
        dim: usize,
        order: u32,
    }
    // (constant, vector part)
    type V = (CycNum, Vec<CycNum>);
    impl Evaluator for VecEval {
        type Value = V;
        fn number(&self, v: Q) -> V {
            (CycNum::from_q(v), vec![CycNum::zero(); self.dim])
        }
        fn ident(&self, name: &str) -> Result<V> {
            if name == "z" {
                return Ok((CycNum::root_of_unity(self.order, 1), vec![CycNum::zero(); self.dim]));
            }
            let i = index(name, "e")
                .filter(|&i| (1..=self.dim).contains(&i))
                .ok_or_else(|| ForgeError::Parse(format!("unknown identifier '{name}'")))?;
            let mut v = vec![CycNum::zero(); self.dim];
            v[i - 1] = CycNum::one();
            Ok((CycNum::zero(), v))
        }
        fn add(&self, a: &V, b: &V) -> Result<V> {
            Ok((a.0.add(&b.0), a.1.iter().zip(&b.1).map(|(x, y)| x.add(y)).collect()))
        }
        fn mul(&self, a: &V, b: &V) -> Result<V> {
            let flat = |v: &V| v.1.iter().all(CycNum::is_zero);
            if flat(a) {
                Ok((a.0.mul(&b.0), b.1.iter().map(|x| a.0.mul(x)).collect()))
            } else if flat(b) {
                Ok((a.0.mul(&b.0), a.1.iter().map(|x| b.0.mul(x)).collect()))
            } else {
                Err(ForgeError::Parse("product of two vectors".into()))
            }
        }
        fn div(&self, a: &V, b: &V) -> Result<V> {
            if !b.1.iter().all(CycNum::is_zero) || b.0.is_zero() {
                return Err(ForgeError::Parse("division by a vector or zero".into()));
            }
            let inv = b.0.inverse().ok_or(ForgeError::DivisionByZero)?;
            Ok((a.0.mul(&inv), a.1.iter().map(|x| x.mul(&inv)).collect()))
        }
    }
    let (c, v) = VecEval { dim, order }.eval(&parse_expr(s)?)?;
    if !c.is_zero() {
        return Err(ForgeError::Parse(format!("\"{s}\" has a constant part")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Group;

    #[test]
    fn elements_round_trip_through_format() {
        let ctx = RcaContext::new(Group::cyclic(2));
        let x = parse_element(&ctx, "u1*y1").unwrap();
        assert_eq!(ctx.format(&x), "y1*u1 + t - 2*c1*s1");
        let y = parse_element(&ctx, &ctx.format(&x)).unwrap();
        assert_eq!(x, y);
        assert!(parse_element(&ctx, "u2").is_err());
        assert_eq!(parse_element(&ctx, "(2*y1)/2").unwrap(), ctx.y(0));
    }

    #[test]
    fn operators() {
        let op = parse_operator(1, "x^2*d").unwrap();
        assert_eq!(op.coeff(&Monomial::var_pow(0, 2), &Monomial::var(0)), Scalar::one());
        let w = parse_operator(2, "d1*x1 - x1*d1").unwrap();
        assert_eq!(w, parse_operator(2, "1").unwrap());
    }

    #[test]
    fn vectors() {
        let v = parse_vector("e1 - 2*e3", 3, 1).unwrap();
        assert_eq!(v, vec![CycNum::one(), CycNum::zero(), CycNum::from_int(-2)]);
        assert!(parse_vector("e1 + 1", 2, 1).is_err());
        assert!(parse_vector("e1*e2", 2, 1).is_err());
    }
}
