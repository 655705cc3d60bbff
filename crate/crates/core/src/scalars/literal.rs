//! Tiny expression language shared by cyclotomic literals, scalars and the
//! element syntax of the command line (`y1^2*g3*u2 + (2*c1)*s1`).

use num_bigint::BigInt;
use num_rational::BigRational;

use super::cyclotomic::{CycNum, Q};
use super::ring::Ring;
use super::scalar::Scalar;
use crate::error::{ForgeError, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Q),
    Ident(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().unwrap()));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else {
            return Err(ForgeError::Parse(format!("unexpected character '{ch}' in \"{s}\"")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| ForgeError::Parse("exponent too large".into()))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(ForgeError::Parse("exponent must be a non-negative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(ForgeError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(ForgeError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ForgeError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(ForgeError::Parse(format!("trailing input in \"{s}\"")));
    }
    Ok(e)
}

/// Interprets parsed expressions in some target algebra.
pub trait Evaluator {
    type Value: Clone;
    fn number(&self, v: Q) -> Self::Value;
    fn ident(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;

    fn eval(&self, e: &Expr) -> Result<Self::Value> {
        Ok(match e {
            Expr::Num(v) => self.number(v.clone()),
            Expr::Ident(s) => self.ident(s)?,
            Expr::Add(a, b) => self.add(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Sub(a, b) => {
                let nb = self.mul(&self.number(super::cyclotomic::q(-1)), &self.eval(b)?)?;
                self.add(&self.eval(a)?, &nb)?
            }
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Div(a, b) => self.div(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Neg(a) => self.mul(&self.number(super::cyclotomic::q(-1)), &self.eval(a)?)?,
            Expr::Pow(a, k) => {
                let base = self.eval(a)?;
                let mut acc = self.number(super::cyclotomic::q(1));
                for _ in 0..*k {
                    acc = self.mul(&acc, &base)?;
                }
                acc
            }
        })
    }
}

/// Scalars over Q(zeta_N): identifiers `z`, `t`, `c1`, `c2`, ...
pub struct ScalarEval {
    pub order: u32,
}

impl ScalarEval {
    pub fn scalar_ident(order: u32, name: &str) -> Option<Scalar> {
        if name == "z" {
            return Some(Scalar::from_cyc(CycNum::root_of_unity(order, 1)));
        }
        if name == "t" {
            return Some(Scalar::t());
        }
        if let Some(j) = name.strip_prefix('c').and_then(|r| r.parse::<usize>().ok()) {
            if j >= 1 {
                return Some(Scalar::c(j));
            }
        }
        None
    }
}

impl Evaluator for ScalarEval {
    type Value = Scalar;
    fn number(&self, v: Q) -> Scalar {
        Scalar::from_q(v)
    }
    fn ident(&self, name: &str) -> Result<Scalar> {
        Self::scalar_ident(self.order, name)
            .ok_or_else(|| ForgeError::Parse(format!("unknown scalar identifier '{name}'")))
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(Ring::add(a, b))
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(Ring::mul(a, b))
    }
    fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        a.try_div(b)
    }
}

/// Parse a cyclotomic literal such as `"-z^2 + 1/2"` for the root of order N.
pub fn parse_cyclotomic(s: &str, order: u32) -> Result<CycNum> {
    let v = parse_scalar(s, order)?;
    if v.max_param().is_some() {
        return Err(ForgeError::Parse(format!("\"{s}\" is not a cyclotomic literal")));
    }
    Ok(v.as_cyc().expect("parameter-free scalar is a constant"))
}

pub fn parse_scalar(s: &str, order: u32) -> Result<Scalar> {
    ScalarEval { order }.eval(&parse_expr(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let i = parse_cyclotomic("z", 4).unwrap();
        assert_eq!(parse_cyclotomic("z^2", 4).unwrap(), CycNum::from_int(-1));
        assert_eq!(i.mul(&i), CycNum::from_int(-1));
        assert_eq!(parse_cyclotomic("(1+z)*(1+z^2)", 3).unwrap(), CycNum::one());
        assert_eq!(parse_cyclotomic("-3/6", 1).unwrap().to_string(), "-1/2");
        assert!(parse_cyclotomic("t", 3).is_err());
        assert!(parse_cyclotomic("1 +", 3).is_err());
        assert!(parse_cyclotomic("1 $ 2", 3).is_err());
    }

    #[test]
    fn scalars() {
        let v = parse_scalar("2*c1/(1 - (-1))", 1).unwrap();
        assert_eq!(v, Scalar::c(1));
        assert!(parse_scalar("1/0", 1).is_err());
    }
}
