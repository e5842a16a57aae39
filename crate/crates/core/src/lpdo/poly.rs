//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Exponent vectors are stored with trailing zeros removed, so polynomials
//! in different numbers of variables compare and combine directly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LpdoError;

pub type Q = BigRational;
pub type Exp = Vec<u32>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn trim(mut e: Exp) -> Exp {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_add(a: &[u32], b: &[u32]) -> Exp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0))
            .collect(),
    )
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeMap<Exp, Q>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        Poly::monomial(vec![], c)
    }

    /// The variable `X_{i+1}`.
    pub fn var(i: usize) -> Poly {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Poly::monomial(e, Q::one())
    }

    pub fn monomial(exp: Exp, c: Q) -> Poly {
        let mut p = Poly::zero();
        p.add_term(trim(exp), c);
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exp, Q)>) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in it {
            p.add_term(trim(e), c);
        }
        p
    }

    fn add_term(&mut self, e: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&vec![]).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| total(e)).max().unwrap_or(0)
    }

    /// Number of variables actually used.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term(exp_add(e1, e2), c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Evaluation; coordinates beyond `point` are zero.
    pub fn eval(&self, point: &[Q]) -> Q {
        let mut sum = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, k) in e.iter().enumerate() {
                if *k > 0 {
                    let x = point.get(i).cloned().unwrap_or_else(Q::zero);
                    t *= num_traits::pow(x, *k as usize);
                }
            }
            sum += t;
        }
        sum
    }

    pub fn derivative(&self, var: usize) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(e, c)| {
            let k = *e.get(var)?;
            if k == 0 {
                return None;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            Some((e2, c * q(k as i64)))
        }))
    }

    /// `∂^α self`.
    pub fn differentiate(&self, alpha: &[u32]) -> Poly {
        let mut p = self.clone();
        for (i, k) in alpha.iter().enumerate() {
            for _ in 0..*k {
                p = p.derivative(i);
                if p.is_zero() {
                    return p;
                }
            }
        }
        p
    }

    /// Reads `self` as the operator `Σ a_α ∂^α` and applies it to `f`.
    pub fn apply_as_operator(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out = out.add(&f.differentiate(e).scale(c));
        }
        out
    }

    /// `X_i ↦ -X_i` for every variable.
    pub fn reflect(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| {
            let c = if total(e) % 2 == 1 { -c } else { c.clone() };
            (e.clone(), c)
        }))
    }

    /// `X_{i+1} ↦ images[i]`; variables without an image are kept.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, k) in e.iter().enumerate() {
                let base = images.get(i).cloned().unwrap_or_else(|| Poly::var(i));
                t = t.mul(&base.pow(*k));
            }
            out = out.add(&t);
        }
        out
    }

    /// `X_i ↦ X_{i+k}`.
    pub fn shift_vars(&self, k: usize) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| {
            let mut e2 = vec![0; k];
            e2.extend(e);
            (e2, c.clone())
        }))
    }

    /// Leading term under graded lexicographic order.
    pub fn leading(&self) -> Option<(&Exp, &Q)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| total(a).cmp(&total(b)).then_with(|| a.cmp(b)))
    }

    /// `self = c * p` with `p` having coprime integer coefficients and a
    /// positive leading coefficient. The zero polynomial gives `(0, 0)`.
    pub fn primitive(&self) -> (Q, Poly) {
        if self.is_zero() {
            return (Q::zero(), Poly::zero());
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd = self.terms.values().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * (&lcm / c.denom())))
        });
        let mut content = Q::new(gcd, lcm);
        if self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// The single variable used, if there is at most one.
    pub fn univariate(&self) -> Option<usize> {
        let mut var = None;
        for e in self.terms.keys() {
            for (i, k) in e.iter().enumerate() {
                if *k > 0 {
                    match var {
                        None => var = Some(i),
                        Some(v) if v != i => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(var.unwrap_or(0))
    }
}

fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Exp, &Q)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| total(b).cmp(&total(a)).then_with(|| b.cmp(a)));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| {
                    if *k == 1 {
                        format!("X{}", i + 1)
                    } else {
                        format!("X{}^{}", i + 1, k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", fmt_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Expression syntax shared by polynomial and operator literals.

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Expr {
    Num(Q),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> LpdoError {
        LpdoError::Parse {
            col: self.i + 1,
            message: message.into(),
        }
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Expr, LpdoError> {
        let mut e = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some(b'+') => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    e = Expr::Add(Box::new(e), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.i += 1;
                    e = Expr::Sub(Box::new(e), Box::new(self.term()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, LpdoError> {
        let mut e = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    e = Expr::Mul(Box::new(e), Box::new(self.power()?));
                }
                Some(b'/') => {
                    self.i += 1;
                    e = Expr::Div(Box::new(e), Box::new(self.power()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn power(&mut self) -> Result<Expr, LpdoError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.ws();
            let k = self.digits()?;
            let k: u32 = k.to_u32().ok_or_else(|| self.err("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<BigInt, LpdoError> {
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .unwrap())
    }

    fn primary(&mut self) -> Result<Expr, LpdoError> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(b'X') | Some(b'x') => {
                self.i += 1;
                let k = self.digits()?;
                let k = k
                    .to_usize()
                    .filter(|k| *k >= 1)
                    .ok_or_else(|| self.err("variables are X1, X2, ..."))?;
                Ok(Expr::Var(k - 1))
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Num(Q::from_integer(self.digits()?))),
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub(crate) fn parse_expr(text: &str) -> Result<Expr, LpdoError> {
    let mut p = Parser {
        s: text.as_bytes(),
        i: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

pub(crate) fn to_poly(e: &Expr) -> Result<Poly, LpdoError> {
    Ok(match e {
        Expr::Num(c) => Poly::constant(c.clone()),
        Expr::Var(i) => Poly::var(*i),
        Expr::Neg(a) => to_poly(a)?.neg(),
        Expr::Add(a, b) => to_poly(a)?.add(&to_poly(b)?),
        Expr::Sub(a, b) => to_poly(a)?.sub(&to_poly(b)?),
        Expr::Mul(a, b) => to_poly(a)?.mul(&to_poly(b)?),
        Expr::Div(a, b) => {
            let d = to_poly(b)?;
            if !d.is_constant() || d.is_zero() {
                return Err(LpdoError::Parse {
                    col: 1,
                    message: "division only by nonzero constants".into(),
                });
            }
            to_poly(a)?.scale(&d.constant_term().recip())
        }
        Expr::Pow(a, k) => to_poly(a)?.pow(*k),
    })
}

/// Parses a polynomial such as `X1^2 + 3*X1*X2 - 1/2`.
pub fn parse_poly(text: &str) -> Result<Poly, LpdoError> {
    to_poly(&parse_expr(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_printing() {
        let p = parse_poly("(X1+1)*(X1-1)").unwrap();
        assert_eq!(p.to_string(), "X1^2-1");
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        let r = parse_poly("X1^2 + 3*X1*X2 - 1/2").unwrap();
        assert_eq!(r.to_string(), "X1^2+3*X1*X2-1/2");
        assert_eq!(r.eval(&[q(1), q(2)]), q_frac(13, 2));
        assert!(parse_poly("X0").is_err());
        assert!(parse_poly("(X1").is_err());
    }

    #[test]
    fn derivatives() {
        let f = parse_poly("x1^2 + 3*x1").unwrap();
        assert_eq!(f.derivative(0), parse_poly("2*X1+3").unwrap());
        let op = Poly::var(0).add(&Poly::one());
        assert_eq!(op.apply_as_operator(&f), parse_poly("X1^2+5*X1+3").unwrap());
    }

    #[test]
    fn primitive_parts() {
        let p = parse_poly("-2*X1 - 4").unwrap();
        let (c, r) = p.primitive();
        assert_eq!(c, q(-2));
        assert_eq!(r, parse_poly("X1+2").unwrap());
        let (c, r) = parse_poly("1/2*X1 + 1/3").unwrap().primitive();
        assert_eq!(c, q_frac(1, 6));
        assert_eq!(r, parse_poly("3*X1+2").unwrap());
    }

    #[test]
    fn substitution_and_reflection() {
        let f = parse_poly("X1^2*X2").unwrap();
        let g = f.substitute(&[parse_poly("X1+X3").unwrap()]);
        assert_eq!(g, parse_poly("(X1+X3)^2*X2").unwrap());
        assert_eq!(f.reflect(), f.neg());
        assert_eq!(f.shift_vars(1), parse_poly("X2^2*X3").unwrap());
    }
}
