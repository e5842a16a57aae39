//! Constant-coefficient operators in factored normal form.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::{parse_expr, to_poly, Expr, Poly, Q};
use super::LpdoError;
use crate::grading::{check_split_pre, Grade, GradeError, SplitCertificate};

/// `unit * Π factors`, each factor primitive with a positive leading
/// coefficient. Reads as an operator via `X_i ↦ ∂_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactoredOp {
    unit: Q,
    factors: BTreeMap<Poly, u32>,
}

/// Outcome of the factor irreducibility helper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// Multivariate or of higher degree: assumed, not verified.
    Assumed,
}

fn is_rational_square(x: &Q) -> bool {
    if x.is_negative() {
        return false;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    &(&rn * &rn) == n && &(&rd * &rd) == d
}

/// Verifies non-constancy; decides irreducibility over ℚ for univariate
/// polynomials of degree at most 2.
pub fn irreducibility(p: &Poly) -> Result<Irreducibility, LpdoError> {
    if p.is_constant() {
        return Err(LpdoError::BadOperator(format!("factor `{p}` is constant")));
    }
    let Some(v) = p.univariate() else {
        return Ok(Irreducibility::Assumed);
    };
    Ok(match p.degree() {
        1 => Irreducibility::Irreducible,
        2 => {
            let coeff = |k: u32| {
                let mut e = vec![0; v + 1];
                e[v] = k;
                while e.last() == Some(&0) {
                    e.pop();
                }
                p.terms()
                    .find(|(x, _)| **x == e)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Q::zero)
            };
            let (a, b, c) = (coeff(2), coeff(1), coeff(0));
            // x = 0 is a root when c = 0; otherwise roots are rational iff
            // the discriminant is a rational square.
            let disc = &b * &b - Q::from_integer(4.into()) * &a * &c;
            if c.is_zero() || is_rational_square(&disc) {
                Irreducibility::Reducible
            } else {
                Irreducibility::Irreducible
            }
        }
        _ => Irreducibility::Assumed,
    })
}

impl FactoredOp {
    pub fn id() -> FactoredOp {
        FactoredOp {
            unit: Q::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn scalar(unit: Q) -> Result<FactoredOp, LpdoError> {
        if unit.is_zero() {
            return Err(LpdoError::BadOperator("zero operator".into()));
        }
        Ok(FactoredOp {
            unit,
            factors: BTreeMap::new(),
        })
    }

    /// Normalizes `p` into unit and primitive factor. The factor is taken
    /// as irreducible unless the helper refutes it.
    pub fn factor(p: &Poly) -> Result<FactoredOp, LpdoError> {
        if irreducibility(p)? == Irreducibility::Reducible {
            return Err(LpdoError::BadOperator(format!("factor `{p}` is reducible")));
        }
        let (unit, prim) = p.primitive();
        let mut factors = BTreeMap::new();
        factors.insert(prim, 1);
        Ok(FactoredOp { unit, factors })
    }

    /// Product of a unit and factors, each given in any associate form.
    pub fn from_factors(unit: Q, factors: &[Poly]) -> Result<FactoredOp, LpdoError> {
        let mut op = FactoredOp::scalar(unit)?;
        for f in factors {
            op = op.compose(&FactoredOp::factor(f)?);
        }
        Ok(op)
    }

    pub fn unit(&self) -> &Q {
        &self.unit
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.factors.iter().map(|(p, k)| (p, *k))
    }

    pub fn is_id(&self) -> bool {
        self.unit.is_one() && self.factors.is_empty()
    }

    /// Number of variables mentioned, i.e. the largest `i` with `X_i` present.
    pub fn nvars(&self) -> usize {
        self.factors.keys().map(|p| p.nvars()).max().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(p, k)| p.degree() * k).sum()
    }

    pub fn compose(&self, o: &FactoredOp) -> FactoredOp {
        let mut factors = self.factors.clone();
        for (p, k) in &o.factors {
            *factors.entry(p.clone()).or_insert(0) += k;
        }
        FactoredOp {
            unit: &self.unit * &o.unit,
            factors,
        }
    }

    /// `q` with `by ∘ q = self`, when `by`'s factors are contained in ours.
    pub fn divide(&self, by: &FactoredOp) -> Option<FactoredOp> {
        let mut factors = self.factors.clone();
        for (p, k) in &by.factors {
            let slot = factors.get_mut(p)?;
            if *slot < *k {
                return None;
            }
            *slot -= k;
            if *slot == 0 {
                factors.remove(p);
            }
        }
        Some(FactoredOp {
            unit: &self.unit / &by.unit,
            factors,
        })
    }

    /// The expanded symbol `χ(self)`.
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (p, k)| {
                acc.mul(&p.pow(*k))
            })
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        self.expand().apply_as_operator(f)
    }

    /// `X_i ↦ -X_i` in every factor, signs folded into the unit.
    pub fn hat(&self) -> FactoredOp {
        let mut out = FactoredOp::scalar(self.unit.clone()).expect("nonzero unit");
        for (p, k) in &self.factors {
            let (c, prim) = p.reflect().primitive();
            for _ in 0..*k {
                out.unit *= &c;
                *out.factors.entry(prim.clone()).or_insert(0) += 1;
            }
        }
        out
    }

    /// Parses literals such as `2*(X1)*(X1+X2^2+1)` or `(X1+1)^2`.
    pub fn parse(text: &str) -> Result<FactoredOp, LpdoError> {
        let e = parse_expr(text)?;
        let mut unit = Q::one();
        let mut factors = Vec::new();
        collect(&e, &mut unit, &mut factors)?;
        FactoredOp::from_factors(unit, &factors)
    }
}

fn collect(e: &Expr, unit: &mut Q, out: &mut Vec<Poly>) -> Result<(), LpdoError> {
    match e {
        Expr::Mul(a, b) => {
            collect(a, unit, out)?;
            collect(b, unit, out)
        }
        Expr::Neg(a) => {
            *unit = -unit.clone();
            collect(a, unit, out)
        }
        Expr::Pow(a, k) => {
            for _ in 0..*k {
                collect(a, unit, out)?;
            }
            Ok(())
        }
        Expr::Div(a, b) => {
            let d = to_poly(b)?;
            if !d.is_constant() || d.is_zero() {
                return Err(LpdoError::BadOperator(
                    "division only by nonzero constants".into(),
                ));
            }
            *unit /= d.constant_term();
            collect(a, unit, out)
        }
        _ => {
            let p = to_poly(e)?;
            if p.is_zero() {
                return Err(LpdoError::BadOperator("zero operator".into()));
            }
            if p.is_constant() {
                *unit *= p.constant_term();
            } else {
                out.push(p);
            }
            Ok(())
        }
    }
}

impl fmt::Display for FactoredOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .flat_map(|(p, k)| std::iter::repeat(format!("({p})")).take(*k as usize))
            .collect();
        let unit = Poly::constant(self.unit.clone()).to_string();
        if parts.is_empty() {
            write!(f, "{unit}")
        } else if self.unit.is_one() {
            write!(f, "{}", parts.join("*"))
        } else if (-self.unit.clone()).is_one() {
            write!(f, "-{}", parts.join("*"))
        } else {
            write!(f, "{unit}*{}", parts.join("*"))
        }
    }
}

pub fn compose(d1: &FactoredOp, d2: &FactoredOp) -> FactoredOp {
    d1.compose(d2)
}

pub fn apply_op(d: &FactoredOp, f: &Poly) -> Poly {
    d.apply(f)
}

pub fn hat(d: &FactoredOp) -> FactoredOp {
    d.hat()
}

fn multiset(d: &FactoredOp) -> &BTreeMap<Poly, u32> {
    &d.factors
}

fn from_multiset(unit: Q, factors: BTreeMap<Poly, u32>) -> FactoredOp {
    FactoredOp {
        unit,
        factors: factors.into_iter().filter(|(_, k)| *k > 0).collect(),
    }
}

/// Splitting of `d1 ∘ d2 = d3 ∘ d4` by matching factors: `A13` is the
/// common part of `d1` and `d3`, the rest is forced. Units go
/// `u1 | 1 | u3/u1 | u1 u2/u3`.
pub fn op_split(
    d1: &FactoredOp,
    d2: &FactoredOp,
    d3: &FactoredOp,
    d4: &FactoredOp,
) -> Result<SplitCertificate<FactoredOp>, GradeError> {
    check_split_pre(d1, d2, d3, d4)?;
    let (f1, f2, f3) = (multiset(d1), multiset(d2), multiset(d3));
    let mut a13 = BTreeMap::new();
    let mut a14 = BTreeMap::new();
    for (p, k) in f1 {
        let common = (*k).min(*f3.get(p).unwrap_or(&0));
        a13.insert(p.clone(), common);
        a14.insert(p.clone(), k - common);
    }
    let mut a23 = BTreeMap::new();
    for (p, k) in f3 {
        a23.insert(p.clone(), k - a13.get(p).copied().unwrap_or(0));
    }
    let mut a24 = f2.clone();
    for (p, k) in &a23 {
        let slot = a24.entry(p.clone()).or_insert(0);
        *slot = slot.checked_sub(*k).ok_or_else(|| {
            GradeError::PreconditionViolated("factor multisets do not balance".into())
        })?;
    }
    let (u1, u2, u3) = (&d1.unit, &d2.unit, &d3.unit);
    let cert = SplitCertificate {
        x13: from_multiset(u1.clone(), a13),
        x14: from_multiset(Q::one(), a14),
        x23: from_multiset(u3 / u1, a23),
        x24: from_multiset(u1 * u2 / u3, a24),
    };
    debug_assert!(cert.verify(d1, d2, d3, d4));
    Ok(cert)
}

impl Grade for FactoredOp {
    fn zero() -> Self {
        FactoredOp::id()
    }

    fn add(&self, other: &Self) -> Self {
        self.compose(other)
    }

    fn leq_witness(&self, y: &Self) -> Option<Self> {
        y.divide(self)
    }

    fn additive_split(
        x1: &Self,
        x2: &Self,
        x3: &Self,
        x4: &Self,
    ) -> Result<SplitCertificate<Self>, GradeError> {
        op_split(x1, x2, x3, x4)
    }

    fn parse_literal(text: &str) -> Result<Self, GradeError> {
        FactoredOp::parse(text).map_err(|e| GradeError::BadLiteral {
            literal: text.to_string(),
            reason: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpdo::poly::{parse_poly, q};

    fn op(s: &str) -> FactoredOp {
        FactoredOp::parse(s).unwrap()
    }

    fn expanded_eq(a: &FactoredOp, b: &FactoredOp) -> bool {
        a.expand() == b.expand()
    }

    #[test]
    fn normal_form() {
        assert_eq!(op("2*(X1+1)"), op("(2*X1+2)"));
        assert_eq!(op("(-X1)").unit(), &q(-1));
        assert_eq!(op("(X1)*(X1+1)"), op("(X1+1)*(X1)"));
        assert_eq!(op("(X1)^2").to_string(), "(X1)*(X1)");
        assert_eq!(op("-2*(X1)*(X1+1)").to_string(), "-2*(X1+1)*(X1)");
        assert_eq!(op("1"), FactoredOp::id());
        for s in ["3/2*(X1-X2)*(X1^2+1)", "-(X2)", "7"] {
            let d = op(s);
            assert_eq!(op(&d.to_string()), d);
        }
    }

    #[test]
    fn reducible_factors_rejected() {
        assert!(FactoredOp::parse("(X1^2-1)").is_err());
        assert!(FactoredOp::parse("(X1^2+X1)").is_err());
        assert!(FactoredOp::parse("(X1^2+1)").is_ok());
        assert!(FactoredOp::parse("(X1^2-2)").is_ok());
        assert!(FactoredOp::parse("0").is_err());
        assert_eq!(
            irreducibility(&parse_poly("X1*X2+1").unwrap()).unwrap(),
            Irreducibility::Assumed
        );
    }

    #[test]
    fn composition_and_symbol() {
        let (a, b) = (op("(X1)"), op("(X1+1)"));
        assert_eq!(a.compose(&b), b.compose(&a));
        assert_eq!(a.compose(&FactoredOp::id()), a);
        assert_eq!(a.compose(&b).expand(), a.expand().mul(&b.expand()));
    }

    #[test]
    fn application_and_hat() {
        let f = parse_poly("X1^2+3*X1").unwrap();
        assert_eq!(apply_op(&op("(X1)"), &f), parse_poly("2*X1+3").unwrap());
        assert_eq!(hat(&op("(X1)")), op("-(X1)"));
        let d = op("2*(X1+1)*(X1*X2+1)");
        assert_eq!(hat(&hat(&d)), d);
        assert_eq!(hat(&d).expand(), d.expand().reflect());
    }

    #[test]
    fn split_example() {
        let (d1, d2, d3, d4) = (
            op("(X1)*(X1+1)"),
            op("(X1+2)"),
            op("(X1)"),
            op("(X1+1)*(X1+2)"),
        );
        let c = op_split(&d1, &d2, &d3, &d4).unwrap();
        assert_eq!(
            (c.x13, c.x14, c.x23, c.x24),
            (op("(X1)"), op("(X1+1)"), op("1"), op("(X1+2)"))
        );
    }

    #[test]
    fn split_units_and_identity() {
        let id = FactoredOp::id();
        let c = op_split(&id, &id, &id, &id).unwrap();
        assert!(c.x13.is_id() && c.x14.is_id() && c.x23.is_id() && c.x24.is_id());
        let (d1, d2, d3, d4) = (op("2"), op("3"), op("6"), op("1"));
        let c = op_split(&d1, &d2, &d3, &d4).unwrap();
        assert_eq!(
            (c.x13.unit(), c.x14.unit(), c.x23.unit(), c.x24.unit()),
            (&q(2), &q(1), &q(3), &q(1))
        );
        assert!(expanded_eq(&c.x13.compose(&c.x14), &d1));
        assert!(expanded_eq(&c.x23.compose(&c.x24), &d2));
        assert!(expanded_eq(&c.x13.compose(&c.x23), &d3));
        assert!(expanded_eq(&c.x14.compose(&c.x24), &d4));
    }

    #[test]
    fn split_rejects_unbalanced() {
        assert!(op_split(&op("(X1)"), &op("1"), &op("(X2)"), &op("1")).is_err());
    }

    #[test]
    fn preorder_is_divisibility() {
        let (a, b) = (op("(X1)"), op("2*(X1)*(X2)"));
        assert_eq!(a.leq_witness(&b), Some(op("2*(X2)")));
        assert_eq!(b.leq_witness(&a), None);
        assert!(FactoredOp::id().leq(&a));
    }
}
