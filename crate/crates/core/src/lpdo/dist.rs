//! Finite combinations of `δ_p ∘ D` and intensional functions `Φ_D ∗ u`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::op::FactoredOp;
use super::poly::{Exp, Poly, Q};
use super::LpdoError;

/// A point of `ℚ^n`, trailing zero coordinates dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<Q>);

impl Point {
    pub fn new(mut coords: Vec<Q>) -> Point {
        while coords.last().map(|c| c.is_zero()).unwrap_or(false) {
            coords.pop();
        }
        Point(coords)
    }

    pub fn origin() -> Point {
        Point(Vec::new())
    }

    pub fn from_ints(coords: &[i64]) -> Point {
        Point::new(coords.iter().map(|c| super::poly::q(*c)).collect())
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn add(&self, o: &Point) -> Point {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        Point::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self
            .0
            .iter()
            .map(|c| Poly::constant(c.clone()).to_string())
            .collect();
        write!(
            f,
            "({})",
            if cs.is_empty() {
                "0".to_string()
            } else {
                cs.join(",")
            }
        )
    }
}

/// `Σ c · (δ_p ∘ D)` in canonical form.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distribution {
    terms: BTreeMap<(Point, FactoredOp), Q>,
}

impl Distribution {
    pub fn zero() -> Distribution {
        Distribution::default()
    }

    pub fn dirac(point: Point, op: FactoredOp) -> Distribution {
        Distribution::term(Q::one(), point, op)
    }

    pub fn term(c: Q, point: Point, op: FactoredOp) -> Distribution {
        let mut d = Distribution::zero();
        d.push(c, point, op);
        d
    }

    fn push(&mut self, c: Q, point: Point, op: FactoredOp) {
        if c.is_zero() {
            return;
        }
        let key = (point, op);
        let slot = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Point, &FactoredOp, &Q)> {
        self.terms.iter().map(|((p, d), c)| (p, d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Distribution) -> Distribution {
        let mut out = self.clone();
        for ((p, d), c) in &o.terms {
            out.push(c.clone(), p.clone(), d.clone());
        }
        out
    }

    pub fn scale(&self, k: &Q) -> Distribution {
        let mut out = Distribution::zero();
        for ((p, d), c) in &self.terms {
            out.push(c * k, p.clone(), d.clone());
        }
        out
    }

    /// `ψ ↦ ψ ∘ D` termwise.
    pub fn then_op(&self, op: &FactoredOp) -> Distribution {
        let mut out = Distribution::zero();
        for ((p, d), c) in &self.terms {
            out.push(c.clone(), p.clone(), d.compose(op));
        }
        out
    }

    pub fn convolve(&self, o: &Distribution) -> Distribution {
        let mut out = Distribution::zero();
        for ((p, d), c) in &self.terms {
            for ((p2, d2), c2) in &o.terms {
                out.push(c * c2, p.add(p2), d.compose(d2));
            }
        }
        out
    }

    /// `ψ(Φ_E ∗ u)` computed through `(ψ' ∘ E)(Φ_E ∗ u) = ψ'(u)`.
    pub fn pair(&self, f: &FunRep) -> Result<Q, LpdoError> {
        let mut sum = Q::zero();
        for ((p, d), c) in &self.terms {
            let rest = d.divide(&f.op).ok_or_else(|| LpdoError::NotDivisible {
                op: f.op.to_string(),
                target: d.to_string(),
            })?;
            sum += c * rest.apply(&f.param).eval(p.coords());
        }
        Ok(sum)
    }

    /// Expansion over the basis `δ_p ∘ ∂^α`, which is linearly independent
    /// on polynomials. Two distributions are equal iff these agree.
    pub fn expanded(&self) -> BTreeMap<(Point, Exp), Q> {
        let mut out: BTreeMap<(Point, Exp), Q> = BTreeMap::new();
        for ((p, d), c) in &self.terms {
            for (e, a) in d.expand().terms() {
                let slot = out.entry((p.clone(), e.clone())).or_insert_with(Q::zero);
                *slot += c * a;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn equivalent(&self, o: &Distribution) -> bool {
        self.expanded() == o.expanded()
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((p, d), c)| format!("{}*delta{}.[{}]", Poly::constant(c.clone()), p, d))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Φ_op ∗ param`, an element of the stratum `?_op`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunRep {
    pub op: FactoredOp,
    pub param: Poly,
}

impl FunRep {
    pub fn new(op: FactoredOp, param: Poly) -> FunRep {
        FunRep { op, param }
    }
}

impl fmt::Display for FunRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phi[{}] * ({})", self.op, self.param)
    }
}

/// A finite sum of tensors of Dirac generators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TensorDist {
    terms: BTreeMap<Vec<(Point, FactoredOp)>, Q>,
}

impl TensorDist {
    /// The empty tensor, i.e. the scalar `c`.
    pub fn scalar(c: Q) -> TensorDist {
        let mut t = TensorDist::default();
        t.push(c, Vec::new());
        t
    }

    pub fn generator(point: Point, op: FactoredOp) -> TensorDist {
        let mut t = TensorDist::default();
        t.push(Q::one(), vec![(point, op)]);
        t
    }

    pub fn from_distribution(d: &Distribution) -> TensorDist {
        let mut t = TensorDist::default();
        for (p, op, c) in d.terms() {
            t.push(c.clone(), vec![(p.clone(), op.clone())]);
        }
        t
    }

    pub fn push(&mut self, c: Q, key: Vec<(Point, FactoredOp)>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<(Point, FactoredOp)>, &Q)> {
        self.terms.iter()
    }

    pub fn add(&mut self, o: &TensorDist) {
        for (k, c) in &o.terms {
            self.push(c.clone(), k.clone());
        }
    }

    pub fn scale(&self, k: &Q) -> TensorDist {
        let mut out = TensorDist::default();
        for (key, c) in &self.terms {
            out.push(c * k, key.clone());
        }
        out
    }

    pub fn tensor(&self, o: &TensorDist) -> TensorDist {
        let mut out = TensorDist::default();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                out.push(c1 * c2, k);
            }
        }
        out
    }

    /// Rebuilds every key with `f`, merging coefficients.
    pub fn map_keys(
        &self,
        f: impl Fn(&[(Point, FactoredOp)]) -> Vec<(Point, FactoredOp)>,
    ) -> TensorDist {
        let mut out = TensorDist::default();
        for (k, c) in &self.terms {
            out.push(c.clone(), f(k));
        }
        out
    }

    pub fn expanded(&self) -> BTreeMap<Vec<(Point, Exp)>, Q> {
        let mut out: BTreeMap<Vec<(Point, Exp)>, Q> = BTreeMap::new();
        for (key, c) in &self.terms {
            let mut partial: Vec<(Vec<(Point, Exp)>, Q)> = vec![(Vec::new(), c.clone())];
            for (p, d) in key {
                let sym = d.expand();
                let mut next = Vec::new();
                for (k, a) in &partial {
                    for (e, b) in sym.terms() {
                        let mut k2 = k.clone();
                        k2.push((p.clone(), e.clone()));
                        next.push((k2, a * b));
                    }
                }
                partial = next;
            }
            for (k, a) in partial {
                *out.entry(k).or_insert_with(Q::zero) += a;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn equivalent(&self, o: &TensorDist) -> bool {
        self.expanded() == o.expanded()
    }
}

impl fmt::Display for TensorDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let gens: Vec<String> = k.iter().map(|(p, d)| format!("delta{p}.[{d}]")).collect();
                if gens.is_empty() {
                    Poly::constant(c.clone()).to_string()
                } else {
                    format!("{}*{}", Poly::constant(c.clone()), gens.join(" (x) "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
