//! Grade algebra: commutative monoids with a sum-defined preorder and
//! additive splitting, optionally extended to semirings.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradeError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("operation not supported by this grade monoid: {0}")]
    NotSupported(&'static str),
    #[error("invalid grade literal `{literal}`: {reason}")]
    BadLiteral { literal: String, reason: String },
}

/// Witness of `x1 + x2 = x3 + x4` refined into a 2x2 grid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitCertificate<G> {
    pub x13: G,
    pub x14: G,
    pub x23: G,
    pub x24: G,
}

impl<G: Grade> SplitCertificate<G> {
    /// Checks the four defining equations against the query.
    pub fn verify(&self, x1: &G, x2: &G, x3: &G, x4: &G) -> bool {
        &self.x13.add(&self.x14) == x1
            && &self.x23.add(&self.x24) == x2
            && &self.x13.add(&self.x23) == x3
            && &self.x14.add(&self.x24) == x4
    }
}

impl<G: Display> Display for SplitCertificate<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x13={} x14={} x23={} x24={}",
            self.x13, self.x14, self.x23, self.x24
        )
    }
}

/// Decomposition `s = Σ s_i`, `r = Σ r_j` with `x = Σ_{U} s_i r_j` and
/// `y` the sum over the complement of `U`. Indices in `cells` are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultSplit<G> {
    pub s_parts: Vec<G>,
    pub r_parts: Vec<G>,
    pub cells: Vec<(usize, usize)>,
}

impl<G: Grade> MultSplit<G> {
    pub fn in_u(&self, i: usize, j: usize) -> bool {
        self.cells.contains(&(i, j))
    }

    pub fn verify(&self, s: &G, r: &G, x: &G, y: &G) -> Result<bool, GradeError> {
        let sum = |v: &[G]| v.iter().fold(G::zero(), |acc, g| acc.add(g));
        if &sum(&self.s_parts) != s || &sum(&self.r_parts) != r {
            return Ok(false);
        }
        let mut in_u = G::zero();
        let mut out_u = G::zero();
        for (i, si) in self.s_parts.iter().enumerate() {
            for (j, rj) in self.r_parts.iter().enumerate() {
                let p = si.mul(rj)?;
                if self.in_u(i, j) {
                    in_u = in_u.add(&p);
                } else {
                    out_u = out_u.add(&p);
                }
            }
        }
        Ok(&in_u == x && &out_u == y)
    }
}

/// A commutative monoid of grades. Elements are immutable values.
pub trait Grade: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;

    /// Some `w` with `self + w = y`, if one exists.
    fn leq_witness(&self, y: &Self) -> Option<Self>;

    /// Deterministic additive splitting of `x1 + x2 = x3 + x4`.
    fn additive_split(
        x1: &Self,
        x2: &Self,
        x3: &Self,
        x4: &Self,
    ) -> Result<SplitCertificate<Self>, GradeError>;

    /// Parses a grade literal as written between braces in documents.
    fn parse_literal(text: &str) -> Result<Self, GradeError>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn leq(&self, y: &Self) -> bool {
        self.leq_witness(y).is_some()
    }

    fn has_product() -> bool {
        false
    }

    fn one() -> Result<Self, GradeError> {
        Err(GradeError::NotSupported("one"))
    }

    fn mul(&self, _other: &Self) -> Result<Self, GradeError> {
        Err(GradeError::NotSupported("mul"))
    }

    fn mult_split(
        _s: &Self,
        _r: &Self,
        _x: &Self,
        _y: &Self,
    ) -> Result<MultSplit<Self>, GradeError> {
        Err(GradeError::NotSupported("mult_split"))
    }

    fn is_integral_domain() -> bool {
        false
    }
}

pub(crate) fn check_split_pre<G: Grade>(x1: &G, x2: &G, x3: &G, x4: &G) -> Result<(), GradeError> {
    if x1.add(x2) != x3.add(x4) {
        return Err(GradeError::PreconditionViolated(format!(
            "{x1} + {x2} != {x3} + {x4}"
        )));
    }
    Ok(())
}

/// Natural-number grades.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Nat(pub u64);

impl Nat {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(v)
    }
}

impl Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Grade for Nat {
    fn zero() -> Self {
        Nat(0)
    }

    fn add(&self, other: &Self) -> Self {
        Nat(self.0 + other.0)
    }

    fn leq_witness(&self, y: &Self) -> Option<Self> {
        y.0.checked_sub(self.0).map(Nat)
    }

    fn additive_split(
        x1: &Self,
        x2: &Self,
        x3: &Self,
        x4: &Self,
    ) -> Result<SplitCertificate<Self>, GradeError> {
        check_split_pre(x1, x2, x3, x4)?;
        let x13 = x1.0.min(x3.0);
        let x14 = x1.0 - x13;
        let x23 = x3.0 - x13;
        let x24 = x2.0 - x23;
        Ok(SplitCertificate {
            x13: Nat(x13),
            x14: Nat(x14),
            x23: Nat(x23),
            x24: Nat(x24),
        })
    }

    fn parse_literal(text: &str) -> Result<Self, GradeError> {
        text.trim()
            .parse::<u64>()
            .map(Nat)
            .map_err(|e| GradeError::BadLiteral {
                literal: text.to_string(),
                reason: e.to_string(),
            })
    }

    fn has_product() -> bool {
        true
    }

    fn one() -> Result<Self, GradeError> {
        Ok(Nat(1))
    }

    fn mul(&self, other: &Self) -> Result<Self, GradeError> {
        Ok(Nat(self.0 * other.0))
    }

    /// Unit decomposition: `s` and `r` become lists of ones and `U` is the
    /// first `x` cells of the `s × r` grid in row-major order.
    fn mult_split(s: &Self, r: &Self, x: &Self, y: &Self) -> Result<MultSplit<Self>, GradeError> {
        if s.0 * r.0 != x.0 + y.0 {
            return Err(GradeError::PreconditionViolated(format!(
                "{s} * {r} != {x} + {y}"
            )));
        }
        let (sn, rn) = (s.0 as usize, r.0 as usize);
        let cells = (0..sn)
            .flat_map(|i| (0..rn).map(move |j| (i, j)))
            .take(x.0 as usize)
            .collect();
        Ok(MultSplit {
            s_parts: vec![Nat(1); sn],
            r_parts: vec![Nat(1); rn],
            cells,
        })
    }

    fn is_integral_domain() -> bool {
        true
    }
}

/// Decides discreteness (`x + y = 1` forces a zero summand) on all pairs up to `bound`.
pub fn nat_discrete_upto(bound: u64) -> bool {
    (0..=bound).all(|x| (0..=bound).all(|y| Nat(x).add(&Nat(y)) != Nat(1) || x == 0 || y == 0))
}

/// Decides positivity (`x + y = 0` forces both zero) on all pairs up to `bound`.
pub fn nat_positive_upto(bound: u64) -> bool {
    (0..=bound).all(|x| (0..=bound).all(|y| !Nat(x).add(&Nat(y)).is_zero() || (x == 0 && y == 0)))
}
