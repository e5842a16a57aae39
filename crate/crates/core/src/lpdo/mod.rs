//! Linear partial differential operators with constant coefficients as a
//! grade monoid, together with the distribution semantics of the indexed
//! exponential rules.

mod dist;
pub mod eval;
mod op;
mod poly;
mod sem;

use thiserror::Error;

pub use dist::{Distribution, FunRep, Point, TensorDist};
pub use op::{apply_op, compose, hat, irreducibility, op_split, FactoredOp, Irreducibility};
pub use poly::{parse_poly, q, q_frac, Exp, Poly, Q};
pub use sem::{
    check_all, check_invariance, divisors, dual_contraction, interp_rule, pair_tensor, CaseResult,
    Generators, InvCase, InvarianceReport, SemRule, SemVal,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpdoError {
    #[error("operator {op} does not divide {target}")]
    NotDivisible { op: String, target: String },
    #[error("stratum mismatch: {0}")]
    StratumMismatch(String),
    #[error("column {col}: {message}")]
    Parse { col: usize, message: String },
    #[error("invalid operator: {0}")]
    BadOperator(String),
    #[error("backend constraint: {0}")]
    Backend(String),
}

pub fn convolve(a: &Distribution, b: &Distribution) -> Distribution {
    a.convolve(b)
}

pub fn pair(d: &Distribution, f: &FunRep) -> Result<Q, LpdoError> {
    d.pair(f)
}
