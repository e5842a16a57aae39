//! Graded differential linear logic: proof kernel, two-phase cut
//! elimination, and executable relational and differential-operator
//! semantics.

pub mod cli;
pub mod gen;
pub mod grading;
pub mod lpdo;
#[cfg(feature = "promotion")]
pub mod promotion;
pub mod proofs;
pub mod relmodel;
pub mod rewrite;
pub mod sexpr;
pub mod syntax;
