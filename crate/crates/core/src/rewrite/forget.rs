//! Grade erasure into ungraded differential linear logic.

use super::RewriteError;
use crate::grading::Grade;
use crate::proofs::{check, Mode, NodePath, Proof, ProofTree, Rule};

/// Erases every grade; graded structural rules become their ungraded
/// counterparts. The result checks in `dill` mode.
pub fn forget<G: Grade>(tree: &Proof<G>) -> Result<Proof<G>, RewriteError> {
    let out = go(tree, &NodePath::root())?;
    check(&out, Mode::Dill).map_err(RewriteError::CheckFailed)?;
    Ok(out)
}

fn go<G: Grade>(t: &ProofTree<G>, path: &NodePath) -> Result<Proof<G>, RewriteError> {
    use Rule::*;
    let prems = t
        .premises()
        .iter()
        .enumerate()
        .map(|(i, p)| go(p, &path.child(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let rule = match t.rule() {
        DI { .. } | CoDI { .. } => {
            return Err(RewriteError::ContainsIndexedDereliction { path: path.clone() })
        }
        Prom { .. } => return Err(RewriteError::ContainsPromotion { path: path.clone() }),
        Ax { formula } => Ax {
            formula: formula.erase_grades(),
        },
        Top { context } => Top {
            context: context.iter().map(|f| f.erase_grades()).collect(),
        },
        Plus1 { index, other } => Plus1 {
            index: *index,
            other: other.erase_grades(),
        },
        Plus2 { index, other } => Plus2 {
            index: *index,
            other: other.erase_grades(),
        },
        W { formula } | WI { formula, .. } | UW { formula } => UW {
            formula: formula.erase_grades(),
        },
        CoW { formula } | CoWI { formula, .. } | UCoW { formula } => UCoW {
            formula: formula.erase_grades(),
        },
        C { left, right } | UC { left, right } => UC {
            left: *left,
            right: *right,
        },
        CoC { left, right } | UCoC { left, right } => UCoC {
            left: *left,
            right: *right,
        },
        r => r.clone(),
    };
    Ok(ProofTree::new(rule, prems)?)
}
