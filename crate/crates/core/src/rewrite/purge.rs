//! One step of indexed (co)dereliction purging at a given node.

use super::{RewriteError, Step};
use crate::grading::Grade;
use crate::proofs::{c, coc, cow, cowi, node, top, w, wi, NodePath, Proof, Rule, RuleTag, Src};
use crate::syntax::Formula;

pub(crate) fn mk_wi<G: Grade>(
    grade: G,
    formula: Formula<G>,
    p: Proof<G>,
) -> Result<Proof<G>, RewriteError> {
    Ok(if grade.is_zero() {
        w(formula, p)?
    } else {
        wi(grade, formula, p)?
    })
}

pub(crate) fn mk_cowi<G: Grade>(grade: G, formula: Formula<G>) -> Proof<G> {
    if grade.is_zero() {
        cow(formula)
    } else {
        cowi(grade, formula)
    }
}

fn body<G: Grade>(f: &Formula<G>) -> Result<Formula<G>, RewriteError> {
    match f {
        Formula::WhyNotG(_, a) | Formula::OfCourseG(_, a) => Ok((**a).clone()),
        _ => Err(RewriteError::Internal(format!(
            "expected a graded exponential, found {f}"
        ))),
    }
}

/// Index in the right premise of `&` matching context position `j` of the left one.
pub(crate) fn with_partner(j: usize, left: usize, right: usize) -> usize {
    let ctx = j - usize::from(j > left);
    ctx + usize::from(ctx >= right)
}

pub(super) fn purge_step<G: Grade>(n: &Proof<G>, path: &NodePath) -> Result<Step<G>, RewriteError> {
    let (index, target, witness, dual) = match n.rule() {
        Rule::DI {
            index,
            target,
            witness,
        } => (*index, target.clone(), witness.clone(), false),
        Rule::CoDI {
            index,
            target,
            witness,
        } => (*index, target.clone(), witness.clone(), true),
        _ => {
            return Err(RewriteError::Internal(format!(
                "purge applied to `{}`",
                n.tag()
            )))
        }
    };
    let mk = |j: usize, t: Proof<G>| -> Result<Proof<G>, RewriteError> {
        let rule = if dual {
            Rule::CoDI {
                index: j,
                target: target.clone(),
                witness: witness.clone(),
            }
        } else {
            Rule::DI {
                index: j,
                target: target.clone(),
                witness: witness.clone(),
            }
        };
        Ok(node(rule, vec![t])?)
    };
    let name = |s: &'static str, d: &'static str| if dual { d } else { s };
    let r = &n.premises()[0];
    let a = body(&n.conclusion()[index])?;

    match r.rule() {
        // exchange is absorbed into the step below it; order is restored by the caller
        Rule::Ex { perm } => return purge_step(&mk(perm[index], r.premises()[0].clone())?, path),
        Rule::Prom { .. } => {
            return Err(RewriteError::DerelictionMeetsPromotion { path: path.clone() })
        }
        Rule::Top { context } => {
            let mut ctx = context.clone();
            ctx[index] = n.conclusion()[index].clone();
            return Ok((top(ctx), name("di-top", "codi-top")));
        }
        _ => {}
    }

    if let Src::Prem(p, j) = r.sources()[index] {
        let mut prems = r.premises().to_vec();
        prems[p] = mk(j, prems[p].clone())?;
        if let Rule::With { left, right } = r.rule() {
            let k = with_partner(j, *left, *right);
            prems[1] = mk(k, prems[1].clone())?;
        }
        return Ok((
            node(r.rule().clone(), prems)?,
            name("di-commute", "codi-commute"),
        ));
    }

    let out = match (r.rule(), dual) {
        (Rule::C { .. }, false) => {
            let len = r.conclusion().len();
            (
                c(index, len, mk_wi(witness, a, r.clone())?)?,
                "di-contraction",
            )
        }
        (Rule::W { .. } | Rule::WI { .. }, false) => {
            (mk_wi(target, a, r.premises()[0].clone())?, "di-weakening")
        }
        (Rule::Ax { .. }, false) => (c(index, 2, mk_wi(witness, a, r.clone())?)?, "di-axiom"),
        (Rule::CoC { .. }, true) => (
            coc(index, 0, r.clone(), mk_cowi(witness, a))?,
            "codi-cocontraction",
        ),
        (Rule::CoW { .. } | Rule::CoWI { .. }, true) => (mk_cowi(target, a), "codi-coweakening"),
        (Rule::Ax { .. }, true) => (coc(index, 0, r.clone(), mk_cowi(witness, a))?, "codi-axiom"),
        _ => {
            return Err(RewriteError::Internal(format!(
                "`{}` cannot be principal under `{}`",
                r.tag(),
                if dual { RuleTag::CoDI } else { RuleTag::DI }
            )))
        }
    };
    Ok(out)
}
