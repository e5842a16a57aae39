//! Admissible indexed (co)weakenings and translation between modes.

use super::build::{codi, cow, di, w};
use super::{check, DiagKind, Diagnostic, Mode, Proof, ProofTree, Rule, RuleTag};
use crate::grading::Grade;
use crate::syntax::Formula;

fn zero_witness<G: Grade>(grade: &G, tag: RuleTag) -> Result<G, Diagnostic> {
    G::zero().leq_witness(grade).ok_or_else(|| {
        Diagnostic::new(
            tag,
            DiagKind::NoLeqWitness,
            format!("0 is not below {grade}"),
        )
    })
}

/// Indexed weakening: primitive in IDiLL, `w` followed by `dI` otherwise.
pub fn derive_wi<G: Grade>(
    premise: Proof<G>,
    grade: G,
    formula: Formula<G>,
    mode: Mode,
) -> Result<Proof<G>, Diagnostic> {
    match mode {
        Mode::Idill => ProofTree::new(Rule::WI { grade, formula }, vec![premise]),
        Mode::Dbsll | Mode::DbsllProm => {
            let wit = zero_witness(&grade, RuleTag::WI)?;
            let n = premise.conclusion().len();
            let p = w(formula, premise)?;
            if wit.is_zero() {
                Ok(p)
            } else {
                di(n, wit, p)
            }
        }
        Mode::Dill => Err(Diagnostic::new(
            RuleTag::WI,
            DiagKind::ModeForbidsRule,
            "no graded rules in dill",
        )),
    }
}

/// Indexed coweakening: primitive in IDiLL, `w̄` followed by `d̄I` otherwise.
pub fn derive_cowi<G: Grade>(
    grade: G,
    formula: Formula<G>,
    mode: Mode,
) -> Result<Proof<G>, Diagnostic> {
    match mode {
        Mode::Idill => ProofTree::new(Rule::CoWI { grade, formula }, vec![]),
        Mode::Dbsll | Mode::DbsllProm => {
            let wit = zero_witness(&grade, RuleTag::CoWI)?;
            let p = cow(formula);
            if wit.is_zero() {
                Ok(p)
            } else {
                codi(0, wit, p)
            }
        }
        Mode::Dill => Err(Diagnostic::new(
            RuleTag::CoWI,
            DiagKind::ModeForbidsRule,
            "no graded rules in dill",
        )),
    }
}

/// Rule-by-rule translation. IDiLL primitives are expanded into their
/// derivations; d and d̄ have no IDiLL counterpart.
pub fn translate<G: Grade>(
    tree: &Proof<G>,
    from: Mode,
    to: Mode,
) -> Result<Proof<G>, Vec<Diagnostic>> {
    check(tree, from)?;
    if from == to {
        return Ok(tree.clone());
    }
    if from == Mode::Dill || to == Mode::Dill {
        return Err(vec![Diagnostic::new(
            tree.tag(),
            DiagKind::ModeForbidsRule,
            "translation to or from dill is grade erasure, see rewrite::forget",
        )]);
    }
    let out = go(tree, to).map_err(|d| vec![d])?;
    check(&out, to)?;
    Ok(out)
}

fn go<G: Grade>(t: &Proof<G>, to: Mode) -> Result<Proof<G>, Diagnostic> {
    let prems = t
        .premises()
        .iter()
        .map(|p| go(p, to))
        .collect::<Result<Vec<_>, _>>()?;
    let tag = t.tag();
    if to == Mode::Idill && matches!(tag, RuleTag::D | RuleTag::CoD) {
        return Err(Diagnostic::new(
            tag,
            DiagKind::ModeForbidsRule,
            "dereliction and codereliction have no indexed counterpart",
        ));
    }
    if !to.allows(tag) {
        return Err(Diagnostic::new(
            tag,
            DiagKind::ModeForbidsRule,
            format!("rule `{tag}` is not available in {to}"),
        ));
    }
    if to != Mode::Idill {
        match t.rule() {
            Rule::WI { grade, formula } => {
                return derive_wi(prems[0].clone(), grade.clone(), formula.clone(), to);
            }
            Rule::CoWI { grade, formula } => {
                return derive_cowi(grade.clone(), formula.clone(), to)
            }
            _ => {}
        }
    }
    if prems
        .iter()
        .zip(t.premises())
        .all(|(a, b)| std::sync::Arc::ptr_eq(a, b))
    {
        return Ok(t.clone());
    }
    ProofTree::new(t.rule().clone(), prems)
}
