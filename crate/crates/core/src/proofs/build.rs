//! Shorthand constructors. Each validates the rule schema.

use super::{Diagnostic, Proof, ProofTree, Rule};
use crate::grading::Grade;
use crate::syntax::Formula;

type R<G> = Result<Proof<G>, Diagnostic>;

pub fn node<G: Grade>(rule: Rule<G>, premises: Vec<Proof<G>>) -> R<G> {
    ProofTree::new(rule, premises)
}

pub fn ax<G: Grade>(formula: Formula<G>) -> Proof<G> {
    ProofTree::new(Rule::Ax { formula }, vec![]).expect("axioms always build")
}

pub fn cut<G: Grade>(left: usize, right: usize, p: Proof<G>, q: Proof<G>) -> R<G> {
    node(Rule::Cut { left, right }, vec![p, q])
}

pub fn tensor<G: Grade>(left: usize, right: usize, p: Proof<G>, q: Proof<G>) -> R<G> {
    node(Rule::Tensor { left, right }, vec![p, q])
}

pub fn par<G: Grade>(left: usize, right: usize, p: Proof<G>) -> R<G> {
    node(Rule::Par { left, right }, vec![p])
}

pub fn one<G: Grade>() -> Proof<G> {
    ProofTree::new(Rule::One, vec![]).expect("one always builds")
}

pub fn bot<G: Grade>(p: Proof<G>) -> R<G> {
    node(Rule::Bot, vec![p])
}

pub fn top<G: Grade>(context: Vec<Formula<G>>) -> Proof<G> {
    ProofTree::new(Rule::Top { context }, vec![]).expect("top always builds")
}

pub fn with<G: Grade>(left: usize, right: usize, p: Proof<G>, q: Proof<G>) -> R<G> {
    node(Rule::With { left, right }, vec![p, q])
}

pub fn plus1<G: Grade>(index: usize, other: Formula<G>, p: Proof<G>) -> R<G> {
    node(Rule::Plus1 { index, other }, vec![p])
}

pub fn plus2<G: Grade>(index: usize, other: Formula<G>, p: Proof<G>) -> R<G> {
    node(Rule::Plus2 { index, other }, vec![p])
}

pub fn w<G: Grade>(formula: Formula<G>, p: Proof<G>) -> R<G> {
    node(Rule::W { formula }, vec![p])
}

pub fn wi<G: Grade>(grade: G, formula: Formula<G>, p: Proof<G>) -> R<G> {
    node(Rule::WI { grade, formula }, vec![p])
}

pub fn c<G: Grade>(left: usize, right: usize, p: Proof<G>) -> R<G> {
    node(Rule::C { left, right }, vec![p])
}

/// Indexed dereliction raising occurrence `index` by `witness`.
pub fn di<G: Grade>(index: usize, witness: G, p: Proof<G>) -> R<G> {
    let target = grade_at(&p, index, true)
        .map(|x| x.add(&witness))
        .unwrap_or_else(|| witness.clone());
    node(
        Rule::DI {
            index,
            target,
            witness,
        },
        vec![p],
    )
}

pub fn d<G: Grade>(index: usize, p: Proof<G>) -> R<G> {
    node(Rule::D { index }, vec![p])
}

pub fn cow<G: Grade>(formula: Formula<G>) -> Proof<G> {
    ProofTree::new(Rule::CoW { formula }, vec![]).expect("coweakening always builds")
}

pub fn cowi<G: Grade>(grade: G, formula: Formula<G>) -> Proof<G> {
    ProofTree::new(Rule::CoWI { grade, formula }, vec![]).expect("coweakening always builds")
}

pub fn coc<G: Grade>(left: usize, right: usize, p: Proof<G>, q: Proof<G>) -> R<G> {
    node(Rule::CoC { left, right }, vec![p, q])
}

pub fn codi<G: Grade>(index: usize, witness: G, p: Proof<G>) -> R<G> {
    let target = grade_at(&p, index, false)
        .map(|x| x.add(&witness))
        .unwrap_or_else(|| witness.clone());
    node(
        Rule::CoDI {
            index,
            target,
            witness,
        },
        vec![p],
    )
}

pub fn cod<G: Grade>(index: usize, p: Proof<G>) -> R<G> {
    node(Rule::CoD { index }, vec![p])
}

pub fn prom<G: Grade>(index: usize, grade: G, p: Proof<G>) -> R<G> {
    node(Rule::Prom { index, grade }, vec![p])
}

/// Exchange; `conclusion[i] = premise[perm[i]]`. The identity permutation is elided.
pub fn ex<G: Grade>(perm: Vec<usize>, p: Proof<G>) -> R<G> {
    if perm.iter().enumerate().all(|(i, &j)| i == j) && perm.len() == p.conclusion().len() {
        return Ok(p);
    }
    if let Rule::Ex { perm: inner } = p.rule() {
        if perm.len() == inner.len() && perm.iter().all(|&j| j < inner.len()) {
            let merged: Vec<usize> = perm.iter().map(|&j| inner[j]).collect();
            return ex(merged, p.premises()[0].clone());
        }
    }
    node(Rule::Ex { perm }, vec![p])
}

fn grade_at<G: Grade>(p: &ProofTree<G>, index: usize, why_not: bool) -> Option<G> {
    match (p.conclusion().0.get(index)?, why_not) {
        (Formula::WhyNotG(g, _), true) | (Formula::OfCourseG(g, _), false) => Some(g.clone()),
        _ => None,
    }
}
