//! One step of cut reduction at a given cut node.

use super::purge::{mk_cowi, mk_wi, with_partner};
use super::{RewriteError, Step};
use crate::grading::Grade;
use crate::proofs::{ax, c, coc, cut, node, top, with, NodePath, Proof, Rule, RuleTag, Src};
use crate::syntax::Formula;

fn graded<G: Grade>(f: &Formula<G>) -> Result<(G, Formula<G>), RewriteError> {
    match f {
        Formula::WhyNotG(g, a) | Formula::OfCourseG(g, a) => Ok((g.clone(), (**a).clone())),
        _ => Err(RewriteError::Internal(format!(
            "expected a graded exponential, found {f}"
        ))),
    }
}

fn without<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    v.iter()
        .enumerate()
        .filter(|(k, _)| *k != i)
        .map(|(_, x)| x.clone())
        .collect()
}

pub(super) fn cut_step<G: Grade>(
    n: &Proof<G>,
    promotion: bool,
    path: &NodePath,
) -> Result<Step<G>, RewriteError> {
    let Rule::Cut { left: l, right: r } = *n.rule() else {
        return Err(RewriteError::Internal(format!(
            "cut reduction applied to `{}`",
            n.tag()
        )));
    };
    let (p, q) = (&n.premises()[0], &n.premises()[1]);

    if p.tag() == RuleTag::Ax {
        return Ok((q.clone(), "cut-axiom"));
    }
    if q.tag() == RuleTag::Ax {
        return Ok((p.clone(), "cut-axiom"));
    }
    for (a, i, b, j) in [(p, l, q, r), (q, r, p, l)] {
        if let Rule::Top { context } = a.rule() {
            if i < context.len() {
                let mut ctx = without(context, i);
                ctx.extend(without(&b.conclusion().0, j));
                return Ok((top(ctx), "cut-top"));
            }
        }
    }

    match (p.is_principal(l), q.is_principal(r)) {
        (true, true) => {
            if p.tag() == RuleTag::Prom || q.tag() == RuleTag::Prom {
                return promotion_cut(n, promotion, path);
            }
            if let Some(s) = key(p, q)? {
                return Ok(s);
            }
            if let Some(s) = key(q, p)? {
                return Ok(s);
            }
            Err(RewriteError::Unsupported {
                path: path.clone(),
                left: p.tag(),
                right: q.tag(),
            })
        }
        (false, _) => Ok((commute(p, l, q, r)?, "cut-commute")),
        (true, false) => Ok((commute(q, r, p, l)?, "cut-commute")),
    }
}

#[cfg(feature = "promotion")]
fn promotion_cut<G: Grade>(
    n: &Proof<G>,
    enabled: bool,
    path: &NodePath,
) -> Result<Step<G>, RewriteError> {
    if !enabled {
        return Err(RewriteError::PromotionDisabled { path: path.clone() });
    }
    crate::promotion::reduce_cut(n).map_err(|e| match e {
        RewriteError::DerelictionMeetsPromotion { .. } => {
            RewriteError::DerelictionMeetsPromotion { path: path.clone() }
        }
        e => e,
    })
}

#[cfg(not(feature = "promotion"))]
fn promotion_cut<G: Grade>(
    _: &Proof<G>,
    _: bool,
    path: &NodePath,
) -> Result<Step<G>, RewriteError> {
    Err(RewriteError::PromotionDisabled { path: path.clone() })
}

/// Principal cases with `p` on the left, or `None` if the pair does not match in this order.
fn key<G: Grade>(p: &Proof<G>, q: &Proof<G>) -> Result<Option<Step<G>>, RewriteError> {
    use Rule::*;
    let p0 = || p.premises()[0].clone();
    let out = match (p.rule(), q.rule()) {
        (W { .. } | WI { .. }, CoW { .. } | CoWI { .. }) => (p0(), "cut-weakening-coweakening"),
        (D { index: i }, CoD { index: j }) => (
            cut(*i, *j, p0(), q.premises()[0].clone())?,
            "cut-dereliction-codereliction",
        ),
        (C { left: a, right: b }, CoW { .. } | CoWI { .. }) => {
            let p1 = p0();
            let (x, body) = graded(&p1.conclusion()[*a])?;
            let (y, _) = graded(&p1.conclusion()[*b])?;
            let dual = body.negate();
            let t1 = cut(*a, 0, p1, mk_cowi(x, dual.clone()))?;
            let b2 = b - usize::from(a < b);
            (
                cut(b2, 0, t1, mk_cowi(y, dual))?,
                "cut-contraction-coweakening",
            )
        }
        (CoC { left: a, right: b }, W { .. } | WI { .. }) => {
            let (q1, q2) = (p.premises()[0].clone(), p.premises()[1].clone());
            let (x, _) = graded(&q1.conclusion()[*a])?;
            let (y, _) = graded(&q2.conclusion()[*b])?;
            let f = match q.rule() {
                W { formula } | WI { formula, .. } => formula.clone(),
                _ => unreachable!(),
            };
            let xi = q.premises()[0].clone();
            let t1 = mk_wi(x, f.clone(), xi.clone())?;
            let t2 = cut(*a, xi.conclusion().len(), q1, t1)?;
            let m = t2.conclusion().len();
            let t3 = mk_wi(y, f, t2)?;
            (cut(*b, m, q2, t3)?, "cut-cocontraction-weakening")
        }
        (
            C { left: a, right: b },
            CoC {
                left: cl,
                right: cr,
            },
        ) => (
            contraction_cocontraction(p, *a, *b, q, *cl, *cr)?,
            "cut-contraction-cocontraction",
        ),
        (
            Tensor {
                left: l1,
                right: r1,
            },
            Par { left: a, right: b },
        ) => {
            let (p1, p2) = (p.premises()[0].clone(), p.premises()[1].clone());
            let q1 = q.premises()[0].clone();
            let b2 = (p1.conclusion().len() - 1) + b - usize::from(a < b);
            let t1 = cut(*l1, *a, p1, q1)?;
            (cut(*r1, b2, p2, t1)?, "cut-tensor-par")
        }
        (One, Bot) => (q.premises()[0].clone(), "cut-one-bot"),
        (With { left: lw, .. }, Plus1 { index, .. }) => (
            cut(*lw, *index, p0(), q.premises()[0].clone())?,
            "cut-with-plus",
        ),
        (With { right: rw, .. }, Plus2 { index, .. }) => (
            cut(
                *rw,
                *index,
                p.premises()[1].clone(),
                q.premises()[0].clone(),
            )?,
            "cut-with-plus",
        ),
        _ => return Ok(None),
    };
    Ok(Some(out))
}

/// The contraction/cocontraction case, built from additive splitting and
/// graded axioms at the split grades.
fn contraction_cocontraction<G: Grade>(
    p: &Proof<G>,
    a: usize,
    b: usize,
    q: &Proof<G>,
    cl: usize,
    cr: usize,
) -> Result<Proof<G>, RewriteError> {
    let p1 = p.premises()[0].clone();
    let (q1, q2) = (q.premises()[0].clone(), q.premises()[1].clone());
    let (x1, body) = graded(&p1.conclusion()[a])?;
    let (x2, _) = graded(&p1.conclusion()[b])?;
    let (x3, _) = graded(&q1.conclusion()[cl])?;
    let (x4, _) = graded(&q2.conclusion()[cr])?;
    let s = G::additive_split(&x1, &x2, &x3, &x4).map_err(RewriteError::SplitUnavailable)?;
    let dual = body.negate();
    let pair = |g1: G, g2: G| {
        coc(
            1,
            1,
            ax(Formula::oc(g1, dual.clone())),
            ax(Formula::oc(g2, dual.clone())),
        )
    };

    let n = p1.conclusion().len() - 2;
    // Pi_a: split ?x2 into ?x23, ?x24.
    let pa = cut(b, 1, p1, pair(s.x23, s.x24.clone())?)?;
    // Pi_b: split ?x1 into ?x13, ?x14, then contract x13 with x23.
    let a2 = a - usize::from(b < a);
    let pb = cut(a2, 1, pa, pair(s.x13, s.x14)?)?;
    let pb = c(n, n + 2, pb)?;
    // Context, ?x3 (n), ?x24 (n+1), ?x14 (n+2).
    let t = cut(n, cl, pb, q1)?;
    let t = c(n + 1, n, t)?;
    Ok(cut(n, cr, t, q2)?)
}

/// Pushes the cut into the premise of `p` that owns the cut formula.
fn commute<G: Grade>(
    p: &Proof<G>,
    l: usize,
    q: &Proof<G>,
    r: usize,
) -> Result<Proof<G>, RewriteError> {
    let Src::Prem(pi, j) = p.sources()[l] else {
        return Err(RewriteError::Internal(
            "commuting a principal occurrence".into(),
        ));
    };
    let prems = p.premises();
    match p.rule() {
        Rule::Ex { .. } => Ok(cut(j, r, prems[0].clone(), q.clone())?),
        Rule::With { left, right } => {
            let k = with_partner(j, *left, *right);
            let t0 = cut(j, r, prems[0].clone(), q.clone())?;
            let t1 = cut(k, r, prems[1].clone(), q.clone())?;
            Ok(with(
                left - usize::from(*left > j),
                right - usize::from(*right > k),
                t0,
                t1,
            )?)
        }
        rule => {
            let mut ps = prems.to_vec();
            ps[pi] = cut(j, r, ps[pi].clone(), q.clone())?;
            Ok(node(reindex(rule, pi, |k| k - usize::from(k > j)), ps)?)
        }
    }
}

fn reindex<G: Grade>(rule: &Rule<G>, pi: usize, f: impl Fn(usize) -> usize) -> Rule<G> {
    use Rule::*;
    let mut rule = rule.clone();
    match &mut rule {
        Cut { left, right }
        | Tensor { left, right }
        | CoC { left, right }
        | UCoC { left, right } => {
            if pi == 0 {
                *left = f(*left);
            } else {
                *right = f(*right);
            }
        }
        Par { left, right } | C { left, right } | UC { left, right } => {
            *left = f(*left);
            *right = f(*right);
        }
        Plus1 { index, .. }
        | Plus2 { index, .. }
        | D { index }
        | CoD { index }
        | DI { index, .. }
        | CoDI { index, .. }
        | Prom { index, .. } => *index = f(*index),
        _ => {}
    }
    rule
}
