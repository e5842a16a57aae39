//! Graded promotion and its cut reductions over a semiring of grades.
//!
//! These reductions are only reached from the cut phase when the crate is
//! built with the `promotion` feature and [`Config::promotion`] is set. No
//! termination claim is made for normalization with promotion.
//!
//! [`Config::promotion`]: crate::rewrite::Config

use crate::grading::Grade;
use crate::proofs::{ax, c, coc, cow, cut, di, prom, NodePath, Proof, Rule, RuleTag};
use crate::rewrite::{restore_order, RewriteError, Step};
use crate::syntax::Formula;

fn graded<G: Grade>(f: &Formula<G>) -> Result<(G, Formula<G>), RewriteError> {
    match f {
        Formula::WhyNotG(g, a) | Formula::OfCourseG(g, a) => Ok((g.clone(), (**a).clone())),
        _ => Err(RewriteError::Internal(format!(
            "expected a graded exponential, found {f}"
        ))),
    }
}

fn mul<G: Grade>(a: &G, b: &G) -> Result<G, RewriteError> {
    a.mul(b).map_err(|e| RewriteError::Internal(e.to_string()))
}

fn sum<'a, G: Grade>(it: impl Iterator<Item = &'a G>) -> G {
    it.fold(G::zero(), |acc, g| acc.add(g))
}

type Sides<'a, G> = (&'a Proof<G>, usize, &'a Proof<G>, usize);

/// Orients a cut as `(promotion, its cut position, other, its cut position)`.
/// With `on_bang` the promotion must be cut on its `!` conclusion, otherwise
/// on a context formula. Both cut formulas must be principal.
fn sides<G: Grade>(n: &Proof<G>, on_bang: bool) -> Result<Sides<'_, G>, RewriteError> {
    let Rule::Cut { left, right } = *n.rule() else {
        return Err(RewriteError::NotAPromotionCut);
    };
    let (p, q) = (&n.premises()[0], &n.premises()[1]);
    for (a, i, b, j) in [(p, left, q, right), (q, right, p, left)] {
        if let Rule::Prom { index, .. } = a.rule() {
            if (*index == i) == on_bang && b.is_principal(j) {
                return Ok((a, i, b, j));
            }
        }
    }
    Err(RewriteError::NotAPromotionCut)
}

/// Context formulas of a promotion premise as `(position, grade, body)`.
fn context<G: Grade>(
    premise: &Proof<G>,
    bang: usize,
) -> Result<Vec<(usize, G, Formula<G>)>, RewriteError> {
    let mut out = Vec::new();
    for (k, f) in premise.conclusion().iter().enumerate() {
        if k != bang {
            let (g, a) = graded(f)?;
            out.push((k, g, a));
        }
    }
    Ok(out)
}

/// Weakening at `grade`, ungraded when the grade is zero.
fn weaken<G: Grade>(grade: G, formula: Formula<G>, p: Proof<G>) -> Result<Proof<G>, RewriteError> {
    Ok(if grade.is_zero() {
        crate::proofs::w(formula, p)?
    } else {
        crate::proofs::wi(grade, formula, p)?
    })
}

/// Splits `?_{x+y} A` at `index` into `?_x A, ?_y A`, appended at the end,
/// by cutting against two graded axioms joined by a cocontraction.
pub fn cocontraction_dual<G: Grade>(
    p: Proof<G>,
    index: usize,
    x: G,
    y: G,
) -> Result<Proof<G>, RewriteError> {
    let (_, a) = graded(&p.conclusion()[index])?;
    let dual = a.negate();
    let pair = coc(
        1,
        1,
        ax(Formula::oc(x, dual.clone())),
        ax(Formula::oc(y, dual)),
    )?;
    Ok(cut(index, 1, p, pair)?)
}

/// A promotion cut on its `!` against a weakening, contraction, indexed
/// dereliction or the context of another promotion.
pub fn reduce_prom_structural<G: Grade>(n: &Proof<G>) -> Result<Proof<G>, RewriteError> {
    let (p, i, q, j) = sides(n, true)?;
    let pi1 = p.premises()[0].clone();
    let ctx = context(&pi1, i)?;
    let m = ctx.len();
    let out = match q.rule() {
        Rule::W { .. } | Rule::WI { .. } => {
            let Rule::Prom { grade: g, .. } = p.rule() else {
                unreachable!()
            };
            let mut t = q.premises()[0].clone();
            for (_, z, a) in ctx {
                t = weaken(mul(&z, g)?, a, t)?;
            }
            t
        }
        Rule::C { left: a, right: b } => {
            let pi2 = q.premises()[0].clone();
            let (x, _) = graded(&pi2.conclusion()[*a])?;
            let (y, _) = graded(&pi2.conclusion()[*b])?;
            let px = prom(i, x, pi1.clone())?;
            let py = prom(i, y, pi1)?;
            let t = cut(i, *b, py, pi2)?;
            let a2 = m + a - usize::from(b < a);
            let mut t = cut(i, a2, px, t)?;
            // x-copies sit at 0..m, y-copies start at m; contract pairwise left to right.
            for k in 0..m {
                t = c(k, m, t)?;
            }
            t
        }
        Rule::DI {
            index: jj, witness, ..
        } => {
            let pi2 = q.premises()[0].clone();
            let (y, _) = graded(&pi2.conclusion()[*jj])?;
            let mut t = cut(i, *jj, prom(i, y, pi1)?, pi2)?;
            for (k, (_, z, _)) in ctx.iter().enumerate() {
                let w = mul(z, witness)?;
                if !w.is_zero() {
                    t = di(k, w, t)?;
                }
            }
            t
        }
        Rule::Prom {
            index: i2,
            grade: x,
        } => {
            let pi2 = q.premises()[0].clone();
            let (y, _) = graded(&pi2.conclusion()[j])?;
            let t = cut(i, j, prom(i, y, pi1)?, pi2)?;
            prom(m + i2 - usize::from(j < *i2), x.clone(), t)?
        }
        _ => return Err(RewriteError::NotAPromotionCut),
    };
    restore_order(n, out)
}

/// A coweakening cut against a context formula `?_{xz} A^` of a promotion
/// of grade `z`. Needs an integral domain so that `x = 0` or `z = 0`.
pub fn reduce_cow_prom<G: Grade>(n: &Proof<G>) -> Result<Proof<G>, RewriteError> {
    let (p, i, q, _) = sides(n, false)?;
    match q.rule() {
        Rule::CoW { .. } => {}
        Rule::CoWI { grade, .. } if grade.is_zero() => {}
        _ => return Err(RewriteError::NotAPromotionCut),
    }
    if !G::is_integral_domain() {
        return Err(RewriteError::NotIntegralDomain);
    }
    let Rule::Prom { index, grade: z } = p.rule() else {
        unreachable!()
    };
    let pi = p.premises()[0].clone();
    let (x, _) = graded(&pi.conclusion()[i])?;
    let out = if x.is_zero() {
        let t = cut(i, 0, pi, q.clone())?;
        prom(index - usize::from(i < *index), z.clone(), t)?
    } else if z.is_zero() {
        let mut t = cow(pi.conclusion()[*index].clone());
        for (k, _, b) in context(&pi, *index)? {
            if k != i {
                t = weaken(G::zero(), b, t)?;
            }
        }
        t
    } else {
        return Err(RewriteError::Internal(format!(
            "{x} * {z} vanishes with both factors nonzero"
        )));
    };
    restore_order(n, out)
}

/// A cocontraction of `!_x A` and `!_y A` cut against `?_{rt} A^` in the
/// context of a promotion of grade `t`, via multiplicative splitting of
/// `r t = x + y`.
pub fn reduce_coc_prom<G: Grade>(n: &Proof<G>) -> Result<Proof<G>, RewriteError> {
    let (p, j, q, _) = sides(n, false)?;
    let Rule::CoC { left: a, right: b } = *q.rule() else {
        return Err(RewriteError::NotAPromotionCut);
    };
    let Rule::Prom {
        index: bang,
        grade: t,
    } = p.rule()
    else {
        unreachable!()
    };
    let pi3 = p.premises()[0].clone();
    let (pi1, pi2) = (q.premises()[0].clone(), q.premises()[1].clone());
    let (x, _) = graded(&pi1.conclusion()[a])?;
    let (y, _) = graded(&pi2.conclusion()[b])?;
    let (r, _) = graded(&pi3.conclusion()[j])?;
    let ms = G::mult_split(&r, t, &x, &y).map_err(RewriteError::MultSplitUnavailable)?;

    // Each block: the dual cocontraction separates the r_i landing in x from
    // the rest, then promotion at t_j.
    let ci = bang - usize::from(j < *bang);
    let len = pi3.conclusion().len() + 1;
    let mut blocks = Vec::new();
    for (jj, tj) in ms.r_parts.iter().enumerate() {
        let (inside, outside): (Vec<_>, Vec<_>) = ms
            .s_parts
            .iter()
            .enumerate()
            .partition(|(ii, _)| ms.in_u(*ii, jj));
        let u = sum(inside.into_iter().map(|(_, g)| g));
        let v = sum(outside.into_iter().map(|(_, g)| g));
        blocks.push(prom(
            ci,
            tj.clone(),
            cocontraction_dual(pi3.clone(), j, u, v)?,
        )?);
    }

    let merged = if blocks.is_empty() {
        // t decomposes into no parts, so every grade in the conclusion is zero.
        let mut acc = cow(pi3.conclusion()[*bang].clone());
        for (k, _, f) in context(&pi3, *bang)? {
            if k != j {
                acc = weaken(G::zero(), f, acc)?;
            }
        }
        let (_, abody) = graded(&pi3.conclusion()[j])?;
        acc = weaken(G::zero(), abody.clone(), acc)?;
        weaken(G::zero(), abody, acc)?
    } else {
        let mut acc = blocks[0].clone();
        for blk in &blocks[1..] {
            acc = coc(ci, ci, acc, blk.clone())?;
        }
        for _ in 1..blocks.len() {
            for k in (0..len).filter(|&k| k != ci) {
                acc = c(k, len, acc)?;
            }
        }
        acc
    };
    let t1 = cut(len - 1, b, merged, pi2)?;
    let t2 = cut(len - 2, a, t1, pi1)?;
    restore_order(n, t2)
}

/// Dispatches a principal cut involving a promotion.
pub fn reduce_cut<G: Grade>(n: &Proof<G>) -> Result<Step<G>, RewriteError> {
    if let Ok((_, _, q, _)) = sides(n, true) {
        let name = match q.tag() {
            RuleTag::W | RuleTag::WI => "prom-weakening",
            RuleTag::C => "prom-contraction",
            RuleTag::DI => "prom-dereliction",
            RuleTag::Prom => "prom-prom",
            _ => return Err(RewriteError::NotAPromotionCut),
        };
        return Ok((reduce_prom_structural(n)?, name));
    }
    let (_, _, q, _) = sides(n, false)?;
    match q.tag() {
        RuleTag::CoW | RuleTag::CoWI => Ok((reduce_cow_prom(n)?, "coweakening-prom")),
        RuleTag::CoC => Ok((reduce_coc_prom(n)?, "cocontraction-prom")),
        RuleTag::CoDI => Err(RewriteError::DerelictionMeetsPromotion {
            path: NodePath::root(),
        }),
        _ => Err(RewriteError::NotAPromotionCut),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::Nat;
    use crate::proofs::{check, one, print_proof, w, wi, Mode};

    fn n(v: u64) -> Nat {
        Nat(v)
    }

    fn a() -> Formula<Nat> {
        Formula::atom("a")
    }

    fn b() -> Formula<Nat> {
        Formula::atom("b")
    }

    fn valid(before: &Proof<Nat>, after: &Proof<Nat>) {
        check(before, Mode::DbsllProm).unwrap();
        check(after, Mode::DbsllProm).unwrap_or_else(|e| panic!("{}: {e:?}", print_proof(after)));
        assert!(after.conclusion().ordered_eq(before.conclusion()));
    }

    /// `⊢ !_g 1, ?_{z g} a`.
    fn promoted(z: u64, g: u64) -> Proof<Nat> {
        prom(0, n(g), wi(n(z), a(), one()).unwrap()).unwrap()
    }

    #[test]
    fn dual_cocontraction_shape() {
        let p = wi(n(5), a(), one()).unwrap();
        let t = cocontraction_dual(p, 1, n(2), n(3)).unwrap();
        assert_eq!(t.conclusion().render(true), "|- 1, (?{2} a), (?{3} a)");
        assert_eq!(t.premises()[1].tag(), RuleTag::CoC);
        assert!(t.premises()[1]
            .premises()
            .iter()
            .all(|x| x.tag() == RuleTag::Ax));
    }

    #[test]
    fn promotion_against_weakening() {
        let q = w(Formula::Bot, one()).unwrap();
        let n0 = cut(0, 1, promoted(2, 0), q).unwrap();
        let (t, name) = reduce_cut(&n0).unwrap();
        assert_eq!(name, "prom-weakening");
        valid(&n0, &t);
        assert_eq!(t.count(RuleTag::W), 1);
        assert!(t.is_cut_free());
    }

    #[test]
    fn promotion_against_contraction() {
        for (x, y, z) in [(1, 2, 1), (0, 3, 2), (2, 2, 0)] {
            let bot = Formula::Bot;
            let q = c(
                1,
                2,
                wi(n(x), bot.clone(), wi(n(y), bot, one()).unwrap()).unwrap(),
            )
            .unwrap();
            let n0 = cut(0, 1, promoted(z, x + y), q).unwrap();
            let (t, name) = reduce_cut(&n0).unwrap();
            assert_eq!(name, "prom-contraction");
            valid(&n0, &t);
            assert_eq!(t.count(RuleTag::Prom), 2);
            assert_eq!(t.count(RuleTag::Cut), 2);
        }
    }

    #[test]
    fn promotion_against_promotion() {
        let bot = Formula::Bot;
        let body = wi(n(2), bot, wi(n(1), b(), one()).unwrap()).unwrap();
        let right = prom(0, n(3), body).unwrap();
        let left = promoted(1, 6);
        let n0 = cut(0, 2, left, right).unwrap();
        let (t, name) = reduce_cut(&n0).unwrap();
        assert_eq!(name, "prom-prom");
        valid(&n0, &t);
        assert_eq!(t.tag(), RuleTag::Prom);
    }

    #[test]
    fn promotion_against_dereliction() {
        let bot = Formula::Bot;
        let q = di(1, n(2), wi(n(1), bot, one()).unwrap()).unwrap();
        let n0 = cut(0, 1, promoted(2, 3), q).unwrap();
        let (t, name) = reduce_cut(&n0).unwrap();
        assert_eq!(name, "prom-dereliction");
        valid(&n0, &t);
        assert_eq!(t.count(RuleTag::DI), 1);
    }

    #[test]
    fn coweakening_against_promotion_both_branches() {
        // x = 0: ⊢ ?_0 a, ?_2 b, 1 promoted at 3.
        let body = wi(n(2), b(), wi(n(0), a(), one()).unwrap()).unwrap();
        let p = prom(0, n(3), body).unwrap();
        let n0 = cut(1, 0, p, cow(a().negate())).unwrap();
        let t = reduce_cow_prom(&n0).unwrap();
        valid(&n0, &t);
        assert_eq!(t.tag(), RuleTag::Prom);
        assert!(t.contains(RuleTag::Prom));

        // z = 0: the whole tree collapses to coweakening and weakenings.
        let body = wi(n(2), b(), wi(n(4), a(), one()).unwrap()).unwrap();
        let p = prom(0, n(0), body).unwrap();
        let n0 = cut(1, 0, p, cow(a().negate())).unwrap();
        let t = reduce_cow_prom(&n0).unwrap();
        valid(&n0, &t);
        assert!(!t.contains(RuleTag::Prom) && t.is_cut_free());
    }

    #[test]
    fn cocontraction_against_promotion() {
        // r = 2, t = 3, x = 1, y = 5.
        let body = wi(n(2), a(), wi(n(1), b(), one()).unwrap()).unwrap();
        let p = prom(0, n(3), body).unwrap();
        let q = coc(
            0,
            0,
            crate::proofs::cowi(n(1), a().negate()),
            crate::proofs::cowi(n(5), a().negate()),
        )
        .unwrap();
        let n0 = cut(2, 0, p, q).unwrap();
        let (t, name) = reduce_cut(&n0).unwrap();
        assert_eq!(name, "cocontraction-prom");
        valid(&n0, &t);
        assert_eq!(t.count(RuleTag::Prom), 3);

        // r = 1, t = 1: a single block, no cocontraction cascade.
        let body = wi(n(1), a(), one()).unwrap();
        let p = prom(0, n(1), body).unwrap();
        let q = coc(
            0,
            0,
            crate::proofs::cowi(n(1), a().negate()),
            cow(a().negate()),
        )
        .unwrap();
        let n0 = cut(1, 0, p, q).unwrap();
        let t = reduce_coc_prom(&n0).unwrap();
        valid(&n0, &t);
        assert_eq!(t.count(RuleTag::Prom), 1);
        assert_eq!(t.count(RuleTag::C), 0);
    }

    #[test]
    fn codereliction_against_promotion_is_rejected() {
        let q = crate::proofs::codi(0, n(1), crate::proofs::cowi(n(1), a().negate())).unwrap();
        let body = wi(n(1), a(), one()).unwrap();
        let p = prom(0, n(2), body).unwrap();
        let n0 = cut(1, 0, p, q).unwrap();
        assert!(matches!(
            reduce_cut(&n0),
            Err(RewriteError::DerelictionMeetsPromotion { .. })
        ));
    }
}
