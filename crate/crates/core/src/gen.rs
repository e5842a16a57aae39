//! Random well-typed proofs with cuts, for fuzzing the rewrite engine and
//! the semantics.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grading::Nat;
use crate::proofs::{self as p, check, Diagnostic, Mode, Proof};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub max_nodes: usize,
    pub max_height: usize,
    pub max_grade: u64,
    pub formula_depth: usize,
    pub atoms: Vec<String>,
    /// Allow `?A`, `!A`, `d` and `d̄`.
    pub ungraded: bool,
    pub additives: bool,
    /// Nesting budget of the construction; higher means more cuts.
    pub fuel: usize,
}

impl GenConfig {
    /// At most 40 nodes, grades at most 5.
    pub fn fuzz() -> GenConfig {
        GenConfig {
            max_nodes: 40,
            max_height: 40,
            max_grade: 5,
            formula_depth: 2,
            atoms: vec!["a".into(), "b".into()],
            ungraded: true,
            additives: true,
            fuel: 3,
        }
    }

    /// Small proofs over graded exponentials of atoms, suited to exhaustive
    /// relational evaluation.
    pub fn relational() -> GenConfig {
        GenConfig {
            max_nodes: 14,
            max_height: 10,
            max_grade: 3,
            formula_depth: 1,
            atoms: vec!["a".into(), "b".into()],
            ungraded: false,
            additives: false,
            fuel: 2,
        }
    }
}

type Built = Result<(Proof<Nat>, usize), Diagnostic>;

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
}

impl<'a, R: Rng> Gen<'a, R> {
    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn grade(&mut self) -> Nat {
        Nat(self.rng.gen_range(0..=self.cfg.max_grade))
    }

    fn atom(&mut self) -> Formula<Nat> {
        let name = self
            .cfg
            .atoms
            .choose(self.rng)
            .cloned()
            .unwrap_or_else(|| "a".into());
        if self.chance(0.5) {
            Formula::atom(&name)
        } else {
            Formula::dual_atom(&name)
        }
    }

    fn formula(&mut self, depth: usize) -> Formula<Nat> {
        if depth == 0 || self.chance(0.3) {
            return match self.rng.gen_range(0..10) {
                0 if self.cfg.additives => Formula::One,
                1 if self.cfg.additives => Formula::Bot,
                _ => self.atom(),
            };
        }
        let mut kinds = vec![0, 1, 2, 2, 3, 3];
        if self.cfg.additives {
            kinds.extend([4, 5]);
        }
        if self.cfg.ungraded {
            kinds.extend([6, 7]);
        }
        let sub = |g: &mut Self| g.formula(depth - 1);
        match *kinds.choose(self.rng).expect("non-empty") {
            0 => Formula::tensor(sub(self), sub(self)),
            1 => Formula::par(sub(self), sub(self)),
            2 => {
                let g = self.grade();
                Formula::wn(g, sub(self))
            }
            3 => {
                let g = self.grade();
                Formula::oc(g, sub(self))
            }
            4 => Formula::with(sub(self), sub(self)),
            5 => Formula::plus(sub(self), sub(self)),
            6 => Formula::why_not(sub(self)),
            _ => Formula::of_course(sub(self)),
        }
    }

    fn small_proof(&mut self) -> Proof<Nat> {
        if self.cfg.additives && self.chance(0.5) {
            p::one()
        } else {
            let a = self.atom();
            p::ax(a)
        }
    }

    /// A proof with `f` at the returned position.
    fn mk(&mut self, f: &Formula<Nat>, fuel: usize) -> Built {
        if fuel == 0 || self.chance(0.15) {
            return Ok((p::ax(f.clone()), 1));
        }
        if fuel > 1 && self.chance(0.25) {
            return self.mk_with_cut(f, fuel);
        }
        let built = match f {
            Formula::OfCourseG(x, a) => self.mk_bang(x, a, fuel)?,
            Formula::WhyNotG(x, a) => self.mk_why_not(x, a, fuel)?,
            Formula::Tensor(a, b) => {
                let (l, i) = self.mk(a, fuel - 1)?;
                let (r, j) = self.mk(b, fuel - 1)?;
                (p::tensor(i, j, l, r)?, i)
            }
            Formula::One => (p::one(), 0),
            Formula::Bot => {
                let q = self.small_proof();
                let n = q.conclusion().len();
                (p::bot(q)?, n)
            }
            Formula::Top => {
                let ctx = if self.chance(0.5) {
                    vec![self.atom()]
                } else {
                    vec![]
                };
                let n = ctx.len();
                (p::top(ctx), n)
            }
            Formula::Plus(a, b) => {
                if self.chance(0.5) {
                    let (q, i) = self.mk(a, fuel - 1)?;
                    (p::plus1(i, (**b).clone(), q)?, i)
                } else {
                    let (q, i) = self.mk(b, fuel - 1)?;
                    (p::plus2(i, (**a).clone(), q)?, i)
                }
            }
            Formula::With(a, b) if **a == **b => {
                let (q, i) = self.mk(a, fuel - 1)?;
                (p::with(i, i, q.clone(), q)?, i)
            }
            Formula::WhyNot(a) => {
                let (q, i) = self.mk(a, fuel - 1)?;
                (p::d(i, q)?, i)
            }
            Formula::OfCourse(a) => {
                let (q, i) = self.mk(a, fuel - 1)?;
                (p::cod(i, q)?, i)
            }
            _ => (p::ax(f.clone()), 1),
        };
        self.decorate(built.0, built.1, fuel)
    }

    fn mk_bang(
        &mut self,
        x: &Nat,
        a: &Formula<Nat>,
        fuel: usize,
    ) -> Result<(Proof<Nat>, usize), Diagnostic> {
        let bang = |g: u64| Formula::oc(Nat(g), a.clone());
        Ok(match self.rng.gen_range(0..4) {
            0 => (p::cowi(*x, a.clone()), 0),
            1 => {
                let y = self.rng.gen_range(0..=x.0);
                let (l, i) = self.mk(&bang(y), fuel - 1)?;
                let (r, j) = self.mk(&bang(x.0 - y), fuel - 1)?;
                (p::coc(i, j, l, r)?, i)
            }
            2 if x.0 > 0 => {
                let y = self.rng.gen_range(0..x.0);
                let (q, i) = self.mk(&bang(y), fuel - 1)?;
                (p::codi(i, Nat(x.0 - y), q)?, i)
            }
            _ => (p::ax(Formula::oc(*x, a.clone())), 1),
        })
    }

    fn mk_why_not(
        &mut self,
        x: &Nat,
        a: &Formula<Nat>,
        fuel: usize,
    ) -> Result<(Proof<Nat>, usize), Diagnostic> {
        let wn = |g: u64| Formula::wn(Nat(g), a.clone());
        Ok(match self.rng.gen_range(0..4) {
            0 => {
                let q = self.small_proof();
                let n = q.conclusion().len();
                (p::wi(*x, a.clone(), q)?, n)
            }
            1 => {
                let y = self.rng.gen_range(0..=x.0);
                let (q, i) = self.mk(&wn(y), fuel - 1)?;
                let n = q.conclusion().len();
                let q = p::wi(Nat(x.0 - y), a.clone(), q)?;
                (p::c(i, n, q)?, i)
            }
            2 if x.0 > 0 => {
                let y = self.rng.gen_range(0..x.0);
                let (q, i) = self.mk(&wn(y), fuel - 1)?;
                (p::di(i, Nat(x.0 - y), q)?, i)
            }
            _ => (p::ax(Formula::wn(*x, a.clone())), 1),
        })
    }

    /// Builds `f` next to some other formula and cuts that one away.
    fn mk_with_cut(&mut self, f: &Formula<Nat>, fuel: usize) -> Built {
        let (q, i) = self.mk(f, fuel - 1)?;
        let others: Vec<usize> = (0..q.conclusion().len()).filter(|k| *k != i).collect();
        let Some(&k) = others.choose(self.rng) else {
            return Ok((q, i));
        };
        let h = q.conclusion()[k].negate();
        let (r, j) = self.mk(&h, fuel - 1)?;
        Ok((p::cut(k, j, q, r)?, i - usize::from(k < i)))
    }

    fn graded_positions(&self, t: &Proof<Nat>, why_not: bool, skip: usize) -> Vec<(usize, u64)> {
        t.conclusion()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .filter_map(|(k, f)| match (f, why_not) {
                (Formula::WhyNotG(g, _), true) | (Formula::OfCourseG(g, _), false) => {
                    Some((k, g.0))
                }
                _ => None,
            })
            .collect()
    }

    /// Random structure around a proof, keeping track of position `pos`.
    fn decorate(&mut self, mut t: Proof<Nat>, mut pos: usize, fuel: usize) -> Built {
        let rounds = self.rng.gen_range(0..=fuel.min(2));
        for _ in 0..rounds {
            match self.rng.gen_range(0..6) {
                0 => {
                    let g = self.grade();
                    let a = self.formula(self.cfg.formula_depth.saturating_sub(1));
                    t = p::wi(g, a, t)?;
                }
                1 if self.cfg.additives => t = p::bot(t)?,
                2 => {
                    let n = t.conclusion().len();
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.shuffle(self.rng);
                    pos = perm.iter().position(|&j| j == pos).unwrap_or(pos);
                    t = p::ex(perm, t)?;
                }
                3 => {
                    let cands = self.graded_positions(&t, true, pos);
                    if let Some(&(k, g)) = cands.choose(self.rng) {
                        if g < self.cfg.max_grade {
                            let w = self.rng.gen_range(1..=self.cfg.max_grade - g);
                            t = p::di(k, Nat(w), t)?;
                        }
                    }
                }
                4 => {
                    let cands = self.graded_positions(&t, false, pos);
                    if let Some(&(k, g)) = cands.choose(self.rng) {
                        if g < self.cfg.max_grade {
                            let w = self.rng.gen_range(1..=self.cfg.max_grade - g);
                            t = p::codi(k, Nat(w), t)?;
                        }
                    }
                }
                _ => {
                    // contraction of two `?` occurrences of the same body
                    let cands = self.graded_positions(&t, true, usize::MAX);
                    'outer: for (x, gx) in &cands {
                        for (y, gy) in &cands {
                            if x < y && gx + gy <= self.cfg.max_grade {
                                let (fx, fy) = (&t.conclusion()[*x], &t.conclusion()[*y]);
                                if let (Formula::WhyNotG(_, ax), Formula::WhyNotG(_, ay)) = (fx, fy)
                                {
                                    if ax == ay && *y != pos {
                                        let (x, y) = (*x, *y);
                                        t = p::c(x, y, t)?;
                                        pos = if pos > y { pos - 1 } else { pos };
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok((t, pos))
    }
}

/// One proof rooted in a cut between a random formula and its dual,
/// within the node and height bounds.
pub fn random_proof<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Proof<Nat> {
    let mut fuel = cfg.fuel;
    let mut attempts = 0usize;
    loop {
        attempts += 1;
        if attempts % 20 == 0 && fuel > 1 {
            fuel -= 1;
        }
        let mut g = Gen { rng, cfg };
        let f = g.formula(cfg.formula_depth);
        let built = (|| {
            let (l, i) = g.mk(&f, fuel)?;
            let (r, j) = g.mk(&f.negate(), fuel)?;
            let t = p::cut(i, j, l, r)?;
            g.decorate(t, usize::MAX, fuel)
        })();
        let Ok((t, _)) = built else { continue };
        if t.size() <= cfg.max_nodes
            && t.height() <= cfg.max_height
            && check(&t, Mode::Dbsll).is_ok()
        {
            return t;
        }
    }
}

/// `n` proofs from a seeded generator.
pub fn corpus(seed: u64, n: usize, cfg: &GenConfig) -> Vec<Proof<Nat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_proof(&mut rng, cfg)).collect()
}

/// Largest grade occurring anywhere in the proof.
pub fn max_grade(t: &Proof<Nat>) -> u64 {
    t.nodes()
        .iter()
        .flat_map(|(_, n)| {
            n.conclusion()
                .iter()
                .flat_map(|f| f.grades().into_iter().map(|g| g.0))
                .collect::<Vec<_>>()
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::RuleTag;

    #[test]
    fn corpus_respects_bounds() {
        let cfg = GenConfig::fuzz();
        let ts = corpus(7, 60, &cfg);
        assert!(ts
            .iter()
            .all(|t| t.size() <= 40 && check(t, Mode::Dbsll).is_ok()));
        assert!(ts.iter().all(|t| t.contains(RuleTag::Cut)));
        assert!(ts
            .iter()
            .any(|t| t.contains(RuleTag::DI) || t.contains(RuleTag::CoDI)));
        assert!(ts.iter().any(|t| t.count(RuleTag::Cut) > 1));
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let cfg = GenConfig::relational();
        assert_eq!(corpus(3, 5, &cfg), corpus(3, 5, &cfg));
        assert!(corpus(3, 20, &cfg)
            .iter()
            .all(|t| t.height() <= 10 && max_grade(t) <= 3));
    }
}
