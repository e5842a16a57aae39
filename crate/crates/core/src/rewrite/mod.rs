//! Two-phase cut elimination: indexed (co)derelictions are pushed to the
//! leaves first, then cuts are reduced until none remain.

mod cuts;
mod forget;
mod order;
mod purge;

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::grading::{Grade, GradeError};
use crate::proofs::{check, Diagnostic, Mode, NodePath, Proof, ProofTree, Rule, RuleTag};

pub use forget::forget;
pub use order::{permutation, restore_order};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("input does not check: {}", render_diags(.0))]
    CheckFailed(Vec<Diagnostic>),
    #[error("step budget of {0} rewrites exhausted")]
    StepBudgetExceeded(usize),
    #[error("additive splitting unavailable: {0}")]
    SplitUnavailable(GradeError),
    #[error("at {path}: indexed (co)dereliction meets a promotion; no commutation is known for this pair")]
    DerelictionMeetsPromotion { path: NodePath },
    #[error("at {path}: cut against a promotion, but promotion reductions are disabled")]
    PromotionDisabled { path: NodePath },
    #[error("indexed (co)dereliction at {path} has no ungraded counterpart")]
    ContainsIndexedDereliction { path: NodePath },
    #[error("promotion at {path} has no counterpart in the ungraded calculus")]
    ContainsPromotion { path: NodePath },
    #[error("not a cut between a promotion and a structural rule")]
    NotAPromotionCut,
    #[error("the grade semiring is not an integral domain")]
    NotIntegralDomain,
    #[error("multiplicative splitting unavailable: {0}")]
    MultSplitUnavailable(GradeError),
    #[error("at {path}: no reduction for a cut between `{left}` and `{right}`")]
    Unsupported {
        path: NodePath,
        left: RuleTag,
        right: RuleTag,
    },
    #[error("trace replay diverged at step {step}: {reason}")]
    ReplayMismatch { step: usize, reason: String },
    #[error("internal rewrite error: {0}")]
    Internal(String),
}

fn render_diags(ds: &[Diagnostic]) -> String {
    ds.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl From<Diagnostic> for RewriteError {
    fn from(d: Diagnostic) -> Self {
        RewriteError::Internal(format!("ill-formed reduct: {d}"))
    }
}

/// `(count, depth_sum)` of a class of nodes, compared lexicographically.
/// The depth of a node is the tree height minus the node's level. Exchange
/// nodes only record occurrence order and count for neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Measure {
    pub count: usize,
    pub depth_sum: usize,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.count, self.depth_sum)
    }
}

fn logical_height<G: Grade>(t: &ProofTree<G>) -> usize {
    let above = t
        .premises()
        .iter()
        .map(|p| logical_height(p))
        .max()
        .unwrap_or(0);
    above + usize::from(t.tag() != RuleTag::Ex)
}

pub fn measure<G: Grade>(tree: &ProofTree<G>, pred: impl Fn(RuleTag) -> bool) -> Measure {
    let h = logical_height(tree);
    let mut m = Measure::default();
    let mut stack = vec![(tree, 0usize)];
    while let Some((t, level)) = stack.pop() {
        if pred(t.tag()) {
            m.count += 1;
            m.depth_sum += h - level;
        }
        let next = level + usize::from(t.tag() != RuleTag::Ex);
        for p in t.premises() {
            stack.push((p, next));
        }
    }
    m
}

/// Measure of indexed (co)derelictions.
pub fn dereliction_measure<G: Grade>(tree: &ProofTree<G>) -> Measure {
    measure(tree, |t| matches!(t, RuleTag::DI | RuleTag::CoDI))
}

pub fn cut_measure<G: Grade>(tree: &ProofTree<G>) -> Measure {
    measure(tree, |t| t == RuleTag::Cut)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Purge,
    Cuts,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub phase: Phase,
    pub rule: &'static str,
    pub path: NodePath,
    pub before: Measure,
    pub after: Measure,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn extend(&mut self, other: Trace) {
        self.entries.extend(other.entries);
    }
}

/// One line per step: index, rewrite name, node path, measure before and after.
impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            writeln!(f, "{i} {} {} {} {}", e.rule, e.path, e.before, e.after)?;
        }
        Ok(())
    }
}

/// Redex selection among innermost candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub mode: Mode,
    pub budget: usize,
    pub promotion: bool,
    pub strategy: Strategy,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mode: Mode::Dbsll,
            budget: 100_000,
            promotion: false,
            strategy: Strategy::Leftmost,
        }
    }
}

impl Config {
    pub fn new(mode: Mode) -> Self {
        Config {
            mode,
            promotion: mode == Mode::DbsllProm,
            ..Config::default()
        }
    }
}

/// Paths of nodes with tag in `tags` that have no such node above them, in pre-order.
fn innermost<G: Grade>(t: &ProofTree<G>, tags: &[RuleTag]) -> Vec<NodePath> {
    fn go<G: Grade>(
        t: &ProofTree<G>,
        tags: &[RuleTag],
        path: &mut Vec<usize>,
        out: &mut Vec<NodePath>,
    ) -> bool {
        let mut found = false;
        let start = out.len();
        for (i, p) in t.premises().iter().enumerate() {
            path.push(i);
            found |= go(p, tags, path, out);
            path.pop();
        }
        if tags.contains(&t.tag()) {
            if !found {
                out.insert(start, NodePath(path.clone()));
            }
            return true;
        }
        found
    }
    let mut out = Vec::new();
    go(t, tags, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn arc_at<G: Grade>(root: &Proof<G>, path: &NodePath) -> Proof<G> {
    let mut t = root.clone();
    for &i in &path.0 {
        t = t.premises()[i].clone();
    }
    t
}

pub(crate) fn replace_at<G: Grade>(
    root: &Proof<G>,
    path: &[usize],
    new: Proof<G>,
) -> Result<Proof<G>, RewriteError> {
    let Some((&i, rest)) = path.split_first() else {
        return Ok(new);
    };
    let mut prems = root.premises().to_vec();
    prems[i] = replace_at(&prems[i], rest, new)?;
    if let Rule::Ex { perm } = root.rule() {
        return Ok(crate::proofs::ex(
            perm.clone(),
            prems.pop().expect("exchange has one premise"),
        )?);
    }
    Ok(ProofTree::new(root.rule().clone(), prems)?)
}

pub type Step<G> = (Proof<G>, &'static str);

fn rewrite_at<G: Grade>(
    root: &Proof<G>,
    path: &NodePath,
    f: impl FnOnce(&Proof<G>) -> Result<Step<G>, RewriteError>,
) -> Result<Step<G>, RewriteError> {
    let old = arc_at(root, path);
    let (new, name) = f(&old)?;
    let new = restore_order(&old, new)?;
    Ok((replace_at(root, &path.0, new)?, name))
}

/// Applies the single rewrite of `phase` at `path`, restoring occurrence order.
pub fn rewrite_step<G: Grade>(
    root: &Proof<G>,
    phase: Phase,
    path: &NodePath,
    cfg: &Config,
) -> Result<Step<G>, RewriteError> {
    match phase {
        Phase::Purge => rewrite_at(root, path, |n| purge::purge_step(n, path)),
        Phase::Cuts => rewrite_at(root, path, |n| cuts::cut_step(n, cfg.promotion, path)),
    }
}

fn run<G: Grade>(
    tree: &Proof<G>,
    phase: Phase,
    tags: &[RuleTag],
    cfg: &Config,
    steps: &mut usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Proof<G>, Trace), RewriteError> {
    // each sweep is measured on the nodes it moves
    let m = |t: &ProofTree<G>| measure(t, |x| tags.contains(&x));
    let mut cur = tree.clone();
    let mut trace = Trace::default();
    loop {
        let cands = innermost(&cur, tags);
        let Some(path) = (match cfg.strategy {
            Strategy::Leftmost => cands.first().cloned(),
            Strategy::Random(_) => cands.choose(rng).cloned(),
        }) else {
            return Ok((cur, trace));
        };
        if *steps >= cfg.budget {
            return Err(RewriteError::StepBudgetExceeded(cfg.budget));
        }
        *steps += 1;
        let before = m(&cur);
        let (next, rule) = rewrite_step(&cur, phase, &path, cfg)?;
        let after = m(&next);
        trace.entries.push(TraceEntry {
            phase,
            rule,
            path,
            before,
            after,
        });
        cur = next;
    }
}

fn rng(cfg: &Config) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(match cfg.strategy {
        Strategy::Random(s) => s,
        Strategy::Leftmost => 0,
    })
}

fn purge_with<G: Grade>(
    tree: &Proof<G>,
    cfg: &Config,
    steps: &mut usize,
) -> Result<(Proof<G>, Trace), RewriteError> {
    let mut r = rng(cfg);
    let (t1, mut tr) = run(tree, Phase::Purge, &[RuleTag::DI], cfg, steps, &mut r)?;
    let (t2, tr2) = run(&t1, Phase::Purge, &[RuleTag::CoDI], cfg, steps, &mut r)?;
    tr.extend(tr2);
    Ok((t2, tr))
}

fn cuts_with<G: Grade>(
    tree: &Proof<G>,
    cfg: &Config,
    steps: &mut usize,
) -> Result<(Proof<G>, Trace), RewriteError> {
    if let Some((path, _)) = tree
        .nodes()
        .into_iter()
        .find(|(_, n)| matches!(n.tag(), RuleTag::DI | RuleTag::CoDI))
    {
        return Err(RewriteError::ContainsIndexedDereliction { path });
    }
    let mut r = rng(cfg);
    run(tree, Phase::Cuts, &[RuleTag::Cut], cfg, steps, &mut r)
}

/// Phase one: moves every indexed dereliction, then every indexed
/// codereliction, to the top of the tree where it is absorbed.
pub fn push_derelictions<G: Grade>(
    tree: &Proof<G>,
    cfg: &Config,
) -> Result<(Proof<G>, Trace), RewriteError> {
    check(tree, cfg.mode).map_err(RewriteError::CheckFailed)?;
    purge_with(tree, cfg, &mut 0)
}

/// Phase two: cut reduction on a tree without indexed (co)derelictions.
pub fn eliminate_cuts<G: Grade>(
    tree: &Proof<G>,
    cfg: &Config,
) -> Result<(Proof<G>, Trace), RewriteError> {
    check(tree, cfg.mode).map_err(RewriteError::CheckFailed)?;
    cuts_with(tree, cfg, &mut 0)
}

/// Both phases. The result is cut-free, has the same conclusion and checks
/// in the configured mode.
pub fn normalize<G: Grade>(
    tree: &Proof<G>,
    cfg: &Config,
) -> Result<(Proof<G>, Trace), RewriteError> {
    check(tree, cfg.mode).map_err(RewriteError::CheckFailed)?;
    let mut steps = 0;
    let (t1, mut trace) = purge_with(tree, cfg, &mut steps)?;
    let (t2, tr2) = cuts_with(&t1, cfg, &mut steps)?;
    trace.extend(tr2);
    if let Err(e) = check(&t2, cfg.mode) {
        return Err(RewriteError::Internal(format!(
            "normal form does not check: {}",
            render_diags(&e)
        )));
    }
    Ok((t2, trace))
}

/// Re-applies a trace step by step and returns the final tree.
pub fn replay<G: Grade>(
    tree: &Proof<G>,
    trace: &Trace,
    cfg: &Config,
) -> Result<Proof<G>, RewriteError> {
    let mut cur = tree.clone();
    for (i, e) in trace.entries.iter().enumerate() {
        if cur.subtree(&e.path).is_none() {
            return Err(RewriteError::ReplayMismatch {
                step: i,
                reason: format!("no node at {}", e.path),
            });
        }
        let (next, rule) = rewrite_step(&cur, e.phase, &e.path, cfg)?;
        if rule != e.rule {
            return Err(RewriteError::ReplayMismatch {
                step: i,
                reason: format!("expected {}, applied {rule}", e.rule),
            });
        }
        cur = next;
    }
    Ok(cur)
}

/// Equality up to exchange nodes and occurrence indices.
pub fn alpha_eq<G: Grade>(a: &ProofTree<G>, b: &ProofTree<G>) -> bool {
    fn strip<G: Grade>(t: &ProofTree<G>) -> &ProofTree<G> {
        if t.tag() == RuleTag::Ex {
            strip(&t.premises()[0])
        } else {
            t
        }
    }
    let (a, b) = (strip(a), strip(b));
    use crate::proofs::Rule::*;
    let params_eq = match (a.rule(), b.rule()) {
        (Ax { formula: f }, Ax { formula: g }) => f == g || f.negate() == *g,
        (Top { .. }, Top { .. }) => true,
        (Plus1 { other: f, .. }, Plus1 { other: g, .. })
        | (Plus2 { other: f, .. }, Plus2 { other: g, .. }) => f == g,
        (W { formula: f }, W { formula: g }) | (CoW { formula: f }, CoW { formula: g }) => f == g,
        (
            WI {
                grade: x,
                formula: f,
            },
            WI {
                grade: y,
                formula: g,
            },
        )
        | (
            CoWI {
                grade: x,
                formula: f,
            },
            CoWI {
                grade: y,
                formula: g,
            },
        ) => x == y && f == g,
        (
            DI {
                target: x,
                witness: u,
                ..
            },
            DI {
                target: y,
                witness: v,
                ..
            },
        )
        | (
            CoDI {
                target: x,
                witness: u,
                ..
            },
            CoDI {
                target: y,
                witness: v,
                ..
            },
        ) => x == y && u == v,
        (Prom { grade: x, .. }, Prom { grade: y, .. }) => x == y,
        (r, s) => r.tag() == s.tag(),
    };
    params_eq
        && a.conclusion() == b.conclusion()
        && a.premises().len() == b.premises().len()
        && a.premises()
            .iter()
            .zip(b.premises())
            .all(|(p, q)| alpha_eq(p, q))
}

#[cfg(test)]
mod tests;
