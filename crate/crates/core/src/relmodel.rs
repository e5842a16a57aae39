//! Graded relational semantics over finite base sets with natural-number
//! grades. Formulas denote finite sets, proofs denote sets of tuples with
//! one coordinate per occurrence of the conclusion.
//!
//! `!_x A` and `?_x A` both denote the bags over `A` of weight at most `x`.
//! Ungraded exponentials are truncated at [`RelConfig::bound`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::grading::Nat;
use crate::proofs::{check, Diagnostic, Mode, ProofTree, Rule, RuleTag};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Tok(String),
    Unit,
    Pair(Box<Value>, Box<Value>),
    Inl(Box<Value>),
    Inr(Box<Value>),
    Bag(Bag),
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(b))
    }

    pub fn tok(s: &str) -> Value {
        Value::Tok(s.to_string())
    }

    pub fn as_bag(&self) -> Option<&Bag> {
        match self {
            Value::Bag(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match self {
            Value::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Tok(s) => write!(f, "{s}"),
            Value::Unit => write!(f, "*"),
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
            Value::Inl(a) => write!(f, "inl {a}"),
            Value::Inr(a) => write!(f, "inr {a}"),
            Value::Bag(b) => write!(f, "{b}"),
        }
    }
}

/// A finitely supported map to multiplicities. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bag(BTreeMap<Value, u64>);

impl Bag {
    pub fn empty() -> Bag {
        Bag::default()
    }

    pub fn singleton(v: Value) -> Bag {
        Bag(BTreeMap::from([(v, 1)]))
    }

    pub fn from_counts(it: impl IntoIterator<Item = (Value, u64)>) -> Bag {
        let mut b = Bag::empty();
        for (v, n) in it {
            b.insert(v, n);
        }
        b
    }

    pub fn insert(&mut self, v: Value, n: u64) {
        if n > 0 {
            *self.0.entry(v).or_insert(0) += n;
        }
    }

    pub fn get(&self, v: &Value) -> u64 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn sum(&self, other: &Bag) -> Bag {
        let mut out = self.clone();
        for (v, n) in &other.0 {
            out.insert(v.clone(), *n);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Value, u64)> {
        self.0.iter().map(|(v, n)| (v, *n))
    }

    pub fn support(&self) -> impl Iterator<Item = &Value> {
        self.0.keys()
    }
}

impl fmt::Display for Bag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .0
            .iter()
            .flat_map(|(v, n)| std::iter::repeat(v.to_string()).take(*n as usize))
            .collect();
        write!(f, "[{}]", items.join(", "))
    }
}

/// A bag over pairs; its marginals are the two bags it relates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coupling(pub Bag);

impl Coupling {
    fn marginal(&self, first: bool) -> Bag {
        let mut out = Bag::empty();
        for (v, n) in self.0.iter() {
            if let Some((a, b)) = v.as_pair() {
                out.insert(if first { a } else { b }.clone(), n);
            }
        }
        out
    }

    pub fn left(&self) -> Bag {
        self.marginal(true)
    }

    pub fn right(&self) -> Bag {
        self.marginal(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("atom `{0}` has no base set")]
    UnassignedAtom(String),
    #[error("enumerating {what} needs {size} elements, above the limit of {limit}")]
    BoundTooLarge {
        what: String,
        size: u128,
        limit: usize,
    },
    #[error("rule `{0}` has no relational interpretation here")]
    Unsupported(RuleTag),
    #[error("proof does not check")]
    CheckFailed(Vec<Diagnostic>),
    #[error("assignment line {line}: {message}")]
    BadAssignment { line: usize, message: String },
}

/// Atom name to the tokens of its base set.
pub type BaseAssignment = BTreeMap<String, Vec<String>>;

/// Reads lines of the form `a = x y z`. Blank lines and `#` comments are skipped.
pub fn parse_assignment(text: &str) -> Result<BaseAssignment, RelError> {
    let mut out = BaseAssignment::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |m: &str| RelError::BadAssignment {
            line: i + 1,
            message: m.to_string(),
        };
        let (name, rest) = line
            .split_once('=')
            .ok_or_else(|| bad("expected `atom = elements`"))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(bad("atom name must be a single word"));
        }
        let mut elems: Vec<String> = rest
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect();
        elems.sort();
        elems.dedup();
        if out.insert(name.to_string(), elems).is_some() {
            return Err(bad("atom assigned twice"));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelConfig {
    /// Weight bound for the ungraded exponentials.
    pub bound: u64,
    /// Largest set any enumeration may produce.
    pub max_elements: usize,
}

impl Default for RelConfig {
    fn default() -> Self {
        RelConfig {
            bound: 3,
            max_elements: 200_000,
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Every bag over `elems` of weight at most `w`.
pub fn bags_upto(elems: &[Value], w: u64, limit: usize) -> Result<Vec<Bag>, RelError> {
    let count = binomial(elems.len() as u128 + w as u128, w as u128);
    if count > limit as u128 {
        return Err(RelError::BoundTooLarge {
            what: format!("bags of weight <= {w} over {} elements", elems.len()),
            size: count,
            limit,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut counts = vec![0u64; elems.len()];
    fn go(i: usize, left: u64, elems: &[Value], counts: &mut Vec<u64>, out: &mut Vec<Bag>) {
        if i == elems.len() {
            out.push(Bag::from_counts(
                elems.iter().cloned().zip(counts.iter().copied()),
            ));
            return;
        }
        for n in 0..=left {
            counts[i] = n;
            go(i + 1, left - n, elems, counts, out);
        }
        counts[i] = 0;
    }
    go(0, w, elems, &mut counts, &mut out);
    Ok(out)
}

fn guard(what: impl FnOnce() -> String, size: u128, cfg: &RelConfig) -> Result<(), RelError> {
    if size > cfg.max_elements as u128 {
        return Err(RelError::BoundTooLarge {
            what: what(),
            size,
            limit: cfg.max_elements,
        });
    }
    Ok(())
}

/// The finite set denoted by `f`.
pub fn interp_formula(
    f: &Formula<Nat>,
    ba: &BaseAssignment,
    cfg: &RelConfig,
) -> Result<BTreeSet<Value>, RelError> {
    use Formula::*;
    Ok(match f {
        Atom { name, .. } => {
            let elems = ba
                .get(name)
                .ok_or_else(|| RelError::UnassignedAtom(name.clone()))?;
            elems.iter().map(|e| Value::tok(e)).collect()
        }
        One | Bot => BTreeSet::from([Value::Unit]),
        Top | Zero => BTreeSet::new(),
        Tensor(a, b) | Par(a, b) => {
            let (sa, sb) = (interp_formula(a, ba, cfg)?, interp_formula(b, ba, cfg)?);
            guard(|| format!("{f}"), sa.len() as u128 * sb.len() as u128, cfg)?;
            sa.iter()
                .flat_map(|x| sb.iter().map(move |y| Value::pair(x.clone(), y.clone())))
                .collect()
        }
        With(a, b) | Plus(a, b) => {
            let (sa, sb) = (interp_formula(a, ba, cfg)?, interp_formula(b, ba, cfg)?);
            sa.into_iter()
                .map(|x| Value::Inl(Box::new(x)))
                .chain(sb.into_iter().map(|y| Value::Inr(Box::new(y))))
                .collect()
        }
        WhyNot(a) | OfCourse(a) => bag_set(a, cfg.bound, ba, cfg)?,
        WhyNotG(x, a) | OfCourseG(x, a) => bag_set(a, x.0, ba, cfg)?,
    })
}

fn bag_set(
    a: &Formula<Nat>,
    w: u64,
    ba: &BaseAssignment,
    cfg: &RelConfig,
) -> Result<BTreeSet<Value>, RelError> {
    let elems: Vec<Value> = interp_formula(a, ba, cfg)?.into_iter().collect();
    Ok(bags_upto(&elems, w, cfg.max_elements)?
        .into_iter()
        .map(Value::Bag)
        .collect())
}

/// A relation given as the set of its tuples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelDen {
    pub tuples: BTreeSet<Vec<Value>>,
}

impl RelDen {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }
}

impl fmt::Display for RelDen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tuples {
            let cells: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            writeln!(f, "({})", cells.join(" ; "))?;
        }
        Ok(())
    }
}

fn bag_of(v: &Value) -> Bag {
    v.as_bag().cloned().unwrap_or_default()
}

fn without(t: &[Value], i: usize) -> Vec<Value> {
    t.iter()
        .enumerate()
        .filter(|(k, _)| *k != i)
        .map(|(_, v)| v.clone())
        .collect()
}

fn ungraded_at(f: &Formula<Nat>) -> bool {
    matches!(f, Formula::WhyNot(_) | Formula::OfCourse(_))
}

/// The relation denoted by a proof. Checks the proof first; promotion is
/// not interpreted.
pub fn interp_proof(
    tree: &ProofTree<Nat>,
    ba: &BaseAssignment,
    cfg: &RelConfig,
) -> Result<RelDen, RelError> {
    check(tree, Mode::DbsllProm)
        .or_else(|e| check(tree, Mode::Dill).map_err(|_| e))
        .map_err(RelError::CheckFailed)?;
    Ok(RelDen {
        tuples: interp(tree, ba, cfg)?,
    })
}

fn interp(
    t: &ProofTree<Nat>,
    ba: &BaseAssignment,
    cfg: &RelConfig,
) -> Result<BTreeSet<Vec<Value>>, RelError> {
    use Rule::*;
    let prem: Vec<BTreeSet<Vec<Value>>> = t
        .premises()
        .iter()
        .map(|p| interp(p, ba, cfg))
        .collect::<Result<_, _>>()?;
    let concl = t.conclusion();
    let bound_ok = |pos: usize, v: &Bag| !ungraded_at(&concl[pos]) || v.weight() <= cfg.bound;
    let out: BTreeSet<Vec<Value>> = match t.rule() {
        Ax { formula } => interp_formula(formula, ba, cfg)?
            .into_iter()
            .map(|v| vec![v.clone(), v])
            .collect(),
        Cut { left, right } => {
            let mut index: BTreeMap<&Value, Vec<&Vec<Value>>> = BTreeMap::new();
            for q in &prem[1] {
                index.entry(&q[*right]).or_default().push(q);
            }
            let mut out = BTreeSet::new();
            for p in &prem[0] {
                if let Some(qs) = index.get(&p[*left]) {
                    for q in qs {
                        let mut row = without(p, *left);
                        row.extend(without(q, *right));
                        out.insert(row);
                    }
                }
            }
            out
        }
        Tensor { left, right } | CoC { left, right } | UCoC { left, right } => {
            let is_sum = t.tag() != RuleTag::Tensor;
            let size = prem[0].len() as u128 * prem[1].len() as u128;
            guard(|| format!("{} node", t.tag()), size, cfg)?;
            let mut out = BTreeSet::new();
            for p in &prem[0] {
                for q in &prem[1] {
                    let v = if is_sum {
                        let s = bag_of(&p[*left]).sum(&bag_of(&q[*right]));
                        if !bound_ok(*left, &s) {
                            continue;
                        }
                        Value::Bag(s)
                    } else {
                        Value::pair(p[*left].clone(), q[*right].clone())
                    };
                    let mut row = p.clone();
                    row[*left] = v;
                    row.extend(without(q, *right));
                    out.insert(row);
                }
            }
            out
        }
        Par { left, right } | C { left, right } | UC { left, right } => {
            let is_sum = t.tag() != RuleTag::Par;
            let mut out = BTreeSet::new();
            for p in &prem[0] {
                let v = if is_sum {
                    let s = bag_of(&p[*left]).sum(&bag_of(&p[*right]));
                    let pos = *left - usize::from(*right < *left);
                    if !bound_ok(pos, &s) {
                        continue;
                    }
                    Value::Bag(s)
                } else {
                    Value::pair(p[*left].clone(), p[*right].clone())
                };
                let mut row = p.clone();
                row[*left] = v;
                out.insert(without(&row, *right));
            }
            out
        }
        One | CoW { .. } | CoWI { .. } | UCoW { .. } => {
            let v = if t.tag() == RuleTag::One {
                Value::Unit
            } else {
                Value::Bag(Bag::empty())
            };
            BTreeSet::from([vec![v]])
        }
        Bot | W { .. } | WI { .. } | UW { .. } => {
            let v = if t.tag() == RuleTag::Bot {
                Value::Unit
            } else {
                Value::Bag(Bag::empty())
            };
            prem[0]
                .iter()
                .map(|p| p.iter().cloned().chain([v.clone()]).collect())
                .collect()
        }
        Top { .. } => BTreeSet::new(),
        With { left, right } => {
            let mut out = BTreeSet::new();
            for p in &prem[0] {
                let mut row = p.clone();
                row[*left] = Value::Inl(Box::new(p[*left].clone()));
                out.insert(row);
            }
            for q in &prem[1] {
                let mut row = without(q, *right);
                row.insert(*left, Value::Inr(Box::new(q[*right].clone())));
                out.insert(row);
            }
            out
        }
        Plus1 { index, .. } | Plus2 { index, .. } => {
            let first = t.tag() == RuleTag::Plus1;
            prem[0]
                .iter()
                .map(|p| {
                    let mut row = p.clone();
                    let v = Box::new(p[*index].clone());
                    row[*index] = if first { Value::Inl(v) } else { Value::Inr(v) };
                    row
                })
                .collect()
        }
        D { index } | CoD { index } => prem[0]
            .iter()
            .map(|p| {
                let mut row = p.clone();
                row[*index] = Value::Bag(Bag::singleton(p[*index].clone()));
                row
            })
            .filter(|row| bound_ok(*index, &bag_of(&row[*index])))
            .collect(),
        // Stratum inclusion.
        DI { .. } | CoDI { .. } => prem[0].clone(),
        Ex { perm } => prem[0]
            .iter()
            .map(|p| perm.iter().map(|&j| p[j].clone()).collect())
            .collect(),
        Prom { .. } => return Err(RelError::Unsupported(RuleTag::Prom)),
    };
    guard(
        || format!("denotation of {} node", t.tag()),
        out.len() as u128,
        cfg,
    )?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Model laws over binary relations.

/// A binary relation between two finite sets.
pub type Rel = BTreeSet<(Value, Value)>;

pub fn compose(r: &Rel, s: &Rel) -> Rel {
    let mut index: BTreeMap<&Value, Vec<&Value>> = BTreeMap::new();
    for (b, c) in s {
        index.entry(b).or_default().push(c);
    }
    let mut out = Rel::new();
    for (a, b) in r {
        for c in index.get(b).into_iter().flatten() {
            out.insert((a.clone(), (*c).clone()));
        }
    }
    out
}

pub fn tensor_rel(r: &Rel, s: &Rel) -> Rel {
    let mut out = Rel::new();
    for (a, b) in r {
        for (c, d) in s {
            out.insert((
                Value::pair(a.clone(), c.clone()),
                Value::pair(b.clone(), d.clone()),
            ));
        }
    }
    out
}

pub fn identity(set: &[Value]) -> Rel {
    set.iter().map(|v| (v.clone(), v.clone())).collect()
}

fn inverse(r: &Rel) -> Rel {
    r.iter().map(|(a, b)| (b.clone(), a.clone())).collect()
}

/// The action of the exponential on `r` at weight `n`: pairs of marginals of
/// couplings supported in `r`.
pub fn oc_rel(r: &Rel, n: u64, limit: usize) -> Result<Rel, RelError> {
    let cells: Vec<Value> = r
        .iter()
        .map(|(a, b)| Value::pair(a.clone(), b.clone()))
        .collect();
    Ok(bags_upto(&cells, n, limit)?
        .into_iter()
        .map(|s| {
            let c = Coupling(s);
            (Value::Bag(c.left()), Value::Bag(c.right()))
        })
        .collect())
}

fn bag_values(set: &[Value], n: u64, limit: usize) -> Result<Vec<Value>, RelError> {
    Ok(bags_upto(set, n, limit)?
        .into_iter()
        .map(Value::Bag)
        .collect())
}

fn product(a: &[Value], b: &[Value]) -> Vec<Value> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| Value::pair(x.clone(), y.clone())))
        .collect()
}

/// Codereliction `A -> !A`.
fn dbar(set: &[Value]) -> Rel {
    set.iter()
        .map(|a| (a.clone(), Value::Bag(Bag::singleton(a.clone()))))
        .collect()
}

/// Coweakening `1 -> !A`.
fn wbar() -> Rel {
    Rel::from([(Value::Unit, Value::Bag(Bag::empty()))])
}

/// Cocontraction `!A ⊗ !A -> !A`, restricted to sums of weight at most `n`.
fn cbar(set: &[Value], n: u64, limit: usize) -> Result<Rel, RelError> {
    let bags = bags_upto(set, n, limit)?;
    let mut out = Rel::new();
    for f in &bags {
        for g in &bags {
            let s = f.sum(g);
            if s.weight() <= n {
                out.insert((
                    Value::pair(Value::Bag(f.clone()), Value::Bag(g.clone())),
                    Value::Bag(s),
                ));
            }
        }
    }
    Ok(out)
}

/// Monoidality `!A ⊗ !B -> !(A × B)`.
fn monoidal(a: &[Value], b: &[Value], n: u64, limit: usize) -> Result<Rel, RelError> {
    let cells = product(a, b);
    Ok(bags_upto(&cells, n, limit)?
        .into_iter()
        .map(|s| {
            let c = Coupling(s.clone());
            (
                Value::pair(Value::Bag(c.left()), Value::Bag(c.right())),
                Value::Bag(s),
            )
        })
        .collect())
}

/// `((f, g), (h, k)) -> ((f, h), (g, k))`.
fn middle_swap(r: &Rel) -> Rel {
    r.iter()
        .filter_map(|(x, _)| {
            let (fg, hk) = x.as_pair()?;
            let (f, g) = fg.as_pair()?;
            let (h, k) = hk.as_pair()?;
            let y = Value::pair(
                Value::pair(f.clone(), h.clone()),
                Value::pair(g.clone(), k.clone()),
            );
            Some((x.clone(), y))
        })
        .collect()
}

fn all_relations(a: &[Value], b: &[Value]) -> Vec<Rel> {
    let cells: Vec<(Value, Value)> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    (0u64..1 << cells.len())
        .map(|mask| {
            cells
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, c)| c.clone())
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub name: &'static str,
    pub instances: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawReport {
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.counterexample.is_none())
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.laws {
            match &l.counterexample {
                None => writeln!(f, "PASS {} ({} instances)", l.name, l.instances)?,
                Some(c) => writeln!(f, "FAIL {}: {c}", l.name)?,
            }
        }
        Ok(())
    }
}

struct LawCheck {
    name: &'static str,
    instances: usize,
    counterexample: Option<String>,
}

impl LawCheck {
    fn new(name: &'static str) -> Self {
        LawCheck {
            name,
            instances: 0,
            counterexample: None,
        }
    }

    fn compare(&mut self, lhs: &Rel, rhs: &Rel, context: impl FnOnce() -> String) {
        self.instances += 1;
        if self.counterexample.is_some() || lhs == rhs {
            return;
        }
        let (side, (x, y)) = match lhs.difference(rhs).next() {
            Some(p) => ("left only", p),
            None => (
                "right only",
                rhs.difference(lhs).next().expect("sets differ"),
            ),
        };
        self.counterexample = Some(format!("{}: ({x}, {y}) {side}", context()));
    }

    fn finish(self) -> LawResult {
        LawResult {
            name: self.name,
            instances: self.instances,
            counterexample: self.counterexample,
        }
    }
}

fn show_set(s: &[Value]) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn show_rel(r: &Rel) -> String {
    let v: Vec<String> = r.iter().map(|(a, b)| format!("{a}~{b}")).collect();
    format!("{{{}}}", v.join(", "))
}

/// Checks the naturality, costructural and monoidality equations by
/// exhaustive enumeration. Carriers are `{t0, .., t(k-1)}` for `k <= size_bound`
/// plus every base set of `ba` of at most that size; every relation between
/// two carriers is tried.
pub fn check_model_laws(
    ba: &BaseAssignment,
    size_bound: usize,
    grade_bound: u64,
) -> Result<LawReport, RelError> {
    let limit = RelConfig::default().max_elements;
    let n = grade_bound;
    let mut carriers: Vec<Vec<Value>> = (0..=size_bound)
        .map(|k| (0..k).map(|i| Value::tok(&format!("t{i}"))).collect())
        .collect();
    for elems in ba.values() {
        if elems.len() <= size_bound {
            let c: Vec<Value> = elems.iter().map(|e| Value::tok(e)).collect();
            if !carriers.contains(&c) {
                carriers.push(c);
            }
        }
    }
    let cells: u128 = (size_bound * size_bound) as u128;
    if cells > 16 {
        return Err(RelError::BoundTooLarge {
            what: "relations between carriers".into(),
            size: 1u128 << cells.min(127),
            limit,
        });
    }

    let mut nat_d = LawCheck::new("codereliction naturality");
    let mut nat_w = LawCheck::new("coweakening naturality");
    let mut nat_c = LawCheck::new("cocontraction naturality");
    let mut ww = LawCheck::new("weakening then coweakening");
    let mut cc = LawCheck::new("contraction, exponential pair, cocontraction");
    let mut mw = LawCheck::new("coweakening against monoidality");
    let mut md = LawCheck::new("codereliction against monoidality");
    let mut mc = LawCheck::new("cocontraction against monoidality");

    for a in &carriers {
        let bags_a = bag_values(a, n, limit)?;
        let cbar_a = cbar(a, n, limit)?;
        // w ; w̄ against the action on the empty relation.
        let w_a: Rel = Rel::from([(Value::Bag(Bag::empty()), Value::Unit)]);
        ww.compare(
            &compose(&w_a, &wbar()),
            &oc_rel(&Rel::new(), n, limit)?,
            || format!("A = {}", show_set(a)),
        );

        for b in &carriers {
            let bags_b = bag_values(b, n, limit)?;
            let cbar_b = cbar(b, n, limit)?;
            let rels = all_relations(a, b);
            for r in &rels {
                let ocr = oc_rel(r, n, limit)?;
                let ctx = || {
                    format!(
                        "A = {}, B = {}, r = {}",
                        show_set(a),
                        show_set(b),
                        show_rel(r)
                    )
                };
                if n >= 1 {
                    nat_d.compare(&compose(&dbar(a), &ocr), &compose(r, &dbar(b)), ctx);
                }
                nat_w.compare(&compose(&wbar(), &ocr), &wbar(), ctx);
                nat_c.compare(
                    &compose(&cbar_a, &ocr),
                    &compose(&tensor_rel(&ocr, &ocr), &cbar_b),
                    ctx,
                );
            }
            // c ; (!r1 ⊗ !r2) ; c̄ = !(r1 ∪ r2).
            let c_a = inverse(&cbar_a);
            for r1 in &rels {
                let oc1 = oc_rel(r1, n, limit)?;
                for r2 in &rels {
                    let oc2 = oc_rel(r2, n, limit)?;
                    let lhs = compose(&compose(&c_a, &tensor_rel(&oc1, &oc2)), &cbar_b);
                    let union: Rel = r1.union(r2).cloned().collect();
                    cc.compare(&lhs, &oc_rel(&union, n, limit)?, || {
                        format!(
                            "A = {}, B = {}, r1 = {}, r2 = {}",
                            show_set(a),
                            show_set(b),
                            show_rel(r1),
                            show_rel(r2)
                        )
                    });
                }
            }

            let ctx = || format!("A = {}, B = {}", show_set(a), show_set(b));
            let m_ab = monoidal(a, b, n, limit)?;
            let id_b = identity(&bags_b);
            let ab = product(a, b);

            // (w̄ ⊗ id) ; m = (id ⊗ w) ; λ ; w̄
            let lhs = compose(&tensor_rel(&wbar(), &id_b), &m_ab);
            let w_b: Rel = Rel::from([(Value::Bag(Bag::empty()), Value::Unit)]);
            let lambda: Rel = Rel::from([(Value::pair(Value::Unit, Value::Unit), Value::Unit)]);
            let rhs = compose(
                &compose(&tensor_rel(&identity(&[Value::Unit]), &w_b), &lambda),
                &wbar(),
            );
            mw.compare(&lhs, &rhs, ctx);

            // (d̄ ⊗ id) ; m = (id ⊗ d) ; d̄
            if n >= 1 {
                let lhs = compose(&tensor_rel(&dbar(a), &id_b), &m_ab);
                let d_b = inverse(&dbar(b));
                let rhs = compose(&tensor_rel(&identity(a), &d_b), &dbar(&ab));
                md.compare(&lhs, &rhs, ctx);
            }

            // (c̄ ⊗ id) ; m = (id ⊗ c) ; iso ; (m ⊗ m) ; c̄
            let lhs = compose(&tensor_rel(&cbar_a, &id_b), &m_ab);
            let pairs_a: Vec<Value> = product(&bags_a, &bags_a);
            let id_c = tensor_rel(&identity(&pairs_a), &inverse(&cbar_b));
            let swapped = middle_swap(&id_c.iter().map(|(_, y)| (y.clone(), y.clone())).collect());
            let rhs = compose(
                &compose(&compose(&id_c, &swapped), &tensor_rel(&m_ab, &m_ab)),
                &cbar(&ab, n, limit)?,
            );
            mc.compare(&lhs, &rhs, ctx);
        }
    }
    Ok(LawReport {
        laws: [nat_d, nat_w, nat_c, ww, cc, mw, md, mc]
            .into_iter()
            .map(LawCheck::finish)
            .collect(),
    })
}
