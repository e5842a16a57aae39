//! Derivation trees, rule schemata and the mode-aware checker.
//!
//! Every rule fixes the order of its conclusion: a rule acting on existing
//! occurrences rewrites them in place, a rule introducing a fresh formula
//! appends it, and binary rules put the left premise first. Exchange is a
//! pure re-indexing node.

mod build;
mod derive;
mod text;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::grading::Grade;
use crate::syntax::{Formula, Sequent};

pub use build::*;
pub use derive::{derive_cowi, derive_wi, translate};
pub use text::{parse_proof, print_proof, RawProof};

/// Rule tags, including the ungraded rules of the target of grade erasure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleTag {
    Ax,
    Cut,
    Tensor,
    Par,
    One,
    Bot,
    Top,
    With,
    Plus1,
    Plus2,
    W,
    C,
    DI,
    D,
    CoW,
    CoC,
    CoDI,
    CoD,
    WI,
    CoWI,
    Prom,
    Ex,
    UW,
    UC,
    UCoW,
    UCoC,
}

impl RuleTag {
    pub const ALL: [RuleTag; 26] = [
        RuleTag::Ax,
        RuleTag::Cut,
        RuleTag::Tensor,
        RuleTag::Par,
        RuleTag::One,
        RuleTag::Bot,
        RuleTag::Top,
        RuleTag::With,
        RuleTag::Plus1,
        RuleTag::Plus2,
        RuleTag::W,
        RuleTag::C,
        RuleTag::DI,
        RuleTag::D,
        RuleTag::CoW,
        RuleTag::CoC,
        RuleTag::CoDI,
        RuleTag::CoD,
        RuleTag::WI,
        RuleTag::CoWI,
        RuleTag::Prom,
        RuleTag::Ex,
        RuleTag::UW,
        RuleTag::UC,
        RuleTag::UCoW,
        RuleTag::UCoC,
    ];

    pub fn name(self) -> &'static str {
        use RuleTag::*;
        match self {
            Ax => "ax",
            Cut => "cut",
            Tensor => "tensor",
            Par => "par",
            One => "one",
            Bot => "bot",
            Top => "top",
            With => "with",
            Plus1 => "plus1",
            Plus2 => "plus2",
            W => "w",
            C => "c",
            DI => "di",
            D => "d",
            CoW => "cow",
            CoC => "coc",
            CoDI => "codi",
            CoD => "cod",
            WI => "wi",
            CoWI => "cowi",
            Prom => "prom",
            Ex => "ex",
            UW => "uw",
            UC => "uc",
            UCoW => "ucow",
            UCoC => "ucoc",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleTag> {
        RuleTag::ALL.iter().copied().find(|t| t.name() == s)
    }

    pub fn arity(self) -> usize {
        use RuleTag::*;
        match self {
            Ax | One | Top | CoW | CoWI | UCoW => 0,
            Cut | Tensor | With | CoC | UCoC => 2,
            _ => 1,
        }
    }

    pub fn is_mall(self) -> bool {
        use RuleTag::*;
        matches!(
            self,
            Ax | Cut | Tensor | Par | One | Bot | Top | With | Plus1 | Plus2
        )
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rule instance with all parameters needed to compute its conclusion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule<G> {
    Ax { formula: Formula<G> },
    Cut { left: usize, right: usize },
    Tensor { left: usize, right: usize },
    Par { left: usize, right: usize },
    One,
    Bot,
    Top { context: Vec<Formula<G>> },
    With { left: usize, right: usize },
    Plus1 { index: usize, other: Formula<G> },
    Plus2 { index: usize, other: Formula<G> },
    W { formula: Formula<G> },
    C { left: usize, right: usize },
    DI { index: usize, target: G, witness: G },
    D { index: usize },
    CoW { formula: Formula<G> },
    CoC { left: usize, right: usize },
    CoDI { index: usize, target: G, witness: G },
    CoD { index: usize },
    WI { grade: G, formula: Formula<G> },
    CoWI { grade: G, formula: Formula<G> },
    Prom { index: usize, grade: G },
    Ex { perm: Vec<usize> },
    UW { formula: Formula<G> },
    UC { left: usize, right: usize },
    UCoW { formula: Formula<G> },
    UCoC { left: usize, right: usize },
}

impl<G> Rule<G> {
    pub fn tag(&self) -> RuleTag {
        use Rule::*;
        match self {
            Ax { .. } => RuleTag::Ax,
            Cut { .. } => RuleTag::Cut,
            Tensor { .. } => RuleTag::Tensor,
            Par { .. } => RuleTag::Par,
            One => RuleTag::One,
            Bot => RuleTag::Bot,
            Top { .. } => RuleTag::Top,
            With { .. } => RuleTag::With,
            Plus1 { .. } => RuleTag::Plus1,
            Plus2 { .. } => RuleTag::Plus2,
            W { .. } => RuleTag::W,
            C { .. } => RuleTag::C,
            DI { .. } => RuleTag::DI,
            D { .. } => RuleTag::D,
            CoW { .. } => RuleTag::CoW,
            CoC { .. } => RuleTag::CoC,
            CoDI { .. } => RuleTag::CoDI,
            CoD { .. } => RuleTag::CoD,
            WI { .. } => RuleTag::WI,
            CoWI { .. } => RuleTag::CoWI,
            Prom { .. } => RuleTag::Prom,
            Ex { .. } => RuleTag::Ex,
            UW { .. } => RuleTag::UW,
            UC { .. } => RuleTag::UC,
            UCoW { .. } => RuleTag::UCoW,
            UCoC { .. } => RuleTag::UCoC,
        }
    }
}

/// Where a conclusion occurrence comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Src {
    /// Unchanged occurrence `(premise, index)`.
    Prem(usize, usize),
    /// The k-th formula produced by the rule itself.
    New(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagKind {
    WrongPrincipalFormula,
    GradeMismatch,
    NoLeqWitness,
    ModeForbidsRule,
    ContextPartitionInvalid,
}

impl fmt::Display for DiagKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiagKind::WrongPrincipalFormula => "WrongPrincipalFormula",
            DiagKind::GradeMismatch => "GradeMismatch",
            DiagKind::NoLeqWitness => "NoLeqWitness",
            DiagKind::ModeForbidsRule => "ModeForbidsRule",
            DiagKind::ContextPartitionInvalid => "ContextPartitionInvalid",
        };
        f.write_str(s)
    }
}

/// Path of premise indices from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        NodePath(v)
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "/" {
            return Some(NodePath::root());
        }
        let rest = s.strip_prefix('/')?;
        rest.split('/')
            .map(|p| p.parse().ok())
            .collect::<Option<Vec<_>>>()
            .map(NodePath)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path} [{rule}] {kind}: {message}")]
pub struct Diagnostic {
    pub path: NodePath,
    pub rule: RuleTag,
    pub kind: DiagKind,
    pub message: String,
}

impl Diagnostic {
    pub fn new(rule: RuleTag, kind: DiagKind, message: impl Into<String>) -> Self {
        Diagnostic {
            path: NodePath::root(),
            rule,
            kind,
            message: message.into(),
        }
    }

    pub fn at(mut self, path: &NodePath) -> Self {
        let mut v = path.0.clone();
        v.extend(self.path.0);
        self.path = NodePath(v);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Dbsll,
    Idill,
    DbsllProm,
    Dill,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Dbsll => "dbsll",
            Mode::Idill => "idill",
            Mode::DbsllProm => "dbsll+promotion",
            Mode::Dill => "dill",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dbsll" => Some(Mode::Dbsll),
            "idill" => Some(Mode::Idill),
            "dbsll+promotion" | "dbsll+prom" => Some(Mode::DbsllProm),
            "dill" => Some(Mode::Dill),
            _ => None,
        }
    }

    pub fn allows(self, tag: RuleTag) -> bool {
        use RuleTag::*;
        if tag.is_mall() || tag == Ex {
            return true;
        }
        match self {
            Mode::Dbsll => !matches!(tag, Prom | UW | UC | UCoW | UCoC),
            Mode::DbsllProm => !matches!(tag, UW | UC | UCoW | UCoC),
            Mode::Idill => matches!(tag, W | C | DI | CoW | CoC | CoDI | WI | CoWI),
            Mode::Dill => matches!(tag, D | CoD | UW | UC | UCoW | UCoC),
        }
    }

    fn formula_ok<G: Clone>(self, f: &Formula<G>) -> Result<(), String> {
        match self {
            Mode::Idill if !f.is_finitary() => Err("exponentials may not be nested".into()),
            Mode::Idill if f.contains_ungraded_exponential() => {
                Err("ungraded exponentials are not part of this mode".into())
            }
            Mode::Dill if f.contains_graded_exponential() => {
                Err("graded exponentials are not part of this mode".into())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A checked derivation. Construction validates the local rule schema, so
/// the cached conclusion always matches the premises.
#[derive(Debug)]
pub struct ProofTree<G> {
    rule: Rule<G>,
    premises: Vec<Proof<G>>,
    conclusion: Sequent<G>,
    size: usize,
    height: usize,
}

pub type Proof<G> = Arc<ProofTree<G>>;

/// Structural equality: same rules, parameters and occurrence order.
impl<G: Grade> PartialEq for ProofTree<G> {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.rule == other.rule && self.premises == other.premises
    }
}

impl<G: Grade> Eq for ProofTree<G> {}

impl<G: Grade> std::hash::Hash for ProofTree<G> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rule.hash(state);
        self.premises.hash(state);
    }
}

impl<G: Grade> ProofTree<G> {
    pub fn new(rule: Rule<G>, premises: Vec<Proof<G>>) -> Result<Proof<G>, Diagnostic> {
        let conclusion = infer(&rule, &premises)?;
        let size = 1 + premises.iter().map(|p| p.size).sum::<usize>();
        let height = 1 + premises.iter().map(|p| p.height).max().unwrap_or(0);
        Ok(Arc::new(ProofTree {
            rule,
            premises,
            conclusion,
            size,
            height,
        }))
    }

    pub fn rule(&self) -> &Rule<G> {
        &self.rule
    }

    pub fn tag(&self) -> RuleTag {
        self.rule.tag()
    }

    pub fn premises(&self) -> &[Proof<G>] {
        &self.premises
    }

    pub fn conclusion(&self) -> &Sequent<G> {
        &self.conclusion
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn sources(&self) -> Vec<Src> {
        let lens: Vec<usize> = self.premises.iter().map(|p| p.conclusion.len()).collect();
        layout(&self.rule, &lens).expect("layout of a built node")
    }

    /// Conclusion positions produced by this rule.
    pub fn principal_positions(&self) -> Vec<usize> {
        self.sources()
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, Src::New(_)))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_principal(&self, pos: usize) -> bool {
        matches!(self.sources().get(pos), Some(Src::New(_)))
    }

    pub fn subtree(&self, path: &NodePath) -> Option<&ProofTree<G>> {
        let mut t = self;
        for &i in &path.0 {
            t = t.premises.get(i)?;
        }
        Some(t)
    }

    /// Pre-order traversal with paths.
    pub fn nodes(&self) -> Vec<(NodePath, &ProofTree<G>)> {
        let mut out = Vec::new();
        let mut stack = vec![(NodePath::root(), self)];
        while let Some((p, t)) = stack.pop() {
            for (i, c) in t.premises.iter().enumerate().rev() {
                stack.push((p.child(i), c));
            }
            out.push((p, t));
        }
        out
    }

    pub fn count(&self, tag: RuleTag) -> usize {
        (self.tag() == tag) as usize + self.premises.iter().map(|p| p.count(tag)).sum::<usize>()
    }

    pub fn contains(&self, tag: RuleTag) -> bool {
        self.tag() == tag || self.premises.iter().any(|p| p.contains(tag))
    }

    pub fn is_cut_free(&self) -> bool {
        !self.contains(RuleTag::Cut)
    }
}

fn diag(tag: RuleTag, kind: DiagKind, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(tag, kind, msg)
}

fn check_index(tag: RuleTag, len: usize, i: usize) -> Result<(), Diagnostic> {
    if i < len {
        Ok(())
    } else {
        Err(diag(
            tag,
            DiagKind::ContextPartitionInvalid,
            format!("occurrence {i} out of range for a premise with {len} formulas"),
        ))
    }
}

/// Conclusion layout of `rule` given premise conclusion lengths.
pub fn layout<G: Clone>(rule: &Rule<G>, lens: &[usize]) -> Result<Vec<Src>, Diagnostic> {
    use Rule::*;
    let tag = rule.tag();
    if lens.len() != tag.arity() {
        return Err(diag(
            tag,
            DiagKind::ContextPartitionInvalid,
            format!("expected {} premise(s), found {}", tag.arity(), lens.len()),
        ));
    }
    let keep = |p: usize, skip: &[usize]| -> Vec<Src> {
        (0..lens[p])
            .filter(|i| !skip.contains(i))
            .map(|i| Src::Prem(p, i))
            .collect()
    };
    let replace = |p: usize, at: usize, skip: &[usize]| -> Vec<Src> {
        (0..lens[p])
            .filter(|i| !skip.contains(i))
            .map(|i| {
                if i == at {
                    Src::New(0)
                } else {
                    Src::Prem(p, i)
                }
            })
            .collect()
    };
    Ok(match rule {
        Ax { .. } => vec![Src::New(0), Src::New(1)],
        One => vec![Src::New(0)],
        Top { context } => (0..=context.len()).map(Src::New).collect(),
        CoW { .. } | CoWI { .. } | UCoW { .. } => vec![Src::New(0)],
        Cut { left, right } => {
            check_index(tag, lens[0], *left)?;
            check_index(tag, lens[1], *right)?;
            let mut v = keep(0, &[*left]);
            v.extend(keep(1, &[*right]));
            v
        }
        Tensor { left, right } | CoC { left, right } | UCoC { left, right } => {
            check_index(tag, lens[0], *left)?;
            check_index(tag, lens[1], *right)?;
            let mut v = replace(0, *left, &[]);
            v.extend(keep(1, &[*right]));
            v
        }
        With { left, right } => {
            check_index(tag, lens[0], *left)?;
            check_index(tag, lens[1], *right)?;
            replace(0, *left, &[])
        }
        Par { left, right } | C { left, right } | UC { left, right } => {
            check_index(tag, lens[0], *left)?;
            check_index(tag, lens[0], *right)?;
            if left == right {
                return Err(diag(
                    tag,
                    DiagKind::ContextPartitionInvalid,
                    "the two occurrences coincide",
                ));
            }
            replace(0, *left, &[*right])
        }
        Plus1 { index, .. }
        | Plus2 { index, .. }
        | DI { index, .. }
        | D { index }
        | CoDI { index, .. }
        | CoD { index } => {
            check_index(tag, lens[0], *index)?;
            replace(0, *index, &[])
        }
        Bot | W { .. } | WI { .. } | UW { .. } => {
            let mut v = keep(0, &[]);
            v.push(Src::New(0));
            v
        }
        Prom { index, .. } => {
            check_index(tag, lens[0], *index)?;
            (0..lens[0]).map(Src::New).collect()
        }
        Ex { perm } => {
            let mut seen = vec![false; lens[0]];
            if perm.len() != lens[0] {
                return Err(diag(
                    tag,
                    DiagKind::ContextPartitionInvalid,
                    "permutation has the wrong length",
                ));
            }
            for &p in perm {
                if p >= lens[0] || seen[p] {
                    return Err(diag(
                        tag,
                        DiagKind::ContextPartitionInvalid,
                        "not a permutation",
                    ));
                }
                seen[p] = true;
            }
            perm.iter().map(|&p| Src::Prem(0, p)).collect()
        }
    })
}

fn expect_wn<'a, G: Grade>(
    tag: RuleTag,
    f: &'a Formula<G>,
) -> Result<(&'a G, &'a Formula<G>), Diagnostic> {
    match f {
        Formula::WhyNotG(g, a) => Ok((g, a)),
        _ => Err(diag(
            tag,
            DiagKind::WrongPrincipalFormula,
            format!("expected a graded ?, found {f}"),
        )),
    }
}

fn expect_oc<'a, G: Grade>(
    tag: RuleTag,
    f: &'a Formula<G>,
) -> Result<(&'a G, &'a Formula<G>), Diagnostic> {
    match f {
        Formula::OfCourseG(g, a) => Ok((g, a)),
        _ => Err(diag(
            tag,
            DiagKind::WrongPrincipalFormula,
            format!("expected a graded !, found {f}"),
        )),
    }
}

fn same_body<G: Grade>(tag: RuleTag, a: &Formula<G>, b: &Formula<G>) -> Result<(), Diagnostic> {
    if a == b {
        Ok(())
    } else {
        Err(diag(
            tag,
            DiagKind::WrongPrincipalFormula,
            format!("bodies differ: {a} vs {b}"),
        ))
    }
}

/// Formulas produced by the rule, indexed as in `Src::New`.
fn new_formulas<G: Grade>(
    rule: &Rule<G>,
    prem: &[&Sequent<G>],
) -> Result<Vec<Formula<G>>, Diagnostic> {
    use Rule::*;
    let tag = rule.tag();
    Ok(match rule {
        Ax { formula } => vec![formula.negate(), formula.clone()],
        Cut { left, right } => {
            let (a, b) = (&prem[0][*left], &prem[1][*right]);
            if b != &a.negate() {
                return Err(diag(
                    tag,
                    DiagKind::WrongPrincipalFormula,
                    format!("cut formulas {a} and {b} are not dual"),
                ));
            }
            vec![]
        }
        Tensor { left, right } => vec![Formula::tensor(
            prem[0][*left].clone(),
            prem[1][*right].clone(),
        )],
        Par { left, right } => vec![Formula::par(
            prem[0][*left].clone(),
            prem[0][*right].clone(),
        )],
        One => vec![Formula::One],
        Bot => vec![Formula::Bot],
        Top { context } => {
            let mut v = context.clone();
            v.push(Formula::Top);
            v
        }
        With { left, right } => {
            let c0: Vec<_> = prem[0]
                .iter()
                .enumerate()
                .filter(|(i, _)| i != left)
                .map(|(_, f)| f)
                .collect();
            let c1: Vec<_> = prem[1]
                .iter()
                .enumerate()
                .filter(|(i, _)| i != right)
                .map(|(_, f)| f)
                .collect();
            if c0 != c1 {
                return Err(diag(
                    tag,
                    DiagKind::ContextPartitionInvalid,
                    "the two premises have different contexts",
                ));
            }
            vec![Formula::with(
                prem[0][*left].clone(),
                prem[1][*right].clone(),
            )]
        }
        Plus1 { index, other } => vec![Formula::plus(prem[0][*index].clone(), other.clone())],
        Plus2 { index, other } => vec![Formula::plus(other.clone(), prem[0][*index].clone())],
        W { formula } => vec![Formula::wn(G::zero(), formula.clone())],
        WI { grade, formula } => vec![Formula::wn(grade.clone(), formula.clone())],
        CoW { formula } => vec![Formula::oc(G::zero(), formula.clone())],
        CoWI { grade, formula } => vec![Formula::oc(grade.clone(), formula.clone())],
        C { left, right } => {
            let (x, a) = expect_wn(tag, &prem[0][*left])?;
            let (y, b) = expect_wn(tag, &prem[0][*right])?;
            same_body(tag, a, b)?;
            vec![Formula::wn(x.add(y), a.clone())]
        }
        CoC { left, right } => {
            let (x, a) = expect_oc(tag, &prem[0][*left])?;
            let (y, b) = expect_oc(tag, &prem[1][*right])?;
            same_body(tag, a, b)?;
            vec![Formula::oc(x.add(y), a.clone())]
        }
        DI {
            index,
            target,
            witness,
        }
        | CoDI {
            index,
            target,
            witness,
        } => {
            let (x, a) = if tag == RuleTag::DI {
                expect_wn(tag, &prem[0][*index])?
            } else {
                expect_oc(tag, &prem[0][*index])?
            };
            if &x.add(witness) != target {
                return Err(diag(
                    tag,
                    DiagKind::GradeMismatch,
                    format!("{x} + {witness} is not the target grade {target}"),
                ));
            }
            if tag == RuleTag::DI {
                vec![Formula::wn(target.clone(), a.clone())]
            } else {
                vec![Formula::oc(target.clone(), a.clone())]
            }
        }
        D { index } => vec![Formula::why_not(prem[0][*index].clone())],
        CoD { index } => vec![Formula::of_course(prem[0][*index].clone())],
        Prom { index, grade } => {
            let mut v = Vec::new();
            for (i, f) in prem[0].iter().enumerate() {
                if i == *index {
                    v.push(Formula::oc(grade.clone(), f.clone()));
                } else {
                    let (x, a) = expect_wn(tag, f)?;
                    let g = x
                        .mul(grade)
                        .map_err(|e| diag(tag, DiagKind::GradeMismatch, e.to_string()))?;
                    v.push(Formula::wn(g, a.clone()));
                }
            }
            v
        }
        Ex { .. } => vec![],
        UW { formula } => vec![Formula::why_not(formula.clone())],
        UCoW { formula } => vec![Formula::of_course(formula.clone())],
        UC { left, right } => match (&prem[0][*left], &prem[0][*right]) {
            (Formula::WhyNot(a), Formula::WhyNot(b)) if a == b => vec![prem[0][*left].clone()],
            (a, b) => {
                return Err(diag(
                    tag,
                    DiagKind::WrongPrincipalFormula,
                    format!("expected ?A twice, found {a} and {b}"),
                ))
            }
        },
        UCoC { left, right } => match (&prem[0][*left], &prem[1][*right]) {
            (Formula::OfCourse(a), Formula::OfCourse(b)) if a == b => vec![prem[0][*left].clone()],
            (a, b) => {
                return Err(diag(
                    tag,
                    DiagKind::WrongPrincipalFormula,
                    format!("expected !A twice, found {a} and {b}"),
                ))
            }
        },
    })
}

/// Computes the conclusion of `rule` applied to `premises`, validating the schema.
pub fn infer<G: Grade>(rule: &Rule<G>, premises: &[Proof<G>]) -> Result<Sequent<G>, Diagnostic> {
    let lens: Vec<usize> = premises.iter().map(|p| p.conclusion.len()).collect();
    let srcs = layout(rule, &lens)?;
    let prem: Vec<&Sequent<G>> = premises.iter().map(|p| &p.conclusion).collect();
    let fresh = new_formulas(rule, &prem)?;
    Ok(Sequent(
        srcs.iter()
            .map(|s| match *s {
                Src::Prem(p, i) => prem[p][i].clone(),
                Src::New(k) => fresh[k].clone(),
            })
            .collect(),
    ))
}

/// Validates every node against its schema and the mode's restrictions.
pub fn check<G: Grade>(tree: &ProofTree<G>, mode: Mode) -> Result<(), Vec<Diagnostic>> {
    let mut errs = Vec::new();
    for (path, node) in tree.nodes() {
        let tag = node.tag();
        if !mode.allows(tag) {
            errs.push(
                diag(
                    tag,
                    DiagKind::ModeForbidsRule,
                    format!("rule `{tag}` is not available in {mode}"),
                )
                .at(&path),
            );
        }
        match infer(&node.rule, &node.premises) {
            Ok(c) if c.ordered_eq(&node.conclusion) => {}
            Ok(_) => errs.push(
                diag(
                    tag,
                    DiagKind::ContextPartitionInvalid,
                    "cached conclusion differs from recomputation",
                )
                .at(&path),
            ),
            Err(d) => errs.push(d.at(&path)),
        }
        if mode == Mode::Idill || mode == Mode::Dill {
            for f in node.conclusion.iter() {
                if let Err(m) = mode.formula_ok(f) {
                    errs.push(diag(tag, DiagKind::ModeForbidsRule, format!("{f}: {m}")).at(&path));
                    break;
                }
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

#[cfg(test)]
mod tests;
