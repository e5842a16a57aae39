//! Proof terms in s-expression syntax: `(tag args... premises...)`.

use super::{DiagKind, Diagnostic, NodePath, Proof, ProofTree, Rule, RuleTag};
use crate::grading::Grade;
use crate::sexpr::{ParseError, Pos, SExpr};
use crate::syntax::{formula_from_sexpr, Formula};

/// A parsed but unchecked proof term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawProof<G> {
    pub tag: RuleTag,
    pub ints: Vec<usize>,
    pub grades: Vec<G>,
    pub formulas: Vec<Formula<G>>,
    pub perm: Vec<usize>,
    pub premises: Vec<RawProof<G>>,
    pub pos: Pos,
}

#[derive(Clone, Copy)]
enum Arg {
    Int,
    Grade,
    Formula,
    Formulas,
    Perm,
}

fn schema(tag: RuleTag) -> &'static [Arg] {
    use Arg::*;
    use RuleTag as T;
    match tag {
        T::Ax | T::W | T::UW | T::CoW | T::UCoW => &[Formula],
        T::Cut | T::Tensor | T::With | T::CoC | T::UCoC | T::Par | T::C | T::UC => &[Int, Int],
        T::One | T::Bot => &[],
        T::Top => &[Formulas],
        T::Plus1 | T::Plus2 => &[Int, Formula],
        T::DI | T::CoDI | T::Prom => &[Int, Grade],
        T::D | T::CoD => &[Int],
        T::WI | T::CoWI => &[Grade, Formula],
        T::Ex => &[Perm],
    }
}

fn parse_int(e: &SExpr) -> Result<usize, ParseError> {
    e.as_sym().and_then(|s| s.parse().ok()).ok_or_else(|| {
        ParseError::new(
            e.pos(),
            format!("expected an occurrence index, found {}", e.describe()),
            &["index"],
        )
    })
}

pub fn raw_from_sexpr<G: Grade>(e: &SExpr) -> Result<RawProof<G>, ParseError> {
    let rule_names: Vec<&str> = RuleTag::ALL.iter().map(|t| t.name()).collect();
    let SExpr::List(items, pos) = e else {
        return Err(ParseError::new(
            e.pos(),
            format!("expected a proof, found {}", e.describe()),
            &["("],
        ));
    };
    let head = items
        .first()
        .ok_or_else(|| ParseError::new(*pos, "empty proof term", &rule_names))?;
    let tag = head.as_sym().and_then(RuleTag::from_name).ok_or_else(|| {
        ParseError::new(
            head.pos(),
            format!("unknown rule {}", head.describe()),
            &rule_names,
        )
    })?;
    let mut raw = RawProof {
        tag,
        ints: vec![],
        grades: vec![],
        formulas: vec![],
        perm: vec![],
        premises: vec![],
        pos: *pos,
    };
    let mut rest = &items[1..];
    let missing = |p: Pos, what: &str| {
        ParseError::new(
            p,
            format!("`{}` is missing its {what}", tag.name()),
            &[what],
        )
    };
    for arg in schema(tag) {
        match arg {
            Arg::Int => {
                let e = rest.first().ok_or_else(|| missing(*pos, "index"))?;
                raw.ints.push(parse_int(e)?);
                rest = &rest[1..];
            }
            Arg::Grade => match rest.first() {
                Some(SExpr::Brace(s, p)) => {
                    raw.grades.push(
                        G::parse_literal(s)
                            .map_err(|e| ParseError::new(*p, e.to_string(), &["grade"]))?,
                    );
                    rest = &rest[1..];
                }
                Some(e) => {
                    return Err(ParseError::new(
                        e.pos(),
                        format!("expected a grade, found {}", e.describe()),
                        &["{grade}"],
                    ))
                }
                None => return Err(missing(*pos, "{grade}")),
            },
            Arg::Formula => {
                let e = rest.first().ok_or_else(|| missing(*pos, "formula"))?;
                raw.formulas.push(formula_from_sexpr(e)?);
                rest = &rest[1..];
            }
            Arg::Formulas => {
                for e in rest {
                    raw.formulas.push(formula_from_sexpr(e)?);
                }
                rest = &[];
            }
            Arg::Perm => match rest.first() {
                Some(SExpr::List(xs, _)) => {
                    raw.perm = xs.iter().map(parse_int).collect::<Result<_, _>>()?;
                    rest = &rest[1..];
                }
                Some(e) => {
                    return Err(ParseError::new(
                        e.pos(),
                        format!("expected a permutation, found {}", e.describe()),
                        &["(indices)"],
                    ))
                }
                None => return Err(missing(*pos, "(indices)")),
            },
        }
    }
    for e in rest {
        raw.premises.push(raw_from_sexpr(e)?);
    }
    Ok(raw)
}

/// Parses a proof term without checking it.
pub fn parse_proof<G: Grade>(src: &str) -> Result<RawProof<G>, ParseError> {
    raw_from_sexpr(&crate::sexpr::read_one(src)?)
}

impl<G: Grade> RawProof<G> {
    /// Builds the checked tree, reporting every failing node with its path.
    pub fn build(&self) -> Result<Proof<G>, Vec<Diagnostic>> {
        self.build_at(&NodePath::root())
    }

    fn build_at(&self, path: &NodePath) -> Result<Proof<G>, Vec<Diagnostic>> {
        let mut errs = Vec::new();
        let mut prems = Vec::new();
        for (i, p) in self.premises.iter().enumerate() {
            match p.build_at(&path.child(i)) {
                Ok(t) => prems.push(t),
                Err(e) => errs.extend(e),
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        let rule = self.rule(&prems).map_err(|d| vec![d.at(path)])?;
        ProofTree::new(rule, prems).map_err(|d| vec![d.at(path)])
    }

    fn rule(&self, prems: &[Proof<G>]) -> Result<Rule<G>, Diagnostic> {
        use RuleTag as T;
        let i = |k: usize| self.ints[k];
        let f = |k: usize| self.formulas[k].clone();
        let g = |k: usize| self.grades[k].clone();
        Ok(match self.tag {
            T::Ax => Rule::Ax { formula: f(0) },
            T::Cut => Rule::Cut {
                left: i(0),
                right: i(1),
            },
            T::Tensor => Rule::Tensor {
                left: i(0),
                right: i(1),
            },
            T::Par => Rule::Par {
                left: i(0),
                right: i(1),
            },
            T::One => Rule::One,
            T::Bot => Rule::Bot,
            T::Top => Rule::Top {
                context: self.formulas.clone(),
            },
            T::With => Rule::With {
                left: i(0),
                right: i(1),
            },
            T::Plus1 => Rule::Plus1 {
                index: i(0),
                other: f(0),
            },
            T::Plus2 => Rule::Plus2 {
                index: i(0),
                other: f(0),
            },
            T::W => Rule::W { formula: f(0) },
            T::C => Rule::C {
                left: i(0),
                right: i(1),
            },
            T::D => Rule::D { index: i(0) },
            T::CoW => Rule::CoW { formula: f(0) },
            T::CoC => Rule::CoC {
                left: i(0),
                right: i(1),
            },
            T::CoD => Rule::CoD { index: i(0) },
            T::WI => Rule::WI {
                grade: g(0),
                formula: f(0),
            },
            T::CoWI => Rule::CoWI {
                grade: g(0),
                formula: f(0),
            },
            T::Prom => Rule::Prom {
                index: i(0),
                grade: g(0),
            },
            T::Ex => Rule::Ex {
                perm: self.perm.clone(),
            },
            T::UW => Rule::UW { formula: f(0) },
            T::UC => Rule::UC {
                left: i(0),
                right: i(1),
            },
            T::UCoW => Rule::UCoW { formula: f(0) },
            T::UCoC => Rule::UCoC {
                left: i(0),
                right: i(1),
            },
            T::DI | T::CoDI => {
                let (index, target) = (i(0), g(0));
                let witness = self.witness(prems, index, &target)?;
                if self.tag == T::DI {
                    Rule::DI {
                        index,
                        target,
                        witness,
                    }
                } else {
                    Rule::CoDI {
                        index,
                        target,
                        witness,
                    }
                }
            }
        })
    }

    fn witness(&self, prems: &[Proof<G>], index: usize, target: &G) -> Result<G, Diagnostic> {
        let tag = self.tag;
        let Some(p) = prems.first() else {
            return Err(Diagnostic::new(
                tag,
                DiagKind::ContextPartitionInvalid,
                "expected 1 premise(s), found 0",
            ));
        };
        let Some(fm) = p.conclusion().0.get(index) else {
            return Err(Diagnostic::new(
                tag,
                DiagKind::ContextPartitionInvalid,
                format!("occurrence {index} out of range"),
            ));
        };
        let x = match (tag, fm) {
            (RuleTag::DI, Formula::WhyNotG(x, _)) | (RuleTag::CoDI, Formula::OfCourseG(x, _)) => x,
            _ => {
                return Err(Diagnostic::new(
                    tag,
                    DiagKind::WrongPrincipalFormula,
                    format!(
                        "expected a graded {}, found {fm}",
                        if tag == RuleTag::DI { "?" } else { "!" }
                    ),
                ))
            }
        };
        x.leq_witness(target).ok_or_else(|| {
            Diagnostic::new(
                tag,
                DiagKind::NoLeqWitness,
                format!("no w with {x} + w = {target}"),
            )
        })
    }
}

/// Canonical indented s-expression of a proof.
pub fn print_proof<G: Grade>(tree: &ProofTree<G>) -> String {
    let mut out = String::new();
    write_node(tree, 0, &mut out);
    out
}

fn write_node<G: Grade>(t: &ProofTree<G>, indent: usize, out: &mut String) {
    use Rule::*;
    out.push('(');
    out.push_str(t.tag().name());
    let mut arg = |s: String| {
        out.push(' ');
        out.push_str(&s);
    };
    let gr = |g: &G| format!("{{{g}}}");
    match t.rule() {
        Ax { formula } | W { formula } | CoW { formula } | UW { formula } | UCoW { formula } => {
            arg(formula.ascii())
        }
        Cut { left, right }
        | Tensor { left, right }
        | Par { left, right }
        | With { left, right }
        | C { left, right }
        | CoC { left, right }
        | UC { left, right }
        | UCoC { left, right } => {
            arg(left.to_string());
            arg(right.to_string());
        }
        One | Bot => {}
        Top { context } => {
            for f in context {
                arg(f.ascii());
            }
        }
        Plus1 { index, other } | Plus2 { index, other } => {
            arg(index.to_string());
            arg(other.ascii());
        }
        DI { index, target, .. } | CoDI { index, target, .. } => {
            arg(index.to_string());
            arg(gr(target));
        }
        Prom { index, grade } => {
            arg(index.to_string());
            arg(gr(grade));
        }
        D { index } | CoD { index } => arg(index.to_string()),
        WI { grade, formula } | CoWI { grade, formula } => {
            arg(gr(grade));
            arg(formula.ascii());
        }
        Ex { perm } => {
            let items: Vec<String> = perm.iter().map(|p| p.to_string()).collect();
            arg(format!("({})", items.join(" ")));
        }
    }
    for p in t.premises() {
        out.push('\n');
        out.push_str(&" ".repeat(indent + 2));
        write_node(p, indent + 2, out);
    }
    out.push(')');
}
