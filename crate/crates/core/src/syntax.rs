//! Formulas and one-sided sequents over an abstract grade type.

use std::fmt::{self, Display};

use crate::grading::Grade;
use crate::sexpr::{read_one, ParseError, SExpr};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula<G> {
    Atom { name: String, dual: bool },
    One,
    Bot,
    Top,
    Zero,
    Tensor(Box<Formula<G>>, Box<Formula<G>>),
    Par(Box<Formula<G>>, Box<Formula<G>>),
    With(Box<Formula<G>>, Box<Formula<G>>),
    Plus(Box<Formula<G>>, Box<Formula<G>>),
    WhyNot(Box<Formula<G>>),
    OfCourse(Box<Formula<G>>),
    WhyNotG(G, Box<Formula<G>>),
    OfCourseG(G, Box<Formula<G>>),
}

impl<G: Clone> Formula<G> {
    pub fn atom(name: &str) -> Self {
        Formula::Atom {
            name: name.to_string(),
            dual: false,
        }
    }

    pub fn dual_atom(name: &str) -> Self {
        Formula::Atom {
            name: name.to_string(),
            dual: true,
        }
    }

    pub fn tensor(a: Self, b: Self) -> Self {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Self, b: Self) -> Self {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn with(a: Self, b: Self) -> Self {
        Formula::With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Self, b: Self) -> Self {
        Formula::Plus(Box::new(a), Box::new(b))
    }

    pub fn why_not(a: Self) -> Self {
        Formula::WhyNot(Box::new(a))
    }

    pub fn of_course(a: Self) -> Self {
        Formula::OfCourse(Box::new(a))
    }

    pub fn wn(g: G, a: Self) -> Self {
        Formula::WhyNotG(g, Box::new(a))
    }

    pub fn oc(g: G, a: Self) -> Self {
        Formula::OfCourseG(g, Box::new(a))
    }

    /// Structural linear negation; graded exponentials keep their grade.
    pub fn negate(&self) -> Self {
        use Formula::*;
        match self {
            Atom { name, dual } => Atom {
                name: name.clone(),
                dual: !dual,
            },
            One => Bot,
            Bot => One,
            Top => Zero,
            Zero => Top,
            Tensor(a, b) => Par(Box::new(a.negate()), Box::new(b.negate())),
            Par(a, b) => Tensor(Box::new(a.negate()), Box::new(b.negate())),
            With(a, b) => Plus(Box::new(a.negate()), Box::new(b.negate())),
            Plus(a, b) => With(Box::new(a.negate()), Box::new(b.negate())),
            WhyNot(a) => OfCourse(Box::new(a.negate())),
            OfCourse(a) => WhyNot(Box::new(a.negate())),
            WhyNotG(g, a) => OfCourseG(g.clone(), Box::new(a.negate())),
            OfCourseG(g, a) => WhyNotG(g.clone(), Box::new(a.negate())),
        }
    }

    pub fn is_exponential(&self) -> bool {
        matches!(
            self,
            Formula::WhyNot(_)
                | Formula::OfCourse(_)
                | Formula::WhyNotG(..)
                | Formula::OfCourseG(..)
        )
    }

    pub fn is_graded_exponential(&self) -> bool {
        matches!(self, Formula::WhyNotG(..) | Formula::OfCourseG(..))
    }

    pub fn contains_exponential(&self) -> bool {
        use Formula::*;
        match self {
            Atom { .. } | One | Bot | Top | Zero => false,
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
                a.contains_exponential() || b.contains_exponential()
            }
            _ => true,
        }
    }

    /// True iff no exponential occurs under another exponential.
    pub fn is_finitary(&self) -> bool {
        use Formula::*;
        match self {
            Atom { .. } | One | Bot | Top | Zero => true,
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
                a.is_finitary() && b.is_finitary()
            }
            WhyNot(a) | OfCourse(a) | WhyNotG(_, a) | OfCourseG(_, a) => !a.contains_exponential(),
        }
    }

    pub fn contains_ungraded_exponential(&self) -> bool {
        use Formula::*;
        match self {
            Atom { .. } | One | Bot | Top | Zero => false,
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
                a.contains_ungraded_exponential() || b.contains_ungraded_exponential()
            }
            WhyNot(_) | OfCourse(_) => true,
            WhyNotG(_, a) | OfCourseG(_, a) => a.contains_ungraded_exponential(),
        }
    }

    pub fn contains_graded_exponential(&self) -> bool {
        use Formula::*;
        match self {
            Atom { .. } | One | Bot | Top | Zero => false,
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
                a.contains_graded_exponential() || b.contains_graded_exponential()
            }
            WhyNot(a) | OfCourse(a) => a.contains_graded_exponential(),
            WhyNotG(..) | OfCourseG(..) => true,
        }
    }

    /// Rewrites every grade annotation.
    pub fn map_grades<H: Clone>(&self, f: &impl Fn(&G) -> H) -> Formula<H> {
        use Formula::*;
        let b = |x: &Formula<G>| Box::new(x.map_grades(f));
        match self {
            Atom { name, dual } => Atom {
                name: name.clone(),
                dual: *dual,
            },
            One => One,
            Bot => Bot,
            Top => Top,
            Zero => Zero,
            Tensor(x, y) => Tensor(b(x), b(y)),
            Par(x, y) => Par(b(x), b(y)),
            With(x, y) => With(b(x), b(y)),
            Plus(x, y) => Plus(b(x), b(y)),
            WhyNot(x) => WhyNot(b(x)),
            OfCourse(x) => OfCourse(b(x)),
            WhyNotG(g, x) => WhyNotG(f(g), b(x)),
            OfCourseG(g, x) => OfCourseG(f(g), b(x)),
        }
    }

    /// Replaces graded exponentials by their ungraded counterparts.
    pub fn erase_grades(&self) -> Self {
        use Formula::*;
        let b = |x: &Formula<G>| Box::new(x.erase_grades());
        match self {
            Atom { .. } | One | Bot | Top | Zero => self.clone(),
            Tensor(x, y) => Tensor(b(x), b(y)),
            Par(x, y) => Par(b(x), b(y)),
            With(x, y) => With(b(x), b(y)),
            Plus(x, y) => Plus(b(x), b(y)),
            WhyNot(x) | WhyNotG(_, x) => WhyNot(b(x)),
            OfCourse(x) | OfCourseG(_, x) => OfCourse(b(x)),
        }
    }

    pub fn grades(&self) -> Vec<&G> {
        use Formula::*;
        match self {
            Atom { .. } | One | Bot | Top | Zero => vec![],
            Tensor(x, y) | Par(x, y) | With(x, y) | Plus(x, y) => {
                let mut v = x.grades();
                v.extend(y.grades());
                v
            }
            WhyNot(x) | OfCourse(x) => x.grades(),
            WhyNotG(g, x) | OfCourseG(g, x) => {
                let mut v = vec![g];
                v.extend(x.grades());
                v
            }
        }
    }

    pub fn atoms(&self) -> Vec<&str> {
        use Formula::*;
        match self {
            Atom { name, .. } => vec![name.as_str()],
            One | Bot | Top | Zero => vec![],
            Tensor(x, y) | Par(x, y) | With(x, y) | Plus(x, y) => {
                let mut v = x.atoms();
                v.extend(y.atoms());
                v
            }
            WhyNot(x) | OfCourse(x) | WhyNotG(_, x) | OfCourseG(_, x) => x.atoms(),
        }
    }

    pub fn size(&self) -> usize {
        use Formula::*;
        match self {
            Atom { .. } | One | Bot | Top | Zero => 1,
            Tensor(x, y) | Par(x, y) | With(x, y) | Plus(x, y) => 1 + x.size() + y.size(),
            WhyNot(x) | OfCourse(x) | WhyNotG(_, x) | OfCourseG(_, x) => 1 + x.size(),
        }
    }

    pub fn depth(&self) -> usize {
        use Formula::*;
        match self {
            Atom { .. } | One | Bot | Top | Zero => 1,
            Tensor(x, y) | Par(x, y) | With(x, y) | Plus(x, y) => 1 + x.depth().max(y.depth()),
            WhyNot(x) | OfCourse(x) | WhyNotG(_, x) | OfCourseG(_, x) => 1 + x.depth(),
        }
    }
}

impl<G: Grade> Formula<G> {
    /// Canonical ASCII s-expression.
    pub fn ascii(&self) -> String {
        let mut s = String::new();
        self.write_ascii(&mut s);
        s
    }

    pub(crate) fn write_ascii(&self, out: &mut String) {
        use Formula::*;
        match self {
            Atom { name, dual } => {
                out.push_str(name);
                if *dual {
                    out.push('^');
                }
            }
            One => out.push('1'),
            Bot => out.push_str("bot"),
            Top => out.push_str("top"),
            Zero => out.push('0'),
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
                let head = match self {
                    Tensor(..) => "tensor",
                    Par(..) => "par",
                    With(..) => "with",
                    _ => "plus",
                };
                out.push('(');
                out.push_str(head);
                out.push(' ');
                a.write_ascii(out);
                out.push(' ');
                b.write_ascii(out);
                out.push(')');
            }
            WhyNot(a) | OfCourse(a) => {
                out.push_str(if matches!(self, WhyNot(_)) {
                    "(? "
                } else {
                    "(! "
                });
                a.write_ascii(out);
                out.push(')');
            }
            WhyNotG(g, a) | OfCourseG(g, a) => {
                out.push_str(if matches!(self, WhyNotG(..)) {
                    "(?{"
                } else {
                    "(!{"
                });
                out.push_str(&g.to_string());
                out.push_str("} ");
                a.write_ascii(out);
                out.push(')');
            }
        }
    }

    fn write_pretty(&self, out: &mut String, top: bool) {
        use Formula::*;
        match self {
            Atom { name, dual } => {
                out.push_str(name);
                if *dual {
                    out.push('⊥');
                }
            }
            One => out.push('1'),
            Bot => out.push('⊥'),
            Top => out.push('⊤'),
            Zero => out.push('0'),
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
                let op = match self {
                    Tensor(..) => " ⊗ ",
                    Par(..) => " ⅋ ",
                    With(..) => " & ",
                    _ => " ⊕ ",
                };
                if !top {
                    out.push('(');
                }
                a.write_pretty(out, false);
                out.push_str(op);
                b.write_pretty(out, false);
                if !top {
                    out.push(')');
                }
            }
            WhyNot(a) | OfCourse(a) => {
                out.push(if matches!(self, WhyNot(_)) { '?' } else { '!' });
                a.write_pretty(out, false);
            }
            WhyNotG(g, a) | OfCourseG(g, a) => {
                out.push(if matches!(self, WhyNotG(..)) {
                    '?'
                } else {
                    '!'
                });
                let gs = g.to_string();
                if gs.chars().all(|c| c.is_ascii_alphanumeric()) {
                    out.push('_');
                    out.push_str(&gs);
                } else {
                    out.push_str("_{");
                    out.push_str(&gs);
                    out.push('}');
                }
                out.push(' ');
                a.write_pretty(out, false);
            }
        }
    }

    /// Human-readable rendering, UTF-8 connectives unless `ascii` is set.
    pub fn render(&self, ascii: bool) -> String {
        if ascii {
            self.ascii()
        } else {
            let mut s = String::new();
            self.write_pretty(&mut s, true);
            s
        }
    }
}

impl<G: Grade> Display for Formula<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// One-sided sequent. Position order identifies occurrences; equality is
/// multiset equality.
#[derive(Debug, Clone, Default, Hash)]
pub struct Sequent<G>(pub Vec<Formula<G>>);

impl<G: Ord + Clone> Sequent<G> {
    pub fn new(formulas: Vec<Formula<G>>) -> Self {
        Sequent(formulas)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula<G>> {
        self.0.iter()
    }

    pub fn sorted(&self) -> Vec<Formula<G>> {
        let mut v = self.0.clone();
        v.sort();
        v
    }

    /// Occurrence-for-occurrence equality, order included.
    pub fn ordered_eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<G: Ord + Clone> PartialEq for Sequent<G> {
    fn eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.sorted() == other.sorted()
    }
}

impl<G: Ord + Clone> Eq for Sequent<G> {}

impl<G: Ord + Clone> std::ops::Index<usize> for Sequent<G> {
    type Output = Formula<G>;
    fn index(&self, i: usize) -> &Formula<G> {
        &self.0[i]
    }
}

impl<G: Grade> Sequent<G> {
    pub fn render(&self, ascii: bool) -> String {
        let items: Vec<String> = self.0.iter().map(|f| f.render(ascii)).collect();
        if ascii {
            format!("|- {}", items.join(", "))
        } else {
            format!("⊢ {}", items.join(", "))
        }
    }
}

impl<G: Grade> Display for Sequent<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Reads a formula from an s-expression.
pub fn formula_from_sexpr<G: Grade>(e: &SExpr) -> Result<Formula<G>, ParseError> {
    const EXPECTED: &[&str] = &[
        "atom", "1", "0", "bot", "top", "(tensor", "(par", "(with", "(plus", "(!", "(?",
    ];
    match e {
        SExpr::Sym(s, pos) => match s.as_str() {
            "1" => Ok(Formula::One),
            "0" => Ok(Formula::Zero),
            "bot" => Ok(Formula::Bot),
            "top" => Ok(Formula::Top),
            _ => {
                let (name, dual) = match s.strip_suffix('^') {
                    Some(n) => (n, true),
                    None => (s.as_str(), false),
                };
                let ok = name
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_alphabetic() || c == '_')
                    && name
                        .chars()
                        .all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
                if !ok {
                    return Err(ParseError::new(
                        *pos,
                        format!("`{s}` is not a formula"),
                        EXPECTED,
                    ));
                }
                Ok(Formula::Atom {
                    name: name.to_string(),
                    dual,
                })
            }
        },
        SExpr::Brace(_, pos) => Err(ParseError::new(*pos, "unexpected grade", EXPECTED)),
        SExpr::List(items, pos) => {
            let head = items.first().and_then(|h| h.as_sym()).ok_or_else(|| {
                ParseError::new(
                    *pos,
                    "expected a connective",
                    &["tensor", "par", "with", "plus", "!", "?"],
                )
            })?;
            let args = &items[1..];
            match head {
                "tensor" | "par" | "with" | "plus" => {
                    if args.len() != 2 {
                        return Err(ParseError::new(
                            *pos,
                            format!("`{head}` takes two formulas"),
                            EXPECTED,
                        ));
                    }
                    let a = formula_from_sexpr(&args[0])?;
                    let b = formula_from_sexpr(&args[1])?;
                    Ok(match head {
                        "tensor" => Formula::tensor(a, b),
                        "par" => Formula::par(a, b),
                        "with" => Formula::with(a, b),
                        _ => Formula::plus(a, b),
                    })
                }
                "!" | "?" => match args {
                    [SExpr::Brace(g, gpos), body] => {
                        let g = G::parse_literal(g)
                            .map_err(|e| ParseError::new(*gpos, e.to_string(), &["grade"]))?;
                        let a = formula_from_sexpr(body)?;
                        Ok(if head == "!" {
                            Formula::oc(g, a)
                        } else {
                            Formula::wn(g, a)
                        })
                    }
                    [body] => {
                        let a = formula_from_sexpr(body)?;
                        Ok(if head == "!" {
                            Formula::of_course(a)
                        } else {
                            Formula::why_not(a)
                        })
                    }
                    _ => Err(ParseError::new(
                        *pos,
                        format!("`{head}` takes an optional grade and a formula"),
                        &["{grade}", "formula"],
                    )),
                },
                _ => Err(ParseError::new(
                    items[0].pos(),
                    format!("unknown connective `{head}`"),
                    &["tensor", "par", "with", "plus", "!", "?"],
                )),
            }
        }
    }
}

/// Parses a formula in the ASCII s-expression syntax.
pub fn parse_formula<G: Grade>(src: &str) -> Result<Formula<G>, ParseError> {
    formula_from_sexpr(&read_one(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::Nat;

    type F = Formula<Nat>;

    #[test]
    fn negation_of_graded_exponentials_keeps_grade() {
        let f = F::oc(Nat(3), F::atom("a"));
        assert_eq!(f.negate(), F::wn(Nat(3), F::dual_atom("a")));
    }

    #[test]
    fn de_morgan() {
        let f = F::tensor(F::atom("a"), F::atom("b"));
        assert_eq!(f.negate(), F::par(F::dual_atom("a"), F::dual_atom("b")));
        assert_eq!(F::Top.negate(), F::Zero);
        assert_eq!(F::One.negate(), F::Bot);
    }

    #[test]
    fn finitary_examples() {
        let ab = F::tensor(F::atom("a"), F::atom("b"));
        assert!(F::oc(Nat(1), ab.clone()).is_finitary());
        assert!(!F::oc(Nat(1), F::wn(Nat(2), F::atom("a"))).is_finitary());
        assert!(F::plus(F::atom("a"), F::atom("b")).is_finitary());
        assert!(F::tensor(F::oc(Nat(1), F::atom("a")), F::wn(Nat(1), F::atom("b"))).is_finitary());
    }

    #[test]
    fn sequent_equality_ignores_order() {
        let a = Sequent(vec![F::atom("a"), F::One, F::atom("a")]);
        let b = Sequent(vec![F::One, F::atom("a"), F::atom("a")]);
        let c = Sequent(vec![F::One, F::atom("a")]);
        assert_eq!(a, b);
        assert!(!a.ordered_eq(&b));
        assert_ne!(a, c);
    }

    #[test]
    fn parsing() {
        assert_eq!(
            parse_formula::<Nat>("(!{2} a)").unwrap(),
            F::oc(Nat(2), F::atom("a"))
        );
        assert_eq!(
            parse_formula::<Nat>("(par a^ b)").unwrap(),
            F::par(F::dual_atom("a"), F::atom("b"))
        );
        assert_eq!(parse_formula::<Nat>("(? bot)").unwrap(), F::why_not(F::Bot));
        let e = parse_formula::<Nat>("(tensor a)").unwrap_err();
        assert_eq!(e.pos.col, 1);
        assert!(parse_formula::<Nat>("(!{x} a)").is_err());
        assert!(parse_formula::<Nat>("(foo a b)").is_err());
    }

    #[test]
    fn rendering() {
        let f = F::par(F::oc(Nat(2), F::atom("a")), F::dual_atom("b"));
        assert_eq!(f.ascii(), "(par (!{2} a) b^)");
        assert_eq!(f.to_string(), "!_2 a ⅋ b⊥");
    }
}
