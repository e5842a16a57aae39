//! Exponential rules as operations on distributions and intensional
//! functions, and the generator-level invariance checks.

use std::fmt;

use num_traits::One;

use super::dist::{Distribution, FunRep, Point, TensorDist};
use super::op::{op_split, FactoredOp};
use super::poly::{parse_poly, Exp, Poly, Q};
use super::LpdoError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemRule {
    W,
    CoW,
    WI(FactoredOp),
    CoWI(FactoredOp),
    C,
    CoC,
    DI(FactoredOp),
    CoDI(FactoredOp),
    /// Dual of contraction into the strata `(left, right)`.
    DualC(FactoredOp, FactoredOp),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemVal {
    Fun(FunRep),
    Dist(Distribution),
    Tensor(TensorDist),
}

impl SemVal {
    fn kind(&self) -> &'static str {
        match self {
            SemVal::Fun(_) => "function",
            SemVal::Dist(_) => "distribution",
            SemVal::Tensor(_) => "tensor",
        }
    }
}

fn mismatch(rule: &SemRule, inputs: &[SemVal]) -> LpdoError {
    let kinds: Vec<&str> = inputs.iter().map(SemVal::kind).collect();
    LpdoError::StratumMismatch(format!("{rule:?} applied to [{}]", kinds.join(", ")))
}

/// `c'` on generators: `δ_x ∘ (D1 ∘ D2) ↦ (δ_x ∘ D1) ⊗ (δ_x ∘ D2)`.
pub fn dual_contraction(
    d: &Distribution,
    left: &FactoredOp,
    right: &FactoredOp,
) -> Result<TensorDist, LpdoError> {
    let whole = left.compose(right);
    let mut out = TensorDist::default();
    for (p, op, c) in d.terms() {
        if *op != whole {
            return Err(LpdoError::StratumMismatch(format!(
                "generator over {op} is not in stratum {whole}"
            )));
        }
        out.push(
            c.clone(),
            vec![(p.clone(), left.clone()), (p.clone(), right.clone())],
        );
    }
    Ok(out)
}

pub fn interp_rule(rule: &SemRule, inputs: &[SemVal]) -> Result<SemVal, LpdoError> {
    use SemVal::*;
    Ok(match (rule, inputs) {
        (SemRule::W, []) => Fun(FunRep::new(FactoredOp::id(), Poly::one())),
        (SemRule::CoW, []) => Dist(Distribution::dirac(Point::origin(), FactoredOp::id())),
        (SemRule::WI(d), []) => Fun(FunRep::new(d.clone(), Poly::one())),
        (SemRule::CoWI(d), []) => Dist(Distribution::dirac(Point::origin(), d.clone())),
        (SemRule::C, [Fun(f), Fun(g)]) => {
            Fun(FunRep::new(f.op.compose(&g.op), f.param.mul(&g.param)))
        }
        (SemRule::CoC, [Dist(a), Dist(b)]) => Dist(a.convolve(b)),
        (SemRule::DI(d), [Fun(f)]) => Fun(FunRep::new(f.op.compose(d), f.param.clone())),
        (SemRule::CoDI(d), [Dist(a)]) => Dist(a.then_op(d)),
        (SemRule::DualC(l, r), [Dist(a)]) => Tensor(dual_contraction(a, l, r)?),
        _ => return Err(mismatch(rule, inputs)),
    })
}

fn run(rule: SemRule, inputs: &[SemVal]) -> SemVal {
    interp_rule(&rule, inputs).expect("well-stratified by construction")
}

fn fun(v: SemVal) -> FunRep {
    match v {
        SemVal::Fun(f) => f,
        other => panic!("expected a function, got {}", other.kind()),
    }
}

fn dist(v: SemVal) -> Distribution {
    match v {
        SemVal::Dist(d) => d,
        other => panic!("expected a distribution, got {}", other.kind()),
    }
}

/// Pairs a tensor of generators against one test function per slot.
pub fn pair_tensor(t: &TensorDist, tests: &[FunRep]) -> Result<Q, LpdoError> {
    let mut sum = Q::from_integer(0.into());
    for (key, c) in t.terms() {
        let mut v = c.clone();
        for ((p, op), f) in key.iter().zip(tests) {
            v *= Distribution::dirac(p.clone(), op.clone()).pair(f)?;
        }
        sum += v;
    }
    Ok(sum)
}

/// Points, operators and test polynomials the checks range over.
#[derive(Debug, Clone)]
pub struct Generators {
    pub points: Vec<Point>,
    /// Base operators; pairwise composites are added by the checks.
    pub ops: Vec<FactoredOp>,
    pub polys: Vec<Poly>,
}

impl Generators {
    /// Grid `{-1,0,1,2}^2`, operators `1, X1, X1+1, X1^2, X1 X2 + 1`, and
    /// all monomials of degree at most 3 in two variables plus a mixed one.
    pub fn standard() -> Generators {
        let vals = [-1, 0, 1, 2];
        let points = vals
            .iter()
            .flat_map(|a| vals.iter().map(move |b| Point::from_ints(&[*a, *b])))
            .collect();
        let ops = ["1", "(X1)", "(X1+1)", "(X1)^2", "(X1*X2+1)"]
            .iter()
            .map(|s| FactoredOp::parse(s).expect("valid literal"))
            .collect();
        let mut polys = Vec::new();
        for d in 0..=3u32 {
            for i in 0..=d {
                polys.push(Poly::monomial(vec![i, d - i], Q::one()));
            }
        }
        polys.push(parse_poly("X1^2*X2-3*X1+1/2").expect("valid"));
        Generators { points, ops, polys }
    }

    /// Base operators together with their pairwise composites.
    pub fn ops_with_composites(&self) -> Vec<FactoredOp> {
        let mut out: Vec<FactoredOp> = self.ops.clone();
        for (i, a) in self.ops.iter().enumerate() {
            for b in &self.ops[i..] {
                out.push(a.compose(b));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn few_polys(&self) -> Vec<Poly> {
        // constant, one linear, one cubic, the mixed one
        let mut pick: Vec<Poly> = Vec::new();
        for p in &self.polys {
            let d = p.degree();
            if !pick.iter().any(|q| q.degree() == d) {
                pick.push(p.clone());
            }
        }
        pick
    }

    fn few_points(&self) -> Vec<Point> {
        self.points.iter().step_by(3).cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvarianceReport {
    pub cases: Vec<CaseResult>,
}

impl InvarianceReport {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.failures.is_empty())
    }
}

impl fmt::Display for InvarianceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            if c.failures.is_empty() {
                writeln!(f, "PASS {} ({} instances)", c.name, c.instances)?;
            } else {
                writeln!(
                    f,
                    "FAIL {}: {} of {} instances, first: {}",
                    c.name,
                    c.failures.len(),
                    c.instances,
                    c.failures[0]
                )?;
            }
        }
        Ok(())
    }
}

/// The rewrite cases checked at the generator level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvCase {
    WeakeningCoweakening,
    ContractionCoweakening,
    CocontractionWeakening,
    ContractionCocontraction,
    DerelictionWeakening,
    DerelictionContraction,
    DerelictionAxiom,
    DerelictionCommute,
    CoderelictionCoweakening,
    CoderelictionCocontraction,
    CoderelictionAxiom,
    CoderelictionCommute,
    StratumTransport,
    FundamentalSolution,
}

impl InvCase {
    pub const ALL: [InvCase; 14] = [
        InvCase::WeakeningCoweakening,
        InvCase::ContractionCoweakening,
        InvCase::CocontractionWeakening,
        InvCase::ContractionCocontraction,
        InvCase::DerelictionWeakening,
        InvCase::DerelictionContraction,
        InvCase::DerelictionAxiom,
        InvCase::DerelictionCommute,
        InvCase::CoderelictionCoweakening,
        InvCase::CoderelictionCocontraction,
        InvCase::CoderelictionAxiom,
        InvCase::CoderelictionCommute,
        InvCase::StratumTransport,
        InvCase::FundamentalSolution,
    ];

    pub fn name(self) -> &'static str {
        use InvCase::*;
        match self {
            WeakeningCoweakening => "weakening/coweakening",
            ContractionCoweakening => "contraction/coweakening",
            CocontractionWeakening => "cocontraction/weakening",
            ContractionCocontraction => "contraction/cocontraction",
            DerelictionWeakening => "dereliction/weakening",
            DerelictionContraction => "dereliction/contraction",
            DerelictionAxiom => "dereliction/axiom",
            DerelictionCommute => "dereliction/commutation",
            CoderelictionCoweakening => "codereliction/coweakening",
            CoderelictionCocontraction => "codereliction/cocontraction",
            CoderelictionAxiom => "codereliction/axiom",
            CoderelictionCommute => "codereliction/commutation",
            StratumTransport => "dereliction/codereliction transport",
            FundamentalSolution => "fundamental solution composition",
        }
    }
}

struct Tally {
    instances: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn check<T: PartialEq + fmt::Debug>(
        &mut self,
        lhs: Result<T, LpdoError>,
        rhs: Result<T, LpdoError>,
        what: impl Fn() -> String,
    ) {
        self.instances += 1;
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => self
                .failures
                .push(format!("{}: {:?} vs {:?}", what(), a, b)),
        }
    }
}

fn expanded(d: &Distribution) -> Result<std::collections::BTreeMap<(Point, Exp), Q>, LpdoError> {
    Ok(d.expanded())
}

/// Evaluates both sides of one rewrite case on the generators.
pub fn check_invariance(case: InvCase, gens: &Generators) -> CaseResult {
    use SemRule::*;
    use SemVal::{Dist, Fun};
    let mut t = Tally::new();
    let base = &gens.ops;
    let all_ops = gens.ops_with_composites();
    let few_polys = gens.few_polys();
    let few_points = gens.few_points();
    let origin = Point::origin();
    match case {
        InvCase::WeakeningCoweakening => {
            let w = dist(run(CoW, &[])).pair(&fun(run(W, &[])));
            t.check(w, Ok(Q::one()), || "ungraded".into());
            for d in &all_ops {
                let lhs = dist(run(CoWI(d.clone()), &[])).pair(&fun(run(WI(d.clone()), &[])));
                t.check(lhs, Ok(Q::one()), || format!("D={d}"));
            }
        }
        InvCase::ContractionCoweakening => {
            for d1 in base {
                for d2 in base {
                    let cow = dist(run(CoWI(d1.compose(d2)), &[]));
                    for f in &gens.polys {
                        for g in &few_polys {
                            let (ff, gg) = (
                                FunRep::new(d1.clone(), f.clone()),
                                FunRep::new(d2.clone(), g.clone()),
                            );
                            let lhs = cow.pair(&fun(run(C, &[Fun(ff.clone()), Fun(gg.clone())])));
                            let rhs = (|| {
                                Ok(dist(run(CoWI(d1.clone()), &[])).pair(&ff)?
                                    * dist(run(CoWI(d2.clone()), &[])).pair(&gg)?)
                            })();
                            t.check(lhs, rhs, || format!("D1={d1} D2={d2} f={f} g={g}"));
                        }
                    }
                }
            }
        }
        InvCase::CocontractionWeakening => {
            let extra = [
                FactoredOp::id(),
                gens.ops.last().cloned().unwrap_or_else(FactoredOp::id),
            ];
            for d1 in base {
                for d2 in base {
                    let w = fun(run(WI(d1.compose(d2)), &[]));
                    for x in &gens.points {
                        for y in &few_points {
                            for e in &extra {
                                let psi = Distribution::dirac(x.clone(), e.compose(d1));
                                let phi = Distribution::dirac(y.clone(), d2.clone());
                                let conv = dist(run(CoC, &[Dist(psi.clone()), Dist(phi.clone())]));
                                let lhs = conv.pair(&w);
                                let rhs = (|| {
                                    Ok(psi.pair(&fun(run(WI(d1.clone()), &[])))?
                                        * phi.pair(&fun(run(WI(d2.clone()), &[])))?)
                                })();
                                // homogeneity: the pairing is computed term by term
                                let termwise = conv.terms().try_fold(
                                    Q::from_integer(0.into()),
                                    |acc, (p, op, c)| {
                                        Ok(acc
                                            + Distribution::term(c.clone(), p.clone(), op.clone())
                                                .pair(&w)?)
                                    },
                                );
                                let what = || format!("D1={d1} D2={d2} E={e} x={x} y={y}");
                                t.check(lhs, rhs.clone(), what);
                                t.check(termwise, rhs, what);
                            }
                        }
                    }
                }
            }
        }
        InvCase::ContractionCocontraction => {
            for d1 in base {
                for d2 in base {
                    let whole = d1.compose(d2);
                    for d3 in divisors(&whole) {
                        let d4 = whole.divide(&d3).expect("divisor");
                        let Ok(cert) = op_split(d1, d2, &d3, &d4) else {
                            t.instances += 1;
                            t.failures.push(format!("no split for {d1} {d2} {d3} {d4}"));
                            continue;
                        };
                        for x in &few_points {
                            for y in &few_points {
                                let psi = Distribution::dirac(x.clone(), d1.clone());
                                let phi = Distribution::dirac(y.clone(), d2.clone());
                                let conv = dist(run(CoC, &[Dist(psi.clone()), Dist(phi.clone())]));
                                let lhs = dual_contraction(&conv, &d3, &d4);
                                let rhs = (|| {
                                    let a = dual_contraction(&psi, &cert.x13, &cert.x14)?;
                                    let b = dual_contraction(&phi, &cert.x23, &cert.x24)?;
                                    // a = δx∘D13 ⊗ δx∘D14, b = δy∘D23 ⊗ δy∘D24
                                    Ok(a.tensor(&b).map_keys(|k| {
                                        vec![
                                            (k[0].0.add(&k[2].0), k[0].1.compose(&k[2].1)),
                                            (k[1].0.add(&k[3].0), k[1].1.compose(&k[3].1)),
                                        ]
                                    }))
                                })();
                                let what =
                                    || format!("D1={d1} D2={d2} D3={d3} D4={d4} x={x} y={y}");
                                match (&lhs, &rhs) {
                                    (Ok(a), Ok(b)) => {
                                        t.check(Ok(a.expanded()), Ok(b.expanded()), what);
                                        for f in &few_polys {
                                            let tests = [
                                                FunRep::new(d3.clone(), f.clone()),
                                                FunRep::new(d4.clone(), f.clone()),
                                            ];
                                            t.check(
                                                pair_tensor(a, &tests),
                                                pair_tensor(b, &tests),
                                                || format!("{} f={f}", what()),
                                            );
                                        }
                                    }
                                    _ => t.check(lhs.map(|_| ()), rhs.map(|_| ()), what),
                                }
                            }
                        }
                    }
                }
            }
        }
        InvCase::DerelictionWeakening => {
            for d1 in &all_ops {
                for d2 in base {
                    let lhs = fun(run(DI(d2.clone()), &[run(WI(d1.clone()), &[])]));
                    let rhs = fun(run(WI(d1.compose(d2)), &[]));
                    for x in &gens.points {
                        let psi = Distribution::dirac(x.clone(), d1.compose(d2));
                        t.check(psi.pair(&lhs), psi.pair(&rhs), || {
                            format!("D1={d1} D2={d2} x={x}")
                        });
                    }
                }
            }
        }
        InvCase::DerelictionContraction | InvCase::DerelictionCommute => {
            for d1 in base {
                for d2 in base {
                    for d3 in base {
                        for f in &few_polys {
                            for g in &few_polys {
                                let ff = Fun(FunRep::new(d1.clone(), f.clone()));
                                let gg = Fun(FunRep::new(d2.clone(), g.clone()));
                                let contracted = run(C, &[ff.clone(), gg.clone()]);
                                let lhs = fun(run(DI(d3.clone()), &[contracted.clone()]));
                                let rhs = if case == InvCase::DerelictionContraction {
                                    fun(run(C, &[contracted, run(WI(d3.clone()), &[])]))
                                } else {
                                    fun(run(C, &[run(DI(d3.clone()), &[ff]), gg]))
                                };
                                let total = d1.compose(d2).compose(d3);
                                for x in &few_points {
                                    let psi = Distribution::dirac(x.clone(), total.clone());
                                    t.check(psi.pair(&lhs), psi.pair(&rhs), || {
                                        format!("D1={d1} D2={d2} D3={d3} f={f} g={g} x={x}")
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        InvCase::DerelictionAxiom => {
            for d1 in &all_ops {
                for d2 in base {
                    for f in &gens.polys {
                        let ff = Fun(FunRep::new(d1.clone(), f.clone()));
                        let lhs = fun(run(DI(d2.clone()), &[ff.clone()]));
                        let rhs = fun(run(C, &[ff, run(WI(d2.clone()), &[])]));
                        for x in &few_points {
                            let psi = Distribution::dirac(x.clone(), d1.compose(d2));
                            t.check(psi.pair(&lhs), psi.pair(&rhs), || {
                                format!("D1={d1} D2={d2} f={f} x={x}")
                            });
                        }
                    }
                }
            }
        }
        InvCase::CoderelictionCoweakening => {
            for d1 in &all_ops {
                for d2 in &all_ops {
                    let lhs = dist(run(CoDI(d2.clone()), &[run(CoWI(d1.clone()), &[])]));
                    let rhs = dist(run(CoWI(d1.compose(d2)), &[]));
                    t.check(expanded(&lhs), expanded(&rhs), || {
                        format!("D1={d1} D2={d2}")
                    });
                }
            }
        }
        InvCase::CoderelictionCocontraction | InvCase::CoderelictionCommute => {
            for d1 in base {
                for d2 in base {
                    for d3 in base {
                        for x in &few_points {
                            for y in &few_points {
                                let psi = Dist(Distribution::dirac(x.clone(), d1.clone()));
                                let phi = Dist(Distribution::dirac(y.clone(), d2.clone()));
                                let conv = run(CoC, &[psi.clone(), phi.clone()]);
                                let lhs = dist(run(CoDI(d3.clone()), &[conv.clone()]));
                                let rhs = if case == InvCase::CoderelictionCocontraction {
                                    dist(run(CoC, &[conv, run(CoWI(d3.clone()), &[])]))
                                } else {
                                    dist(run(CoC, &[run(CoDI(d3.clone()), &[psi]), phi]))
                                };
                                t.check(expanded(&lhs), expanded(&rhs), || {
                                    format!("D1={d1} D2={d2} D3={d3} x={x} y={y}")
                                });
                            }
                        }
                    }
                }
            }
        }
        InvCase::CoderelictionAxiom => {
            for d1 in &all_ops {
                for d2 in base {
                    for x in &gens.points {
                        let psi = Dist(Distribution::dirac(x.clone(), d1.clone()));
                        let lhs = dist(run(CoDI(d2.clone()), &[psi.clone()]));
                        let rhs = dist(run(CoC, &[psi, run(CoWI(d2.clone()), &[])]));
                        t.check(expanded(&lhs), expanded(&rhs), || {
                            format!("D1={d1} D2={d2} x={x}")
                        });
                        for f in &few_polys {
                            let test = FunRep::new(d1.compose(d2), f.clone());
                            t.check(lhs.pair(&test), rhs.pair(&test), || {
                                format!("D1={d1} D2={d2} x={x} f={f}")
                            });
                        }
                    }
                }
            }
        }
        InvCase::StratumTransport => {
            for d1 in base {
                for d2 in base {
                    for e in base {
                        for f in &few_polys {
                            for x in &few_points {
                                let psi = Distribution::dirac(x.clone(), e.compose(d1));
                                let u = FunRep::new(d1.clone(), f.clone());
                                let lhs = dist(run(CoDI(d2.clone()), &[Dist(psi.clone())]))
                                    .pair(&fun(run(DI(d2.clone()), &[Fun(u.clone())])));
                                t.check(lhs, psi.pair(&u), || {
                                    format!("D1={d1} D2={d2} E={e} f={f} x={x}")
                                });
                            }
                        }
                    }
                }
            }
        }
        InvCase::FundamentalSolution => {
            let delta0 = Dist(Distribution::dirac(origin, FactoredOp::id()));
            for d1 in &all_ops {
                for d2 in &all_ops {
                    let lhs = dist(run(
                        CoDI(d2.clone()),
                        &[run(CoDI(d1.clone()), &[delta0.clone()])],
                    ));
                    let rhs = dist(run(CoDI(d1.compose(d2)), &[delta0.clone()]));
                    t.check(Ok(lhs.clone()), Ok(rhs.clone()), || {
                        format!("D1={d1} D2={d2}")
                    });
                    t.check(expanded(&lhs), expanded(&rhs), || {
                        format!("D1={d1} D2={d2} expanded")
                    });
                }
            }
        }
    }
    CaseResult {
        name: case.name(),
        instances: t.instances,
        failures: t.failures,
    }
}

pub fn check_all(gens: &Generators) -> InvarianceReport {
    InvarianceReport {
        cases: InvCase::ALL
            .iter()
            .map(|c| check_invariance(*c, gens))
            .collect(),
    }
}

/// Every divisor with unit 1 of `d`'s factor multiset, plus one rescaled
/// copy so that unit bookkeeping is exercised.
pub fn divisors(d: &FactoredOp) -> Vec<FactoredOp> {
    let mut out = vec![FactoredOp::id()];
    for (p, k) in d.factors() {
        let f = FactoredOp::factor(p).expect("stored factors are valid");
        let mut next = Vec::new();
        for base in &out {
            let mut cur = base.clone();
            next.push(cur.clone());
            for _ in 0..k {
                cur = cur.compose(&f);
                next.push(cur.clone());
            }
        }
        out = next;
    }
    let two = FactoredOp::scalar(Q::from_integer(2.into())).expect("nonzero");
    if let Some(last) = out.last().cloned() {
        out.push(last.compose(&two));
    }
    out
}
