use super::*;
use crate::grading::Nat;

fn accepts(src: &str, mode: Mode) -> Proof<Nat> {
    let t = parse_proof::<Nat>(src)
        .unwrap()
        .build()
        .unwrap_or_else(|e| panic!("{src}: {e:?}"));
    check(&t, mode).unwrap_or_else(|e| panic!("{src}: {e:?}"));
    t
}

fn rejects(src: &str, mode: Mode) -> Vec<DiagKind> {
    let raw = parse_proof::<Nat>(src).unwrap();
    match raw.build() {
        Err(e) => e.into_iter().map(|d| d.kind).collect(),
        Ok(t) => check(&t, mode)
            .expect_err(src)
            .into_iter()
            .map(|d| d.kind)
            .collect(),
    }
}

fn concl(t: &Proof<Nat>) -> String {
    t.conclusion().render(true)
}

#[test]
fn contraction_from_the_rule_table() {
    let t = accepts("(c 1 2 (wi {1} a (wi {2} a (one))))", Mode::Dbsll);
    assert_eq!(concl(&t), "|- 1, (?{3} a)");
    let src = "(c 0 1 (cut 1 0 (ax (tensor (?{1} a) (?{2} a))) (par 0 1 (ax (?{1} a^)))))";
    assert!(!rejects(src, Mode::Dbsll).is_empty());
}

#[test]
fn coweakening_has_no_context() {
    let t = accepts("(cow a)", Mode::Dbsll);
    assert_eq!(concl(&t), "|- (!{0} a)");
    assert_eq!(
        rejects("(cow a (one))", Mode::Dbsll),
        vec![DiagKind::ContextPartitionInvalid]
    );
}

#[test]
fn dereliction_needs_a_witness() {
    assert_eq!(
        rejects("(di 1 {3} (wi {5} a (one)))", Mode::Dbsll),
        vec![DiagKind::NoLeqWitness]
    );
    let t = accepts("(di 1 {5} (wi {3} a (one)))", Mode::Dbsll);
    assert!(matches!(
        t.rule(),
        Rule::DI {
            witness: Nat(2),
            ..
        }
    ));
}

/// One valid and one invalid instance per rule tag.
#[test]
fn accept_reject_corpus() {
    let cases: Vec<(&str, &str, Mode)> = vec![
        ("(ax (tensor a b))", "(ax)", Mode::Dbsll),
        (
            "(cut 1 0 (ax a) (ax a))",
            "(cut 1 1 (ax a) (ax a))",
            Mode::Dbsll,
        ),
        (
            "(tensor 1 1 (ax a) (ax b))",
            "(tensor 1 2 (ax a) (ax b))",
            Mode::Dbsll,
        ),
        ("(par 0 1 (ax a))", "(par 0 0 (ax a))", Mode::Dbsll),
        ("(one)", "(one (one))", Mode::Dbsll),
        ("(bot (one))", "(bot)", Mode::Dbsll),
        ("(top a b)", "(top (one))", Mode::Dbsll),
        (
            "(with 1 1 (ax a) (tensor 1 0 (ax a) (one)))",
            "(with 1 1 (ax a) (ax b))",
            Mode::Dbsll,
        ),
        ("(plus1 0 b (one))", "(plus1 3 b (one))", Mode::Dbsll),
        ("(plus2 0 b (one))", "(plus2 1 b (one))", Mode::Dbsll),
        ("(w a (one))", "(w a)", Mode::Dbsll),
        (
            "(c 1 2 (w a (w a (one))))",
            "(c 0 1 (w a (w b (one))))",
            Mode::Dbsll,
        ),
        (
            "(di 1 {2} (w a (one)))",
            "(di 0 {2} (w a (one)))",
            Mode::Dbsll,
        ),
        ("(d 1 (ax a))", "(d 2 (ax a))", Mode::Dbsll),
        ("(cow a)", "(cow a (one))", Mode::Dbsll),
        (
            "(coc 0 0 (cow a) (cow a))",
            "(coc 0 0 (cow a) (cow b))",
            Mode::Dbsll,
        ),
        (
            "(codi 0 {4} (cow a))",
            "(codi 0 {4} (wi {1} a (one)))",
            Mode::Dbsll,
        ),
        ("(cod 0 (ax a))", "(cod 0)", Mode::Dbsll),
        ("(wi {3} a (one))", "(wi {3} a)", Mode::Idill),
        ("(cowi {3} a)", "(cowi {3} a (one))", Mode::Idill),
        (
            "(prom 0 {2} (wi {3} a^ (cowi {1} a)))",
            "(prom 1 {2} (ax a))",
            Mode::DbsllProm,
        ),
        ("(ex (1 0) (ax a))", "(ex (0 0) (ax a))", Mode::Dbsll),
        ("(uw a (one))", "(uw a)", Mode::Dill),
        (
            "(uc 1 2 (uw a (uw a (one))))",
            "(uc 0 1 (uw a (one)))",
            Mode::Dill,
        ),
        ("(ucow a)", "(ucow a (one))", Mode::Dill),
        (
            "(ucoc 0 0 (ucow a) (ucow a))",
            "(ucoc 0 0 (ucow a) (ucow b))",
            Mode::Dill,
        ),
    ];
    let mut seen = std::collections::HashSet::new();
    for (good, bad, mode) in cases {
        let t = accepts(good, mode);
        seen.insert(t.tag());
        match parse_proof::<Nat>(bad) {
            Err(_) => {}
            Ok(raw) => assert!(
                !rejects(bad, mode).is_empty() || raw.build().is_err(),
                "{bad}"
            ),
        }
    }
    assert_eq!(seen.len(), RuleTag::ALL.len());
}

#[test]
fn prom_needs_prom_mode_and_graded_context() {
    assert_eq!(
        rejects("(prom 0 {2} (wi {3} a^ (cowi {1} a)))", Mode::Dbsll),
        vec![DiagKind::ModeForbidsRule]
    );
    assert_eq!(
        rejects("(prom 1 {2} (ax a))", Mode::DbsllProm),
        vec![DiagKind::WrongPrincipalFormula]
    );
    let t = accepts("(prom 0 {2} (wi {3} a^ (cowi {1} a)))", Mode::DbsllProm);
    assert_eq!(concl(&t), "|- (!{2} (!{1} a)), (?{6} a^)");
}

#[test]
fn idill_restrictions() {
    assert_eq!(
        rejects("(d 1 (ax a))", Mode::Idill),
        vec![DiagKind::ModeForbidsRule, DiagKind::ModeForbidsRule]
    );
    assert!(!rejects("(cowi {1} (!{2} a))", Mode::Idill).is_empty());
    accepts("(cowi {1} (!{2} a))", Mode::Dbsll);
    accepts("(w a (one))", Mode::Idill);
}

#[test]
fn diagnostics_carry_paths() {
    let errs = parse_proof::<Nat>("(cut 1 0 (ax a) (c 0 1 (w a (one))))")
        .unwrap()
        .build()
        .unwrap_err();
    assert_eq!(errs[0].path.to_string(), "/1");
    assert_eq!(errs[0].kind, DiagKind::WrongPrincipalFormula);
    assert_eq!(NodePath::parse("/1/0"), Some(NodePath(vec![1, 0])));
    assert_eq!(NodePath::parse("/"), Some(NodePath::root()));
}

#[test]
fn print_parse_round_trip() {
    for src in [
        "(cut 1 0 (ax a) (ax a))",
        "(c 1 2 (wi {1} a (wi {2} a (one))))",
        "(ex (2 0 1) (top a (!{2} b)))",
        "(prom 0 {2} (wi {3} a^ (cowi {1} a)))",
        "(di 1 {5} (wi {3} a (one)))",
    ] {
        let t = parse_proof::<Nat>(src).unwrap().build().unwrap();
        let printed = print_proof(&t);
        let back = parse_proof::<Nat>(&printed).unwrap().build().unwrap();
        assert_eq!(t, back);
        assert_eq!(printed, print_proof(&back));
    }
}

#[test]
fn derived_weakenings() {
    let t = derive_cowi(Nat(3), Formula::atom("a"), Mode::Dbsll).unwrap();
    assert_eq!(t.tag(), RuleTag::CoDI);
    assert!(matches!(
        t.rule(),
        Rule::CoDI {
            witness: Nat(3),
            ..
        }
    ));
    assert_eq!(t.premises()[0].tag(), RuleTag::CoW);
    assert_eq!(concl(&t), "|- (!{3} a)");

    let t = derive_wi(one(), Nat(0), Formula::atom("a"), Mode::Dbsll).unwrap();
    assert_eq!(t.tag(), RuleTag::W);

    let t = derive_cowi(Nat(3), Formula::atom("a"), Mode::Idill).unwrap();
    assert_eq!((t.tag(), t.size()), (RuleTag::CoWI, 1));
}

#[test]
fn translation() {
    let t = accepts("(cut 1 0 (wi {2} a (one)) (cowi {2} a^))", Mode::Idill);
    let u = translate(&t, Mode::Idill, Mode::Dbsll).unwrap();
    assert!(!u.contains(RuleTag::WI) && u.contains(RuleTag::DI) && u.contains(RuleTag::CoDI));
    assert_eq!(u.conclusion(), t.conclusion());
    let back = translate(&u, Mode::Dbsll, Mode::Idill).unwrap();
    assert_eq!(back.conclusion(), t.conclusion());

    let mall = accepts("(tensor 1 1 (ax a) (ax b))", Mode::Dbsll);
    assert_eq!(translate(&mall, Mode::Dbsll, Mode::Idill).unwrap(), mall);

    let d = accepts("(d 1 (ax a))", Mode::Dbsll);
    let e = translate(&d, Mode::Dbsll, Mode::Idill).unwrap_err();
    assert_eq!(e[0].kind, DiagKind::ModeForbidsRule);
}

#[test]
fn exchange_merges_and_elides() {
    let t = accepts("(ax a)", Mode::Dbsll);
    let e = build::ex(vec![1, 0], t.clone()).unwrap();
    assert_eq!(e.tag(), RuleTag::Ex);
    let back = build::ex(vec![1, 0], e).unwrap();
    assert!(Arc::ptr_eq(&back, &t));
}
