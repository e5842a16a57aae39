use std::sync::Arc;

use super::*;
use crate::grading::Nat;
use crate::proofs::{parse_proof, print_proof};

fn tree(src: &str) -> Proof<Nat> {
    parse_proof::<Nat>(src)
        .unwrap()
        .build()
        .unwrap_or_else(|e| panic!("{src}: {e:?}"))
}

fn cfg() -> Config {
    Config::default()
}

fn one_step(src: &str) -> (Proof<Nat>, &'static str) {
    let t = tree(src);
    let phase = if src.starts_with("(cut") {
        Phase::Cuts
    } else {
        Phase::Purge
    };
    rewrite_step(&t, phase, &NodePath::root(), &cfg()).unwrap()
}

fn shape(t: &Proof<Nat>) -> String {
    print_proof(t)
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

#[test]
fn dereliction_merges_into_weakening() {
    let (t, name) = one_step("(di 1 {5} (wi {2} a (one)))");
    assert_eq!(name, "di-weakening");
    assert_eq!(shape(&t), "(wi {5} a (one))");
}

#[test]
fn dereliction_after_contraction() {
    let (t, name) = one_step("(di 1 {6} (c 1 2 (wi {1} a (wi {2} a (one)))))");
    assert_eq!(name, "di-contraction");
    assert_eq!(
        shape(&t),
        "(c 1 2 (wi {3} a (c 1 2 (wi {1} a (wi {2} a (one))))))"
    );
}

#[test]
fn dereliction_at_axiom() {
    let (t, _) = one_step("(di 0 {3} (ax (!{1} a)))");
    assert_eq!(shape(&t), "(c 0 2 (wi {2} a^ (ax (!{1} a))))");
    let (t, _) = one_step("(codi 1 {3} (ax (!{1} a)))");
    assert_eq!(shape(&t), "(coc 1 0 (ax (!{1} a)) (cowi {2} a))");
}

#[test]
fn codereliction_cases() {
    let (t, _) = one_step("(codi 0 {4} (cowi {1} a))");
    assert_eq!(shape(&t), "(cowi {4} a)");
    let (t, _) = one_step("(codi 0 {4} (coc 0 0 (cowi {1} a) (cowi {1} a)))");
    assert_eq!(
        shape(&t),
        "(coc 0 0 (coc 0 0 (cowi {1} a) (cowi {1} a)) (cowi {2} a))"
    );
}

#[test]
fn dereliction_commutes_and_duplicates_over_with() {
    let (t, name) = one_step("(di 2 {3} (tensor 1 0 (wi {1} a (ax b)) (one)))");
    assert_eq!(name, "di-commute");
    assert_eq!(shape(&t), "(tensor 1 0 (di 2 {3} (wi {1} a (ax b))) (one))");
    let src = "(di 1 {3} (with 0 0 (wi {1} a (one)) (wi {1} a (one))))";
    let t = tree(src);
    let (out, trace) = push_derelictions(&t, &cfg()).unwrap();
    assert_eq!(out.count(RuleTag::DI), 0);
    assert_eq!(out.conclusion(), t.conclusion());
    assert_eq!(shape(&out), "(with 0 0 (wi {3} a (one)) (wi {3} a (one)))");
    assert!(trace.entries[0].after.count > trace.entries[0].before.count);
}

#[test]
fn dereliction_vanishes_into_top() {
    let (t, name) = one_step("(di 0 {2} (top (?{1} a)))");
    assert_eq!((shape(&t).as_str(), name), ("(top (?{2} a))", "di-top"));
}

#[test]
fn purge_fixpoint_on_clean_input() {
    let t = tree("(cut 1 0 (ax a) (ax a))");
    let (out, trace) = push_derelictions(&t, &cfg()).unwrap();
    assert!(Arc::ptr_eq(&out, &t));
    assert!(trace.is_empty());
}

#[test]
fn cut_weakening_coweakening() {
    let (t, name) = one_step("(cut 1 0 (wi {2} a (one)) (cowi {2} a^))");
    assert_eq!(
        (shape(&t).as_str(), name),
        ("(one)", "cut-weakening-coweakening")
    );
}

#[test]
fn cut_dereliction_codereliction() {
    let (t, _) = one_step("(cut 1 0 (d 1 (ax a)) (cod 0 (ax a)))");
    assert_eq!(shape(&t), "(cut 1 0 (ax a) (ax a))");
}

#[test]
fn cut_contraction_coweakening() {
    let (t, _) = one_step("(cut 1 0 (c 1 2 (wi {1} a (wi {2} a (one)))) (cowi {3} a^))");
    assert_eq!(
        shape(&t),
        "(cut 1 0 (cut 1 0 (wi {1} a (wi {2} a (one))) (cowi {2} a^)) (cowi {1} a^))"
    );
}

#[test]
fn cut_cocontraction_weakening() {
    let (t, _) = one_step("(cut 0 1 (coc 0 0 (cowi {1} a) (cowi {2} a)) (wi {3} a^ (one)))");
    assert_eq!(
        shape(&t),
        "(cut 0 1 (cowi {2} a) (wi {2} a^ (cut 0 1 (cowi {1} a) (wi {1} a^ (one)))))"
    );
}

#[test]
fn cut_contraction_cocontraction_uses_the_split() {
    let src = "(cut 0 0 (c 0 1 (wi {2} a^ (wi {1} a^ (one)))) (coc 0 0 (cowi {3} a) (cowi {0} a)))";
    let t = tree(&src.replace(
        "(wi {2} a^ (wi {1} a^ (one)))",
        "(ex (1 2 0) (wi {2} a^ (wi {1} a^ (one))))",
    ));
    let (first, name) = rewrite_step(&t, Phase::Cuts, &NodePath::root(), &cfg()).unwrap();
    assert_eq!(name, "cut-contraction-cocontraction");
    let axioms: Vec<String> = first
        .nodes()
        .iter()
        .filter(|(_, n)| n.tag() == RuleTag::Ax)
        .map(|(_, n)| n.conclusion().render(true))
        .collect();
    // x1 = 1, x2 = 2, x3 = 3, x4 = 0 splits as (1, 0, 2, 0).
    assert_eq!(
        axioms,
        vec![
            "|- (?{2} a^), (!{2} a)",
            "|- (?{0} a^), (!{0} a)",
            "|- (?{1} a^), (!{1} a)",
            "|- (?{0} a^), (!{0} a)",
        ]
    );
    let c = Nat::additive_split(&Nat(1), &Nat(2), &Nat(3), &Nat(0)).unwrap();
    assert!(c.verify(&Nat(1), &Nat(2), &Nat(3), &Nat(0)));
    let (nf, _) = normalize(&t, &cfg()).unwrap();
    assert!(nf.is_cut_free());
    assert_eq!(nf.conclusion(), t.conclusion());
}

#[test]
fn multiplicative_and_additive_key_cases() {
    let (t, name) =
        one_step("(cut 1 0 (tensor 1 1 (ax a) (ax b)) (par 0 2 (tensor 1 1 (ax a) (ax b))))");
    assert_eq!(name, "cut-tensor-par");
    assert_eq!(t.count(RuleTag::Cut), 2);
    let (t, _) = one_step("(cut 0 2 (one) (bot (ax a)))");
    assert_eq!(shape(&t), "(ax a)");
    let (t, name) = one_step("(cut 1 0 (with 1 1 (ax a) (ax a)) (plus1 0 a^ (ax a)))");
    assert_eq!(name, "cut-with-plus");
    assert_eq!(shape(&t), "(cut 1 0 (ax a) (ax a))");
}

#[test]
fn commutation_keeps_order() {
    let t = tree("(cut 0 1 (tensor 1 1 (ax a) (ax b)) (bot (ax a)))");
    let (nf, trace) = normalize(&t, &cfg()).unwrap();
    assert!(nf.is_cut_free());
    assert!(nf.conclusion().ordered_eq(t.conclusion()));
    assert!(!trace.is_empty());
}

#[test]
fn with_duplication_during_cut_commutation() {
    let t = tree("(cut 0 1 (with 1 1 (ax a) (tensor 1 0 (ax a) (one))) (ax a))");
    let (nf, _) = normalize(&t, &cfg()).unwrap();
    assert!(nf.is_cut_free());
    assert!(nf.conclusion().ordered_eq(t.conclusion()));
}

#[test]
fn replay_reproduces_the_normal_form() {
    let src = "(cut 1 0 (c 1 2 (di 1 {2} (wi {1} a^ (wi {1} a^ (one))))) (coc 0 0 (cowi {1} a) (codi 0 {2} (cowi {1} a))))";
    let t = tree(src);
    let (nf, trace) = normalize(&t, &cfg()).unwrap();
    let again = replay(&t, &trace, &cfg()).unwrap();
    assert_eq!(again, nf);
    assert!(trace.to_string().lines().count() == trace.len());
}

#[test]
fn budget_is_enforced() {
    let t = tree("(cut 1 0 (ax a) (ax a))");
    let c = Config { budget: 0, ..cfg() };
    assert_eq!(
        normalize(&t, &c).unwrap_err(),
        RewriteError::StepBudgetExceeded(0)
    );
}

#[test]
fn forget_erases_grades() {
    let t = tree("(cowi {3} a)");
    let u = forget(&t).unwrap();
    assert_eq!(shape(&u), "(ucow a)");
    let t = tree("(c 1 2 (w a (wi {2} a (one))))");
    assert_eq!(shape(&forget(&t).unwrap()), "(uc 1 2 (uw a (uw a (one))))");
    let t = tree("(tensor 1 1 (ax a) (ax b))");
    assert_eq!(forget(&t).unwrap(), t);
    let t = tree("(di 1 {3} (wi {2} a (one)))");
    assert!(matches!(
        forget(&t),
        Err(RewriteError::ContainsIndexedDereliction { .. })
    ));
}

#[test]
fn alpha_equality_ignores_exchange() {
    let t = tree("(ax a)");
    let e = crate::proofs::ex(vec![1, 0], t.clone()).unwrap();
    assert!(alpha_eq(&t, &e));
    assert!(!alpha_eq(&t, &tree("(ax b)")));
}
