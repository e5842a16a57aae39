mod common;

use common::*;
use gdll::cli::ProofDocument;
use gdll::grading::Nat;
use gdll::proofs::{parse_proof, print_proof};

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let failures: Vec<String> = cases()
        .iter()
        .filter_map(|c| run_case(c, update).err())
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn cut_free_input_is_echoed_byte_for_byte() {
    for p in fixtures("fig1") {
        let text = std::fs::read_to_string(&p).unwrap();
        let o = run_bin(&["normalize".into(), p.to_string_lossy().into_owned()]);
        if !text.contains("(di ") && !text.contains("(codi ") {
            assert_eq!(o.stdout, text, "{}", p.display());
        }
    }
}

#[test]
fn normal_forms_recheck_cut_free() {
    for p in fixtures("fig2") {
        let o = run_bin(&["normalize".into(), p.to_string_lossy().into_owned()]);
        assert_eq!(o.code, 0);
        let doc = ProofDocument::parse(&o.stdout).unwrap();
        let t = parse_proof::<Nat>(&doc.body).unwrap().build().unwrap();
        assert!(t.is_cut_free(), "{}", p.display());
        assert_eq!(print_proof(&t), doc.body.trim_end());
    }
}

#[test]
fn trace_lines_are_comments() {
    let o = run_bin(&[
        "normalize".into(),
        "--trace".into(),
        "tests/fixtures/cli/cc.proof".into(),
    ]);
    let traces: Vec<&str> = o.stdout.lines().filter(|l| l.starts_with("; ")).collect();
    assert!(!traces.is_empty());
    for (i, l) in traces.iter().enumerate() {
        let f: Vec<&str> = l[2..].split(' ').collect();
        assert_eq!(f[0], i.to_string());
        assert!(f[2].starts_with('/'));
    }
    ProofDocument::parse(&o.stdout).unwrap();
}
