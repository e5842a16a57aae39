#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixtures(dir: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(root().join("tests/fixtures").join(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "proof"))
        .collect();
    v.sort();
    v
}

pub fn stem(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

/// A golden CLI invocation: arguments, expected exit code, and the name of
/// the file holding the expected stdout.
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub code: i32,
}

fn case(name: &str, args: &[&str], code: i32) -> Case {
    Case {
        name: name.to_string(),
        args: args.iter().map(|s| s.to_string()).collect(),
        code,
    }
}

pub fn cases() -> Vec<Case> {
    let cli = "tests/fixtures/cli";
    let f = |n: &str| format!("{cli}/{n}");
    let mut v = vec![
        case("check-axiom", &["check", &f("axiom.proof")], 0),
        case(
            "check-axiom-ascii",
            &["--ascii", "check", &f("axiom.proof")],
            0,
        ),
        case("check-cow-context", &["check", &f("cow_context.proof")], 2),
        case("check-malformed", &["check", &f("malformed.proof")], 1),
        case(
            "check-wrong-mode",
            &["check", &f("prom_wrong_mode.proof")],
            2,
        ),
        case(
            "check-mode-override",
            &[
                "--mode",
                "DBSLL+promotion",
                "check",
                &f("prom_wrong_mode.proof"),
            ],
            0,
        ),
        case("check-lpdo", &["check", &f("lpdo_cut.proof")], 0),
        case(
            "check-lpdo-too-many-vars",
            &["--monoid", "lpdo(1)", "check", &f("lpdo_cut.proof")],
            2,
        ),
        case("normalize-cut-free", &["normalize", &f("axiom.proof")], 0),
        case(
            "normalize-trace",
            &["normalize", "--trace", &f("cc.proof")],
            0,
        ),
        case(
            "normalize-seeded",
            &["normalize", "--seed", "7", &f("cc.proof")],
            0,
        ),
        case(
            "normalize-budget",
            &["normalize", "--budget", "1", &f("cc.proof")],
            3,
        ),
        case(
            "normalize-promotion-off",
            &["normalize", &f("prom.proof")],
            4,
        ),
        case(
            "normalize-promotion-on",
            &["normalize", "--enable-promotion", &f("prom.proof")],
            0,
        ),
        case("normalize-lpdo", &["normalize", &f("lpdo_cut.proof")], 0),
        case(
            "normalize-check-error",
            &["normalize", &f("cow_context.proof")],
            2,
        ),
        case("eval-axiom", &["eval", &f("axiom.proof")], 0),
        case("eval-cc", &["eval", &f("cc.proof")], 0),
        case(
            "eval-lpdo",
            &["eval", "--backend", "lpdo", &f("lpdo_cut.proof")],
            0,
        ),
        case(
            "eval-lpdo-dereliction",
            &["eval", "--backend", "lpdo", &f("lpdo_d.proof")],
            4,
        ),
        case("eval-rel-on-lpdo", &["eval", &f("lpdo_cut.proof")], 4),
        case(
            "eval-lpdo-on-nat",
            &["eval", "--backend", "lpdo", &f("axiom.proof")],
            4,
        ),
        case("invariance-cc", &["invariance", &f("cc.proof")], 0),
        case(
            "invariance-lpdo",
            &["invariance", "--backend", "lpdo", &f("lpdo_cut.proof")],
            0,
        ),
        case(
            "invariance-split-loss",
            &[
                "invariance",
                "tests/fixtures/fig2/cut-contraction-cocontraction.proof",
            ],
            5,
        ),
        case("laws", &["laws", "--grade-bound", "2"], 0),
        case("split-nat", &["split", "3", "5", "4", "4"], 0),
        case("split-nat-precondition", &["split", "3", "5", "4", "3"], 2),
        case(
            "split-nat-bad-literal",
            &["split", "three", "5", "4", "4"],
            1,
        ),
        case(
            "split-lpdo",
            &[
                "--monoid",
                "lpdo(2)",
                "split",
                "(X1)*(X2)",
                "X1+1",
                "X1",
                "(X2)*(X1+1)",
            ],
            0,
        ),
        case("usage-error", &["frobnicate"], 1),
        case(
            "missing-file",
            &["check", "tests/fixtures/cli/nope.proof"],
            1,
        ),
    ];
    for p in fixtures("fig1") {
        let rel = format!("tests/fixtures/fig1/{}.proof", stem(&p));
        v.push(case(&format!("fig1-{}", stem(&p)), &["check", &rel], 0));
    }
    for p in fixtures("fig2") {
        let rel = format!("tests/fixtures/fig2/{}.proof", stem(&p));
        v.push(case(&format!("fig2-{}", stem(&p)), &["normalize", &rel], 0));
    }
    v
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_bin(args: &[String]) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_gdll"))
        .args(args)
        .current_dir(root())
        .output()
        .unwrap();
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn golden_path(name: &str) -> PathBuf {
    root()
        .join("tests/fixtures/golden")
        .join(format!("{name}.out"))
}

/// Runs one case; `Err` describes the mismatch. With `update`, rewrites the
/// golden file instead of comparing.
pub fn run_case(c: &Case, update: bool) -> Result<(), String> {
    let o = run_bin(&c.args);
    if o.code != c.code {
        return Err(format!(
            "{}: exit {} (expected {}); stderr: {}",
            c.name,
            o.code,
            c.code,
            o.stderr.trim()
        ));
    }
    if c.code == 0 && !o.stderr.is_empty() {
        return Err(format!(
            "{}: diagnostics on a success path: {}",
            c.name,
            o.stderr.trim()
        ));
    }
    let path = golden_path(&c.name);
    if update {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &o.stdout).unwrap();
        return Ok(());
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want != o.stdout {
        return Err(format!(
            "{}: stdout differs from {}\n--- expected\n{want}--- actual\n{}",
            c.name,
            path.display(),
            o.stdout
        ));
    }
    Ok(())
}
