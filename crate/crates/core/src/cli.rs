//! Command-line front end.
//!
//! A proof document is a header of `key: value` lines followed by one proof
//! term:
//!
//! ```text
//! mode: DBSLL
//! monoid: nat
//! assignment: base.cfg
//! (cut 1 0 (ax a) (ax a))
//! ```
//!
//! `mode` is one of `DBSLL`, `IDiLL`, `DBSLL+promotion`, `DiLL` (default
//! `DBSLL`); `monoid` is `nat` or `lpdo(n)` (default `nat`); `assignment`
//! names a base-assignment file, relative to the document. Lines starting
//! with `;` are comments.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | parse error (document, grade literal, assignment, usage) |
//! | 2 | check error |
//! | 3 | step budget exhausted |
//! | 4 | backend or rewrite constraint violated |
//! | 5 | invariance or law failure |

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::grading::{Grade, GradeError, Nat};
use crate::lpdo::{self, FactoredOp, LpdoError};
use crate::proofs::{check, parse_proof, print_proof, Diagnostic, Mode, Proof, ProofTree};
use crate::relmodel::{self, BaseAssignment, RelConfig, RelError};
use crate::rewrite::{normalize, Config, RewriteError, Strategy};
use crate::sexpr::ParseError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_CHECK: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_BACKEND: i32 = 4;
pub const EXIT_INVARIANCE: i32 = 5;

/// Assignment used when a relational command gets none.
pub const DEFAULT_ASSIGNMENT: &str = "a = x y\nb = u v\nc = p q";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monoid {
    Nat,
    Lpdo(usize),
}

impl Monoid {
    pub fn parse(s: &str) -> Option<Monoid> {
        let s = s.trim().to_ascii_lowercase();
        if s == "nat" || s == "n" {
            return Some(Monoid::Nat);
        }
        let n = s.strip_prefix("lpdo(")?.strip_suffix(')')?;
        n.trim().parse().ok().map(Monoid::Lpdo)
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monoid::Nat => f.write_str("nat"),
            Monoid::Lpdo(n) => write!(f, "lpdo({n})"),
        }
    }
}

pub fn mode_header_name(m: Mode) -> &'static str {
    match m {
        Mode::Dbsll => "DBSLL",
        Mode::Idill => "IDiLL",
        Mode::DbsllProm => "DBSLL+promotion",
        Mode::Dill => "DiLL",
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofDocument {
    pub mode: Mode,
    pub monoid: Monoid,
    pub assignment: Option<String>,
    /// Proof term source, unparsed.
    pub body: String,
    /// Line of the body within the original text, for error positions.
    pub body_line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeaderError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for HeaderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "header line {}: {}", self.line, self.message)
    }
}

impl ProofDocument {
    pub fn parse(text: &str) -> Result<ProofDocument, HeaderError> {
        let mut doc = ProofDocument {
            mode: Mode::Dbsll,
            monoid: Monoid::Nat,
            assignment: None,
            body: String::new(),
            body_line: 1,
        };
        let mut offset = 0;
        for (i, line) in text.split_inclusive('\n').enumerate() {
            let t = line.trim();
            if t.starts_with('(') {
                doc.body = text[offset..].to_string();
                doc.body_line = i + 1;
                return Ok(doc);
            }
            offset += line.len();
            if t.is_empty() || t.starts_with(';') {
                continue;
            }
            let bad = |m: String| HeaderError {
                line: i + 1,
                message: m,
            };
            let (k, v) = t
                .split_once(':')
                .ok_or_else(|| bad(format!("expected `key: value`, found `{t}`")))?;
            let v = v.trim();
            match k.trim().to_ascii_lowercase().as_str() {
                "mode" => {
                    doc.mode =
                        Mode::from_name(v).ok_or_else(|| bad(format!("unknown mode `{v}`")))?
                }
                "monoid" => {
                    doc.monoid =
                        Monoid::parse(v).ok_or_else(|| bad(format!("unknown monoid `{v}`")))?
                }
                "assignment" => doc.assignment = Some(v.to_string()),
                other => return Err(bad(format!("unknown header key `{other}`"))),
            }
        }
        Err(HeaderError {
            line: text.lines().count().max(1),
            message: "document has no proof term".into(),
        })
    }

    /// Header lines, each newline-terminated.
    pub fn header(&self) -> String {
        let mut s = format!(
            "mode: {}\nmonoid: {}\n",
            mode_header_name(self.mode),
            self.monoid
        );
        if let Some(a) = &self.assignment {
            s.push_str(&format!("assignment: {a}\n"));
        }
        s
    }

    /// The document with `proof` as its body.
    pub fn render<G: Grade>(&self, proof: &ProofTree<G>) -> String {
        format!("{}{}\n", self.header(), print_proof(proof))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Rel,
    Lpdo,
}

#[derive(Debug, Parser)]
#[command(
    name = "gdll",
    version,
    about = "Graded differential linear logic proof tool"
)]
pub struct Cli {
    /// Override the document's mode.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Override the document's grade monoid: nat or lpdo(n).
    #[arg(long, global = true)]
    pub monoid: Option<String>,
    /// Print connectives in ASCII.
    #[arg(long, global = true)]
    pub ascii: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and check a proof document; prints its conclusion.
    Check { file: PathBuf },
    /// Eliminate cuts and indexed (co)derelictions; prints the normal form.
    Normalize {
        file: PathBuf,
        /// Append the rewrite log as comment lines.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        enable_promotion: bool,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Pick redexes pseudo-randomly with this seed instead of leftmost.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the denotation of a proof.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Backend::Rel)]
        backend: Backend,
        #[arg(long)]
        assignment: Option<PathBuf>,
        /// Maximum number of table rows for the lpdo backend.
        #[arg(long, default_value_t = 64)]
        limit: usize,
    },
    /// Compare the denotations of a proof and of its normal form.
    Invariance {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Backend::Rel)]
        backend: Backend,
        #[arg(long)]
        assignment: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 4096)]
        limit: usize,
    },
    /// Check the relational model laws by enumeration.
    Laws {
        #[arg(long)]
        assignment: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        size_bound: usize,
        #[arg(long, default_value_t = 3)]
        grade_bound: u64,
    },
    /// Additive splitting certificate for x1 + x2 = x3 + x4.
    Split {
        x1: String,
        x2: String,
        x3: String,
        x4: String,
    },
}

/// Outcome of a command: exit code plus whatever goes to stderr.
struct Fail(i32, String);

type Res = Result<String, Fail>;

fn parse_fail(file: &Path, e: &ParseError, body_line: usize) -> Fail {
    let line = e.pos.line + body_line - 1;
    Fail(
        EXIT_PARSE,
        format!(
            "{}:{}:{}: {}; expected one of: {}",
            file.display(),
            line,
            e.pos.col,
            e.message,
            e.expected.join(", ")
        ),
    )
}

fn diag_fail(ds: &[Diagnostic]) -> Fail {
    Fail(EXIT_CHECK, ds.iter().map(|d| format!("{d}\n")).collect())
}

fn rewrite_fail(e: RewriteError) -> Fail {
    match e {
        RewriteError::CheckFailed(ds) => diag_fail(&ds),
        RewriteError::StepBudgetExceeded(_) => Fail(EXIT_BUDGET, e.to_string()),
        _ => Fail(EXIT_BACKEND, e.to_string()),
    }
}

fn rel_fail(e: RelError) -> Fail {
    match e {
        RelError::CheckFailed(ds) => diag_fail(&ds),
        RelError::BadAssignment { .. } => Fail(EXIT_PARSE, e.to_string()),
        _ => Fail(EXIT_BACKEND, e.to_string()),
    }
}

fn lpdo_fail(e: LpdoError) -> Fail {
    Fail(EXIT_BACKEND, e.to_string())
}

struct Loaded {
    file: PathBuf,
    text: String,
    doc: ProofDocument,
}

fn load(cli: &Cli, file: &Path) -> Result<Loaded, Fail> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Fail(EXIT_PARSE, format!("{}: {e}", file.display())))?;
    let mut doc = ProofDocument::parse(&text)
        .map_err(|e| Fail(EXIT_PARSE, format!("{}: {e}", file.display())))?;
    if let Some(m) = &cli.mode {
        doc.mode =
            Mode::from_name(m).ok_or_else(|| Fail(EXIT_PARSE, format!("unknown mode `{m}`")))?;
    }
    if let Some(m) = &cli.monoid {
        doc.monoid =
            Monoid::parse(m).ok_or_else(|| Fail(EXIT_PARSE, format!("unknown monoid `{m}`")))?;
    }
    Ok(Loaded {
        file: file.to_path_buf(),
        text,
        doc,
    })
}

/// Parses, builds and checks the body in the document's mode.
fn checked<G: Grade>(
    l: &Loaded,
    grade_ok: impl Fn(&G) -> Result<(), String>,
) -> Result<Proof<G>, Fail> {
    let raw =
        parse_proof::<G>(&l.doc.body).map_err(|e| parse_fail(&l.file, &e, l.doc.body_line))?;
    let tree = raw.build().map_err(|ds| diag_fail(&ds))?;
    check(&tree, l.doc.mode).map_err(|ds| diag_fail(&ds))?;
    let mut bad = String::new();
    for (path, node) in tree.nodes() {
        for f in node.conclusion().iter() {
            for g in f.grades() {
                if let Err(m) = grade_ok(g) {
                    bad.push_str(&format!("{path} [{}] GradeMismatch: {m}\n", node.tag()));
                }
            }
        }
    }
    if !bad.is_empty() {
        return Err(Fail(EXIT_CHECK, bad));
    }
    Ok(tree)
}

fn checked_nat(l: &Loaded) -> Result<Proof<Nat>, Fail> {
    checked(l, |_| Ok(()))
}

fn checked_lpdo(l: &Loaded, n: usize) -> Result<Proof<FactoredOp>, Fail> {
    checked(l, |g: &FactoredOp| {
        if g.nvars() > n {
            Err(format!("grade {g} uses more than {n} variables"))
        } else {
            Ok(())
        }
    })
}

fn assignment(cli_path: &Option<PathBuf>, l: Option<&Loaded>) -> Result<BaseAssignment, Fail> {
    let path = match (
        cli_path,
        l.and_then(|l| l.doc.assignment.as_ref().map(|a| (l, a))),
    ) {
        (Some(p), _) => Some(p.clone()),
        (None, Some((l, a))) => Some(l.file.parent().unwrap_or(Path::new(".")).join(a)),
        (None, None) => None,
    };
    let text = match path {
        Some(p) => std::fs::read_to_string(&p)
            .map_err(|e| Fail(EXIT_PARSE, format!("{}: {e}", p.display())))?,
        None => DEFAULT_ASSIGNMENT.to_string(),
    };
    relmodel::parse_assignment(&text).map_err(rel_fail)
}

fn rewrite_config(mode: Mode, budget: usize, seed: Option<u64>, promotion: bool) -> Config {
    let mut cfg = Config::new(mode);
    cfg.budget = budget;
    cfg.promotion = promotion;
    if let Some(s) = seed {
        cfg.strategy = Strategy::Random(s);
    }
    cfg
}

fn cmd_check(cli: &Cli, file: &Path) -> Res {
    let l = load(cli, file)?;
    let concl = match l.doc.monoid {
        Monoid::Nat => checked_nat(&l)?.conclusion().render(cli.ascii),
        Monoid::Lpdo(n) => checked_lpdo(&l, n)?.conclusion().render(cli.ascii),
    };
    Ok(format!("{concl}\n"))
}

fn normalize_doc<G: Grade>(l: &Loaded, tree: &Proof<G>, cfg: &Config, trace: bool) -> Res {
    let (nf, tr) = normalize(tree, cfg).map_err(rewrite_fail)?;
    let mut out = if tr.is_empty() {
        l.text.clone()
    } else {
        l.doc.render(&nf)
    };
    if trace {
        for line in tr.to_string().lines() {
            out.push_str(&format!("; {line}\n"));
        }
    }
    Ok(out)
}

fn cmd_normalize(
    cli: &Cli,
    file: &Path,
    trace: bool,
    promotion: bool,
    budget: usize,
    seed: Option<u64>,
) -> Res {
    let l = load(cli, file)?;
    let cfg = rewrite_config(l.doc.mode, budget, seed, promotion);
    match l.doc.monoid {
        Monoid::Nat => normalize_doc(&l, &checked_nat(&l)?, &cfg, trace),
        Monoid::Lpdo(n) => normalize_doc(&l, &checked_lpdo(&l, n)?, &cfg, trace),
    }
}

fn need_nat(l: &Loaded) -> Result<(), Fail> {
    match l.doc.monoid {
        Monoid::Nat => Ok(()),
        m => Err(Fail(
            EXIT_BACKEND,
            format!("backend constraint: the relational model needs nat grades, not {m}"),
        )),
    }
}

fn need_lpdo(l: &Loaded) -> Result<usize, Fail> {
    match l.doc.monoid {
        Monoid::Lpdo(n) => Ok(n),
        m => Err(Fail(
            EXIT_BACKEND,
            format!("backend constraint: the operator model needs lpdo grades, not {m}"),
        )),
    }
}

fn render_table(rows: &[lpdo::eval::Row]) -> String {
    let mut out = String::new();
    for r in rows {
        let pts: Vec<String> = r.points.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("[{}] {}\n", pts.join(" "), r.value));
    }
    out
}

fn cmd_eval(cli: &Cli, file: &Path, backend: Backend, asg: &Option<PathBuf>, limit: usize) -> Res {
    let l = load(cli, file)?;
    match backend {
        Backend::Rel => {
            need_nat(&l)?;
            let tree = checked_nat(&l)?;
            let ba = assignment(asg, Some(&l))?;
            Ok(relmodel::interp_proof(&tree, &ba, &RelConfig::default())
                .map_err(rel_fail)?
                .to_string())
        }
        Backend::Lpdo => {
            let n = need_lpdo(&l)?;
            let tree = checked_lpdo(&l, n)?;
            let rows = lpdo::eval::eval_table(&tree, &lpdo::eval::standard_grid(n), limit)
                .map_err(lpdo_fail)?;
            Ok(render_table(&rows))
        }
    }
}

fn cmd_invariance(
    cli: &Cli,
    file: &Path,
    backend: Backend,
    asg: &Option<PathBuf>,
    budget: usize,
    seed: Option<u64>,
    limit: usize,
) -> Res {
    let l = load(cli, file)?;
    let cfg = rewrite_config(l.doc.mode, budget, seed, false);
    match backend {
        Backend::Rel => {
            need_nat(&l)?;
            let tree = checked_nat(&l)?;
            let ba = assignment(asg, Some(&l))?;
            let rc = RelConfig::default();
            let before = relmodel::interp_proof(&tree, &ba, &rc).map_err(rel_fail)?;
            let (nf, _) = normalize(&tree, &cfg).map_err(rewrite_fail)?;
            let after = relmodel::interp_proof(&nf, &ba, &rc).map_err(rel_fail)?;
            if before == after {
                return Ok(format!("PASS {} tuples\n", before.len()));
            }
            let mut msg = String::from("FAIL\n");
            for t in before.tuples.difference(&after.tuples) {
                msg.push_str(&format!("- {}\n", show_tuple(t)));
            }
            for t in after.tuples.difference(&before.tuples) {
                msg.push_str(&format!("+ {}\n", show_tuple(t)));
            }
            Err(Fail(EXIT_INVARIANCE, msg))
        }
        Backend::Lpdo => {
            let n = need_lpdo(&l)?;
            let tree = checked_lpdo(&l, n)?;
            lpdo::eval::check_fragment(&tree).map_err(lpdo_fail)?;
            let (nf, _) = normalize(&tree, &cfg).map_err(rewrite_fail)?;
            let grid = lpdo::eval::standard_grid(n);
            match lpdo::eval::same_denotation(&tree, &nf, &grid, limit).map_err(lpdo_fail)? {
                None => Ok("PASS\n".to_string()),
                Some(pts) => {
                    let pts: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
                    Err(Fail(
                        EXIT_INVARIANCE,
                        format!("FAIL at [{}]\n", pts.join(" ")),
                    ))
                }
            }
        }
    }
}

fn show_tuple(t: &[relmodel::Value]) -> String {
    let cells: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    format!("({})", cells.join(" ; "))
}

fn cmd_laws(asg: &Option<PathBuf>, size_bound: usize, grade_bound: u64) -> Res {
    let ba = assignment(asg, None)?;
    let report = relmodel::check_model_laws(&ba, size_bound, grade_bound).map_err(rel_fail)?;
    if report.all_passed() {
        Ok(report.to_string())
    } else {
        Err(Fail(EXIT_INVARIANCE, report.to_string()))
    }
}

fn split_with<G: Grade>(xs: [&str; 4]) -> Res {
    let g = |s: &str| G::parse_literal(s).map_err(|e| Fail(EXIT_PARSE, e.to_string()));
    let (x1, x2, x3, x4) = (g(xs[0])?, g(xs[1])?, g(xs[2])?, g(xs[3])?);
    let c = G::additive_split(&x1, &x2, &x3, &x4).map_err(|e| match e {
        GradeError::PreconditionViolated(_) => Fail(EXIT_CHECK, e.to_string()),
        GradeError::BadLiteral { .. } => Fail(EXIT_PARSE, e.to_string()),
        _ => Fail(EXIT_BACKEND, e.to_string()),
    })?;
    Ok(format!(
        "x13 = {}\nx14 = {}\nx23 = {}\nx24 = {}\n",
        c.x13, c.x14, c.x23, c.x24
    ))
}

fn cmd_split(cli: &Cli, xs: [&str; 4]) -> Res {
    let monoid = match &cli.monoid {
        Some(m) => {
            Monoid::parse(m).ok_or_else(|| Fail(EXIT_PARSE, format!("unknown monoid `{m}`")))?
        }
        None => Monoid::Nat,
    };
    match monoid {
        Monoid::Nat => split_with::<Nat>(xs),
        Monoid::Lpdo(_) => split_with::<FactoredOp>(xs),
    }
}

fn dispatch(cli: &Cli) -> Res {
    match &cli.command {
        Command::Check { file } => cmd_check(cli, file),
        Command::Normalize {
            file,
            trace,
            enable_promotion,
            budget,
            seed,
        } => cmd_normalize(cli, file, *trace, *enable_promotion, *budget, *seed),
        Command::Eval {
            file,
            backend,
            assignment,
            limit,
        } => cmd_eval(cli, file, *backend, assignment, *limit),
        Command::Invariance {
            file,
            backend,
            assignment,
            budget,
            seed,
            limit,
        } => cmd_invariance(cli, file, *backend, assignment, *budget, *seed, *limit),
        Command::Laws {
            assignment,
            size_bound,
            grade_bound,
        } => cmd_laws(assignment, *size_bound, *grade_bound),
        Command::Split { x1, x2, x3, x4 } => cmd_split(cli, [x1, x2, x3, x4]),
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            EXIT_OK
        }
        Err(Fail(code, msg)) => {
            // Invariance and law reports are results, so they go to stdout.
            if code == EXIT_INVARIANCE {
                let _ = out.write_all(msg.as_bytes());
            } else {
                let _ = err.write_all(msg.as_bytes());
                if !msg.ends_with('\n') {
                    let _ = err.write_all(b"\n");
                }
            }
            code
        }
    }
}
