//! Evaluation of exponential-fragment proofs over operator grades.
//!
//! Every `?_D a` position of a conclusion is fed a Dirac generator
//! `δ_x ∘ D`; the proof returns the tensor of distributions it produces on
//! its `!_D a` positions, in order.

use std::collections::BTreeMap;

use super::dist::{Distribution, FunRep, Point, TensorDist};
use super::op::FactoredOp;
use super::poly::Poly;
use super::LpdoError;
use crate::proofs::{check, Mode, ProofTree, Rule};
use crate::syntax::Formula;

type Gen = (Point, FactoredOp);

/// Polarity and grade of a position in the supported fragment.
fn slot(f: &Formula<FactoredOp>) -> Option<(bool, &FactoredOp)> {
    match f {
        Formula::WhyNotG(g, a) if matches!(**a, Formula::Atom { .. }) => Some((false, g)),
        Formula::OfCourseG(g, a) if matches!(**a, Formula::Atom { .. }) => Some((true, g)),
        _ => None,
    }
}

/// The backend's constraints: the proof checks in IDiLL and every formula
/// of every sequent is `?_D a` or `!_D a` over an atom.
pub fn check_fragment(tree: &ProofTree<FactoredOp>) -> Result<(), LpdoError> {
    check(tree, Mode::Idill).map_err(|ds| {
        LpdoError::Backend(
            ds.first()
                .map(|d| d.to_string())
                .unwrap_or_else(|| "check failed".into()),
        )
    })?;
    for (path, node) in tree.nodes() {
        for f in node.conclusion().iter() {
            if slot(f).is_none() {
                return Err(LpdoError::Backend(format!(
                    "at {path}: `{}` is outside the graded exponential fragment",
                    f.render(true)
                )));
            }
        }
    }
    Ok(())
}

/// Positions of `?` formulas in a conclusion.
pub fn input_positions(tree: &ProofTree<FactoredOp>) -> Vec<usize> {
    tree.conclusion()
        .iter()
        .enumerate()
        .filter(|(_, f)| matches!(slot(f), Some((false, _))))
        .map(|(i, _)| i)
        .collect()
}

fn grade_at(tree: &ProofTree<FactoredOp>, i: usize) -> FactoredOp {
    slot(&tree.conclusion()[i])
        .expect("fragment checked")
        .1
        .clone()
}

/// Evaluates with `points[k]` placed at the `k`-th `?` position.
pub fn eval_proof(tree: &ProofTree<FactoredOp>, points: &[Point]) -> Result<TensorDist, LpdoError> {
    check_fragment(tree)?;
    let inputs = input_positions(tree);
    if inputs.len() != points.len() {
        return Err(LpdoError::Backend(format!(
            "{} test points for {} inputs",
            points.len(),
            inputs.len()
        )));
    }
    let mut tests = vec![None; tree.conclusion().len()];
    for (i, p) in inputs.iter().zip(points) {
        tests[*i] = Some((p.clone(), grade_at(tree, *i)));
    }
    ev(tree, &tests)
}

fn is_input(tree: &ProofTree<FactoredOp>, i: usize) -> bool {
    matches!(slot(&tree.conclusion()[i]), Some((false, _)))
}

/// Index of position `i` among the `!` positions of `tree`.
fn output_index(tree: &ProofTree<FactoredOp>, i: usize) -> usize {
    (0..i).filter(|j| !is_input(tree, *j)).count()
}

fn output_count(tree: &ProofTree<FactoredOp>) -> usize {
    (0..tree.conclusion().len())
        .filter(|j| !is_input(tree, *j))
        .count()
}

fn need(t: &Option<Gen>) -> Result<&Gen, LpdoError> {
    t.as_ref()
        .ok_or_else(|| LpdoError::StratumMismatch("missing test at an input position".into()))
}

fn ev(tree: &ProofTree<FactoredOp>, tests: &[Option<Gen>]) -> Result<TensorDist, LpdoError> {
    let prem = tree.premises();
    match tree.rule() {
        Rule::Ax { .. } => {
            let (i, o) = if is_input(tree, 0) { (0, 1) } else { (1, 0) };
            debug_assert!(!is_input(tree, o));
            let (p, d) = need(&tests[i])?;
            Ok(TensorDist::generator(p.clone(), d.clone()))
        }
        Rule::W { .. } | Rule::WI { .. } => {
            let n = prem[0].conclusion().len();
            let (p, e) = need(&tests[n])?;
            let w = FunRep::new(grade_at(tree, n), Poly::one());
            let k = Distribution::dirac(p.clone(), e.clone()).pair(&w)?;
            Ok(ev(&prem[0], &tests[..n])?.scale(&k))
        }
        Rule::CoW { .. } | Rule::CoWI { .. } => {
            Ok(TensorDist::generator(Point::origin(), grade_at(tree, 0)))
        }
        Rule::C { left, right } => {
            let (l, r) = (*left, *right);
            let (d1, d2) = (grade_at(&prem[0], l), grade_at(&prem[0], r));
            let new_pos = l - usize::from(r < l);
            let (p, e) = need(&tests[new_pos])?;
            if *e != d1.compose(&d2) {
                return Err(LpdoError::StratumMismatch(format!(
                    "generator over {e} at a contraction into {d1} and {d2}"
                )));
            }
            ev(
                &prem[0],
                &remap_c(tests, prem[0].conclusion().len(), l, r, p, &d1, &d2),
            )
        }
        Rule::DI { index, witness, .. } => {
            let (p, e) = need(&tests[*index])?;
            let d1 = e.divide(witness).ok_or_else(|| {
                LpdoError::StratumMismatch(format!("generator over {e} not divisible by {witness}"))
            })?;
            let mut sub = tests.to_vec();
            sub[*index] = Some((p.clone(), d1));
            ev(&prem[0], &sub)
        }
        Rule::CoDI { index, witness, .. } => {
            let k = output_index(&prem[0], *index);
            Ok(ev(&prem[0], tests)?.map_keys(|key| {
                let mut key = key.to_vec();
                key[k].1 = key[k].1.compose(witness);
                key
            }))
        }
        Rule::CoC { left, right } => {
            let (l, r) = (*left, *right);
            let n0 = prem[0].conclusion().len();
            let t0 = tests[..n0].to_vec();
            let mut t1 = tests[n0..].to_vec();
            t1.insert(r, None);
            let a = ev(&prem[0], &t0)?;
            let b = ev(&prem[1], &t1)?;
            let (kl, kr) = (output_index(&prem[0], l), output_index(&prem[1], r));
            let na = output_count(&prem[0]);
            Ok(a.tensor(&b).map_keys(|key| {
                let mut out: Vec<Gen> = key[..na].to_vec();
                let (pb, db) = &key[na + kr];
                out[kl] = (out[kl].0.add(pb), out[kl].1.compose(db));
                out.extend(
                    key[na..]
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != kr)
                        .map(|(_, g)| g.clone()),
                );
                out
            }))
        }
        Rule::Cut { left, right } => {
            let (l, r) = (*left, *right);
            let n0 = prem[0].conclusion().len();
            let mut t0 = tests[..n0 - 1].to_vec();
            t0.insert(l, None);
            let mut t1 = tests[n0 - 1..].to_vec();
            t1.insert(r, None);
            // the side carrying `!` produces the generators fed to the other
            let (src, src_t, src_pos, dst, mut dst_t, dst_pos, src_first) = if is_input(&prem[0], l)
            {
                (&prem[1], t1, r, &prem[0], t0, l, false)
            } else {
                (&prem[0], t0, l, &prem[1], t1, r, true)
            };
            let produced = ev(src, &src_t)?;
            let k = output_index(src, src_pos);
            let mut cache: BTreeMap<Gen, TensorDist> = BTreeMap::new();
            let mut out = TensorDist::default();
            for (key, c) in produced.terms() {
                let g = key[k].clone();
                if !cache.contains_key(&g) {
                    dst_t[dst_pos] = Some(g.clone());
                    cache.insert(g.clone(), ev(dst, &dst_t)?);
                }
                let rest: Vec<Gen> = key
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, x)| x.clone())
                    .collect();
                let mut here = TensorDist::default();
                here.push(c.clone(), rest);
                let other = &cache[&g];
                here = if src_first {
                    here.tensor(other)
                } else {
                    other.tensor(&here)
                };
                out.add(&here);
            }
            Ok(out)
        }
        Rule::Ex { perm } => {
            let mut sub = vec![None; tests.len()];
            for (i, p) in perm.iter().enumerate() {
                sub[*p] = tests[i].clone();
            }
            let out = ev(&prem[0], &sub)?;
            let order: Vec<usize> = perm
                .iter()
                .filter(|p| !is_input(&prem[0], **p))
                .map(|p| output_index(&prem[0], *p))
                .collect();
            Ok(out.map_keys(|key| order.iter().map(|k| key[*k].clone()).collect()))
        }
        other => Err(LpdoError::Backend(format!(
            "rule {} is not interpreted by this backend",
            other.tag().name()
        ))),
    }
}

fn remap_c(
    tests: &[Option<Gen>],
    n: usize,
    l: usize,
    r: usize,
    p: &Point,
    d1: &FactoredOp,
    d2: &FactoredOp,
) -> Vec<Option<Gen>> {
    // conclusion = premise with position l replaced and r removed
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    for j in 0..n {
        if j == r {
            out.push(Some((p.clone(), d2.clone())));
            continue;
        }
        if j == l {
            out.push(Some((p.clone(), d1.clone())));
        } else {
            out.push(tests[k].clone());
        }
        k += 1;
    }
    out
}

/// One row of an evaluation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub points: Vec<Point>,
    pub value: TensorDist,
}

/// Evaluates on every assignment of `grid` points to the inputs, stopping
/// after `limit` rows.
pub fn eval_table(
    tree: &ProofTree<FactoredOp>,
    grid: &[Point],
    limit: usize,
) -> Result<Vec<Row>, LpdoError> {
    check_fragment(tree)?;
    let k = input_positions(tree).len();
    let mut rows = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        if rows.len() >= limit {
            break;
        }
        let points: Vec<Point> = idx.iter().map(|i| grid[*i].clone()).collect();
        let value = eval_proof(tree, &points)?;
        rows.push(Row { points, value });
        // odometer
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(rows);
            }
            idx[pos] += 1;
            if idx[pos] < grid.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if grid.is_empty() {
            break;
        }
    }
    Ok(rows)
}

/// `{-1,0,1,2}^n`.
pub fn standard_grid(n: usize) -> Vec<Point> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|c| {
                [-1i64, 0, 1, 2]
                    .into_iter()
                    .map(move |v| [c.as_slice(), &[v]].concat())
            })
            .collect();
    }
    out.iter().map(|c| Point::from_ints(c)).collect()
}

/// Compares two proofs with the same conclusion on every grid assignment.
pub fn same_denotation(
    a: &ProofTree<FactoredOp>,
    b: &ProofTree<FactoredOp>,
    grid: &[Point],
    limit: usize,
) -> Result<Option<Vec<Point>>, LpdoError> {
    let ra = eval_table(a, grid, limit)?;
    let rb = eval_table(b, grid, limit)?;
    for (x, y) in ra.iter().zip(&rb) {
        if !x.value.equivalent(&y.value) {
            return Ok(Some(x.points.clone()));
        }
    }
    Ok(None)
}
