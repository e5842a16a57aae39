//! Occurrence bookkeeping across a local rewrite.
//!
//! A rewrite returns a subtree whose conclusion equals the old one as a
//! multiset. To keep ancestors valid we wrap the new subtree in an exchange
//! that reproduces the old order. Occurrences are matched by provenance:
//! each one is traced upwards until it enters a subproof shared between the
//! old and the new tree, and occurrences with the same entry point are paired.
//! Whatever is left (formulas introduced by the rewritten rules) is paired by
//! formula.

use std::collections::HashSet;

use super::RewriteError;
use crate::grading::Grade;
use crate::proofs::{ex, Proof, ProofTree, Src};

type Key = Option<(usize, usize)>;

fn addr<G>(t: &ProofTree<G>) -> usize {
    t as *const ProofTree<G> as usize
}

fn collect<G: Grade>(t: &ProofTree<G>, out: &mut HashSet<usize>) {
    if out.insert(addr(t)) {
        for p in t.premises() {
            collect(p, out);
        }
    }
}

fn trace<G: Grade>(mut t: &ProofTree<G>, mut pos: usize, shared: &HashSet<usize>) -> Key {
    loop {
        if shared.contains(&addr(t)) {
            return Some((addr(t), pos));
        }
        match t.sources()[pos] {
            Src::Prem(p, i) => {
                t = &t.premises()[p];
                pos = i;
            }
            Src::New(_) => return None,
        }
    }
}

/// Returns `new`, permuted so that its conclusion is exactly `old`'s.
pub fn restore_order<G: Grade>(old: &Proof<G>, new: Proof<G>) -> Result<Proof<G>, RewriteError> {
    let perm = permutation(old, &new)?;
    ex(perm, new).map_err(|d| RewriteError::Internal(format!("exchange failed: {d}")))
}

/// `perm[i]` is the position in `new` of the occurrence at position `i` in `old`.
pub fn permutation<G: Grade>(old: &Proof<G>, new: &Proof<G>) -> Result<Vec<usize>, RewriteError> {
    let (mut a, mut b) = (HashSet::new(), HashSet::new());
    collect(old, &mut a);
    collect(new, &mut b);
    let shared: HashSet<usize> = a.intersection(&b).copied().collect();
    let n = old.conclusion().len();
    if new.conclusion().len() != n {
        return Err(RewriteError::Internal(
            "rewrite changed the number of occurrences".into(),
        ));
    }
    let ko: Vec<Key> = (0..n).map(|i| trace(old, i, &shared)).collect();
    let kn: Vec<Key> = (0..n).map(|i| trace(new, i, &shared)).collect();
    let fo = &old.conclusion().0;
    let fnew = &new.conclusion().0;
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for i in 0..n {
        if ko[i].is_none() {
            continue;
        }
        if let Some(j) = (0..n).find(|&j| !used[j] && kn[j] == ko[i] && fnew[j] == fo[i]) {
            perm[i] = j;
            used[j] = true;
        }
    }
    // Prefer fresh occurrences for fresh occurrences before falling back.
    for pass in 0..2 {
        for i in 0..n {
            if perm[i] != usize::MAX {
                continue;
            }
            let found =
                (0..n).find(|&j| !used[j] && fnew[j] == fo[i] && (pass == 1 || kn[j].is_none()));
            if let Some(j) = found {
                perm[i] = j;
                used[j] = true;
            }
        }
    }
    if perm.contains(&usize::MAX) {
        return Err(RewriteError::Internal(format!(
            "rewrite changed the conclusion: {} became {}",
            old.conclusion(),
            new.conclusion()
        )));
    }
    Ok(perm)
}
