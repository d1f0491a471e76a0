//! Isomorphism of general problems up to renaming labels.

use std::collections::BTreeSet;

use super::{Config, GeneralProblem, ReError};
use crate::limits::Limits;

/// Pairs `(label of the first problem, label of the second)`.
pub type LabelBijection = Vec<(String, String)>;

/// Per label: how many configurations contain it with each multiplicity, per side.
fn signature(g: &GeneralProblem, label: usize) -> (Vec<usize>, Vec<usize>) {
    let count = |configs: &BTreeSet<Config>, deg: usize| {
        let mut hist = vec![0usize; deg + 1];
        for c in configs {
            hist[c.iter().filter(|&&x| x == label).count()] += 1;
        }
        hist
    };
    (count(&g.white, g.d), count(&g.black, g.delta))
}

fn mapped(configs: &BTreeSet<Config>, perm: &[usize]) -> BTreeSet<Config> {
    configs
        .iter()
        .map(|c| {
            let mut m: Config = c.iter().map(|&x| perm[x]).collect();
            m.sort_unstable();
            m
        })
        .collect()
}

/// Searches for a label bijection carrying `a` onto `b`.
pub fn is_isomorphic(
    a: &GeneralProblem,
    b: &GeneralProblem,
    limits: &Limits,
) -> Result<Option<LabelBijection>, ReError> {
    let k = a.alphabet.len();
    if k.max(b.alphabet.len()) > limits.max_iso_alphabet {
        return Err(ReError::AlphabetTooLarge {
            size: k.max(b.alphabet.len()),
            cap: limits.max_iso_alphabet,
        });
    }
    if k != b.alphabet.len()
        || a.d != b.d
        || a.delta != b.delta
        || a.white.len() != b.white.len()
        || a.black.len() != b.black.len()
    {
        return Ok(None);
    }
    let sa: Vec<_> = (0..k).map(|i| signature(a, i)).collect();
    let sb: Vec<_> = (0..k).map(|i| signature(b, i)).collect();
    let mut perm = vec![usize::MAX; k];
    let mut used = vec![false; k];
    if search(a, b, &sa, &sb, 0, &mut perm, &mut used) {
        Ok(Some(
            (0..k)
                .map(|i| (a.alphabet[i].clone(), b.alphabet[perm[i]].clone()))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

type Sig = (Vec<usize>, Vec<usize>);

fn search(
    a: &GeneralProblem,
    b: &GeneralProblem,
    sa: &[Sig],
    sb: &[Sig],
    i: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if i == perm.len() {
        return mapped(&a.white, perm) == b.white && mapped(&a.black, perm) == b.black;
    }
    for j in 0..perm.len() {
        if used[j] || sa[i] != sb[j] {
            continue;
        }
        perm[i] = j;
        used[j] = true;
        if search(a, b, sa, sb, i + 1, perm, used) {
            return true;
        }
        used[j] = false;
    }
    perm[i] = usize::MAX;
    false
}
