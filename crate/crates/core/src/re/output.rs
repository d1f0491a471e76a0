//! Output problems of a round-elimination step.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Config, GeneralProblem, ReError};
use crate::limits::Limits;

/// Name of the label standing for a set of labels, e.g. `{H,X}`.
pub fn set_name(alphabet: &[String], mask: u64) -> String {
    let mut names: Vec<&str> = (0..alphabet.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| alphabet[i].as_str())
        .collect();
    names.sort_unstable();
    format!("{{{}}}", names.join(","))
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Calls `f` on every non-decreasing sequence of length `len` over `0..k`.
pub(crate) fn for_each_multiset(k: usize, len: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(k: usize, len: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for x in start..k {
            cur.push(x);
            rec(k, len, x, cur, f);
            cur.pop();
        }
    }
    rec(k, len, 0, &mut Vec::with_capacity(len), f);
}

/// Whether every (`all = true`) or some (`all = false`) choice of one label per
/// set gives an allowed configuration.
pub(crate) fn choices_allowed(sets: &[Vec<usize>], allowed: &HashSet<Config>, all: bool) -> bool {
    let mut idx = vec![0usize; sets.len()];
    let mut buf = Vec::with_capacity(sets.len());
    loop {
        buf.clear();
        buf.extend(sets.iter().zip(&idx).map(|(s, &i)| s[i]));
        buf.sort_unstable();
        let ok = allowed.contains(&buf);
        if ok != all {
            return !all;
        }
        let mut pos = sets.len();
        let advanced = loop {
            if pos == 0 {
                break false;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < sets[pos].len() {
                break true;
            }
            idx[pos] = 0;
        };
        if !advanced {
            return all;
        }
    }
}

/// Black side becomes the maximal multisets of label sets all of whose
/// choices are allowed black configurations; white side the multisets of the
/// surviving sets admitting some allowed white choice.
pub fn black_output(g: &GeneralProblem, limits: &Limits) -> Result<GeneralProblem, ReError> {
    g.check_caps(limits)?;
    let k = g.alphabet.len();
    let black: HashSet<Config> = g.black.iter().cloned().collect();
    let masks: Vec<u64> = (1..1u64 << k).collect();
    let sets: Vec<Vec<usize>> = masks.iter().map(|&m| members(m).collect()).collect();

    let mut universal: Vec<Vec<u64>> = Vec::new();
    for_each_multiset(masks.len(), g.delta, &mut |seq| {
        let chosen: Vec<Vec<usize>> = seq.iter().map(|&i| sets[i].clone()).collect();
        if choices_allowed(&chosen, &black, true) {
            universal.push(seq.iter().map(|&i| masks[i]).collect());
        }
    });
    let lookup: HashSet<Vec<u64>> = universal.iter().cloned().collect();
    // The universal family is closed under shrinking sets, so a configuration is
    // maximal exactly when no single label can be added to one of its sets.
    let maximal: Vec<Vec<u64>> = universal
        .into_iter()
        .filter(|y| {
            !(0..y.len()).any(|i| {
                (0..k).any(|a| {
                    if y[i] >> a & 1 == 1 {
                        return false;
                    }
                    let mut z = y.clone();
                    z[i] |= 1 << a;
                    z.sort_unstable();
                    lookup.contains(&z)
                })
            })
        })
        .collect();
    Ok(assemble(g, &maximal))
}

/// Builds the output problem from the maximal black configurations.
pub(crate) fn assemble(g: &GeneralProblem, maximal: &[Vec<u64>]) -> GeneralProblem {
    let used: BTreeSet<u64> = maximal.iter().flatten().copied().collect();
    let mut labels: Vec<(String, u64)> = used.iter().map(|&m| (set_name(&g.alphabet, m), m)).collect();
    labels.sort();
    let index: HashMap<u64, usize> = labels.iter().enumerate().map(|(i, (_, m))| (*m, i)).collect();
    let black: BTreeSet<Config> = maximal
        .iter()
        .map(|y| {
            let mut c: Config = y.iter().map(|m| index[m]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let white_allowed: HashSet<Config> = g.white.iter().cloned().collect();
    let label_sets: Vec<Vec<usize>> = labels.iter().map(|(_, m)| members(*m).collect()).collect();
    let mut white = BTreeSet::new();
    for_each_multiset(labels.len(), g.d, &mut |seq| {
        let chosen: Vec<Vec<usize>> = seq.iter().map(|&i| label_sets[i].clone()).collect();
        if choices_allowed(&chosen, &white_allowed, false) {
            white.insert(seq.to_vec());
        }
    });
    GeneralProblem {
        alphabet: labels.into_iter().map(|(n, _)| n).collect(),
        d: g.d,
        delta: g.delta,
        white,
        black,
    }
}

/// Mirror of [`black_output`] with the colors exchanged.
pub fn white_output(g: &GeneralProblem, limits: &Limits) -> Result<GeneralProblem, ReError> {
    Ok(black_output(&g.swapped(), limits)?.swapped())
}
