//! Reference implementations written directly from the definitions. They are
//! slow and share no code with the library beyond its data types.
#![allow(dead_code)]

use std::collections::BTreeSet;

use binary_lcl::re::GeneralProblem;
use binary_lcl::BinaryProblem;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// `pattern` uses `0`, `1` and `x` (either).
fn fits(s: &str, pattern: &str) -> bool {
    s.len() == pattern.len()
        && s.chars()
            .zip(pattern.chars())
            .all(|(a, b)| b == 'x' || a == b)
}

fn rep(c: &str, k: usize) -> String {
    c.repeat(k)
}

/// Family tags whose pattern the problem satisfies, in table order.
pub fn table_matches(p: &BinaryProblem) -> Vec<&'static str> {
    let (d, e) = (p.d, p.delta);
    let w = bit_string(p.white.bits());
    let b = bit_string(p.black.bits());
    let wc: Vec<char> = w.chars().collect();
    let bc: Vec<char> = b.chars().collect();
    let mut out = Vec::new();
    let mut add = |tag, cond: bool| {
        if cond {
            out.push(tag);
        }
    };
    add("I.a", w == format!("1{}", rep("0", d)) && bc[0] == '0');
    add("I.b", w == format!("{}1", rep("0", d)) && bc[e] == '0');
    add("I.c", wc[0] == '0' && b == format!("1{}", rep("0", e)));
    add("I.d", wc[d] == '0' && b == format!("{}1", rep("0", e)));
    add("II.a", !w.contains('1'));
    add("II.b", !b.contains('1'));
    add("III.a", w.contains('1') && !b.contains('0'));
    add("III.b", !w.contains('0') && b.contains('1'));
    add("IV.a", wc[0] == '1' && bc[0] == '1');
    add("IV.b", wc[d] == '1' && bc[e] == '1');
    add("V.a", w == format!("1{}1", rep("0", d - 1)) && b == "010");
    add("V.b", w == "010" && b == format!("1{}1", rep("0", e - 1)));
    add(
        "VI.a",
        fits(&w, &format!("{}1x", rep("0", d - 1))) && fits(&b, &format!("x1{}", rep("0", e - 1))),
    );
    add(
        "VI.b",
        fits(&w, &format!("x1{}", rep("0", d - 1))) && fits(&b, &format!("{}1x", rep("0", e - 1))),
    );
    out
}

/// Complexity class name of a family tag.
pub fn class_of(tag: &str) -> &'static str {
    match tag.split('.').next().unwrap() {
        "I" | "II" => "unsolvable",
        "III" | "IV" => "constant",
        "V" | "VI" => "global",
        _ => "logarithmic",
    }
}

/// Every fixing of the first `fixed` of `degree` ports extends to an allowed
/// X-degree, checked by enumerating labelings port by port.
fn completable(allowed: &[bool], degree: usize, fixed: usize) -> bool {
    (0..1u32 << fixed).all(|prefix| {
        (0..1u32 << (degree - fixed)).any(|rest| {
            let ones = prefix.count_ones() + rest.count_ones();
            allowed[ones as usize]
        })
    })
}

pub fn resilient_by_completion(p: &BinaryProblem, t: usize, s: usize) -> bool {
    completable(p.white.bits(), p.d, t) && completable(p.black.bits(), p.delta, s)
}

/// A general problem with label names instead of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Named {
    pub alphabet: BTreeSet<String>,
    pub white: BTreeSet<Vec<String>>,
    pub black: BTreeSet<Vec<String>>,
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

pub fn named(g: &GeneralProblem) -> Named {
    let conv = |cs: &BTreeSet<Vec<usize>>| {
        cs.iter()
            .map(|c| sorted(c.iter().map(|&i| g.alphabet[i].clone()).collect()))
            .collect()
    };
    Named {
        alphabet: g.alphabet.iter().cloned().collect(),
        white: conv(&g.white),
        black: conv(&g.black),
    }
}

fn multisets(k: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..k {
        for mut tail in multisets(k, len - 1) {
            if tail.first().map_or(true, |&t| t >= first) {
                tail.insert(0, first);
                out.push(tail);
            }
        }
    }
    out
}

fn all_choices(sets: &[&BTreeSet<usize>]) -> Vec<Vec<usize>> {
    let mut acc = vec![vec![]];
    for s in sets {
        let mut next = Vec::new();
        for prefix in &acc {
            for &x in s.iter() {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

fn contains_sorted(configs: &BTreeSet<Vec<usize>>, mut c: Vec<usize>) -> bool {
    c.sort_unstable();
    configs.contains(&c)
}

/// `y` is dominated by `z` when some pairing of positions gives `y_i ⊆ z_π(i)`.
fn dominated(y: &[&BTreeSet<usize>], z: &[&BTreeSet<usize>]) -> bool {
    fn rec(y: &[&BTreeSet<usize>], z: &[&BTreeSet<usize>], i: usize, used: &mut Vec<bool>) -> bool {
        if i == y.len() {
            return true;
        }
        for j in 0..z.len() {
            if !used[j] && y[i].is_subset(z[j]) {
                used[j] = true;
                if rec(y, z, i + 1, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    rec(y, z, 0, &mut vec![false; z.len()])
}

fn set_label(alphabet: &[String], s: &BTreeSet<usize>) -> String {
    let names = sorted(s.iter().map(|&i| alphabet[i].clone()).collect());
    format!("{{{}}}", names.join(","))
}

/// Output problem from the definition: the `forall` side keeps maximal
/// multisets of label sets all of whose choices are allowed; the `exists`
/// side keeps multisets over the surviving sets with some allowed choice.
/// Returns (alphabet, forall configurations, exists configurations).
fn output_by_definition(
    alphabet: &[String],
    forall: &BTreeSet<Vec<usize>>,
    forall_degree: usize,
    exists: &BTreeSet<Vec<usize>>,
    exists_degree: usize,
) -> (BTreeSet<String>, BTreeSet<Vec<String>>, BTreeSet<Vec<String>>) {
    let k = alphabet.len();
    let subsets: Vec<BTreeSet<usize>> = (1..1usize << k)
        .map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let universal: Vec<Vec<&BTreeSet<usize>>> = multisets(subsets.len(), forall_degree)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| &subsets[i]).collect::<Vec<_>>())
        .filter(|sets| {
            all_choices(sets)
                .into_iter()
                .all(|c| contains_sorted(forall, c))
        })
        .collect();
    let maximal: Vec<&Vec<&BTreeSet<usize>>> = universal
        .iter()
        .filter(|y| !universal.iter().any(|z| z != *y && dominated(y, z)))
        .collect();
    let surviving: Vec<&BTreeSet<usize>> = {
        let mut s: Vec<&BTreeSet<usize>> = maximal.iter().flat_map(|y| y.iter().copied()).collect();
        s.sort();
        s.dedup();
        s
    };
    let forall_out = maximal
        .iter()
        .map(|y| sorted(y.iter().map(|s| set_label(alphabet, s)).collect()))
        .collect();
    let exists_out = multisets(surviving.len(), exists_degree)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| surviving[i]).collect::<Vec<_>>())
        .filter(|sets| all_choices(sets).into_iter().any(|c| contains_sorted(exists, c)))
        .map(|sets| sorted(sets.iter().map(|s| set_label(alphabet, s)).collect()))
        .collect();
    let alphabet_out = surviving.iter().map(|s| set_label(alphabet, s)).collect();
    (alphabet_out, forall_out, exists_out)
}

pub fn black_output_by_definition(g: &GeneralProblem) -> Named {
    let (alphabet, black, white) = output_by_definition(&g.alphabet, &g.black, g.delta, &g.white, g.d);
    Named { alphabet, white, black }
}

pub fn white_output_by_definition(g: &GeneralProblem) -> Named {
    let (alphabet, white, black) = output_by_definition(&g.alphabet, &g.white, g.d, &g.black, g.delta);
    Named { alphabet, white, black }
}

/// Random problem over `k` labels: each multiset is allowed with probability 1/2.
pub fn random_general(rng: &mut ChaCha8Rng, k: usize, d: usize, delta: usize) -> GeneralProblem {
    let alphabet: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut pick = |deg| -> BTreeSet<Vec<usize>> {
        multisets(k, deg).into_iter().filter(|_| rng.gen_bool(0.5)).collect()
    };
    let white = pick(d);
    let black = pick(delta);
    GeneralProblem::new(alphabet, d, delta, white, black).unwrap()
}

/// The nine problems of the examples table, with their expected complexity.
pub fn named_examples() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("contradiction", "d=3,delta=2,W=0111,B=100", "unsolvable"),
        ("trivial", "d=4,delta=2,W=00100,B=111", "constant"),
        ("two-coloring", "d=3,delta=2,W=1001,B=010", "global"),
        ("bipartite splitting", "d=4,delta=4,W=01110,B=01110", "logarithmic"),
        ("sinkless orientation", "d=3,delta=2,W=1110,B=010", "logarithmic"),
        ("sinkless and sourceless", "d=3,delta=2,W=0110,B=010", "logarithmic"),
        ("even orientation", "d=3,delta=2,W=1010,B=010", "logarithmic"),
        ("regular matching", "d=3,delta=2,W=0100,B=101", "logarithmic"),
        ("splitting", "d=3,delta=2,W=0110,B=101", "logarithmic"),
    ]
}
