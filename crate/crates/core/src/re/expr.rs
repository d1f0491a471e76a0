//! Shorthand for sets of configurations.
//!
//! Alternatives are separated by `;` or `|`. Each alternative is a sequence of
//! factors: a label, or a bracket group `[A H T X]` meaning any one of its
//! labels, optionally followed by `^k` or `^(k)`. When every label is a single
//! character, names may be written without spaces (`X[AHTX]^2`).

use std::collections::BTreeSet;

use super::{Config, ReError};

pub fn expand(expr: &str, alphabet: &[String], degree: usize) -> Result<BTreeSet<Config>, ReError> {
    let mut out = BTreeSet::new();
    for alt in expr.split([';', '|']) {
        if alt.trim().is_empty() {
            continue;
        }
        let factors = parse_alternative(alt, alphabet)?;
        let total: usize = factors.iter().map(|(_, k)| k).sum();
        if total != degree {
            return Err(ReError::ConfigSize {
                got: total,
                expected: degree,
            });
        }
        let slots: Vec<&Vec<usize>> = factors
            .iter()
            .flat_map(|(group, k)| std::iter::repeat(group).take(*k))
            .collect();
        let mut choice = vec![0usize; slots.len()];
        loop {
            let mut c: Config = slots.iter().zip(&choice).map(|(g, &i)| g[i]).collect();
            c.sort_unstable();
            out.insert(c);
            // Advance the mixed-radix counter.
            let mut pos = slots.len();
            let advanced = loop {
                if pos == 0 {
                    break false;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < slots[pos].len() {
                    break true;
                }
                choice[pos] = 0;
            };
            if !advanced {
                break;
            }
        }
    }
    Ok(out)
}

fn parse_alternative(text: &str, alphabet: &[String]) -> Result<Vec<(Vec<usize>, usize)>, ReError> {
    let compact = alphabet.iter().all(|l| l.chars().count() == 1);
    let chars: Vec<char> = text.chars().collect();
    let mut factors: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '[' {
            let close = chars[i..]
                .iter()
                .position(|&x| x == ']')
                .ok_or_else(|| ReError::Expression(format!("unclosed group in '{text}'")))?
                + i;
            let inner: String = chars[i + 1..close].iter().collect();
            let mut group = Vec::new();
            for word in inner.split_whitespace() {
                group.extend(resolve(word, alphabet, compact)?);
            }
            if group.is_empty() {
                return Err(ReError::Expression("empty group".into()));
            }
            group.sort_unstable();
            group.dedup();
            factors.push((group, 1));
            i = close + 1;
        } else if c == '^' {
            let (k, next) = parse_exponent(&chars, i + 1)?;
            let last = factors
                .last_mut()
                .ok_or_else(|| ReError::Expression("exponent without a base".into()))?;
            last.1 = k;
            i = next;
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && !matches!(chars[i], '[' | ']' | '^') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            for l in resolve(&word, alphabet, compact)? {
                factors.push((vec![l], 1));
            }
        }
    }
    Ok(factors)
}

fn parse_exponent(chars: &[char], mut i: usize) -> Result<(usize, usize), ReError> {
    let paren = chars.get(i) == Some(&'(');
    if paren {
        i += 1;
    }
    let start = i;
    while i < chars.len() && chars[i].is_ascii_digit() {
        i += 1;
    }
    let digits: String = chars[start..i].iter().collect();
    let k = digits
        .parse()
        .map_err(|_| ReError::Expression(format!("bad exponent '{digits}'")))?;
    if paren {
        if chars.get(i) != Some(&')') {
            return Err(ReError::Expression("unclosed exponent".into()));
        }
        i += 1;
    }
    Ok((k, i))
}

fn resolve(word: &str, alphabet: &[String], compact: bool) -> Result<Vec<usize>, ReError> {
    if let Some(i) = alphabet.iter().position(|l| l == word) {
        return Ok(vec![i]);
    }
    if compact {
        return word
            .chars()
            .map(|c| {
                alphabet
                    .iter()
                    .position(|l| l.chars().next() == Some(c))
                    .ok_or_else(|| ReError::UnknownLabel(c.to_string()))
            })
            .collect();
    }
    Err(ReError::UnknownLabel(word.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Vec<String> {
        ["A", "H", "T", "X"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn spaced_and_compact_forms_agree() {
        let a = expand("X [A H T X]^2", &abc(), 3).unwrap();
        let b = expand("X[AHTX]^(2)", &abc(), 3).unwrap();
        assert_eq!(a, b);
        // X with any two labels: 10 multisets.
        assert_eq!(a.len(), 10);
    }

    #[test]
    fn alternatives_and_powers() {
        let s = expand("A X^2; H^2 X | T^3", &abc(), 3).unwrap();
        assert_eq!(s, BTreeSet::from([vec![0, 3, 3], vec![1, 1, 3], vec![2, 2, 2]]));
    }

    #[test]
    fn errors() {
        assert!(matches!(expand("A X", &abc(), 3), Err(ReError::ConfigSize { .. })));
        assert!(matches!(expand("A Q^2", &abc(), 3), Err(ReError::UnknownLabel(_))));
        assert!(expand("[A X^2", &abc(), 3).is_err());
    }

    #[test]
    fn multi_character_names() {
        let alpha: Vec<String> = ["{X}", "{H,X}"].iter().map(|s| s.to_string()).collect();
        let s = expand("{X} [{X} {H,X}]", &alpha, 2).unwrap();
        assert_eq!(s.len(), 2);
    }
}
