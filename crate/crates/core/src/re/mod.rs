//! Round elimination on general problems given by allowed label multisets.

mod expr;
mod fdso;
mod iso;
mod output;

pub use expr::expand;
pub use fdso::{make_fdso, reduce_solution_to_fdso, FdsoSource};
pub use iso::{is_isomorphic, LabelBijection};
pub use output::{black_output, set_name, white_output};

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::limits::Limits;
use crate::problem::BinaryProblem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReError {
    #[error("alphabet has {size} labels, over the cap of {cap}")]
    AlphabetTooLarge { size: usize, cap: usize },
    #[error("degree {degree} is over the cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("unknown label '{0}'")]
    UnknownLabel(String),
    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),
    #[error("configuration has {got} labels, expected {expected}")]
    ConfigSize { got: usize, expected: usize },
    #[error("malformed expression: {0}")]
    Expression(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("malformed problem document: {0}")]
    Syntax(String),
    #[error("source solution is invalid at {0} nodes")]
    InvalidSource(usize),
}

/// A configuration is a multiset of labels, stored as sorted label indices.
pub type Config = Vec<usize>;

/// Labels on edges; a white node of degree `d` needs its incident labels to
/// form a multiset in `white`, a black node of degree `delta` one in `black`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralProblem {
    pub alphabet: Vec<String>,
    pub d: usize,
    pub delta: usize,
    pub white: BTreeSet<Config>,
    pub black: BTreeSet<Config>,
}

impl GeneralProblem {
    pub fn new(
        alphabet: Vec<String>,
        d: usize,
        delta: usize,
        white: BTreeSet<Config>,
        black: BTreeSet<Config>,
    ) -> Result<Self, ReError> {
        let mut seen = BTreeSet::new();
        for l in &alphabet {
            if !seen.insert(l) {
                return Err(ReError::DuplicateLabel(l.clone()));
            }
        }
        for (configs, deg) in [(&white, d), (&black, delta)] {
            for c in configs {
                if c.len() != deg {
                    return Err(ReError::ConfigSize {
                        got: c.len(),
                        expected: deg,
                    });
                }
                if c.iter().any(|&i| i >= alphabet.len()) || c.windows(2).any(|w| w[0] > w[1]) {
                    return Err(ReError::BadParameters("configuration out of range or unsorted".into()));
                }
            }
        }
        Ok(GeneralProblem {
            alphabet,
            d,
            delta,
            white,
            black,
        })
    }

    /// Builds a problem from configurations given by label names.
    pub fn from_names(
        alphabet: &[&str],
        d: usize,
        delta: usize,
        white: &[&[&str]],
        black: &[&[&str]],
    ) -> Result<Self, ReError> {
        let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, usize> = alphabet.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let conv = |cs: &[&[&str]]| -> Result<BTreeSet<Config>, ReError> {
            cs.iter()
                .map(|c| {
                    let mut v: Config = c
                        .iter()
                        .map(|n| index.get(n).copied().ok_or_else(|| ReError::UnknownLabel(n.to_string())))
                        .collect::<Result<_, _>>()?;
                    v.sort_unstable();
                    Ok(v)
                })
                .collect()
        };
        let (w, b) = (conv(white)?, conv(black)?);
        Self::new(alphabet, d, delta, w, b)
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == name)
    }

    pub fn names(&self, config: &[usize]) -> Vec<String> {
        config.iter().map(|&i| self.alphabet[i].clone()).collect()
    }

    /// Binary problem over labels `0` and `1`; the X-degree is the count of `1`.
    pub fn from_binary(p: &BinaryProblem) -> GeneralProblem {
        let side = |deg: usize, allowed: &crate::problem::Constraint| -> BTreeSet<Config> {
            (0..=deg)
                .filter(|&k| allowed.allows(k))
                .map(|k| {
                    let mut c = vec![0; deg - k];
                    c.extend(std::iter::repeat(1).take(k));
                    c
                })
                .collect()
        };
        GeneralProblem {
            alphabet: vec!["0".into(), "1".into()],
            d: p.d,
            delta: p.delta,
            white: side(p.d, &p.white),
            black: side(p.delta, &p.black),
        }
    }

    /// Exchanges the roles of the two colors.
    pub fn swapped(&self) -> GeneralProblem {
        GeneralProblem {
            alphabet: self.alphabet.clone(),
            d: self.delta,
            delta: self.d,
            white: self.black.clone(),
            black: self.white.clone(),
        }
    }

    pub fn check_caps(&self, limits: &Limits) -> Result<(), ReError> {
        if self.alphabet.len() > limits.max_alphabet {
            return Err(ReError::AlphabetTooLarge {
                size: self.alphabet.len(),
                cap: limits.max_alphabet,
            });
        }
        for degree in [self.d, self.delta] {
            if degree > limits.max_re_degree {
                return Err(ReError::DegreeTooLarge {
                    degree,
                    cap: limits.max_re_degree,
                });
            }
        }
        Ok(())
    }

    pub fn to_document(&self) -> GeneralDocument {
        let side = |cs: &BTreeSet<Config>| cs.iter().map(|c| self.names(c)).collect();
        GeneralDocument {
            alphabet: self.alphabet.clone(),
            d: self.d,
            delta: self.delta,
            white: side(&self.white),
            black: side(&self.black),
            white_expr: None,
            black_expr: None,
        }
    }

    pub fn from_document(doc: &GeneralDocument) -> Result<Self, ReError> {
        let index: HashMap<&str, usize> = doc
            .alphabet
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let conv = |cs: &[Vec<String>]| -> Result<BTreeSet<Config>, ReError> {
            cs.iter()
                .map(|c| {
                    let mut v: Config = c
                        .iter()
                        .map(|n| index.get(n.as_str()).copied().ok_or_else(|| ReError::UnknownLabel(n.clone())))
                        .collect::<Result<_, _>>()?;
                    v.sort_unstable();
                    Ok(v)
                })
                .collect()
        };
        let mut white = conv(&doc.white)?;
        let mut black = conv(&doc.black)?;
        if let Some(e) = &doc.white_expr {
            white.extend(expand(e, &doc.alphabet, doc.d)?);
        }
        if let Some(e) = &doc.black_expr {
            black.extend(expand(e, &doc.alphabet, doc.delta)?);
        }
        Self::new(doc.alphabet.clone(), doc.d, doc.delta, white, black)
    }

    pub fn from_json(text: &str) -> Result<Self, ReError> {
        let doc: GeneralDocument = serde_json::from_str(text).map_err(|e| ReError::Syntax(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// On-disk form. Expressions such as `"A X^2; H H X"` add configurations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralDocument {
    pub alphabet: Vec<String>,
    pub d: usize,
    pub delta: usize,
    #[serde(default)]
    pub white: Vec<Vec<String>>,
    #[serde(default)]
    pub black: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub white_expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub black_expr: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointReport {
    pub is_fixed_point: bool,
    /// Number of black/white output pairs after which the isomorphism was found.
    pub pairs_needed: Option<usize>,
    pub bijection: Option<LabelBijection>,
    /// Problems after each half step, in order.
    pub intermediates: Vec<GeneralProblem>,
}

/// Applies up to `pairs` rounds of black then white output and reports
/// whether the result is isomorphic to the input.
pub fn is_fixed_point(g: &GeneralProblem, pairs: usize, limits: &Limits) -> Result<FixedPointReport, ReError> {
    let mut intermediates = Vec::new();
    let mut cur = g.clone();
    for k in 1..=pairs {
        let half = black_output(&cur, limits)?;
        let next = white_output(&half, limits)?;
        intermediates.push(half);
        intermediates.push(next.clone());
        if let Some(bijection) = is_isomorphic(&next, g, limits)? {
            return Ok(FixedPointReport {
                is_fixed_point: true,
                pairs_needed: Some(k),
                bijection: Some(bijection),
                intermediates,
            });
        }
        cur = next;
    }
    Ok(FixedPointReport {
        is_fixed_point: false,
        pairs_needed: None,
        bijection: None,
        intermediates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_embedding() {
        let p = BinaryProblem::parse("d=3,delta=2,W=1110,B=010").unwrap();
        let g = GeneralProblem::from_binary(&p);
        assert_eq!(g.white.len(), 3);
        assert!(g.white.contains(&vec![0, 0, 0]));
        assert!(!g.white.contains(&vec![1, 1, 1]));
        assert_eq!(g.black, BTreeSet::from([vec![0, 1]]));
    }

    #[test]
    fn document_round_trip_with_expressions() {
        let text = r#"{"alphabet":["A","X"],"d":3,"delta":2,"white_expr":"A X^2","black":[["X","X"]],"black_expr":"A X"}"#;
        let g = GeneralProblem::from_json(text).unwrap();
        assert_eq!(g.white, BTreeSet::from([vec![0, 1, 1]]));
        assert_eq!(g.black.len(), 2);
        let back = serde_json::to_string(&g.to_document()).unwrap();
        assert_eq!(GeneralProblem::from_json(&back).unwrap(), g);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            GeneralProblem::from_json(r#"{"alphabet":["A","A"],"d":2,"delta":2}"#),
            Err(ReError::DuplicateLabel(_))
        ));
        assert!(matches!(
            GeneralProblem::from_json(r#"{"alphabet":["A"],"d":2,"delta":2,"white":[["A"]]}"#),
            Err(ReError::ConfigSize { .. })
        ));
        assert!(matches!(
            GeneralProblem::from_json(r#"{"alphabet":["A"],"d":1,"delta":1,"white":[["B"]]}"#),
            Err(ReError::UnknownLabel(_))
        ));
    }
}
