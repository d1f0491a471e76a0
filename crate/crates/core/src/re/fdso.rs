//! The forbidden-degree sinkless orientation family and reductions into it.

use super::{expand, GeneralProblem, ReError};
use crate::classify::{forbidden_degree, sinkless_orientation};
use crate::labeling::EdgeLabeling;
use crate::oracle::verify_labeling;
use crate::problem::BinaryProblem;
use crate::tree::{Color, ColoredTree};

pub const FDSO_ALPHABET: [&str; 4] = ["A", "H", "T", "X"];

/// FDSO with parameter `s`: a white node picks an `A` edge, or `s + 1` edges
/// labeled `H`, or `d - s + 1` edges labeled `T`; a black node must see an `X`
/// or both an `H` and a `T`.
pub fn make_fdso(d: usize, delta: usize, s: usize) -> Result<GeneralProblem, ReError> {
    if d < 2 || delta < 2 || s == 0 || s >= d {
        return Err(ReError::BadParameters(format!(
            "need d, delta >= 2 and 0 < s < d (got d={d}, delta={delta}, s={s})"
        )));
    }
    let alphabet: Vec<String> = FDSO_ALPHABET.iter().map(|s| s.to_string()).collect();
    let white = expand(
        &format!(
            "A X^{}; H^{} X^{}; T^{} X^{}",
            d - 1,
            s + 1,
            d - s - 1,
            d - s + 1,
            s - 1
        ),
        &alphabet,
        d,
    )?;
    let black = expand(
        &format!("X [A H T X]^{}; H T [A H T X]^{}", delta - 1, delta - 2),
        &alphabet,
        delta,
    )?;
    GeneralProblem::new(alphabet, d, delta, white, black)
}

/// Binary problems with a direct reduction to FDSO.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdsoSource {
    SinklessOrientation,
    ForbiddenDegree { forbidden: usize },
}

impl FdsoSource {
    pub fn problem(self, d: usize, delta: usize) -> BinaryProblem {
        match self {
            FdsoSource::SinklessOrientation => sinkless_orientation(d, delta),
            FdsoSource::ForbiddenDegree { forbidden } => forbidden_degree(d, delta, forbidden),
        }
    }
}

/// Turns a solution of the source problem into an FDSO(`s`) labeling, one label
/// per edge in the tree's edge order. Only constrained whites use `A`, `H` or
/// `T`; every other edge is `X`.
pub fn reduce_solution_to_fdso(
    tree: &ColoredTree,
    d: usize,
    delta: usize,
    source: FdsoSource,
    s: usize,
    x: &EdgeLabeling,
) -> Result<Vec<String>, ReError> {
    make_fdso(d, delta, s)?;
    if let FdsoSource::ForbiddenDegree { forbidden } = source {
        if forbidden != s {
            return Err(ReError::BadParameters(format!(
                "forbidden degree {forbidden} does not match s={s}"
            )));
        }
    }
    let p = source.problem(d, delta);
    let bad = verify_labeling(tree, &p, x).map_err(|e| ReError::BadParameters(e.to_string()))?;
    if !bad.is_empty() {
        return Err(ReError::InvalidSource(bad.len()));
    }
    let mut out = vec!["X"; tree.edge_count()];
    for v in 0..tree.node_count() {
        if tree.color(v) != Color::White || tree.degree(v) != d {
            continue;
        }
        let ports = tree.ports(v);
        let zeros: Vec<usize> = ports.iter().copied().filter(|&e| !x.get(e)).collect();
        let ones: Vec<usize> = ports.iter().copied().filter(|&e| x.get(e)).collect();
        match source {
            FdsoSource::SinklessOrientation => out[zeros[0]] = "A",
            FdsoSource::ForbiddenDegree { .. } => {
                if ones.len() < s {
                    for &e in zeros.iter().take(d - s + 1) {
                        out[e] = "T";
                    }
                } else {
                    for &e in ones.iter().take(s + 1) {
                        out[e] = "H";
                    }
                }
            }
        }
    }
    Ok(out.into_iter().map(String::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fdso_sizes() {
        let g = make_fdso(3, 3, 1).unwrap();
        assert_eq!(g.white.len(), 3);
        assert!(g.white.contains(&vec![2, 2, 2]));
        assert!(make_fdso(3, 3, 3).is_err());
        assert!(make_fdso(3, 3, 0).is_err());
    }

    #[test]
    fn black_side_needs_x_or_both_h_and_t() {
        let g = make_fdso(3, 2, 1).unwrap();
        let names: Vec<Vec<String>> = g.black.iter().map(|c| g.names(c)).collect();
        assert!(names.contains(&vec!["H".to_string(), "T".to_string()]));
        assert!(!names.contains(&vec!["H".to_string(), "H".to_string()]));
        assert!(names.contains(&vec!["A".to_string(), "X".to_string()]));
        assert!(!names.contains(&vec!["A".to_string(), "A".to_string()]));
    }
}
