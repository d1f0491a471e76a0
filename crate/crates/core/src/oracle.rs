//! Independent checkers: labeling verification and brute-force search.

use serde::Serialize;
use thiserror::Error;

use crate::labeling::{EdgeLabeling, LabelingError};
use crate::problem::BinaryProblem;
use crate::re::GeneralProblem;
use crate::tree::{complete_biregular, Color, ColoredTree, TreeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("tree has {edges} edges, over the brute-force cap of {cap}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error("label '{0}' is not in the alphabet")]
    UnknownLabel(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Observed {
    XDegree(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub node: u64,
    pub color: Color,
    pub observed: Observed,
    pub expected: String,
}

/// Lists every constrained node whose X-degree is not allowed.
pub fn verify_labeling(
    tree: &ColoredTree,
    p: &BinaryProblem,
    x: &EdgeLabeling,
) -> Result<Vec<Violation>, OracleError> {
    x.check_size(tree)?;
    let mut out = Vec::new();
    for v in 0..tree.node_count() {
        let color = tree.color(v);
        if tree.degree(v) != p.degree(color) {
            continue;
        }
        let k = x.x_degree(tree, v);
        let c = p.constraint(color);
        if !c.allows(k) {
            out.push(Violation {
                node: tree.id(v),
                color,
                observed: Observed::XDegree(k),
                expected: c.to_string(),
            });
        }
    }
    Ok(out)
}

/// Lists every constrained node whose multiset of incident labels is not allowed.
/// `labels[e]` is the label of edge `e` in the tree's edge order.
pub fn verify_general<S: AsRef<str>>(
    tree: &ColoredTree,
    g: &GeneralProblem,
    labels: &[S],
) -> Result<Vec<Violation>, OracleError> {
    if labels.len() != tree.edge_count() {
        return Err(LabelingError::SizeMismatch {
            got: labels.len(),
            expected: tree.edge_count(),
        }
        .into());
    }
    let idx: Vec<usize> = labels
        .iter()
        .map(|l| {
            g.label_index(l.as_ref())
                .ok_or_else(|| OracleError::UnknownLabel(l.as_ref().to_string()))
        })
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for v in 0..tree.node_count() {
        let color = tree.color(v);
        let (deg, configs) = match color {
            Color::White => (g.d, &g.white),
            Color::Black => (g.delta, &g.black),
        };
        if tree.degree(v) != deg {
            continue;
        }
        let mut config: Vec<usize> = tree.ports(v).iter().map(|&e| idx[e]).collect();
        config.sort_unstable();
        if !configs.contains(&config) {
            out.push(Violation {
                node: tree.id(v),
                color,
                observed: Observed::Labels(config.iter().map(|&i| g.alphabet[i].clone()).collect()),
                expected: format!("one of {} {} configurations", configs.len(), color),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    First,
    Count,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForceOutcome {
    First(Option<EdgeLabeling>),
    Count(u64),
    All(Vec<EdgeLabeling>),
}

impl BruteForceOutcome {
    pub fn is_solvable(&self) -> bool {
        match self {
            BruteForceOutcome::First(x) => x.is_some(),
            BruteForceOutcome::Count(c) => *c > 0,
            BruteForceOutcome::All(v) => !v.is_empty(),
        }
    }
}

/// Enumerates labelings in binary counter order, the first edge (in the
/// `(min id, max id)` order) being the most significant bit.
///
/// Nodes are checked as soon as their last incident edge is assigned, which
/// prunes the search without changing the enumeration order.
pub fn brute_force_solve(
    tree: &ColoredTree,
    p: &BinaryProblem,
    mode: SearchMode,
    max_edges: usize,
) -> Result<BruteForceOutcome, OracleError> {
    let m = tree.edge_count();
    if m > max_edges {
        return Err(OracleError::TooManyEdges {
            edges: m,
            cap: max_edges,
        });
    }
    // Nodes whose last incident edge is `e`.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); m];
    for v in 0..tree.node_count() {
        if let Some(&last) = tree.ports(v).iter().max() {
            if tree.degree(v) == p.degree(tree.color(v)) {
                closing[last].push(v);
            }
        }
    }
    let mut search = Search {
        tree,
        p,
        closing,
        assign: vec![false; m],
        xdeg: vec![0; tree.node_count()],
        mode,
        count: 0,
        found: Vec::new(),
    };
    search.run(0);
    Ok(match mode {
        SearchMode::First => BruteForceOutcome::First(search.found.pop()),
        SearchMode::Count => BruteForceOutcome::Count(search.count),
        SearchMode::All => BruteForceOutcome::All(search.found),
    })
}

struct Search<'a> {
    tree: &'a ColoredTree,
    p: &'a BinaryProblem,
    closing: Vec<Vec<usize>>,
    assign: Vec<bool>,
    xdeg: Vec<usize>,
    mode: SearchMode,
    count: u64,
    found: Vec<EdgeLabeling>,
}

impl Search<'_> {
    /// Returns true when the search should stop.
    fn run(&mut self, e: usize) -> bool {
        if e == self.assign.len() {
            self.count += 1;
            if self.mode != SearchMode::Count {
                self.found.push(EdgeLabeling(self.assign.clone()));
            }
            return self.mode == SearchMode::First;
        }
        let [a, b] = self.tree.endpoints(e);
        for value in [false, true] {
            self.assign[e] = value;
            if value {
                self.xdeg[a] += 1;
                self.xdeg[b] += 1;
            }
            let ok = self.closing[e].iter().all(|&v| {
                self.p
                    .constraint(self.tree.color(v))
                    .allows(self.xdeg[v])
            });
            let stop = ok && self.run(e + 1);
            if value {
                self.xdeg[a] -= 1;
                self.xdeg[b] -= 1;
            }
            if stop {
                return true;
            }
        }
        self.assign[e] = false;
        false
    }
}

/// Radius-2 complete biregular tree with a white center.
pub fn standard_witness(p: &BinaryProblem) -> Result<ColoredTree, OracleError> {
    Ok(complete_biregular(p.d, p.delta, 2, Color::White, None)?)
}

/// The white-centered witness and its black-centered twin.
///
/// Some contradictions live at a constrained white whose black neighbors are
/// all constrained, others at a constrained black whose white neighbors are
/// all constrained; the two radius-2 balls cover both situations.
pub fn witness_pair(p: &BinaryProblem) -> Result<[ColoredTree; 2], OracleError> {
    Ok([
        complete_biregular(p.d, p.delta, 2, Color::White, None)?,
        complete_biregular(p.d, p.delta, 2, Color::Black, None)?,
    ])
}

/// True when the brute-force search finds no solution on some witness ball.
pub fn refuted_on_witnesses(p: &BinaryProblem, max_edges: usize) -> Result<bool, OracleError> {
    for t in witness_pair(p)? {
        if !brute_force_solve(&t, p, SearchMode::First, max_edges)?.is_solvable() {
            return Ok(true);
        }
    }
    Ok(false)
}
