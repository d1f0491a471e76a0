//! Rake & compress layer decomposition.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SolveError;
use crate::tree::{Color, ColoredTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Remove nodes of U-degree at most one, and degree-two nodes on a run of
    /// at least `c` consecutive degree-two nodes.
    Standard,
    /// As standard, except white nodes are removed only at U-degree at most one.
    WhiteRestricted,
    /// As standard, except black nodes are removed only at U-degree at most one.
    BlackRestricted,
}

impl Variant {
    /// Whether nodes of this color may leave through the degree-two rule.
    pub fn compresses(self, color: Color) -> bool {
        match self {
            Variant::Standard => true,
            Variant::WhiteRestricted => color == Color::Black,
            Variant::BlackRestricted => color == Color::White,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IterationStats {
    /// Nodes still present at the start of the iteration.
    pub remaining: usize,
    pub removed: usize,
}

/// Layer of every node (1-based, by node index) plus per-iteration statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub layer: Vec<usize>,
    pub num_layers: usize,
    pub c: usize,
    pub variant: Variant,
    pub iterations: Vec<IterationStats>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LayersDocument {
    pub layers: BTreeMap<String, usize>,
    #[serde(rename = "L")]
    pub num_layers: usize,
    pub c: usize,
    pub variant: Variant,
}

impl LayerDecomposition {
    pub fn to_document(&self, tree: &ColoredTree) -> LayersDocument {
        LayersDocument {
            layers: (0..tree.node_count())
                .map(|v| (tree.id(v).to_string(), self.layer[v]))
                .collect(),
            num_layers: self.num_layers,
            c: self.c,
            variant: self.variant,
        }
    }

    /// Number of neighbors of `v` in the same or a higher layer.
    pub fn degree_at_own_layer(&self, tree: &ColoredTree, v: usize) -> usize {
        tree.neighbors(v)
            .filter(|(u, _)| self.layer[*u] >= self.layer[v])
            .count()
    }

    pub fn higher_neighbors(&self, tree: &ColoredTree, v: usize) -> usize {
        tree.neighbors(v)
            .filter(|(u, _)| self.layer[*u] > self.layer[v])
            .count()
    }
}

pub fn rake_compress(
    tree: &ColoredTree,
    c: usize,
    variant: Variant,
) -> Result<LayerDecomposition, SolveError> {
    if c == 0 {
        return Err(SolveError::InvalidParameter("c must be at least 1".into()));
    }
    let n = tree.node_count();
    let mut layer = vec![0usize; n];
    let mut deg: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut in_long = vec![false; n];
    let mut seen = vec![false; n];
    let mut iterations = Vec::new();
    let mut i = 0;
    while !alive.is_empty() {
        i += 1;
        // Mark degree-two runs of length at least c.
        for &v in &alive {
            if deg[v] != 2 || seen[v] {
                continue;
            }
            let mut run = vec![v];
            seen[v] = true;
            let mut k = 0;
            while k < run.len() {
                let x = run[k];
                k += 1;
                for (u, _) in tree.neighbors(x) {
                    if layer[u] == 0 && deg[u] == 2 && !seen[u] {
                        seen[u] = true;
                        run.push(u);
                    }
                }
            }
            if run.len() >= c {
                for x in run {
                    in_long[x] = true;
                }
            }
        }
        let removed: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&v| deg[v] <= 1 || (in_long[v] && variant.compresses(tree.color(v))))
            .collect();
        if removed.is_empty() {
            return Err(SolveError::Internal(format!(
                "rake & compress stalled at iteration {i}"
            )));
        }
        for &v in &removed {
            layer[v] = i;
        }
        for &v in &removed {
            for (u, _) in tree.neighbors(v) {
                if layer[u] == 0 {
                    deg[u] -= 1;
                }
            }
        }
        for &v in &alive {
            seen[v] = false;
            in_long[v] = false;
        }
        iterations.push(IterationStats {
            remaining: alive.len(),
            removed: removed.len(),
        });
        alive.retain(|&v| layer[v] == 0);
    }
    Ok(LayerDecomposition {
        layer,
        num_layers: i,
        c,
        variant,
        iterations,
    })
}

/// Checks the structural guarantees of a decomposition; returns a description
/// of the first failure.
pub fn check_layer_properties(tree: &ColoredTree, dec: &LayerDecomposition) -> Result<(), String> {
    for v in 0..tree.node_count() {
        let own = dec.degree_at_own_layer(tree, v);
        if own > 2 {
            return Err(format!("node {} has {own} neighbors at or above its layer", tree.id(v)));
        }
        if !dec.variant.compresses(tree.color(v)) && own > 1 {
            return Err(format!(
                "restricted node {} has {own} neighbors at or above its layer",
                tree.id(v)
            ));
        }
        if dec.c >= 2 && dec.variant == Variant::Standard && dec.higher_neighbors(tree, v) > 1 {
            return Err(format!("node {} has two higher neighbors", tree.id(v)));
        }
    }
    Ok(())
}
