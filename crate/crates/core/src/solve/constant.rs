//! Constant-round rules.

use crate::labeling::EdgeLabeling;
use crate::tree::{Color, ColoredTree};

/// Every white labels its `count` lowest ports 1 and the rest 0.
pub fn lowest_ports(tree: &ColoredTree, count: usize) -> EdgeLabeling {
    let mut x = EdgeLabeling::zeros(tree.edge_count());
    for v in 0..tree.node_count() {
        if tree.color(v) == Color::White {
            for &e in tree.ports(v).iter().take(count) {
                x.0[e] = true;
            }
        }
    }
    x
}

pub fn uniform(tree: &ColoredTree, value: bool) -> EdgeLabeling {
    EdgeLabeling(vec![value; tree.edge_count()])
}
