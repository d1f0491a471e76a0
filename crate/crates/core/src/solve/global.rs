//! Linear-round rules that need a view of the whole tree.

use crate::labeling::EdgeLabeling;
use crate::tree::{Color, ColoredTree};

/// Splits the whites by distance (mod 4) from the smallest-id white; whites in
/// the reference class put every incident edge in X, the others none.
/// A black of degree two then sees exactly one X edge.
pub fn two_coloring(tree: &ColoredTree) -> EdgeLabeling {
    let mut x = EdgeLabeling::zeros(tree.edge_count());
    let Some(reference) = (0..tree.node_count())
        .filter(|&v| tree.color(v) == Color::White)
        .min_by_key(|&v| tree.id(v))
    else {
        return x;
    };
    let dist = tree.distances_from(reference);
    for v in 0..tree.node_count() {
        if tree.color(v) == Color::White && dist[v] % 4 == 0 {
            for &e in tree.ports(v) {
                x.0[e] = true;
            }
        }
    }
    x
}

/// Roots the tree at its smallest-id leaf; an edge is in X exactly when its
/// endpoint farther from the root is white. Non-root whites then have X-degree
/// one and non-root blacks X-degree (degree - 1).
pub fn orient_towards_leaf(tree: &ColoredTree) -> EdgeLabeling {
    let mut x = EdgeLabeling::zeros(tree.edge_count());
    let Some(root) = (0..tree.node_count())
        .filter(|&v| tree.degree(v) <= 1)
        .min_by_key(|&v| tree.id(v))
    else {
        return x;
    };
    let dist = tree.distances_from(root);
    for e in 0..tree.edge_count() {
        let [a, b] = tree.endpoints(e);
        let child = if dist[a] > dist[b] { a } else { b };
        x.0[e] = tree.color(child) == Color::White;
    }
    x
}
