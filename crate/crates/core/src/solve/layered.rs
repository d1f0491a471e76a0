//! Solvers that process a rake & compress decomposition from the top layer down.
//!
//! Each node fixes the labels of the edges towards strictly lower layers once
//! the labels towards higher layers and within its own layer are known. The
//! per-node rule in [`complete_node`] is shared with the view-based variant.

use serde::Serialize;

use super::rake::{rake_compress, LayerDecomposition, Variant};
use super::SolveError;
use crate::labeling::EdgeLabeling;
use crate::problem::{complete_labeling, BinaryProblem};
use crate::tree::{Color, ColoredTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum LayeredRule {
    /// Complete each node's free ports by the least reachable allowed degree.
    /// Whites face at most `white_budget` fixed ports, blacks `black_budget`.
    Resilient {
        white_budget: usize,
        black_budget: usize,
    },
    /// Exactly one X edge per constrained node, for `W = 010..0`, `B = 010..0`.
    HypergraphMatching,
    /// `W = 010..0`, `B = 10..01`: whites pick one edge, blacks take all or none.
    Special,
    /// `d = 2`, `W = 110`, `B = 010..0`: every constrained black puts its lowest
    /// edge towards a lower layer in X, everything else is 0.
    PickLower,
}

impl LayeredRule {
    pub fn resilient_white() -> Self {
        LayeredRule::Resilient {
            white_budget: 1,
            black_budget: 2,
        }
    }

    pub fn resilient_black() -> Self {
        LayeredRule::Resilient {
            white_budget: 2,
            black_budget: 1,
        }
    }

    pub fn c(self) -> usize {
        match self {
            LayeredRule::Resilient { .. } => 1,
            LayeredRule::HypergraphMatching => 3,
            LayeredRule::Special => 5,
            LayeredRule::PickLower => 2,
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            LayeredRule::Resilient { white_budget: 1, .. } => Variant::WhiteRestricted,
            LayeredRule::Resilient { .. } => Variant::BlackRestricted,
            _ => Variant::Standard,
        }
    }

    fn budget(self, color: Color) -> usize {
        match self {
            LayeredRule::Resilient {
                white_budget,
                black_budget,
            } => match color {
                Color::White => white_budget,
                Color::Black => black_budget,
            },
            _ => 2,
        }
    }

    /// Label of an edge whose endpoints share a layer, given the label of the
    /// black endpoint's edge towards a higher layer, if it has one.
    pub fn same_layer_label(self, black_upper: Option<bool>) -> bool {
        match self {
            LayeredRule::Special => black_upper.unwrap_or(false),
            _ => false,
        }
    }
}

/// Position of a port relative to the node's own layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortState {
    Upper(bool),
    Same(bool),
    Lower,
}

/// Labels of all ports of one node given the labels already fixed from above
/// and within the layer. Lower ports are filled in port order.
pub fn complete_node(
    rule: LayeredRule,
    p: &BinaryProblem,
    color: Color,
    id: u64,
    ports: &[PortState],
) -> Result<Vec<bool>, SolveError> {
    let constrained = ports.len() == p.degree(color);
    let fixed: Vec<bool> = ports
        .iter()
        .filter_map(|s| match s {
            PortState::Upper(x) | PortState::Same(x) => Some(*x),
            PortState::Lower => None,
        })
        .collect();
    let uppers: Vec<bool> = ports
        .iter()
        .filter_map(|s| match s {
            PortState::Upper(x) => Some(*x),
            _ => None,
        })
        .collect();
    let ones = fixed.iter().filter(|x| **x).count();
    if fixed.len() > rule.budget(color) {
        return Err(SolveError::BudgetViolated {
            node: id,
            fixed: fixed.len(),
            budget: rule.budget(color),
        });
    }
    if !matches!(rule, LayeredRule::Resilient { .. }) && uppers.len() > 1 {
        return Err(SolveError::Internal(format!("node {id} has two higher neighbors")));
    }

    // Number of lower ports to set to one, or a fill value for all of them.
    enum Fill {
        Lowest(usize),
        All(bool),
    }
    let fill = match rule {
        LayeredRule::Resilient { .. } => {
            if constrained {
                let extra = complete_labeling(p.constraint(color), ones, fixed.len())
                    .ok_or(SolveError::Infeasible { node: id })?;
                Fill::Lowest(extra)
            } else {
                Fill::Lowest(0)
            }
        }
        LayeredRule::HypergraphMatching => Fill::Lowest(usize::from(ones == 0)),
        LayeredRule::Special => match color {
            Color::Black => Fill::All(uppers.first().copied().unwrap_or(false)),
            Color::White => {
                if constrained && ones > 1 {
                    return Err(SolveError::Infeasible { node: id });
                }
                Fill::Lowest(usize::from(ones == 0))
            }
        },
        LayeredRule::PickLower => {
            if constrained && ones > usize::from(color == Color::White) {
                return Err(SolveError::Infeasible { node: id });
            }
            Fill::Lowest(usize::from(constrained && color == Color::Black))
        }
    };
    let mut out = Vec::with_capacity(ports.len());
    let mut placed = 0;
    for s in ports {
        out.push(match *s {
            PortState::Upper(x) | PortState::Same(x) => x,
            PortState::Lower => match fill {
                Fill::All(x) => x,
                Fill::Lowest(k) => {
                    placed += 1;
                    placed <= k
                }
            },
        });
    }
    if let Fill::Lowest(k) = fill {
        if constrained && k > placed {
            return Err(SolveError::Infeasible { node: id });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct LayeredSolution {
    pub labeling: EdgeLabeling,
    pub decomposition: LayerDecomposition,
}

/// Runs the decomposition for `rule` and assigns labels from the top layer down.
pub fn solve_layered(
    rule: LayeredRule,
    p: &BinaryProblem,
    tree: &ColoredTree,
) -> Result<LayeredSolution, SolveError> {
    let dec = rake_compress(tree, rule.c(), rule.variant())?;
    let labels = assign_top_down(rule, p, tree, &dec)?;
    Ok(LayeredSolution {
        labeling: labels,
        decomposition: dec,
    })
}

pub fn assign_top_down(
    rule: LayeredRule,
    p: &BinaryProblem,
    tree: &ColoredTree,
    dec: &LayerDecomposition,
) -> Result<EdgeLabeling, SolveError> {
    let layer = &dec.layer;
    let mut by_layer: Vec<Vec<usize>> = vec![Vec::new(); dec.num_layers + 1];
    for v in 0..tree.node_count() {
        by_layer[layer[v]].push(v);
    }
    let mut label: Vec<Option<bool>> = vec![None; tree.edge_count()];
    let upper_of = |label: &[Option<bool>], b: usize| {
        tree.neighbors(b)
            .find(|(u, _)| layer[*u] > layer[b])
            .map(|(_, e)| label[e].expect("higher layers are done"))
    };
    for i in (1..=dec.num_layers).rev() {
        for &v in &by_layer[i] {
            if tree.color(v) != Color::Black {
                continue;
            }
            let up = upper_of(&label, v);
            for (u, e) in tree.neighbors(v) {
                if layer[u] == i {
                    label[e] = Some(rule.same_layer_label(up));
                }
            }
        }
        for &v in &by_layer[i] {
            let states: Vec<PortState> = tree
                .neighbors(v)
                .map(|(u, e)| {
                    if layer[u] > i {
                        PortState::Upper(label[e].expect("higher layers are done"))
                    } else if layer[u] == i {
                        PortState::Same(label[e].expect("same layer is done"))
                    } else {
                        PortState::Lower
                    }
                })
                .collect();
            let out = complete_node(rule, p, tree.color(v), tree.id(v), &states)?;
            for ((_, e), x) in tree.neighbors(v).zip(out) {
                label[e] = Some(x);
            }
        }
    }
    Ok(EdgeLabeling(
        label.into_iter().map(|x| x.expect("every edge labeled")).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::verify_labeling;
    use crate::tree::{caterpillar, complete_biregular, random_biregular};

    fn p(s: &str) -> BinaryProblem {
        BinaryProblem::parse(s).unwrap()
    }

    fn check(rule: LayeredRule, q: &BinaryProblem, t: &ColoredTree) {
        let sol = solve_layered(rule, q, t).unwrap();
        let v = verify_labeling(t, q, &sol.labeling).unwrap();
        assert!(v.is_empty(), "{q}: {v:?}");
    }

    #[test]
    fn resilient_sinkless_orientation() {
        let q = p("d=3,delta=2,W=1110,B=010");
        for seed in 0..5 {
            check(LayeredRule::resilient_black(), &q, &random_biregular(3, 2, 500, seed).unwrap());
        }
    }

    #[test]
    fn hypergraph_matching() {
        let q = p("d=3,delta=3,W=0100,B=0100");
        check(LayeredRule::HypergraphMatching, &q, &complete_biregular(3, 3, 6, Color::White, None).unwrap());
        for seed in 0..5 {
            check(LayeredRule::HypergraphMatching, &q, &random_biregular(3, 3, 800, seed).unwrap());
        }
    }

    #[test]
    fn special_problem() {
        let q = p("d=3,delta=2,W=0100,B=101");
        check(LayeredRule::Special, &q, &caterpillar(3, 50, None).unwrap());
        for seed in 0..5 {
            check(LayeredRule::Special, &q, &random_biregular(3, 2, 800, seed).unwrap());
        }
        let q = p("d=4,delta=3,W=01000,B=1001");
        for seed in 0..5 {
            check(LayeredRule::Special, &q, &random_biregular(4, 3, 800, seed).unwrap());
        }
    }

    #[test]
    fn pick_lower() {
        for delta in 3..=5 {
            let q = crate::solve::pick_lower(delta);
            for seed in 0..5 {
                check(LayeredRule::PickLower, &q, &random_biregular(2, delta, 800, seed).unwrap());
            }
            check(LayeredRule::PickLower, &q, &complete_biregular(2, delta, 8, Color::Black, None).unwrap());
        }
    }

    #[test]
    fn node_rule_fills_lowest_ports() {
        let q = p("d=3,delta=2,W=0110,B=010");
        let out = complete_node(
            LayeredRule::resilient_white(),
            &q,
            Color::White,
            1,
            &[PortState::Lower, PortState::Upper(false), PortState::Lower],
        )
        .unwrap();
        assert_eq!(out, vec![true, false, false]);
    }

    #[test]
    fn node_rule_reports_budget_overflow() {
        let q = p("d=3,delta=2,W=0110,B=010");
        let err = complete_node(
            LayeredRule::resilient_white(),
            &q,
            Color::White,
            9,
            &[PortState::Upper(true), PortState::Same(false), PortState::Lower],
        );
        assert!(matches!(err, Err(SolveError::BudgetViolated { node: 9, .. })));
    }
}
