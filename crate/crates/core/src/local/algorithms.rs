//! View-based versions of the solvers.

use std::cell::RefCell;

use super::{partial_layers, Decision, View, ViewAlgorithm};
use crate::problem::BinaryProblem;
use crate::solve::layered::{complete_node, LayeredRule, PortState};
use crate::solve::{global, Method, SolvePlan};
use crate::labeling::EdgeLabeling;
use crate::tree::{Color, ColoredTree};

/// Runs the dispatcher's plan on views. Decisions agree with the centralized
/// solver, since every edge label is a function of information the view
/// determines once the algorithm decides.
#[derive(Debug, Clone)]
pub struct LocalSolver {
    pub plan: SolvePlan,
    /// Last whole tree solved by a global method, with its labeling.
    solved: RefCell<Option<(ColoredTree, EdgeLabeling)>>,
}

impl LocalSolver {
    pub fn new(plan: SolvePlan) -> Self {
        LocalSolver {
            plan,
            solved: RefCell::new(None),
        }
    }

    /// Labels of a complete view under a global method; the tree behind the
    /// view is rebuilt and solved only when it differs from the cached one.
    fn decide_global(&self, view: &View) -> Option<Vec<bool>> {
        let mut cache = self.solved.borrow_mut();
        if !cache.as_ref().is_some_and(|(t, _)| same_tree(view, t)) {
            let tree = view.to_tree().ok()?;
            let x = if self.plan.method == Method::TwoColoring {
                global::two_coloring(&tree)
            } else {
                global::orient_towards_leaf(&tree)
            };
            *cache = Some((tree, x));
        }
        let (tree, x) = cache.as_ref()?;
        let r = tree.index_of(view.root().id?)?;
        Some(tree.ports(r).iter().map(|&e| x.get(e)).collect())
    }

    fn decide_target(&self, view: &View) -> Option<Vec<bool>> {
        let root = view.root();
        match self.plan.method {
            Method::Uniform { value } => Some(vec![value; root.degree]),
            Method::LowestPorts { count } => {
                if root.color == Color::White {
                    return Some((0..root.degree).map(|i| i < count).collect());
                }
                root.ports
                    .iter()
                    .map(|p| {
                        p.map(|(y, e)| {
                            let edge = view.edges[e];
                            let at = if edge.ends[0] == y { edge.ports[0] } else { edge.ports[1] };
                            at < count
                        })
                    })
                    .collect()
            }
            Method::TwoColoring | Method::LeafOrientation => {
                if !view.is_complete() {
                    return None;
                }
                self.decide_global(view)
            }
            Method::Layered { rule } => {
                let layers = partial_layers(view, rule.c(), rule.variant());
                let mut eval = Evaluator {
                    view,
                    layers: &layers,
                    rule,
                    target: &self.plan.target,
                    memo: vec![None; view.nodes.len()],
                };
                (0..root.degree).map(|port| eval.port_label(0, port)).collect()
            }
        }
    }
}

impl ViewAlgorithm for LocalSolver {
    fn decide(&self, view: &View) -> Decision {
        let swapped;
        let view = if self.plan.equivalence.swaps_colors() {
            swapped = view.with_swapped_colors();
            &swapped
        } else {
            view
        };
        match self.decide_target(view) {
            Some(out) if self.plan.equivalence.complements() => {
                Decision::Decide(out.into_iter().map(|x| !x).collect())
            }
            Some(out) => Decision::Decide(out),
            None => Decision::Continue,
        }
    }

    fn is_monotone(&self) -> bool {
        true
    }
}

/// Whether a complete view with ids shows exactly `tree`, ports included.
fn same_tree(view: &View, tree: &ColoredTree) -> bool {
    view.nodes.len() == tree.node_count()
        && view.nodes.iter().all(|n| {
            let Some(v) = n.id.and_then(|id| tree.index_of(id)) else {
                return false;
            };
            n.color == tree.color(v)
                && n.degree == tree.degree(v)
                && n.ports.iter().zip(tree.neighbors(v)).all(|(p, (u, _))| {
                    p.and_then(|(y, _)| view.nodes[y].id) == Some(tree.id(u))
                })
        })
}

/// Lazily evaluates edge labels of the top-down assignment on a view.
struct Evaluator<'a> {
    view: &'a View,
    layers: &'a [Option<usize>],
    rule: LayeredRule,
    target: &'a BinaryProblem,
    memo: Vec<Option<Option<Vec<bool>>>>,
}

impl Evaluator<'_> {
    fn port_label(&mut self, x: usize, port: usize) -> Option<bool> {
        let (y, _) = self.view.nodes[x].ports[port]?;
        let (lx, ly) = (self.layers[x]?, self.layers[y]?);
        if lx == ly {
            return self.same_layer_label(x, y);
        }
        let (high, low) = if lx > ly { (x, y) } else { (y, x) };
        let at = self.view.nodes[high]
            .ports
            .iter()
            .position(|p| p.map(|(u, _)| u) == Some(low))?;
        Some(self.completion(high)?[at])
    }

    fn same_layer_label(&mut self, x: usize, y: usize) -> Option<bool> {
        if self.rule != LayeredRule::Special {
            return Some(self.rule.same_layer_label(None));
        }
        let b = if self.view.nodes[x].color == Color::Black { x } else { y };
        let lb = self.layers[b]?;
        let mut upper = None;
        for (port, p) in self.view.nodes[b].ports.iter().enumerate() {
            let (u, _) = (*p)?;
            if self.layers[u]? > lb && upper.is_none() {
                upper = Some(port);
            }
        }
        let up = match upper {
            Some(port) => Some(self.port_label(b, port)?),
            None => None,
        };
        Some(self.rule.same_layer_label(up))
    }

    fn completion(&mut self, x: usize) -> Option<Vec<bool>> {
        if let Some(done) = &self.memo[x] {
            return done.clone();
        }
        let result = self.compute_completion(x);
        self.memo[x] = Some(result.clone());
        result
    }

    fn compute_completion(&mut self, x: usize) -> Option<Vec<bool>> {
        let lx = self.layers[x]?;
        let node = &self.view.nodes[x];
        let neighbors: Vec<usize> = node
            .ports
            .iter()
            .map(|p| p.map(|(u, _)| u))
            .collect::<Option<_>>()?;
        let mut states = Vec::with_capacity(neighbors.len());
        for (port, &u) in neighbors.iter().enumerate() {
            let lu = self.layers[u]?;
            states.push(if lu > lx {
                PortState::Upper(self.port_label(x, port)?)
            } else if lu == lx {
                PortState::Same(self.same_layer_label(x, u)?)
            } else {
                PortState::Lower
            });
        }
        let node = &self.view.nodes[x];
        complete_node(self.rule, self.target, node.color, node.id.unwrap_or(0), &states).ok()
    }
}
