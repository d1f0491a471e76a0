//! LOCAL-model simulation: radius-r views and a round-by-round harness.

mod algorithms;
mod partial;

pub use algorithms::LocalSolver;
pub use partial::partial_layers;

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::labeling::EdgeLabeling;
use crate::tree::{Color, ColoredTree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewNode {
    pub color: Color,
    pub degree: usize,
    pub id: Option<u64>,
    pub depth: usize,
    /// Per port: the neighbor's view index and the view edge, or `None` when
    /// the neighbor lies outside the view.
    pub ports: Vec<Option<(usize, usize)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ViewEdge {
    pub ends: [usize; 2],
    /// Zero-based port index at each end.
    pub ports: [usize; 2],
}

/// Everything a node learns in `radius` rounds. Node 0 is the root; nodes are
/// listed in BFS order with children visited in port order, so the layout
/// depends only on the port-numbered structure (and ids, when included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct View {
    pub radius: usize,
    pub nodes: Vec<ViewNode>,
    pub edges: Vec<ViewEdge>,
}

impl View {
    pub fn build(tree: &ColoredTree, root: usize, radius: usize, include_ids: bool) -> View {
        let mut nodes = Vec::new();
        let mut edges: Vec<ViewEdge> = Vec::new();
        let mut source = Vec::new();
        let mut queue = VecDeque::new();
        let push = |nodes: &mut Vec<ViewNode>, source: &mut Vec<usize>, v: usize, depth: usize| {
            nodes.push(ViewNode {
                color: tree.color(v),
                degree: tree.degree(v),
                id: include_ids.then(|| tree.id(v)),
                depth,
                ports: vec![None; tree.degree(v)],
            });
            source.push(v);
            nodes.len() - 1
        };
        push(&mut nodes, &mut source, root, 0);
        queue.push_back((0usize, usize::MAX));
        while let Some((x, parent_edge)) = queue.pop_front() {
            let depth = nodes[x].depth;
            if depth == radius {
                continue;
            }
            let v = source[x];
            for (port, (u, e)) in tree.neighbors(v).enumerate() {
                if e == parent_edge {
                    continue;
                }
                let y = push(&mut nodes, &mut source, u, depth + 1);
                let back = tree.port_of(u, e);
                let ve = edges.len();
                edges.push(ViewEdge {
                    ends: [x, y],
                    ports: [port, back],
                });
                nodes[x].ports[port] = Some((y, ve));
                nodes[y].ports[back] = Some((x, ve));
                queue.push_back((y, e));
            }
        }
        View {
            radius,
            nodes,
            edges,
        }
    }

    pub fn root(&self) -> &ViewNode {
        &self.nodes[0]
    }

    /// True when no node has a neighbor outside the view.
    pub fn is_complete(&self) -> bool {
        self.nodes.iter().all(|n| n.ports.iter().all(Option::is_some))
    }

    pub fn with_swapped_colors(&self) -> View {
        let mut v = self.clone();
        for n in &mut v.nodes {
            n.color = n.color.other();
        }
        v
    }

    /// Canonical byte encoding; equal encodings mean isomorphic views.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.nodes.len() * 16);
        out.extend_from_slice(&(self.radius as u64).to_le_bytes());
        for n in &self.nodes {
            out.push(match n.color {
                Color::White => 0,
                Color::Black => 1,
            });
            out.extend_from_slice(&(n.degree as u32).to_le_bytes());
            match n.id {
                Some(id) => {
                    out.push(1);
                    out.extend_from_slice(&id.to_le_bytes());
                }
                None => out.push(0),
            }
            for p in &n.ports {
                let code = p.map_or(u32::MAX, |(y, _)| y as u32);
                out.extend_from_slice(&code.to_le_bytes());
            }
        }
        out
    }

    /// Rebuilds the tree seen by a complete view that carries ids.
    pub fn to_tree(&self) -> Result<ColoredTree, TreeError> {
        let id = |x: usize| {
            self.nodes[x]
                .id
                .ok_or_else(|| TreeError::BadParameters("view has no ids".into()))
        };
        let nodes: Vec<(u64, Color)> = (0..self.nodes.len())
            .map(|x| Ok((id(x)?, self.nodes[x].color)))
            .collect::<Result<_, TreeError>>()?;
        let edges: Vec<(u64, u64)> = self
            .edges
            .iter()
            .map(|e| Ok((id(e.ends[0])?, id(e.ends[1])?)))
            .collect::<Result<_, TreeError>>()?;
        let mut ports = BTreeMap::new();
        for (x, n) in self.nodes.iter().enumerate() {
            let order = n
                .ports
                .iter()
                .map(|p| {
                    p.map(|(y, _)| nodes[y].0)
                        .ok_or_else(|| TreeError::BadParameters("view is incomplete".into()))
                })
                .collect::<Result<Vec<u64>, _>>()?;
            ports.insert(id(x)?, order);
        }
        ColoredTree::with_ports(&nodes, &edges, &ports)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// One label per port of the root, in port order.
    Decide(Vec<bool>),
    Continue,
}

/// A LOCAL algorithm run by white nodes; each edge is labeled by its white endpoint.
pub trait ViewAlgorithm {
    fn decide(&self, view: &View) -> Decision;

    /// Monotone algorithms never go back from `Decide` to `Continue` as the
    /// radius grows and decide the same labels at every larger radius. The
    /// harness may then search for the deciding radius instead of scanning.
    fn is_monotone(&self) -> bool {
        false
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("node {node} has not decided after {max_rounds} rounds")]
    MaxRoundsExceeded { node: u64, max_rounds: usize },
    #[error("node {node} returned {got} labels for degree {expected}")]
    WrongArity { node: u64, got: usize, expected: usize },
    #[error("edge ({0}, {1}) was labeled twice")]
    Relabeled(u64, u64),
    #[error("nodes with identical views decided differently (node {0})")]
    InconsistentViews(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    pub max_rounds: usize,
    pub include_ids: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            max_rounds: crate::limits::Limits::default().max_rounds,
            include_ids: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationResult {
    pub labeling: EdgeLabeling,
    /// Largest deciding round over all white nodes.
    pub rounds: usize,
    /// Deciding round of each white node, by id.
    pub per_node_round: BTreeMap<u64, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulationSummary {
    pub rounds: usize,
    pub whites: usize,
}

pub fn run_local_simulation(
    tree: &ColoredTree,
    alg: &dyn ViewAlgorithm,
    opts: SimOptions,
) -> Result<SimulationResult, SimError> {
    let mut labels: Vec<Option<bool>> = vec![None; tree.edge_count()];
    let mut per_node_round = BTreeMap::new();
    let mut seen_views: HashMap<Vec<u8>, Vec<bool>> = HashMap::new();
    let mut hint = 0;
    for v in 0..tree.node_count() {
        if tree.color(v) != Color::White {
            continue;
        }
        let (round, out, view) = if alg.is_monotone() {
            decide_by_search(tree, v, alg, opts, hint)?
        } else {
            decide_by_scan(tree, v, alg, opts)?
        };
        if out.len() != tree.degree(v) {
            return Err(SimError::WrongArity {
                node: tree.id(v),
                got: out.len(),
                expected: tree.degree(v),
            });
        }
        if !opts.include_ids {
            let key = view.encode();
            if let Some(prev) = seen_views.get(&key) {
                if *prev != out {
                    return Err(SimError::InconsistentViews(tree.id(v)));
                }
            } else {
                seen_views.insert(key, out.clone());
            }
        }
        for (&e, x) in tree.ports(v).iter().zip(&out) {
            if labels[e].replace(*x).is_some() {
                let [a, b] = tree.endpoints(e);
                return Err(SimError::Relabeled(tree.id(a), tree.id(b)));
            }
        }
        per_node_round.insert(tree.id(v), round);
        hint = round;
    }
    Ok(SimulationResult {
        labeling: EdgeLabeling(labels.into_iter().map(|x| x.unwrap_or(false)).collect()),
        rounds: per_node_round.values().copied().max().unwrap_or(0),
        per_node_round,
    })
}

fn probe(
    tree: &ColoredTree,
    v: usize,
    alg: &dyn ViewAlgorithm,
    r: usize,
    include_ids: bool,
) -> (Option<Vec<bool>>, View) {
    let view = View::build(tree, v, r, include_ids);
    match alg.decide(&view) {
        Decision::Decide(out) => (Some(out), view),
        Decision::Continue => (None, view),
    }
}

fn decide_by_scan(
    tree: &ColoredTree,
    v: usize,
    alg: &dyn ViewAlgorithm,
    opts: SimOptions,
) -> Result<(usize, Vec<bool>, View), SimError> {
    for r in 0..=opts.max_rounds {
        if let (Some(out), view) = probe(tree, v, alg, r, opts.include_ids) {
            return Ok((r, out, view));
        }
    }
    Err(SimError::MaxRoundsExceeded {
        node: tree.id(v),
        max_rounds: opts.max_rounds,
    })
}

/// Galloping away from `hint` followed by binary search; valid for monotone
/// algorithms only. Neighboring nodes tend to decide at similar radii, so the
/// previous node's radius is a good starting point.
fn decide_by_search(
    tree: &ColoredTree,
    v: usize,
    alg: &dyn ViewAlgorithm,
    opts: SimOptions,
    hint: usize,
) -> Result<(usize, Vec<bool>, View), SimError> {
    let start = hint.min(opts.max_rounds);
    // Invariant: fails at `lo` (if any), decides at `hi`.
    let (mut lo, mut hi, mut best) = match probe(tree, v, alg, start, opts.include_ids) {
        (Some(out), view) => {
            let mut hi = start;
            let mut best = (out, view);
            let mut lo = None;
            let mut step = 1;
            while hi > 0 {
                let r = hi.saturating_sub(step);
                match probe(tree, v, alg, r, opts.include_ids) {
                    (Some(out), view) => {
                        hi = r;
                        best = (out, view);
                        step *= 2;
                    }
                    (None, _) => {
                        lo = Some(r);
                        break;
                    }
                }
            }
            (lo, hi, best)
        }
        (None, _) => {
            let mut lo = start;
            let mut step = 1;
            loop {
                if lo == opts.max_rounds {
                    return Err(SimError::MaxRoundsExceeded {
                        node: tree.id(v),
                        max_rounds: opts.max_rounds,
                    });
                }
                let r = (lo + step).min(opts.max_rounds);
                if let (Some(out), view) = probe(tree, v, alg, r, opts.include_ids) {
                    break (Some(lo), r, (out, view));
                }
                lo = r;
                step *= 2;
            }
        }
    };
    while let Some(l) = lo {
        if hi - l <= 1 {
            break;
        }
        let mid = l + (hi - l) / 2;
        match probe(tree, v, alg, mid, opts.include_ids) {
            (Some(out), view) => {
                hi = mid;
                best = (out, view);
            }
            (None, _) => lo = Some(mid),
        }
    }
    Ok((hi, best.0, best.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{complete_biregular, path, random_biregular, shuffle_ports};

    #[test]
    fn view_sizes_and_completeness() {
        let t = complete_biregular(3, 2, 3, Color::White, None).unwrap();
        assert_eq!(View::build(&t, 0, 0, true).nodes.len(), 1);
        assert_eq!(View::build(&t, 0, 1, true).nodes.len(), 4);
        let full = View::build(&t, 0, 3, true);
        assert!(full.is_complete());
        assert_eq!(full.to_tree().unwrap(), t);
        assert!(!View::build(&t, 0, 2, true).is_complete());
    }

    #[test]
    fn encoding_is_deterministic_and_ignores_ids_when_absent() {
        let t = random_biregular(3, 3, 200, 5).unwrap();
        let a = View::build(&t, 0, 4, false).encode();
        let b = View::build(&t, 0, 4, false).encode();
        assert_eq!(a, b);
        let permuted = t.with_permuted_ids(11);
        let root = permuted.index_of(permuted.id(0)).unwrap();
        let c = View::build(&permuted, root, 4, false);
        assert_eq!(c.nodes.len(), View::build(&t, 0, 4, false).nodes.len());
    }

    #[test]
    fn to_tree_preserves_ports() {
        let t = shuffle_ports(&random_biregular(3, 2, 60, 2).unwrap(), 3);
        let v = View::build(&t, 5, 1000, true);
        let canon = |t: &ColoredTree| {
            let mut d = t.to_document(true);
            d.nodes.sort_by_key(|n| n.id);
            d.edges.sort();
            d
        };
        assert_eq!(canon(&v.to_tree().unwrap()), canon(&t));
    }

    struct WaitThenZero(usize);

    impl ViewAlgorithm for WaitThenZero {
        fn decide(&self, view: &View) -> Decision {
            if view.radius >= self.0 {
                Decision::Decide(vec![false; view.root().degree])
            } else {
                Decision::Continue
            }
        }

        fn is_monotone(&self) -> bool {
            true
        }
    }

    struct Broken;

    impl ViewAlgorithm for Broken {
        fn decide(&self, _: &View) -> Decision {
            Decision::Decide(vec![true])
        }
    }

    #[test]
    fn search_finds_the_first_deciding_round() {
        let t = path(9, Color::White).unwrap();
        for k in [0, 1, 3, 7, 12] {
            let res = run_local_simulation(&t, &WaitThenZero(k), SimOptions::default()).unwrap();
            assert_eq!(res.rounds, k);
        }
        let capped = SimOptions {
            max_rounds: 5,
            include_ids: true,
        };
        assert!(matches!(
            run_local_simulation(&t, &WaitThenZero(6), capped),
            Err(SimError::MaxRoundsExceeded { .. })
        ));
    }

    #[test]
    fn wrong_arity_is_reported() {
        let t = complete_biregular(3, 2, 2, Color::White, None).unwrap();
        assert!(matches!(
            run_local_simulation(&t, &Broken, SimOptions::default()),
            Err(SimError::WrongArity { .. })
        ));
    }
}
