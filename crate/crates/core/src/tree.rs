//! Properly two-colored trees with port numbering, and tree generators.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "white",
            Color::Black => "black",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("edge ({0}, {1}) joins two nodes of the same color")]
    ImproperColoring(u64, u64),
    #[error("duplicate node id {0}")]
    DuplicateId(u64),
    #[error("node ids must be positive")]
    ZeroId,
    #[error("unknown node id {0}")]
    UnknownId(u64),
    #[error("invalid port numbering at node {0}")]
    BadPorts(u64),
    #[error("tree would have {needed} nodes, over the cap of {cap}")]
    TooLarge { needed: usize, cap: usize },
    #[error("invalid generator parameters: {0}")]
    BadParameters(String),
    #[error("malformed tree document: {0}")]
    Syntax(String),
}

/// Default cap on generated tree sizes.
pub const DEFAULT_NODE_CAP: usize = 2_000_000;

/// A tree with node ids, a proper two-coloring and a port numbering.
///
/// Nodes are addressed internally by index `0..n`. Edges are kept sorted by
/// `(min id, max id)`, which is the canonical edge order used everywhere.
/// `ports[v][i]` is the edge at port `i + 1` of node `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTree {
    ids: Vec<u64>,
    colors: Vec<Color>,
    edges: Vec<[usize; 2]>,
    ports: Vec<Vec<usize>>,
    index: HashMap<u64, usize>,
}

impl ColoredTree {
    /// Builds a tree with ports ordered by ascending neighbor id.
    pub fn new(nodes: &[(u64, Color)], edges: &[(u64, u64)]) -> Result<Self, TreeError> {
        Self::build(nodes, edges, None)
    }

    /// Builds a tree with explicit port orders: `ports[id]` lists neighbor ids in port order.
    pub fn with_ports(
        nodes: &[(u64, Color)],
        edges: &[(u64, u64)],
        ports: &BTreeMap<u64, Vec<u64>>,
    ) -> Result<Self, TreeError> {
        Self::build(nodes, edges, Some(ports))
    }

    fn build(
        nodes: &[(u64, Color)],
        edges: &[(u64, u64)],
        explicit: Option<&BTreeMap<u64, Vec<u64>>>,
    ) -> Result<Self, TreeError> {
        if nodes.is_empty() {
            return Err(TreeError::NotATree("no nodes".into()));
        }
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, (id, _)) in nodes.iter().enumerate() {
            if *id == 0 {
                return Err(TreeError::ZeroId);
            }
            if index.insert(*id, i).is_some() {
                return Err(TreeError::DuplicateId(*id));
            }
        }
        if edges.len() + 1 != nodes.len() {
            return Err(TreeError::NotATree(format!(
                "{} nodes but {} edges",
                nodes.len(),
                edges.len()
            )));
        }
        let ids: Vec<u64> = nodes.iter().map(|n| n.0).collect();
        let colors: Vec<Color> = nodes.iter().map(|n| n.1).collect();
        let mut pairs = Vec::with_capacity(edges.len());
        let mut seen = HashSet::with_capacity(edges.len());
        for &(a, b) in edges {
            let ia = *index.get(&a).ok_or(TreeError::UnknownId(a))?;
            let ib = *index.get(&b).ok_or(TreeError::UnknownId(b))?;
            if ia == ib {
                return Err(TreeError::NotATree(format!("self-loop at {a}")));
            }
            if colors[ia] == colors[ib] {
                return Err(TreeError::ImproperColoring(a, b));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(TreeError::NotATree(format!("duplicate edge ({a}, {b})")));
            }
            pairs.push(if a < b { [ia, ib] } else { [ib, ia] });
        }
        pairs.sort_by_key(|e| (ids[e[0]], ids[e[1]]));

        let n = ids.len();
        let mut ports: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, pair) in pairs.iter().enumerate() {
            ports[pair[0]].push(e);
            ports[pair[1]].push(e);
        }
        let other = |e: usize, v: usize| {
            let p = pairs[e];
            if p[0] == v {
                p[1]
            } else {
                p[0]
            }
        };
        for v in 0..n {
            match explicit.and_then(|m| m.get(&ids[v])) {
                Some(order) => {
                    let by_neighbor: HashMap<u64, usize> =
                        ports[v].iter().map(|&e| (ids[other(e, v)], e)).collect();
                    if order.len() != by_neighbor.len() {
                        return Err(TreeError::BadPorts(ids[v]));
                    }
                    let mut new_ports = Vec::with_capacity(order.len());
                    for nb in order {
                        let e = by_neighbor.get(nb).ok_or(TreeError::BadPorts(ids[v]))?;
                        if new_ports.contains(e) {
                            return Err(TreeError::BadPorts(ids[v]));
                        }
                        new_ports.push(*e);
                    }
                    ports[v] = new_ports;
                }
                None => ports[v].sort_by_key(|&e| ids[other(e, v)]),
            }
        }

        let tree = ColoredTree {
            ids,
            colors,
            edges: pairs,
            ports,
            index,
        };
        if !tree.is_connected() {
            return Err(TreeError::NotATree("disconnected".into()));
        }
        Ok(tree)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (u, _) in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.node_count()
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.ports[v].len()
    }

    pub fn index_of(&self, id: u64) -> Option<usize> {
        self.index.get(&id).copied()
    }

    /// Endpoints of edge `e`, lower id first.
    pub fn endpoints(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    /// Edge ids of `v` in port order.
    pub fn ports(&self, v: usize) -> &[usize] {
        &self.ports[v]
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// `(neighbor, edge)` pairs of `v` in port order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ports[v].iter().map(move |&e| (self.other_end(e, v), e))
    }

    /// Zero-based port index of edge `e` at node `v`.
    pub fn port_of(&self, v: usize, e: usize) -> usize {
        self.ports[v]
            .iter()
            .position(|&x| x == e)
            .expect("edge incident to node")
    }

    /// The white endpoint of edge `e`.
    pub fn white_end(&self, e: usize) -> usize {
        let [a, b] = self.edges[e];
        if self.colors[a] == Color::White {
            a
        } else {
            b
        }
    }

    pub fn edge_by_ids(&self, a: u64, b: u64) -> Option<usize> {
        let ia = self.index_of(a)?;
        let ib = self.index_of(b)?;
        self.ports[ia]
            .iter()
            .copied()
            .find(|&e| self.other_end(e, ia) == ib)
    }

    /// Same structure, ids and ports with every color flipped.
    pub fn swap_colors(&self) -> ColoredTree {
        let mut t = self.clone();
        for c in &mut t.colors {
            *c = c.other();
        }
        t
    }

    /// Replaces ids by distinct values drawn from `[1, n^2]` using `seed`.
    /// Edge order and port orders are recomputed from the new ids.
    pub fn with_permuted_ids(&self, seed: u64) -> ColoredTree {
        let n = self.node_count() as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let range = (n * n).max(1);
        let mut used = HashSet::new();
        let mut new_ids = Vec::with_capacity(self.node_count());
        while new_ids.len() < self.node_count() {
            let id = rng.gen_range(1..=range);
            if used.insert(id) {
                new_ids.push(id);
            }
        }
        self.relabel(&new_ids)
    }

    fn relabel(&self, new_ids: &[u64]) -> ColoredTree {
        let nodes: Vec<(u64, Color)> = (0..self.node_count())
            .map(|v| (new_ids[v], self.colors[v]))
            .collect();
        let edges: Vec<(u64, u64)> = self
            .edges
            .iter()
            .map(|[a, b]| (new_ids[*a], new_ids[*b]))
            .collect();
        ColoredTree::new(&nodes, &edges).expect("relabeling keeps validity")
    }

    /// BFS distances from `root`.
    pub fn distances_from(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (u, _) in self.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn to_document(&self, include_ports: bool) -> TreeDocument {
        TreeDocument {
            nodes: (0..self.node_count())
                .map(|v| NodeRecord {
                    id: self.ids[v],
                    color: self.colors[v],
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|[a, b]| [self.ids[*a], self.ids[*b]])
                .collect(),
            ports: include_ports.then(|| {
                (0..self.node_count())
                    .map(|v| {
                        (
                            self.ids[v].to_string(),
                            self.neighbors(v).map(|(u, _)| self.ids[u]).collect(),
                        )
                    })
                    .collect()
            }),
        }
    }

    pub fn from_document(doc: &TreeDocument) -> Result<Self, TreeError> {
        let nodes: Vec<(u64, Color)> = doc.nodes.iter().map(|n| (n.id, n.color)).collect();
        let edges: Vec<(u64, u64)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        match &doc.ports {
            None => Self::new(&nodes, &edges),
            Some(p) => {
                let mut map = BTreeMap::new();
                for (k, v) in p {
                    let id: u64 = k
                        .parse()
                        .map_err(|_| TreeError::Syntax(format!("bad port key '{k}'")))?;
                    map.insert(id, v.clone());
                }
                Self::with_ports(&nodes, &edges, &map)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self, TreeError> {
        let doc: TreeDocument =
            serde_json::from_str(text).map_err(|e| TreeError::Syntax(e.to_string()))?;
        Self::from_document(&doc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: u64,
    pub color: Color,
}

/// On-disk tree format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDocument {
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<[u64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ports: Option<BTreeMap<String, Vec<u64>>>,
}

/// Incremental builder used by the generators: nodes are appended with
/// their parent, ids are assigned in BFS order at the end.
struct Growth {
    colors: Vec<Color>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl Growth {
    fn new(root: Color) -> Self {
        Growth {
            colors: vec![root],
            parent: vec![None],
            children: vec![Vec::new()],
        }
    }

    fn add_child(&mut self, p: usize) -> usize {
        let v = self.colors.len();
        self.colors.push(self.colors[p].other());
        self.parent.push(Some(p));
        self.children.push(Vec::new());
        self.children[p].push(v);
        v
    }

    fn len(&self) -> usize {
        self.colors.len()
    }

    /// Ids `1..n` in BFS order from node 0, children visited in insertion order.
    fn finish(self, id_seed: Option<u64>) -> ColoredTree {
        let n = self.len();
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            queue.extend(self.children[v].iter().copied());
        }
        let mut id = vec![0u64; n];
        for (i, v) in order.iter().enumerate() {
            id[*v] = i as u64 + 1;
        }
        let nodes: Vec<(u64, Color)> = order.iter().map(|&v| (id[v], self.colors[v])).collect();
        let edges: Vec<(u64, u64)> = (1..n)
            .map(|v| (id[self.parent[v].expect("non-root")], id[v]))
            .collect();
        let tree = ColoredTree::new(&nodes, &edges).expect("generator builds valid trees");
        match id_seed {
            Some(seed) => tree.with_permuted_ids(seed),
            None => tree,
        }
    }
}

fn full_degree(color: Color, d: usize, delta: usize) -> usize {
    match color {
        Color::White => d,
        Color::Black => delta,
    }
}

/// Complete biregular tree: every node within distance `radius - 1` of the
/// center has full degree (`d` for white, `delta` for black).
pub fn complete_biregular(
    d: usize,
    delta: usize,
    radius: usize,
    center: Color,
    id_seed: Option<u64>,
) -> Result<ColoredTree, TreeError> {
    complete_biregular_capped(d, delta, radius, center, id_seed, DEFAULT_NODE_CAP)
}

pub fn complete_biregular_capped(
    d: usize,
    delta: usize,
    radius: usize,
    center: Color,
    id_seed: Option<u64>,
    cap: usize,
) -> Result<ColoredTree, TreeError> {
    if d < 1 || delta < 1 {
        return Err(TreeError::BadParameters("degrees must be positive".into()));
    }
    let mut needed: usize = 1;
    let mut layer: usize = 1;
    let mut color = center;
    for depth in 0..radius {
        let fan = full_degree(color, d, delta) - usize::from(depth > 0);
        layer = layer.saturating_mul(fan);
        needed = needed.saturating_add(layer);
        if needed > cap {
            return Err(TreeError::TooLarge { needed, cap });
        }
        color = color.other();
    }
    let mut g = Growth::new(center);
    let mut frontier = vec![0usize];
    for depth in 0..radius {
        let mut next = Vec::new();
        for &v in &frontier {
            let fan = full_degree(g.colors[v], d, delta) - usize::from(depth > 0);
            for _ in 0..fan {
                next.push(g.add_child(v));
            }
        }
        frontier = next;
    }
    Ok(g.finish(id_seed))
}

/// Random tree in which every node has full degree or is a leaf.
///
/// Starting from a white root, a uniformly random frontier node is expanded to
/// full degree until at least `n_target` nodes exist.
pub fn random_biregular(
    d: usize,
    delta: usize,
    n_target: usize,
    seed: u64,
) -> Result<ColoredTree, TreeError> {
    if d < 2 || delta < 2 {
        return Err(TreeError::BadParameters("degrees must be at least 2".into()));
    }
    if n_target > DEFAULT_NODE_CAP {
        return Err(TreeError::TooLarge {
            needed: n_target,
            cap: DEFAULT_NODE_CAP,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Growth::new(Color::White);
    let mut frontier = vec![0usize];
    while g.len() < n_target.max(2) {
        let pick = rng.gen_range(0..frontier.len());
        let v = frontier.swap_remove(pick);
        let fan = full_degree(g.colors[v], d, delta) - usize::from(v != 0);
        for _ in 0..fan {
            let c = g.add_child(v);
            frontier.push(c);
        }
    }
    Ok(g.finish(None))
}

/// Caterpillar-like tree: a path of `path_len` whites joined through degree-2
/// blacks, each white padded to degree `d` with pendant black-white pairs.
/// Endpoint whites get one extra pendant so that all whites have degree `d`.
pub fn caterpillar(d: usize, path_len: usize, id_seed: Option<u64>) -> Result<ColoredTree, TreeError> {
    if d < 3 || path_len < 1 {
        return Err(TreeError::BadParameters(
            "caterpillar needs d >= 3 and path_len >= 1".into(),
        ));
    }
    let needed = path_len.saturating_mul(2 * d);
    if needed > DEFAULT_NODE_CAP {
        return Err(TreeError::TooLarge {
            needed,
            cap: DEFAULT_NODE_CAP,
        });
    }
    let mut g = Growth::new(Color::White);
    let mut spine = vec![0usize];
    for _ in 1..path_len {
        let last = *spine.last().expect("non-empty");
        let b = g.add_child(last);
        spine.push(g.add_child(b));
    }
    for &w in &spine {
        let have = g.children[w].len() + usize::from(g.parent[w].is_some());
        for _ in have..d {
            let b = g.add_child(w);
            g.add_child(b);
        }
    }
    Ok(g.finish(id_seed))
}

/// Path with `nodes` nodes, colors alternating from `first`.
pub fn path(nodes: usize, first: Color) -> Result<ColoredTree, TreeError> {
    if nodes == 0 {
        return Err(TreeError::BadParameters("path needs at least one node".into()));
    }
    let mut g = Growth::new(first);
    let mut last = 0;
    for _ in 1..nodes {
        last = g.add_child(last);
    }
    Ok(g.finish(None))
}

/// Shuffles the port order of every node, keeping ids.
pub fn shuffle_ports(tree: &ColoredTree, seed: u64) -> ColoredTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<(u64, Color)> = (0..tree.node_count())
        .map(|v| (tree.id(v), tree.color(v)))
        .collect();
    let edges: Vec<(u64, u64)> = (0..tree.edge_count())
        .map(|e| {
            let [a, b] = tree.endpoints(e);
            (tree.id(a), tree.id(b))
        })
        .collect();
    let ports: BTreeMap<u64, Vec<u64>> = (0..tree.node_count())
        .map(|v| {
            let mut nb: Vec<u64> = tree.neighbors(v).map(|(u, _)| tree.id(u)).collect();
            nb.shuffle(&mut rng);
            (tree.id(v), nb)
        })
        .collect();
    ColoredTree::with_ports(&nodes, &edges, &ports).expect("same structure")
}
