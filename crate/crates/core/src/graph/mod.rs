//! Simple graphs, families of connected subgraphs, and graph constructions.

pub mod families;
pub mod oracle;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{intersects, ObjectCollection, PathMode};
use crate::weight::{self, Weight};

/// Hard cap on vertex counts accepted from files.
pub const MAX_VERTICES: usize = 1 << 22;

/// Undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::GuardExceeded {
                what: "vertex count",
                limit: MAX_VERTICES,
                actual: n,
            });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u},{v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Induced subgraph on `vertices` (relabelled `0..k` in the given order)
    /// together with the local-to-host map.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v]
                    .iter()
                    .map(|&u| local[u])
                    .filter(|&u| u != usize::MAX)
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        (Graph { adj }, vertices.to_vec())
    }

    /// BFS distances from `sources`, stopping at depth `limit` when given.
    /// Unreached vertices get `usize::MAX`.
    pub fn bfs(&self, sources: &[usize], limit: Option<usize>) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            if limit.is_some_and(|l| dist[u] >= l) {
                continue;
            }
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected components of the subgraph induced by the vertices with
    /// `alive[v]` (all vertices when `alive` is `None`). Each component is
    /// sorted; components are ordered by their smallest vertex.
    pub fn components(&self, alive: Option<&[bool]>) -> Vec<Vec<usize>> {
        let n = self.n();
        let is_alive = |v: usize| alive.map_or(true, |a| a[v]);
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || !is_alive(s) {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if !seen[v] && is_alive(v) {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether `set` induces a connected subgraph (false for the empty set).
    pub fn is_connected_subset(&self, set: &[usize]) -> bool {
        let Some(&first) = set.first() else {
            return false;
        };
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        seen[first] = true;
        let mut stack = vec![first];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if inside[v] && !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        let mut distinct = set.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        count == distinct.len()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }
}

/// Graph with non-negative rational vertex weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    pub graph: Graph,
    pub weights: Vec<Weight>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != graph.n() {
            return Err(Error::input(
                "weight vector length differs from vertex count",
            ));
        }
        if !weights.iter().all(weight::is_non_negative) {
            return Err(Error::input("weights must be non-negative"));
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn unit(graph: Graph) -> Self {
        let n = graph.n();
        WeightedGraph {
            graph,
            weights: weight::unit_weights(n),
        }
    }

    pub fn weight_of(&self, set: &[usize]) -> Weight {
        set.iter()
            .fold(Weight::default(), |acc, &v| acc + &self.weights[v])
    }
}

/// Family of connected vertex subsets of a host graph with member weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgraphFamily {
    pub members: Vec<Vec<usize>>,
    #[serde(with = "crate::weight::serde_weight_vec")]
    pub weights: Vec<Weight>,
    /// Declared bound on member sizes.
    pub h: usize,
}

impl SubgraphFamily {
    /// Sorts and deduplicates each member. `h` is the largest member size.
    pub fn new(members: Vec<Vec<usize>>, weights: Vec<Weight>) -> Result<Self> {
        if members.len() != weights.len() {
            return Err(Error::input(
                "family weights length differs from member count",
            ));
        }
        let members: Vec<Vec<usize>> = members
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                m.dedup();
                m
            })
            .collect();
        let h = members.iter().map(Vec::len).max().unwrap_or(0);
        Ok(SubgraphFamily {
            members,
            weights,
            h,
        })
    }

    /// One singleton member per vertex, carrying the vertex weights.
    pub fn singletons(weights: &[Weight]) -> Self {
        SubgraphFamily {
            members: (0..weights.len()).map(|v| vec![v]).collect(),
            weights: weights.to_vec(),
            h: 1,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn weight_of(&self, indices: &[usize]) -> Weight {
        indices
            .iter()
            .fold(Weight::default(), |acc, &j| acc + &self.weights[j])
    }

    /// Checks ranges, sortedness, connectivity, the size bound and weights.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.members.len() != self.weights.len() {
            return Err(Error::input(
                "family weights length differs from member count",
            ));
        }
        for (j, m) in self.members.iter().enumerate() {
            if m.is_empty() {
                return Err(Error::input(format!("family member {j} is empty")));
            }
            if m.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::input(format!(
                    "family member {j} is not sorted and duplicate-free"
                )));
            }
            if m.iter().any(|&v| v >= g.n()) {
                return Err(Error::input(format!(
                    "family member {j} references a missing vertex"
                )));
            }
            if m.len() > self.h {
                return Err(Error::input(format!(
                    "family member {j} exceeds h = {}",
                    self.h
                )));
            }
            if !g.is_connected_subset(m) {
                return Err(Error::input(format!("family member {j} is not connected")));
            }
        }
        if !self.weights.iter().all(weight::is_non_negative) {
            return Err(Error::input("family weights must be non-negative"));
        }
        Ok(())
    }

    /// Members contained in `vertices` (a sorted set) with their indices.
    pub fn restricted_to(&self, inside: &[bool]) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.members[j].iter().all(|&v| inside[v]))
            .collect()
    }
}

/// Pair of vertex sets covering the graph with no edge between the two
/// strict sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Separation {
    pub fn separator(&self) -> Vec<usize> {
        let mut in_b = std::collections::HashSet::with_capacity(self.b.len());
        in_b.extend(self.b.iter().copied());
        self.a
            .iter()
            .copied()
            .filter(|v| in_b.contains(v))
            .collect()
    }

    fn sides(&self, n: usize) -> (Vec<bool>, Vec<bool>) {
        let mut in_a = vec![false; n];
        let mut in_b = vec![false; n];
        for &v in &self.a {
            in_a[v] = true;
        }
        for &v in &self.b {
            in_b[v] = true;
        }
        (in_a, in_b)
    }

    /// `A ∪ B = V` and no edge joins `A∖B` to `B∖A`.
    pub fn is_separation(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.a.iter().chain(&self.b).any(|&v| v >= n) {
            return false;
        }
        let (in_a, in_b) = self.sides(n);
        if (0..n).any(|v| !in_a[v] && !in_b[v]) {
            return false;
        }
        g.edges().all(|(u, v)| {
            let a_only = |x: usize| in_a[x] && !in_b[x];
            let b_only = |x: usize| in_b[x] && !in_a[x];
            !((a_only(u) && b_only(v)) || (b_only(u) && a_only(v)))
        })
    }

    /// Sizes of `A∖B` and `B∖A`.
    pub fn strict_sizes(&self, n: usize) -> (usize, usize) {
        let (in_a, in_b) = self.sides(n);
        let a = (0..n).filter(|&v| in_a[v] && !in_b[v]).count();
        let b = (0..n).filter(|&v| in_b[v] && !in_a[v]).count();
        (a, b)
    }

    /// Both strict sides have at most `2n/3` vertices.
    pub fn is_balanced(&self, n: usize) -> bool {
        let (a, b) = self.strict_sizes(n);
        3 * a <= 2 * n && 3 * b <= 2 * n
    }
}

/// Intersection graph using the collection's own path mode.
pub fn intersection_graph(c: &ObjectCollection) -> Result<Graph> {
    intersection_graph_with_mode(c, c.path_mode())
}

pub fn intersection_graph_with_mode(c: &ObjectCollection, mode: PathMode) -> Result<Graph> {
    let n = c.len();
    let boxes: Vec<_> = c.objects.iter().map(|o| o.bbox()).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a_lo, a_hi) = &boxes[i];
            let (b_lo, b_hi) = &boxes[j];
            let apart = (0..a_lo.len()).any(|k| {
                a_lo[k] > b_hi[k] + crate::geometry::EPS_GEO
                    || b_lo[k] > a_hi[k] + crate::geometry::EPS_GEO
            });
            if !apart && intersects(&c.objects[i], &c.objects[j], mode)? {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// `G^p`: `uv` is an edge iff `1 ≤ dist(u, v) ≤ p`.
pub fn graph_power(g: &Graph, p: usize) -> Result<Graph> {
    if p == 0 {
        return Err(Error::input("graph power needs p ≥ 1"));
    }
    if p == 1 {
        return Ok(g.clone());
    }
    let mut edges = Vec::new();
    for u in 0..g.n() {
        let dist = g.bfs(&[u], Some(p));
        for (v, &d) in dist.iter().enumerate() {
            if v > u && d <= p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(g.n(), &edges)
}

/// Conflict graph of a family: members conflict when they share a vertex or
/// a host edge joins them.
pub fn conflict_graph(g: &Graph, fam: &SubgraphFamily) -> Result<Graph> {
    for (j, m) in fam.members.iter().enumerate() {
        if m.iter().any(|&v| v >= g.n()) {
            return Err(Error::input(format!(
                "family member {j} references a missing vertex"
            )));
        }
        if !g.is_connected_subset(m) {
            return Err(Error::input(format!("family member {j} is not connected")));
        }
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (j, m) in fam.members.iter().enumerate() {
        for &v in m {
            holders[v].push(j);
        }
    }
    let mut edges = Vec::new();
    let mut mark = vec![usize::MAX; fam.len()];
    for (i, m) in fam.members.iter().enumerate() {
        for &v in m {
            for &u in std::iter::once(&v).chain(g.neighbors(v)) {
                for &j in &holders[u] {
                    if j > i && mark[j] != i {
                        mark[j] = i;
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    Graph::from_edges(fam.len(), &edges)
}

/// Smallest distance between a vertex of `a` and a vertex of `b`
/// (`usize::MAX` when disconnected).
pub fn subgraph_distance(g: &Graph, a: &[usize], b: &[usize]) -> usize {
    let dist = g.bfs(a, None);
    b.iter().map(|&v| dist[v]).min().unwrap_or(usize::MAX)
}
