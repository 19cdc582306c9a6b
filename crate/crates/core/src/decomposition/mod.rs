//! Tree decompositions, layerings and general covers, with the operations
//! that transform them.

mod compress;
mod lift;
mod separate;

pub use compress::{cover_from_layering, restrict_to_ball, sqrt_compress, sqrt_parameter};
pub use lift::{lift_td_to_conflict, lift_td_to_power};
pub use separate::{
    balanced_separation_from_td, separation_from_cover, BagSeparation, CoverSeparation,
};

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{oracle, Graph};
use crate::weight::Weight;

/// Tree of bags. Bags are sorted vertex lists; tree edges are stored with
/// the smaller node first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TdJson", into = "TdJson")]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TdJson {
    nodes: Vec<TdNodeJson>,
    tree_edges: Vec<(u64, u64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TdNodeJson {
    id: u64,
    bag: Vec<usize>,
}

impl From<TreeDecomposition> for TdJson {
    fn from(td: TreeDecomposition) -> Self {
        TdJson {
            nodes: td
                .bags
                .into_iter()
                .enumerate()
                .map(|(i, bag)| TdNodeJson { id: i as u64, bag })
                .collect(),
            tree_edges: td
                .edges
                .into_iter()
                .map(|(a, b)| (a as u64, b as u64))
                .collect(),
        }
    }
}

impl TryFrom<TdJson> for TreeDecomposition {
    type Error = String;

    fn try_from(j: TdJson) -> std::result::Result<Self, String> {
        let mut index = HashMap::with_capacity(j.nodes.len());
        for (i, node) in j.nodes.iter().enumerate() {
            if index.insert(node.id, i).is_some() {
                return Err(format!("duplicate node id {}", node.id));
            }
        }
        let mut edges = Vec::with_capacity(j.tree_edges.len());
        for (a, b) in j.tree_edges {
            let (Some(&x), Some(&y)) = (index.get(&a), index.get(&b)) else {
                return Err(format!("tree edge ({a},{b}) references an unknown node"));
            };
            edges.push((x, y));
        }
        Ok(TreeDecomposition::new(
            j.nodes.into_iter().map(|n| n.bag).collect(),
            edges,
        ))
    }
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        let edges = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// One bag holding `vertices`.
    pub fn single_bag(vertices: Vec<usize>) -> Self {
        Self::new(vec![vertices], Vec::new())
    }

    /// Path-shaped decomposition with the bags in order.
    pub fn path(bags: Vec<Vec<usize>>) -> Self {
        let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
        Self::new(bags, edges)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag(&self, t: usize) -> &[usize] {
        &self.bags[t]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Tree adjacency lists (assumes edge endpoints are in range).
    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(a, b) in &self.edges {
            if a < self.len() && b < self.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }

    /// Applies `f` to every bag vertex, dropping vertices mapped to `None`.
    pub fn map_vertices(&self, f: impl Fn(usize) -> Option<usize>) -> Self {
        Self::new(
            self.bags
                .iter()
                .map(|b| b.iter().filter_map(|&v| f(v)).collect())
                .collect(),
            self.edges.clone(),
        )
    }

    /// Nodes whose bag contains each vertex `0..n`.
    pub fn holders(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < n {
                    out[v].push(t);
                }
            }
        }
        out
    }
}

/// First failed condition found by [`validate_td`], with a witness.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TdViolation {
    #[error("decomposition has no nodes")]
    EmptyTree,
    #[error("decomposition tree is not a tree: {0}")]
    NotATree(String),
    #[error("node {node} holds vertex {vertex}, which is not in the host graph")]
    ForeignVertex { node: usize, vertex: usize },
    #[error("(T1) vertex {vertex} lies in no bag")]
    VertexUncovered { vertex: usize },
    #[error("(T2) edge {u}-{v} lies in no bag")]
    EdgeUncovered { u: usize, v: usize },
    #[error("(T3) nodes holding vertex {vertex} are disconnected (nodes {a} and {b})")]
    Disconnected { vertex: usize, a: usize, b: usize },
}

/// Checks (T1)–(T3) and the tree shape.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> Result<(), TdViolation> {
    validate_scoped(g, None, td)
}

/// Validates `td` as a decomposition of `G[vertices]`, with bags written in
/// host labels.
pub fn validate_td_on(
    g: &Graph,
    vertices: &[usize],
    td: &TreeDecomposition,
) -> Result<(), TdViolation> {
    let mut scope = vec![false; g.n()];
    for &v in vertices {
        if v < g.n() {
            scope[v] = true;
        }
    }
    validate_scoped(g, Some(&scope), td)
}

fn validate_scoped(
    g: &Graph,
    scope: Option<&[bool]>,
    td: &TreeDecomposition,
) -> Result<(), TdViolation> {
    let m = td.len();
    if m == 0 {
        return Err(TdViolation::EmptyTree);
    }
    if td.edges.len() != m - 1 {
        return Err(TdViolation::NotATree(format!(
            "{} nodes but {} edges",
            m,
            td.edges.len()
        )));
    }
    for &(a, b) in &td.edges {
        if a >= m || b >= m {
            return Err(TdViolation::NotATree(format!(
                "edge ({a},{b}) references a missing node"
            )));
        }
        if a == b {
            return Err(TdViolation::NotATree(format!("loop at node {a}")));
        }
    }
    let tree = td.tree_adjacency();
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(t) = queue.pop_front() {
        for &s in &tree[t] {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
    }
    if let Some(t) = seen.iter().position(|s| !s) {
        return Err(TdViolation::NotATree(format!(
            "node {t} is not reachable from node 0"
        )));
    }
    let n = g.n();
    let in_scope = |v: usize| scope.map_or(true, |s| s[v]);
    for (t, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v >= n || !in_scope(v)) {
            return Err(TdViolation::ForeignVertex { node: t, vertex: v });
        }
    }
    let holders = td.holders(n);
    if let Some(v) = (0..n).find(|&v| in_scope(v) && holders[v].is_empty()) {
        return Err(TdViolation::VertexUncovered { vertex: v });
    }
    for (u, v) in g.edges() {
        if in_scope(u) && in_scope(v) && !sorted_intersect(&holders[u], &holders[v]) {
            return Err(TdViolation::EdgeUncovered { u, v });
        }
    }
    let mut mark = vec![usize::MAX; m];
    for v in (0..n).filter(|&v| in_scope(v)) {
        let nodes = &holders[v];
        for &t in nodes {
            mark[t] = v;
        }
        let mut reached = 1;
        let mut stack = vec![nodes[0]];
        mark[nodes[0]] = usize::MAX - 1;
        while let Some(t) = stack.pop() {
            for &s in &tree[t] {
                if mark[s] == v {
                    mark[s] = usize::MAX - 1;
                    reached += 1;
                    stack.push(s);
                }
            }
        }
        if reached != nodes.len() {
            let b = nodes
                .iter()
                .copied()
                .find(|&t| mark[t] == v)
                .unwrap_or(nodes[0]);
            return Err(TdViolation::Disconnected {
                vertex: v,
                a: nodes[0],
                b,
            });
        }
        for &t in nodes {
            mark[t] = usize::MAX;
        }
    }
    Ok(())
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Node achieving the maximum together with an independent set of that size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaWitness {
    pub value: usize,
    pub node: usize,
    /// Zero-based layer index, for layered witnesses.
    pub layer: Option<usize>,
    pub independent_set: Vec<usize>,
}

/// `α(T)`: the largest independence number of a bag.
pub fn td_independence_number(g: &Graph, td: &TreeDecomposition) -> Result<usize> {
    Ok(td_independence_witness(g, td)?.value)
}

pub fn td_independence_witness(g: &Graph, td: &TreeDecomposition) -> Result<AlphaWitness> {
    let mut best = AlphaWitness {
        value: 0,
        node: 0,
        layer: None,
        independent_set: Vec::new(),
    };
    let mut cache: HashMap<&[usize], usize> = HashMap::new();
    for (t, bag) in td.bags.iter().enumerate() {
        if bag.len() <= best.value || cache.contains_key(bag.as_slice()) {
            continue;
        }
        let set = oracle::max_independent_subset(g, bag)?;
        cache.insert(bag, set.len());
        if set.len() > best.value {
            best = AlphaWitness {
                value: set.len(),
                node: t,
                layer: None,
                independent_set: set,
            };
        }
    }
    Ok(best)
}

/// Largest `α(G[X_t ∩ V_i])` over all bags and layers.
pub fn layered_independence_number(
    g: &Graph,
    td: &TreeDecomposition,
    layering: &Layering,
) -> Result<usize> {
    Ok(layered_independence_witness(g, td, layering)?.value)
}

pub fn layered_independence_witness(
    g: &Graph,
    td: &TreeDecomposition,
    layering: &Layering,
) -> Result<AlphaWitness> {
    let layer_of = layering.layer_of(g.n())?;
    let mut best = AlphaWitness {
        value: 0,
        node: 0,
        layer: None,
        independent_set: Vec::new(),
    };
    let mut cache: HashMap<Vec<usize>, usize> = HashMap::new();
    for (t, bag) in td.bags.iter().enumerate() {
        let mut groups: Vec<(usize, usize)> = bag.iter().map(|&v| (layer_of[v], v)).collect();
        groups.sort_unstable();
        for chunk in groups.chunk_by(|a, b| a.0 == b.0) {
            let part: Vec<usize> = chunk.iter().map(|&(_, v)| v).collect();
            if part.len() <= best.value || cache.contains_key(&part) {
                continue;
            }
            let set = oracle::max_independent_subset(g, &part)?;
            if set.len() > best.value {
                best = AlphaWitness {
                    value: set.len(),
                    node: t,
                    layer: Some(chunk[0].0),
                    independent_set: set.clone(),
                };
            }
            cache.insert(part, set.len());
        }
    }
    Ok(best)
}

/// Ordered partition of the vertices. Layer `i` of the list is layer `i+1`
/// in one-based numbering; trailing empty layers are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layering {
    layers: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LayeringViolation {
    #[error("vertex {vertex} appears in {count} layers")]
    NotPartition { vertex: usize, count: usize },
    #[error("layer member {vertex} is not a vertex of the host graph")]
    ForeignVertex { vertex: usize },
    #[error("edge {u}-{v} joins layers {lu} and {lv}")]
    EdgeSpan {
        u: usize,
        v: usize,
        lu: usize,
        lv: usize,
    },
}

impl Layering {
    pub fn from_layers(layers: Vec<Vec<usize>>) -> Self {
        let mut layers: Vec<Vec<usize>> = layers
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l
            })
            .collect();
        while layers.last().is_some_and(Vec::is_empty) {
            layers.pop();
        }
        Layering { layers }
    }

    /// Layering from zero-based layer indices.
    pub fn from_assignment(layer_of: &[usize]) -> Self {
        let count = layer_of.iter().max().map_or(0, |m| m + 1);
        let mut layers = vec![Vec::new(); count];
        for (v, &l) in layer_of.iter().enumerate() {
            layers[l].push(v);
        }
        Self::from_layers(layers)
    }

    /// Everything in one layer.
    pub fn single(n: usize) -> Self {
        Self::from_layers(vec![(0..n).collect()])
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Zero-based layer index of each vertex; fails unless the layers
    /// partition `0..n`.
    pub fn layer_of(&self, n: usize) -> Result<Vec<usize>, LayeringViolation> {
        let mut out = vec![usize::MAX; n];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                if v >= n {
                    return Err(LayeringViolation::ForeignVertex { vertex: v });
                }
                if out[v] != usize::MAX {
                    return Err(LayeringViolation::NotPartition {
                        vertex: v,
                        count: 2,
                    });
                }
                out[v] = i;
            }
        }
        if let Some(v) = out.iter().position(|&l| l == usize::MAX) {
            return Err(LayeringViolation::NotPartition {
                vertex: v,
                count: 0,
            });
        }
        Ok(out)
    }

    /// Partition check plus the edge-span condition. Reported layer numbers
    /// are one-based.
    pub fn check(&self, g: &Graph) -> Result<(), LayeringViolation> {
        let l = self.layer_of(g.n())?;
        for (u, v) in g.edges() {
            if l[u].abs_diff(l[v]) > 1 {
                return Err(LayeringViolation::EdgeSpan {
                    u,
                    v,
                    lu: l[u] + 1,
                    lv: l[v] + 1,
                });
            }
        }
        Ok(())
    }
}

/// Multiset of vertex sets, each with a decomposition of the subgraph it
/// induces (bags in host labels).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralCover {
    /// Declared fraction of elements each vertex belongs to.
    #[serde(with = "crate::weight::serde_weight")]
    pub beta: Weight,
    /// Declared bound on every element's `α(T)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_alpha: Option<u64>,
    pub elements: Vec<CoverElement>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverElement {
    pub vertices: Vec<usize>,
    pub td: TreeDecomposition,
    pub provenance: Provenance,
}

/// Where a cover element came from.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub construction: String,
    /// Grid shift of a fat-object cover element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<u64>>,
    /// Deleted layer residue of a layering cover element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_alpha: Option<u64>,
}

impl GeneralCover {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of elements holding each vertex.
    pub fn membership_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for e in &self.elements {
            for &v in &e.vertices {
                if v < n {
                    counts[v] += 1;
                }
            }
        }
        counts
    }

    /// Smallest per-vertex coverage fraction (1 for the empty graph).
    pub fn min_coverage(&self, n: usize) -> Weight {
        let m = self.elements.len();
        if n == 0 {
            return crate::weight::one();
        }
        if m == 0 {
            return Weight::zero();
        }
        let low = self.membership_counts(n).into_iter().min().unwrap_or(0);
        crate::weight::ratio(low as i64, m as i64)
    }

    /// Every element decomposition is valid for its induced subgraph and
    /// every vertex meets the declared coverage.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (i, e) in self.elements.iter().enumerate() {
            if e.vertices.windows(2).any(|w| w[0] >= w[1]) || e.vertices.iter().any(|&v| v >= g.n())
            {
                return Err(Error::input(format!(
                    "cover element {i} has an invalid vertex list"
                )));
            }
            validate_td_on(g, &e.vertices, &e.td)
                .map_err(|v| Error::BoundViolated(format!("cover element {i}: {v}")))?;
        }
        let got = self.min_coverage(g.n());
        if got < self.beta {
            return Err(Error::BoundViolated(format!(
                "coverage {} below declared {}",
                crate::weight::format_rational(&got),
                crate::weight::format_rational(&self.beta)
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Layering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} layers", self.layers.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn single_bag_is_valid() {
        let g = path_graph(4);
        assert!(validate_td(&g, &TreeDecomposition::single_bag((0..4).collect())).is_ok());
    }

    #[test]
    fn uncovered_edge_is_reported() {
        let g = path_graph(3);
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![2]]);
        assert_eq!(
            validate_td(&g, &td),
            Err(TdViolation::EdgeUncovered { u: 1, v: 2 })
        );
    }

    #[test]
    fn disconnected_holders_are_reported() {
        let g = path_graph(3);
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2], vec![0]]);
        assert!(matches!(
            validate_td(&g, &td),
            Err(TdViolation::Disconnected { vertex: 0, .. })
        ));
    }

    #[test]
    fn shape_errors() {
        let g = path_graph(2);
        let cyc = TreeDecomposition::new(
            vec![vec![0, 1], vec![0], vec![1]],
            vec![(0, 1), (1, 2), (2, 0)],
        );
        assert!(matches!(
            validate_td(&g, &cyc),
            Err(TdViolation::NotATree(_))
        ));
        let forest = TreeDecomposition::new(vec![vec![0, 1], vec![0]], vec![]);
        assert!(matches!(
            validate_td(&g, &forest),
            Err(TdViolation::NotATree(_))
        ));
        let foreign = TreeDecomposition::single_bag(vec![0, 1, 5]);
        assert_eq!(
            validate_td(&g, &foreign),
            Err(TdViolation::ForeignVertex { node: 0, vertex: 5 })
        );
        assert_eq!(
            validate_td(&g, &TreeDecomposition::single_bag(vec![1])),
            Err(TdViolation::VertexUncovered { vertex: 0 })
        );
    }

    #[test]
    fn alpha_of_bags() {
        let g = path_graph(5);
        let td = TreeDecomposition::path((1..5).map(|i| vec![i - 1, i]).collect());
        assert_eq!(td_independence_number(&g, &td).unwrap(), 1);
        assert_eq!(
            td_independence_number(
                &Graph::empty(4),
                &TreeDecomposition::single_bag(vec![0, 1, 2, 3])
            )
            .unwrap(),
            4
        );
        let one = Layering::single(5);
        assert_eq!(layered_independence_number(&g, &td, &one).unwrap(), 1);
        let big = TreeDecomposition::single_bag((0..5).collect());
        assert_eq!(layered_independence_number(&g, &big, &one).unwrap(), 3);
        let split = Layering::from_assignment(&[0, 0, 1, 1, 2]);
        assert_eq!(layered_independence_number(&g, &big, &split).unwrap(), 1);
    }

    #[test]
    fn layering_checks() {
        let g = path_graph(3);
        assert!(Layering::from_assignment(&[0, 1, 2]).check(&g).is_ok());
        assert_eq!(
            Layering::from_assignment(&[0, 2, 2]).check(&g),
            Err(LayeringViolation::EdgeSpan {
                u: 0,
                v: 1,
                lu: 1,
                lv: 3
            })
        );
        let dup = Layering::from_layers(vec![vec![0, 1], vec![1, 2]]);
        assert!(dup.check(&g).is_err());
        let trimmed = Layering::from_layers(vec![vec![0, 1, 2], vec![], vec![]]);
        assert_eq!(trimmed.len(), 1);
    }
}
