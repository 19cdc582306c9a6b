use serde::{Deserialize, Serialize};

use crate::decomposition::{validate_td, TreeDecomposition};
use crate::error::Result;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertex", rename_all = "snake_case")]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted nice tree decomposition. Nodes are stored children-first, so
/// iterating in index order is a valid bottom-up traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    /// The same decomposition as a plain tree decomposition.
    pub fn to_td(&self) -> TreeDecomposition {
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(t, n)| n.children.iter().map(move |&c| (c, t)))
            .collect();
        TreeDecomposition::new(self.nodes.iter().map(|n| n.bag.clone()).collect(), edges)
    }

    /// Checks the node-kind rules: leaves are empty, introduce and forget
    /// change exactly one vertex, joins copy their children's bags, and the
    /// root is empty.
    pub fn is_well_formed(&self) -> bool {
        let ok = |n: &NiceNode| match n.kind {
            NiceKind::Leaf => n.children.is_empty() && n.bag.is_empty(),
            NiceKind::Introduce(v) => {
                n.children.len() == 1 && {
                    let c = &self.nodes[n.children[0]].bag;
                    n.bag.contains(&v)
                        && !c.contains(&v)
                        && c.len() + 1 == n.bag.len()
                        && c.iter().all(|u| n.bag.contains(u))
                }
            }
            NiceKind::Forget(v) => {
                n.children.len() == 1 && {
                    let c = &self.nodes[n.children[0]].bag;
                    !n.bag.contains(&v)
                        && c.contains(&v)
                        && n.bag.len() + 1 == c.len()
                        && n.bag.iter().all(|u| c.contains(u))
                }
            }
            NiceKind::Join => {
                n.children.len() == 2 && n.children.iter().all(|&c| self.nodes[c].bag == n.bag)
            }
        };
        !self.nodes.is_empty()
            && self
                .nodes
                .iter()
                .enumerate()
                .all(|(t, n)| n.children.iter().all(|&c| c < t) && ok(n))
            && self.nodes[self.root()].bag.is_empty()
    }
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    /// Chain of forgets then introduces from `child` (with bag `from`) up to
    /// bag `to`. Both bags are sorted.
    fn bridge(&mut self, mut child: usize, from: &[usize], to: &[usize]) -> usize {
        let mut bag = from.to_vec();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            bag.retain(|&u| u != v);
            child = self.push(NiceKind::Forget(v), bag.clone(), vec![child]);
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            let at = bag.binary_search(&v).unwrap_err();
            bag.insert(at, v);
            child = self.push(NiceKind::Introduce(v), bag.clone(), vec![child]);
        }
        child
    }
}

/// Converts a valid decomposition of `g` into a nice one rooted at node 0.
pub fn to_nice(g: &Graph, td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    validate_td(g, td)?;
    let tree = td.tree_adjacency();
    // Iterative post-order from node 0.
    let mut parent = vec![usize::MAX; td.len()];
    let mut order = Vec::with_capacity(td.len());
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(t) = stack.pop() {
        order.push(t);
        for &s in &tree[t] {
            if parent[s] == usize::MAX {
                parent[s] = t;
                stack.push(s);
            }
        }
    }
    let mut b = Builder { nodes: Vec::new() };
    let mut top = vec![usize::MAX; td.len()];
    for &t in order.iter().rev() {
        let bag = td.bag(t);
        let kids: Vec<usize> = tree[t]
            .iter()
            .copied()
            .filter(|&s| s != t && parent[s] == t)
            .collect();
        let mut tops: Vec<usize> = kids
            .iter()
            .map(|&c| b.bridge(top[c], td.bag(c), bag))
            .collect();
        if tops.is_empty() {
            let leaf = b.push(NiceKind::Leaf, Vec::new(), Vec::new());
            tops.push(b.bridge(leaf, &[], bag));
        }
        let mut acc = tops[0];
        for &other in &tops[1..] {
            acc = b.push(NiceKind::Join, bag.to_vec(), vec![acc, other]);
        }
        top[t] = acc;
    }
    b.bridge(top[0], td.bag(0), &[]);
    Ok(NiceTreeDecomposition { nodes: b.nodes })
}
