use std::collections::HashMap;

use super::nice::{NiceKind, NiceTreeDecomposition};
use super::DpStats;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weight::scaled::Accum;

/// Bitset over vertices ordered so that a set holding a smaller index
/// compares greater. Combined with weight this gives the tie-break towards
/// lexicographically smallest solutions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct VertexSet(Vec<u64>);

impl VertexSet {
    pub(crate) fn empty(n: usize) -> Self {
        VertexSet(vec![0; n.div_ceil(64)])
    }

    fn bit(v: usize) -> u64 {
        1u64 << (63 - v % 64)
    }

    pub(crate) fn insert(&mut self, v: usize) {
        self.0[v / 64] |= Self::bit(v);
    }

    pub(crate) fn union(&self, other: &Self) -> Self {
        VertexSet(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    pub(crate) fn to_vec(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let lead = rest.leading_zeros() as usize;
                out.push(64 * w + lead);
                rest &= !(1u64 << (63 - lead));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Entry<W> {
    w: W,
    set: VertexSet,
}

impl<W: Accum> Entry<W> {
    fn beats(&self, other: &Self) -> bool {
        (&self.w, &self.set) > (&other.w, &other.set)
    }
}

type Table<W> = HashMap<Vec<usize>, Entry<W>>;

/// Maximum weight independent set over a nice decomposition. States are the
/// independent traces of each bag; every state carries the best partial
/// solution below it, so no back-pointers are kept.
pub(crate) fn solve<W: Accum>(
    g: &Graph,
    weights: &[W],
    nice: &NiceTreeDecomposition,
    cap: usize,
) -> Result<(Vec<usize>, W, DpStats)> {
    let n = g.n();
    let nodes = nice.nodes();
    let mut tables: Vec<Option<Table<W>>> = vec![None; nodes.len()];
    let mut stats = DpStats {
        nice_nodes: nodes.len(),
        ..Default::default()
    };
    for (t, node) in nodes.iter().enumerate() {
        let mut take = |c: usize| tables[c].take().expect("child table is consumed once");
        let table: Table<W> = match node.kind {
            NiceKind::Leaf => HashMap::from([(
                Vec::new(),
                Entry {
                    w: W::zero(),
                    set: VertexSet::empty(n),
                },
            )]),
            NiceKind::Introduce(v) => {
                let child = take(node.children[0]);
                let mut out = HashMap::with_capacity(child.len() * 2);
                for (trace, e) in child {
                    if trace.iter().all(|&u| !g.has_edge(u, v)) {
                        let mut bigger = trace.clone();
                        let at = bigger.binary_search(&v).unwrap_err();
                        bigger.insert(at, v);
                        let mut set = e.set.clone();
                        set.insert(v);
                        out.insert(
                            bigger,
                            Entry {
                                w: e.w.plus(&weights[v]),
                                set,
                            },
                        );
                    }
                    out.insert(trace, e);
                }
                out
            }
            NiceKind::Forget(v) => {
                let child = take(node.children[0]);
                let mut out: Table<W> = HashMap::with_capacity(child.len());
                for (mut trace, e) in child {
                    trace.retain(|&u| u != v);
                    match out.get(&trace) {
                        Some(old) if !e.beats(old) => {}
                        _ => {
                            out.insert(trace, e);
                        }
                    }
                }
                out
            }
            NiceKind::Join => {
                let left = take(node.children[0]);
                let right = take(node.children[1]);
                let (small, large) = if left.len() <= right.len() {
                    (left, right)
                } else {
                    (right, left)
                };
                let mut out = HashMap::with_capacity(small.len());
                for (trace, a) in small {
                    if let Some(b) = large.get(&trace) {
                        let shared = trace
                            .iter()
                            .fold(W::zero(), |acc, &u| acc.plus(&weights[u]));
                        let w = a.w.plus(&b.w).minus(&shared);
                        out.insert(
                            trace,
                            Entry {
                                w,
                                set: a.set.union(&b.set),
                            },
                        );
                    }
                }
                out
            }
        };
        if table.len() > cap {
            return Err(Error::GuardExceeded {
                what: "DP states per node",
                limit: cap,
                actual: table.len(),
            });
        }
        stats.total_states += table.len();
        stats.max_states = stats.max_states.max(table.len());
        tables[t] = Some(table);
    }
    let root = tables[nice.root()].take().expect("root table");
    let best = root.into_values().next().expect("root has the empty trace");
    Ok((best.set.to_vec(), best.w, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_order() {
        let mut a = VertexSet::empty(70);
        a.insert(0);
        let mut b = VertexSet::empty(70);
        b.insert(1);
        b.insert(65);
        assert!(a > b);
        assert_eq!(b.to_vec(), vec![1, 65]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 65]);
    }
}
