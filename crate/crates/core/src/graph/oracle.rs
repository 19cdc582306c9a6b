//! Exhaustive oracles: independence numbers, maximum-weight independent
//! sets and distance-d packings on small inputs.
//!
//! Ties between optimal solutions are broken towards the set whose
//! characteristic vector is lexicographically largest, i.e. the set that
//! contains the smallest index on which two optima differ. The tree
//! decomposition solver uses the same order, so both return identical sets.

use super::{Graph, SubgraphFamily, WeightedGraph};
use crate::error::{Error, Result};
use crate::weight::scaled::{self, Accum, Scaled};
use crate::weight::Weight;

/// Largest connected piece [`alpha_exact`] accepts.
pub const ALPHA_GUARD: usize = 128;
/// Default vertex limit for [`bruteforce_mwis`].
pub const MWIS_GUARD: usize = 30;
/// Largest vertex limit the bitmask search can represent.
pub const MWIS_HARD_LIMIT: usize = 64;
/// Member limit for [`bruteforce_packing`].
pub const PACKING_GUARD: usize = 20;

/// `α(G[subset])`.
pub fn alpha_exact(g: &Graph, subset: &[usize]) -> Result<usize> {
    Ok(max_independent_subset(g, subset)?.len())
}

/// A maximum independent set of `G[subset]`, sorted. Each connected piece
/// of the induced subgraph may have at most [`ALPHA_GUARD`] vertices.
pub fn max_independent_subset(g: &Graph, subset: &[usize]) -> Result<Vec<usize>> {
    let mut verts = subset.to_vec();
    verts.sort_unstable();
    verts.dedup();
    let (h, map) = g.induced(&verts);
    let mut out = Vec::new();
    for comp in h.components(None) {
        if comp.len() > ALPHA_GUARD {
            return Err(Error::GuardExceeded {
                what: "independence-number component",
                limit: ALPHA_GUARD,
                actual: comp.len(),
            });
        }
        let mut local = vec![usize::MAX; h.n()];
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let adj: Vec<u128> = comp
            .iter()
            .map(|&v| {
                h.neighbors(v)
                    .iter()
                    .fold(0u128, |m, &u| m | 1u128 << local[u])
            })
            .collect();
        let full = if comp.len() == 128 {
            u128::MAX
        } else {
            (1u128 << comp.len()) - 1
        };
        let mut best = mis(&adj, full);
        while best != 0 {
            let i = best.trailing_zeros() as usize;
            out.push(map[comp[i]]);
            best &= best - 1;
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn mis(adj: &[u128], p: u128) -> u128 {
    if p == 0 {
        return 0;
    }
    let mut q = p;
    let mut pivot = 0;
    let mut pivot_deg = 0;
    while q != 0 {
        let v = q.trailing_zeros() as usize;
        q &= q - 1;
        let deg = (adj[v] & p).count_ones();
        if deg <= 1 {
            let bit = 1u128 << v;
            return bit | mis(adj, p & !(adj[v] | bit));
        }
        if deg > pivot_deg {
            pivot = v;
            pivot_deg = deg;
        }
    }
    let bit = 1u128 << pivot;
    let with = bit | mis(adj, p & !(adj[pivot] | bit));
    let without = mis(adj, p & !bit);
    if without.count_ones() > with.count_ones() {
        without
    } else {
        with
    }
}

/// Greedy independent set by repeatedly taking a minimum-degree vertex.
pub fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut out = Vec::new();
    while let Some(v) = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)) {
        out.push(v);
        let mut removed = vec![v];
        removed.extend(g.neighbors(v).iter().copied().filter(|&u| alive[u]));
        for &u in &removed {
            alive[u] = false;
        }
        for &u in &removed {
            for &w in g.neighbors(u) {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Maximum-weight independent set for graphs with at most
/// [`MWIS_GUARD`] vertices.
pub fn bruteforce_mwis(g: &WeightedGraph) -> Result<(Vec<usize>, Weight)> {
    bruteforce_mwis_with_limit(g, MWIS_GUARD)
}

/// As [`bruteforce_mwis`] with a caller-chosen limit (at most 64).
pub fn bruteforce_mwis_with_limit(g: &WeightedGraph, limit: usize) -> Result<(Vec<usize>, Weight)> {
    let n = g.graph.n();
    let limit = limit.min(MWIS_HARD_LIMIT);
    if n > limit {
        return Err(Error::GuardExceeded {
            what: "brute-force vertex count",
            limit,
            actual: n,
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| {
            g.graph
                .neighbors(v)
                .iter()
                .fold(0u64, |m, &u| m | 1u64 << u)
        })
        .collect();
    Ok(best_independent(&adj, &g.weights))
}

fn best_independent(adj: &[u64], weights: &[Weight]) -> (Vec<usize>, Weight) {
    let (nums, den) = scaled::scale(weights);
    let (mask, total) = match nums {
        Scaled::Small(w) => {
            let (m, t) = search(adj, &w);
            (m, scaled::unscale(&t, &den))
        }
        Scaled::Big(w) => {
            let (m, t) = search(adj, &w);
            (m, scaled::unscale(&t, &den))
        }
    };
    let set = (0..adj.len()).filter(|&v| mask >> v & 1 == 1).collect();
    (set, total)
}

struct Search<'a, W> {
    adj: &'a [u64],
    w: &'a [W],
    best: Option<(u64, W)>,
}

impl<W: Accum> Search<'_, W> {
    fn go(&mut self, p: u64, chosen: u64, cur: W) {
        if p == 0 {
            if self.best.as_ref().map_or(true, |(_, b)| cur > *b) {
                self.best = Some((chosen, cur));
            }
            return;
        }
        if let Some((_, b)) = &self.best {
            let mut bound = cur.clone();
            let mut q = p;
            while q != 0 {
                bound = bound.plus(&self.w[q.trailing_zeros() as usize]);
                q &= q - 1;
            }
            if bound <= *b {
                return;
            }
        }
        let v = p.trailing_zeros() as usize;
        let bit = 1u64 << v;
        self.go(p & !self.adj[v] & !bit, chosen | bit, cur.plus(&self.w[v]));
        self.go(p & !bit, chosen, cur);
    }
}

/// Include-first depth-first search: leaves are visited in decreasing
/// characteristic-vector order, so the first optimum found wins ties.
fn search<W: Accum>(adj: &[u64], w: &[W]) -> (u64, W) {
    let n = adj.len();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = Search { adj, w, best: None };
    s.go(full, 0, W::zero());
    s.best.unwrap_or((0, W::zero()))
}

/// Maximum-weight family of members at pairwise distance at least `d`.
pub fn bruteforce_packing(
    g: &Graph,
    fam: &SubgraphFamily,
    d: usize,
) -> Result<(Vec<usize>, Weight)> {
    if d < 2 {
        return Err(Error::input("packing distance must be at least 2"));
    }
    if fam.len() > PACKING_GUARD {
        return Err(Error::GuardExceeded {
            what: "brute-force family size",
            limit: PACKING_GUARD,
            actual: fam.len(),
        });
    }
    fam.validate(g)?;
    let m = fam.len();
    let mut adj = vec![0u64; m];
    for i in 0..m {
        let dist = g.bfs(&fam.members[i], Some(d - 1));
        for j in 0..m {
            if i != j && fam.members[j].iter().any(|&v| dist[v] < d) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    Ok(best_independent(&adj, &fam.weights))
}
