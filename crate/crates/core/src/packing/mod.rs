//! Exact maximum weight independent set and independent packing by dynamic
//! programming over tree decompositions.
//!
//! The running time is `n^{O(k)}` per node where `k` is the independence
//! number of the decomposition, since states are the independent subsets of
//! a bag. Packings reduce to independent sets in the conflict graph.

mod dp;
mod nice;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use nice::{to_nice, NiceKind, NiceNode, NiceTreeDecomposition};

use crate::decomposition::{lift_td_to_conflict, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{conflict_graph, graph_power, Graph, SubgraphFamily, WeightedGraph};
use crate::weight::scaled::{self, Scaled};
use crate::weight::Weight;

pub const DEFAULT_MAX_STATES: usize = 4_000_000;

/// Environment variable overriding [`DEFAULT_MAX_STATES`].
pub const MAX_STATES_ENV: &str = "TREEALPHA_MAX_STATES";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Largest number of DP states allowed at a single node.
    pub max_states: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

impl SolverOptions {
    pub fn from_env() -> Self {
        let max_states = std::env::var(MAX_STATES_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_STATES);
        SolverOptions { max_states }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DpStats {
    pub nice_nodes: usize,
    pub total_states: usize,
    pub max_states: usize,
    pub time_ms: f64,
}

/// Chosen vertices (or family members) with their total weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub set: Vec<usize>,
    pub weight: Weight,
    pub stats: DpStats,
}

pub fn mwis_on_td(g: &WeightedGraph, td: &TreeDecomposition) -> Result<Solution> {
    mwis_on_td_with(g, td, &SolverOptions::default())
}

/// Maximum weight independent set of `g`, ties broken towards the
/// lexicographically smallest vertex set.
pub fn mwis_on_td_with(
    g: &WeightedGraph,
    td: &TreeDecomposition,
    opts: &SolverOptions,
) -> Result<Solution> {
    if g.weights.len() != g.graph.n() {
        return Err(Error::input(
            "weight vector length differs from vertex count",
        ));
    }
    if !g.weights.iter().all(crate::weight::is_non_negative) {
        return Err(Error::input("weights must be non-negative"));
    }
    let start = Instant::now();
    let nice = to_nice(&g.graph, td)?;
    let (scaled_weights, den) = scaled::scale(&g.weights);
    let (set, weight, mut stats) = match scaled_weights {
        Scaled::Small(ws) => {
            let (set, w, stats) = dp::solve(&g.graph, &ws, &nice, opts.max_states)?;
            (set, scaled::unscale(&w, &den), stats)
        }
        Scaled::Big(ws) => {
            let (set, w, stats) = dp::solve(&g.graph, &ws, &nice, opts.max_states)?;
            (set, scaled::unscale(&w, &den), stats)
        }
    };
    stats.time_ms = start.elapsed().as_secs_f64() * 1e3;
    debug_assert!(g.graph.is_independent(&set));
    Ok(Solution { set, weight, stats })
}

pub fn max_weight_independent_packing(
    g: &Graph,
    fam: &SubgraphFamily,
    td: &TreeDecomposition,
) -> Result<Solution> {
    max_weight_independent_packing_with(g, fam, td, &SolverOptions::default())
}

/// Maximum weight set of family members pairwise at distance at least 2,
/// solved as an independent set of the conflict graph.
pub fn max_weight_independent_packing_with(
    g: &Graph,
    fam: &SubgraphFamily,
    td: &TreeDecomposition,
    opts: &SolverOptions,
) -> Result<Solution> {
    fam.validate(g)?;
    crate::decomposition::validate_td(g, td)?;
    let conflict = conflict_graph(g, fam)?;
    let lifted = lift_td_to_conflict(g, td, fam)?;
    let wg = WeightedGraph::new(conflict, fam.weights.clone())?;
    let sol = mwis_on_td_with(&wg, &lifted, opts)?;
    if !is_distance_packing(g, fam, &sol.set, 2) {
        return Err(Error::BoundViolated(
            "packing members are not pairwise at distance ≥ 2".into(),
        ));
    }
    Ok(sol)
}

pub fn distance_d_packing_exact(
    g: &Graph,
    fam: &SubgraphFamily,
    td_power: &TreeDecomposition,
    d: usize,
) -> Result<Solution> {
    distance_d_packing_exact_with(g, fam, td_power, d, &SolverOptions::default())
}

/// Maximum weight set of members pairwise at distance at least `d` (even),
/// given a decomposition of `G^{d−1}`.
pub fn distance_d_packing_exact_with(
    g: &Graph,
    fam: &SubgraphFamily,
    td_power: &TreeDecomposition,
    d: usize,
    opts: &SolverOptions,
) -> Result<Solution> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::input(format!(
            "distance d = {d} must be even and at least 2"
        )));
    }
    fam.validate(g)?;
    let power = graph_power(g, d - 1)?;
    let sol = max_weight_independent_packing_with(&power, fam, td_power, opts)?;
    if !is_distance_packing(g, fam, &sol.set, d) {
        return Err(Error::BoundViolated(format!(
            "packing members are not pairwise at distance ≥ {d}"
        )));
    }
    Ok(sol)
}

/// Whether the chosen members are pairwise at distance at least `d` in `g`
/// (vertex-disjoint when `d ≥ 1`).
pub fn is_distance_packing(g: &Graph, fam: &SubgraphFamily, chosen: &[usize], d: usize) -> bool {
    let mut owner = vec![usize::MAX; g.n()];
    for &j in chosen {
        for &v in &fam.members[j] {
            if owner[v] != usize::MAX {
                return d == 0;
            }
            owner[v] = j;
        }
    }
    if d <= 1 {
        return true;
    }
    chosen.iter().all(|&j| {
        let dist = g.bfs(&fam.members[j], Some(d - 1));
        (0..g.n()).all(|v| dist[v] >= d || owner[v] == usize::MAX || owner[v] == j)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{self, int};

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn edge_bags(n: usize) -> TreeDecomposition {
        TreeDecomposition::path((1..n).map(|i| vec![i - 1, i]).collect())
    }

    #[test]
    fn weighted_triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let wg = WeightedGraph::new(g, vec![int(1), int(2), int(3)]).unwrap();
        let sol = mwis_on_td(&wg, &TreeDecomposition::single_bag(vec![0, 1, 2])).unwrap();
        assert_eq!(sol.set, vec![2]);
        assert_eq!(sol.weight, int(3));
    }

    #[test]
    fn edgeless_takes_everything() {
        let wg = WeightedGraph::unit(Graph::empty(4));
        let td = TreeDecomposition::path((0..4).map(|v| vec![v]).collect());
        assert_eq!(mwis_on_td(&wg, &td).unwrap().set, vec![0, 1, 2, 3]);
    }

    #[test]
    fn ties_prefer_small_indices() {
        let wg = WeightedGraph::unit(path_graph(4));
        let sol = mwis_on_td(&wg, &edge_bags(4)).unwrap();
        assert_eq!(sol.set, vec![0, 2]);
    }

    #[test]
    fn induced_matching_on_p4() {
        let g = path_graph(4);
        let fam = SubgraphFamily::new(
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            weight::unit_weights(3),
        )
        .unwrap();
        let sol = max_weight_independent_packing(&g, &fam, &edge_bags(4)).unwrap();
        assert_eq!(sol.weight, int(1));
    }

    #[test]
    fn distance_four_on_p7() {
        let g = path_graph(7);
        let fam = SubgraphFamily::singletons(&weight::unit_weights(7));
        let g3 = graph_power(&g, 3).unwrap();
        let td = TreeDecomposition::path((0..4).map(|i| (i..i + 4).collect()).collect());
        assert!(crate::decomposition::validate_td(&g3, &td).is_ok());
        let sol = distance_d_packing_exact(&g, &fam, &td, 4).unwrap();
        assert_eq!(sol.set, vec![0, 4]);
        assert_eq!(sol.weight, int(2));
        assert!(distance_d_packing_exact(&g, &fam, &td, 3).is_err());
    }

    #[test]
    fn state_cap() {
        let wg = WeightedGraph::unit(Graph::empty(12));
        let td = TreeDecomposition::single_bag((0..12).collect());
        let err = mwis_on_td_with(&wg, &td, &SolverOptions { max_states: 100 }).unwrap_err();
        assert!(err.is_guard());
    }
}
