//! Subgraph families for the packing specializations of independent set.

use super::{Graph, SubgraphFamily};
use crate::error::{Error, Result};
use crate::weight::{self, Weight};

/// Largest pattern accepted by [`f_copies`].
pub const PATTERN_GUARD: usize = 6;
/// Largest family the enumerators will build.
pub const FAMILY_GUARD: usize = 1 << 20;

/// Singletons with the given vertex weights (plain independent set).
pub fn independent_set_family(weights: &[Weight]) -> SubgraphFamily {
    SubgraphFamily::singletons(weights)
}

/// One member per edge with unit weights (induced matching).
pub fn induced_matching_family(g: &Graph) -> SubgraphFamily {
    let members: Vec<Vec<usize>> = g.edges().map(|(u, v)| vec![u, v]).collect();
    let weights = weight::unit_weights(members.len());
    SubgraphFamily {
        members,
        weights,
        h: 2,
    }
}

/// All vertices and edges, each weighted by its vertex count (dissociation
/// set).
pub fn dissociation_family(g: &Graph) -> SubgraphFamily {
    let mut members: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    members.extend(g.edges().map(|(u, v)| vec![u, v]));
    let weights = members
        .iter()
        .map(|m| weight::int(m.len() as i64))
        .collect();
    SubgraphFamily {
        members,
        weights,
        h: 2,
    }
}

/// Every connected vertex set of size at most `h`, each exactly once, in
/// lexicographic order.
pub fn connected_subsets(g: &Graph, h: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if h == 0 {
        return Ok(out);
    }
    let mut in_sub = vec![false; g.n()];
    let mut near = vec![0usize; g.n()];
    for v in 0..g.n() {
        let ext: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        in_sub[v] = true;
        mark(g, v, &mut near, 1);
        extend(g, v, h, &mut vec![v], ext, &mut in_sub, &mut near, &mut out)?;
        mark(g, v, &mut near, -1);
        in_sub[v] = false;
    }
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn mark(g: &Graph, v: usize, near: &mut [usize], delta: isize) {
    for &u in g.neighbors(v) {
        near[u] = (near[u] as isize + delta) as usize;
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    root: usize,
    h: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    in_sub: &mut [bool],
    near: &mut [usize],
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    out.push(sub.clone());
    if out.len() > FAMILY_GUARD {
        return Err(Error::GuardExceeded {
            what: "connected subsets",
            limit: FAMILY_GUARD,
            actual: out.len(),
        });
    }
    if sub.len() == h {
        return Ok(());
    }
    while let Some(w) = ext.pop() {
        // Exclusive neighbours of w: outside the set and not adjacent to it.
        let mut next = ext.clone();
        next.extend(
            g.neighbors(w)
                .iter()
                .copied()
                .filter(|&u| u > root && !in_sub[u] && near[u] == 0 && !ext.contains(&u)),
        );
        sub.push(w);
        in_sub[w] = true;
        mark(g, w, near, 1);
        extend(g, root, h, sub, next, in_sub, near, out)?;
        mark(g, w, near, -1);
        in_sub[w] = false;
        sub.pop();
    }
    Ok(())
}

/// Vertex sets of the copies of a connected pattern `f` (not necessarily
/// induced), each with unit weight.
pub fn f_copies(g: &Graph, f: &Graph) -> Result<SubgraphFamily> {
    let k = f.n();
    if k == 0 || !f.is_connected_subset(&(0..k).collect::<Vec<_>>()) {
        return Err(Error::input("pattern must be a non-empty connected graph"));
    }
    if k > PATTERN_GUARD {
        return Err(Error::GuardExceeded {
            what: "pattern size",
            limit: PATTERN_GUARD,
            actual: k,
        });
    }
    let members: Vec<Vec<usize>> = connected_subsets(g, k)?
        .into_iter()
        .filter(|s| s.len() == k && embeds(g, f, s))
        .collect();
    let weights = weight::unit_weights(members.len());
    Ok(SubgraphFamily {
        members,
        weights,
        h: k,
    })
}

/// Whether some bijection from `V(f)` onto `set` maps every pattern edge to
/// a host edge.
fn embeds(g: &Graph, f: &Graph, set: &[usize]) -> bool {
    let fe: Vec<(usize, usize)> = f.edges().collect();
    let mut perm: Vec<usize> = set.to_vec();
    loop {
        if fe.iter().all(|&(a, b)| g.has_edge(perm[a], perm[b])) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn connected_subsets_of_a_path() {
        // A path on 5 vertices has 5 − s + 1 connected sets of size s.
        let sets = connected_subsets(&path(5), 3).unwrap();
        assert_eq!(sets.len(), 5 + 4 + 3);
        assert!(sets.iter().all(|s| path(5).is_connected_subset(s)));
    }

    #[test]
    fn connected_subsets_of_a_star_match_brute_force() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]).unwrap();
        let brute: Vec<Vec<usize>> = (1u32..32)
            .map(|mask| {
                (0..5)
                    .filter(|&v| mask >> v & 1 == 1)
                    .collect::<Vec<usize>>()
            })
            .filter(|s| s.len() <= 4 && g.is_connected_subset(s))
            .collect();
        let mut brute = brute;
        brute.sort();
        assert_eq!(connected_subsets(&g, 4).unwrap(), brute);
    }

    #[test]
    fn triangles_in_k4() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(f_copies(&k4, &tri).unwrap().len(), 4);
        assert_eq!(f_copies(&path(4), &tri).unwrap().len(), 0);
        assert_eq!(
            f_copies(&path(4), &path(3)).unwrap().members,
            vec![vec![0, 1, 2], vec![1, 2, 3]]
        );
    }

    #[test]
    fn specializations_validate() {
        let g = path(4);
        induced_matching_family(&g).validate(&g).unwrap();
        dissociation_family(&g).validate(&g).unwrap();
        assert!(f_copies(&g, &Graph::empty(2)).is_err());
    }
}
