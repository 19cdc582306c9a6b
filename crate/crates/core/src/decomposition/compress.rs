use super::{validate_td, CoverElement, GeneralCover, Layering, Provenance, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weight;

/// Restricts `td` to each component of `G[alive]` and joins the pieces at a
/// fresh hub node with an empty bag. For a connected component the nodes
/// meeting it already form a subtree, so other nodes are dropped.
pub(crate) fn restrict_to_components(
    g: &Graph,
    td: &TreeDecomposition,
    alive: &[bool],
) -> TreeDecomposition {
    let comps = g.components(Some(alive));
    if comps.is_empty() {
        return TreeDecomposition::single_bag(Vec::new());
    }
    let mut comp_of = vec![usize::MAX; g.n()];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    // node_of[t] lists (component, new node id) for each component meeting X_t.
    let mut node_of: Vec<Vec<(usize, usize)>> = vec![Vec::new(); td.len()];
    let mut per_comp: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); comps.len()];
    for (t, bag) in td.bags().iter().enumerate() {
        let mut parts: Vec<(usize, usize)> = bag
            .iter()
            .filter(|&&v| alive[v])
            .map(|&v| (comp_of[v], v))
            .collect();
        parts.sort_unstable();
        for chunk in parts.chunk_by(|a, b| a.0 == b.0) {
            per_comp[chunk[0].0].push((t, chunk.iter().map(|&(_, v)| v).collect()));
        }
    }
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (c, nodes) in per_comp.into_iter().enumerate() {
        roots.push(bags.len());
        for (t, bag) in nodes {
            node_of[t].push((c, bags.len()));
            bags.push(bag);
        }
    }
    for &(s, t) in td.edges() {
        for &(c, a) in &node_of[s] {
            if let Some(&(_, b)) = node_of[t].iter().find(|(d, _)| *d == c) {
                edges.push((a, b));
            }
        }
    }
    if roots.len() > 1 {
        let hub = bags.len();
        bags.push(Vec::new());
        edges.extend(roots.iter().map(|&r| (r, hub)));
    }
    TreeDecomposition::new(bags, edges)
}

/// Smallest `p ≥ 1` with `p² k ≥ n`, i.e. `⌈√(n/k)⌉`.
pub fn sqrt_parameter(n: usize, k: usize) -> usize {
    let k = k.max(1);
    let mut p = ((n as f64 / k as f64).sqrt().floor() as usize).max(1);
    while p * p * k < n {
        p += 1;
    }
    while p > 1 && (p - 1) * (p - 1) * k >= n {
        p -= 1;
    }
    p
}

/// Decomposition with `α(T) ≤ 2√(kn)` from one of layered independence
/// number at most `k`. Deletes the lightest residue class of layers modulo
/// `p = ⌈√(n/k)⌉`, decomposes the remaining components by restriction, and
/// adds the deleted class to every bag.
pub fn sqrt_compress(
    g: &Graph,
    td: &TreeDecomposition,
    layering: &Layering,
    k: usize,
) -> Result<TreeDecomposition> {
    if k == 0 {
        return Err(Error::input("declared layered bound must be at least 1"));
    }
    validate_td(g, td)?;
    let layer_of = layering.layer_of(g.n())?;
    layering.check(g)?;
    let n = g.n();
    let p = sqrt_parameter(n, k);
    let mut class_size = vec![0usize; p];
    for &l in &layer_of {
        class_size[l % p] += 1;
    }
    let j = (0..p).min_by_key(|&j| (class_size[j], j)).unwrap_or(0);
    let removed: Vec<usize> = (0..n).filter(|&v| layer_of[v] % p == j).collect();
    let alive: Vec<bool> = layer_of.iter().map(|&l| l % p != j).collect();
    let base = restrict_to_components(g, td, &alive);
    let bags = base
        .bags()
        .iter()
        .map(|b| b.iter().chain(&removed).copied().collect())
        .collect();
    Ok(TreeDecomposition::new(bags, base.edges().to_vec()))
}

/// The `r`-element cover obtained by deleting every `r`-th layer. Element
/// `m` keeps the layers whose index is not `m` modulo `r`; `ell` is the
/// layered bound, giving the declared element bound `ℓ(r−1)`.
pub fn cover_from_layering(
    g: &Graph,
    td: &TreeDecomposition,
    layering: &Layering,
    r: usize,
    ell: usize,
) -> Result<GeneralCover> {
    if r < 2 {
        return Err(Error::input("cover_from_layering needs r ≥ 2"));
    }
    validate_td(g, td)?;
    layering.check(g)?;
    let layer_of = layering.layer_of(g.n())?;
    let declared = (ell * (r - 1)) as u64;
    let elements = (0..r)
        .map(|m| {
            let alive: Vec<bool> = layer_of.iter().map(|&l| l % r != m).collect();
            let vertices = (0..g.n()).filter(|&v| alive[v]).collect();
            CoverElement {
                vertices,
                td: restrict_to_components(g, td, &alive),
                provenance: Provenance {
                    construction: "layering".into(),
                    shift: None,
                    residue: Some(m),
                    declared_alpha: Some(declared),
                },
            }
        })
        .collect();
    Ok(GeneralCover {
        beta: weight::ratio(r as i64 - 1, r as i64),
        declared_alpha: Some(declared),
        elements,
    })
}

/// Decomposition of `G[N^r[v]]`: every bag intersected with the ball, tree
/// shape unchanged.
pub fn restrict_to_ball(
    g: &Graph,
    td: &TreeDecomposition,
    v: usize,
    r: usize,
) -> Result<(Vec<usize>, TreeDecomposition)> {
    if v >= g.n() {
        return Err(Error::input(format!("vertex {v} out of range")));
    }
    let dist = g.bfs(&[v], Some(r));
    let ball: Vec<usize> = (0..g.n()).filter(|&u| dist[u] <= r).collect();
    let restricted = td.map_vertices(|u| (u < g.n() && dist[u] <= r).then_some(u));
    Ok((ball, restricted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{td_independence_number, validate_td_on};

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn edge_bags(n: usize) -> TreeDecomposition {
        TreeDecomposition::path((1..n).map(|i| vec![i - 1, i]).collect())
    }

    #[test]
    fn sqrt_parameter_is_ceiling() {
        assert_eq!(sqrt_parameter(100, 3), 6);
        assert_eq!(sqrt_parameter(9, 1), 3);
        assert_eq!(sqrt_parameter(10, 1), 4);
        assert_eq!(sqrt_parameter(2, 5), 1);
        assert_eq!(sqrt_parameter(0, 1), 1);
    }

    #[test]
    fn compressing_a_path() {
        let n = 30;
        let g = path_graph(n);
        let layering = Layering::from_assignment(&(0..n).collect::<Vec<_>>());
        let out = sqrt_compress(&g, &edge_bags(n), &layering, 1).unwrap();
        assert!(validate_td(&g, &out).is_ok());
        let a = td_independence_number(&g, &out).unwrap();
        assert!(a * a <= 4 * n, "α = {a}");
    }

    #[test]
    fn single_layer_is_untouched() {
        let g = path_graph(4);
        let out = sqrt_compress(&g, &edge_bags(4), &Layering::single(4), 5).unwrap();
        assert!(validate_td(&g, &out).is_ok());
    }

    #[test]
    fn two_element_cover() {
        let n = 6;
        let g = path_graph(n);
        let layering = Layering::from_assignment(&(0..n).collect::<Vec<_>>());
        let cover = cover_from_layering(&g, &edge_bags(n), &layering, 2, 1).unwrap();
        assert_eq!(cover.elements[0].vertices, vec![1, 3, 5]);
        assert_eq!(cover.elements[1].vertices, vec![0, 2, 4]);
        assert!(cover.membership_counts(n).iter().all(|&c| c == 1));
        cover.validate(&g).unwrap();
    }

    #[test]
    fn ball_restrictions() {
        let g = path_graph(7);
        let td = edge_bags(7);
        let (ball, out) = restrict_to_ball(&g, &td, 3, 10).unwrap();
        assert_eq!(ball.len(), 7);
        assert_eq!(out, td);
        let (ball, out) = restrict_to_ball(&g, &td, 3, 0).unwrap();
        assert_eq!(ball, vec![3]);
        assert!(validate_td_on(&g, &ball, &out).is_ok());
        assert!(out.bags().iter().all(|b| b.len() <= 1));
    }
}
