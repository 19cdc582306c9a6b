use super::{validate_td, Layering, TreeDecomposition};
use crate::error::Result;
use crate::graph::{Graph, SubgraphFamily};

/// Decomposition and layering of `G^{1+2d}`: every bag grows to its
/// distance-`d` neighbourhood and every `1+2d` consecutive layers merge.
pub fn lift_td_to_power(
    g: &Graph,
    td: &TreeDecomposition,
    layering: &Layering,
    d: usize,
) -> Result<(TreeDecomposition, Layering)> {
    validate_td(g, td)?;
    layering.check(g)?;
    if d == 0 {
        return Ok((td.clone(), layering.clone()));
    }
    let bags = td
        .bags()
        .iter()
        .map(|bag| {
            let dist = g.bfs(bag, Some(d));
            (0..g.n()).filter(|&v| dist[v] <= d).collect()
        })
        .collect();
    let width = 1 + 2 * d;
    let layer_of: Vec<usize> = layering
        .layer_of(g.n())?
        .into_iter()
        .map(|l| l / width)
        .collect();
    Ok((
        TreeDecomposition::new(bags, td.edges().to_vec()),
        Layering::from_assignment(&layer_of),
    ))
}

/// Decomposition of the conflict graph: node `t` holds every member that
/// meets `X_t`.
pub fn lift_td_to_conflict(
    g: &Graph,
    td: &TreeDecomposition,
    fam: &SubgraphFamily,
) -> Result<TreeDecomposition> {
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (j, m) in fam.members.iter().enumerate() {
        for &v in m {
            if v >= g.n() {
                return Err(crate::Error::input(format!(
                    "family member {j} references a missing vertex"
                )));
            }
            holders[v].push(j);
        }
    }
    let bags = td
        .bags()
        .iter()
        .map(|bag| {
            bag.iter()
                .filter(|&&v| v < g.n())
                .flat_map(|&v| holders[v].iter().copied())
                .collect()
        })
        .collect();
    Ok(TreeDecomposition::new(bags, td.edges().to_vec()))
}
