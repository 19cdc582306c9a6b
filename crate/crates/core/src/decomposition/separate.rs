use super::{validate_td, GeneralCover, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{oracle, Graph, Separation};

/// Balanced separation whose separator is the bag of `node`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BagSeparation {
    pub separation: Separation,
    pub node: usize,
}

/// Balanced separation built from the largest element of a general cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSeparation {
    pub separation: Separation,
    /// Index of the cover element used.
    pub element: usize,
    /// `α(G[A ∩ B])`, computed exactly.
    pub independence: usize,
}

/// Finds a bag `X_t` and splits the components of `G − X_t` into two sides
/// of at most `2n/3` vertices each.
pub fn balanced_separation_from_td(g: &Graph, td: &TreeDecomposition) -> Result<BagSeparation> {
    validate_td(g, td)?;
    let n = g.n();
    let tree = td.tree_adjacency();
    let holders = td.holders(n);
    // Walk towards the side holding an oversized component; the walk never
    // needs to turn back, so it ends within |V(T)| steps.
    let mut t = 0;
    let mut prev = usize::MAX;
    for _ in 0..=td.len() {
        let comps = components_without(g, td.bag(t));
        let Some(big) = comps.iter().find(|c| 2 * c.len() > n) else {
            if let Some(sep) = group(n, td.bag(t), &comps) {
                return Ok(BagSeparation {
                    separation: sep,
                    node: t,
                });
            }
            break;
        };
        let target = big[0];
        let next = tree[t]
            .iter()
            .copied()
            .find(|&s| s != prev && branch_holds(&tree, t, s, &holders[target]));
        match next {
            Some(s) => {
                prev = t;
                t = s;
            }
            None => break,
        }
    }
    for t in 0..td.len() {
        if let Some(sep) = group(n, td.bag(t), &components_without(g, td.bag(t))) {
            return Ok(BagSeparation {
                separation: sep,
                node: t,
            });
        }
    }
    Err(Error::BoundViolated(
        "no bag yields a balanced separation".into(),
    ))
}

fn components_without(g: &Graph, bag: &[usize]) -> Vec<Vec<usize>> {
    let mut alive = vec![true; g.n()];
    for &v in bag {
        alive[v] = false;
    }
    g.components(Some(&alive))
}

/// Whether the branch of the tree entered through `s` from `t` contains one
/// of `nodes`.
fn branch_holds(tree: &[Vec<usize>], t: usize, s: usize, nodes: &[usize]) -> bool {
    let mut stack = vec![(s, t)];
    while let Some((u, from)) = stack.pop() {
        if nodes.binary_search(&u).is_ok() {
            return true;
        }
        stack.extend(tree[u].iter().filter(|&&w| w != from).map(|&w| (w, u)));
    }
    false
}

/// Splits components onto two sides, largest first onto the lighter side.
fn group(n: usize, bag: &[usize], comps: &[Vec<usize>]) -> Option<Separation> {
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(comps[i].len()), comps[i][0]));
    let mut a: Vec<usize> = bag.to_vec();
    let mut b: Vec<usize> = bag.to_vec();
    let (mut sa, mut sb) = (0usize, 0usize);
    for i in order {
        if sa <= sb {
            a.extend(&comps[i]);
            sa += comps[i].len();
        } else {
            b.extend(&comps[i]);
            sb += comps[i].len();
        }
    }
    if 3 * sa > 2 * n || 3 * sb > 2 * n {
        return None;
    }
    a.sort_unstable();
    b.sort_unstable();
    Some(Separation { a, b })
}

/// Balanced separation from a `(1 − 1/(2c))`-general cover: separate the
/// largest element with one of its bags and put everything outside that
/// element on both sides.
pub fn separation_from_cover(g: &Graph, cover: &GeneralCover, c: usize) -> Result<CoverSeparation> {
    if c == 0 {
        return Err(Error::input("separation_from_cover needs c ≥ 1"));
    }
    if cover.is_empty() {
        return Err(Error::input("cover has no elements"));
    }
    let need = crate::weight::ratio(2 * c as i64 - 1, 2 * c as i64);
    if cover.min_coverage(g.n()) < need {
        return Err(Error::input(format!(
            "cover is not a (1 − 1/{})-general cover",
            2 * c
        )));
    }
    let element = (0..cover.len())
        .max_by_key(|&i| (cover.elements[i].vertices.len(), std::cmp::Reverse(i)))
        .unwrap_or(0);
    let e = &cover.elements[element];
    let (h, map) = g.induced(&e.vertices);
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        local[v] = i;
    }
    let td =
        e.td.map_vertices(|v| (v < g.n() && local[v] != usize::MAX).then(|| local[v]));
    let inner = balanced_separation_from_td(&h, &td)?.separation;
    let mut outside = vec![true; g.n()];
    for &v in &e.vertices {
        outside[v] = false;
    }
    let rest: Vec<usize> = (0..g.n()).filter(|&v| outside[v]).collect();
    let lift = |side: &[usize]| {
        let mut s: Vec<usize> = side
            .iter()
            .map(|&i| map[i])
            .chain(rest.iter().copied())
            .collect();
        s.sort_unstable();
        s
    };
    let separation = Separation {
        a: lift(&inner.a),
        b: lift(&inner.b),
    };
    let independence = oracle::alpha_exact(g, &separation.separator())?;
    Ok(CoverSeparation {
        separation,
        element,
        independence,
    })
}
