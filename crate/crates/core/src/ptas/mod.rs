//! Approximation schemes built on general covers and on the shifting
//! technique, plus the exact subexponential path.

mod shifting;

use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use shifting::{ptas_mwis_shifting_geom, ptas_mwis_shifting_paths, shifting_classes};

use crate::decomposition::{
    cover_from_layering, lift_td_to_power, sqrt_compress, td_independence_number, GeneralCover,
    Layering, TreeDecomposition,
};
use crate::error::{Error, Result};
use crate::fat_cover::general_cover_fat;
use crate::geometry::{scale_collection, ObjectCollection};
use crate::graph::{graph_power, intersection_graph, Graph, SubgraphFamily};
use crate::packing::{is_distance_packing, max_weight_independent_packing_with, SolverOptions};
use crate::weight::{self, Weight};

/// Outcome of one cover element or one shifting residue class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementStat {
    pub index: usize,
    /// Vertices kept by the element (or left after deleting the class).
    pub vertices: usize,
    /// Family members fully inside the element.
    pub members: usize,
    #[serde(with = "crate::weight::serde_weight")]
    pub weight: Weight,
    /// Total DP states over all solves for this element.
    pub states: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PtasReport {
    #[serde(default)]
    pub instance: String,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::weight::serde_weight_opt"
    )]
    pub epsilon: Option<Weight>,
    #[serde(with = "crate::weight::serde_weight")]
    pub achieved: Weight,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::weight::serde_weight_opt"
    )]
    pub optimum: Option<Weight>,
    #[serde(with = "crate::weight::serde_weight")]
    pub guaranteed_ratio: Weight,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::weight::serde_weight_opt"
    )]
    pub achieved_ratio: Option<Weight>,
    /// Declared bound on the independence number of each element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_alpha: Option<u64>,
    /// Index of the element or residue class that won.
    pub chosen: usize,
    pub elements: Vec<ElementStat>,
    pub wall_time_ms: f64,
}

impl PtasReport {
    /// Records the exact optimum and the achieved ratio.
    pub fn set_optimum(&mut self, opt: Weight) {
        self.achieved_ratio = Some(if opt.is_zero() {
            Weight::one()
        } else {
            &self.achieved / &opt
        });
        self.optimum = Some(opt);
    }

    /// Whether the achieved weight meets the guarantee, when the optimum is
    /// known.
    pub fn meets_guarantee(&self) -> Option<bool> {
        self.optimum
            .as_ref()
            .map(|opt| self.achieved >= &self.guaranteed_ratio * opt)
    }
}

/// Selected vertices or family members with their weight and report.
#[derive(Clone, Debug, PartialEq)]
pub struct PtasOutcome {
    pub selection: Vec<usize>,
    pub weight: Weight,
    pub report: PtasReport,
}

struct ElementResult {
    selection: Vec<usize>,
    stat: ElementStat,
}

fn ms_since(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Index of the heaviest result, ties to the smallest index.
fn best_index(weights: impl Iterator<Item = Weight>) -> usize {
    let mut best: Option<(usize, Weight)> = None;
    for (i, w) in weights.enumerate() {
        if best.as_ref().map_or(true, |(_, b)| w > *b) {
            best = Some((i, w));
        }
    }
    best.map_or(0, |(i, _)| i)
}

fn solve_element(
    g: &Graph,
    cover: &GeneralCover,
    fam: &SubgraphFamily,
    index: usize,
    opts: &SolverOptions,
) -> Result<ElementResult> {
    let e = &cover.elements[index];
    let mut inside = vec![false; g.n()];
    for &v in &e.vertices {
        inside[v] = true;
    }
    let kept = fam.restricted_to(&inside);
    let mut stat = ElementStat {
        index,
        vertices: e.vertices.len(),
        members: kept.len(),
        weight: Weight::zero(),
        states: 0,
    };
    if kept.is_empty() {
        return Ok(ElementResult {
            selection: Vec::new(),
            stat,
        });
    }
    let (h, map) = g.induced(&e.vertices);
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        local[v] = i;
    }
    let members = kept
        .iter()
        .map(|&j| fam.members[j].iter().map(|&v| local[v]).collect())
        .collect();
    let weights = kept.iter().map(|&j| fam.weights[j].clone()).collect();
    let mut sub = SubgraphFamily::new(members, weights)?;
    sub.h = fam.h;
    let td =
        e.td.map_vertices(|v| (v < g.n() && local[v] != usize::MAX).then(|| local[v]));
    let sol = max_weight_independent_packing_with(&h, &sub, &td, opts)?;
    stat.weight = sol.weight;
    stat.states = sol.stats.total_states;
    Ok(ElementResult {
        selection: sol.set.iter().map(|&j| kept[j]).collect(),
        stat,
    })
}

/// Best packing over the elements of a `(1−1/r)`-general cover. Each element
/// is solved exactly on the members it contains; the result is within a
/// factor `1−h/r` of the optimum.
pub fn ptas_packing_from_cover(
    g: &Graph,
    cover: &GeneralCover,
    fam: &SubgraphFamily,
    r: u64,
    opts: &SolverOptions,
) -> Result<PtasOutcome> {
    let start = Instant::now();
    if r as usize <= fam.h {
        return Err(Error::input(format!(
            "r = {r} must exceed the member size bound h = {}",
            fam.h
        )));
    }
    if cover.is_empty() {
        return Err(Error::input("cover has no elements"));
    }
    fam.validate(g)?;
    let need = weight::ratio(r as i64 - 1, r as i64);
    if cover.min_coverage(g.n()) < need {
        return Err(Error::input(format!(
            "cover is not a (1 − 1/{r})-general cover"
        )));
    }
    for (i, e) in cover.elements.iter().enumerate() {
        if e.vertices.iter().any(|&v| v >= g.n()) || e.vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input(format!(
                "cover element {i} has an invalid vertex list"
            )));
        }
    }
    let results: Vec<ElementResult> = (0..cover.len())
        .into_par_iter()
        .map(|i| solve_element(g, cover, fam, i, opts))
        .collect::<Result<_>>()?;
    let chosen = best_index(results.iter().map(|r| r.stat.weight.clone()));
    let mut selection = results[chosen].selection.clone();
    selection.sort_unstable();
    if !is_distance_packing(g, fam, &selection, 2) {
        return Err(Error::BoundViolated(
            "chosen members are not pairwise at distance ≥ 2".into(),
        ));
    }
    let achieved = fam.weight_of(&selection);
    let report = PtasReport {
        instance: String::new(),
        method: "cover-packing".into(),
        r: Some(r),
        epsilon: None,
        achieved: achieved.clone(),
        optimum: None,
        guaranteed_ratio: Weight::one() - weight::ratio(fam.h as i64, r as i64),
        achieved_ratio: None,
        declared_alpha: cover.declared_alpha,
        chosen,
        elements: results.into_iter().map(|r| r.stat).collect(),
        wall_time_ms: ms_since(start),
    };
    Ok(PtasOutcome {
        selection,
        weight: achieved,
        report,
    })
}

/// Independent set within a factor `1−1/r` of the optimum on a `cfat`-fat
/// collection, via the hierarchical-grid cover.
pub fn ptas_mwis_fat(
    c: &ObjectCollection,
    cfat: u64,
    weights: &[Weight],
    r: u32,
    opts: &SolverOptions,
) -> Result<PtasOutcome> {
    let start = Instant::now();
    if r < 2 {
        return Err(Error::input("r must be at least 2"));
    }
    if weights.len() != c.len() {
        return Err(Error::input(
            "weight vector length differs from object count",
        ));
    }
    let original = intersection_graph(c)?;
    let (scaled, _) = scale_collection(c)?;
    let g = intersection_graph(&scaled)?;
    let cover = general_cover_fat(&scaled, cfat, r)?;
    let fam = SubgraphFamily::singletons(weights);
    let mut out = ptas_packing_from_cover(&g, &cover, &fam, r as u64, opts)?;
    if !original.is_independent(&out.selection) {
        return Err(Error::BoundViolated(
            "selection is not independent in the input collection".into(),
        ));
    }
    out.report.method = "fat-cover".into();
    out.report.wall_time_ms = ms_since(start);
    Ok(out)
}

fn check_even(d: usize) -> Result<usize> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::input(format!(
            "distance d = {d} is not supported: the layering argument needs d even and at least 2, and does not extend to odd d"
        )));
    }
    Ok(d / 2)
}

/// Distance-`d` packing within a factor `1−h/r` of the optimum, for even
/// `d`, from a layered decomposition with layered bound `ell`.
#[allow(clippy::too_many_arguments)]
pub fn ptas_distance_d(
    g: &Graph,
    td: &TreeDecomposition,
    layering: &Layering,
    ell: usize,
    fam: &SubgraphFamily,
    d: usize,
    r: u64,
    opts: &SolverOptions,
) -> Result<PtasOutcome> {
    let start = Instant::now();
    let k = check_even(d)?;
    fam.validate(g)?;
    let (lifted, lifted_layering) = lift_td_to_power(g, td, layering, k - 1)?;
    let power = graph_power(g, d - 1)?;
    let cover = cover_from_layering(
        &power,
        &lifted,
        &lifted_layering,
        r as usize,
        (4 * k - 3) * ell,
    )?;
    let mut out = ptas_packing_from_cover(&power, &cover, fam, r, opts)?;
    if !is_distance_packing(g, fam, &out.selection, d) {
        return Err(Error::BoundViolated(format!(
            "chosen members are not pairwise at distance ≥ {d}"
        )));
    }
    out.report.method = format!("distance-{d}");
    out.report.wall_time_ms = ms_since(start);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubexpOutcome {
    pub selection: Vec<usize>,
    pub weight: Weight,
    /// Independence number of the compressed decomposition.
    pub compressed_alpha: usize,
    /// Layered bound of the (lifted) decomposition that was compressed.
    pub ell: usize,
}

/// Exact distance-`d` packing through a decomposition of independence
/// number at most `2√(ℓ′n)`.
pub fn subexp_exact(
    g: &Graph,
    td: &TreeDecomposition,
    layering: &Layering,
    ell: usize,
    fam: &SubgraphFamily,
    d: usize,
    opts: &SolverOptions,
) -> Result<SubexpOutcome> {
    let k = check_even(d)?;
    fam.validate(g)?;
    let (lifted, lifted_layering) = lift_td_to_power(g, td, layering, k - 1)?;
    let power = graph_power(g, d - 1)?;
    let ell_prime = (4 * k - 3) * ell;
    let compressed = sqrt_compress(&power, &lifted, &lifted_layering, ell_prime)?;
    let alpha = td_independence_number(&power, &compressed)?;
    if alpha * alpha > 4 * ell_prime * g.n() {
        return Err(Error::BoundViolated(format!(
            "compressed α(T) = {alpha} exceeds 2√({ell_prime}·{})",
            g.n()
        )));
    }
    let sol = max_weight_independent_packing_with(&power, fam, &compressed, opts)?;
    if !is_distance_packing(g, fam, &sol.set, d) {
        return Err(Error::BoundViolated(format!(
            "chosen members are not pairwise at distance ≥ {d}"
        )));
    }
    Ok(SubexpOutcome {
        selection: sol.set,
        weight: sol.weight,
        compressed_alpha: alpha,
        ell: ell_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{CoverElement, Provenance};
    use crate::geometry::GeometricObject;
    use crate::graph::oracle::bruteforce_mwis;
    use crate::graph::WeightedGraph;
    use crate::weight::{int, unit_weights};

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn full_cover_is_exact() {
        let g = path_graph(5);
        let cover = GeneralCover {
            beta: int(1),
            declared_alpha: None,
            elements: vec![CoverElement {
                vertices: (0..5).collect(),
                td: TreeDecomposition::path((1..5).map(|i| vec![i - 1, i]).collect()),
                provenance: Provenance::default(),
            }],
        };
        let fam = SubgraphFamily::singletons(&unit_weights(5));
        let out = ptas_packing_from_cover(&g, &cover, &fam, 4, &SolverOptions::default()).unwrap();
        assert_eq!(out.selection, vec![0, 2, 4]);
        assert!(ptas_packing_from_cover(&g, &cover, &fam, 1, &SolverOptions::default()).is_err());
    }

    #[test]
    fn disjoint_disks_are_all_taken() {
        let c = ObjectCollection::generic(
            (0..4)
                .map(|i| GeometricObject::disk(vec![5.0 * i as f64, 0.0], 1.0))
                .collect(),
        );
        let out = ptas_mwis_fat(&c, 1, &unit_weights(4), 2, &SolverOptions::default()).unwrap();
        assert_eq!(out.selection, vec![0, 1, 2, 3]);
        assert_eq!(out.report.elements.len(), 16);
    }

    #[test]
    fn odd_distance_is_rejected() {
        let g = path_graph(3);
        let fam = SubgraphFamily::singletons(&unit_weights(3));
        let td = TreeDecomposition::single_bag(vec![0, 1, 2]);
        let err = ptas_distance_d(
            &g,
            &td,
            &Layering::single(3),
            1,
            &fam,
            3,
            5,
            &SolverOptions::default(),
        );
        assert!(err.is_err());
    }

    #[test]
    fn subexp_on_a_path() {
        let n = 10;
        let g = path_graph(n);
        let td = TreeDecomposition::path((1..n).map(|i| vec![i - 1, i]).collect());
        let layering = Layering::from_assignment(&(0..n).collect::<Vec<_>>());
        let fam = SubgraphFamily::singletons(&unit_weights(n));
        let out = subexp_exact(&g, &td, &layering, 1, &fam, 2, &SolverOptions::default()).unwrap();
        let (_, opt) = bruteforce_mwis(&WeightedGraph::unit(g)).unwrap();
        assert_eq!(out.weight, opt);
    }

    #[test]
    fn report_ratio() {
        let mut report = PtasReport {
            instance: "x".into(),
            method: "m".into(),
            r: Some(2),
            epsilon: None,
            achieved: int(3),
            optimum: None,
            guaranteed_ratio: weight::ratio(1, 2),
            achieved_ratio: None,
            declared_alpha: None,
            chosen: 0,
            elements: Vec::new(),
            wall_time_ms: 0.0,
        };
        assert_eq!(report.meets_guarantee(), None);
        report.set_optimum(int(4));
        assert_eq!(report.achieved_ratio, Some(weight::ratio(3, 4)));
        assert_eq!(report.meets_guarantee(), Some(true));
    }
}
