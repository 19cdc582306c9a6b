//! Randomized property suite tying every construction to its invariants and
//! brute-force oracles. Failing instances are shrunk by greedy object
//! removal before they are reported.

use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomposition::{
    balanced_separation_from_td, cover_from_layering, layered_independence_number,
    lift_td_to_conflict, lift_td_to_power, restrict_to_ball, separation_from_cover, sqrt_compress,
    td_independence_number, validate_td, validate_td_on, TreeDecomposition,
};
use crate::fat_cover::{
    fragility_function, general_cover_fat, odd_power_fat_realization, shift_element, shifts,
    HierGrid,
};
use crate::geometry::{
    estimate_fatness, generate_instance, intersects, rank_of, scale_collection, GeneratorKind,
    GeneratorSpec, InstanceKind, ObjectCollection, PathMode,
};
use crate::graph::oracle::{alpha_exact, bruteforce_mwis, bruteforce_packing, MWIS_GUARD};
use crate::graph::{
    conflict_graph, graph_power, intersection_graph, Graph, SubgraphFamily, WeightedGraph,
};
use crate::layered::{layered_td_for_kind, strip_td, LayeredDecomposition};
use crate::packing::{
    is_distance_packing, max_weight_independent_packing, mwis_on_td, to_nice, SolverOptions,
};
use crate::ptas::{
    ptas_distance_d, ptas_mwis_fat, ptas_mwis_shifting_geom, ptas_mwis_shifting_paths,
    ptas_packing_from_cover, shifting_classes, PtasOutcome,
};
use crate::rng::{self, streams};
use crate::weight::{self, Weight};

pub type Generator = fn(u64) -> crate::Result<ObjectCollection>;
pub type Check = fn(&ObjectCollection, u64) -> Result<(), String>;

/// One named invariant checked over a range of seeds.
#[derive(Clone, Copy)]
pub struct PropertyCase {
    pub id: &'static str,
    pub module: &'static str,
    pub invariant: &'static str,
    pub seeds: u64,
    pub generate: Generator,
    pub check: Check,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub seed: u64,
    pub message: String,
    /// Shrunk failing instance.
    pub instance: ObjectCollection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub module: String,
    pub invariant: String,
    pub runs: u64,
    pub time_ms: f64,
    pub failure: Option<Failure>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    pub fn failures(&self) -> Vec<&CaseResult> {
        self.cases.iter().filter(|c| !c.passed()).collect()
    }

    /// JUnit-style XML with one test case per property.
    pub fn to_junit_xml(&self) -> String {
        let failed = self.failures().len();
        let total: f64 = self.cases.iter().map(|c| c.time_ms).sum::<f64>() / 1e3;
        let mut s = format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<testsuite name=\"treealpha-properties\" tests=\"{}\" failures=\"{failed}\" time=\"{total:.3}\">\n",
            self.cases.len()
        );
        for c in &self.cases {
            s.push_str(&format!(
                "  <testcase classname=\"{}\" name=\"{}\" time=\"{:.3}\">",
                xml_escape(&c.module),
                xml_escape(&c.id),
                c.time_ms / 1e3
            ));
            if let Some(f) = &c.failure {
                s.push_str(&format!(
                    "\n    <failure message=\"{}\">seed {} ({} objects after shrinking)</failure>\n  ",
                    xml_escape(&f.message),
                    f.seed,
                    f.instance.len()
                ));
            }
            s.push_str("</testcase>\n");
        }
        s.push_str("</testsuite>\n");
        s
    }

    /// JSON dump of the failing cases with their shrunk instances.
    pub fn failures_json(&self) -> String {
        let failing: Vec<&CaseResult> = self.failures();
        crate::io::to_json(&failing).unwrap_or_else(|_| "[]\n".into())
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Removes objects one at a time while the check keeps failing.
pub fn shrink(c: &ObjectCollection, seed: u64, check: Check) -> (ObjectCollection, String) {
    let mut current = c.clone();
    let mut message = match check(&current, seed) {
        Err(m) => m,
        Ok(()) => return (current, String::new()),
    };
    loop {
        let mut progressed = false;
        for i in 0..current.len() {
            let keep: Vec<usize> = (0..current.len()).filter(|&j| j != i).collect();
            let candidate = current.subset(&keep);
            if let Err(m) = check(&candidate, seed) {
                current = candidate;
                message = m;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return (current, message);
        }
    }
}

pub fn run_case(case: &PropertyCase) -> CaseResult {
    let start = Instant::now();
    let mut failure = None;
    let mut runs = 0;
    for seed in 0..case.seeds {
        runs += 1;
        let c = match (case.generate)(seed) {
            Ok(c) => c,
            Err(e) => {
                failure = Some(Failure {
                    seed,
                    message: format!("generator failed: {e}"),
                    instance: ObjectCollection::generic(Vec::new()),
                });
                break;
            }
        };
        if (case.check)(&c, seed).is_err() {
            let (instance, message) = shrink(&c, seed, case.check);
            failure = Some(Failure {
                seed,
                message,
                instance,
            });
            break;
        }
    }
    CaseResult {
        id: case.id.into(),
        module: case.module.into(),
        invariant: case.invariant.into(),
        runs,
        time_ms: start.elapsed().as_secs_f64() * 1e3,
        failure,
    }
}

/// Runs every case whose id or module contains `filter`.
pub fn run_suite(filter: &str) -> SuiteReport {
    let cases: Vec<PropertyCase> = all_cases()
        .into_iter()
        .filter(|c| c.id.contains(filter) || c.module.contains(filter))
        .collect();
    SuiteReport {
        cases: cases.par_iter().map(run_case).collect(),
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn gen(kind: GeneratorKind, n: usize, seed: u64) -> crate::Result<ObjectCollection> {
    generate_instance(&GeneratorSpec::new(kind, n, seed))
}

fn random_weights(n: usize, seed: u64) -> Vec<Weight> {
    use rand::Rng;
    let mut r = rng::stream(seed, streams::WEIGHTS);
    (0..n)
        .map(|_| weight::ratio(r.gen_range(1..=9), r.gen_range(1..=3)))
        .collect()
}

fn layered_for(c: &ObjectCollection) -> crate::Result<LayeredDecomposition> {
    layered_td_for_kind(c)
}

fn local_td(g: &Graph, vertices: &[usize], td: &TreeDecomposition) -> TreeDecomposition {
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    td.map_vertices(|v| (v < g.n() && local[v] != usize::MAX).then(|| local[v]))
}

// geometry

fn check_intersects_symmetric(c: &ObjectCollection, _: u64) -> Result<(), String> {
    let mode = c.path_mode();
    for a in &c.objects {
        for b in &c.objects {
            ensure!(
                intersects(a, b, mode).map_err(s)? == intersects(b, a, mode).map_err(s)?,
                "intersects is not symmetric"
            );
        }
        if mode == PathMode::Vertex {
            ensure!(
                intersects(a, a, mode).map_err(s)?,
                "object does not meet itself"
            );
        }
    }
    Ok(())
}

fn check_generator_deterministic(_: &ObjectCollection, seed: u64) -> Result<(), String> {
    for kind in [
        GeneratorKind::UnitDisks,
        GeneratorKind::Disks,
        GeneratorKind::GridPathsE,
    ] {
        ensure!(
            gen(kind, 10, seed).map_err(s)? == gen(kind, 10, seed).map_err(s)?,
            "generator is not deterministic for {kind:?}"
        );
    }
    Ok(())
}

fn check_ranks(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let (sc, _) = scale_collection(c).map_err(s)?;
    for r in [2u32, 3, 8] {
        for o in &sc.objects {
            let i = rank_of(o, r).map_err(s)? as i32;
            let size = o.size();
            let inv = 1.0 / r as f64;
            ensure!(
                size <= inv.powi(i) * (1.0 + 1e-9),
                "size {size} above (1/{r})^{i}"
            );
            ensure!(
                size > inv.powi(i + 1) * (1.0 - 1e-9),
                "size {size} not above (1/{r})^{}",
                i + 1
            );
        }
    }
    Ok(())
}

fn check_fatness_estimate(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let declared = c.params.fatness.unwrap_or(16) as usize;
    let est = estimate_fatness(c, 3).map_err(s)?;
    ensure!(
        est <= declared,
        "estimated fatness {est} exceeds declared {declared}"
    );
    Ok(())
}

fn check_kind_validation(c: &ObjectCollection, _: u64) -> Result<(), String> {
    c.validate().map_err(s)
}

// graph_core

fn check_power(c: &ObjectCollection, _: u64) -> Result<(), String> {
    let g = intersection_graph(c).map_err(s)?;
    ensure!(
        graph_power(&g, 1).map_err(s)? == g,
        "first power differs from the graph"
    );
    for p in 1..=3 {
        let gp = graph_power(&g, p).map_err(s)?;
        let next = graph_power(&g, p + 1).map_err(s)?;
        for v in 0..g.n() {
            let dist = g.bfs(&[v], None);
            for (u, &du) in dist.iter().enumerate() {
                if u != v {
                    ensure!(
                        gp.has_edge(u, v) == (du <= p),
                        "power {p} wrong on ({u}, {v})"
                    );
                    ensure!(
                        !gp.has_edge(u, v) || next.has_edge(u, v),
                        "powers are not monotone"
                    );
                }
            }
        }
    }
    Ok(())
}

fn check_conflict_singletons(c: &ObjectCollection, _: u64) -> Result<(), String> {
    let g = intersection_graph(c).map_err(s)?;
    let fam = SubgraphFamily::singletons(&weight::unit_weights(g.n()));
    ensure!(
        conflict_graph(&g, &fam).map_err(s)? == g,
        "conflict graph of singletons differs from the graph"
    );
    Ok(())
}

fn check_permutation(c: &ObjectCollection, _: u64) -> Result<(), String> {
    let g = intersection_graph(c).map_err(s)?;
    let n = g.n();
    let rev: Vec<usize> = (0..n).rev().collect();
    let h = intersection_graph(&c.subset(&rev)).map_err(s)?;
    for (u, v) in g.edges() {
        ensure!(
            h.has_edge(n - 1 - u, n - 1 - v),
            "edge ({u}, {v}) lost under relabelling"
        );
    }
    ensure!(
        g.edge_count() == h.edge_count(),
        "edge counts differ under relabelling"
    );
    Ok(())
}

fn check_bruteforce_packing(c: &ObjectCollection, _: u64) -> Result<(), String> {
    let g = intersection_graph(c).map_err(s)?;
    let fam = SubgraphFamily::singletons(&weight::unit_weights(g.n()));
    for d in [2, 4] {
        let (set, _) = bruteforce_packing(&g, &fam, d).map_err(s)?;
        ensure!(
            is_distance_packing(&g, &fam, &set, d),
            "brute-force packing violates distance {d}"
        );
    }
    Ok(())
}

// decomposition

fn check_sqrt_compress(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let out = sqrt_compress(&g, &ld.td, &ld.layering, ld.bound).map_err(s)?;
    validate_td(&g, &out).map_err(s)?;
    let a = td_independence_number(&g, &out).map_err(s)?;
    ensure!(
        a * a <= 4 * ld.bound * g.n(),
        "compressed α(T) = {a} exceeds 2√({}·{})",
        ld.bound,
        g.n()
    );
    Ok(())
}

fn check_cover_from_layering(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    for r in [2usize, 3] {
        let cover = cover_from_layering(&g, &ld.td, &ld.layering, r, ld.bound).map_err(s)?;
        cover.validate(&g).map_err(s)?;
        ensure!(
            cover.membership_counts(g.n()).iter().all(|&k| k == r - 1),
            "layering cover multiplicity differs from r−1"
        );
        for e in &cover.elements {
            let (h, _) = g.induced(&e.vertices);
            let a = td_independence_number(&h, &local_td(&g, &e.vertices, &e.td)).map_err(s)?;
            ensure!(a <= ld.bound * (r - 1), "element α(T) = {a} exceeds ℓ(r−1)");
        }
    }
    Ok(())
}

fn check_lift_power(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let k = layered_independence_number(&g, &ld.td, &ld.layering).map_err(s)?;
    for d in [1usize, 2] {
        let (td, lay) = lift_td_to_power(&g, &ld.td, &ld.layering, d).map_err(s)?;
        let gp = graph_power(&g, 1 + 2 * d).map_err(s)?;
        validate_td(&gp, &td).map_err(s)?;
        lay.check(&gp).map_err(s)?;
        let a = layered_independence_number(&gp, &td, &lay).map_err(s)?;
        ensure!(
            a <= (1 + 4 * d) * k,
            "lifted layered α = {a} exceeds (1+4d)k = {}",
            (1 + 4 * d) * k
        );
    }
    Ok(())
}

fn edge_family(g: &Graph, with_vertices: bool) -> SubgraphFamily {
    let mut members: Vec<Vec<usize>> = if with_vertices {
        (0..g.n()).map(|v| vec![v]).collect()
    } else {
        Vec::new()
    };
    members.extend(g.edges().map(|(u, v)| vec![u, v]));
    let weights = members
        .iter()
        .map(|m| weight::int(m.len() as i64))
        .collect();
    SubgraphFamily::new(members, weights).expect("lengths agree")
}

fn check_lift_conflict(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let fam = edge_family(&g, true);
    let lifted = lift_td_to_conflict(&g, &ld.td, &fam).map_err(s)?;
    validate_td(&conflict_graph(&g, &fam).map_err(s)?, &lifted).map_err(s)
}

fn check_ball(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    for v in 0..g.n().min(5) {
        for r in 0..3 {
            let (ball, td) = restrict_to_ball(&g, &ld.td, v, r).map_err(s)?;
            validate_td_on(&g, &ball, &td).map_err(s)?;
        }
    }
    Ok(())
}

fn check_balanced_separation(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let out = balanced_separation_from_td(&g, &ld.td).map_err(s)?;
    ensure!(out.separation.is_separation(&g), "not a separation");
    ensure!(
        out.separation.is_balanced(g.n()),
        "separation is not balanced"
    );
    ensure!(
        out.separation.separator() == ld.td.bag(out.node),
        "separator is not the bag"
    );
    Ok(())
}

fn check_cover_separation(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let cover = cover_from_layering(&g, &ld.td, &ld.layering, 2, ld.bound).map_err(s)?;
    let out = separation_from_cover(&g, &cover, 1).map_err(s)?;
    ensure!(
        out.separation.is_separation(&g) && out.separation.is_balanced(g.n()),
        "cover separation invalid"
    );
    ensure!(
        out.independence == alpha_exact(&g, &out.separation.separator()).map_err(s)?,
        "reported α is wrong"
    );
    Ok(())
}

// layered constructions

fn check_layered(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    validate_td(&g, &ld.td).map_err(s)?;
    ld.layering.check(&g).map_err(s)?;
    let a = layered_independence_number(&g, &ld.td, &ld.layering).map_err(s)?;
    ensure!(
        a <= ld.bound,
        "layered α = {a} exceeds declared {}",
        ld.bound
    );
    ensure!(
        ld.td.len() == 4 * c.len() - 2,
        "strip path has {} nodes",
        ld.td.len()
    );
    ensure!(
        ld.td
            .edges()
            .iter()
            .enumerate()
            .all(|(i, &e)| e == (i, i + 1)),
        "strip tree is not a path"
    );
    Ok(())
}

fn check_strip_td(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let window = 4.0;
    let min_x = c
        .objects
        .iter()
        .map(|o| o.horizontal_part().0)
        .fold(f64::INFINITY, f64::min);
    let keep: Vec<usize> = (0..c.len())
        .filter(|&i| {
            let (a, b) = c.objects[i].horizontal_part();
            a >= min_x
                && b <= min_x + window
                    - if c.kind == InstanceKind::GridPathsV || c.kind == InstanceKind::GridPathsE {
                        1.0
                    } else {
                        0.0
                    }
        })
        .collect();
    if keep.is_empty() {
        return Ok(());
    }
    let sub = c.subset(&keep);
    let g = intersection_graph(&sub).map_err(s)?;
    let st = strip_td(&sub, window).map_err(s)?;
    validate_td(&g, &st.td).map_err(s)?;
    let a = td_independence_number(&g, &st.td).map_err(s)?;
    ensure!(a <= st.bound, "strip α(T) = {a} exceeds {}", st.bound);
    Ok(())
}

// fat cover

fn check_grid_refinement(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let (sc, _) = scale_collection(c).map_err(s)?;
    let f = fragility_function(2, sc.dimension).map_err(s)?;
    let (grid, ranks) = HierGrid::for_collection(&sc, f).map_err(s)?;
    for y in shifts(f, sc.dimension).iter().step_by(5) {
        for (v, o) in sc.objects.iter().enumerate() {
            let Some(m) = grid.enclosing_cell(o, ranks[v], y) else {
                continue;
            };
            let i = ranks[v];
            let (lo, hi) = grid.cell_box(i, y, &m);
            for coarse in 0..i {
                let mc = grid.containing_cell(i, &m, y, coarse);
                let (clo, chi) = grid.cell_box(coarse, y, &mc);
                ensure!(
                    (0..lo.len()).all(|j| clo[j] <= lo[j] && hi[j] <= chi[j]),
                    "rank-{i} cell escapes its rank-{coarse} cell"
                );
            }
        }
    }
    Ok(())
}

fn check_membership_two_ways(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let (sc, _) = scale_collection(c).map_err(s)?;
    for r0 in [2u32, 3] {
        let f = fragility_function(r0, sc.dimension).map_err(s)?;
        let (grid, ranks) = HierGrid::for_collection(&sc, f).map_err(s)?;
        for y in shifts(f, sc.dimension) {
            for (v, o) in sc.objects.iter().enumerate() {
                let a = grid.avoids(o, ranks[v], &y);
                let b = grid.enclosing_cell(o, ranks[v], &y).is_some();
                ensure!(
                    a == b,
                    "membership tests disagree for vertex {v} at shift {y:?}"
                );
            }
        }
    }
    Ok(())
}

fn check_unique_rank_bag(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let (sc, _) = scale_collection(c).map_err(s)?;
    let f = fragility_function(2, sc.dimension).map_err(s)?;
    let (grid, ranks) = HierGrid::for_collection(&sc, f).map_err(s)?;
    for y in shifts(f, sc.dimension) {
        let el = shift_element(&sc, &grid, &ranks, &y, 0);
        for &v in &el.element.vertices {
            let hits = el
                .cells
                .iter()
                .enumerate()
                .filter(|(node, (i, _))| *i == ranks[v] && el.element.td.bag(node + 1).contains(&v))
                .count();
            ensure!(
                hits == 1,
                "vertex {v} lies in {hits} bags of its own rank at shift {y:?}"
            );
        }
    }
    Ok(())
}

fn check_fat_cover(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let (sc, _) = scale_collection(c).map_err(s)?;
    let g = intersection_graph(&sc).map_err(s)?;
    for r0 in [2u32, 3] {
        let cover = general_cover_fat(&sc, 16, r0).map_err(s)?;
        let f = fragility_function(r0, 2).map_err(s)?;
        ensure!(
            cover.len() as u64 == (f / 2) * (f / 2),
            "cover has {} elements",
            cover.len()
        );
        let counts = cover.membership_counts(g.n());
        for &k in &counts {
            ensure!(
                k as u64 * r0 as u64 >= (r0 as u64 - 1) * cover.len() as u64,
                "vertex covered only {k} times"
            );
        }
        cover.validate(&g).map_err(s)?;
        for e in &cover.elements {
            ensure!(e.td.len() <= g.n() + 1, "element tree too large");
            let (h, _) = g.induced(&e.vertices);
            let a = td_independence_number(&h, &local_td(&g, &e.vertices, &e.td)).map_err(s)?;
            ensure!(
                a as u64 <= cover.declared_alpha.unwrap_or(u64::MAX),
                "element α(T) = {a} above declared bound"
            );
        }
    }
    Ok(())
}

fn check_odd_power(c: &ObjectCollection, _: u64) -> Result<(), String> {
    let g = intersection_graph(c).map_err(s)?;
    for k in [1usize, 2] {
        let out = odd_power_fat_realization(c, &g, k).map_err(s)?;
        ensure!(
            intersection_graph(&out).map_err(s)? == graph_power(&g, 2 * k + 1).map_err(s)?,
            "realization of power {} differs",
            2 * k + 1
        );
    }
    Ok(())
}

// packing

fn check_dp_oracle(c: &ObjectCollection, seed: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let wg = WeightedGraph::new(g, random_weights(c.len(), seed)).map_err(s)?;
    let sol = mwis_on_td(&wg, &ld.td).map_err(s)?;
    let (set, w) = bruteforce_mwis(&wg).map_err(s)?;
    ensure!(
        wg.graph.is_independent(&sol.set),
        "DP returned a dependent set"
    );
    ensure!(
        sol.weight == w,
        "DP weight {} differs from brute force {}",
        weight::format_rational(&sol.weight),
        weight::format_rational(&w)
    );
    ensure!(
        sol.set == set,
        "DP set {:?} differs from the tie-broken optimum {set:?}",
        sol.set
    );
    Ok(())
}

fn check_state_bound(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let k = td_independence_number(&g, &ld.td).map_err(s)?;
    let sol = mwis_on_td(&WeightedGraph::unit(g), &ld.td).map_err(s)?;
    let b = ld.td.max_bag_size();
    let mut bound = 0usize;
    let mut binom = 1usize;
    for i in 0..=k.min(b) {
        bound = bound.saturating_add(binom);
        binom = binom.saturating_mul(b - i) / (i + 1);
    }
    ensure!(
        sol.stats.max_states <= bound,
        "{} states at a node, bound {bound}",
        sol.stats.max_states
    );
    Ok(())
}

fn check_packing_oracle(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let fam = edge_family(&g, true);
    if fam.len() > 20 {
        return Ok(());
    }
    let sol = max_weight_independent_packing(&g, &fam, &ld.td).map_err(s)?;
    let (_, w) = bruteforce_packing(&g, &fam, 2).map_err(s)?;
    ensure!(
        is_distance_packing(&g, &fam, &sol.set, 2),
        "packing members too close"
    );
    ensure!(sol.weight == w, "packing weight differs from brute force");
    Ok(())
}

fn check_nice(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let nice = to_nice(&g, &ld.td).map_err(s)?;
    ensure!(
        nice.is_well_formed(),
        "nice decomposition breaks a node rule"
    );
    let td = nice.to_td();
    validate_td(&g, &td).map_err(s)?;
    ensure!(
        td_independence_number(&g, &td).map_err(s)?
            == td_independence_number(&g, &ld.td).map_err(s)?,
        "nice decomposition changed α(T)"
    );
    Ok(())
}

// ptas

fn ratio_ok(out: &PtasOutcome, g: &Graph, opt: &Weight) -> Result<(), String> {
    ensure!(
        g.is_independent(&out.selection),
        "{} returned a dependent set",
        out.report.method
    );
    ensure!(
        out.weight >= &out.report.guaranteed_ratio * opt,
        "{} achieved {} below {} × {}",
        out.report.method,
        weight::format_rational(&out.weight),
        weight::format_rational(&out.report.guaranteed_ratio),
        weight::format_rational(opt)
    );
    Ok(())
}

fn optimum(g: &Graph, weights: &[Weight]) -> Result<Weight, String> {
    if g.n() > MWIS_GUARD {
        return Err("instance too large for the oracle".into());
    }
    let wg = WeightedGraph::new(g.clone(), weights.to_vec()).map_err(s)?;
    Ok(bruteforce_mwis(&wg).map_err(s)?.1)
}

fn check_ptas_fat(c: &ObjectCollection, seed: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let w = random_weights(c.len(), seed);
    let opt = optimum(&g, &w)?;
    for r in [2u32, 3] {
        ratio_ok(
            &ptas_mwis_fat(c, 16, &w, r, &SolverOptions::default()).map_err(s)?,
            &g,
            &opt,
        )?;
    }
    Ok(())
}

fn check_ptas_cover_packing(c: &ObjectCollection, seed: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let fam = edge_family(&g, true);
    if fam.len() > 20 {
        return Ok(());
    }
    let (_, opt) = bruteforce_packing(&g, &fam, 2).map_err(s)?;
    for r in [3usize, 5] {
        let cover = cover_from_layering(&g, &ld.td, &ld.layering, r, ld.bound).map_err(s)?;
        let out = ptas_packing_from_cover(&g, &cover, &fam, r as u64, &SolverOptions::default())
            .map_err(s)?;
        ensure!(
            is_distance_packing(&g, &fam, &out.selection, 2),
            "cover packing infeasible"
        );
        ensure!(
            out.weight >= &out.report.guaranteed_ratio * &opt,
            "cover packing below guarantee (seed {seed})"
        );
        let mut bigger = cover.clone();
        bigger.elements.push(crate::decomposition::CoverElement {
            vertices: (0..g.n()).collect(),
            td: ld.td.clone(),
            provenance: Default::default(),
        });
        let more = ptas_packing_from_cover(&g, &bigger, &fam, r as u64, &SolverOptions::default())
            .map_err(s)?;
        ensure!(
            more.weight >= out.weight,
            "adding the full element decreased the result"
        );
    }
    Ok(())
}

fn check_ptas_distance(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let ld = layered_for(c).map_err(s)?;
    let fam = SubgraphFamily::singletons(&weight::unit_weights(g.n()));
    let (_, opt) = bruteforce_packing(&g, &fam, 4).map_err(s)?;
    let out = ptas_distance_d(
        &g,
        &ld.td,
        &ld.layering,
        ld.bound,
        &fam,
        4,
        5,
        &SolverOptions::default(),
    )
    .map_err(s)?;
    ensure!(
        is_distance_packing(&g, &fam, &out.selection, 4),
        "distance-4 packing infeasible"
    );
    ensure!(
        out.weight >= &out.report.guaranteed_ratio * &opt,
        "distance-4 packing below guarantee"
    );
    Ok(())
}

fn check_ptas_shifting(c: &ObjectCollection, seed: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let g = intersection_graph(c).map_err(s)?;
    let w = random_weights(c.len(), seed);
    let opt = optimum(&g, &w)?;
    for eps in [weight::ratio(1, 2), weight::ratio(17, 50)] {
        let out = match c.kind {
            InstanceKind::GridPathsV | InstanceKind::GridPathsE => ptas_mwis_shifting_paths(
                c,
                c.path_mode(),
                c.params.ell.unwrap_or(1),
                &eps,
                &w,
                &SolverOptions::default(),
            ),
            _ => ptas_mwis_shifting_geom(c, &eps, &w, &SolverOptions::default()),
        }
        .map_err(s)?;
        ratio_ok(&out, &g, &opt)?;
    }
    Ok(())
}

fn check_shifting_multiplicity(c: &ObjectCollection, _: u64) -> Result<(), String> {
    if c.is_empty() {
        return Ok(());
    }
    let ell = c.params.ell.unwrap_or(1) as i64;
    let min_x = c
        .objects
        .iter()
        .map(|o| o.horizontal_part().0)
        .fold(f64::INFINITY, f64::min);
    let columns: Vec<Vec<i64>> = c
        .objects
        .iter()
        .map(|o| {
            let (a, b) = o.horizontal_part();
            ((a - min_x) as i64..(b - min_x) as i64).collect()
        })
        .collect();
    for k in [2i64, 3] {
        let classes = shifting_classes(&columns, k * ell);
        let mut count = vec![0usize; c.len()];
        for class in &classes {
            for &v in class {
                count[v] += 1;
            }
        }
        ensure!(
            count.iter().all(|&m| m <= ell as usize),
            "a path lies in more than ℓ residue classes"
        );
    }
    Ok(())
}

fn check_empty_solution_weight(c: &ObjectCollection, _: u64) -> Result<(), String> {
    let g = intersection_graph(c).map_err(s)?;
    let td = TreeDecomposition::single_bag(Vec::new());
    if g.n() == 0 {
        let sol = mwis_on_td(&WeightedGraph::unit(g), &td).map_err(s)?;
        ensure!(sol.weight.is_zero(), "empty graph has positive optimum");
    }
    Ok(())
}

fn g_unit_disks(seed: u64) -> crate::Result<ObjectCollection> {
    gen(GeneratorKind::UnitDisks, 14, seed)
}
fn g_unit_disks_small(seed: u64) -> crate::Result<ObjectCollection> {
    gen(GeneratorKind::UnitDisks, 10, seed)
}
fn g_disks(seed: u64) -> crate::Result<ObjectCollection> {
    generate_instance(&GeneratorSpec::new(GeneratorKind::Disks, 14, seed).ratio(6.0))
}
fn g_similar(seed: u64) -> crate::Result<ObjectCollection> {
    gen(GeneratorKind::SimilarDisks, 16, seed)
}
fn g_rects(seed: u64) -> crate::Result<ObjectCollection> {
    gen(GeneratorKind::UnitWidthRects, 14, seed)
}
fn g_paths_v(seed: u64) -> crate::Result<ObjectCollection> {
    generate_instance(
        &GeneratorSpec::new(GeneratorKind::GridPathsV, 14, seed).ell(1 + seed as u32 % 2),
    )
}
fn g_paths_e(seed: u64) -> crate::Result<ObjectCollection> {
    generate_instance(
        &GeneratorSpec::new(GeneratorKind::GridPathsE, 14, seed).ell(1 + seed as u32 % 2),
    )
}
fn g_paths_small(seed: u64) -> crate::Result<ObjectCollection> {
    generate_instance(&GeneratorSpec::new(GeneratorKind::GridPathsV, 8, seed).ell(1))
}

/// Every registered property.
pub fn all_cases() -> Vec<PropertyCase> {
    macro_rules! case {
        ($id:expr, $module:expr, $inv:expr, $seeds:expr, $g:expr, $c:expr) => {
            PropertyCase {
                id: $id,
                module: $module,
                invariant: $inv,
                seeds: $seeds,
                generate: $g,
                check: $c,
            }
        };
    }
    vec![
        case!(
            "intersects_symmetric",
            "geometry",
            "intersection is symmetric and reflexive in vertex mode",
            8,
            g_disks,
            check_intersects_symmetric
        ),
        case!(
            "intersects_symmetric_paths",
            "geometry",
            "intersection is symmetric for both path modes",
            8,
            g_paths_e,
            check_intersects_symmetric
        ),
        case!(
            "generator_deterministic",
            "geometry",
            "equal seeds give identical instances",
            3,
            g_unit_disks,
            check_generator_deterministic
        ),
        case!(
            "rank_bounds",
            "geometry",
            "(1/r)^{rk+1} < s(o) ≤ (1/r)^{rk}",
            8,
            g_disks,
            check_ranks
        ),
        case!(
            "fatness_estimate",
            "geometry",
            "probe-box estimate never exceeds the declared constant",
            5,
            g_disks,
            check_fatness_estimate
        ),
        case!(
            "kind_validation",
            "geometry",
            "generated instances satisfy their kind's constraints",
            8,
            g_paths_e,
            check_kind_validation
        ),
        case!(
            "power_by_bfs",
            "graph_core",
            "G^p has an edge exactly at distance ≤ p; powers are monotone",
            6,
            g_unit_disks,
            check_power
        ),
        case!(
            "conflict_singletons",
            "graph_core",
            "conflict graph of singletons is the graph",
            6,
            g_rects,
            check_conflict_singletons
        ),
        case!(
            "intersection_relabel",
            "graph_core",
            "intersection graph is invariant under relabelling",
            6,
            g_disks,
            check_permutation
        ),
        case!(
            "bruteforce_packing_distance",
            "graph_core",
            "brute-force packings respect the distance",
            6,
            g_unit_disks_small,
            check_bruteforce_packing
        ),
        case!(
            "sqrt_compress",
            "decomposition",
            "compressed α(T) ≤ 2√(kn) and the output validates",
            8,
            g_unit_disks,
            check_sqrt_compress
        ),
        case!(
            "sqrt_compress_paths",
            "decomposition",
            "compressed α(T) ≤ 2√(kn) on grid paths",
            8,
            g_paths_v,
            check_sqrt_compress
        ),
        case!(
            "cover_from_layering",
            "decomposition",
            "layering covers validate with α ≤ ℓ(r−1)",
            6,
            g_rects,
            check_cover_from_layering
        ),
        case!(
            "lift_power",
            "decomposition",
            "power lift validates with layered α ≤ (1+4d)k",
            6,
            g_unit_disks,
            check_lift_power
        ),
        case!(
            "lift_conflict",
            "decomposition",
            "conflict lift validates on the conflict graph",
            6,
            g_unit_disks,
            check_lift_conflict
        ),
        case!(
            "restrict_to_ball",
            "decomposition",
            "ball restriction validates on the ball",
            6,
            g_similar,
            check_ball
        ),
        case!(
            "balanced_separation",
            "decomposition",
            "bag separation is balanced and equals a bag",
            8,
            g_unit_disks,
            check_balanced_separation
        ),
        case!(
            "cover_separation",
            "decomposition",
            "cover separation is balanced with exact separator α",
            6,
            g_rects,
            check_cover_separation
        ),
        case!(
            "layered_unit_disks",
            "layered_constructions",
            "unit disks: valid, layered α ≤ 3, path of 4n−2 nodes",
            10,
            g_unit_disks,
            check_layered
        ),
        case!(
            "layered_rects",
            "layered_constructions",
            "unit-width rects: valid, layered α ≤ 1",
            10,
            g_rects,
            check_layered
        ),
        case!(
            "layered_paths_v",
            "layered_constructions",
            "grid paths (v): layered α ≤ 2ℓ",
            10,
            g_paths_v,
            check_layered
        ),
        case!(
            "layered_paths_e",
            "layered_constructions",
            "grid paths (e): layered α ≤ 6ℓ−1",
            10,
            g_paths_e,
            check_layered
        ),
        case!(
            "layered_fat",
            "layered_constructions",
            "similarly sized fat: layered α ≤ ⌈2√2k⌉c",
            6,
            g_similar,
            check_layered
        ),
        case!(
            "strip_td_disks",
            "layered_constructions",
            "strip decompositions meet their bound",
            8,
            g_unit_disks,
            check_strip_td
        ),
        case!(
            "strip_td_paths",
            "layered_constructions",
            "strip decompositions of paths meet their bound",
            8,
            g_paths_e,
            check_strip_td
        ),
        case!(
            "grid_refinement",
            "fat_cover",
            "every cell lies inside its coarser containing cells",
            5,
            g_disks,
            check_grid_refinement
        ),
        case!(
            "membership_two_ways",
            "fat_cover",
            "axis test and cell containment agree",
            5,
            g_disks,
            check_membership_two_ways
        ),
        case!(
            "unique_rank_bag",
            "fat_cover",
            "each survivor lies in exactly one bag of its rank",
            5,
            g_disks,
            check_unique_rank_bag
        ),
        case!(
            "fat_cover_bounds",
            "fat_cover",
            "coverage ≥ 1−1/r₀, elements validate, α ≤ c·f^{2d}",
            3,
            g_disks,
            check_fat_cover
        ),
        case!(
            "odd_power_realization",
            "fat_cover",
            "union objects realize G^{2k+1}",
            4,
            g_unit_disks_small,
            check_odd_power
        ),
        case!(
            "dp_oracle",
            "packing_solver",
            "DP equals brute force, ties included",
            10,
            g_unit_disks,
            check_dp_oracle
        ),
        case!(
            "dp_oracle_paths",
            "packing_solver",
            "DP equals brute force on grid paths",
            10,
            g_paths_e,
            check_dp_oracle
        ),
        case!(
            "dp_state_bound",
            "packing_solver",
            "states per node ≤ Σ_{i≤α} C(|bag|, i)",
            8,
            g_unit_disks,
            check_state_bound
        ),
        case!(
            "packing_oracle",
            "packing_solver",
            "packing DP equals brute force",
            8,
            g_paths_small,
            check_packing_oracle
        ),
        case!(
            "nice_shape",
            "packing_solver",
            "nice decompositions are well formed with unchanged α",
            6,
            g_rects,
            check_nice
        ),
        case!(
            "empty_graph",
            "packing_solver",
            "the empty graph has optimum 0",
            1,
            g_unit_disks,
            check_empty_solution_weight
        ),
        case!(
            "ptas_fat",
            "ptas",
            "fat-cover PTAS ≥ (1−1/r)·OPT and feasible",
            4,
            g_disks,
            check_ptas_fat
        ),
        case!(
            "ptas_cover_packing",
            "ptas",
            "cover packing ≥ (1−h/r)·OPT, feasible and monotone",
            4,
            g_paths_small,
            check_ptas_cover_packing
        ),
        case!(
            "ptas_distance",
            "ptas",
            "distance-4 packing ≥ (1−1/r)·OPT",
            4,
            g_unit_disks_small,
            check_ptas_distance
        ),
        case!(
            "ptas_shifting_disks",
            "ptas",
            "shifting on disks ≥ (1−ε)·OPT",
            5,
            g_unit_disks,
            check_ptas_shifting
        ),
        case!(
            "ptas_shifting_rects",
            "ptas",
            "shifting on rects ≥ (1−ε)·OPT",
            5,
            g_rects,
            check_ptas_shifting
        ),
        case!(
            "ptas_shifting_paths",
            "ptas",
            "shifting on paths ≥ (1−ε)·OPT",
            5,
            g_paths_v,
            check_ptas_shifting
        ),
        case!(
            "shifting_multiplicity",
            "ptas",
            "each path lies in at most ℓ residue classes",
            8,
            g_paths_e,
            check_shifting_multiplicity
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shrinking_keeps_the_failure() {
        fn needs_three(c: &ObjectCollection, _: u64) -> Result<(), String> {
            if c.len() >= 3 {
                Err("too many objects".into())
            } else {
                Ok(())
            }
        }
        let c = gen(GeneratorKind::UnitDisks, 9, 1).unwrap();
        let (small, msg) = shrink(&c, 1, needs_three);
        assert_eq!(small.len(), 3);
        assert_eq!(msg, "too many objects");
    }

    #[test]
    fn junit_lists_every_case() {
        let report = SuiteReport {
            cases: vec![CaseResult {
                id: "a<b".into(),
                module: "m".into(),
                invariant: "i".into(),
                runs: 1,
                time_ms: 1.0,
                failure: None,
            }],
        };
        let xml = report.to_junit_xml();
        assert!(xml.contains("name=\"a&lt;b\""));
        assert!(xml.contains("failures=\"0\""));
    }
}
