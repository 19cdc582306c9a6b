use std::time::Instant;

use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{best_index, ms_since, ElementStat, PtasOutcome, PtasReport};
use crate::error::{Error, Result};
use crate::geometry::{GeometricObject, InstanceKind, ObjectCollection, PathMode};
use crate::graph::{intersection_graph_with_mode, Graph, WeightedGraph};
use crate::layered::strip_td;
use crate::packing::{mwis_on_td_with, SolverOptions};
use crate::weight::{self, Weight};

/// For each residue `d` modulo `period`, the vertices owning a column
/// congruent to `d`.
pub fn shifting_classes(columns: &[Vec<i64>], period: i64) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); period.max(0) as usize];
    for (v, cols) in columns.iter().enumerate() {
        let mut residues: Vec<usize> = cols.iter().map(|c| c.rem_euclid(period) as usize).collect();
        residues.sort_unstable();
        residues.dedup();
        for d in residues {
            classes[d].push(v);
        }
    }
    classes
}

/// Columns `i` such that the path uses a horizontal edge from `x = i` to
/// `x = i+1`, measured from `min_x`.
fn path_columns(o: &GeometricObject, min_x: i64) -> Vec<i64> {
    let GeometricObject::GridPath { points } = o else {
        return Vec::new();
    };
    let mut cols: Vec<i64> = points
        .windows(2)
        .filter(|w| w[0][0] != w[1][0])
        .flat_map(|w| w[0][0].min(w[1][0])..w[0][0].max(w[1][0]))
        .map(|i| i - min_x)
        .collect();
    cols.sort_unstable();
    cols.dedup();
    cols
}

/// Unit columns `[i·u, (i+1)·u)` (measured from `min_x`) met by the
/// object's horizontal part.
fn unit_columns(o: &GeometricObject, min_x: f64, u: f64) -> Vec<i64> {
    let (a, b) = o.horizontal_part();
    let first = ((a - min_x) / u).floor() as i64;
    let last = ((b - min_x) / u).floor() as i64;
    (first..=last).collect()
}

fn epsilon_k(eps: &Weight, numerator: i64) -> Result<i64> {
    if !(eps > &Weight::zero() && eps < &Weight::one()) {
        return Err(Error::input(format!(
            "ε = {} must lie strictly between 0 and 1",
            weight::format_rational(eps)
        )));
    }
    weight::ceil(&(weight::int(numerator) / eps))
        .to_i64()
        .filter(|&k| k <= 1 << 20)
        .ok_or_else(|| Error::input("ε is too small"))
}

struct Shifting<'a> {
    c: &'a ObjectCollection,
    g: &'a Graph,
    weights: &'a [Weight],
    columns: Vec<Vec<i64>>,
    period: i64,
    multiplicity: usize,
    window: f64,
}

impl Shifting<'_> {
    fn solve_residue(
        &self,
        d: usize,
        removed: &[usize],
        opts: &SolverOptions,
    ) -> Result<(Vec<usize>, ElementStat)> {
        let mut alive = vec![true; self.g.n()];
        for &v in removed {
            alive[v] = false;
        }
        let mut chosen = Vec::new();
        let mut states = 0;
        for comp in self.g.components(Some(&alive)) {
            let sub = self.c.subset(&comp);
            let strip = strip_td(&sub, self.window)?;
            let (h, map) = self.g.induced(&comp);
            let wg =
                WeightedGraph::new(h, comp.iter().map(|&v| self.weights[v].clone()).collect())?;
            let sol = mwis_on_td_with(&wg, &strip.td, opts)?;
            states += sol.stats.total_states;
            chosen.extend(sol.set.iter().map(|&i| map[i]));
        }
        chosen.sort_unstable();
        let w = chosen
            .iter()
            .fold(Weight::zero(), |acc, &v| acc + &self.weights[v]);
        let kept = alive.iter().filter(|&&a| a).count();
        Ok((
            chosen,
            ElementStat {
                index: d,
                vertices: kept,
                members: kept,
                weight: w,
                states,
            },
        ))
    }

    fn run(&self, method: &str, eps: &Weight, opts: &SolverOptions) -> Result<PtasOutcome> {
        let start = Instant::now();
        let classes = shifting_classes(&self.columns, self.period);
        let mut count = vec![0usize; self.g.n()];
        for class in &classes {
            for &v in class {
                count[v] += 1;
            }
        }
        if let Some(v) = (0..self.g.n()).find(|&v| count[v] > self.multiplicity) {
            return Err(Error::BoundViolated(format!(
                "vertex {v} lies in {} residue classes, more than {}",
                count[v], self.multiplicity
            )));
        }
        let results: Vec<(Vec<usize>, ElementStat)> = classes
            .par_iter()
            .enumerate()
            .map(|(d, class)| self.solve_residue(d, class, opts))
            .collect::<Result<_>>()?;
        let chosen = best_index(results.iter().map(|r| r.1.weight.clone()));
        let selection = results[chosen].0.clone();
        if !self.g.is_independent(&selection) {
            return Err(Error::BoundViolated(
                "shifting selection is not independent".into(),
            ));
        }
        let achieved = results[chosen].1.weight.clone();
        let report = PtasReport {
            instance: String::new(),
            method: method.into(),
            r: None,
            epsilon: Some(eps.clone()),
            achieved: achieved.clone(),
            optimum: None,
            guaranteed_ratio: Weight::one() - eps,
            achieved_ratio: None,
            declared_alpha: None,
            chosen,
            elements: results.into_iter().map(|r| r.1).collect(),
            wall_time_ms: ms_since(start),
        };
        Ok(PtasOutcome {
            selection,
            weight: achieved,
            report,
        })
    }
}

fn check_weights(c: &ObjectCollection, weights: &[Weight]) -> Result<()> {
    if weights.len() != c.len() {
        return Err(Error::input(
            "weight vector length differs from object count",
        ));
    }
    if !weights.iter().all(weight::is_non_negative) {
        return Err(Error::input("weights must be non-negative"));
    }
    Ok(())
}

/// Shifting scheme for grid paths whose horizontal parts are at most `ell`.
/// With `k = ⌈1/ε⌉`, residue class `d` deletes every path with a horizontal
/// edge in a column congruent to `d` modulo `kℓ`; the rest falls apart into
/// pieces at most `kℓ` columns wide that are solved exactly.
pub fn ptas_mwis_shifting_paths(
    c: &ObjectCollection,
    mode: PathMode,
    ell: u32,
    eps: &Weight,
    weights: &[Weight],
    opts: &SolverOptions,
) -> Result<PtasOutcome> {
    let expected = match mode {
        PathMode::Vertex => InstanceKind::GridPathsV,
        PathMode::Edge => InstanceKind::GridPathsE,
    };
    if c.kind != expected {
        return Err(Error::KindMismatch {
            expected: expected.name().into(),
            found: c.kind.name().into(),
        });
    }
    check_weights(c, weights)?;
    if ell == 0 {
        return Err(Error::input("ℓ must be at least 1"));
    }
    let k = epsilon_k(eps, 1)?;
    for o in &c.objects {
        let (a, b) = o.horizontal_part();
        if b - a > ell as f64 {
            return Err(Error::input(format!(
                "horizontal part {} exceeds ℓ = {ell}",
                b - a
            )));
        }
    }
    let g = intersection_graph_with_mode(c, mode)?;
    let min_x = c
        .objects
        .iter()
        .map(|o| o.horizontal_part().0)
        .fold(f64::INFINITY, f64::min) as i64;
    let period = k * ell as i64;
    let shifting = Shifting {
        c,
        g: &g,
        weights,
        columns: c.objects.iter().map(|o| path_columns(o, min_x)).collect(),
        period,
        multiplicity: ell as usize,
        window: period as f64,
    };
    shifting.run(&format!("shifting-paths-{}", mode.tag()), eps, opts)
}

/// Shifting scheme for unit disks (`k = ⌈3/ε⌉`) and unit-width rectangles
/// (`k = ⌈2/ε⌉`). Columns have width `r` or `c`; after deleting one residue
/// class modulo `k` every component fits in a window of `k−1` columns.
pub fn ptas_mwis_shifting_geom(
    c: &ObjectCollection,
    eps: &Weight,
    weights: &[Weight],
    opts: &SolverOptions,
) -> Result<PtasOutcome> {
    let (unit, spread, method) = match c.kind {
        InstanceKind::UnitDisks => (c.params.radius, 3, "shifting-disks"),
        InstanceKind::UnitWidthRects => (c.params.width, 2, "shifting-rects"),
        other => {
            return Err(Error::KindMismatch {
                expected: "unit_disks or unit_width_rects".into(),
                found: other.name().into(),
            })
        }
    };
    let u = match unit {
        Some(u) if u.is_finite() && u > 0.0 => u,
        _ => return Err(Error::input("collection lacks its common radius or width")),
    };
    check_weights(c, weights)?;
    let k = epsilon_k(eps, spread)?;
    if c.is_empty() {
        return Err(Error::input("empty collection"));
    }
    let g = intersection_graph_with_mode(c, PathMode::Vertex)?;
    let min_x = c
        .objects
        .iter()
        .map(|o| o.horizontal_part().0)
        .fold(f64::INFINITY, f64::min);
    let shifting = Shifting {
        c,
        g: &g,
        weights,
        columns: c
            .objects
            .iter()
            .map(|o| unit_columns(o, min_x, u))
            .collect(),
        period: k,
        multiplicity: spread as usize,
        window: (k - 1) as f64 * u,
    };
    shifting.run(method, eps, opts)
}
