//! Shifted hierarchical grids and the general cover they induce on fat
//! collections, plus the union-object realization of odd graph powers.
//!
//! Grid coordinates are kept as exact integers in units of `r^{-(k₀+1)}`,
//! where `k₀` is the largest object rank. In those units rank-`i` cells have
//! side `r^{k₀+2−i}` and the rank-`i` hyperplanes on axis `j` for shift `y`
//! sit at `m·r^{k₀+2−i} + y_j·Σ_{k=i}^{k₀+1} r^{k₀+1−k}`.

use std::collections::HashMap;

use crate::decomposition::{CoverElement, GeneralCover, Provenance, TreeDecomposition};
use crate::error::{Error, Result};
use crate::geometry::{
    intersects, rank_of, GeometricObject, InstanceKind, ObjectCollection, EPS_GEO, RANK_SNAP,
};
use crate::graph::{graph_power, intersection_graph, Graph};
use crate::weight;

/// Largest grid coordinate (in units) that still converts to `f64` exactly.
const MAX_UNITS: f64 = (1u64 << 50) as f64;

/// `f(r₀) = 2⌈1/(1−(1−1/r₀)^{1/d})⌉`.
pub fn fragility_function(r0: u32, d: usize) -> Result<u64> {
    if r0 < 2 {
        return Err(Error::input("r₀ must be at least 2"));
    }
    if d < 1 {
        return Err(Error::input("dimension must be positive"));
    }
    let base = 1.0 - 1.0 / r0 as f64;
    let x = 1.0 / (1.0 - base.powf(1.0 / d as f64));
    let mut c = x.ceil();
    if c - x > 1.0 - 1e-9 {
        c -= 1.0;
    }
    Ok(2 * c as u64)
}

/// All shift vectors `{0,…,r/2−1}^d` in lexicographic order.
pub fn shifts(r: u64, d: usize) -> Vec<Vec<u64>> {
    let half = r / 2;
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (0..half).map(move |y| {
                    let mut q = p.clone();
                    q.push(y);
                    q
                })
            })
            .collect();
    }
    out
}

/// Hierarchical grid family with base `r` over ranks `0..=k₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct HierGrid {
    r: u64,
    k0: u32,
    d: usize,
    scale: f64,
}

impl HierGrid {
    pub fn new(r: u64, k0: u32, d: usize) -> Result<Self> {
        if r < 2 || r % 2 != 0 {
            return Err(Error::input("grid base must be an even integer ≥ 2"));
        }
        let top = (r as f64).powi(k0 as i32 + 2);
        if top > MAX_UNITS {
            return Err(Error::GuardExceeded {
                what: "hierarchical grid depth",
                limit: 50,
                actual: top.log2().ceil() as usize,
            });
        }
        Ok(HierGrid {
            r,
            k0,
            d,
            scale: (r as f64).powi(k0 as i32 + 1),
        })
    }

    /// Grid for a scaled collection together with every object's rank.
    pub fn for_collection(c: &ObjectCollection, r: u64) -> Result<(Self, Vec<u32>)> {
        let r32 = u32::try_from(r).map_err(|_| Error::input("grid base too large"))?;
        let ranks: Vec<u32> = c
            .objects
            .iter()
            .map(|o| rank_of(o, r32))
            .collect::<Result<_>>()?;
        let k0 = ranks.iter().copied().max().unwrap_or(0);
        Ok((HierGrid::new(r, k0, c.dimension)?, ranks))
    }

    pub fn base(&self) -> u64 {
        self.r
    }

    pub fn max_rank(&self) -> u32 {
        self.k0
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    fn pow(&self, e: u32) -> i128 {
        (self.r as i128).pow(e)
    }

    /// Side of a rank-`i` cell in grid units.
    pub fn period(&self, i: u32) -> i128 {
        self.pow(self.k0 + 2 - i)
    }

    /// Rank-`i` hyperplane offset for shift coordinate `y`, in grid units.
    pub fn offset(&self, i: u32, y: u64) -> i128 {
        let s: i128 = (i..=self.k0 + 1).map(|k| self.pow(self.k0 + 1 - k)).sum();
        y as i128 * s
    }

    fn tol(&self) -> f64 {
        EPS_GEO * self.scale
    }

    fn units(&self, x: f64) -> f64 {
        x * self.scale
    }

    /// True if no rank-`i` hyperplane of shift `y` comes within tolerance of
    /// the object's bounding box, tested axis by axis.
    pub fn avoids(&self, o: &GeometricObject, i: u32, y: &[u64]) -> bool {
        let (lo, hi) = o.bbox();
        let p = self.period(i) as f64;
        (0..self.d).all(|j| {
            let off = self.offset(i, y[j]) as f64;
            let first = ((self.units(lo[j]) - self.tol() - off) / p).ceil();
            let last = ((self.units(hi[j]) + self.tol() - off) / p).floor();
            first > last
        })
    }

    /// The rank-`i` cell strictly containing the object, if any.
    pub fn enclosing_cell(&self, o: &GeometricObject, i: u32, y: &[u64]) -> Option<Vec<i128>> {
        let (lo, hi) = o.bbox();
        let p = self.period(i);
        let mut m = Vec::with_capacity(self.d);
        for j in 0..self.d {
            let off = self.offset(i, y[j]);
            let a = self.units(lo[j]);
            let b = self.units(hi[j]);
            let k = ((a - off as f64) / p as f64).floor() as i128;
            let left = (k * p + off) as f64;
            let right = ((k + 1) * p + off) as f64;
            if !(a - self.tol() > left && b + self.tol() < right) {
                return None;
            }
            m.push(k);
        }
        Some(m)
    }

    /// Closed box of cell `(i, m)` for shift `y`, in input coordinates.
    pub fn cell_box(&self, i: u32, y: &[u64], m: &[i128]) -> (Vec<f64>, Vec<f64>) {
        let p = self.period(i);
        let lo = (0..self.d)
            .map(|j| (m[j] * p + self.offset(i, y[j])) as f64 / self.scale)
            .collect();
        let hi = (0..self.d)
            .map(|j| ((m[j] + 1) * p + self.offset(i, y[j])) as f64 / self.scale)
            .collect();
        (lo, hi)
    }

    /// Index of the rank-`coarse` cell containing rank-`i` cell `m`.
    pub fn containing_cell(&self, i: u32, m: &[i128], y: &[u64], coarse: u32) -> Vec<i128> {
        let p = self.period(i);
        let q = self.period(coarse);
        (0..self.d)
            .map(|j| {
                let centre = m[j] * p + self.offset(i, y[j]) + p / 2;
                (centre - self.offset(coarse, y[j])).div_euclid(q)
            })
            .collect()
    }
}

/// Cover element for one shift, plus its per-node ranks and cells.
pub struct ShiftElement {
    pub element: CoverElement,
    /// `(rank, cell)` of every non-root node; node 0 is the glue root.
    pub cells: Vec<(u32, Vec<i128>)>,
}

/// Builds the element `C(y)` and its decomposition.
pub fn shift_element(
    c: &ObjectCollection,
    grid: &HierGrid,
    ranks: &[u32],
    y: &[u64],
    declared: u64,
) -> ShiftElement {
    let survivors: Vec<usize> = (0..c.len())
        .filter(|&v| grid.avoids(&c.objects[v], ranks[v], y))
        .collect();
    let mut keys: Vec<(u32, Vec<i128>)> = survivors
        .iter()
        .filter_map(|&v| {
            grid.enclosing_cell(&c.objects[v], ranks[v], y)
                .map(|m| (ranks[v], m))
        })
        .collect();
    keys.sort();
    keys.dedup();
    let index: HashMap<(u32, Vec<i128>), usize> = keys
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i + 1))
        .collect();
    let mut bags = vec![Vec::new()];
    let mut edges = Vec::new();
    for (node, (i, m)) in keys.iter().enumerate() {
        let (lo, hi) = grid.cell_box(*i, y, m);
        bags.push(
            survivors
                .iter()
                .copied()
                .filter(|&v| ranks[v] <= *i && c.objects[v].meets_box(&lo, &hi))
                .collect(),
        );
        let parent = (0..*i)
            .rev()
            .find_map(|coarse| {
                index
                    .get(&(coarse, grid.containing_cell(*i, m, y, coarse)))
                    .copied()
            })
            .unwrap_or(0);
        edges.push((node + 1, parent));
    }
    ShiftElement {
        element: CoverElement {
            vertices: survivors,
            td: TreeDecomposition::new(bags, edges),
            provenance: Provenance {
                construction: "fat-grid".into(),
                shift: Some(y.to_vec()),
                residue: None,
                declared_alpha: Some(declared),
            },
        },
        cells: keys,
    }
}

/// `(1−1/r₀)`-general cover of a `cfat`-fat collection scaled to maximum
/// size 1. One element per shift `y ∈ {0,…,f/2−1}^d`; every element has
/// `α(T) ≤ cfat·f^{2d}`.
pub fn general_cover_fat(c: &ObjectCollection, cfat: u64, r0: u32) -> Result<GeneralCover> {
    if c.is_empty() {
        return Err(Error::input("empty collection"));
    }
    let max = c.objects.iter().map(|o| o.size()).fold(0.0, f64::max);
    if max > 1.0 + RANK_SNAP {
        return Err(Error::input(format!(
            "collection has maximum size {max}; scale it to 1 first"
        )));
    }
    let d = c.dimension;
    let f = fragility_function(r0, d)?;
    let (grid, ranks) = HierGrid::for_collection(c, f)?;
    let declared = (0..2 * d as u32).fold(cfat, |acc, _| acc.saturating_mul(f));
    let elements = shifts(f, d)
        .iter()
        .map(|y| shift_element(c, &grid, &ranks, y, declared).element)
        .collect();
    Ok(GeneralCover {
        beta: weight::ratio(r0 as i64 - 1, r0 as i64),
        declared_alpha: Some(declared),
        elements,
    })
}

/// Replaces every object by the union of the objects within graph distance
/// `k` of it. The result realizes `G^{2k+1}` and is `3^d(2k+1)^d·c`-fat when
/// the input is `c`-fat.
pub fn odd_power_fat_realization(
    c: &ObjectCollection,
    g: &Graph,
    k: usize,
) -> Result<ObjectCollection> {
    let own = intersection_graph(c)?;
    if own != *g {
        return Err(Error::input(
            "graph is not the intersection graph of the collection",
        ));
    }
    if k == 0 {
        return Ok(c.clone());
    }
    let objects = (0..c.len())
        .map(|v| {
            let dist = g.bfs(&[v], Some(k));
            let members: Vec<GeometricObject> = (0..c.len())
                .filter(|&u| dist[u] <= k)
                .flat_map(|u| match &c.objects[u] {
                    GeometricObject::Union { members } => members.clone(),
                    o => vec![o.clone()],
                })
                .collect();
            if members.len() == 1 {
                members.into_iter().next().unwrap()
            } else {
                GeometricObject::Union { members }
            }
        })
        .collect();
    let d = c.dimension as u32;
    let factor = 3u64.pow(d).saturating_mul((2 * k as u64 + 1).pow(d));
    let mut out = ObjectCollection::generic(objects);
    out.dimension = c.dimension;
    out.weights = c.weights.clone();
    out.params.fatness = c.params.fatness.map(|f| f.saturating_mul(factor));
    let power = graph_power(g, 2 * k + 1)?;
    for u in 0..out.len() {
        for v in u + 1..out.len() {
            if intersects(&out.objects[u], &out.objects[v], c.path_mode())? != power.has_edge(u, v)
            {
                return Err(Error::BoundViolated(format!(
                    "realization disagrees with the power on pair ({u}, {v})"
                )));
            }
        }
    }
    debug_assert!(out.kind == InstanceKind::Generic);
    Ok(out)
}
