//! Geometric objects and their intersection predicates.
//!
//! Coordinates are `f64`; tangency is decided with the absolute tolerance
//! [`EPS_GEO`], so closed objects that touch count as intersecting. Grid paths
//! carry integer lattice points and are compared exactly.

mod fatness;
mod generate;

pub use fatness::{estimate_fatness, max_disjoint_hitting, probe_boxes, ProbeBox};
pub use generate::{generate_instance, GeneratorKind, GeneratorSpec};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

/// Absolute tolerance for tangency tests.
pub const EPS_GEO: f64 = 1e-9;

/// Relative tolerance used when snapping sizes to exact powers of `1/r`.
pub const RANK_SNAP: f64 = 1e-12;

pub type Point = Vec<f64>;

/// Adjacency rule for grid paths: shared lattice point or shared unit edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathMode {
    #[default]
    #[serde(rename = "v")]
    Vertex,
    #[serde(rename = "e")]
    Edge,
}

impl PathMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "v" | "vertex" => Ok(PathMode::Vertex),
            "e" | "edge" => Ok(PathMode::Edge),
            _ => Err(Error::input(format!("unknown path mode {s:?}"))),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            PathMode::Vertex => "v",
            PathMode::Edge => "e",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum GeometricObject {
    Disk {
        center: Point,
        radius: f64,
    },
    Box {
        min: Point,
        max: Point,
    },
    /// Axis-aligned lattice path given by its endpoints and bend points.
    #[serde(rename = "path")]
    GridPath {
        points: Vec<Vec<i64>>,
    },
    Union {
        members: Vec<GeometricObject>,
    },
}

/// Axis-aligned lattice segment: `axis` varies over `lo..=hi`, the other
/// coordinates are fixed at `at`.
#[derive(Clone, Debug)]
struct Segment {
    axis: usize,
    lo: i64,
    hi: i64,
    at: Vec<i64>,
}

impl Segment {
    fn to_box(&self) -> (Point, Point) {
        let mut min: Point = self.at.iter().map(|&c| c as f64).collect();
        let mut max = min.clone();
        min[self.axis] = self.lo as f64;
        max[self.axis] = self.hi as f64;
        (min, max)
    }

    fn same_line(&self, other: &Segment) -> bool {
        self.axis == other.axis
            && self
                .at
                .iter()
                .zip(&other.at)
                .enumerate()
                .all(|(k, (a, b))| k == self.axis || a == b)
    }
}

impl GeometricObject {
    pub fn disk(center: Point, radius: f64) -> Self {
        GeometricObject::Disk { center, radius }
    }

    pub fn rect(min: Point, max: Point) -> Self {
        GeometricObject::Box { min, max }
    }

    pub fn path(points: Vec<Vec<i64>>) -> Self {
        GeometricObject::GridPath { points }
    }

    /// Builds a union, rejecting member lists whose union is not connected.
    pub fn union(members: Vec<GeometricObject>) -> Result<Self> {
        let obj = GeometricObject::Union { members };
        obj.validate()?;
        Ok(obj)
    }

    pub fn dimension(&self) -> usize {
        match self {
            GeometricObject::Disk { center, .. } => center.len(),
            GeometricObject::Box { min, .. } => min.len(),
            GeometricObject::GridPath { points } => points.first().map_or(0, Vec::len),
            GeometricObject::Union { members } => members.first().map_or(0, |m| m.dimension()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidObject(msg));
        match self {
            GeometricObject::Disk { center, radius } => {
                if center.len() < 2 {
                    return bad(format!("disk center has dimension {}", center.len()));
                }
                if !center.iter().all(|c| c.is_finite()) {
                    return bad("disk center is not finite".into());
                }
                if !(radius.is_finite() && *radius > 0.0) {
                    return bad(format!("disk radius {radius} is not positive"));
                }
            }
            GeometricObject::Box { min, max } => {
                if min.len() < 2 || min.len() != max.len() {
                    return bad("box corners have inconsistent dimension".into());
                }
                if !min.iter().chain(max).all(|c| c.is_finite()) {
                    return bad("box corner is not finite".into());
                }
                if min.iter().zip(max).any(|(a, b)| a >= b) {
                    return bad("box must have positive extent on every axis".into());
                }
            }
            GeometricObject::GridPath { points } => {
                let Some(first) = points.first() else {
                    return bad("grid path has no points".into());
                };
                if first.len() < 2 {
                    return bad("grid path points need dimension ≥ 2".into());
                }
                for w in points.windows(2) {
                    if w[0].len() != w[1].len() {
                        return bad("grid path points have mixed dimension".into());
                    }
                    let differing = w[0].iter().zip(&w[1]).filter(|(a, b)| a != b).count();
                    if differing != 1 {
                        return bad(format!(
                            "consecutive path points {:?} and {:?} are not an axis-aligned segment",
                            w[0], w[1]
                        ));
                    }
                }
                if points.iter().flatten().any(|c| c.unsigned_abs() > 1 << 40) {
                    return bad("grid path coordinate out of range".into());
                }
            }
            GeometricObject::Union { members } => {
                if members.is_empty() {
                    return bad("union has no members".into());
                }
                let d = members[0].dimension();
                for m in members {
                    m.validate()?;
                    if m.dimension() != d {
                        return Err(Error::DimensionMismatch(d, m.dimension()));
                    }
                }
                if !union_connected(members)? {
                    return bad("union members do not form a connected set".into());
                }
            }
        }
        Ok(())
    }

    /// Axis-aligned bounding box as (min corner, max corner).
    pub fn bbox(&self) -> (Point, Point) {
        match self {
            GeometricObject::Disk { center, radius } => (
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            ),
            GeometricObject::Box { min, max } => (min.clone(), max.clone()),
            GeometricObject::GridPath { points } => {
                let d = points[0].len();
                let mut lo = vec![f64::INFINITY; d];
                let mut hi = vec![f64::NEG_INFINITY; d];
                for p in points {
                    for k in 0..d {
                        lo[k] = lo[k].min(p[k] as f64);
                        hi[k] = hi[k].max(p[k] as f64);
                    }
                }
                (lo, hi)
            }
            GeometricObject::Union { members } => {
                let (mut lo, mut hi) = members[0].bbox();
                for m in &members[1..] {
                    let (a, b) = m.bbox();
                    for k in 0..lo.len() {
                        lo[k] = lo[k].min(a[k]);
                        hi[k] = hi[k].max(b[k]);
                    }
                }
                (lo, hi)
            }
        }
    }

    /// Side length of the smallest enclosing axis-aligned cube.
    pub fn size(&self) -> f64 {
        let (lo, hi) = self.bbox();
        lo.iter().zip(&hi).map(|(a, b)| b - a).fold(0.0, f64::max)
    }

    /// Projection onto the first axis.
    pub fn horizontal_part(&self) -> (f64, f64) {
        let (lo, hi) = self.bbox();
        (lo[0], hi[0])
    }

    /// Projection onto the second axis.
    pub fn vertical_part(&self) -> (f64, f64) {
        let (lo, hi) = self.bbox();
        (lo[1], hi[1])
    }

    /// Euclidean diameter. Exact for disks, boxes and paths; for unions it
    /// is the largest distance between member extreme points, which can
    /// overestimate only when members are not disks, boxes or paths.
    pub fn diameter(&self) -> f64 {
        match self {
            GeometricObject::Disk { radius, .. } => 2.0 * radius,
            GeometricObject::Box { min, max } => dist(min, max),
            GeometricObject::GridPath { points } => {
                let mut best: f64 = 0.0;
                for a in points {
                    for b in points {
                        let d2: f64 = a.iter().zip(b).map(|(x, y)| ((x - y) as f64).powi(2)).sum();
                        best = best.max(d2.sqrt());
                    }
                }
                best
            }
            GeometricObject::Union { members } => {
                let mut best: f64 = members.iter().map(|m| m.diameter()).fold(0.0, f64::max);
                let (lo, hi) = self.bbox();
                let reach = dist(&lo, &hi);
                for (i, a) in members.iter().enumerate() {
                    for b in &members[i + 1..] {
                        best = best.max(farthest(a, b));
                    }
                }
                best.min(reach)
            }
        }
    }

    fn segments(&self) -> Vec<Segment> {
        let GeometricObject::GridPath { points } = self else {
            return Vec::new();
        };
        if points.len() == 1 {
            return vec![Segment {
                axis: 0,
                lo: points[0][0],
                hi: points[0][0],
                at: points[0].clone(),
            }];
        }
        points
            .windows(2)
            .map(|w| {
                let axis = (0..w[0].len()).find(|&k| w[0][k] != w[1][k]).unwrap_or(0);
                Segment {
                    axis,
                    lo: w[0][axis].min(w[1][axis]),
                    hi: w[0][axis].max(w[1][axis]),
                    at: w[0].clone(),
                }
            })
            .collect()
    }

    /// Uniformly scales all coordinates by `factor` (which must be positive).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Ok(match self {
            GeometricObject::Disk { center, radius } => GeometricObject::Disk {
                center: center.iter().map(|c| c * factor).collect(),
                radius: radius * factor,
            },
            GeometricObject::Box { min, max } => GeometricObject::Box {
                min: min.iter().map(|c| c * factor).collect(),
                max: max.iter().map(|c| c * factor).collect(),
            },
            GeometricObject::GridPath { .. } => {
                if factor == 1.0 {
                    self.clone()
                } else {
                    return Err(Error::input("lattice paths cannot be rescaled"));
                }
            }
            GeometricObject::Union { members } => GeometricObject::Union {
                members: members
                    .iter()
                    .map(|m| m.scaled(factor))
                    .collect::<Result<_>>()?,
            },
        })
    }

    /// Translates by `offset`. Lattice paths only accept integral offsets.
    pub fn translated(&self, offset: &[f64]) -> Result<Self> {
        Ok(match self {
            GeometricObject::Disk { center, radius } => GeometricObject::Disk {
                center: center.iter().zip(offset).map(|(c, o)| c + o).collect(),
                radius: *radius,
            },
            GeometricObject::Box { min, max } => GeometricObject::Box {
                min: min.iter().zip(offset).map(|(c, o)| c + o).collect(),
                max: max.iter().zip(offset).map(|(c, o)| c + o).collect(),
            },
            GeometricObject::GridPath { points } => {
                if offset.iter().any(|o| o.fract() != 0.0) {
                    return Err(Error::input("lattice paths need integral translations"));
                }
                GeometricObject::GridPath {
                    points: points
                        .iter()
                        .map(|p| p.iter().zip(offset).map(|(c, o)| c + *o as i64).collect())
                        .collect(),
                }
            }
            GeometricObject::Union { members } => GeometricObject::Union {
                members: members
                    .iter()
                    .map(|m| m.translated(offset))
                    .collect::<Result<_>>()?,
            },
        })
    }

    /// True if the object meets the closed box `[min, max]` (tolerance
    /// [`EPS_GEO`]).
    pub fn meets_box(&self, min: &[f64], max: &[f64]) -> bool {
        match self {
            GeometricObject::Disk { center, radius } => disk_box(center, *radius, min, max),
            GeometricObject::Box { min: a, max: b } => box_box(a, b, min, max),
            GeometricObject::GridPath { .. } => self.segments().iter().any(|s| {
                let (a, b) = s.to_box();
                box_box(&a, &b, min, max)
            }),
            GeometricObject::Union { members } => members.iter().any(|m| m.meets_box(min, max)),
        }
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn farthest(a: &GeometricObject, b: &GeometricObject) -> f64 {
    match (a, b) {
        (
            GeometricObject::Disk {
                center: c1,
                radius: r1,
            },
            GeometricObject::Disk {
                center: c2,
                radius: r2,
            },
        ) => dist(c1, c2) + r1 + r2,
        _ => {
            let (lo1, hi1) = a.bbox();
            let (lo2, hi2) = b.bbox();
            let lo: Vec<f64> = lo1.iter().zip(&lo2).map(|(x, y)| x.min(*y)).collect();
            let hi: Vec<f64> = hi1.iter().zip(&hi2).map(|(x, y)| x.max(*y)).collect();
            dist(&lo, &hi)
        }
    }
}

fn disk_box(center: &[f64], radius: f64, min: &[f64], max: &[f64]) -> bool {
    let d2: f64 = center
        .iter()
        .zip(min.iter().zip(max))
        .map(|(c, (lo, hi))| {
            let q = c.clamp(*lo, *hi);
            (c - q).powi(2)
        })
        .sum();
    d2.sqrt() <= radius + EPS_GEO
}

fn box_box(a_min: &[f64], a_max: &[f64], b_min: &[f64], b_max: &[f64]) -> bool {
    (0..a_min.len()).all(|k| a_min[k] <= b_max[k] + EPS_GEO && b_min[k] <= a_max[k] + EPS_GEO)
}

fn union_connected(members: &[GeometricObject]) -> Result<bool> {
    let n = members.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && intersects(&members[i], &members[j], PathMode::Vertex)? {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    Ok(seen.iter().all(|&s| s))
}

/// Whether the closed point sets of `a` and `b` meet. Grid paths follow
/// `mode`; in edge mode a grid path can only be compared with grid paths.
pub fn intersects(a: &GeometricObject, b: &GeometricObject, mode: PathMode) -> Result<bool> {
    use GeometricObject::*;
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch(a.dimension(), b.dimension()));
    }
    Ok(match (a, b) {
        (Union { members }, other) | (other, Union { members }) => {
            for m in members {
                if intersects(m, other, mode)? {
                    return Ok(true);
                }
            }
            false
        }
        (
            Disk {
                center: c1,
                radius: r1,
            },
            Disk {
                center: c2,
                radius: r2,
            },
        ) => dist(c1, c2) <= r1 + r2 + EPS_GEO,
        (Disk { center, radius }, Box { min, max })
        | (Box { min, max }, Disk { center, radius }) => disk_box(center, *radius, min, max),
        (Box { min: a1, max: a2 }, Box { min: b1, max: b2 }) => box_box(a1, a2, b1, b2),
        (GridPath { .. }, GridPath { .. }) => paths_meet(a, b, mode),
        (GridPath { .. }, other) | (other, GridPath { .. }) => {
            if mode == PathMode::Edge {
                return Err(Error::UnsupportedPair(
                    "edge-sharing is only defined between grid paths".into(),
                ));
            }
            let path = if matches!(a, GridPath { .. }) { a } else { b };
            path.segments().iter().any(|s| {
                let (lo, hi) = s.to_box();
                other.meets_box(&lo, &hi)
            })
        }
    })
}

fn paths_meet(a: &GeometricObject, b: &GeometricObject, mode: PathMode) -> bool {
    let sa = a.segments();
    let sb = b.segments();
    match mode {
        PathMode::Vertex => sa.iter().any(|s| {
            let (lo, hi) = s.to_box();
            sb.iter().any(|t| {
                let (lo2, hi2) = t.to_box();
                (0..lo.len()).all(|k| lo[k] <= hi2[k] && lo2[k] <= hi[k])
            })
        }),
        PathMode::Edge => {
            if matches!(a, GeometricObject::GridPath { points } if points.len() == 1)
                || matches!(b, GeometricObject::GridPath { points } if points.len() == 1)
            {
                return false;
            }
            sa.iter().any(|s| {
                sb.iter()
                    .any(|t| s.same_line(t) && s.hi.min(t.hi) - s.lo.max(t.lo) >= 1)
            })
        }
    }
}

/// `⌊log_{1/r} s(o)⌋`, snapping sizes within a relative [`RANK_SNAP`] of an
/// exact power of `1/r` onto that power.
pub fn rank_of(o: &GeometricObject, r: u32) -> Result<u32> {
    rank_of_size(o.size(), r)
}

pub fn rank_of_size(s: f64, r: u32) -> Result<u32> {
    if r < 2 {
        return Err(Error::input("rank base must be at least 2"));
    }
    if !(s > 0.0) {
        return Err(Error::input("object has zero size"));
    }
    if s > 1.0 + RANK_SNAP {
        return Err(Error::input(format!(
            "object size {s} exceeds 1; rescale first"
        )));
    }
    let inv = 1.0 / r as f64;
    let mut rank = 0u32;
    let mut next = inv;
    while s <= next * (1.0 + RANK_SNAP) {
        rank += 1;
        next *= inv;
        if rank > 1000 {
            return Err(Error::input("object size too small to rank"));
        }
    }
    Ok(rank)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    UnitDisks,
    SimilarlySizedFat,
    UnitWidthRects,
    GridPathsV,
    GridPathsE,
    Generic,
}

impl InstanceKind {
    pub fn path_mode(self) -> PathMode {
        match self {
            InstanceKind::GridPathsE => PathMode::Edge,
            _ => PathMode::Vertex,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::UnitDisks => "unit_disks",
            InstanceKind::SimilarlySizedFat => "similarly_sized_fat",
            InstanceKind::UnitWidthRects => "unit_width_rects",
            InstanceKind::GridPathsV => "grid_paths_v",
            InstanceKind::GridPathsE => "grid_paths_e",
            InstanceKind::Generic => "generic",
        }
    }
}

/// Declared constants of a collection. Which fields are present depends on
/// the kind.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KindParams {
    /// Common disk radius.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    /// Common rectangle width.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    /// Bound on horizontal parts of grid paths.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    /// Largest-to-smallest diameter ratio.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    /// Declared fatness constant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fatness: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectCollection {
    pub dimension: usize,
    pub kind: InstanceKind,
    #[serde(default)]
    pub params: KindParams,
    pub objects: Vec<GeometricObject>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::weight::serde_weight_vec_opt"
    )]
    pub weights: Option<Vec<Weight>>,
}

impl ObjectCollection {
    pub fn new(
        dimension: usize,
        kind: InstanceKind,
        params: KindParams,
        objects: Vec<GeometricObject>,
    ) -> Self {
        ObjectCollection {
            dimension,
            kind,
            params,
            objects,
            weights: None,
        }
    }

    pub fn generic(objects: Vec<GeometricObject>) -> Self {
        let d = objects.first().map_or(2, |o| o.dimension());
        Self::new(d, InstanceKind::Generic, KindParams::default(), objects)
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn path_mode(&self) -> PathMode {
        self.kind.path_mode()
    }

    pub fn weights_or_unit(&self) -> Vec<Weight> {
        self.weights
            .clone()
            .unwrap_or_else(|| crate::weight::unit_weights(self.len()))
    }

    /// Keeps only the objects at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        ObjectCollection {
            dimension: self.dimension,
            kind: self.kind,
            params: self.params.clone(),
            objects: indices.iter().map(|&i| self.objects[i].clone()).collect(),
            weights: self
                .weights
                .as_ref()
                .map(|w| indices.iter().map(|&i| w[i].clone()).collect()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension < 2 {
            return Err(Error::input("dimension must be at least 2"));
        }
        for o in &self.objects {
            o.validate()?;
            if o.dimension() != self.dimension {
                return Err(Error::DimensionMismatch(self.dimension, o.dimension()));
            }
        }
        if let Some(w) = &self.weights {
            if w.len() != self.objects.len() {
                return Err(Error::input("weights length differs from object count"));
            }
            if !w.iter().all(crate::weight::is_non_negative) {
                return Err(Error::input("weights must be non-negative"));
            }
        }
        let p = &self.params;
        match self.kind {
            InstanceKind::UnitDisks => {
                let r = p
                    .radius
                    .ok_or_else(|| Error::input("unit disks need a declared radius"))?;
                for o in &self.objects {
                    match o {
                        GeometricObject::Disk { radius, .. } if (radius - r).abs() <= EPS_GEO => {}
                        _ => {
                            return Err(Error::input("unit-disk instance holds a non-unit object"))
                        }
                    }
                }
            }
            InstanceKind::UnitWidthRects => {
                let c = p
                    .width
                    .ok_or_else(|| Error::input("unit-width rects need a declared width"))?;
                for o in &self.objects {
                    match o {
                        GeometricObject::Box { min, max }
                            if (max[0] - min[0] - c).abs() <= EPS_GEO => {}
                        _ => {
                            return Err(Error::input(
                                "rectangle width differs from the declared width",
                            ))
                        }
                    }
                }
            }
            InstanceKind::GridPathsV | InstanceKind::GridPathsE => {
                let ell = p
                    .ell
                    .ok_or_else(|| Error::input("grid paths need a declared ℓ"))?;
                for o in &self.objects {
                    if !matches!(o, GeometricObject::GridPath { .. }) {
                        return Err(Error::input("grid-path instance holds a non-path object"));
                    }
                    let (a, b) = o.horizontal_part();
                    if b - a > ell as f64 {
                        return Err(Error::input(format!(
                            "horizontal part {} exceeds ℓ = {ell}",
                            b - a
                        )));
                    }
                }
            }
            InstanceKind::SimilarlySizedFat => {
                let k = p
                    .ratio
                    .ok_or_else(|| Error::input("similarly sized collections need a ratio"))?;
                if p.fatness.is_none() {
                    return Err(Error::input(
                        "similarly sized collections need a fatness constant",
                    ));
                }
                if !self.objects.is_empty() {
                    let (lo, hi) = diameter_range(&self.objects);
                    if hi > k * lo * (1.0 + 1e-9) {
                        return Err(Error::input(format!(
                            "diameter ratio {} exceeds declared {k}",
                            hi / lo
                        )));
                    }
                }
            }
            InstanceKind::Generic => {}
        }
        Ok(())
    }
}

pub(crate) fn diameter_range(objects: &[GeometricObject]) -> (f64, f64) {
    objects
        .iter()
        .map(|o| o.diameter())
        .fold((f64::INFINITY, 0.0), |(lo, hi), d| (lo.min(d), hi.max(d)))
}

/// Scales the collection so that its largest object has size 1. Returns the
/// scaled collection and the factor that was applied.
pub fn scale_collection(c: &ObjectCollection) -> Result<(ObjectCollection, f64)> {
    if c.is_empty() {
        return Err(Error::input("cannot scale an empty collection"));
    }
    let max = c.objects.iter().map(|o| o.size()).fold(0.0, f64::max);
    if !(max > 0.0) {
        return Err(Error::input("collection has no object of positive size"));
    }
    let factor = 1.0 / max;
    if factor == 1.0 {
        return Ok((c.clone(), 1.0));
    }
    let mut out = c.clone();
    out.objects = c
        .objects
        .iter()
        .map(|o| o.scaled(factor))
        .collect::<Result<_>>()?;
    out.params.radius = c.params.radius.map(|r| r * factor);
    out.params.width = c.params.width.map(|w| w * factor);
    Ok((out, factor))
}

/// Translates the collection so its bounding box starts at the origin.
/// Lattice collections are shifted by whole units.
pub fn translate_to_origin(objects: &[GeometricObject]) -> Result<Vec<GeometricObject>> {
    let Some(first) = objects.first() else {
        return Ok(Vec::new());
    };
    let d = first.dimension();
    let mut lo = vec![f64::INFINITY; d];
    for o in objects {
        let (a, _) = o.bbox();
        for k in 0..d {
            lo[k] = lo[k].min(a[k]);
        }
    }
    let offset: Vec<f64> = lo.iter().map(|c| -c.floor()).collect();
    let offset: Vec<f64> = if objects
        .iter()
        .all(|o| matches!(o, GeometricObject::GridPath { .. }))
    {
        offset
    } else {
        lo.iter().map(|c| -c).collect()
    };
    objects.iter().map(|o| o.translated(&offset)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(x: f64, y: f64, r: f64) -> GeometricObject {
        GeometricObject::disk(vec![x, y], r)
    }

    #[test]
    fn tangent_disks_touch() {
        assert!(intersects(&disk(0.0, 0.0, 1.0), &disk(2.0, 0.0, 1.0), PathMode::Vertex).unwrap());
        assert!(!intersects(&disk(0.0, 0.0, 1.0), &disk(2.5, 0.0, 1.0), PathMode::Vertex).unwrap());
    }

    #[test]
    fn paths_sharing_one_point() {
        let a = GeometricObject::path(vec![vec![0, 2], vec![3, 2]]);
        let b = GeometricObject::path(vec![vec![3, 2], vec![3, 5]]);
        assert!(intersects(&a, &b, PathMode::Vertex).unwrap());
        assert!(!intersects(&a, &b, PathMode::Edge).unwrap());
        let c = GeometricObject::path(vec![vec![2, 2], vec![2, 0], vec![5, 0]]);
        assert!(intersects(&a, &c, PathMode::Vertex).unwrap());
        let d = GeometricObject::path(vec![vec![2, 2], vec![4, 2]]);
        assert!(intersects(&a, &d, PathMode::Edge).unwrap());
    }

    #[test]
    fn single_point_paths() {
        let p = GeometricObject::path(vec![vec![1, 1]]);
        let a = GeometricObject::path(vec![vec![0, 1], vec![2, 1]]);
        assert!(intersects(&p, &a, PathMode::Vertex).unwrap());
        assert!(!intersects(&p, &a, PathMode::Edge).unwrap());
        assert!(intersects(&p, &p, PathMode::Vertex).unwrap());
    }

    #[test]
    fn mixed_pairs() {
        let b = GeometricObject::rect(vec![0.0, 0.0], vec![1.0, 1.0]);
        assert!(intersects(&b, &disk(2.0, 0.5, 1.0), PathMode::Vertex).unwrap());
        assert!(!intersects(&b, &disk(2.0, 2.0, 1.0), PathMode::Vertex).unwrap());
        let p = GeometricObject::path(vec![vec![1, 3], vec![1, 1]]);
        assert!(intersects(&p, &b, PathMode::Vertex).unwrap());
        assert!(intersects(&p, &b, PathMode::Edge).is_err());
        let d3 = GeometricObject::disk(vec![0.0, 0.0, 0.0], 1.0);
        assert!(matches!(
            intersects(&d3, &b, PathMode::Vertex),
            Err(Error::DimensionMismatch(3, 2))
        ));
    }

    #[test]
    fn sizes_and_parts() {
        assert_eq!(disk(4.0, 1.0, 1.5).size(), 3.0);
        assert_eq!(
            GeometricObject::rect(vec![0.0, 0.0], vec![3.0, 1.0]).size(),
            3.0
        );
        let u = GeometricObject::union(vec![disk(0.0, 0.0, 1.0), disk(2.0, 0.0, 1.0)]).unwrap();
        assert_eq!(u.size(), 4.0);
        assert_eq!(disk(2.0, 5.0, 1.0).horizontal_part(), (1.0, 3.0));
        let p = GeometricObject::path(vec![vec![0, 0], vec![0, 3], vec![2, 3]]);
        assert_eq!(p.horizontal_part(), (0.0, 2.0));
        assert_eq!(
            GeometricObject::rect(vec![1.0, 0.0], vec![4.0, 9.0]).horizontal_part(),
            (1.0, 4.0)
        );
    }

    #[test]
    fn disconnected_union_rejected() {
        assert!(GeometricObject::union(vec![disk(0.0, 0.0, 1.0), disk(5.0, 0.0, 1.0)]).is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_of_size(1.0, 5).unwrap(), 0);
        assert_eq!(rank_of_size(1.0 / 8.0, 8).unwrap(), 1);
        assert_eq!(rank_of_size(0.02, 8).unwrap(), 1);
        assert_eq!(rank_of_size(1.0 / 64.0 * (1.0 + 1e-14), 8).unwrap(), 2);
        assert_eq!(rank_of_size(0.5, 8).unwrap(), 0);
        assert!(rank_of_size(1.5, 8).is_err());
        assert!(rank_of_size(0.0, 8).is_err());
    }

    #[test]
    fn scaling() {
        let c = ObjectCollection::generic(vec![disk(0.0, 0.0, 1.0), disk(5.0, 0.0, 3.0)]);
        let (s, f) = scale_collection(&c).unwrap();
        assert!((f - 1.0 / 6.0).abs() < 1e-15);
        match (&s.objects[0], &s.objects[1]) {
            (GeometricObject::Disk { radius: a, .. }, GeometricObject::Disk { radius: b, .. }) => {
                assert!((a - 1.0 / 6.0).abs() < 1e-12 && (b - 0.5).abs() < 1e-12);
            }
            _ => unreachable!(),
        }
        let unit =
            ObjectCollection::generic(vec![GeometricObject::rect(vec![0.0, 0.0], vec![1.0, 0.5])]);
        assert_eq!(scale_collection(&unit).unwrap().1, 1.0);
        assert!(scale_collection(&ObjectCollection::generic(vec![])).is_err());
    }
}
