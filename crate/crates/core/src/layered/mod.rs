//! Layered tree decompositions read off planar geometric realizations.
//!
//! All constructions share one skeleton. Sorting the `2n` endpoints of the
//! objects' vertical extents gives breakpoints `z_1 ≤ … ≤ z_{2n}`; the tree
//! is a path on `4n−2` nodes whose bags are the objects meeting alternating
//! horizontal strips `[z_a, mid]` and `[mid, z_{a+1}]`. Layers are vertical
//! strips `[(j−1)w, jw)` assigned by each object's leftmost point.

use serde::{Deserialize, Serialize};

use crate::decomposition::{Layering, TreeDecomposition};
use crate::error::{Error, Result};
use crate::geometry::{
    diameter_range, GeometricObject, InstanceKind, ObjectCollection, PathMode, EPS_GEO,
};

/// Which construction produced a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    SimilarlySizedFat,
    UnitDisks,
    UnitWidthRects,
    GridPathsV,
    GridPathsE,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::SimilarlySizedFat => "similarly_sized_fat",
            Construction::UnitDisks => "unit_disks",
            Construction::UnitWidthRects => "unit_width_rects",
            Construction::GridPathsV => "grid_paths_v",
            Construction::GridPathsE => "grid_paths_e",
        }
    }
}

/// Breakpoints and vertical strip width behind a decomposition. Layers are
/// measured from the leftmost point of the collection; `origin_shift` is
/// the translation that moves the collection into the positive quadrant.
#[derive(Clone, Debug, PartialEq)]
pub struct StripStructure {
    pub z: Vec<f64>,
    pub width: f64,
    /// Translation that was applied to the input coordinates.
    pub origin_shift: Vec<f64>,
}

impl StripStructure {
    pub fn strip_count(&self) -> usize {
        2 * self.z.len() - 2
    }

    /// Closed y-range of zero-based strip `s`.
    pub fn strip(&self, s: usize) -> (f64, f64) {
        let a = s / 2;
        let mid = (self.z[a] + self.z[a + 1]) / 2.0;
        if s % 2 == 0 {
            (self.z[a], mid)
        } else {
            (mid, self.z[a + 1])
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayeredDecomposition {
    pub td: TreeDecomposition,
    pub layering: Layering,
    /// Declared bound on the layered independence number.
    pub bound: usize,
    pub construction: Construction,
    pub strips: StripStructure,
}

/// Decomposition from a strip-bounded instance, with the bound on `α(T)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StripDecomposition {
    pub td: TreeDecomposition,
    pub bound: usize,
}

struct Skeleton {
    td: TreeDecomposition,
    lefts: Vec<f64>,
    strips: StripStructure,
}

fn skeleton(objects: &[GeometricObject]) -> Result<Skeleton> {
    if objects.is_empty() {
        return Err(Error::input(
            "layered constructions need a non-empty collection",
        ));
    }
    if objects.iter().any(|o| o.dimension() != 2) {
        return Err(Error::input("layered constructions are planar"));
    }
    let lattice = objects
        .iter()
        .all(|o| matches!(o, GeometricObject::GridPath { .. }));
    let tol = if lattice { 0.0 } else { EPS_GEO };
    let spans: Vec<(f64, f64)> = objects.iter().map(|o| o.vertical_part()).collect();
    let mut ends: Vec<(f64, usize, u8)> = spans
        .iter()
        .enumerate()
        .flat_map(|(i, &(lo, hi))| [(lo, i, 0u8), (hi, i, 1u8)])
        .collect();
    ends.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let min_x = objects
        .iter()
        .map(|o| o.horizontal_part().0)
        .fold(f64::INFINITY, f64::min);
    let min_y = spans.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let strips = StripStructure {
        z: ends.iter().map(|e| e.0).collect(),
        width: 0.0,
        origin_shift: vec![-min_x, -min_y],
    };
    let bags = (0..strips.strip_count())
        .map(|s| {
            let (a, b) = strips.strip(s);
            (0..spans.len())
                .filter(|&i| spans[i].0 - tol <= b && a <= spans[i].1 + tol)
                .collect()
        })
        .collect();
    let lefts = objects
        .iter()
        .map(|o| o.horizontal_part().0 - min_x)
        .collect();
    Ok(Skeleton {
        td: TreeDecomposition::path(bags),
        lefts,
        strips,
    })
}

fn layered(
    objects: &[GeometricObject],
    width: f64,
    bound: usize,
    construction: Construction,
) -> Result<LayeredDecomposition> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::input("vertical strip width must be positive"));
    }
    let mut sk = skeleton(objects)?;
    sk.strips.width = width;
    let layer_of: Vec<usize> = sk
        .lefts
        .iter()
        .map(|&x| (x / width).floor().max(0.0) as usize)
        .collect();
    Ok(LayeredDecomposition {
        td: sk.td,
        layering: Layering::from_assignment(&layer_of),
        bound,
        construction,
        strips: sk.strips,
    })
}

/// `⌈2√2·k⌉`, guarding against floating error at integral values.
fn ceil_two_root_two(k: f64) -> usize {
    let x = 2.0 * std::f64::consts::SQRT_2 * k;
    let c = x.ceil();
    if c - x > 1.0 - 1e-9 {
        (c - 1.0) as usize
    } else {
        c as usize
    }
}

/// Layered decomposition for `k`-similarly-sized `cfat`-fat objects:
/// vertical strips of width `k·d_min`, declared bound `⌈2√2k⌉·cfat`.
pub fn layered_td_fat_similar(
    c: &ObjectCollection,
    k: f64,
    cfat: u64,
) -> Result<LayeredDecomposition> {
    if c.is_empty() {
        return Err(Error::input("empty collection"));
    }
    if c.dimension != 2 {
        return Err(Error::input("layered constructions are planar"));
    }
    if !(k >= 1.0) {
        return Err(Error::input("similarity ratio must be at least 1"));
    }
    let (dmin, dmax) = diameter_range(&c.objects);
    if !(dmin > 0.0) {
        return Err(Error::input("objects need positive diameter"));
    }
    if dmax > k * dmin * (1.0 + 1e-9) {
        return Err(Error::input(format!(
            "diameter ratio {} exceeds k = {k}",
            dmax / dmin
        )));
    }
    let bound = ceil_two_root_two(k) * cfat as usize;
    layered(
        &c.objects,
        k * dmin + 2.0 * EPS_GEO,
        bound,
        Construction::SimilarlySizedFat,
    )
}

fn expect_kind(c: &ObjectCollection, kind: InstanceKind) -> Result<()> {
    if c.kind != kind {
        return Err(Error::KindMismatch {
            expected: kind.name().into(),
            found: c.kind.name().into(),
        });
    }
    Ok(())
}

fn declared(value: Option<f64>, what: &str) -> Result<f64> {
    match value {
        Some(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(Error::input(format!(
            "collection lacks a positive declared {what}"
        ))),
    }
}

/// Unit disks of radius `r`: vertical strips of width `2r`, bound 3.
pub fn layered_td_unit_disks(c: &ObjectCollection) -> Result<LayeredDecomposition> {
    expect_kind(c, InstanceKind::UnitDisks)?;
    let r = declared(c.params.radius, "radius")?;
    layered(
        &c.objects,
        2.0 * r + 2.0 * EPS_GEO,
        3,
        Construction::UnitDisks,
    )
}

/// Rectangles of common width `c`: vertical strips of width `c`, bound 1.
pub fn layered_td_unit_rects(c: &ObjectCollection) -> Result<LayeredDecomposition> {
    expect_kind(c, InstanceKind::UnitWidthRects)?;
    let w = declared(c.params.width, "width")?;
    layered(
        &c.objects,
        w + 2.0 * EPS_GEO,
        1,
        Construction::UnitWidthRects,
    )
}

/// Grid paths with horizontal parts at most `ell`: vertical strips of width
/// `ell`, bound `2ℓ` (shared points) or `6ℓ−1` (shared edges).
pub fn layered_td_grid_paths(
    c: &ObjectCollection,
    mode: PathMode,
    ell: u32,
) -> Result<LayeredDecomposition> {
    let (kind, construction, bound) = match mode {
        PathMode::Vertex => (
            InstanceKind::GridPathsV,
            Construction::GridPathsV,
            2 * ell as usize,
        ),
        PathMode::Edge => (
            InstanceKind::GridPathsE,
            Construction::GridPathsE,
            (6 * ell as usize).saturating_sub(1),
        ),
    };
    expect_kind(c, kind)?;
    if ell == 0 {
        return Err(Error::input("grid-path constructions need ℓ ≥ 1"));
    }
    for o in &c.objects {
        let (a, b) = o.horizontal_part();
        if b - a > ell as f64 {
            return Err(Error::input(format!(
                "horizontal part {} exceeds ℓ = {ell}",
                b - a
            )));
        }
    }
    layered(&c.objects, ell as f64, bound, construction)
}

/// Dispatches on the collection's kind using its declared constants.
/// Similarly sized fat collections default to ratio 1 and fatness 16 when
/// the constants are absent.
pub fn layered_td_for_kind(c: &ObjectCollection) -> Result<LayeredDecomposition> {
    match c.kind {
        InstanceKind::UnitDisks => layered_td_unit_disks(c),
        InstanceKind::UnitWidthRects => layered_td_unit_rects(c),
        InstanceKind::GridPathsV | InstanceKind::GridPathsE => {
            layered_td_grid_paths(c, c.path_mode(), c.params.ell.unwrap_or(1))
        }
        InstanceKind::SimilarlySizedFat => layered_td_fat_similar(
            c,
            c.params.ratio.unwrap_or(1.0),
            c.params.fatness.unwrap_or(16),
        ),
        InstanceKind::Generic => Err(Error::input(
            "generic collections have no layered construction",
        )),
    }
}

/// Decomposition of an instance that fits in a vertical window: width at
/// most `ell` for disks and rectangles, at most `ell` lattice columns for
/// grid paths. The layering is collapsed, so `α(T)` is bounded by
/// `3⌈ℓ/2r⌉`, `⌈ℓ/c⌉`, `ℓ` or `3ℓ−1` respectively.
pub fn strip_td(c: &ObjectCollection, ell: f64) -> Result<StripDecomposition> {
    if c.is_empty() {
        return Err(Error::input("empty collection"));
    }
    let (lo, hi) = c
        .objects
        .iter()
        .map(|o| o.horizontal_part())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (x, y)| {
            (a.min(x), b.max(y))
        });
    let ceil_ratio = |x: f64| {
        let q = x - 1e-9;
        (q.ceil().max(1.0)) as usize
    };
    let bound = match c.kind {
        InstanceKind::UnitDisks => {
            let r = declared(c.params.radius, "radius")?;
            if hi - lo > ell + EPS_GEO {
                return Err(Error::input(format!(
                    "instance width {} exceeds window {ell}",
                    hi - lo
                )));
            }
            3 * ceil_ratio(ell / (2.0 * r))
        }
        InstanceKind::UnitWidthRects => {
            let w = declared(c.params.width, "width")?;
            if hi - lo > ell + EPS_GEO {
                return Err(Error::input(format!(
                    "instance width {} exceeds window {ell}",
                    hi - lo
                )));
            }
            ceil_ratio(ell / w)
        }
        InstanceKind::GridPathsV | InstanceKind::GridPathsE => {
            if ell.fract() != 0.0 || ell < 1.0 {
                return Err(Error::input(
                    "grid-path windows are a positive number of columns",
                ));
            }
            let columns = hi - lo + 1.0;
            if columns > ell {
                return Err(Error::input(format!(
                    "instance spans {columns} columns, window is {ell}"
                )));
            }
            let l = ell as usize;
            if c.kind == InstanceKind::GridPathsV {
                l
            } else {
                3 * l - 1
            }
        }
        other => {
            return Err(Error::KindMismatch {
                expected: "unit disks, unit-width rects or grid paths".into(),
                found: other.name().into(),
            })
        }
    };
    Ok(StripDecomposition {
        td: skeleton(&c.objects)?.td,
        bound,
    })
}
