use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{GeometricObject, InstanceKind, KindParams, ObjectCollection};
use crate::error::{Error, Result};
use crate::rng::{self, streams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Disks of one common radius.
    UnitDisks,
    /// Disks with log-uniform radii; declared fatness `4^d`.
    Disks,
    /// Disks whose diameters differ by at most the declared ratio.
    SimilarDisks,
    UnitWidthRects,
    GridPathsV,
    GridPathsE,
    /// `m × m` grid graph realized by tangent unit disks (`n = m²`).
    GridGraph,
    /// `K_{m,m}` realized by crossing rectangles (`n = 2m`).
    Biclique,
}

impl GeneratorKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "unit-disks" => GeneratorKind::UnitDisks,
            "disks" => GeneratorKind::Disks,
            "similar-disks" => GeneratorKind::SimilarDisks,
            "unit-width-rects" | "unit-rects" => GeneratorKind::UnitWidthRects,
            "grid-paths-v" => GeneratorKind::GridPathsV,
            "grid-paths-e" => GeneratorKind::GridPathsE,
            "grid-graph" => GeneratorKind::GridGraph,
            "biclique" => GeneratorKind::Biclique,
            _ => return Err(Error::input(format!("unknown generator kind {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    /// Side of the square placement window; chosen from `n` when absent.
    pub window: Option<f64>,
    /// Disk radius (unit and similar disks) or largest radius (disks).
    pub radius: f64,
    /// Diameter ratio for similar disks; radius spread for arbitrary disks.
    pub ratio: f64,
    /// Common rectangle width.
    pub width: f64,
    /// Horizontal-part bound for grid paths.
    pub ell: u32,
    /// Maximum number of bends per grid path.
    pub bends: u32,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            n,
            seed,
            window: None,
            radius: 1.0,
            ratio: 2.0,
            width: 1.0,
            ell: 2,
            bends: 1,
        }
    }

    pub fn window(mut self, w: f64) -> Self {
        self.window = Some(w);
        self
    }

    pub fn ratio(mut self, k: f64) -> Self {
        self.ratio = k;
        self
    }

    pub fn ell(mut self, ell: u32) -> Self {
        self.ell = ell;
        self
    }

    pub fn bends(mut self, b: u32) -> Self {
        self.bends = b;
        self
    }

    pub fn radius(mut self, r: f64) -> Self {
        self.radius = r;
        self
    }
}

/// Reproducible instance for `spec`: equal specs give identical collections.
pub fn generate_instance(spec: &GeneratorSpec) -> Result<ObjectCollection> {
    if spec.n == 0 {
        return Err(Error::input("generator needs n ≥ 1"));
    }
    if !(spec.radius > 0.0 && spec.width > 0.0 && spec.ratio >= 1.0) {
        return Err(Error::input(
            "generator sizes must be positive and ratio ≥ 1",
        ));
    }
    if let Some(w) = spec.window {
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::input("window must be positive"));
        }
    }
    let auto = |unit: f64| spec.window.unwrap_or(unit * 1.2 * (spec.n as f64).sqrt());
    let mut pos = rng::stream(spec.seed, streams::POSITIONS);
    let mut size = rng::stream(spec.seed, streams::SIZES);
    let mut params = KindParams::default();
    let (kind, objects) = match spec.kind {
        GeneratorKind::UnitDisks => {
            let w = auto(2.0 * spec.radius);
            params.radius = Some(spec.radius);
            let objs = (0..spec.n)
                .map(|_| {
                    GeometricObject::disk(
                        vec![pos.gen_range(0.0..w), pos.gen_range(0.0..w)],
                        spec.radius,
                    )
                })
                .collect();
            (InstanceKind::UnitDisks, objs)
        }
        GeneratorKind::Disks => {
            let w = auto(spec.radius);
            params.fatness = Some(16);
            let spread = spec.ratio.max(1.0);
            let objs = (0..spec.n)
                .map(|_| {
                    let r = spec.radius * spread.powf(-size.gen_range(0.0..1.0));
                    GeometricObject::disk(vec![pos.gen_range(0.0..w), pos.gen_range(0.0..w)], r)
                })
                .collect();
            (InstanceKind::Generic, objs)
        }
        GeneratorKind::SimilarDisks => {
            let w = auto(spec.radius * (1.0 + spec.ratio));
            params.ratio = Some(spec.ratio);
            params.fatness = Some(16);
            let objs = (0..spec.n)
                .map(|_| {
                    let r = if spec.ratio > 1.0 {
                        spec.radius * size.gen_range(1.0..spec.ratio)
                    } else {
                        spec.radius
                    };
                    GeometricObject::disk(vec![pos.gen_range(0.0..w), pos.gen_range(0.0..w)], r)
                })
                .collect();
            (InstanceKind::SimilarlySizedFat, objs)
        }
        GeneratorKind::UnitWidthRects => {
            let c = spec.width;
            let w = auto(1.5 * c);
            params.width = Some(c);
            let objs = (0..spec.n)
                .map(|_| {
                    let x = pos.gen_range(0.0..w);
                    let y = pos.gen_range(0.0..w);
                    let h = c * size.gen_range(0.2..3.0);
                    GeometricObject::rect(vec![x, y], vec![x + c, y + h])
                })
                .collect();
            (InstanceKind::UnitWidthRects, objs)
        }
        GeneratorKind::GridPathsV | GeneratorKind::GridPathsE => {
            params.ell = Some(spec.ell);
            let side = spec
                .window
                .map_or_else(
                    || (2.0 * (spec.n as f64).sqrt()).ceil() as i64 + 2,
                    |w| w as i64,
                )
                .max(1);
            let mut shape = rng::stream(spec.seed, streams::SHAPES);
            let objs = (0..spec.n)
                .map(|_| random_path(&mut pos, &mut shape, side, spec.ell as i64, spec.bends))
                .collect();
            let kind = if spec.kind == GeneratorKind::GridPathsV {
                InstanceKind::GridPathsV
            } else {
                InstanceKind::GridPathsE
            };
            (kind, objs)
        }
        GeneratorKind::GridGraph => {
            let m = (spec.n as f64).sqrt().round() as usize;
            if m * m != spec.n {
                return Err(Error::input(
                    "grid-graph generator needs n to be a perfect square",
                ));
            }
            params.radius = Some(1.0);
            let objs = (0..m)
                .flat_map(|i| {
                    (0..m).map(move |j| {
                        GeometricObject::disk(vec![2.0 * i as f64, 2.0 * j as f64], 1.0)
                    })
                })
                .collect();
            (InstanceKind::UnitDisks, objs)
        }
        GeneratorKind::Biclique => {
            if spec.n % 2 != 0 {
                return Err(Error::input("biclique generator needs an even n"));
            }
            let m = spec.n / 2;
            let span = 2.0 * m as f64;
            let mut objs: Vec<GeometricObject> = (0..m)
                .map(|i| {
                    GeometricObject::rect(
                        vec![-1.0, 2.0 * i as f64],
                        vec![span, 2.0 * i as f64 + 0.5],
                    )
                })
                .collect();
            objs.extend((0..m).map(|j| {
                GeometricObject::rect(vec![2.0 * j as f64, -1.0], vec![2.0 * j as f64 + 0.5, span])
            }));
            (InstanceKind::Generic, objs)
        }
    };
    let c = ObjectCollection::new(2, kind, params, objects);
    c.validate()?;
    Ok(c)
}

/// Lattice path with at most `bends` bends whose x-coordinates stay inside a
/// window of `ell` columns.
fn random_path(
    pos: &mut impl Rng,
    shape: &mut impl Rng,
    side: i64,
    ell: i64,
    bends: u32,
) -> GeometricObject {
    let x0 = pos.gen_range(0..side);
    let y0 = pos.gen_range(0..side);
    let base = x0 - shape.gen_range(0..=ell);
    let mut points = vec![vec![x0, y0]];
    let segments = shape.gen_range(0..=bends) + 1;
    let mut horizontal = ell > 0 && shape.gen_bool(0.5);
    if shape.gen_ratio(1, 12) {
        return GeometricObject::path(points);
    }
    for _ in 0..segments {
        let last = points.last().unwrap().clone();
        let next = if horizontal {
            if ell == 0 {
                break;
            }
            let mut x = base + shape.gen_range(0..=ell);
            if x == last[0] {
                x = if x < base + ell { x + 1 } else { x - 1 };
            }
            vec![x, last[1]]
        } else {
            let step = shape.gen_range(1..=3);
            let dy = if shape.gen_bool(0.5) { step } else { -step };
            vec![last[0], last[1] + dy]
        };
        points.push(next);
        horizontal = !horizontal && ell > 0;
    }
    GeometricObject::path(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{intersects, PathMode};

    #[test]
    fn deterministic() {
        let spec = GeneratorSpec::new(GeneratorKind::UnitDisks, 3, 7);
        assert_eq!(
            generate_instance(&spec).unwrap(),
            generate_instance(&spec).unwrap()
        );
        let other = GeneratorSpec::new(GeneratorKind::UnitDisks, 3, 8);
        assert_ne!(
            generate_instance(&spec).unwrap(),
            generate_instance(&other).unwrap()
        );
    }

    #[test]
    fn paths_respect_ell() {
        for seed in 0..20 {
            let spec = GeneratorSpec::new(GeneratorKind::GridPathsE, 40, seed)
                .ell(2)
                .bends(1);
            let c = generate_instance(&spec).unwrap();
            for o in &c.objects {
                let (a, b) = o.horizontal_part();
                assert!(b - a <= 2.0);
                let GeometricObject::GridPath { points } = o else {
                    panic!()
                };
                assert!(points.len() <= 3);
            }
        }
    }

    #[test]
    fn biclique_rects_cross() {
        let c = generate_instance(&GeneratorSpec::new(GeneratorKind::Biclique, 8, 0)).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if i == j {
                    continue;
                }
                let e = intersects(&c.objects[i], &c.objects[j], PathMode::Vertex).unwrap();
                assert_eq!(e, (i < 4) != (j < 4));
            }
        }
    }
}
