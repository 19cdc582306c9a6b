use super::{intersects, GeometricObject, ObjectCollection, Point};
use crate::error::Result;
use crate::graph::{oracle, Graph};

/// Closed axis-aligned cube used as a fatness probe.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeBox {
    pub min: Point,
    pub side: f64,
}

impl ProbeBox {
    pub fn max(&self) -> Point {
        self.min.iter().map(|c| c + self.side).collect()
    }
}

/// Probe cubes anchored at every bounding-box corner of every object, one
/// per orthant, at up to `probes` side lengths drawn from the object sizes.
pub fn probe_boxes(c: &ObjectCollection, probes: usize) -> Vec<ProbeBox> {
    let probes = probes.max(1);
    let mut sizes: Vec<f64> = c
        .objects
        .iter()
        .map(|o| o.size())
        .filter(|s| *s > 0.0)
        .collect();
    sizes.sort_by(|a, b| a.total_cmp(b));
    sizes.dedup();
    let scales: Vec<f64> = if sizes.len() <= probes {
        sizes
    } else if probes == 1 {
        vec![sizes[0]]
    } else {
        (0..probes)
            .map(|i| sizes[i * (sizes.len() - 1) / (probes - 1)])
            .collect()
    };
    let d = c.dimension;
    let mut out = Vec::new();
    for o in &c.objects {
        let (lo, hi) = o.bbox();
        for corner_bits in 0..(1u32 << d) {
            let corner: Point = (0..d)
                .map(|k| {
                    if corner_bits >> k & 1 == 1 {
                        hi[k]
                    } else {
                        lo[k]
                    }
                })
                .collect();
            for &s in &scales {
                for orthant in 0..(1u32 << d) {
                    let min = (0..d)
                        .map(|k| {
                            if orthant >> k & 1 == 1 {
                                corner[k]
                            } else {
                                corner[k] - s
                            }
                        })
                        .collect();
                    out.push(ProbeBox { min, side: s });
                }
            }
        }
    }
    out
}

/// Largest number of pairwise non-intersecting objects of size at least the
/// probe side that meet the probe. Exact up to 64 candidates, greedy beyond.
pub fn max_disjoint_hitting(c: &ObjectCollection, probe: &ProbeBox) -> Result<usize> {
    let max = probe.max();
    let cand: Vec<&GeometricObject> = c
        .objects
        .iter()
        .filter(|o| o.size() >= probe.side * (1.0 - 1e-12) && o.meets_box(&probe.min, &max))
        .collect();
    let m = cand.len();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if intersects(cand[i], cand[j], c.path_mode())? {
                edges.push((i, j));
            }
        }
    }
    let g = Graph::from_edges(m, &edges)?;
    if m <= 64 {
        let all: Vec<usize> = (0..m).collect();
        return oracle::alpha_exact(&g, &all);
    }
    Ok(oracle::greedy_independent_set(&g).len())
}

/// Certified lower bound on the fatness constant: the best count over all
/// probes from [`probe_boxes`].
pub fn estimate_fatness(c: &ObjectCollection, probes: usize) -> Result<usize> {
    let mut best = usize::from(!c.objects.is_empty());
    for b in probe_boxes(c, probes) {
        best = best.max(max_disjoint_hitting(c, &b)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(x: f64, y: f64, r: f64) -> GeometricObject {
        GeometricObject::disk(vec![x, y], r)
    }

    #[test]
    fn single_object() {
        let c = ObjectCollection::generic(vec![disk(0.0, 0.0, 1.0)]);
        assert_eq!(estimate_fatness(&c, 3).unwrap(), 1);
    }

    #[test]
    fn far_apart_pair() {
        let c = ObjectCollection::generic(vec![disk(0.0, 0.0, 1.0), disk(50.0, 0.0, 1.0)]);
        assert_eq!(estimate_fatness(&c, 3).unwrap(), 1);
    }

    #[test]
    fn five_around_a_unit_box() {
        // Four disks near the corners of [0,1]² and one centred on it.
        let c = ObjectCollection::generic(vec![
            disk(-0.35, -0.35, 0.5),
            disk(1.35, -0.35, 0.5),
            disk(1.35, 1.35, 0.5),
            disk(-0.35, 1.35, 0.5),
            disk(0.5, 0.5, 0.5),
        ]);
        let probe = ProbeBox {
            min: vec![0.0, 0.0],
            side: 1.0,
        };
        assert_eq!(max_disjoint_hitting(&c, &probe).unwrap(), 5);
        assert!(estimate_fatness(&c, 2).unwrap() >= 5);
    }
}
