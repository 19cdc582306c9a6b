//! File formats. Every JSON artifact is written as pretty-printed JSON with
//! a trailing newline, so writing what was read reproduces the same bytes.
//! Parsers validate structure and return errors on malformed input.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::decomposition::{GeneralCover, Layering, TreeDecomposition};
use crate::error::{Error, Result};
use crate::geometry::ObjectCollection;
use crate::graph::{Graph, SubgraphFamily, MAX_VERTICES};
use crate::layered::Construction;
use crate::ptas::PtasReport;
use crate::weight::{self, Weight};

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<ObjectCollection> {
    let c: ObjectCollection = from_json(text)?;
    c.validate()?;
    Ok(c)
}

/// Graph file: vertex count and edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        GraphFile {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let f: GraphFile = from_json(text)?;
    Graph::from_edges(f.n, &f.edges)
}

/// DIMACS edge format: `p edge n m` followed by `e u v` lines (1-based);
/// `c` lines are comments.
pub fn write_dimacs(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    s
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let mut parts = line.split_whitespace();
        let Some(tag) = parts.next() else { continue };
        let fields: Vec<&str> = parts.collect();
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(bad("second problem line"));
                }
                let [fmt, n, m] = fields[..] else {
                    return Err(bad("expected `p edge n m`"));
                };
                if fmt != "edge" && fmt != "col" {
                    return Err(bad("unsupported problem format"));
                }
                let n: usize = n.parse().map_err(|_| bad("bad vertex count"))?;
                let m: usize = m.parse().map_err(|_| bad("bad edge count"))?;
                if n > MAX_VERTICES {
                    return Err(Error::GuardExceeded {
                        what: "vertex count",
                        limit: MAX_VERTICES,
                        actual: n,
                    });
                }
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(bad("edge before problem line"));
                };
                let [u, v] = fields[..] else {
                    return Err(bad("expected `e u v`"));
                };
                let u: usize = u.parse().map_err(|_| bad("bad endpoint"))?;
                let v: usize = v.parse().map_err(|_| bad("bad endpoint"))?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(bad("endpoint out of range"));
                }
                if u != v {
                    edges.push((u - 1, v - 1));
                }
            }
            _ => return Err(bad("unknown line type")),
        }
    }
    let (n, _) = header.ok_or_else(|| Error::Parse("missing problem line".into()))?;
    Graph::from_edges(n, &edges)
}

/// Parses a family and checks what can be checked without a host graph.
pub fn parse_family(text: &str) -> Result<SubgraphFamily> {
    let f: SubgraphFamily = from_json(text)?;
    if f.members.len() != f.weights.len() {
        return Err(Error::input(
            "family weights length differs from member count",
        ));
    }
    for (j, m) in f.members.iter().enumerate() {
        if m.is_empty() || m.len() > f.h || m.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input(format!("family member {j} is malformed")));
        }
    }
    if !f.weights.iter().all(weight::is_non_negative) {
        return Err(Error::input("family weights must be non-negative"));
    }
    Ok(f)
}

pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    from_json(text)
}

pub fn parse_layering(text: &str) -> Result<Layering> {
    from_json(text)
}

pub fn parse_cover(text: &str) -> Result<GeneralCover> {
    let cover: GeneralCover = from_json(text)?;
    if !(weight::is_non_negative(&cover.beta) && cover.beta <= weight::one()) {
        return Err(Error::input("cover fraction must lie in [0, 1]"));
    }
    Ok(cover)
}

pub fn parse_report(text: &str) -> Result<PtasReport> {
    from_json(text)
}

/// What a solution certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Independent,
    Packing,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionStats {
    pub states: usize,
    /// Wall time in milliseconds.
    pub time: f64,
}

/// Solution file: chosen vertices (independent sets) or member indices
/// (packings) and their total weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    #[serde(with = "crate::weight::serde_weight")]
    pub value: Weight,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<usize>>,
    pub certificate: Certificate,
    /// Required pairwise distance for packings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<usize>,
    pub stats: SolutionStats,
}

impl SolutionFile {
    /// The chosen indices, whichever field holds them.
    pub fn selection(&self) -> &[usize] {
        self.vertices
            .as_deref()
            .or(self.members.as_deref())
            .unwrap_or(&[])
    }
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    let s: SolutionFile = from_json(text)?;
    match (s.certificate, &s.vertices, &s.members) {
        (Certificate::Independent, Some(_), None) | (Certificate::Packing, None, Some(_)) => Ok(s),
        _ => Err(Error::input(
            "independent-set solutions list vertices, packings list members",
        )),
    }
}

/// Decomposition file: tree decomposition, layering and what the
/// construction declared and what was verified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub construction: Construction,
    pub declared_bound: usize,
    /// Exact layered independence number, when it was computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified_alpha: Option<usize>,
    pub td: TreeDecomposition,
    pub layering: Layering,
}

pub fn parse_decomposition(text: &str) -> Result<DecompositionFile> {
    from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (1, 2)]).unwrap();
        let text = write_dimacs(&g);
        assert_eq!(text, "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
        assert_eq!(parse_dimacs(&text).unwrap(), g);
        assert_eq!(
            parse_dimacs("c hi\np edge 2 1\ne 1 2\n")
                .unwrap()
                .edge_count(),
            1
        );
    }

    #[test]
    fn dimacs_rejects_garbage() {
        for bad in [
            "",
            "e 1 2\n",
            "p edge 2 1\ne 0 1\n",
            "p edge 2 1\ne 1 3\n",
            "p edge x 1\n",
            "q\n",
            "p edge 99999999999 0\n",
        ] {
            assert!(parse_dimacs(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn graph_json_round_trip() {
        let g = Graph::from_edges(3, &[(0, 2)]).unwrap();
        let text = to_json(&GraphFile::from(&g)).unwrap();
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert!(parse_graph("{\"n\": 2, \"edges\": [[0, 5]]}").is_err());
    }

    #[test]
    fn solution_shape() {
        let ok = "{\"value\": 2, \"vertices\": [0, 2], \"certificate\": \"independent\", \"stats\": {\"states\": 3, \"time\": 0.5}}";
        let s = parse_solution(ok).unwrap();
        assert_eq!(s.selection(), &[0, 2]);
        assert_eq!(
            to_json(&s).unwrap(),
            to_json(&parse_solution(&to_json(&s).unwrap()).unwrap()).unwrap()
        );
        let mixed = ok.replace("independent", "packing");
        assert!(parse_solution(&mixed).is_err());
    }

    #[test]
    fn family_checks() {
        assert!(parse_family("{\"members\": [[0, 1]], \"weights\": [1], \"h\": 2}").is_ok());
        assert!(parse_family("{\"members\": [[1, 0]], \"weights\": [1], \"h\": 2}").is_err());
        assert!(parse_family("{\"members\": [[0]], \"weights\": [-1], \"h\": 1}").is_err());
    }
}
