//! Branched covers of graphs with prescribed branched degrees.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::covers::girth::{Girth, GirthAmplifier};
use crate::covers::multigraph::{End, Multigraph};
use crate::error::CoverError;

/// Rounds of extra girth amplification tried when looking for a non-cut lift.
const NONCUT_ROUNDS: usize = 6;

/// A graph map `source -> target` with a branched degree at every source
/// vertex and a sheet count `sheets`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchedCoverMap {
    pub source: Multigraph,
    pub target: Multigraph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub degrees: Vec<usize>,
    pub sheets: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1, 2 or 3 for the covering conditions, 0 for connectivity and shape.
    pub condition: u8,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchedReport {
    pub connected: bool,
    pub violations: Vec<Violation>,
}

impl BranchedReport {
    pub fn passed(&self) -> bool {
        self.connected && self.violations.is_empty()
    }

    pub fn fails(&self, condition: u8) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

/// Builds a connected branched cover with branched degree `degrees[v]` at
/// every vertex over `v`.
///
/// With `L = lcm(d_v)` sheets, the lifts of `v` are `L / d_v` blocks of
/// `d_v` consecutive sheets, and every base edge lifts once per sheet,
/// joining the blocks that contain that sheet at its two ends.
pub fn build_branched_cover(g: &Multigraph, degrees: &[usize]) -> Result<BranchedCoverMap, CoverError> {
    g.validate()?;
    if degrees.len() != g.vertices {
        return Err(CoverError::Invalid(format!(
            "{} degrees given for {} vertices",
            degrees.len(),
            g.vertices
        )));
    }
    if let Some(v) = degrees.iter().position(|&d| d == 0) {
        return Err(CoverError::Invalid(format!("vertex {v} has degree 0")));
    }
    if g.vertices == 0 || !g.is_connected() {
        return Err(CoverError::NotConnected);
    }
    let sheets = degrees.iter().fold(1usize, |acc, &d| acc.lcm(&d));
    let mut offset = Vec::with_capacity(g.vertices);
    let mut vertex_map = Vec::new();
    let mut lifted_degrees = Vec::new();
    for (v, &d) in degrees.iter().enumerate() {
        offset.push(vertex_map.len());
        for _ in 0..sheets / d {
            vertex_map.push(v);
            lifted_degrees.push(d);
        }
    }
    let lift = |v: usize, sheet: usize| offset[v] + sheet / degrees[v];
    let mut source = Multigraph::new(vertex_map.len());
    let mut edge_map = Vec::new();
    for (e, &(t, h)) in g.edges.iter().enumerate() {
        for s in 0..sheets {
            source.add_edge(lift(t, s), lift(h, s));
            edge_map.push(e);
        }
    }
    Ok(BranchedCoverMap {
        source,
        target: g.clone(),
        vertex_map,
        edge_map,
        degrees: lifted_degrees,
        sheets,
    })
}

/// A branched cover together with a lift of the chosen vertex that is not
/// a cut vertex of the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoncutCover {
    pub map: BranchedCoverMap,
    pub lift: usize,
    pub source_girth: Girth,
}

/// As [`build_branched_cover`], and additionally some preimage of `v` is not
/// a cut vertex. The source is passed through girth amplification until it
/// has girth at least 3 and such a preimage shows up.
pub fn build_branched_cover_noncut(g: &Multigraph, degrees: &[usize], v: usize) -> Result<NoncutCover, CoverError> {
    if v >= g.vertices {
        return Err(CoverError::Invalid(format!("vertex {v} out of range")));
    }
    for &(_, u) in &g.adjacency()[v] {
        if u != v && degrees.get(u).copied().unwrap_or(0) < 2 {
            return Err(CoverError::HypothesisViolated { vertex: v, neighbor: u });
        }
    }
    let base = build_branched_cover(g, degrees)?;
    let mut amp = GirthAmplifier::new(&base.source)?;
    while !amp.girth().exceeds(2) {
        amp.step()?;
    }
    for _ in 0..=NONCUT_ROUNDS {
        let cover = amp.current();
        let source = &cover.graph;
        let found =
            (0..source.vertices).find(|&x| base.vertex_map[cover.vertex_map[x]] == v && !is_cut_vertex(source, x));
        if let Some(lift) = found {
            let map = BranchedCoverMap {
                source: source.clone(),
                target: g.clone(),
                vertex_map: cover.vertex_map.iter().map(|&x| base.vertex_map[x]).collect(),
                edge_map: cover.edge_map.iter().map(|&e| base.edge_map[e]).collect(),
                degrees: cover.vertex_map.iter().map(|&x| base.degrees[x]).collect(),
                sheets: base.sheets * cover.sheets(),
            };
            return Ok(NoncutCover {
                map,
                lift,
                source_girth: amp.girth(),
            });
        }
        if amp.girth() == Girth::Infinite {
            break;
        }
        amp.step()?;
    }
    Err(CoverError::Invalid(format!("no non-cut lift of vertex {v} found")))
}

/// Checks the three branched-cover conditions and connectivity, collecting
/// every violation.
pub fn verify_branched_cover(m: &BranchedCoverMap) -> BranchedReport {
    let mut violations = Vec::new();
    let src = &m.source;
    let tgt = &m.target;
    let shape_ok = m.vertex_map.len() == src.vertices
        && m.degrees.len() == src.vertices
        && m.edge_map.len() == src.edges.len()
        && m.vertex_map.iter().all(|&v| v < tgt.vertices)
        && m.edge_map.iter().all(|&e| e < tgt.edges.len());
    if !shape_ok {
        violations.push(Violation {
            condition: 0,
            detail: "map sizes do not match the graphs".into(),
        });
        return BranchedReport {
            connected: src.is_connected(),
            violations,
        };
    }

    for (e, &(t, h)) in src.edges.iter().enumerate() {
        if (m.vertex_map[t], m.vertex_map[h]) != tgt.edges[m.edge_map[e]] {
            violations.push(Violation {
                condition: 0,
                detail: format!("source edge {e} does not respect endpoints"),
            });
        }
    }

    let mut count = vec![0usize; tgt.edges.len()];
    for &e in &m.edge_map {
        count[e] += 1;
    }
    for (e, &c) in count.iter().enumerate() {
        if c != m.sheets {
            violations.push(Violation {
                condition: 1,
                detail: format!("target edge {e} has {c} preimages, expected {}", m.sheets),
            });
        }
    }

    let target_ends = tgt.ends();
    for (x, ends) in src.ends().iter().enumerate() {
        let d = m.degrees[x];
        let mut hits = std::collections::HashMap::<End, usize>::new();
        for end in ends {
            *hits
                .entry(End {
                    edge: m.edge_map[end.edge],
                    head: end.head,
                })
                .or_default() += 1;
        }
        let star = &target_ends[m.vertex_map[x]];
        for end in star {
            let c = hits.remove(end).unwrap_or(0);
            if c != d {
                violations.push(Violation {
                    condition: 2,
                    detail: format!(
                        "vertex {x} covers an end of target edge {} {c} times, expected {d}",
                        end.edge
                    ),
                });
            }
        }
        if !hits.is_empty() {
            violations.push(Violation {
                condition: 2,
                detail: format!("vertex {x} has ends over edges not incident to its image"),
            });
        }
    }

    let mut sums = vec![0usize; tgt.vertices];
    for (x, &v) in m.vertex_map.iter().enumerate() {
        sums[v] += m.degrees[x];
    }
    for (v, &s) in sums.iter().enumerate() {
        if s != m.sheets {
            violations.push(Violation {
                condition: 3,
                detail: format!("degrees over target vertex {v} sum to {s}, expected {}", m.sheets),
            });
        }
    }

    BranchedReport {
        connected: src.is_connected(),
        violations,
    }
}

/// True iff deleting `v` leaves a disconnected graph.
pub fn is_cut_vertex(g: &Multigraph, v: usize) -> bool {
    if g.vertices <= 2 {
        return false;
    }
    let adj = g.adjacency();
    let start = if v == 0 { 1 } else { 0 };
    let mut seen = vec![false; g.vertices];
    seen[v] = true;
    seen[start] = true;
    let mut reached = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &(_, y) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                queue.push_back(y);
            }
        }
    }
    reached < g.vertices - 1
}

impl BranchedCoverMap {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("branched covers serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, CoverError> {
        serde_json::from_str(s).map_err(|e| CoverError::Invalid(e.to_string()))
    }

    /// Source graph with each vertex annotated by its image and degree.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        for x in 0..self.source.vertices {
            writeln!(
                out,
                "  {x} [label=\"{x}: over {} d={}\"];",
                self.vertex_map[x], self.degrees[x]
            )
            .unwrap();
        }
        for (e, &(t, h)) in self.source.edges.iter().enumerate() {
            writeln!(out, "  {t} -- {h} [label=\"{}\"];", self.edge_map[e]).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> Multigraph {
        Multigraph::path(2)
    }

    #[test]
    fn all_degrees_one_is_identity() {
        let g = Multigraph::cycle(4);
        let m = build_branched_cover(&g, &[1; 4]).unwrap();
        assert_eq!(m.sheets, 1);
        assert_eq!(m.source, g);
        assert!(verify_branched_cover(&m).passed());
    }

    #[test]
    fn single_edge_with_degrees_one_and_two() {
        let m = build_branched_cover(&edge(), &[1, 2]).unwrap();
        assert_eq!(m.sheets, 2);
        assert_eq!(m.vertex_map, vec![0, 0, 1]);
        assert_eq!(m.degrees, vec![1, 1, 2]);
        assert_eq!(m.source.edges.len(), 2);
        assert!(verify_branched_cover(&m).passed());
    }

    #[test]
    fn triangle_with_degree_two() {
        let m = build_branched_cover(&Multigraph::cycle(3), &[2, 2, 2]).unwrap();
        assert_eq!(m.sheets % 2, 0);
        assert!(verify_branched_cover(&m).passed());
    }

    #[test]
    fn mixed_degrees_stay_connected() {
        let m = build_branched_cover(&Multigraph::path(3), &[2, 1, 3]).unwrap();
        assert_eq!(m.sheets, 6);
        assert!(verify_branched_cover(&m).passed());
    }

    #[test]
    fn loops_count_both_ends() {
        let mut g = Multigraph::rose(1);
        g.vertices = 2;
        g.add_edge(0, 1);
        let m = build_branched_cover(&g, &[2, 1]).unwrap();
        assert!(verify_branched_cover(&m).passed());
    }

    #[test]
    fn deleted_edge_breaks_condition_one() {
        let mut m = build_branched_cover(&Multigraph::cycle(3), &[2, 1, 1]).unwrap();
        m.source.edges.pop();
        m.edge_map.pop();
        let r = verify_branched_cover(&m);
        assert!(r.fails(1));
    }

    #[test]
    fn wrong_degree_sum_breaks_condition_three() {
        let mut m = build_branched_cover(&edge(), &[1, 2]).unwrap();
        m.sheets = 3;
        assert!(verify_branched_cover(&m).fails(3));
        let mut m = build_branched_cover(&edge(), &[1, 2]).unwrap();
        m.degrees[2] = 1;
        let r = verify_branched_cover(&m);
        assert!(r.fails(3) && r.fails(2));
    }

    #[test]
    fn cut_vertex_examples() {
        assert!(is_cut_vertex(&Multigraph::path(3), 1));
        assert!(!is_cut_vertex(&Multigraph::path(3), 0));
        assert!(!is_cut_vertex(&Multigraph::cycle(5), 2));
        let mut eight = Multigraph::cycle(3);
        eight.vertices = 5;
        eight.add_edge(0, 3);
        eight.add_edge(3, 4);
        eight.add_edge(4, 0);
        assert!(is_cut_vertex(&eight, 0));
    }

    #[test]
    fn noncut_examples() {
        let mut star = Multigraph::new(4);
        for leaf in 1..4 {
            star.add_edge(0, leaf);
        }
        let c = build_branched_cover_noncut(&star, &[1, 2, 2, 2], 0).unwrap();
        assert!(verify_branched_cover(&c.map).passed());
        assert_eq!(c.map.vertex_map[c.lift], 0);
        assert!(!is_cut_vertex(&c.map.source, c.lift));

        let err = build_branched_cover_noncut(&Multigraph::path(3), &[1, 2, 2], 1).unwrap_err();
        assert_eq!(err, CoverError::HypothesisViolated { vertex: 1, neighbor: 0 });

        let c = build_branched_cover_noncut(&Multigraph::cycle(3), &[1, 2, 2], 0).unwrap();
        assert!(verify_branched_cover(&c.map).passed());
        assert!(!is_cut_vertex(&c.map.source, c.lift));
    }
}
