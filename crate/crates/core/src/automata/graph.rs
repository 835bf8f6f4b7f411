//! Plain labeled graphs: the interchange form for every automaton.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automata::word::{Letter, Word};
use crate::error::AutomataError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledEdge {
    pub src: usize,
    pub dst: usize,
    /// Generator index in `1..=rank`.
    pub label: u32,
}

/// One end of an edge seen from a vertex: traversing `edge` forwards
/// (reading `+label`) or backwards (reading `-label`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub edge: usize,
    pub forward: bool,
    pub to: usize,
}

impl HalfEdge {
    pub fn reverses(&self, other: &HalfEdge) -> bool {
        self.edge == other.edge && self.forward != other.forward
    }
}

/// A finite graph with edges labeled by generators and an optional
/// basepoint. Nothing here requires the graph to be folded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGraph {
    pub rank: usize,
    pub num_vertices: usize,
    pub edges: Vec<LabeledEdge>,
    pub basepoint: Option<usize>,
}

impl LabeledGraph {
    pub fn new(rank: usize, num_vertices: usize) -> Self {
        LabeledGraph {
            rank,
            num_vertices,
            edges: Vec::new(),
            basepoint: None,
        }
    }

    pub fn with_basepoint(mut self, v: usize) -> Self {
        self.basepoint = Some(v);
        self
    }

    pub fn add_vertex(&mut self) -> usize {
        self.num_vertices += 1;
        self.num_vertices - 1
    }

    pub fn add_edge(&mut self, src: usize, dst: usize, label: u32) -> usize {
        debug_assert!(src < self.num_vertices && dst < self.num_vertices);
        debug_assert!(label >= 1 && label as usize <= self.rank);
        self.edges.push(LabeledEdge { src, dst, label });
        self.edges.len() - 1
    }

    /// Graph with a single vertex and one loop per generator.
    pub fn rose(rank: usize) -> Self {
        let mut g = LabeledGraph::new(rank, 1).with_basepoint(0);
        for l in 1..=rank as u32 {
            g.add_edge(0, 0, l);
        }
        g
    }

    pub fn validate(&self) -> Result<(), AutomataError> {
        if self.rank == 0 {
            return Err(AutomataError::InvalidGraph("rank must be positive".into()));
        }
        if let Some(b) = self.basepoint {
            if b >= self.num_vertices {
                return Err(AutomataError::InvalidGraph(format!("basepoint {b} out of range")));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.src >= self.num_vertices || e.dst >= self.num_vertices {
                return Err(AutomataError::InvalidGraph(format!(
                    "edge {i} has an endpoint out of range"
                )));
            }
            if e.label == 0 || e.label as usize > self.rank {
                return Err(AutomataError::InvalidGraph(format!(
                    "edge {i} has label {} outside 1..={}",
                    e.label, self.rank
                )));
            }
        }
        Ok(())
    }

    /// Half-edges leaving each vertex, in edge order (forward before backward
    /// for a loop).
    pub fn incidence(&self) -> Vec<Vec<HalfEdge>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.src].push(HalfEdge {
                edge: i,
                forward: true,
                to: e.dst,
            });
            inc[e.dst].push(HalfEdge {
                edge: i,
                forward: false,
                to: e.src,
            });
        }
        inc
    }

    pub fn letter(&self, h: &HalfEdge) -> Letter {
        let l = self.edges[h.edge].label as Letter;
        if h.forward {
            l
        } else {
            -l
        }
    }

    /// Number of edge ends at `v`; a loop contributes two.
    pub fn valency(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.src == v) as usize + (e.dst == v) as usize)
            .sum()
    }

    pub fn is_folded(&self) -> bool {
        let n = self.rank;
        let mut seen = vec![false; self.num_vertices * 2 * n];
        for e in &self.edges {
            let l = e.label as usize - 1;
            for idx in [e.src * 2 * n + 2 * l, e.dst * 2 * n + 2 * l + 1] {
                if seen[idx] {
                    return false;
                }
                seen[idx] = true;
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let inc = self.incidence();
        let mut seen = vec![false; self.num_vertices];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for h in &inc[v] {
                if !seen[h.to] {
                    seen[h.to] = true;
                    count += 1;
                    queue.push_back(h.to);
                }
            }
        }
        count == self.num_vertices
    }

    /// Reads `w` from `start`, taking the first matching edge at each step.
    /// On a folded graph this is the unique path.
    pub fn read(&self, start: usize, w: &Word) -> Option<usize> {
        let inc = self.incidence();
        let mut v = start;
        for &l in w.letters() {
            v = inc[v].iter().find(|h| self.letter(h) == l)?.to;
        }
        Some(v)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            rank: self.rank,
            vertices: (0..self.num_vertices).collect(),
            edges: self.edges.iter().map(|e| (e.src, e.dst, e.label)).collect(),
            basepoint: self.basepoint,
            flags: GraphFlags {
                folded: self.is_folded(),
                connected: self.is_connected(),
                full_valency: (0..self.num_vertices).all(|v| self.valency(v) == 2 * self.rank),
            },
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self, AutomataError> {
        if doc.vertices.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(AutomataError::InvalidGraph(
                "vertices must be listed as 0..n in order".into(),
            ));
        }
        let g = LabeledGraph {
            rank: doc.rank,
            num_vertices: doc.vertices.len(),
            edges: doc
                .edges
                .iter()
                .map(|&(src, dst, label)| LabeledEdge { src, dst, label })
                .collect(),
            basepoint: doc.basepoint,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graph documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, AutomataError> {
        let doc: GraphDocument = serde_json::from_str(s).map_err(|e| AutomataError::InvalidGraph(e.to_string()))?;
        Self::from_document(&doc)
    }

    /// DOT export; edges carry their generator as label text.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        for v in 0..self.num_vertices {
            if Some(v) == self.basepoint {
                writeln!(out, "  {v} [shape=doublecircle];").unwrap();
            } else {
                writeln!(out, "  {v};").unwrap();
            }
        }
        for e in &self.edges {
            let text = Word::generator(e.label as usize).to_string();
            writeln!(out, "  {} -> {} [label=\"{}\"];", e.src, e.dst, text).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Structured-text form of a labeled graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub rank: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize, u32)>,
    pub basepoint: Option<usize>,
    pub flags: GraphFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFlags {
    pub folded: bool,
    pub connected: bool,
    pub full_valency: bool,
}
