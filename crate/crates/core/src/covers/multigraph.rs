//! Unlabeled finite multigraphs and ordinary covering maps between them.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automata::LabeledGraph;
use crate::error::CoverError;

/// A finite multigraph. Loops and parallel edges are allowed; each edge has
/// a tail and a head so covers can keep orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// One end of an edge. `head` selects which end, so a loop has two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub edge: usize,
    pub head: bool,
}

impl Multigraph {
    pub fn new(vertices: usize) -> Self {
        Multigraph {
            vertices,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, tail: usize, head: usize) -> usize {
        self.edges.push((tail, head));
        self.edges.len() - 1
    }

    pub fn rose(petals: usize) -> Self {
        Multigraph {
            vertices: 1,
            edges: vec![(0, 0); petals],
        }
    }

    pub fn cycle(n: usize) -> Self {
        Multigraph {
            vertices: n,
            edges: (0..n).map(|i| (i, (i + 1) % n)).collect(),
        }
    }

    pub fn path(n: usize) -> Self {
        Multigraph {
            vertices: n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), CoverError> {
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            if t >= self.vertices || h >= self.vertices {
                return Err(CoverError::Invalid(format!("edge {i} has an endpoint out of range")));
            }
        }
        Ok(())
    }

    pub fn endpoint(&self, end: End) -> usize {
        let (t, h) = self.edges[end.edge];
        if end.head {
            h
        } else {
            t
        }
    }

    pub fn other_end(&self, end: End) -> usize {
        self.endpoint(End {
            edge: end.edge,
            head: !end.head,
        })
    }

    /// Edge ends at each vertex; a loop appears twice at its vertex.
    pub fn ends(&self) -> Vec<Vec<End>> {
        let mut out = vec![Vec::new(); self.vertices];
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            out[t].push(End { edge: i, head: false });
            out[h].push(End { edge: i, head: true });
        }
        out
    }

    /// Neighbour lists as `(edge, other endpoint)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            adj[t].push((i, h));
            adj[h].push((i, t));
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(t, h)| (t == v) as usize + (h == v) as usize)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        self.vertices == 0 || self.component_of(0).len() == self.vertices
    }

    /// Vertices reachable from `v`, in breadth-first order.
    pub fn component_of(&self, v: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices];
        seen[v] = true;
        let mut order = vec![v];
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &(_, y) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
        order
    }

    /// First Betti number of a connected graph.
    pub fn cycle_rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.vertices)
    }

    /// Edge ids of a breadth-first spanning tree rooted at vertex 0.
    pub fn spanning_tree(&self) -> Vec<bool> {
        let mut tree = vec![false; self.edges.len()];
        if self.vertices == 0 {
            return tree;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &(e, y) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    tree[e] = true;
                    queue.push_back(y);
                }
            }
        }
        tree
    }

    /// Induced subgraph on `keep` (in the given order). Returns the graph and
    /// the ids of the original edges it retains.
    pub fn induced(&self, keep: &[usize]) -> (Multigraph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.vertices];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Multigraph::new(keep.len());
        let mut kept = Vec::new();
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if index[t] != usize::MAX && index[h] != usize::MAX {
                g.add_edge(index[t], index[h]);
                kept.push(e);
            }
        }
        (g, kept)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("multigraphs serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, CoverError> {
        let g: Multigraph = serde_json::from_str(s).map_err(|e| CoverError::Invalid(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        for v in 0..self.vertices {
            writeln!(out, "  {v};").unwrap();
        }
        for &(t, h) in &self.edges {
            writeln!(out, "  {t} -- {h};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

impl From<&LabeledGraph> for Multigraph {
    fn from(g: &LabeledGraph) -> Self {
        Multigraph {
            vertices: g.num_vertices,
            edges: g.edges.iter().map(|e| (e.src, e.dst)).collect(),
        }
    }
}

/// An orientation-preserving covering map `graph -> base` given by vertex
/// and edge images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub graph: Multigraph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl Cover {
    pub fn identity(g: &Multigraph) -> Cover {
        Cover {
            graph: g.clone(),
            vertex_map: (0..g.vertices).collect(),
            edge_map: (0..g.edges.len()).collect(),
        }
    }

    /// `self` covers `inner.graph`, which covers something else; the result
    /// covers that something else.
    pub fn then(&self, inner: &Cover) -> Cover {
        Cover {
            graph: self.graph.clone(),
            vertex_map: self.vertex_map.iter().map(|&v| inner.vertex_map[v]).collect(),
            edge_map: self.edge_map.iter().map(|&e| inner.edge_map[e]).collect(),
        }
    }

    /// Number of sheets, read off the preimage of base vertex 0.
    pub fn sheets(&self) -> usize {
        self.vertex_map.iter().filter(|&&v| v == 0).count()
    }

    /// Checks the covering conditions against `base`: endpoints are
    /// respected and every vertex star maps bijectively onto its image star.
    pub fn verify(&self, base: &Multigraph) -> Result<(), String> {
        let g = &self.graph;
        if self.vertex_map.len() != g.vertices || self.edge_map.len() != g.edges.len() {
            return Err("map sizes do not match the graph".into());
        }
        for (e, &(t, h)) in g.edges.iter().enumerate() {
            let be = self.edge_map[e];
            if be >= base.edges.len() {
                return Err(format!("edge {e} maps outside the base"));
            }
            if (self.vertex_map[t], self.vertex_map[h]) != base.edges[be] {
                return Err(format!("edge {e} does not respect endpoints"));
            }
        }
        let base_ends = base.ends();
        for (v, ends) in g.ends().iter().enumerate() {
            let mut image: Vec<End> = ends
                .iter()
                .map(|x| End {
                    edge: self.edge_map[x.edge],
                    head: x.head,
                })
                .collect();
            image.sort();
            let mut expected = base_ends[self.vertex_map[v]].clone();
            expected.sort();
            if image != expected {
                return Err(format!("star of vertex {v} is not mapped bijectively"));
            }
        }
        if !g.is_connected() {
            return Err("cover is not connected".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_count_loops_twice() {
        let r = Multigraph::rose(2);
        assert_eq!(r.degree(0), 4);
        assert_eq!(r.ends()[0].len(), 4);
    }

    #[test]
    fn spanning_tree_size() {
        let g = Multigraph::cycle(5);
        assert_eq!(g.spanning_tree().iter().filter(|&&t| t).count(), 4);
        assert_eq!(g.cycle_rank(), 1);
    }

    #[test]
    fn json_round_trip() {
        let g = Multigraph::cycle(3);
        assert_eq!(Multigraph::from_json(&g.to_json()).unwrap(), g);
        assert!(Multigraph::from_json(r#"{"vertices":1,"edges":[[0,1]]}"#).is_err());
    }

    #[test]
    fn double_cover_of_circle_verifies() {
        let base = Multigraph::rose(1);
        let cover = Cover {
            graph: Multigraph::cycle(2),
            vertex_map: vec![0, 0],
            edge_map: vec![0, 0],
        };
        assert_eq!(cover.verify(&base), Ok(()));
        assert_eq!(cover.sheets(), 2);
        let mut broken = cover.clone();
        broken.graph.edges.pop();
        broken.edge_map.pop();
        assert!(broken.verify(&base).is_err());
    }
}
