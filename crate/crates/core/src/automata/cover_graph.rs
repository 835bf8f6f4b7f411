//! Finite covers of the rose, i.e. finite-index subgroups.

use serde::Serialize;

use crate::automata::core_graph::accepts;
use crate::automata::folded::{slot_letter, FoldedGraph};
use crate::automata::graph::LabeledGraph;
use crate::automata::word::Word;
use crate::error::AutomataError;

/// A folded, connected, based graph in which every vertex has one incoming
/// and one outgoing edge per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    graph: FoldedGraph,
}

/// Right action of the generators on the vertex set (the cosets).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub index: usize,
    pub base: usize,
    /// `permutations[i][v]` is the endpoint of the generator-`i+1` edge at `v`.
    pub permutations: Vec<Vec<usize>>,
}

impl CosetTable {
    /// Image of vertex `v` under the word `w` acting on the right.
    pub fn act(&self, v: usize, w: &Word) -> usize {
        w.letters().iter().fold(v, |v, &l| {
            let p = &self.permutations[l.unsigned_abs() as usize - 1];
            if l > 0 {
                p[v]
            } else {
                p.iter().position(|&x| x == v).expect("permutation")
            }
        })
    }

    pub fn is_identity(&self) -> bool {
        self.permutations
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }
}

impl CoverGraph {
    pub fn new(graph: FoldedGraph) -> Result<CoverGraph, AutomataError> {
        for v in 0..graph.num_vertices() {
            for (s, t) in graph.rows()[v].iter().enumerate() {
                if t.is_none() {
                    return Err(AutomataError::NotFiniteIndex {
                        vertex: v,
                        letter: slot_letter(s),
                    });
                }
            }
        }
        if graph.num_vertices() == 0 || graph.canonical().num_vertices() != graph.num_vertices() {
            return Err(AutomataError::InvalidGraph("cover is not connected".into()));
        }
        Ok(CoverGraph { graph })
    }

    pub fn from_labeled(g: &LabeledGraph) -> Result<CoverGraph, AutomataError> {
        CoverGraph::new(FoldedGraph::from_labeled(g)?)
    }

    /// The one-vertex cover: the whole free group.
    pub fn rose(rank: usize) -> CoverGraph {
        let next = vec![(0..2 * rank).map(|_| Some(0)).collect()];
        CoverGraph {
            graph: FoldedGraph::from_parts(rank, 0, next),
        }
    }

    pub fn graph(&self) -> &FoldedGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn index(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn contains(&self, w: &Word) -> bool {
        accepts(&self.graph, w)
    }

    pub fn to_labeled(&self) -> LabeledGraph {
        self.graph.to_labeled()
    }

    pub fn coset_table(&self) -> CosetTable {
        coset_table(&self.graph).expect("validated at construction")
    }

    /// Shortest coset representatives, one word per vertex.
    pub fn transversal(&self) -> Vec<Word> {
        self.graph
            .tree_words()
            .into_iter()
            .map(|w| w.expect("cover is connected"))
            .collect()
    }
}

/// Permutation representation of a folded graph that should be full.
pub fn coset_table(g: &FoldedGraph) -> Result<CosetTable, AutomataError> {
    let mut permutations = vec![Vec::with_capacity(g.num_vertices()); g.rank()];
    for v in 0..g.num_vertices() {
        for (s, t) in g.rows()[v].iter().enumerate() {
            let Some(t) = t else {
                return Err(AutomataError::NotFiniteIndex {
                    vertex: v,
                    letter: slot_letter(s),
                });
            };
            if s % 2 == 0 {
                permutations[s / 2].push(*t);
            }
        }
    }
    Ok(CosetTable {
        index: g.num_vertices(),
        base: g.base(),
        permutations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::core_graph::CoreGraph;
    use crate::automata::word::Alphabet;

    #[test]
    fn rose_table_is_trivial() {
        let t = CoverGraph::rose(2).coset_table();
        assert_eq!(t.index, 1);
        assert!(t.is_identity());
    }

    #[test]
    fn two_sheeted_cover() {
        let mut lg = LabeledGraph::new(2, 2).with_basepoint(0);
        lg.add_edge(0, 1, 1);
        lg.add_edge(1, 0, 1);
        lg.add_edge(0, 0, 2);
        lg.add_edge(1, 1, 2);
        let c = CoverGraph::from_labeled(&lg).unwrap();
        let t = c.coset_table();
        assert_eq!(t.index, 2);
        assert_eq!(t.permutations, vec![vec![1, 0], vec![0, 1]]);
        assert!(c.contains(&"aa".parse().unwrap()));
        assert!(c.contains(&"b".parse().unwrap()));
        assert!(!c.contains(&"a".parse().unwrap()));
        assert_eq!(t.act(0, &"ab".parse().unwrap()), 1);
    }

    #[test]
    fn completed_core_is_not_finite_index() {
        let a = Alphabet::new(2).unwrap();
        let core = CoreGraph::build(a, &a.parse_generators("a").unwrap());
        let completed = core.complete();
        let err = coset_table(completed.graph()).unwrap_err();
        assert!(matches!(err, AutomataError::NotFiniteIndex { .. }));
    }
}
