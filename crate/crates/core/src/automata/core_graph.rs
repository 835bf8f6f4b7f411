//! Stallings core graphs of finitely generated subgroups.

use std::collections::VecDeque;

use crate::automata::folded::{fold_words, FoldedGraph};
use crate::automata::graph::LabeledGraph;
use crate::automata::word::{Alphabet, Letter, Word};
use crate::error::AutomataError;

/// Folded based graph whose closed paths at the basepoint read exactly the
/// subgroup, trimmed to its minimal core plus basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreGraph {
    graph: FoldedGraph,
    generators: Vec<Word>,
}

impl CoreGraph {
    /// Folds the wedge of generator petals. Trivial generators are dropped;
    /// an empty set yields the one-vertex graph of the trivial subgroup.
    pub fn build(alphabet: Alphabet, generators: &[Word]) -> CoreGraph {
        let generators: Vec<Word> = generators.iter().map(Word::reduced).filter(|w| !w.is_empty()).collect();
        let graph = fold_words(alphabet.rank(), &generators).trimmed().canonical();
        CoreGraph { graph, generators }
    }

    /// Wraps an already folded graph, trimming hair away from the basepoint.
    /// Generators become a spanning-tree basis.
    pub fn from_folded(graph: &FoldedGraph) -> CoreGraph {
        let graph = graph.trimmed().canonical();
        let generators = graph.basis();
        CoreGraph { graph, generators }
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.graph.rank()).expect("rank is positive")
    }

    pub fn graph(&self) -> &FoldedGraph {
        &self.graph
    }

    pub fn to_labeled(&self) -> LabeledGraph {
        self.graph.to_labeled()
    }

    /// Generating words as given (reduced, nontrivial), or a computed basis.
    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn basis(&self) -> Vec<Word> {
        self.graph.basis()
    }

    pub fn is_trivial(&self) -> bool {
        self.graph.num_edges() == 0
    }

    /// Longest generator length; zero for the trivial subgroup.
    pub fn max_generator_length(&self) -> usize {
        self.generators.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn contains(&self, w: &Word) -> bool {
        accepts(&self.graph, w)
    }

    /// First Betti number `|E| - |V| + 1`, the free rank of the subgroup.
    pub fn subgroup_rank(&self) -> usize {
        self.graph.num_edges() + 1 - self.graph.num_vertices()
    }

    /// Based isomorphism. Both sides are stored in canonical order.
    pub fn same_subgroup(&self, other: &CoreGraph) -> bool {
        self.graph == other.graph
    }

    pub fn intersect(&self, other: &CoreGraph) -> Result<CoreGraph, AutomataError> {
        let product = product_component(&self.graph, &other.graph)?;
        Ok(CoreGraph::from_folded(&product))
    }

    /// Searches for `g` with `g⁻¹·H·g ≤ target`, where `H` is this subgroup.
    ///
    /// The basepoint-free core of `H` is immersed into the core of `target`
    /// from every candidate image of one of its vertices; the extension is
    /// forced because the target is folded. A hit at target vertex `t`
    /// yields `g = u·q⁻¹`, with `u` the path from the basepoint of `H` to the
    /// cyclic core and `q` a path from the target basepoint to `t`.
    pub fn conjugate_into(&self, target: &CoreGraph) -> Result<Option<Word>, AutomataError> {
        Ok(self.conjugate_into_search(target)?.conjugator)
    }

    pub fn conjugate_into_search(&self, target: &CoreGraph) -> Result<ConjugacySearch, AutomataError> {
        if self.rank() != target.rank() {
            return Err(AutomataError::RankMismatch {
                left: self.rank(),
                right: target.rank(),
            });
        }
        let source = &self.graph;
        let (cyclic, map) = source.trim_with(None);
        if cyclic.num_vertices() == 0 {
            return Ok(ConjugacySearch {
                conjugator: Some(Word::identity()),
                candidates_tried: 0,
            });
        }
        // the vertex of the cyclic core nearest the basepoint
        let words = source.tree_words();
        let (anchor_old, anchor) = map
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.map(|m| (v, m)))
            .min_by_key(|&(v, _)| (words[v].as_ref().map_or(usize::MAX, Word::len), v))
            .expect("cyclic core is nonempty");
        let u = words[anchor_old].clone().expect("source is connected");

        let tgt = &target.graph;
        let target_words = tgt.tree_words();
        let mut tried = 0;
        for (t, word) in target_words.iter().enumerate() {
            tried += 1;
            if immerses(&cyclic, anchor, tgt, t) {
                let q = word.clone().expect("target is connected");
                let g = &u * &q.inverse();
                return Ok(ConjugacySearch {
                    conjugator: Some(g),
                    candidates_tried: tried,
                });
            }
        }
        Ok(ConjugacySearch {
            conjugator: None,
            candidates_tried: tried,
        })
    }

    /// Adds outer edges until every original vertex has full valency, then
    /// pairs the outer edges along constant-label lines.
    pub fn complete(&self) -> CompletedCore {
        CompletedCore::new(self)
    }
}

/// Outcome of the immersion search, including how many basepoint images
/// were examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacySearch {
    pub conjugator: Option<Word>,
    pub candidates_tried: usize,
}

/// True iff `w` reads a closed path at the basepoint.
pub fn accepts(g: &FoldedGraph, w: &Word) -> bool {
    let w = w.reduced();
    g.read(g.base(), &w) == Some(g.base())
}

/// Attempts the label-preserving map of `source` into `target` sending
/// `anchor` to `image`.
fn immerses(source: &FoldedGraph, anchor: usize, target: &FoldedGraph, image: usize) -> bool {
    let mut phi = vec![usize::MAX; source.num_vertices()];
    phi[anchor] = image;
    let mut queue = VecDeque::from([anchor]);
    while let Some(v) = queue.pop_front() {
        for s in 0..2 * source.rank() {
            let Some(w) = source.rows()[v][s] else { continue };
            let Some(tw) = target.rows()[phi[v]][s] else {
                return false;
            };
            if phi[w] == usize::MAX {
                phi[w] = tw;
                queue.push_back(w);
            } else if phi[w] != tw {
                return false;
            }
        }
    }
    true
}

/// Based component of the label-respecting product of two folded graphs.
pub(crate) fn product_component(a: &FoldedGraph, b: &FoldedGraph) -> Result<FoldedGraph, AutomataError> {
    if a.rank() != b.rank() {
        return Err(AutomataError::RankMismatch {
            left: a.rank(),
            right: b.rank(),
        });
    }
    let rank = a.rank();
    let nb = b.num_vertices();
    let key = |x: usize, y: usize| x * nb + y;
    let mut index = std::collections::HashMap::new();
    let mut pairs = vec![(a.base(), b.base())];
    index.insert(key(a.base(), b.base()), 0usize);
    let mut next: Vec<Vec<Option<usize>>> = Vec::new();
    let mut head = 0;
    while head < pairs.len() {
        let (x, y) = pairs[head];
        let mut row = vec![None; 2 * rank];
        for (s, cell) in row.iter_mut().enumerate() {
            if let (Some(x2), Some(y2)) = (a.rows()[x][s], b.rows()[y][s]) {
                let id = *index.entry(key(x2, y2)).or_insert_with(|| {
                    pairs.push((x2, y2));
                    pairs.len() - 1
                });
                *cell = Some(id);
            }
        }
        next.push(row);
        head += 1;
    }
    Ok(FoldedGraph::from_parts(rank, 0, next))
}

/// One associated pair of outer edges: the constant-label line that enters
/// the core at `start` (an outer vertex with an outgoing `label` edge) and
/// leaves it at `end` (an outer vertex with an incoming `label` edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OuterPair {
    pub label: u32,
    pub start: usize,
    pub end: usize,
    /// Number of edges on the line, outer edges included.
    pub length: usize,
    /// The chosen representative: outer vertex and the signed letter read
    /// when leaving it.
    pub representative: (usize, Letter),
}

/// A core enlarged so that original vertices have valency `2n` and every
/// added vertex has valency one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletedCore {
    graph: FoldedGraph,
    inner: usize,
    pairs: Vec<OuterPair>,
}

impl CompletedCore {
    fn new(core: &CoreGraph) -> CompletedCore {
        let g = core.graph();
        let rank = g.rank();
        let inner = g.num_vertices();
        let mut next: Vec<Vec<Option<usize>>> = g.rows().to_vec();
        for v in 0..inner {
            for s in 0..2 * rank {
                if next[v][s].is_none() {
                    let o = next.len();
                    let mut row = vec![None; 2 * rank];
                    row[s ^ 1] = Some(v);
                    next.push(row);
                    next[v][s] = Some(o);
                }
            }
        }
        let graph = FoldedGraph::from_parts(rank, g.base(), next);

        let mut pairs = Vec::new();
        for o in inner..graph.num_vertices() {
            for label in 1..=rank as u32 {
                let l = label as Letter;
                // o is the start of a line if it has an outgoing `label` edge
                let Some(mut v) = graph.target(o, l) else { continue };
                let mut length = 1;
                while v < inner {
                    v = graph.target(v, l).expect("inner vertices are full");
                    length += 1;
                }
                let end = v;
                // candidates: leave `o` reading l, or leave `end` reading l⁻¹
                let representative = if (o, l) <= (end, -l) { (o, l) } else { (end, -l) };
                pairs.push(OuterPair {
                    label,
                    start: o,
                    end,
                    length,
                    representative,
                });
            }
        }
        pairs.sort_by_key(|p| p.representative.0);
        CompletedCore { graph, inner, pairs }
    }

    pub fn graph(&self) -> &FoldedGraph {
        &self.graph
    }

    /// Vertices `0..inner_vertices()` are the original core vertices.
    pub fn inner_vertices(&self) -> usize {
        self.inner
    }

    pub fn is_outer(&self, v: usize) -> bool {
        v >= self.inner
    }

    pub fn outer_pairs(&self) -> &[OuterPair] {
        &self.pairs
    }

    pub fn num_outer_edges(&self) -> usize {
        self.graph.num_vertices() - self.inner
    }

    /// For each outer vertex, the outer vertex it is associated with.
    pub fn association(&self) -> Vec<usize> {
        let mut partner: Vec<usize> = (0..self.graph.num_vertices()).collect();
        for p in &self.pairs {
            partner[p.start] = p.end;
            partner[p.end] = p.start;
        }
        partner
    }

    pub fn to_labeled(&self) -> LabeledGraph {
        self.graph.to_labeled()
    }
}

/// Number of missing directions summed over the vertices of `g`.
pub fn missing_directions(g: &FoldedGraph) -> usize {
    (0..g.num_vertices())
        .map(|v| (0..2 * g.rank()).filter(|&s| g.rows()[v][s].is_none()).count())
        .sum()
}
