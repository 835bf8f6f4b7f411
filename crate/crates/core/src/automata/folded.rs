//! Folded graphs as transition tables, and Stallings folding.

use std::collections::VecDeque;

use crate::automata::graph::LabeledGraph;
use crate::automata::word::{Letter, Word};
use crate::error::AutomataError;

#[inline]
pub(crate) fn slot(l: Letter) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + (l < 0) as usize
}

#[inline]
pub(crate) fn slot_letter(s: usize) -> Letter {
    let g = (s / 2 + 1) as Letter;
    if s.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

/// A folded based graph stored as a transition table: `next[v][slot(l)]`
/// is the endpoint of the unique edge reading `l` out of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedGraph {
    rank: usize,
    base: usize,
    next: Vec<Vec<Option<usize>>>,
}

impl FoldedGraph {
    /// The single-vertex graph of the trivial subgroup.
    pub fn trivial(rank: usize) -> Self {
        FoldedGraph {
            rank,
            base: 0,
            next: vec![vec![None; 2 * rank]],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn num_vertices(&self) -> usize {
        self.next.len()
    }

    pub fn target(&self, v: usize, l: Letter) -> Option<usize> {
        self.next[v][slot(l)]
    }

    /// Endpoint of the path reading `w` from `start`, if it exists.
    pub fn read(&self, start: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(start, |v, &l| self.target(v, l))
    }

    /// Positive edges `(src, label, dst)` ordered by source then label.
    pub fn edges(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        self.next
            .iter()
            .enumerate()
            .flat_map(|(v, row)| (0..self.rank).filter_map(move |g| row[2 * g].map(|w| (v, g as u32 + 1, w))))
    }

    pub fn num_edges(&self) -> usize {
        self.edges().count()
    }

    /// Number of defined directions at `v`; a loop contributes two.
    pub fn valency(&self, v: usize) -> usize {
        self.next[v].iter().filter(|t| t.is_some()).count()
    }

    pub fn is_full(&self) -> bool {
        self.next.iter().all(|row| row.iter().all(|t| t.is_some()))
    }

    pub fn to_labeled(&self) -> LabeledGraph {
        let mut g = LabeledGraph::new(self.rank, self.num_vertices()).with_basepoint(self.base);
        for (s, l, d) in self.edges() {
            g.add_edge(s, d, l);
        }
        g
    }

    /// Converts a labeled graph that is already folded; the basepoint
    /// defaults to vertex 0.
    pub fn from_labeled(g: &LabeledGraph) -> Result<Self, AutomataError> {
        g.validate()?;
        if g.num_vertices == 0 {
            return Err(AutomataError::InvalidGraph("graph has no vertices".into()));
        }
        let mut next = vec![vec![None; 2 * g.rank]; g.num_vertices];
        for e in &g.edges {
            let l = e.label as Letter;
            for (v, s, t) in [(e.src, slot(l), e.dst), (e.dst, slot(-l), e.src)] {
                if next[v][s].replace(t).is_some() {
                    return Err(AutomataError::InvalidGraph(format!(
                        "vertex {v} has two edges reading {}",
                        Word::from_letters(vec![slot_letter(s)])
                    )));
                }
            }
        }
        Ok(FoldedGraph {
            rank: g.rank,
            base: g.basepoint.unwrap_or(0),
            next,
        })
    }

    /// Shortest-path words from the basepoint, ties broken by letter order
    /// `a, A, b, B, ...`. `None` for unreachable vertices.
    pub fn tree_words(&self) -> Vec<Option<Word>> {
        self.tree_words_from(self.base)
    }

    pub fn tree_words_from(&self, root: usize) -> Vec<Option<Word>> {
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; self.num_vertices()];
        let mut seen = vec![false; self.num_vertices()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for s in 0..2 * self.rank {
                if let Some(w) = self.next[v][s] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((v, slot_letter(s)));
                        queue.push_back(w);
                    }
                }
            }
        }
        (0..self.num_vertices())
            .map(|v| {
                if !seen[v] {
                    return None;
                }
                let mut letters = Vec::new();
                let mut cur = v;
                while let Some((p, l)) = parent[cur] {
                    letters.push(l);
                    cur = p;
                }
                letters.reverse();
                Some(Word::from_letters(letters))
            })
            .collect()
    }

    /// Free basis of the loops at the basepoint: one word per edge outside
    /// the breadth-first spanning tree.
    pub fn basis(&self) -> Vec<Word> {
        let words = self.tree_words();
        let mut tree_edge = vec![vec![false; 2 * self.rank]; self.num_vertices()];
        for (v, w) in words.iter().enumerate() {
            let Some(w) = w else { continue };
            if let Some(&l) = w.letters().last() {
                let parent = self.target(v, -l).expect("tree edge exists");
                if l > 0 {
                    tree_edge[parent][slot(l)] = true;
                } else {
                    tree_edge[v][slot(-l)] = true;
                }
            }
        }
        let mut out = Vec::new();
        for (s, l, d) in self.edges() {
            if tree_edge[s][slot(l as Letter)] {
                continue;
            }
            let (Some(ws), Some(wd)) = (&words[s], &words[d]) else {
                continue;
            };
            let word = ws * &Word::generator(l as usize);
            out.push(&word * &wd.inverse());
        }
        out
    }

    /// Drops vertices unreachable from the basepoint and renumbers the rest
    /// in breadth-first order, so isomorphic based graphs compare equal.
    pub fn canonical(&self) -> FoldedGraph {
        let mut order = Vec::with_capacity(self.num_vertices());
        let mut index = vec![usize::MAX; self.num_vertices()];
        index[self.base] = 0;
        order.push(self.base);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for s in 0..2 * self.rank {
                if let Some(w) = self.next[v][s] {
                    if index[w] == usize::MAX {
                        index[w] = order.len();
                        order.push(w);
                    }
                }
            }
        }
        let next = order
            .iter()
            .map(|&v| self.next[v].iter().map(|t| t.map(|w| index[w])).collect())
            .collect();
        FoldedGraph {
            rank: self.rank,
            base: 0,
            next,
        }
    }

    /// Repeatedly removes valency-one vertices other than the basepoint.
    pub fn trimmed(&self) -> FoldedGraph {
        self.trim_with(Some(self.base)).0
    }

    /// Trims valency-one vertices, keeping `keep` if given. Returns the
    /// trimmed graph and the old-to-new vertex map.
    pub(crate) fn trim_with(&self, keep: Option<usize>) -> (FoldedGraph, Vec<Option<usize>>) {
        let n = self.num_vertices();
        let mut next = self.next.clone();
        let mut alive = vec![true; n];
        let mut valency: Vec<usize> = (0..n).map(|v| self.valency(v)).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| valency[v] <= 1 && Some(v) != keep).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] || valency[v] > 1 || Some(v) == keep {
                continue;
            }
            alive[v] = false;
            for s in 0..2 * self.rank {
                if let Some(w) = next[v][s].take() {
                    next[w][s ^ 1] = None;
                    valency[w] -= 1;
                    if alive[w] && valency[w] <= 1 && Some(w) != keep {
                        stack.push(w);
                    }
                }
            }
        }
        let mut map = vec![None; n];
        let mut count = 0;
        for v in 0..n {
            if alive[v] {
                map[v] = Some(count);
                count += 1;
            }
        }
        if count == 0 {
            // nothing survives: the graph was a tree and no vertex was kept
            return (
                FoldedGraph {
                    rank: self.rank,
                    base: 0,
                    next: Vec::new(),
                },
                map,
            );
        }
        let new_next = (0..n)
            .filter(|&v| alive[v])
            .map(|v| next[v].iter().map(|t| t.and_then(|w| map[w])).collect())
            .collect();
        let base = keep.and_then(|k| map[k]).unwrap_or(0);
        (
            FoldedGraph {
                rank: self.rank,
                base,
                next: new_next,
            },
            map,
        )
    }

    pub(crate) fn from_parts(rank: usize, base: usize, next: Vec<Vec<Option<usize>>>) -> Self {
        FoldedGraph { rank, base, next }
    }

    pub(crate) fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.next
    }
}

/// Union-find folding of an arbitrary labeled graph.
struct Folder {
    rank: usize,
    parent: Vec<usize>,
    next: Vec<Vec<Option<usize>>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new(rank: usize, vertices: usize) -> Self {
        Folder {
            rank,
            parent: (0..vertices).collect(),
            next: vec![vec![None; 2 * rank]; vertices],
            pending: Vec::new(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn set(&mut self, u: usize, s: usize, v: usize) {
        match self.next[u][s] {
            None => self.next[u][s] = Some(v),
            Some(w) => {
                let (w, v) = (self.find(w), self.find(v));
                if w != v {
                    self.pending.push((w, v));
                }
            }
        }
    }

    fn add_edge(&mut self, u: usize, l: Letter, v: usize) {
        let (u, v) = (self.find(u), self.find(v));
        self.set(u, slot(l), v);
        self.set(v, slot(-l), u);
        self.drain();
    }

    fn drain(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone] = keep;
            let row = std::mem::take(&mut self.next[gone]);
            for (s, t) in row.into_iter().enumerate() {
                if let Some(t) = t {
                    self.set(keep, s, t);
                }
            }
        }
    }

    fn finish(mut self, base: usize) -> FoldedGraph {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let mut index = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            if roots[v] == v {
                index[v] = count;
                count += 1;
            }
        }
        let mut next = vec![vec![None; 2 * self.rank]; count];
        for v in 0..n {
            if roots[v] != v {
                continue;
            }
            for s in 0..2 * self.rank {
                if let Some(t) = self.next[v][s] {
                    next[index[v]][s] = Some(index[roots[t]]);
                }
            }
        }
        FoldedGraph {
            rank: self.rank,
            base: index[roots[base]],
            next,
        }
    }
}

/// Folds a labeled graph; the basepoint defaults to vertex 0. The result
/// keeps every vertex class (no trimming).
pub fn fold(g: &LabeledGraph) -> Result<FoldedGraph, AutomataError> {
    g.validate()?;
    if g.num_vertices == 0 {
        return Err(AutomataError::InvalidGraph("graph has no vertices".into()));
    }
    let mut f = Folder::new(g.rank, g.num_vertices);
    for e in &g.edges {
        f.add_edge(e.src, e.label as Letter, e.dst);
    }
    Ok(f.finish(g.basepoint.unwrap_or(0)))
}

/// Wedge of one closed petal per word at a common basepoint, folded.
pub fn fold_words(rank: usize, words: &[Word]) -> FoldedGraph {
    let mut g = LabeledGraph::new(rank, 1).with_basepoint(0);
    for w in words {
        let w = w.reduced();
        if w.is_empty() {
            continue;
        }
        let letters = w.letters();
        let mut prev = 0;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { 0 } else { g.add_vertex() };
            let label = l.unsigned_abs();
            if l > 0 {
                g.add_edge(prev, next, label);
            } else {
                g.add_edge(next, prev, label);
            }
            prev = next;
        }
    }
    fold(&g).expect("petal graph is well formed")
}
