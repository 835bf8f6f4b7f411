//! Finite-index witnesses for con-separation.
//!
//! `build_delta` closes up the completed core of `H1` by gluing one copy of
//! a large-girth cover `Γ_K` (minus one edge) along every associated pair of
//! outer edges. The result is a finite cover of the rose whose subgroup `D`
//! contains `H1`, and in which short loops are all homotopic into the core.

use std::collections::VecDeque;

use serde::Serialize;

use crate::automata::core_graph::product_component;
use crate::automata::folded::{slot, slot_letter};
use crate::automata::graph::HalfEdge;
use crate::automata::{CoreGraph, CosetTable, CoverGraph, FoldedGraph, LabeledGraph, Letter, OuterPair, Word};
use crate::covers::{rose_girth_cover, Girth, GirthCover};
use crate::error::{AutomataError, CoverError, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessParams {
    /// Length bound: `Γ_K` has no closed path of length at most `c`.
    pub c: usize,
}

/// The glued cover together with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delta {
    pub cover: CoverGraph,
    /// Vertices `0..core_vertices` are the core vertices, in core order.
    pub core_vertices: usize,
    pub pairs: Vec<OuterPair>,
    pub gamma_k: GirthCover,
    /// Distance from `i(ê)` to `t(ê)` in `Γ_K` with `ê` removed.
    pub removed_edge_distance: Option<usize>,
    pub params: WitnessParams,
}

impl Delta {
    pub fn index(&self) -> usize {
        self.cover.index()
    }

    pub fn distance_ok(&self) -> bool {
        self.removed_edge_distance.is_none_or(|d| d >= self.params.c)
    }
}

/// Provenance of a witness, as reported alongside the cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaSummary {
    pub c: usize,
    pub pairs: usize,
    pub gamma_k_girth: Girth,
    pub gamma_k_sheets: usize,
    pub core_vertices: usize,
    pub index: usize,
    pub removed_edge_distance: Option<usize>,
    pub normalized: bool,
}

impl From<&Delta> for DeltaSummary {
    fn from(d: &Delta) -> Self {
        DeltaSummary {
            c: d.params.c,
            pairs: d.pairs.len(),
            gamma_k_girth: d.gamma_k.girth,
            gamma_k_sheets: d.gamma_k.cover.index(),
            core_vertices: d.core_vertices,
            index: d.index(),
            removed_edge_distance: d.removed_edge_distance,
            normalized: false,
        }
    }
}

/// Glues copies of `Γ_K` onto the completed core of `h1`.
pub fn build_delta(h1: &CoreGraph, params: WitnessParams) -> Result<Delta, Error> {
    if params.c == 0 {
        return Err(CoverError::Invalid("C must be positive".into()).into());
    }
    let rank = h1.rank();
    let completed = h1.complete();
    let gamma_k = rose_girth_cover(rank, params.c)?;
    let k = gamma_k.cover.graph();
    let inner = completed.inner_vertices();
    let pairs = completed.outer_pairs().to_vec();
    let size = k.num_vertices();

    let mut next: Vec<Vec<Option<usize>>> = completed.graph().rows()[..inner]
        .iter()
        .map(|row| row.iter().map(|t| t.filter(|&w| w < inner)).collect())
        .collect();
    let mut distances = Vec::new();
    for (p, pair) in pairs.iter().enumerate() {
        let offset = inner + p * size;
        let x = pair.label as Letter;
        let (from, to) = (0usize, k.target(0, x).expect("covers are full"));
        distances.push(distance_without(k, from, x, to));
        for row in k.rows() {
            next.push(row.iter().map(|t| t.map(|w| w + offset)).collect());
        }
        let (out_slot, in_slot) = (slot(x), slot(-x));
        // ê is removed; i(ê) takes over the outgoing edge of the start vertex
        let a = completed
            .graph()
            .target(pair.start, x)
            .expect("start has an outgoing edge");
        next[offset + from][out_slot] = Some(a);
        next[a][in_slot] = Some(offset + from);
        // and t(ê) takes over the incoming edge of the end vertex
        let b = completed
            .graph()
            .target(pair.end, -x)
            .expect("end has an incoming edge");
        next[offset + to][in_slot] = Some(b);
        next[b][out_slot] = Some(offset + to);
    }
    let graph = FoldedGraph::from_parts(rank, h1.graph().base(), next);
    let cover = CoverGraph::new(graph)?;
    Ok(Delta {
        cover,
        core_vertices: inner,
        pairs,
        gamma_k,
        removed_edge_distance: distances.into_iter().min(),
        params,
    })
}

/// Breadth-first distance from `from` to `to` avoiding the `x`-edge
/// `from -> to`.
fn distance_without(k: &FoldedGraph, from: usize, x: Letter, to: usize) -> usize {
    let skip = slot(x);
    let mut dist = vec![usize::MAX; k.num_vertices()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for (s, t) in k.rows()[v].iter().enumerate() {
            let Some(w) = *t else { continue };
            if (v == from && s == skip && w == to) || (v == to && s == skip ^ 1 && w == from) {
                continue;
            }
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist[to]
}

/// Outcome of the three short-loop checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub core_embeds: bool,
    pub circuits_in_core: bool,
    pub paths_in_core: bool,
    pub paths_examined: u64,
    pub counterexample: Option<String>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.core_embeds && self.circuits_in_core && self.paths_in_core
    }
}

/// Checks, by exhaustive enumeration of reduced edge paths of length at
/// most `c`, that (1) the core embeds in `delta` from the basepoint, (2)
/// every closed reduced path is, after cyclic reduction, made of core
/// edges, and (3) every reduced path between core vertices is made of core
/// edges. `delta` need not be folded.
pub fn verify_witness_properties(delta: &LabeledGraph, core: &CoreGraph, c: usize) -> WitnessReport {
    let mut report = WitnessReport {
        core_embeds: false,
        circuits_in_core: false,
        paths_in_core: false,
        paths_examined: 0,
        counterexample: None,
    };
    let Some((in_core_vertex, in_core_edge)) = embed(delta, core) else {
        report.counterexample = Some("core does not embed".into());
        return report;
    };
    report.core_embeds = true;
    let inc = delta.incidence();
    let n = delta.num_vertices;

    // (2): closed reduced paths; each search is confined to the ball that
    // can still be left and re-entered within the length budget
    let mut circuits_ok = true;
    let mut dist = vec![usize::MAX; n];
    'starts: for v in 0..n {
        let ball = bfs_ball(&inc, v, c / 2 + 1, &mut dist);
        let mut stack: Vec<(usize, Vec<usize>, Vec<bool>)> = vec![(v, Vec::new(), Vec::new())];
        while let Some((x, edges, fwd)) = stack.pop() {
            let len = edges.len();
            if len > 0 && x == v {
                report.paths_examined += 1;
                let start = cyclic_start(&edges, &fwd);
                if !edges[start..len - start].iter().all(|&e| in_core_edge[e]) {
                    circuits_ok = false;
                    report.counterexample = Some(format!("closed path at {v} through edges {edges:?} leaves the core"));
                    break 'starts;
                }
            }
            if len == c {
                continue;
            }
            for h in &inc[x] {
                if let (Some(&le), Some(&lf)) = (edges.last(), fwd.last()) {
                    if le == h.edge && lf != h.forward {
                        continue;
                    }
                }
                if dist[h.to] == usize::MAX || dist[h.to] > c - len - 1 {
                    continue;
                }
                let mut e2 = edges.clone();
                e2.push(h.edge);
                let mut f2 = fwd.clone();
                f2.push(h.forward);
                stack.push((h.to, e2, f2));
            }
        }
        for &b in &ball {
            dist[b] = usize::MAX;
        }
    }
    report.circuits_in_core = circuits_ok;
    if !circuits_ok {
        return report;
    }

    // (3): reduced paths between core vertices; once a path leaves the core
    // it is only followed while a core vertex is still within reach
    let to_core = multi_source_bfs(&inc, &in_core_vertex);
    let mut paths_ok = true;
    'cores: for v in (0..n).filter(|&v| in_core_vertex[v]) {
        // (vertex, last half-edge, length, left the core)
        let mut stack: Vec<(usize, Option<(usize, bool)>, usize, bool)> = vec![(v, None, 0, false)];
        while let Some((x, last, len, left)) = stack.pop() {
            if len > 0 && in_core_vertex[x] {
                report.paths_examined += 1;
                if left {
                    paths_ok = false;
                    report.counterexample = Some(format!(
                        "reduced path of length {len} from core vertex {v} to core vertex {x} leaves the core"
                    ));
                    break 'cores;
                }
            }
            if len == c {
                continue;
            }
            for h in &inc[x] {
                if let Some((le, lf)) = last {
                    if le == h.edge && lf != h.forward {
                        continue;
                    }
                }
                let left2 = left || !in_core_edge[h.edge];
                if left2 && to_core[h.to] > c - len - 1 {
                    continue;
                }
                stack.push((h.to, Some((h.edge, h.forward)), len + 1, left2));
            }
        }
    }
    report.paths_in_core = paths_ok;
    report
}

/// Maps the core into `delta` from the basepoints by following labels.
/// Returns the vertex and edge images as indicator vectors when the map is
/// injective on vertices and edges.
fn embed(delta: &LabeledGraph, core: &CoreGraph) -> Option<(Vec<bool>, Vec<bool>)> {
    let g = core.graph();
    let inc = delta.incidence();
    let mut phi = vec![usize::MAX; g.num_vertices()];
    phi[g.base()] = delta.basepoint.unwrap_or(0);
    let mut queue = VecDeque::from([g.base()]);
    let mut vertex_hit = vec![false; delta.num_vertices];
    let mut edge_hit = vec![false; delta.edges.len()];
    vertex_hit[phi[g.base()]] = true;
    let mut edge_count = 0;
    while let Some(v) = queue.pop_front() {
        for s in 0..2 * g.rank() {
            let Some(w) = g.rows()[v][s] else { continue };
            let l = slot_letter(s);
            let h = inc[phi[v]].iter().find(|h| delta.letter(h) == l)?;
            if phi[w] == usize::MAX {
                if vertex_hit[h.to] {
                    return None;
                }
                phi[w] = h.to;
                vertex_hit[h.to] = true;
                queue.push_back(w);
            } else if phi[w] != h.to {
                return None;
            }
            if l > 0 {
                if edge_hit[h.edge] {
                    return None;
                }
                edge_hit[h.edge] = true;
                edge_count += 1;
            }
        }
    }
    (edge_count == g.num_edges()).then_some((vertex_hit, edge_hit))
}

/// Number of leading half-edges cancelled against trailing ones when the
/// closed path is cyclically reduced.
fn cyclic_start(edges: &[usize], fwd: &[bool]) -> usize {
    let len = edges.len();
    let mut k = 0;
    while 2 * k + 1 < len && edges[k] == edges[len - 1 - k] && fwd[k] != fwd[len - 1 - k] {
        k += 1;
    }
    k
}

fn bfs_ball(inc: &[Vec<HalfEdge>], root: usize, radius: usize, dist: &mut [usize]) -> Vec<usize> {
    dist[root] = 0;
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        if dist[x] == radius {
            continue;
        }
        for h in &inc[x] {
            if dist[h.to] == usize::MAX {
                dist[h.to] = dist[x] + 1;
                order.push(h.to);
            }
        }
    }
    order
}

fn multi_source_bfs(inc: &[Vec<HalfEdge>], sources: &[bool]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; inc.len()];
    let mut queue = VecDeque::new();
    for (v, &s) in sources.iter().enumerate() {
        if s {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(x) = queue.pop_front() {
        for h in &inc[x] {
            if dist[h.to] == usize::MAX {
                dist[h.to] = dist[x] + 1;
                queue.push_back(h.to);
            }
        }
    }
    dist
}

/// Result of the exhaustive coset scan over a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetScan {
    pub index: usize,
    pub cosets_checked: usize,
    /// Cosets `g` for which every generator `h` of `H2` has `g·h·g⁻¹ ∈ D`.
    pub failures: Vec<usize>,
    pub h1_contained: bool,
}

impl CosetScan {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.h1_contained
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConSeparation {
    /// `g⁻¹·H2·g ≤ H1`, checked generator by generator.
    Conjugator {
        g: Word,
        verified: bool,
    },
    Witness {
        delta: Box<Delta>,
        scan: CosetScan,
    },
}

impl ConSeparation {
    pub fn is_verified(&self) -> bool {
        match self {
            ConSeparation::Conjugator { verified, .. } => *verified,
            ConSeparation::Witness { scan, .. } => scan.passed(),
        }
    }
}

/// Either conjugates `H2` into `H1`, or builds a finite-index `D ≥ H1`
/// containing no conjugate of `H2`.
pub fn con_separate(h1: &CoreGraph, h2: &CoreGraph) -> Result<ConSeparation, Error> {
    con_separate_with_bound(h1, h2, None)
}

/// As [`con_separate`], building the witness for length bound `c` when it
/// is given. A bound below the longest generator of `H2` is rejected.
pub fn con_separate_with_bound(h1: &CoreGraph, h2: &CoreGraph, c: Option<usize>) -> Result<ConSeparation, Error> {
    if h2.generators().is_empty() {
        return Err(AutomataError::TrivialH2.into());
    }
    let longest = h2.max_generator_length();
    if let Some(c) = c.filter(|&c| c < longest) {
        return Err(Error::Usage(format!(
            "length bound {c} is below the longest generator length {longest}"
        )));
    }
    if let Some(g) = h2.conjugate_into(h1)? {
        let verified = h2.generators().iter().all(|x| h1.contains(&x.conjugate_by(&g)));
        return Ok(ConSeparation::Conjugator { g, verified });
    }
    let c = c.unwrap_or(longest);
    let delta = build_delta(h1, WitnessParams { c })?;
    let scan = coset_scan(&delta.cover, h1, h2);
    Ok(ConSeparation::Witness {
        delta: Box::new(delta),
        scan,
    })
}

/// For every coset representative `g` of `D`, looks for a generator `h` of
/// `H2` with `g·h·g⁻¹ ∉ D`.
pub fn coset_scan(d: &CoverGraph, h1: &CoreGraph, h2: &CoreGraph) -> CosetScan {
    let reps = d.transversal();
    let failures = reps
        .iter()
        .enumerate()
        .filter(|(_, g)| h2.generators().iter().all(|h| d.contains(&(&(*g * h) * &g.inverse()))))
        .map(|(v, _)| v)
        .collect();
    CosetScan {
        index: d.index(),
        cosets_checked: reps.len(),
        failures,
        h1_contained: h1.generators().iter().all(|h| d.contains(h)),
    }
}

/// Permutation images of the generators of `H1` and `H2` acting on the
/// cosets of `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteQuotient {
    pub table: CosetTable,
    pub h1_images: Vec<Vec<usize>>,
    pub h2_images: Vec<Vec<usize>>,
    pub h1_fixes_base: bool,
}

impl FiniteQuotient {
    pub fn degree(&self) -> usize {
        self.table.index
    }
}

pub fn finite_quotient(d: &CoverGraph, h1: &CoreGraph, h2: &CoreGraph) -> FiniteQuotient {
    let table = d.coset_table();
    let image = |w: &Word| (0..table.index).map(|v| table.act(v, w)).collect::<Vec<_>>();
    let h1_images: Vec<Vec<usize>> = h1.generators().iter().map(image).collect();
    let h2_images = h2.generators().iter().map(image).collect();
    let h1_fixes_base = h1_images.iter().all(|p| p[table.base] == table.base);
    FiniteQuotient {
        table,
        h1_images,
        h2_images,
        h1_fixes_base,
    }
}

/// The finite-index intersection of several witnesses, by iterated fiber
/// product.
pub fn push_up(witnesses: &[CoverGraph]) -> Result<CoverGraph, AutomataError> {
    let (first, rest) = witnesses
        .split_first()
        .ok_or_else(|| AutomataError::InvalidGraph("no witnesses given".into()))?;
    let mut acc = first.graph().clone();
    for w in rest {
        acc = product_component(&acc, w.graph())?;
    }
    CoverGraph::new(acc.canonical())
}

/// Two-sided verdict: either the subgroups are conjugate, or one of them
/// is con-separated from the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScsVerdict {
    /// `g⁻¹·H1·g = H2`, with both inclusions checked.
    Conjugate { g: Word, verified: bool },
    Separated {
        direction: Direction,
        result: ConSeparation,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// A witness containing `H1` and no conjugate of `H2`.
    H1FromH2,
    /// A witness containing `H2` and no conjugate of `H1`.
    H2FromH1,
}

impl ScsVerdict {
    pub fn is_verified(&self) -> bool {
        match self {
            ScsVerdict::Conjugate { verified, .. } => *verified,
            ScsVerdict::Separated { result, .. } => {
                result.is_verified() && matches!(result, ConSeparation::Witness { .. })
            }
        }
    }
}

pub fn scs(h1: &CoreGraph, h2: &CoreGraph) -> Result<ScsVerdict, Error> {
    let forward = h1.conjugate_into(h2)?;
    let backward = h2.conjugate_into(h1)?;
    if let (Some(g), Some(_)) = (&forward, &backward) {
        let into = h1.generators().iter().all(|x| h2.contains(&x.conjugate_by(g)));
        let back = h2
            .generators()
            .iter()
            .all(|x| h1.contains(&x.conjugate_by(&g.inverse())));
        return Ok(ScsVerdict::Conjugate {
            g: g.clone(),
            verified: into && back,
        });
    }
    if backward.is_none() {
        let result = con_separate(h1, h2)?;
        Ok(ScsVerdict::Separated {
            direction: Direction::H1FromH2,
            result,
        })
    } else {
        let result = con_separate(h2, h1)?;
        Ok(ScsVerdict::Separated {
            direction: Direction::H2FromH1,
            result,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;

    fn core(rank: usize, gens: &str) -> CoreGraph {
        let a = Alphabet::new(rank).unwrap();
        CoreGraph::build(a, &a.parse_generators(gens).unwrap())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn delta_of_free_group_is_rose() {
        let d = build_delta(&core(2, "a,b"), WitnessParams { c: 3 }).unwrap();
        assert_eq!(d.index(), 1);
        assert!(d.pairs.is_empty());
    }

    #[test]
    fn delta_of_cyclic_subgroup() {
        let h = core(2, "a");
        let d = build_delta(&h, WitnessParams { c: 2 }).unwrap();
        assert!(d.cover.contains(&w("a")));
        assert!(d.distance_ok());
        assert_eq!(d.index(), 1 + d.gamma_k.cover.index());
        let r = verify_witness_properties(&d.cover.to_labeled(), &h, 2);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn delta_index_matches_coset_table() {
        let h = core(2, "aa,b");
        let d = build_delta(&h, WitnessParams { c: 4 }).unwrap();
        let expected = h.graph().num_vertices() + d.pairs.len() * d.gamma_k.cover.index();
        assert_eq!(d.cover.coset_table().index, expected);
        for g in h.generators() {
            assert!(d.cover.contains(g));
        }
    }

    #[test]
    fn rose_against_itself_passes() {
        let h = core(2, "a,b");
        let r = verify_witness_properties(&LabeledGraph::rose(2), &h, 5);
        assert!(r.passed());
    }

    #[test]
    fn extra_loop_is_caught() {
        let h = core(2, "a");
        let d = build_delta(&h, WitnessParams { c: 2 }).unwrap();
        let mut g = d.cover.to_labeled();
        // vertex 1 is i(ê) of the single glued copy
        g.add_edge(1, 1, 1);
        let r = verify_witness_properties(&g, &h, 2);
        assert!(r.core_embeds);
        assert!(!r.circuits_in_core);
    }

    #[test]
    fn con_separate_examples() {
        let r = con_separate(&core(2, "a"), &core(2, "b")).unwrap();
        let ConSeparation::Witness { scan, .. } = &r else {
            panic!("expected a witness")
        };
        assert!(scan.passed());

        let r = con_separate(&core(2, "ab"), &core(2, "ba")).unwrap();
        assert_eq!(
            r,
            ConSeparation::Conjugator {
                g: w("A"),
                verified: true
            }
        );

        let r = con_separate(&core(2, "aa,b"), &core(2, "aa")).unwrap();
        assert_eq!(
            r,
            ConSeparation::Conjugator {
                g: Word::identity(),
                verified: true
            }
        );

        let err = con_separate(&core(2, "a"), &core(2, "")).unwrap_err();
        assert!(matches!(err, Error::Automata(AutomataError::TrivialH2)));
    }

    #[test]
    fn finite_quotient_examples() {
        let rose = CoverGraph::rose(2);
        let q = finite_quotient(&rose, &core(2, "a"), &core(2, "b"));
        assert_eq!(q.degree(), 1);
        assert!(q.h1_fixes_base);

        let mut lg = LabeledGraph::new(2, 2).with_basepoint(0);
        lg.add_edge(0, 0, 1);
        lg.add_edge(1, 1, 1);
        lg.add_edge(0, 1, 2);
        lg.add_edge(1, 0, 2);
        let d = CoverGraph::from_labeled(&lg).unwrap();
        let q = finite_quotient(&d, &core(2, "a"), &core(2, "b"));
        assert_eq!(q.h1_images, vec![vec![0, 1]]);
        assert_eq!(q.h2_images, vec![vec![1, 0]]);

        let ConSeparation::Witness { delta, .. } = con_separate(&core(2, "a"), &core(2, "b")).unwrap() else {
            panic!("expected a witness")
        };
        let q = finite_quotient(&delta.cover, &core(2, "a"), &core(2, "b"));
        assert_eq!(q.degree(), delta.cover.graph().num_vertices());
    }

    #[test]
    fn push_up_examples() {
        let ConSeparation::Witness { delta, .. } = con_separate(&core(2, "a"), &core(2, "b")).unwrap() else {
            panic!("expected a witness")
        };
        let d = delta.cover.clone();
        assert_eq!(
            push_up(std::slice::from_ref(&d)).unwrap().graph(),
            &d.graph().canonical()
        );
        let both = push_up(&[CoverGraph::rose(2), d.clone()]).unwrap();
        assert_eq!(both.index(), d.index());
    }

    #[test]
    fn scs_examples() {
        let v = scs(&core(2, "a"), &core(2, "Bab")).unwrap();
        assert_eq!(
            v,
            ScsVerdict::Conjugate {
                g: w("b"),
                verified: true
            }
        );
        let v = scs(&core(2, "a"), &core(2, "b")).unwrap();
        assert!(matches!(v, ScsVerdict::Separated { .. }));
        assert!(v.is_verified());
        let v = scs(&core(2, "ab,Ba"), &core(2, "ab,Ba")).unwrap();
        assert_eq!(
            v,
            ScsVerdict::Conjugate {
                g: Word::identity(),
                verified: true
            }
        );
    }
}
