//! Girth, mod-2 homology covers and girth amplification.
//!
//! The full mod-2 homology cover has `2^rank` sheets, which is out of reach
//! after a couple of rounds. Amplification therefore uses quotients of it:
//! a `Z/2^k` voltage cover defined by `k` edge sets, chosen so that every
//! shortest circuit meets one of them an odd number of times. Such a circuit
//! does not lift to a closed path, and every shorter one already had no
//! closed lift, so the girth goes up by at least one each round.

use std::collections::VecDeque;
use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::automata::{CoverGraph, FoldedGraph, LabeledGraph};
use crate::covers::multigraph::{Cover, Multigraph};
use crate::error::CoverError;

/// Largest number of voltage functionals accepted in one cover.
const MAX_FUNCTIONALS: usize = 24;
const SEED: u64 = 0x5eed_c0de;
const RESTARTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn exceeds(self, m: usize) -> bool {
        match self {
            Girth::Finite(g) => g > m,
            Girth::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Length of a shortest circuit without backtracking.
pub fn girth(g: &Multigraph) -> Girth {
    let adj = g.adjacency();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; g.vertices];
    let mut parent = vec![usize::MAX; g.vertices];
    let mut touched = Vec::new();
    for root in 0..g.vertices {
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
        dist[root] = 0;
        parent[root] = usize::MAX;
        touched.push(root);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for &(e, y) in &adj[x] {
                if e == parent[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = e;
                    touched.push(y);
                    queue.push_back(y);
                } else {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Cover with vertex set `V × (Z/2)^k` in which edge `e` shifts the sheet
/// by the bit vector recording which of the `k` edge sets contain `e`.
/// Returns the component of `(0, 0)`.
pub fn voltage_cover(g: &Multigraph, functionals: &[Vec<bool>]) -> Result<Cover, CoverError> {
    let k = functionals.len();
    if k > MAX_FUNCTIONALS {
        return Err(CoverError::Invalid(format!(
            "{k} functionals exceed the limit of {MAX_FUNCTIONALS}"
        )));
    }
    let voltage: Vec<usize> = (0..g.edges.len())
        .map(|e| {
            functionals
                .iter()
                .enumerate()
                .filter(|(_, f)| f[e])
                .fold(0usize, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let sheets = 1usize << k;
    let id = |v: usize, s: usize| v * sheets + s;
    let mut full = Multigraph::new(g.vertices * sheets);
    let mut edge_map = Vec::with_capacity(g.edges.len() * sheets);
    for s in 0..sheets {
        for (e, &(t, h)) in g.edges.iter().enumerate() {
            full.add_edge(id(t, s), id(h, s ^ voltage[e]));
            edge_map.push(e);
        }
    }
    if g.vertices == 0 {
        return Ok(Cover::identity(g));
    }
    let keep = full.component_of(0);
    let (graph, kept) = full.induced(&keep);
    Ok(Cover {
        graph,
        vertex_map: keep.iter().map(|&v| v / sheets).collect(),
        edge_map: kept.iter().map(|&e| edge_map[e]).collect(),
    })
}

/// The cover belonging to the kernel of `π₁(g) → H₁(g; Z/2)`: one voltage
/// functional per edge outside a spanning tree. Requires `g` connected.
pub fn homology_cover(g: &Multigraph) -> Result<Cover, CoverError> {
    if !g.is_connected() {
        return Err(CoverError::NotConnected);
    }
    let tree = g.spanning_tree();
    let functionals: Vec<Vec<bool>> = (0..g.edges.len())
        .filter(|&e| !tree[e])
        .map(|e| (0..g.edges.len()).map(|f| f == e).collect())
        .collect();
    voltage_cover(g, &functionals)
}

/// Every circuit of length exactly `len`, as sorted edge-id lists. `len`
/// must be the girth of `g`, which makes every candidate below a simple
/// circuit.
pub fn shortest_circuits(g: &Multigraph, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len == 1 {
        for (e, &(t, h)) in g.edges.iter().enumerate() {
            if t == h {
                out.push(vec![e]);
            }
        }
        return out;
    }
    let adj = g.adjacency();
    let half = len / 2;
    let odd = len % 2 == 1;
    for root in 0..g.vertices {
        // non-backtracking paths of length `half` through vertices above root
        let mut paths: Vec<(usize, Vec<usize>)> = vec![(root, Vec::new())];
        for _ in 0..half {
            let mut grown = Vec::new();
            for (end, edges) in &paths {
                for &(e, y) in &adj[*end] {
                    if y <= root || edges.last() == Some(&e) {
                        continue;
                    }
                    let mut next = edges.clone();
                    next.push(e);
                    grown.push((y, next));
                }
            }
            paths = grown;
        }
        let mut by_end: Vec<Vec<usize>> = vec![Vec::new(); g.vertices];
        for (i, (end, _)) in paths.iter().enumerate() {
            by_end[*end].push(i);
        }
        for (x, p) in &paths {
            if odd {
                for &(e, y) in &adj[*x] {
                    if p.contains(&e) {
                        continue;
                    }
                    for &j in &by_end[y] {
                        let q = &paths[j].1;
                        if p[0] < q[0] && !q.contains(&e) {
                            out.push(circuit(p, q, Some(e)));
                        }
                    }
                }
            } else {
                for &j in &by_end[*x] {
                    let q = &paths[j].1;
                    if p[0] < q[0] {
                        out.push(circuit(p, q, None));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn circuit(p: &[usize], q: &[usize], bridge: Option<usize>) -> Vec<usize> {
    let mut c: Vec<usize> = p.iter().chain(q).copied().chain(bridge).collect();
    c.sort_unstable();
    c
}

/// Picks edge sets until every circuit meets one of them oddly. Each new
/// set is required to catch a circuit that all earlier sets missed, which
/// keeps the sets independent on the cycle space and the cover connected.
pub fn hitting_functionals(edges: usize, circuits: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Vec<Vec<bool>> {
    let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); edges];
    for (i, c) in circuits.iter().enumerate() {
        for &e in c {
            on_edge[e].push(i);
        }
    }
    let mut remaining = vec![true; circuits.len()];
    let mut left = circuits.len();
    let mut out = Vec::new();
    while left > 0 {
        let mut best: Option<(usize, Vec<bool>, Vec<bool>)> = None;
        for _ in 0..RESTARTS {
            let (set, parity, hits) = climb(edges, circuits, &on_edge, &remaining, rng);
            if best.as_ref().is_none_or(|b| hits > b.0) {
                best = Some((hits, set, parity));
            }
        }
        let (mut hits, mut set, mut parity) = best.expect("at least one restart");
        if hits == 0 {
            // a single edge of a missed circuit always catches it
            let c = remaining.iter().position(|&r| r).expect("a circuit is left");
            set = vec![false; edges];
            set[circuits[c][0]] = true;
            parity = circuits
                .iter()
                .map(|c2| c2.iter().filter(|&&e| set[e]).count() % 2 == 1)
                .collect();
            hits = 1;
        }
        debug_assert!(hits > 0);
        for (i, r) in remaining.iter_mut().enumerate() {
            if *r && parity[i] {
                *r = false;
                left -= 1;
            }
        }
        out.push(set);
    }
    out
}

/// Random start followed by single-edge flips while some flip catches more
/// of the remaining circuits.
fn climb(
    edges: usize,
    circuits: &[Vec<usize>],
    on_edge: &[Vec<usize>],
    remaining: &[bool],
    rng: &mut ChaCha8Rng,
) -> (Vec<bool>, Vec<bool>, usize) {
    let mut set: Vec<bool> = (0..edges).map(|_| rng.random_bool(0.5)).collect();
    let mut parity: Vec<bool> = circuits
        .iter()
        .map(|c| c.iter().filter(|&&e| set[e]).count() % 2 == 1)
        .collect();
    loop {
        let mut best_gain = 0i64;
        let mut best_edge = None;
        for (e, circuits) in on_edge.iter().enumerate() {
            let gain: i64 = circuits
                .iter()
                .filter(|&&c| remaining[c])
                .map(|&c| if parity[c] { -1 } else { 1 })
                .sum();
            if gain > best_gain {
                best_gain = gain;
                best_edge = Some(e);
            }
        }
        let Some(e) = best_edge else { break };
        set[e] = !set[e];
        for &c in &on_edge[e] {
            parity[c] = !parity[c];
        }
    }
    let hits = (0..circuits.len()).filter(|&c| remaining[c] && parity[c]).count();
    (set, parity, hits)
}

/// One round of amplification as recorded in a [`GirthCover`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmplifyStage {
    pub vertices: usize,
    pub edges: usize,
    pub girth: Girth,
    pub functionals: usize,
    pub circuits: usize,
}

/// Stepwise girth amplification; each [`step`](Self::step) replaces the
/// current cover by a voltage cover whose girth is strictly larger.
pub struct GirthAmplifier {
    base: Multigraph,
    current: Cover,
    girth: Girth,
    rng: ChaCha8Rng,
    stages: Vec<AmplifyStage>,
}

impl GirthAmplifier {
    pub fn new(base: &Multigraph) -> Result<Self, CoverError> {
        base.validate()?;
        if !base.is_connected() {
            return Err(CoverError::NotConnected);
        }
        let girth = girth(base);
        Ok(GirthAmplifier {
            base: base.clone(),
            current: Cover::identity(base),
            girth,
            rng: ChaCha8Rng::seed_from_u64(SEED),
            stages: vec![AmplifyStage {
                vertices: base.vertices,
                edges: base.edges.len(),
                girth,
                functionals: 0,
                circuits: 0,
            }],
        })
    }

    pub fn current(&self) -> &Cover {
        &self.current
    }

    pub fn girth(&self) -> Girth {
        self.girth
    }

    pub fn base(&self) -> &Multigraph {
        &self.base
    }

    pub fn stages(&self) -> &[AmplifyStage] {
        &self.stages
    }

    /// Does nothing on forests.
    pub fn step(&mut self) -> Result<&Cover, CoverError> {
        let Girth::Finite(len) = self.girth else {
            return Ok(&self.current);
        };
        let g = &self.current.graph;
        let circuits = shortest_circuits(g, len);
        let functionals = hitting_functionals(g.edges.len(), &circuits, &mut self.rng);
        let next = voltage_cover(g, &functionals)?.then(&self.current);
        let new_girth = girth(&next.graph);
        if new_girth <= self.girth {
            return Err(CoverError::Invalid(format!(
                "girth did not increase: {} then {new_girth}",
                self.girth
            )));
        }
        self.stages.push(AmplifyStage {
            vertices: next.graph.vertices,
            edges: next.graph.edges.len(),
            girth: new_girth,
            functionals: functionals.len(),
            circuits: circuits.len(),
        });
        self.current = next;
        self.girth = new_girth;
        Ok(&self.current)
    }

    pub fn into_result(self) -> GirthAmplification {
        GirthAmplification {
            cover: self.current,
            girth: self.girth,
            stages: self.stages,
        }
    }
}

/// A connected cover of the input graph with its verified girth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GirthAmplification {
    pub cover: Cover,
    pub girth: Girth,
    pub stages: Vec<AmplifyStage>,
}

/// Finite connected cover of `g` with girth greater than `m`.
pub fn girth_amplify(g: &Multigraph, m: usize) -> Result<GirthAmplification, CoverError> {
    let mut amp = GirthAmplifier::new(g)?;
    while !amp.girth().exceeds(m) {
        amp.step()?;
    }
    Ok(amp.into_result())
}

/// A cover of the rose, as a labeled folded graph, with girth at least `c + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirthCover {
    pub cover: CoverGraph,
    pub girth: Girth,
    pub stages: Vec<AmplifyStage>,
}

/// Reads a cover of the `rank`-petal rose as a labeled graph: petal `i`
/// carries generator `i + 1`, and orientation is inherited.
pub fn rose_cover_graph(rank: usize, cover: &Cover) -> Result<CoverGraph, CoverError> {
    let mut lg = LabeledGraph::new(rank, cover.graph.vertices).with_basepoint(0);
    for (e, &(t, h)) in cover.graph.edges.iter().enumerate() {
        lg.add_edge(t, h, cover.edge_map[e] as u32 + 1);
    }
    let folded = FoldedGraph::from_labeled(&lg).map_err(|e| CoverError::Invalid(e.to_string()))?;
    CoverGraph::new(folded).map_err(|e| CoverError::Invalid(e.to_string()))
}

/// Finite cover of the `rank`-petal rose of girth greater than `c`: it
/// contains no closed path reading a nontrivial word of length at most `c`.
pub fn rose_girth_cover(rank: usize, c: usize) -> Result<GirthCover, CoverError> {
    if rank == 0 {
        return Err(CoverError::Invalid("rank must be positive".into()));
    }
    let amp = girth_amplify(&Multigraph::rose(rank), c)?;
    Ok(GirthCover {
        cover: rose_cover_graph(rank, &amp.cover)?,
        girth: amp.girth,
        stages: amp.stages,
    })
}
