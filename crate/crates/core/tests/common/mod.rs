//! Brute-force reference implementations used to check the library.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

/// `a`..`z` are generators 1..26, capitals their inverses.
pub fn letters(s: &str) -> Vec<i32> {
    s.chars()
        .map(|c| {
            if c.is_ascii_lowercase() {
                c as i32 - 'a' as i32 + 1
            } else {
                -(c as i32 - 'A' as i32 + 1)
            }
        })
        .collect()
}

pub fn reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|x| -x).collect()
}

pub fn mul(u: &[i32], v: &[i32]) -> Vec<i32> {
    let mut w = u.to_vec();
    w.extend_from_slice(v);
    reduce(&w)
}

/// All reduced words of length at most `len` over `rank` generators.
pub fn reduced_words(rank: i32, len: usize) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 1..=rank {
                for x in [g, -g] {
                    if w.last() != Some(&-x) {
                        let mut v: Vec<i32> = w.clone();
                        v.push(x);
                        next.push(v);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Elements of the subgroup generated by `gens` reachable by multiplying
/// by generators and their inverses while never exceeding length `bound`.
pub fn bounded_closure(gens: &[Vec<i32>], bound: usize) -> HashSet<Vec<i32>> {
    let mut steps: Vec<Vec<i32>> = Vec::new();
    for g in gens {
        steps.push(reduce(g));
        steps.push(inverse(&reduce(g)));
    }
    let mut seen = HashSet::from([Vec::new()]);
    let mut queue = VecDeque::from([Vec::new()]);
    while let Some(w) = queue.pop_front() {
        for s in &steps {
            let v = mul(&w, s);
            if v.len() <= bound && seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Folded graph built naively: a petal per generator, then repeated
/// identification of equally labeled edges at a vertex.
#[derive(Debug, Clone)]
pub struct Automaton {
    pub vertices: usize,
    /// `(tail, positive label, head)`.
    pub edges: Vec<(usize, i32, usize)>,
    pub base: usize,
}

impl Automaton {
    pub fn fold(gens: &[Vec<i32>]) -> Automaton {
        let mut vertices = 1;
        let mut edges = Vec::new();
        for g in gens {
            let g = reduce(g);
            if g.is_empty() {
                continue;
            }
            let mut at = 0;
            for (i, &x) in g.iter().enumerate() {
                let to = if i + 1 == g.len() {
                    0
                } else {
                    vertices += 1;
                    vertices - 1
                };
                if x > 0 {
                    edges.push((at, x, to));
                } else {
                    edges.push((to, -x, at));
                }
                at = to;
            }
        }
        let mut a = Automaton {
            vertices,
            edges,
            base: 0,
        };
        a.fold_all();
        a
    }

    fn fold_all(&mut self) {
        loop {
            let mut merge = None;
            'search: for i in 0..self.edges.len() {
                for j in i + 1..self.edges.len() {
                    let (t1, l1, h1) = self.edges[i];
                    let (t2, l2, h2) = self.edges[j];
                    if l1 != l2 {
                        continue;
                    }
                    if t1 == t2 && h1 == h2 {
                        merge = Some((j, None));
                        break 'search;
                    }
                    if t1 == t2 {
                        merge = Some((j, Some((h1, h2))));
                        break 'search;
                    }
                    if h1 == h2 {
                        merge = Some((j, Some((t1, t2))));
                        break 'search;
                    }
                }
            }
            match merge {
                None => return,
                Some((dup, None)) => {
                    self.edges.remove(dup);
                }
                Some((_, Some((keep, gone)))) => {
                    let (keep, gone) = (keep.min(gone), keep.max(gone));
                    for e in &mut self.edges {
                        for v in [&mut e.0, &mut e.2] {
                            if *v == gone {
                                *v = keep;
                            }
                        }
                    }
                    if self.base == gone {
                        self.base = keep;
                    }
                }
            }
        }
    }

    pub fn step(&self, v: usize, x: i32) -> Option<usize> {
        self.edges.iter().find_map(|&(t, l, h)| {
            if x > 0 && t == v && l == x {
                Some(h)
            } else if x < 0 && h == v && l == -x {
                Some(t)
            } else {
                None
            }
        })
    }

    pub fn read(&self, v: usize, w: &[i32]) -> Option<usize> {
        w.iter().try_fold(v, |at, &x| self.step(at, x))
    }

    pub fn accepts(&self, w: &[i32]) -> bool {
        self.read(self.base, w) == Some(self.base)
    }

    fn used_vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|&(t, _, h)| [t, h]).collect();
        vs.push(self.base);
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn valency(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(t, _, h)| (t == v) as usize + (h == v) as usize)
            .sum()
    }

    /// Vertices of the cyclic core: repeatedly delete valency-1 vertices,
    /// the basepoint included.
    pub fn cyclic_core(&self) -> Vec<usize> {
        let mut g = self.clone();
        loop {
            let leaf = g.used_vertices().into_iter().find(|&v| g.valency(v) == 1);
            match leaf {
                Some(v) => g.edges.retain(|&(t, _, h)| t != v && h != v),
                None => break,
            }
        }
        let mut vs: Vec<usize> = g.edges.iter().flat_map(|&(t, _, h)| [t, h]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// A word labelling some path from the basepoint to `target`.
    pub fn path_to(&self, target: usize) -> Vec<i32> {
        let mut prev: HashMap<usize, (usize, i32)> = HashMap::new();
        let mut queue = VecDeque::from([self.base]);
        let mut seen = HashSet::from([self.base]);
        while let Some(v) = queue.pop_front() {
            if v == target {
                break;
            }
            for &(t, l, h) in &self.edges {
                for (from, x, to) in [(t, l, h), (h, -l, t)] {
                    if from == v && seen.insert(to) {
                        prev.insert(to, (v, x));
                        queue.push_back(to);
                    }
                }
            }
        }
        let mut w = Vec::new();
        let mut at = target;
        while at != self.base {
            let (p, x) = prev[&at];
            w.push(x);
            at = p;
        }
        w.reverse();
        w
    }
}

/// Some conjugate of `<h>` lies in `<k>`: exhausts every vertex of `k`'s
/// folded graph as the image of a cyclic-core vertex of `h`'s.
pub fn conjugate_into_exhaustive(h: &[Vec<i32>], k: &[Vec<i32>]) -> bool {
    let ah = Automaton::fold(h);
    let core = ah.cyclic_core();
    let Some(&s) = core.first() else {
        return true;
    };
    let p = ah.path_to(s);
    let moved: Vec<Vec<i32>> = h.iter().map(|g| mul(&mul(&inverse(&p), g), &p)).collect();
    let ak = Automaton::fold(k);
    let mut candidates: Vec<usize> = ak.edges.iter().flat_map(|&(t, _, h)| [t, h]).collect();
    candidates.push(ak.base);
    candidates.sort_unstable();
    candidates.dedup();
    candidates
        .into_iter()
        .any(|t| moved.iter().all(|g| ak.read(t, g) == Some(t)))
}

/// Undirected multigraph adjacency as `(edge id, other end)` lists.
pub fn adjacency(vertices: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); vertices];
    for (i, &(t, h)) in edges.iter().enumerate() {
        // a loop is listed twice at its vertex
        adj[t].push((i, h));
        adj[h].push((i, t));
    }
    adj
}

/// Length of a shortest circuit of length at most `max`, or `None`.
/// Breadth-first search from every vertex, limited to radius `max / 2 + 1`.
pub fn girth_at_most(vertices: usize, edges: &[(usize, usize)], max: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for &(t, h) in edges {
        if t == h {
            return Some(1);
        }
    }
    let mut pairs = HashSet::new();
    for &(t, h) in edges {
        if !pairs.insert((t.min(h), t.max(h))) {
            best = Some(2);
        }
    }
    if best.is_some() {
        return best.filter(|&b| b <= max);
    }
    let adj = adjacency(vertices, edges);
    let radius = max / 2 + 1;
    let mut dist = vec![usize::MAX; vertices];
    let mut parent_edge = vec![usize::MAX; vertices];
    for root in 0..vertices {
        let mut touched = vec![root];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            if dist[x] >= radius {
                continue;
            }
            for &(e, y) in &adj[x] {
                if e == parent_edge[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent_edge[y] = e;
                    touched.push(y);
                    queue.push_back(y);
                } else {
                    let len = dist[x] + dist[y] + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
        for v in touched {
            dist[v] = usize::MAX;
            parent_edge[v] = usize::MAX;
        }
    }
    best.filter(|&b| b <= max)
}

pub fn connected(vertices: usize, edges: &[(usize, usize)]) -> bool {
    if vertices == 0 {
        return true;
    }
    let adj = adjacency(vertices, edges);
    let mut seen = vec![false; vertices];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &(_, y) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Connected after deleting `v` and its edges (vacuously true when only
/// `v` would remain).
pub fn connected_without(vertices: usize, edges: &[(usize, usize)], v: usize) -> bool {
    let keep: Vec<usize> = (0..vertices).filter(|&x| x != v).collect();
    let index: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let rest: Vec<(usize, usize)> = edges
        .iter()
        .filter(|&&(t, h)| t != v && h != v)
        .map(|&(t, h)| (index[&t], index[&h]))
        .collect();
    connected(keep.len(), &rest)
}

/// Simple connected graphs on `n` vertices with at most `max_edges`
/// edges, one per isomorphism class.
pub fn connected_graphs(n: usize, max_edges: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        if mask.count_ones() as usize > max_edges {
            continue;
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if !connected(n, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut es: Vec<(usize, usize)> =
                    edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                es.sort_unstable();
                es
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(edges);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// A labeled graph as plain `(tail, label, head)` triples, read with its own
/// transition lookup.
#[derive(Debug, Clone)]
pub struct Labeled {
    pub vertices: usize,
    pub edges: Vec<(usize, i32, usize)>,
    pub base: usize,
}

/// One direction of travel along an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Half {
    pub edge: usize,
    pub forward: bool,
    pub to: usize,
    pub letter: i32,
}

impl Labeled {
    pub fn from_graph(g: &foldcover::automata::LabeledGraph) -> Labeled {
        Labeled {
            vertices: g.num_vertices,
            edges: g.edges.iter().map(|e| (e.src, e.label as i32, e.dst)).collect(),
            base: g.basepoint.unwrap_or(0),
        }
    }

    pub fn halves(&self) -> Vec<Vec<Half>> {
        let mut out = vec![Vec::new(); self.vertices];
        for (i, &(t, l, h)) in self.edges.iter().enumerate() {
            out[t].push(Half {
                edge: i,
                forward: true,
                to: h,
                letter: l,
            });
            out[h].push(Half {
                edge: i,
                forward: false,
                to: t,
                letter: -l,
            });
        }
        out
    }

    /// Every label acts as a permutation: exactly one outgoing and one
    /// incoming edge per label at every vertex.
    pub fn is_permutation_cover(&self, rank: i32) -> bool {
        let mut out = vec![vec![0usize; rank as usize]; self.vertices];
        let mut inc = vec![vec![0usize; rank as usize]; self.vertices];
        for &(t, l, h) in &self.edges {
            if l < 1 || l > rank {
                return false;
            }
            out[t][l as usize - 1] += 1;
            inc[h][l as usize - 1] += 1;
        }
        out.iter().chain(inc.iter()).all(|r| r.iter().all(|&c| c == 1))
    }

    /// Transition table: `table[v][x]` is the end of the edge read from `v`
    /// with letter `x`.
    pub fn table(&self) -> Vec<HashMap<i32, usize>> {
        let mut out = vec![HashMap::new(); self.vertices];
        for &(t, l, h) in &self.edges {
            out[t].insert(l, h);
            out[h].insert(-l, t);
        }
        out
    }
}

impl Automaton {
    /// Repeatedly removes valency-1 vertices other than the basepoint.
    pub fn trimmed(&self) -> Automaton {
        let mut g = self.clone();
        loop {
            let leaf = g
                .used_vertices()
                .into_iter()
                .find(|&v| v != g.base && g.valency(v) == 1);
            match leaf {
                Some(v) => g.edges.retain(|&(t, _, h)| t != v && h != v),
                None => return g,
            }
        }
    }
}

/// Checks the three short-loop guarantees of a witness graph by brute
/// force over every reduced edge path of length at most `c`.
pub fn witness_oracle(delta: &Labeled, h1: &[Vec<i32>], c: usize) -> Result<u64, String> {
    let core = Automaton::fold(h1).trimmed();
    let halves = delta.halves();

    // the core maps into delta from the basepoints, injectively
    let mut phi: HashMap<usize, usize> = HashMap::from([(core.base, delta.base)]);
    let mut changed = true;
    while changed {
        changed = false;
        for &(t, l, h) in &core.edges {
            match (phi.get(&t).copied(), phi.get(&h).copied()) {
                (Some(pt), ph) => {
                    let found = halves[pt].iter().find(|x| x.letter == l).ok_or("missing edge")?;
                    match ph {
                        None => {
                            phi.insert(h, found.to);
                            changed = true;
                        }
                        Some(ph) if ph != found.to => return Err("core map is not a graph map".into()),
                        Some(_) => {}
                    }
                }
                (None, Some(ph)) => {
                    let found = halves[ph].iter().find(|x| x.letter == -l).ok_or("missing edge")?;
                    phi.insert(t, found.to);
                    changed = true;
                }
                (None, None) => {}
            }
        }
    }
    let mut core_edge = vec![false; delta.edges.len()];
    for &(t, l, _) in &core.edges {
        let e = halves[phi[&t]].iter().find(|x| x.letter == l).unwrap().edge;
        if core_edge[e] {
            return Err("core map is not injective on edges".into());
        }
        core_edge[e] = true;
    }
    let images: HashSet<usize> = phi.values().copied().collect();
    if images.len() != phi.len() {
        return Err("core map is not injective on vertices".into());
    }

    // every reduced path of length <= c from `start`, depth first
    let walk = |start: usize, visit: &mut dyn FnMut(&[Half]) -> Result<(), String>| -> Result<(), String> {
        let mut stack: Vec<Vec<Half>> = vec![Vec::new()];
        while let Some(path) = stack.pop() {
            visit(&path)?;
            if path.len() == c {
                continue;
            }
            let at = path.last().map_or(start, |h| h.to);
            for &h in &halves[at] {
                if let Some(last) = path.last() {
                    if last.edge == h.edge && last.forward != h.forward {
                        continue;
                    }
                }
                let mut next = path.clone();
                next.push(h);
                stack.push(next);
            }
        }
        Ok(())
    };

    let mut examined = 0u64;
    for v in 0..delta.vertices {
        walk(v, &mut |path| {
            let Some(last) = path.last() else { return Ok(()) };
            if last.to != v {
                return Ok(());
            }
            examined += 1;
            let (mut lo, mut hi) = (0, path.len());
            while hi - lo >= 2 && path[lo].edge == path[hi - 1].edge && path[lo].forward != path[hi - 1].forward {
                lo += 1;
                hi -= 1;
            }
            if path[lo..hi].iter().all(|h| core_edge[h.edge]) {
                Ok(())
            } else {
                Err(format!("closed path at {v} leaves the core"))
            }
        })?;
    }
    for &v in &images {
        walk(v, &mut |path| {
            let Some(last) = path.last() else { return Ok(()) };
            if !images.contains(&last.to) {
                return Ok(());
            }
            examined += 1;
            if path.iter().all(|h| core_edge[h.edge]) {
                Ok(())
            } else {
                Err(format!(
                    "path between core vertices {v} and {} leaves the core",
                    last.to
                ))
            }
        })?;
    }
    Ok(examined)
}

/// Checks a graph map with branched degrees directly: it is a graph map,
/// every target edge has the same number `k` of preimages, at every source
/// vertex each incident target edge end is covered `d` times, and the
/// degrees over each target vertex sum to `k`. Returns `k`.
pub fn branched_oracle(
    source: (usize, &[(usize, usize)]),
    target: (usize, &[(usize, usize)]),
    vertex_map: &[usize],
    edge_map: &[usize],
    degrees: &[usize],
) -> Result<usize, String> {
    let (sv, se) = source;
    let (tv, te) = target;
    if vertex_map.len() != sv || edge_map.len() != se.len() || degrees.len() != sv {
        return Err("map sizes do not match the source".into());
    }
    for (i, &(a, b)) in se.iter().enumerate() {
        let (x, y) = te[edge_map[i]];
        let (pa, pb) = (vertex_map[a], vertex_map[b]);
        if !((pa, pb) == (x, y) || (pa, pb) == (y, x)) {
            return Err(format!("source edge {i} is not mapped onto an edge"));
        }
    }
    if !connected(sv, se) {
        return Err("source is not connected".into());
    }
    let k = if te.is_empty() {
        (0..sv).filter(|&x| vertex_map[x] == 0).map(|x| degrees[x]).sum()
    } else {
        edge_map.iter().filter(|&&e| e == 0).count()
    };
    for e in 0..te.len() {
        let c = edge_map.iter().filter(|&&f| f == e).count();
        if c != k {
            return Err(format!("target edge {e} has {c} preimages, expected {k}"));
        }
    }
    for x in 0..sv {
        let p = vertex_map[x];
        for (e, &(a, b)) in te.iter().enumerate() {
            let ends_below = (a == p) as usize + (b == p) as usize;
            if ends_below == 0 {
                continue;
            }
            let ends_above: usize = se
                .iter()
                .enumerate()
                .filter(|&(i, _)| edge_map[i] == e)
                .map(|(_, &(s, t))| (s == x) as usize + (t == x) as usize)
                .sum();
            if ends_above != degrees[x] * ends_below {
                return Err(format!(
                    "vertex {x}: edge {e} covered {ends_above} times, expected {}",
                    degrees[x] * ends_below
                ));
            }
        }
    }
    for v in 0..tv {
        let s: usize = (0..sv).filter(|&x| vertex_map[x] == v).map(|x| degrees[x]).sum();
        if s != k {
            return Err(format!("degrees over vertex {v} sum to {s}, expected {k}"));
        }
    }
    Ok(k)
}
