//! The layered construction of a cover of `S` in which `A` lifts: surround
//! copies of `A` by the `B_i`, grow alternating layers of degree-`M` and
//! degree-`2M` pieces, and close up along a pattern of large girth.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use super::complex::{label_name, Decomposition, Inventory, Piece, PieceComplex, PieceKind, Slot, SlotRef};
use crate::covers::{girth_amplify, Girth, Multigraph};
use crate::error::AssemblyError;
use crate::surface::BranchingData;

/// Counts from the condition on boundaries, and the number of layers `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AssemblyParams {
    pub n: usize,
    pub m: u64,
    /// `(R_i, M)` slots on `B_i`.
    pub big_n: usize,
    /// `(R_i, 2M)` slots on `B_i`.
    pub n_prime: usize,
    /// `(R_j, 2M)` slots on `B_i` for each other label `j` of its region.
    pub n_double_prime: usize,
    pub t: usize,
}

impl AssemblyParams {
    pub fn validate(&self) -> Result<(), AssemblyError> {
        if self.m <= 1 {
            return Err(AssemblyError::Invalid(format!("M = {} must exceed 1", self.m)));
        }
        if self.t.is_multiple_of(2) {
            return Err(AssemblyError::Invalid(format!("T = {} must be odd", self.t)));
        }
        if self.n == 0 {
            return Err(AssemblyError::Invalid("n must be positive".into()));
        }
        Ok(())
    }

    pub fn target_girth(&self) -> usize {
        self.t + 1
    }
}

/// The covers used above the first layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopPieces {
    pub a_m: Option<BranchingData>,
    pub a_2m: Option<BranchingData>,
    /// Indexed by complement region.
    pub b_m: Vec<Option<BranchingData>>,
    pub b_2m: Vec<Option<BranchingData>>,
}

impl TopPieces {
    fn piece(
        &self,
        dec: &Decomposition,
        params: &AssemblyParams,
        a_side: bool,
        slot: Slot,
    ) -> Result<Piece, AssemblyError> {
        let region = if a_side { 0 } else { dec.region_of(slot.label) };
        let (kind, data) = match (a_side, slot.degree) {
            (true, d) if d == params.m => (PieceKind::AM, self.a_m.as_ref()),
            (true, d) if d == 2 * params.m => (PieceKind::A2M, self.a_2m.as_ref()),
            (false, d) if d == params.m => (PieceKind::BM, self.b_m.get(region - 1).and_then(Option::as_ref)),
            (false, d) if d == 2 * params.m => (PieceKind::B2M, self.b_2m.get(region - 1).and_then(Option::as_ref)),
            _ => {
                return Err(AssemblyError::SlotMismatch {
                    piece: "open slot".into(),
                    detail: format!(
                        "degree {} on {} is neither M nor 2M",
                        slot.degree,
                        label_name(slot.label)
                    ),
                })
            }
        };
        let data = data.ok_or_else(|| AssemblyError::SlotMismatch {
            piece: kind.to_string(),
            detail: format!(
                "no piece supplied to cover ({},{})",
                label_name(slot.label),
                slot.degree
            ),
        })?;
        let piece = Piece::from_data(kind.clone(), region, data, dec)?;
        let single = if slot.degree == params.m {
            params.m
        } else {
            2 * params.m
        };
        if let Some(s) = piece.slots.iter().find(|s| s.degree != single) {
            return Err(AssemblyError::SlotMismatch {
                piece: kind.to_string(),
                detail: format!("has a ({},{}) boundary", label_name(s.label), s.degree),
            });
        }
        let labels = dec.region_labels(region);
        let count = |l: usize| piece.slots.iter().filter(|s| s.label == l).count();
        if labels.iter().any(|&l| count(l) != count(labels[0])) {
            return Err(AssemblyError::SlotMismatch {
                piece: kind.to_string(),
                detail: "boundary counts differ between labels".into(),
            });
        }
        Ok(piece)
    }
}

fn check_independent(c: &PieceComplex, n: usize, stage: &str) -> Result<Inventory, AssemblyError> {
    let inv = c.inventory();
    if !super::complex::inventory_label_independent(&inv, n) {
        let detail = inv
            .iter()
            .map(|(&(l, d), &k)| format!("({},{}) x{k}", label_name(l), d))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(AssemblyError::SlotMismatch {
            piece: stage.into(),
            detail: format!("open slots depend on the label: {detail}"),
        });
    }
    Ok(inv)
}

/// `M` copies of `A`; copy `k` is glued along `R_i` to the `k`-th
/// `(R_i, 1)` slot of `B_i`, for every `i`.
pub fn build_s1(
    dec: &Decomposition,
    b: &[BranchingData],
    params: &AssemblyParams,
) -> Result<PieceComplex, AssemblyError> {
    dec.validate()?;
    params.validate()?;
    if params.n != dec.n || b.len() != dec.n {
        return Err(AssemblyError::Invalid(format!(
            "n = {}, decomposition has {} labels, {} pieces B_i supplied",
            params.n,
            dec.n,
            b.len()
        )));
    }
    let m = params.m;
    let mut c = PieceComplex::default();
    let a = Piece::from_data(PieceKind::A, 0, &BranchingData::identity(&dec.region_sig(0)), dec)?;
    let a_ids: Vec<usize> = (0..m).map(|_| c.add_piece(a.clone())).collect();

    let mut b_ids = Vec::with_capacity(dec.n);
    for (i, data) in b.iter().enumerate() {
        let region = dec.region_of(i);
        let piece = Piece::from_data(PieceKind::B(i), region, data, dec)?;
        let mut expected: BTreeMap<Slot, usize> = BTreeMap::new();
        let mut add = |label, degree, k| {
            if k > 0 {
                *expected.entry(Slot { label, degree }).or_default() += k;
            }
        };
        add(i, 1, m as usize);
        add(i, m, params.big_n);
        add(i, 2 * m, params.n_prime);
        for j in dec.region_labels(region) {
            if j != i {
                add(j, 2 * m, params.n_double_prime);
            }
        }
        let mut found: BTreeMap<Slot, usize> = BTreeMap::new();
        for s in &piece.slots {
            *found.entry(*s).or_default() += 1;
        }
        if found != expected {
            let show = |inv: &BTreeMap<Slot, usize>| {
                inv.iter()
                    .map(|(s, k)| format!("({},{}) x{k}", label_name(s.label), s.degree))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            return Err(AssemblyError::SlotMismatch {
                piece: PieceKind::B(i).to_string(),
                detail: format!("has {}, expected {}", show(&found), show(&expected)),
            });
        }
        b_ids.push(c.add_piece(piece));
    }

    for (i, &bi) in b_ids.iter().enumerate() {
        let ones: Vec<usize> = c.pieces[bi]
            .slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.label == i && s.degree == 1)
            .map(|(k, _)| k)
            .collect();
        for (&ak, &slot) in a_ids.iter().zip(&ones) {
            c.glue(SlotRef { piece: ak, slot: i }, SlotRef { piece: bi, slot })?;
        }
    }
    check_independent(&c, dec.n, "S_1")?;
    Ok(c)
}

/// Step `s` (at least 2): a fresh top piece is glued to every open slot,
/// covers of `A` on even steps and covers of the complement on odd ones.
/// Each new piece is attached along its first slot of matching type.
pub fn step(
    c: &PieceComplex,
    dec: &Decomposition,
    tops: &TopPieces,
    params: &AssemblyParams,
    s: usize,
) -> Result<PieceComplex, AssemblyError> {
    let a_side = s.is_multiple_of(2);
    let mut out = c.clone();
    for open in c.open_slots() {
        if (c.pieces[open.piece].region == 0) == a_side {
            return Err(AssemblyError::SlotMismatch {
                piece: format!("{} #{}", c.pieces[open.piece].kind, open.piece),
                detail: format!("open slot on the wrong side at step {s}"),
            });
        }
        let slot = c.slot(open);
        let piece = tops.piece(dec, params, a_side, slot)?;
        let first = piece
            .slots
            .iter()
            .position(|x| *x == slot)
            .ok_or_else(|| AssemblyError::SlotMismatch {
                piece: piece.kind.to_string(),
                detail: format!("has no ({},{}) boundary", label_name(slot.label), slot.degree),
            })?;
        let id = out.add_piece(piece);
        out.glue(open, SlotRef { piece: id, slot: first })?;
    }
    check_independent(&out, dec.n, &format!("S_{s}"))?;
    Ok(out)
}

/// Steps 2 through `T`; returns `S_T` and the open-slot inventory after
/// every step, starting with `S_1`'s.
pub fn iterate_steps(
    s1: &PieceComplex,
    dec: &Decomposition,
    tops: &TopPieces,
    params: &AssemblyParams,
) -> Result<(PieceComplex, Vec<Inventory>), AssemblyError> {
    params.validate()?;
    let mut c = s1.clone();
    let mut inventories = vec![check_independent(&c, dec.n, "S_1")?];
    for s in 2..=params.t {
        c = step(&c, dec, tops, params, s)?;
        inventories.push(c.inventory());
    }
    Ok((c, inventories))
}

/// How step `T + 1` closed up the complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Closure {
    pub complex: PieceComplex,
    /// Vertices `0..copies_st` are copies of `S_T`, then copies of `A_{n+1}`,
    /// then copies of `A_{n+2}`.
    pub base_pattern: Multigraph,
    pub copies_st: usize,
    pub copies_am: usize,
    pub copies_a2m: usize,
    pub pattern_vertices: usize,
    pub pattern_girth: Girth,
    pub amplification_rounds: usize,
}

/// One base-pattern edge: an open slot of an `S_T` copy glued to a slot of
/// a closing piece.
#[derive(Debug, Clone, Copy)]
struct PatternEdge {
    st_slot: SlotRef,
    closer_slot: usize,
}

/// Glues copies of `S_T`, `A_{n+1}` and `A_{n+2}` into a closed complex.
///
/// The smallest counts that match every open slot give a base pattern
/// multigraph; its component through the first `S_T` copy is passed to
/// girth amplification until its girth exceeds `T`, and each vertex of the
/// resulting cover becomes a copy of `S_T` or of a closing piece.
pub fn final_close(
    st: &PieceComplex,
    dec: &Decomposition,
    tops: &TopPieces,
    params: &AssemblyParams,
) -> Result<Closure, AssemblyError> {
    let open = st.open_slots();
    if open.is_empty() {
        return Ok(Closure {
            complex: st.clone(),
            base_pattern: Multigraph::new(1),
            copies_st: 1,
            copies_am: 0,
            copies_a2m: 0,
            pattern_vertices: 1,
            pattern_girth: Girth::Infinite,
            amplification_rounds: 0,
        });
    }
    if let Some(r) = open.iter().find(|r| st.pieces[r.piece].region == 0) {
        return Err(AssemblyError::NoClosingPattern(format!(
            "open slot on {} #{}; closing pieces cover A",
            st.pieces[r.piece].kind, r.piece
        )));
    }

    let degrees = [params.m, 2 * params.m];
    let mut closers: [Option<Piece>; 2] = [None, None];
    let mut copies_st = 1usize;
    for (k, &d) in degrees.iter().enumerate() {
        let needed: Vec<usize> = (0..dec.n)
            .map(|l| {
                open.iter()
                    .filter(|&&r| st.slot(r) == Slot { label: l, degree: d })
                    .count()
            })
            .collect();
        if needed.iter().all(|&x| x == 0) {
            continue;
        }
        let supplied = if k == 0 { &tops.a_m } else { &tops.a_2m };
        if supplied.is_none() {
            return Err(AssemblyError::NoClosingPattern(format!(
                "no closing piece of degree {d}"
            )));
        }
        let p = tops.piece(dec, params, true, Slot { label: 0, degree: d })?;
        let offered: Vec<usize> = (0..dec.n)
            .map(|l| p.slots.iter().filter(|s| s.label == l).count())
            .collect();
        // copies_st * needed[l] = closer copies * offered[l] for every label
        for l in 0..dec.n {
            if offered[l] == 0 || needed[l] * offered[0] != needed[0] * offered[l] {
                return Err(AssemblyError::NoClosingPattern(format!(
                    "degree-{d} slots of S_T ({needed:?}) and of the closing piece ({offered:?}) are not proportional"
                )));
            }
        }
        copies_st = copies_st.lcm(&(offered[0] / needed[0].gcd(&offered[0])));
        closers[k] = Some(p);
    }

    let mut counts = [0usize; 2];
    for (k, &d) in degrees.iter().enumerate() {
        if let Some(p) = &closers[k] {
            let needed = open.iter().filter(|&&r| st.slot(r).degree == d).count();
            counts[k] = copies_st * needed / p.slots.len();
        }
    }

    let mut base = Multigraph::new(copies_st + counts[0] + counts[1]);
    let mut info = Vec::new();
    for (k, &d) in degrees.iter().enumerate() {
        let Some(p) = &closers[k] else { continue };
        let first_closer = copies_st + if k == 0 { 0 } else { counts[0] };
        for l in 0..dec.n {
            let want = Slot { label: l, degree: d };
            let st_side =
                (0..copies_st).flat_map(|u| open.iter().filter(move |&&r| st.slot(r) == want).map(move |&r| (u, r)));
            let closer_side = (0..counts[k]).flat_map(|w| {
                p.slots
                    .iter()
                    .enumerate()
                    .filter(move |(_, s)| **s == want)
                    .map(move |(i, _)| (first_closer + w, i))
            });
            for ((u, r), (w, i)) in st_side.zip(closer_side) {
                base.add_edge(u, w);
                info.push(PatternEdge {
                    st_slot: r,
                    closer_slot: i,
                });
            }
        }
    }

    // every vertex has all its slots matched, so any component is closed
    let mut keep = base.component_of(0);
    keep.sort_unstable();
    let (pattern, kept) = base.induced(&keep);
    let info: Vec<PatternEdge> = kept.iter().map(|&e| info[e]).collect();
    let amp = girth_amplify(&pattern, params.t)
        .map_err(|e| AssemblyError::NoClosingPattern(format!("girth amplification failed: {e}")))?;

    let mut out = PieceComplex::default();
    let mut first_piece = Vec::with_capacity(amp.cover.graph.vertices);
    for (v, &b) in amp.cover.vertex_map.iter().enumerate() {
        let original = keep[b];
        first_piece.push(out.pieces.len());
        if original < copies_st {
            let offset = out.pieces.len();
            for p in &st.pieces {
                let mut p = p.clone();
                p.block = v;
                out.add_piece(p);
            }
            for g in &st.gluings {
                let shift = |r: SlotRef| SlotRef {
                    piece: r.piece + offset,
                    slot: r.slot,
                };
                out.glue(shift(g.a), shift(g.b))?;
            }
        } else {
            let k = usize::from(original >= copies_st + counts[0]);
            let mut p = closers[k].clone().expect("closer exists for its vertices");
            p.block = v;
            out.add_piece(p);
        }
    }
    for (e, &(t, h)) in amp.cover.graph.edges.iter().enumerate() {
        let pe = info[amp.cover.edge_map[e]];
        out.glue(
            SlotRef {
                piece: first_piece[t] + pe.st_slot.piece,
                slot: pe.st_slot.slot,
            },
            SlotRef {
                piece: first_piece[h],
                slot: pe.closer_slot,
            },
        )?;
    }

    let in_component = |lo: usize, hi: usize| keep.iter().filter(|&&v| v >= lo && v < hi).count();
    Ok(Closure {
        complex: out,
        copies_st: in_component(0, copies_st),
        copies_am: in_component(copies_st, copies_st + counts[0]),
        copies_a2m: in_component(copies_st + counts[0], base.vertices),
        base_pattern: pattern,
        pattern_vertices: amp.cover.graph.vertices,
        pattern_girth: amp.girth,
        amplification_rounds: amp.stages.len() - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::config::AssemblyConfig;

    #[test]
    fn figure_two_first_layer() {
        let cfg = AssemblyConfig::figure_two();
        let s1 = build_s1(&cfg.decomposition, &cfg.b, &cfg.params).unwrap();
        assert_eq!(s1.count_kind(&PieceKind::A), 3);
        assert_eq!(s1.count_kind(&PieceKind::B(0)), 1);
        assert_eq!(s1.count_kind(&PieceKind::B(1)), 1);
        let inv = s1.inventory();
        assert_eq!(inv.len(), 2);
        assert_eq!(inv[&(0, 3)], 2);
        assert_eq!(inv[&(1, 3)], 2);
        assert!(!inv.keys().any(|&(_, d)| d == 1));
    }

    #[test]
    fn layers_alternate() {
        let cfg = AssemblyConfig::figure_two();
        let s1 = build_s1(&cfg.decomposition, &cfg.b, &cfg.params).unwrap();
        let one = AssemblyParams { t: 1, ..cfg.params };
        let (same, _) = iterate_steps(&s1, &cfg.decomposition, &cfg.tops, &one).unwrap();
        assert_eq!(same, s1);

        let s2 = step(&s1, &cfg.decomposition, &cfg.tops, &cfg.params, 2).unwrap();
        assert!(s2.open_slots().iter().all(|r| s2.pieces[r.piece].kind == PieceKind::AM));
        let (s3, invs) = iterate_steps(&s1, &cfg.decomposition, &cfg.tops, &cfg.params).unwrap();
        assert!(s3.open_slots().iter().all(|r| s3.pieces[r.piece].kind == PieceKind::BM));
        assert_eq!(invs.len(), 3);
    }

    #[test]
    fn inconsistent_b_is_rejected() {
        let mut cfg = AssemblyConfig::figure_two();
        cfg.b[1] = "base_genus=1 degree=9 cover_genus=4 (R2(1,1,1,6))".parse().unwrap();
        match build_s1(&cfg.decomposition, &cfg.b, &cfg.params) {
            Err(AssemblyError::SlotMismatch { piece, .. }) => assert_eq!(piece, "B_2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn even_t_is_rejected() {
        let cfg = AssemblyConfig::figure_two();
        let p = AssemblyParams { t: 2, ..cfg.params };
        assert!(matches!(p.validate(), Err(AssemblyError::Invalid(_))));
    }

    #[test]
    fn closing_an_already_closed_complex() {
        let c = PieceComplex::default();
        let cfg = AssemblyConfig::figure_two();
        let cl = final_close(&c, &cfg.decomposition, &cfg.tops, &cfg.params).unwrap();
        assert_eq!(cl.complex, c);
    }
}
