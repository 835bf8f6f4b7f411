//! Surfaces presented as pieces glued along boundary circles.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::covers::{girth, BranchedCoverMap, Girth, Multigraph};
use crate::error::AssemblyError;
use crate::surface::{BranchingData, SurfaceSig};

/// How `S` splits along the boundary circles `R1..Rn` of `A`: the subsurface
/// `A` and the components ("regions") of its complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub a_genus: u64,
    pub n: usize,
    pub regions: Vec<Region>,
}

/// A component of the complement of `A`, with the labels of the circles
/// it shares with `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub genus: u64,
    pub labels: Vec<usize>,
}

pub fn label_name(label: usize) -> String {
    format!("R{}", label + 1)
}

impl Decomposition {
    pub fn validate(&self) -> Result<(), AssemblyError> {
        let mut owner = vec![None; self.n];
        for (r, region) in self.regions.iter().enumerate() {
            if region.labels.is_empty() {
                return Err(AssemblyError::Invalid(format!("region {} has no boundary", r + 1)));
            }
            for &l in &region.labels {
                match owner.get_mut(l) {
                    None => return Err(AssemblyError::Invalid(format!("label {l} out of range"))),
                    Some(Some(_)) => {
                        return Err(AssemblyError::Invalid(format!("{} lies in two regions", label_name(l))))
                    }
                    Some(slot) => *slot = Some(r),
                }
            }
        }
        if let Some(l) = owner.iter().position(Option::is_none) {
            return Err(AssemblyError::Invalid(format!("{} lies in no region", label_name(l))));
        }
        Ok(())
    }

    /// Region index of a piece side: 0 is `A`, `r + 1` is `regions[r]`.
    pub fn region_of(&self, label: usize) -> usize {
        1 + self
            .regions
            .iter()
            .position(|r| r.labels.contains(&label))
            .expect("validated decomposition")
    }

    /// Signature of region `r` (0 for `A`).
    pub fn region_sig(&self, r: usize) -> SurfaceSig {
        let (genus, labels): (u64, Vec<usize>) = if r == 0 {
            (self.a_genus, (0..self.n).collect())
        } else {
            let reg = &self.regions[r - 1];
            (reg.genus, reg.labels.clone())
        };
        SurfaceSig {
            orientable: true,
            genus,
            boundary_labels: labels.into_iter().map(label_name).collect(),
        }
    }

    pub fn region_labels(&self, r: usize) -> Vec<usize> {
        if r == 0 {
            (0..self.n).collect()
        } else {
            self.regions[r - 1].labels.clone()
        }
    }

    pub fn euler_char(&self) -> i64 {
        (0..=self.regions.len()).map(|r| self.region_sig(r).euler_char()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PieceKind {
    A,
    /// `B_i`, with `i` the 0-based label index.
    B(usize),
    /// `A_{n+1}`: a cover of `A` with only degree-`M` boundaries.
    AM,
    /// `A_{n+2}`: a cover of `A` with only degree-`2M` boundaries.
    A2M,
    BM,
    B2M,
    Custom(String),
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceKind::A => write!(f, "A"),
            PieceKind::B(i) => write!(f, "B_{}", i + 1),
            PieceKind::AM => write!(f, "A_{{n+1}}"),
            PieceKind::A2M => write!(f, "A_{{n+2}}"),
            PieceKind::BM => write!(f, "B_{{n+1}}"),
            PieceKind::B2M => write!(f, "B_{{n+2}}"),
            PieceKind::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// A boundary circle of a piece: it covers `R_{label+1}` with `degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub label: usize,
    pub degree: u64,
}

/// A cover of one region of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub kind: PieceKind,
    pub region: usize,
    pub genus: u64,
    /// Covering degree over the region.
    pub degree: u64,
    pub slots: Vec<Slot>,
    /// Pieces copied together as one vertex of the closing pattern share a
    /// block; the pattern graph contracts each block to a point.
    pub block: usize,
}

impl Piece {
    /// The piece described by branching data over `region`. Slots follow the
    /// data: label by label, entry by entry.
    pub fn from_data(
        kind: PieceKind,
        region: usize,
        data: &BranchingData,
        decomposition: &Decomposition,
    ) -> Result<Piece, AssemblyError> {
        let sig = decomposition.region_sig(region);
        if data.base != sig {
            return Err(AssemblyError::SlotMismatch {
                piece: kind.to_string(),
                detail: format!(
                    "data is over genus {} with labels {:?}, region has genus {} with labels {:?}",
                    data.base.genus, data.base.boundary_labels, sig.genus, sig.boundary_labels
                ),
            });
        }
        if !data.sums_ok() || !data.euler_ok() {
            return Err(AssemblyError::SlotMismatch {
                piece: kind.to_string(),
                detail: format!("branching data {data} fails the degree or Euler identities"),
            });
        }
        let labels = decomposition.region_labels(region);
        let slots = labels
            .iter()
            .zip(&data.data)
            .flat_map(|(&label, ds)| ds.iter().map(move |&degree| Slot { label, degree }))
            .collect();
        Ok(Piece {
            kind,
            region,
            genus: data.cover_genus,
            degree: data.degree,
            slots,
            block: 0,
        })
    }

    pub fn euler_char(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.slots.len() as i64
    }

    pub fn sig(&self) -> SurfaceSig {
        SurfaceSig {
            orientable: true,
            genus: self.genus,
            boundary_labels: self.slots.iter().map(|s| label_name(s.label)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlotRef {
    pub piece: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub a: SlotRef,
    pub b: SlotRef,
}

/// Pieces and a partial matching of their slots. Gluing `i` is edge `i` of
/// the underlying graph, oriented from `a.piece` to `b.piece`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceComplex {
    pub pieces: Vec<Piece>,
    pub gluings: Vec<Gluing>,
}

/// Open slot counts keyed by `(label, degree)`.
pub type Inventory = BTreeMap<(usize, u64), usize>;

impl PieceComplex {
    pub fn add_piece(&mut self, piece: Piece) -> usize {
        self.pieces.push(piece);
        self.pieces.len() - 1
    }

    pub fn slot(&self, r: SlotRef) -> Slot {
        self.pieces[r.piece].slots[r.slot]
    }

    /// Glues two open slots of equal label and degree.
    pub fn glue(&mut self, a: SlotRef, b: SlotRef) -> Result<(), AssemblyError> {
        let (sa, sb) = (self.slot(a), self.slot(b));
        if sa != sb {
            return Err(AssemblyError::SlotMismatch {
                piece: format!("{} #{}", self.pieces[a.piece].kind, a.piece),
                detail: format!(
                    "cannot glue ({},{}) to ({},{})",
                    label_name(sa.label),
                    sa.degree,
                    label_name(sb.label),
                    sb.degree
                ),
            });
        }
        self.gluings.push(Gluing { a, b });
        Ok(())
    }

    /// For every slot, the index of the gluing using it.
    pub fn partners(&self) -> Vec<Vec<Option<usize>>> {
        let mut used: Vec<Vec<Option<usize>>> = self.pieces.iter().map(|p| vec![None; p.slots.len()]).collect();
        for (i, g) in self.gluings.iter().enumerate() {
            used[g.a.piece][g.a.slot] = Some(i);
            used[g.b.piece][g.b.slot] = Some(i);
        }
        used
    }

    /// Unglued slots, by piece then slot.
    pub fn open_slots(&self) -> Vec<SlotRef> {
        let used = self.partners();
        let mut out = Vec::new();
        for (p, slots) in used.iter().enumerate() {
            for (s, u) in slots.iter().enumerate() {
                if u.is_none() {
                    out.push(SlotRef { piece: p, slot: s });
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.open_slots().is_empty()
    }

    pub fn inventory(&self) -> Inventory {
        let mut inv = Inventory::new();
        for r in self.open_slots() {
            let s = self.slot(r);
            *inv.entry((s.label, s.degree)).or_default() += 1;
        }
        inv
    }

    /// True iff, at every degree, every label in `labels` has the same
    /// number of open slots.
    pub fn label_independent(&self, labels: usize) -> bool {
        inventory_label_independent(&self.inventory(), labels)
    }

    pub fn underlying_graph(&self) -> Multigraph {
        Multigraph {
            vertices: self.pieces.len(),
            edges: self.gluings.iter().map(|g| (g.a.piece, g.b.piece)).collect(),
        }
    }

    /// Underlying graph with every block contracted to a vertex.
    pub fn pattern_graph(&self) -> Multigraph {
        let mut index = BTreeMap::new();
        for p in &self.pieces {
            let next = index.len();
            index.entry(p.block).or_insert(next);
        }
        let block = |p: usize| index[&self.pieces[p].block];
        Multigraph {
            vertices: index.len(),
            edges: self
                .gluings
                .iter()
                .filter(|g| block(g.a.piece) != block(g.b.piece))
                .map(|g| (block(g.a.piece), block(g.b.piece)))
                .collect(),
        }
    }

    pub fn euler_char(&self) -> i64 {
        self.pieces.iter().map(Piece::euler_char).sum()
    }

    pub fn count_kind(&self, kind: &PieceKind) -> usize {
        self.pieces.iter().filter(|p| &p.kind == kind).count()
    }

    /// Line-oriented text: one `piece` line per piece, one `glue` line per
    /// gluing.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let slots: Vec<String> = p
                .slots
                .iter()
                .map(|s| format!("{}:{}", label_name(s.label), s.degree))
                .collect();
            writeln!(
                out,
                "piece {i} kind={} region={} genus={} degree={} block={} slots=[{}]",
                p.kind,
                p.region,
                p.genus,
                p.degree,
                p.block,
                slots.join(" ")
            )
            .unwrap();
        }
        for g in &self.gluings {
            writeln!(out, "glue {}.{} {}.{}", g.a.piece, g.a.slot, g.b.piece, g.b.slot).unwrap();
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        for (i, p) in self.pieces.iter().enumerate() {
            writeln!(out, "  {i} [label=\"{}\"];", p.kind).unwrap();
        }
        for g in &self.gluings {
            let s = self.slot(g.a);
            writeln!(
                out,
                "  {} -- {} [label=\"{},{}\"];",
                g.a.piece,
                g.b.piece,
                label_name(s.label),
                s.degree
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn inventory_label_independent(inv: &Inventory, labels: usize) -> bool {
    let mut per_degree: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (&(label, degree), &c) in inv {
        per_degree.entry(degree).or_insert_with(|| vec![0; labels])[label] = c;
    }
    per_degree.values().all(|cs| cs.windows(2).all(|w| w[0] == w[1]))
}

/// The complex induced by an ordinary cover of its underlying graph: one
/// copy of each piece per lift of its vertex, glued along lifted edges.
pub fn pullback(complex: &PieceComplex, cover: &crate::covers::Cover) -> Result<PieceComplex, AssemblyError> {
    cover
        .verify(&complex.underlying_graph())
        .map_err(AssemblyError::NotACover)?;
    let mut out = PieceComplex::default();
    for (v, &base) in cover.vertex_map.iter().enumerate() {
        let mut p = complex.pieces[base].clone();
        p.block = v;
        out.add_piece(p);
    }
    for (e, &(t, h)) in cover.graph.edges.iter().enumerate() {
        let g = complex.gluings[cover.edge_map[e]];
        out.glue(
            SlotRef {
                piece: t,
                slot: g.a.slot,
            },
            SlotRef {
                piece: h,
                slot: g.b.slot,
            },
        )?;
    }
    Ok(out)
}

/// Degree-`d` cover of a piece in which every boundary circle has `d`
/// preimages, each mapped homeomorphically.
pub fn regular_cover(piece: &Piece, d: u64) -> Result<BranchingData, AssemblyError> {
    if d > 1 && piece.genus == 0 {
        return Err(AssemblyError::Invalid(
            "a planar piece has no connected regular cover of degree above 1".into(),
        ));
    }
    Ok(BranchingData {
        base: piece.sig(),
        degree: d,
        data: vec![vec![1; d as usize]; piece.slots.len()],
        cover_genus: d * piece.genus + 1 - d,
    })
}

/// Replaces each piece by a regular cover of degree `d(ṽ)` for each of its
/// lifts `ṽ`, and glues copies of slots as the lifted edges dictate.
///
/// The lift over `ṽ` of piece slot `s` is the block of slots
/// `s * d(ṽ) .. (s + 1) * d(ṽ)`; the lifted ends at `ṽ` over the same base
/// end take these in increasing edge order.
pub fn blowup(
    complex: &PieceComplex,
    branched: &BranchedCoverMap,
    piece_covers: &[BranchingData],
) -> Result<PieceComplex, AssemblyError> {
    let underlying = complex.underlying_graph();
    if branched.target != underlying {
        return Err(AssemblyError::NotACover(
            "branched map targets a different graph".into(),
        ));
    }
    let report = crate::covers::verify_branched_cover(branched);
    if !report.passed() {
        return Err(AssemblyError::NotACover(format!("{:?}", report.violations)));
    }
    if piece_covers.len() != branched.source.vertices {
        return Err(AssemblyError::Invalid(format!(
            "{} piece covers for {} lifted vertices",
            piece_covers.len(),
            branched.source.vertices
        )));
    }

    let mut out = PieceComplex::default();
    for (v, (&base, data)) in branched.vertex_map.iter().zip(piece_covers).enumerate() {
        let piece = &complex.pieces[base];
        let d = branched.degrees[v] as u64;
        if d > 1 && piece.genus == 0 {
            return Err(AssemblyError::SphereOrProjectivePlane { piece: base });
        }
        if data.base != piece.sig() || data.degree != d {
            return Err(AssemblyError::RegularityViolated(format!(
                "cover over lift {v} does not match piece {base} at degree {d}"
            )));
        }
        if data
            .data
            .iter()
            .any(|ds| ds.len() as u64 != d || ds.iter().any(|&x| x != 1))
        {
            return Err(AssemblyError::RegularityViolated(format!(
                "cover over lift {v} has a boundary of degree above 1"
            )));
        }
        if !data.euler_ok() {
            return Err(AssemblyError::RegularityViolated(format!(
                "cover over lift {v} fails the Euler identity"
            )));
        }
        let slots = piece
            .slots
            .iter()
            .flat_map(|&s| std::iter::repeat_n(s, d as usize))
            .collect();
        out.add_piece(Piece {
            kind: piece.kind.clone(),
            region: piece.region,
            genus: data.cover_genus,
            degree: piece.degree * d,
            slots,
            block: v,
        });
    }

    let mut taken: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut claim = |v: usize, slot: usize| {
        let c = taken.entry((v, slot)).or_default();
        let r = SlotRef {
            piece: v,
            slot: slot * branched.degrees[v] + *c as usize,
        };
        *c += 1;
        r
    };
    for (e, &(t, h)) in branched.source.edges.iter().enumerate() {
        let g = complex.gluings[branched.edge_map[e]];
        let a = claim(t, g.a.slot);
        let b = claim(h, g.b.slot);
        out.glue(a, b)?;
    }
    Ok(out)
}

/// One named check of [`verify_cover_complex`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub checks: Vec<Check>,
    /// Sheets over `A`, when every region is covered equally often.
    pub sheets: Option<u64>,
    pub euler_char: i64,
    pub pattern_girth: Girth,
    pub underlying_girth: Girth,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks that `complex` is a closed connected cover of the surface
/// described by `decomposition`, that it contains a copy of `A` surrounded
/// by degree-1 gluings, and, when `min_girth` is given, that its pattern
/// graph has at least that girth.
pub fn verify_cover_complex(
    complex: &PieceComplex,
    decomposition: &Decomposition,
    min_girth: Option<usize>,
) -> CoverReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.into(),
            passed,
            detail,
        })
    };

    let open = complex.open_slots();
    push("closed", open.is_empty(), format!("{} open slots", open.len()));

    let regions = decomposition.regions.len() + 1;
    let mut bad_gluings = Vec::new();
    for (i, g) in complex.gluings.iter().enumerate() {
        let (pa, pb) = (&complex.pieces[g.a.piece], &complex.pieces[g.b.piece]);
        let (sa, sb) = (complex.slot(g.a), complex.slot(g.b));
        let other = decomposition.region_of(sa.label);
        let sides_ok = (pa.region == 0 && pb.region == other) || (pb.region == 0 && pa.region == other);
        if sa != sb || !sides_ok {
            bad_gluings.push(i);
        }
    }
    push(
        "gluings",
        bad_gluings.is_empty(),
        if bad_gluings.is_empty() {
            format!(
                "{} gluings join A-side and complement-side slots of equal type",
                complex.gluings.len()
            )
        } else {
            format!("bad gluings {bad_gluings:?}")
        },
    );

    let mut bad_pieces = Vec::new();
    for (i, p) in complex.pieces.iter().enumerate() {
        if p.region >= regions {
            bad_pieces.push(i);
            continue;
        }
        let labels = decomposition.region_labels(p.region);
        let mut sums = vec![0u64; labels.len()];
        let mut foreign = false;
        for s in &p.slots {
            match labels.iter().position(|&l| l == s.label) {
                Some(k) => sums[k] += s.degree,
                None => foreign = true,
            }
        }
        let chi_ok = p.euler_char() == p.degree as i64 * decomposition.region_sig(p.region).euler_char();
        if foreign || !chi_ok || sums.iter().any(|&s| s != p.degree) {
            bad_pieces.push(i);
        }
    }
    push(
        "piece_degrees",
        bad_pieces.is_empty(),
        if bad_pieces.is_empty() {
            "every piece is a cover of its region".into()
        } else {
            format!("pieces {bad_pieces:?} are not covers of their regions")
        },
    );

    let mut per_region = vec![0u64; regions];
    for p in &complex.pieces {
        if p.region < regions {
            per_region[p.region] += p.degree;
        }
    }
    let sheets = per_region.windows(2).all(|w| w[0] == w[1]).then_some(per_region[0]);
    push(
        "sheets",
        sheets.is_some(),
        format!("degree over each region: {per_region:?}"),
    );

    let chi = complex.euler_char();
    let base_chi = decomposition.euler_char();
    let chi_ok = sheets.is_some_and(|k| chi == k as i64 * base_chi);
    push(
        "euler_multiplicative",
        chi_ok,
        format!(
            "chi = {chi}, sheets x chi(S) = {}",
            sheets.map_or(0, |k| k as i64 * base_chi)
        ),
    );

    let partners = complex.partners();
    let lift = complex.pieces.iter().enumerate().position(|(i, p)| {
        p.kind == PieceKind::A
            && p.degree == 1
            && partners[i].iter().all(|u| {
                u.is_some_and(|g| {
                    let g = complex.gluings[g];
                    let other = if g.a.piece == i { g.b } else { g.a };
                    matches!(complex.pieces[other.piece].kind, PieceKind::B(_)) && complex.slot(other).degree == 1
                })
            })
    });
    push(
        "a_lift",
        lift.is_some(),
        lift.map_or("no copy of A surrounded by degree-1 gluings".into(), |i| {
            format!("piece {i} is a lift of A")
        }),
    );

    let underlying = complex.underlying_graph();
    push(
        "connected",
        underlying.is_connected(),
        format!("{} pieces", complex.pieces.len()),
    );

    let pattern_girth = girth(&complex.pattern_graph());
    let underlying_girth = girth(&underlying);
    if let Some(m) = min_girth {
        push(
            "pattern_girth",
            pattern_girth.finite().is_none_or(|g| g >= m),
            format!("pattern girth {pattern_girth}, required {m}"),
        );
    }

    CoverReport {
        checks,
        sheets,
        euler_char: chi,
        pattern_girth,
        underlying_girth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{build_branched_cover, Cover};

    /// Genus-3 surface cut into `A` (genus 1) and one genus-1 region along
    /// two circles.
    fn two_piece() -> (Decomposition, PieceComplex) {
        let dec = Decomposition {
            a_genus: 1,
            n: 2,
            regions: vec![Region {
                genus: 1,
                labels: vec![0, 1],
            }],
        };
        let mut c = PieceComplex::default();
        for (kind, region) in [(PieceKind::A, 0), (PieceKind::B(0), 1)] {
            let data = BranchingData::identity(&dec.region_sig(region));
            c.add_piece(Piece::from_data(kind, region, &data, &dec).unwrap());
        }
        for s in 0..2 {
            c.glue(SlotRef { piece: 0, slot: s }, SlotRef { piece: 1, slot: s })
                .unwrap();
        }
        (dec, c)
    }

    #[test]
    fn base_complex_verifies() {
        let (dec, c) = two_piece();
        let r = verify_cover_complex(&c, &dec, None);
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.sheets, Some(1));
        assert_eq!(c.euler_char(), -4);
    }

    #[test]
    fn pullback_identity_and_double() {
        let (dec, c) = two_piece();
        let g = c.underlying_graph();
        let same = pullback(&c, &Cover::identity(&g)).unwrap();
        assert_eq!(same.gluings, c.gluings);

        // the 2-cycle is covered by the 4-cycle
        let double = Cover {
            graph: Multigraph {
                vertices: 4,
                edges: vec![(0, 1), (2, 1), (2, 3), (0, 3)],
            },
            vertex_map: vec![0, 1, 0, 1],
            edge_map: vec![0, 1, 0, 1],
        };
        let d = pullback(&c, &double).unwrap();
        assert_eq!(d.pieces.len(), 4);
        assert!(d.is_closed());
        assert_eq!(d.euler_char(), 2 * c.euler_char());
        let r = verify_cover_complex(&d, &dec, None);
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.sheets, Some(2));

        let mut bad = double.clone();
        bad.edge_map = vec![0, 0, 1, 1];
        assert!(matches!(pullback(&c, &bad), Err(AssemblyError::NotACover(_))));
    }

    #[test]
    fn blowup_of_self_glued_piece() {
        // a genus-2 surface cut along one non-separating circle
        let mut c = PieceComplex::default();
        c.add_piece(Piece {
            kind: PieceKind::Custom("P".into()),
            region: 0,
            genus: 1,
            degree: 1,
            slots: vec![Slot { label: 0, degree: 1 }; 2],
            block: 0,
        });
        c.glue(SlotRef { piece: 0, slot: 0 }, SlotRef { piece: 0, slot: 1 })
            .unwrap();
        let map = build_branched_cover(&c.underlying_graph(), &[2]).unwrap();
        let cover = regular_cover(&c.pieces[0], 2).unwrap();
        let b = blowup(&c, &map, &[cover]).unwrap();
        assert_eq!(b.pieces.len(), 1);
        assert_eq!(b.pieces[0].slots.len(), 4);
        assert!(b.is_closed());
        assert_eq!(b.euler_char(), 2 * c.euler_char());
    }

    #[test]
    fn blowup_degree_one_is_pullback() {
        let (_, c) = two_piece();
        let g = c.underlying_graph();
        let map = build_branched_cover(&g, &[1, 1]).unwrap();
        let covers: Vec<_> = c.pieces.iter().map(|p| regular_cover(p, 1).unwrap()).collect();
        let b = blowup(&c, &map, &covers).unwrap();
        let cover = Cover {
            graph: map.source.clone(),
            vertex_map: map.vertex_map.clone(),
            edge_map: map.edge_map.clone(),
        };
        assert_eq!(b, pullback(&c, &cover).unwrap());
    }

    #[test]
    fn blowup_rejects_planar_and_irregular() {
        let mut c = PieceComplex::default();
        c.add_piece(Piece {
            kind: PieceKind::Custom("pants".into()),
            region: 0,
            genus: 0,
            degree: 1,
            slots: vec![Slot { label: 0, degree: 1 }; 2],
            block: 0,
        });
        c.glue(SlotRef { piece: 0, slot: 0 }, SlotRef { piece: 0, slot: 1 })
            .unwrap();
        let map = build_branched_cover(&c.underlying_graph(), &[2]).unwrap();
        let fake = BranchingData {
            base: c.pieces[0].sig(),
            degree: 2,
            data: vec![vec![1, 1]; 2],
            cover_genus: 0,
        };
        assert!(matches!(
            blowup(&c, &map, &[fake]),
            Err(AssemblyError::SphereOrProjectivePlane { piece: 0 })
        ));

        c.pieces[0].genus = 1;
        let irregular = BranchingData {
            base: c.pieces[0].sig(),
            degree: 2,
            data: vec![vec![2]; 2],
            cover_genus: 2,
        };
        assert!(matches!(
            blowup(&c, &map, &[irregular]),
            Err(AssemblyError::RegularityViolated(_))
        ));
    }

    #[test]
    fn verify_flags_open_slot_and_short_pattern() {
        let (dec, mut c) = two_piece();
        c.gluings.pop();
        let r = verify_cover_complex(&c, &dec, None);
        assert!(!r.check("closed").unwrap().passed);

        let (dec, mut c) = two_piece();
        c.pieces[1].block = 1;
        let r = verify_cover_complex(&c, &dec, Some(4));
        assert_eq!(r.pattern_girth, Girth::Finite(2));
        assert!(!r.check("pattern_girth").unwrap().passed);
    }

    #[test]
    fn text_lists_pieces_and_gluings() {
        let (_, c) = two_piece();
        let t = c.to_text();
        assert!(t.starts_with("piece 0 kind=A region=0 genus=1 degree=1 block=0 slots=[R1:1 R2:1]"));
        assert_eq!(t.lines().filter(|l| l.starts_with("glue")).count(), 2);
    }
}
