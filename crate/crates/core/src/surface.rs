//! Branching data of surface covers and the cover plans built from it.
//!
//! A plan never constructs monodromy. It tracks the degree, the genus of
//! the covering surface and, for every boundary label of the base, the
//! degrees with which the boundary circles above it map down. Realizability
//! of each elementary stage is decided by the Euler characteristic and
//! degree-sum conditions in the cases where these are known to suffice.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{ParseError, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub orientable: bool,
    pub genus: u64,
    pub boundary_labels: Vec<String>,
}

impl SurfaceSig {
    /// Orientable surface with boundary labels `R1..Rn`.
    pub fn orientable(genus: u64, n: usize) -> SurfaceSig {
        SurfaceSig {
            orientable: true,
            genus,
            boundary_labels: (1..=n).map(|i| format!("R{i}")).collect(),
        }
    }

    pub fn boundaries(&self) -> usize {
        self.boundary_labels.len()
    }

    pub fn euler_char(&self) -> i64 {
        euler_char(self)
    }

    pub fn is_disc(&self) -> bool {
        self.orientable && self.genus == 0 && self.boundaries() == 1
    }

    pub fn is_annulus(&self) -> bool {
        self.orientable && self.genus == 0 && self.boundaries() == 2
    }
}

pub fn euler_char(s: &SurfaceSig) -> i64 {
    let (g, n) = (s.genus as i64, s.boundaries() as i64);
    if s.orientable {
        2 - 2 * g - n
    } else {
        1 - g - n
    }
}

/// A cover of `base` of degree `degree` whose boundary circles over label
/// `i` have degrees `data[i]`, and whose covering surface has genus
/// `cover_genus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchingData {
    pub base: SurfaceSig,
    pub degree: u64,
    pub data: Vec<Vec<u64>>,
    pub cover_genus: u64,
}

impl BranchingData {
    /// The degree-1 cover of `s` by itself.
    pub fn identity(s: &SurfaceSig) -> BranchingData {
        BranchingData {
            base: s.clone(),
            degree: 1,
            data: vec![vec![1]; s.boundaries()],
            cover_genus: s.genus,
        }
    }

    pub fn cover_boundaries(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn cover_euler_char(&self) -> i64 {
        2 - 2 * self.cover_genus as i64 - self.cover_boundaries() as i64
    }

    /// Signature of the covering surface; the boundary over the `j`-th
    /// entry of label `R` is called `R.j`.
    pub fn cover_sig(&self) -> SurfaceSig {
        SurfaceSig {
            orientable: self.base.orientable,
            genus: self.cover_genus,
            boundary_labels: self
                .base
                .boundary_labels
                .iter()
                .zip(&self.data)
                .flat_map(|(l, ds)| (1..=ds.len()).map(move |j| format!("{l}.{j}")))
                .collect(),
        }
    }

    /// Per-label degree sums all equal the degree.
    pub fn sums_ok(&self) -> bool {
        self.data.len() == self.base.boundaries() && self.data.iter().all(|ds| ds.iter().sum::<u64>() == self.degree)
    }

    pub fn euler_ok(&self) -> bool {
        self.cover_euler_char() == self.degree as i64 * self.base.euler_char()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("branching data serializes")
    }
}

impl fmt::Display for BranchingData {
    /// `base_genus=1 degree=2 cover_genus=1 (R1(1,1), R2(1,1))`, prefixed by
    /// `nonorientable` when the base is.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.base.orientable {
            write!(f, "nonorientable ")?;
        }
        write!(
            f,
            "base_genus={} degree={} cover_genus={} (",
            self.base.genus, self.degree, self.cover_genus
        )?;
        for (i, (label, ds)) in self.base.boundary_labels.iter().zip(&self.data).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let list: Vec<String> = ds.iter().map(u64::to_string).collect();
            write!(f, "{label}({})", list.join(","))?;
        }
        write!(f, ")")
    }
}

impl FromStr for BranchingData {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let open = s
            .find('(')
            .ok_or_else(|| ParseError::at(s.len(), "expected a parenthesised data tuple"))?;
        let mut orientable = true;
        let (mut genus, mut degree, mut cover_genus) = (None, None, None);
        let mut pos = 0;
        for token in s[..open].split_whitespace() {
            let at = s[pos..].find(token).map_or(pos, |o| pos + o);
            pos = at + token.len();
            if token == "nonorientable" {
                orientable = false;
                continue;
            }
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| ParseError::at(at, format!("expected key=value, found {token:?}")))?;
            let v: u64 = value
                .parse()
                .map_err(|_| ParseError::at(at + key.len() + 1, format!("{value:?} is not a non-negative integer")))?;
            match key {
                "base_genus" => genus = Some(v),
                "degree" => degree = Some(v),
                "cover_genus" => cover_genus = Some(v),
                _ => return Err(ParseError::at(at, format!("unknown key {key:?}"))),
            }
        }
        let inner_end = s
            .rfind(')')
            .filter(|&e| e > open)
            .ok_or_else(|| ParseError::at(s.len(), "unclosed data tuple"))?;
        if !s[inner_end + 1..].trim().is_empty() {
            return Err(ParseError::at(inner_end + 1, "trailing text after data tuple"));
        }
        let mut labels = Vec::new();
        let mut data = Vec::new();
        let body = &s[open + 1..inner_end];
        let mut i = 0;
        let bytes = body.as_bytes();
        while i < bytes.len() {
            while i < bytes.len() && (bytes[i] == b',' || bytes[i].is_ascii_whitespace()) {
                i += 1;
            }
            if i >= bytes.len() {
                break;
            }
            let lp = body[i..]
                .find('(')
                .map(|o| i + o)
                .ok_or_else(|| ParseError::at(open + 1 + i, "expected label(degrees)"))?;
            let rp = body[lp..]
                .find(')')
                .map(|o| lp + o)
                .ok_or_else(|| ParseError::at(open + 1 + lp, "unclosed degree list"))?;
            let label = body[i..lp].trim();
            if label.is_empty() {
                return Err(ParseError::at(open + 1 + i, "empty boundary label"));
            }
            let mut ds = Vec::new();
            let mut off = lp + 1;
            for part in body[lp + 1..rp].split(',') {
                let d: u64 = part
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::at(open + 1 + off, format!("{:?} is not a degree", part.trim())))?;
                ds.push(d);
                off += part.len() + 1;
            }
            labels.push(label.to_string());
            data.push(ds);
            i = rp + 1;
        }
        let missing = |k: &str| ParseError::at(0, format!("missing {k}"));
        Ok(BranchingData {
            base: SurfaceSig {
                orientable,
                genus: genus.ok_or_else(|| missing("base_genus"))?,
                boundary_labels: labels,
            },
            degree: degree.ok_or_else(|| missing("degree"))?,
            data,
            cover_genus: cover_genus.ok_or_else(|| missing("cover_genus"))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason")]
pub enum Realizability {
    Realizable(String),
    NotRealizable(String),
    Unknown(String),
}

impl Realizability {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Realizability::Realizable(_))
    }
}

/// Decides realizability of branching data over an orientable base.
///
/// The arithmetic conditions (Euler characteristic and degree sums) are
/// necessary. They are also sufficient when the base has positive genus,
/// and over a genus-0 base with at least three boundary circles when some
/// label is covered by a single circle of full degree. Annuli are covered
/// only by annuli, one circle of full degree over each end. Everything else
/// over a genus-0 base is reported as unknown.
pub fn hurwitz_check(b: &BranchingData) -> Result<Realizability, SurfaceError> {
    if !b.base.orientable {
        return Err(SurfaceError::NonOrientableUnsupported);
    }
    if b.degree == 0 {
        return Ok(Realizability::NotRealizable("degree is zero".into()));
    }
    if b.data.len() != b.base.boundaries() {
        return Ok(Realizability::NotRealizable(format!(
            "{} degree lists for {} boundary labels",
            b.data.len(),
            b.base.boundaries()
        )));
    }
    for (label, ds) in b.base.boundary_labels.iter().zip(&b.data) {
        if ds.is_empty() || ds.contains(&0) {
            return Ok(Realizability::NotRealizable(format!("{label} needs positive degrees")));
        }
        let sum: u64 = ds.iter().sum();
        if sum != b.degree {
            return Ok(Realizability::NotRealizable(format!(
                "degrees over {label} sum to {sum}, not {}",
                b.degree
            )));
        }
    }
    if !b.euler_ok() {
        return Ok(Realizability::NotRealizable(format!(
            "cover has Euler characteristic {}, expected {}",
            b.cover_euler_char(),
            b.degree as i64 * b.base.euler_char()
        )));
    }
    let n = b.base.boundaries();
    if b.base.genus >= 1 {
        return Ok(Realizability::Realizable("base genus at least 1".into()));
    }
    if n >= 3 {
        if let Some(i) = b.data.iter().position(|ds| ds.len() == 1) {
            return Ok(Realizability::Realizable(format!(
                "genus 0 with {} covered by one circle of full degree",
                b.base.boundary_labels[i]
            )));
        }
        return Ok(Realizability::Unknown(
            "genus-0 base with no label covered by a single circle".into(),
        ));
    }
    if n == 2 {
        return Ok(Realizability::Realizable("annulus covered by an annulus".into()));
    }
    if b.degree == 1 {
        return Ok(Realizability::Realizable("degree-1 cover".into()));
    }
    Ok(Realizability::NotRealizable(
        "a disc or sphere has no connected cover of degree above 1".into(),
    ))
}

/// Degrees with which the boundary circles of the outer cover map to the
/// base of `inner`, in the order of `outer`'s boundary labels and entries.
fn composite_degrees(outer: &BranchingData, inner: &BranchingData) -> Vec<Vec<u64>> {
    let inner_degrees: Vec<u64> = inner.data.iter().flatten().copied().collect();
    outer
        .data
        .iter()
        .zip(inner_degrees)
        .map(|(es, d)| es.iter().map(|e| e * d).collect())
        .collect()
}

/// Branching data of `inner ∘ outer`, where `outer` covers the covering
/// surface of `inner`.
pub fn compose_branching(outer: &BranchingData, inner: &BranchingData) -> Result<BranchingData, SurfaceError> {
    let sig = inner.cover_sig();
    if outer.base.genus != sig.genus
        || outer.base.boundaries() != sig.boundaries()
        || outer.base.orientable != sig.orientable
    {
        return Err(SurfaceError::SignatureMismatch(format!(
            "outer base has genus {} and {} boundaries, inner cover has genus {} and {}",
            outer.base.genus,
            outer.base.boundaries(),
            sig.genus,
            sig.boundaries()
        )));
    }
    let per_boundary = composite_degrees(outer, inner);
    let mut data = Vec::with_capacity(inner.data.len());
    let mut k = 0;
    for ds in &inner.data {
        let mut merged = Vec::new();
        for _ in ds {
            merged.extend_from_slice(&per_boundary[k]);
            k += 1;
        }
        data.push(merged);
    }
    Ok(BranchingData {
        base: inner.base.clone(),
        degree: outer.degree * inner.degree,
        data,
        cover_genus: outer.cover_genus,
    })
}

/// One cover in a plan, with its realizability verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: String,
    /// Elementary stages are single covers justified by a realizability
    /// criterion; the rest are compositions of earlier stages.
    pub elementary: bool,
    pub data: BranchingData,
    pub verdict: Realizability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverPlan {
    pub result: BranchingData,
    pub stages: Vec<Stage>,
}

impl CoverPlan {
    fn single(name: &str, data: BranchingData) -> Result<CoverPlan, SurfaceError> {
        let mut plan = CoverPlan {
            result: data.clone(),
            stages: Vec::new(),
        };
        plan.push(name, true, data)?;
        Ok(plan)
    }

    fn push(&mut self, name: &str, elementary: bool, data: BranchingData) -> Result<(), SurfaceError> {
        let verdict = hurwitz_check(&data)?;
        self.stages.push(Stage {
            name: name.into(),
            elementary,
            data,
            verdict,
        });
        Ok(())
    }

    fn extend(&mut self, prefix: &str, other: &CoverPlan) {
        for s in &other.stages {
            let mut s = s.clone();
            s.name = format!("{prefix}{}", s.name);
            self.stages.push(s);
        }
    }

    /// Every elementary stage is realizable, so their composition is.
    pub fn realizable(&self) -> bool {
        self.stages
            .iter()
            .filter(|s| s.elementary)
            .all(|s| s.verdict.is_realizable())
    }

    /// Exact integer identities on every stage.
    pub fn arithmetic_ok(&self) -> bool {
        self.stages.iter().all(|s| s.data.sums_ok() && s.data.euler_ok())
    }
}

fn require_orientable(s: &SurfaceSig) -> Result<(), SurfaceError> {
    if s.orientable {
        Ok(())
    } else {
        Err(SurfaceError::NonOrientableUnsupported)
    }
}

/// Degree-2 or degree-4 cover of positive genus with a boundary circle of
/// degree 1 over `R1`.
pub fn plan_cor1(s: &SurfaceSig) -> Result<CoverPlan, SurfaceError> {
    plan_cor1_at(s, 0)
}

/// As [`plan_cor1`], with label `special` in the role of `R1`.
pub fn plan_cor1_at(s: &SurfaceSig, special: usize) -> Result<CoverPlan, SurfaceError> {
    require_orientable(s)?;
    let n = s.boundaries();
    if n == 0 {
        return Err(SurfaceError::HypothesisViolated("the surface has no boundary".into()));
    }
    if special >= n {
        return Err(SurfaceError::Invalid(format!("label index {special} out of range")));
    }
    let g = s.genus;
    let nn = n as u64;
    let data = if g >= 1 {
        BranchingData {
            base: s.clone(),
            degree: 2,
            data: vec![vec![1, 1]; n],
            cover_genus: 2 * g - 1,
        }
    } else if n < 3 {
        return Err(SurfaceError::HypothesisViolated(format!(
            "genus 0 needs at least 3 boundary components, found {n}"
        )));
    } else {
        let mut data = vec![vec![4]; n];
        data[special] = vec![1, 3];
        let cover_genus = if n % 2 == 1 {
            (3 * nn - 7) / 2
        } else {
            let second = (0..n).find(|&i| i != special).expect("n >= 3");
            data[second] = vec![1, 3];
            (3 * nn - 8) / 2
        };
        BranchingData {
            base: s.clone(),
            degree: 4,
            data,
            cover_genus,
        }
    };
    CoverPlan::single("cor1", data)
}

/// Cover of even degree, factoring through `phi`, whose boundary circles
/// all map with degree `m`.
///
/// Built as `phi ∘ sigma ∘ tau`: `sigma` is [`plan_cor1`] on the covering
/// surface of `phi`, and `tau` has degree `2m` and covers each boundary
/// `L_k` of degree `d_k` by `2 d_k` circles of degree `m / d_k`. Requires
/// `m` even and every `d_k` to divide `m`.
pub fn plan_corm(s: &SurfaceSig, phi: &BranchingData, m: u64) -> Result<CoverPlan, SurfaceError> {
    require_orientable(s)?;
    if &phi.base != s {
        return Err(SurfaceError::SignatureMismatch(
            "phi is not a cover of the given surface".into(),
        ));
    }
    if s.boundaries() == 0 {
        return Err(SurfaceError::HypothesisViolated("the surface has no boundary".into()));
    }
    if s.is_disc() {
        return Err(SurfaceError::HypothesisViolated("the surface is a disc".into()));
    }
    if m == 0 || m % 2 == 1 {
        return Err(SurfaceError::DivisibilityViolated(format!(
            "M = {m} must be even and positive"
        )));
    }
    let mut plan = CoverPlan {
        result: phi.clone(),
        stages: Vec::new(),
    };
    plan.push("phi", true, phi.clone())?;

    if s.is_annulus() {
        // annuli cover annuli; finish with a cyclic cover of the right degree
        let d = phi.degree;
        if !m.is_multiple_of(d) {
            return Err(SurfaceError::DivisibilityViolated(format!(
                "{d} does not divide M = {m}"
            )));
        }
        let tau = BranchingData {
            base: phi.cover_sig(),
            degree: m / d,
            data: vec![vec![m / d]; phi.cover_boundaries()],
            cover_genus: 0,
        };
        plan.push("tau", true, tau.clone())?;
        let psi = compose_branching(&tau, phi)?;
        plan.push("psi", false, psi.clone())?;
        plan.result = psi;
        return Ok(plan);
    }

    let sigma = plan_cor1(&phi.cover_sig())?;
    plan.extend("sigma.", &sigma);
    let phi_sigma = compose_branching(&sigma.result, phi)?;
    plan.push("phi.sigma", false, phi_sigma.clone())?;

    let ds: Vec<u64> = composite_degrees(&sigma.result, phi).into_iter().flatten().collect();
    if let Some(&bad) = ds.iter().find(|&&d| !m.is_multiple_of(d)) {
        return Err(SurfaceError::DivisibilityViolated(format!(
            "boundary degree {bad} does not divide M = {m}"
        )));
    }
    let s_prime = sigma.result.cover_sig();
    let genus = m as i128 * (2 * s_prime.genus as i128 + ds.len() as i128 - 2) - ds.iter().sum::<u64>() as i128 + 1;
    if genus < 0 {
        return Err(SurfaceError::HypothesisViolated(format!(
            "tau would need negative genus {genus}"
        )));
    }
    let tau = BranchingData {
        base: s_prime,
        degree: 2 * m,
        data: ds.iter().map(|&d| vec![m / d; 2 * d as usize]).collect(),
        cover_genus: genus as u64,
    };
    plan.push("tau", true, tau.clone())?;
    let psi = compose_branching(&tau, &phi_sigma)?;
    plan.push("psi", false, psi.clone())?;
    plan.result = psi;
    Ok(plan)
}

/// Cover factoring through `phi` with data
/// `(R1(1 × M/2, M/2, M × (d-1)), R2(M × d), ...)`.
pub fn plan_corm1(s: &SurfaceSig, phi: &BranchingData, m: u64) -> Result<CoverPlan, SurfaceError> {
    plan_corm1_at(s, phi, m, 0)
}

/// As [`plan_corm1`], with label `special` in the role of `R1`.
pub fn plan_corm1_at(s: &SurfaceSig, phi: &BranchingData, m: u64, special: usize) -> Result<CoverPlan, SurfaceError> {
    require_orientable(s)?;
    if &phi.base != s {
        return Err(SurfaceError::SignatureMismatch(
            "phi is not a cover of the given surface".into(),
        ));
    }
    let n = s.boundaries();
    if n == 0 {
        return Err(SurfaceError::HypothesisViolated("the surface has no boundary".into()));
    }
    if special >= n {
        return Err(SurfaceError::Invalid(format!("label index {special} out of range")));
    }
    if s.genus == 0 && n < 3 {
        return Err(SurfaceError::HypothesisViolated(format!(
            "genus 0 needs at least 3 boundary components, found {n}"
        )));
    }
    let d = phi.degree;
    if d % 2 == 1 {
        return Err(SurfaceError::HypothesisViolated(format!("phi has odd degree {d}")));
    }
    if phi.cover_genus == 0 {
        return Err(SurfaceError::HypothesisViolated("the cover of phi has genus 0".into()));
    }
    if phi.data[special].first() != Some(&1) {
        return Err(SurfaceError::HypothesisViolated(format!(
            "the first degree over {} is not 1",
            s.boundary_labels[special]
        )));
    }
    if m == 0 || !m.is_multiple_of(4) {
        return Err(SurfaceError::HypothesisViolated(format!("4 does not divide M = {m}")));
    }
    if let Some(&bad) = phi.data.iter().flatten().find(|&&x| !m.is_multiple_of(x)) {
        return Err(SurfaceError::HypothesisViolated(format!(
            "degree {bad} does not divide M = {m}"
        )));
    }

    let (g, nn, mm, dd) = (s.genus as i128, n as i128, m as i128, d as i128);
    let numerator = mm * (4 * dd * g + 2 * dd * (nn - 2) - 1) + 4 - 2 * dd * nn;
    if numerator % 4 != 0 || numerator < 0 {
        return Err(SurfaceError::Invalid(format!(
            "genus {numerator}/4 is not a non-negative integer"
        )));
    }
    let mut theta_data = Vec::new();
    for (i, ds) in phi.data.iter().enumerate() {
        for (j, &dij) in ds.iter().enumerate() {
            if i == special && j == 0 {
                let mut v = vec![1; (m / 2) as usize];
                v.push(m / 2);
                theta_data.push(v);
            } else {
                theta_data.push(vec![m / dij; dij as usize]);
            }
        }
    }
    let theta = BranchingData {
        base: phi.cover_sig(),
        degree: m,
        data: theta_data,
        cover_genus: (numerator / 4) as u64,
    };
    let mut plan = CoverPlan {
        result: phi.clone(),
        stages: Vec::new(),
    };
    plan.push("phi", true, phi.clone())?;
    plan.push("theta", true, theta.clone())?;
    let psi = compose_branching(&theta, phi)?;
    plan.push("psi", false, psi.clone())?;
    plan.result = psi;
    Ok(plan)
}

/// Conditions of the combined construction that concern hyperbolic
/// geometry and are not modelled.
pub const OUT_OF_SCOPE: [&str; 5] = ["a2", "a3", "b2", "b3", "b4"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeryTechnicalPlan {
    pub theta: CoverPlan,
    pub theta_i: Vec<CoverPlan>,
    /// Modulus needed by the uniform plan: lcm of 2 and its boundary degrees.
    pub modulus_uniform: u64,
    /// Modulus needed by the per-label plans: lcm of 4 and their degrees.
    pub modulus_special: u64,
    pub m0: u64,
    /// Number of degree-`M` circles over each label in the uniform plan.
    pub c: usize,
    /// Degree of the intermediate covers behind the per-label plans.
    pub d: u64,
    pub out_of_scope: Vec<String>,
}

/// The uniform plan `Θ` and the per-label plans `θ_i`, for `M` a multiple
/// of the computed `M0`.
pub fn plan_very_technical(s: &SurfaceSig, m: u64) -> Result<VeryTechnicalPlan, SurfaceError> {
    require_orientable(s)?;
    let n = s.boundaries();
    if n == 0 {
        return Err(SurfaceError::HypothesisViolated("the surface has no boundary".into()));
    }
    if s.euler_char() > -1 {
        return Err(SurfaceError::HypothesisViolated(format!(
            "Euler characteristic {} is not at most -1",
            s.euler_char()
        )));
    }
    let identity = BranchingData::identity(s);
    let sigma = plan_cor1(s)?;
    let modulus_uniform = sigma.result.data.iter().flatten().fold(2u64, |acc, &x| acc.lcm(&x));
    let mut phis = Vec::with_capacity(n);
    let mut modulus_special = 4u64;
    for i in 0..n {
        let phi = plan_cor1_at(s, i)?;
        modulus_special = phi
            .result
            .data
            .iter()
            .flatten()
            .fold(modulus_special, |acc, &x| acc.lcm(&x));
        phis.push(phi);
    }
    let m0 = modulus_uniform.lcm(&modulus_special);
    if m == 0 || !m.is_multiple_of(m0) {
        return Err(SurfaceError::NotMultipleOfM0 { m, m0 });
    }
    let theta = plan_corm(s, &identity, m)?;
    let mut theta_i = Vec::with_capacity(n);
    for (i, phi) in phis.iter().enumerate() {
        let mut plan = plan_corm1_at(s, &phi.result, m, i)?;
        plan.stages[0].name = "phi".into();
        theta_i.push(plan);
    }
    Ok(VeryTechnicalPlan {
        c: theta.result.data[0].len(),
        d: phis[0].result.degree,
        theta,
        theta_i,
        modulus_uniform,
        modulus_special,
        m0,
        out_of_scope: OUT_OF_SCOPE.iter().map(|s| s.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(g: u64, n: usize) -> SurfaceSig {
        SurfaceSig::orientable(g, n)
    }

    fn bd(s: &str) -> BranchingData {
        s.parse().unwrap()
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_char(&sig(1, 2)), -2);
        assert_eq!(euler_char(&sig(0, 3)), -1);
        let mut s = sig(2, 1);
        s.orientable = false;
        assert_eq!(euler_char(&s), -2);
    }

    #[test]
    fn text_round_trip() {
        let b = bd("base_genus=0 degree=4 cover_genus=1 (R1(1,3), R2(4), R3(4))");
        assert_eq!(b.data, vec![vec![1, 3], vec![4], vec![4]]);
        assert_eq!(b.to_string().parse::<BranchingData>().unwrap(), b);
        let err = "base_genus=0 degree=x cover_genus=1 (R1(1))"
            .parse::<BranchingData>()
            .unwrap_err();
        assert_eq!(err.position, 20);
    }

    #[test]
    fn hurwitz_examples() {
        let r = hurwitz_check(&bd("base_genus=1 degree=2 cover_genus=1 (R1(1,1), R2(1,1))")).unwrap();
        assert!(r.is_realizable());
        let r = hurwitz_check(&bd("base_genus=0 degree=4 cover_genus=1 (R1(1,3), R2(4), R3(4))")).unwrap();
        assert!(r.is_realizable());
        // six circles over a pair of pants at degree 2 would need genus -1
        for genus in 0..2 {
            let r = hurwitz_check(&bd(&format!(
                "base_genus=0 degree=2 cover_genus={genus} (R1(1,1), R2(1,1), R3(1,1))"
            )))
            .unwrap();
            assert!(matches!(r, Realizability::NotRealizable(_)));
        }
        let r = hurwitz_check(&bd("base_genus=0 degree=4 cover_genus=0 (R1(2,2), R2(2,2), R3(2,2))")).unwrap();
        assert!(matches!(r, Realizability::Unknown(_)));
        let mut b = bd("base_genus=1 degree=1 cover_genus=1 (R1(1))");
        b.base.orientable = false;
        assert_eq!(hurwitz_check(&b), Err(SurfaceError::NonOrientableUnsupported));
    }

    #[test]
    fn compose_examples() {
        let b = bd("base_genus=1 degree=2 cover_genus=1 (R1(1,1), R2(1,1))");
        let id = BranchingData::identity(&b.cover_sig());
        assert_eq!(compose_branching(&id, &b).unwrap(), b);

        let outer = plan_cor1(&b.cover_sig()).unwrap().result;
        let c = compose_branching(&outer, &b).unwrap();
        assert_eq!(c.degree, 4);
        assert_eq!(c.data, vec![vec![1, 1, 1, 1]; 2]);
        assert!(c.euler_ok() && c.sums_ok());

        let err = compose_branching(&b, &b).unwrap_err();
        assert!(matches!(err, SurfaceError::SignatureMismatch(_)));
    }

    #[test]
    fn cor1_cases() {
        let p = plan_cor1(&sig(1, 2)).unwrap().result;
        assert_eq!((p.degree, p.cover_genus), (2, 1));
        assert_eq!(p.data, vec![vec![1, 1], vec![1, 1]]);

        let p = plan_cor1(&sig(0, 3)).unwrap().result;
        assert_eq!((p.degree, p.cover_genus), (4, 1));
        assert_eq!(p.data, vec![vec![1, 3], vec![4], vec![4]]);

        let p = plan_cor1(&sig(0, 4)).unwrap().result;
        assert_eq!((p.degree, p.cover_genus), (4, 2));
        assert_eq!(p.data, vec![vec![1, 3], vec![1, 3], vec![4], vec![4]]);

        assert!(matches!(
            plan_cor1(&sig(0, 2)),
            Err(SurfaceError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn corm_examples() {
        // g(S') = 1 with two boundaries of degree 1: genus M(2 + 2 - 2) - 2 + 1
        let s = sig(1, 1);
        let plan = plan_corm(&s, &BranchingData::identity(&s), 4).unwrap();
        let tau = plan.stages.iter().find(|st| st.name == "tau").unwrap();
        assert_eq!(tau.data.base.genus, 1);
        assert_eq!(tau.data.cover_genus, 7);
        assert!(plan.result.data.iter().flatten().all(|&x| x == 4));
        assert_eq!(plan.result.degree % 2, 0);
        assert!(plan.realizable() && plan.arithmetic_ok());

        // a boundary of degree 2 gets 2·2 circles of degree M/2
        let s = sig(1, 1);
        let phi = bd("base_genus=1 degree=2 cover_genus=1 (R1(2))");
        let plan = plan_corm(&s, &phi, 4).unwrap();
        let tau = plan.stages.iter().find(|st| st.name == "tau").unwrap();
        assert!(tau.data.data.iter().all(|ds| ds == &vec![2, 2, 2, 2]));

        let err = plan_corm(&s, &BranchingData::identity(&s), 3).unwrap_err();
        assert!(matches!(err, SurfaceError::DivisibilityViolated(_)));
    }

    #[test]
    fn corm_annulus() {
        let s = sig(0, 2);
        let plan = plan_corm(&s, &BranchingData::identity(&s), 6).unwrap();
        assert_eq!(plan.result.data, vec![vec![6], vec![6]]);
        assert!(plan.realizable());
    }

    #[test]
    fn corm1_example() {
        let s = sig(1, 1);
        let phi = plan_cor1(&s).unwrap().result;
        let plan = plan_corm1(&s, &phi, 4).unwrap();
        assert_eq!(plan.result.cover_genus, 3);
        assert_eq!(plan.result.data, vec![vec![1, 1, 2, 4]]);
        assert_eq!(plan.result.degree, 8);
        assert_eq!(plan.result.cover_euler_char(), 8 * s.euler_char());
        assert!(plan.realizable());

        let err = plan_corm1(&s, &phi, 6).unwrap_err();
        assert!(matches!(err, SurfaceError::HypothesisViolated(_)));
    }

    #[test]
    fn very_technical_shapes() {
        let s = sig(0, 3);
        let err = plan_very_technical(&s, 6).unwrap_err();
        assert!(matches!(err, SurfaceError::NotMultipleOfM0 { .. }));
        let p = plan_very_technical(&s, p_m0(&s)).unwrap();
        let first = &p.theta.result.data[0];
        assert!(p.theta.result.data.iter().all(|ds| ds == first));
        let m = p.m0;
        for (i, plan) in p.theta_i.iter().enumerate() {
            for (j, ds) in plan.result.data.iter().enumerate() {
                if i == j {
                    let mut expected = vec![1; (m / 2) as usize];
                    expected.push(m / 2);
                    expected.extend(std::iter::repeat_n(m, p.d as usize - 1));
                    assert_eq!(ds, &expected);
                } else {
                    assert_eq!(ds, &vec![m; p.d as usize]);
                }
            }
        }
        assert_eq!(p.out_of_scope.len(), 5);
    }

    fn p_m0(s: &SurfaceSig) -> u64 {
        match plan_very_technical(s, 1) {
            Err(SurfaceError::NotMultipleOfM0 { m0, .. }) => m0,
            other => panic!("unexpected {other:?}"),
        }
    }
}
