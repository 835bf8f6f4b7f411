//! Flat `key = value` configuration for an assembly run.
//!
//! ```text
//! n = 2
//! M = 3
//! N = 2
//! N' = 0
//! N'' = 0
//! T = 3
//! A = genus 1
//! region.1 = genus 1 (R1)
//! B.1 = base_genus=1 degree=9 cover_genus=3 (R1(1,1,1,3,3))
//! A_M = ...        A_2M = ...
//! B_M.<region> = ...   B_2M.<region> = ...
//! ```
//!
//! `#` starts a comment. Piece values are branching data over `A` or over a
//! region, in the text form of [`BranchingData`].

use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{Decomposition, Region};
use super::steps::{AssemblyParams, TopPieces};
use crate::error::ParseError;
use crate::surface::BranchingData;

pub const FIGURE_TWO: &str = include_str!("../../examples/data/figure2.conf");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssemblyConfig {
    pub decomposition: Decomposition,
    pub params: AssemblyParams,
    /// `B_1..B_n`.
    pub b: Vec<BranchingData>,
    pub tops: TopPieces,
}

struct Entry<'a> {
    value: &'a str,
    offset: usize,
}

impl AssemblyConfig {
    pub fn figure_two() -> AssemblyConfig {
        FIGURE_TWO.parse().expect("bundled configuration parses")
    }
}

fn number<T: std::str::FromStr>(e: &Entry, key: &str) -> Result<T, ParseError> {
    e.value
        .parse()
        .map_err(|_| ParseError::at(e.offset, format!("{key}: {:?} is not a non-negative integer", e.value)))
}

/// `genus <g>` optionally followed by `(R1, R3, ...)`.
fn region(e: &Entry, n: usize) -> Result<(u64, Vec<usize>), ParseError> {
    let (head, labels) = match e.value.split_once('(') {
        Some((h, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| ParseError::at(e.offset, "unclosed label list"))?;
            let mut ls = Vec::new();
            for l in inner.split(',') {
                let l = l.trim();
                let k: usize = l
                    .strip_prefix('R')
                    .and_then(|k| k.parse().ok())
                    .filter(|&k| k >= 1 && k <= n)
                    .ok_or_else(|| ParseError::at(e.offset, format!("bad boundary label {l:?}")))?;
                ls.push(k - 1);
            }
            (h, ls)
        }
        None => (e.value, Vec::new()),
    };
    let g = head
        .trim()
        .strip_prefix("genus")
        .and_then(|g| g.trim().parse().ok())
        .ok_or_else(|| ParseError::at(e.offset, "expected `genus <g>`"))?;
    Ok((g, labels))
}

fn data(e: &Entry) -> Result<BranchingData, ParseError> {
    e.value.parse::<BranchingData>().map_err(|err| ParseError {
        position: e.offset + err.position,
        message: err.message,
    })
}

impl std::str::FromStr for AssemblyConfig {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut entries: BTreeMap<&str, Entry> = BTreeMap::new();
        let mut offset = 0;
        for line in s.split_inclusive('\n') {
            let body = line.split('#').next().unwrap_or("");
            if !body.trim().is_empty() {
                let (k, v) = body
                    .split_once('=')
                    .ok_or_else(|| ParseError::at(offset, "expected `key = value`"))?;
                let value = v.trim();
                let entry = Entry {
                    value,
                    offset: offset + k.len() + 1 + (v.len() - v.trim_start().len()),
                };
                if entries.insert(k.trim(), entry).is_some() {
                    return Err(ParseError::at(offset, format!("duplicate key {:?}", k.trim())));
                }
            }
            offset += line.len();
        }
        let mut take = |k: &str| {
            entries
                .remove(k)
                .ok_or_else(|| ParseError::at(s.len(), format!("missing key {k:?}")))
        };

        let n: usize = number(&take("n")?, "n")?;
        let params = AssemblyParams {
            n,
            m: number(&take("M")?, "M")?,
            big_n: number(&take("N")?, "N")?,
            n_prime: number(&take("N'")?, "N'")?,
            n_double_prime: number(&take("N''")?, "N''")?,
            t: number(&take("T")?, "T")?,
        };
        let (a_genus, _) = region(&take("A")?, n)?;
        let mut regions = Vec::new();
        while let Ok(e) = take(&format!("region.{}", regions.len() + 1)) {
            let (genus, labels) = region(&e, n)?;
            regions.push(Region { genus, labels });
        }
        let b = (1..=n)
            .map(|i| data(&take(&format!("B.{i}"))?))
            .collect::<Result<Vec<_>, _>>()?;
        let mut optional = |k: &str| take(k).ok().map(|e| data(&e)).transpose();
        let tops = TopPieces {
            a_m: optional("A_M")?,
            a_2m: optional("A_2M")?,
            b_m: (1..=regions.len())
                .map(|r| optional(&format!("B_M.{r}")))
                .collect::<Result<_, _>>()?,
            b_2m: (1..=regions.len())
                .map(|r| optional(&format!("B_2M.{r}")))
                .collect::<Result<_, _>>()?,
        };
        if let Some((k, e)) = entries.iter().next() {
            return Err(ParseError::at(e.offset, format!("unknown key {k:?}")));
        }
        Ok(AssemblyConfig {
            decomposition: Decomposition { a_genus, n, regions },
            params,
            b,
            tops,
        })
    }
}
