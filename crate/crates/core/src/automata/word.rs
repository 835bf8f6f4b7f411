//! Words over a free basis with formal inverses.
//!
//! A letter is a nonzero signed generator index: `+i` is the generator
//! `x_i` and `-i` its inverse. Text form uses `a..z` for generators and
//! `A..Z` for inverses; ranks above 26 use the escapes `x27` / `X27`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Signed generator index; never zero.
pub type Letter = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    rank: usize,
}

impl Alphabet {
    pub fn new(rank: usize) -> Option<Self> {
        (rank >= 1).then_some(Alphabet { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter != 0 && letter.unsigned_abs() as usize <= self.rank
    }

    /// All `2n` signed letters, positive first: `1, -1, 2, -2, ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (1..=self.rank as Letter).flat_map(|g| [g, -g])
    }

    /// Parses a word and checks every letter against this alphabet.
    pub fn parse_word(&self, s: &str) -> Result<Word, ParseError> {
        let w: Word = s.parse()?;
        if let Some(pos) = w.letters().iter().position(|&l| !self.contains(l)) {
            return Err(ParseError::at(pos, format!("letter outside rank {}", self.rank)));
        }
        Ok(w)
    }

    /// Parses a comma-separated subgroup specification such as `ab,AAb`.
    /// Empty entries and words that reduce to the identity are dropped.
    pub fn parse_generators(&self, text: &str) -> Result<Vec<Word>, ParseError> {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in text.split(',') {
            let trimmed = part.trim();
            if !trimmed.is_empty() {
                let lead = part.len() - part.trim_start().len();
                let w = self
                    .parse_word(trimmed)
                    .map_err(|e| e.shifted(offset + lead))?
                    .reduced();
                if !w.is_empty() {
                    out.push(w);
                }
            }
            offset += part.len() + 1;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        assert!(letters.iter().all(|&l| l != 0), "zero is not a letter");
        Word(letters)
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![index as Letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Free reduction by a single left-to-right stack pass.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != -p[1])
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Splits a reduced word as `u · c · u⁻¹` with `c` cyclically reduced.
    /// Returns `(u, c)`.
    pub fn cyclic_reduction(&self) -> (Word, Word) {
        let w = self.reduced();
        let l = &w.0;
        let mut k = 0;
        while k < l.len() / 2 && l[k] == -l[l.len() - 1 - k] {
            k += 1;
        }
        (Word(l[..k].to_vec()), Word(l[k..l.len() - k].to_vec()))
    }

    /// `g⁻¹ · self · g`, reduced.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        &(&g.inverse() * self) * g
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        Word(letters).reduced()
    }
}

impl Mul for &Word {
    type Output = Word;

    /// Concatenation followed by free reduction.
    fn mul(self, rhs: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&rhs.0);
        Word(letters).reduced()
    }
}

fn letter_text(l: Letter, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let g = l.unsigned_abs();
    if g <= 26 {
        let base = if l > 0 { b'a' } else { b'A' };
        write!(f, "{}", (base + (g - 1) as u8) as char)
    } else if l > 0 {
        write!(f, "x{g}")
    } else {
        write!(f, "X{g}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            letter_text(l, f)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    /// Accepts letters, the `x<k>`/`X<k>` escapes, and `1` or `ε` for the
    /// empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "ε" {
            return Ok(Word::identity());
        }
        let chars: Vec<char> = s.chars().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if (c == 'x' || c == 'X') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                let start = i;
                i += 1;
                let mut value: u64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    value = value * 10 + chars[i].to_digit(10).unwrap() as u64;
                    if value > i32::MAX as u64 {
                        return Err(ParseError::at(start, "generator index too large"));
                    }
                    i += 1;
                }
                if value == 0 {
                    return Err(ParseError::at(start, "generator index must be positive"));
                }
                let v = value as Letter;
                letters.push(if c == 'x' { v } else { -v });
                continue;
            }
            let l = match c {
                'a'..='z' => (c as u8 - b'a' + 1) as Letter,
                'A'..='Z' => -((c as u8 - b'A' + 1) as Letter),
                _ => return Err(ParseError::at(i, format!("unexpected character {c:?}"))),
            };
            letters.push(l);
            i += 1;
        }
        Ok(Word(letters))
    }
}
