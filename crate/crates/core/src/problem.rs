//! Binary labeling problems, their equivalence maps and resilience.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProblemError {
    #[error("malformed problem text: {0}")]
    Syntax(String),
    #[error("invalid bit '{0}' in constraint (expected 0 or 1)")]
    InvalidBit(char),
    #[error("{side} constraint has length {got}, expected {expected}")]
    LengthMismatch {
        side: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("degree {0} is below the minimum of 2")]
    DegreeTooSmall(usize),
    #[error("invalid resilience query (t={t}, s={s}) for degrees ({d}, {delta})")]
    InvalidResilience {
        t: usize,
        s: usize,
        d: usize,
        delta: usize,
    },
}

/// Bit vector indexed by X-degree: bit `i` is set when degree `i` is allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint(Vec<bool>);

impl Constraint {
    pub fn new(bits: Vec<bool>) -> Self {
        Constraint(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Constraint(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        Constraint(vec![true; len])
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest admissible degree index, i.e. the node degree this constraint is written for.
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn allows(&self, k: usize) -> bool {
        self.0.get(k).copied().unwrap_or(false)
    }

    pub fn set(&mut self, k: usize, value: bool) {
        self.0[k] = value;
    }

    pub fn first(&self) -> bool {
        self.0[0]
    }

    pub fn last(&self) -> bool {
        self.0[self.0.len() - 1]
    }

    pub fn all_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }

    pub fn all_one(&self) -> bool {
        self.0.iter().all(|b| *b)
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn reversed(&self) -> Self {
        Constraint(self.0.iter().rev().copied().collect())
    }

    /// True when two consecutive degrees are both allowed.
    pub fn has_escape(&self) -> bool {
        self.0.windows(2).any(|w| w[0] && w[1])
    }

    /// Length of the longest run of disallowed degrees.
    pub fn longest_zero_run(&self) -> usize {
        let mut best = 0;
        let mut cur = 0;
        for &b in &self.0 {
            if b {
                cur = 0;
            } else {
                cur += 1;
                best = best.max(cur);
            }
        }
        best
    }

    /// Componentwise `self <= other`.
    pub fn is_subset_of(&self, other: &Constraint) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| !a || *b)
    }

    /// Matches a pattern string over `0`, `1` and the wildcard `x`.
    pub fn matches(&self, pattern: &str) -> bool {
        pattern.len() == self.len()
            && pattern.chars().zip(&self.0).all(|(c, b)| match c {
                '0' => !b,
                '1' => *b,
                _ => true,
            })
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Constraint {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ProblemError::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Constraint)
    }
}

impl Serialize for Constraint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Constraint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Binary labeling problem on two-colored trees.
///
/// A white node of degree exactly `d` must have an X-degree `k` with `white[k]`
/// set; a black node of degree exactly `delta` likewise with `black`. Nodes of
/// any other degree are unconstrained.
///
/// The derived ordering compares `(d, delta, white, black)` lexicographically
/// with `0 < 1`, which is the order used to pick canonical representatives.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BinaryProblem {
    pub d: usize,
    pub delta: usize,
    #[serde(rename = "W")]
    pub white: Constraint,
    #[serde(rename = "B")]
    pub black: Constraint,
}

#[derive(Deserialize)]
struct RawProblem {
    d: usize,
    delta: usize,
    #[serde(rename = "W")]
    white: String,
    #[serde(rename = "B")]
    black: String,
}

impl<'de> Deserialize<'de> for BinaryProblem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawProblem::deserialize(deserializer)?;
        BinaryProblem::from_parts(raw.d, raw.delta, &raw.white, &raw.black)
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for BinaryProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BinaryProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={},delta={},W={},B={}",
            self.d, self.delta, self.white, self.black
        )
    }
}

impl BinaryProblem {
    pub fn new(
        d: usize,
        delta: usize,
        white: Constraint,
        black: Constraint,
    ) -> Result<Self, ProblemError> {
        for deg in [d, delta] {
            if deg < 2 {
                return Err(ProblemError::DegreeTooSmall(deg));
            }
        }
        if white.len() != d + 1 {
            return Err(ProblemError::LengthMismatch {
                side: "W",
                got: white.len(),
                expected: d + 1,
            });
        }
        if black.len() != delta + 1 {
            return Err(ProblemError::LengthMismatch {
                side: "B",
                got: black.len(),
                expected: delta + 1,
            });
        }
        Ok(BinaryProblem {
            d,
            delta,
            white,
            black,
        })
    }

    pub fn from_parts(d: usize, delta: usize, w: &str, b: &str) -> Result<Self, ProblemError> {
        Self::new(d, delta, w.parse()?, b.parse()?)
    }

    /// Parses the inline form `d=3,delta=2,W=1110,B=010` or a JSON document.
    pub fn parse(text: &str) -> Result<Self, ProblemError> {
        let t = text.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| ProblemError::Syntax(e.to_string()));
        }
        let mut d = None;
        let mut delta = None;
        let mut w = None;
        let mut b = None;
        for part in t.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| ProblemError::Syntax(format!("expected key=value, got '{part}'")))?;
            let value = value.trim();
            let number = || {
                value
                    .parse::<usize>()
                    .map_err(|_| ProblemError::Syntax(format!("bad degree '{value}'")))
            };
            match key.trim() {
                "d" => d = Some(number()?),
                "delta" => delta = Some(number()?),
                "W" | "w" => w = Some(value.to_string()),
                "B" | "b" => b = Some(value.to_string()),
                other => return Err(ProblemError::Syntax(format!("unknown key '{other}'"))),
            }
        }
        let missing = |k: &str| ProblemError::Syntax(format!("missing '{k}'"));
        Self::from_parts(
            d.ok_or_else(|| missing("d"))?,
            delta.ok_or_else(|| missing("delta"))?,
            &w.ok_or_else(|| missing("W"))?,
            &b.ok_or_else(|| missing("B"))?,
        )
    }

    pub fn constraint(&self, color: crate::Color) -> &Constraint {
        match color {
            crate::Color::White => &self.white,
            crate::Color::Black => &self.black,
        }
    }

    pub fn degree(&self, color: crate::Color) -> usize {
        match color {
            crate::Color::White => self.d,
            crate::Color::Black => self.delta,
        }
    }

    /// Every problem with the given degrees, in counter order.
    pub fn enumerate(d: usize, delta: usize) -> impl Iterator<Item = BinaryProblem> {
        let wn = 1u64 << (d + 1);
        let bn = 1u64 << (delta + 1);
        (0..wn).flat_map(move |wm| {
            (0..bn).map(move |bm| BinaryProblem {
                d,
                delta,
                white: bits_from_mask(wm, d + 1),
                black: bits_from_mask(bm, delta + 1),
            })
        })
    }

    pub fn apply(&self, map: EquivMap) -> BinaryProblem {
        match map {
            EquivMap::Identity => self.clone(),
            EquivMap::SwapColors => BinaryProblem {
                d: self.delta,
                delta: self.d,
                white: self.black.clone(),
                black: self.white.clone(),
            },
            EquivMap::Complement => BinaryProblem {
                d: self.d,
                delta: self.delta,
                white: self.white.reversed(),
                black: self.black.reversed(),
            },
            EquivMap::SwapComplement => BinaryProblem {
                d: self.delta,
                delta: self.d,
                white: self.black.reversed(),
                black: self.white.reversed(),
            },
        }
    }

    /// The (at most four) problems reachable by color swap and complement.
    pub fn equivalents(&self) -> EquivClass {
        let members: BTreeSet<BinaryProblem> = EquivMap::ALL.iter().map(|m| self.apply(*m)).collect();
        let canonical = members.iter().next().cloned().expect("non-empty class");
        EquivClass { members, canonical }
    }

    /// True when `self` is a restriction of `other`: same degrees, each allowed
    /// X-degree of `self` also allowed in `other`. Solutions of `self` then solve `other`.
    pub fn is_restriction_of(&self, other: &BinaryProblem) -> bool {
        self.d == other.d
            && self.delta == other.delta
            && self.white.is_subset_of(&other.white)
            && self.black.is_subset_of(&other.black)
    }

    /// Decided by the longest run of disallowed degrees on each side.
    pub fn is_resilient(&self, query: ResilienceQuery) -> Result<bool, ProblemError> {
        query.check(self)?;
        Ok(self.white.longest_zero_run() < self.d - query.t + 1
            && self.black.longest_zero_run() < self.delta - query.s + 1)
    }
}

pub(crate) fn bits_from_mask(mask: u64, len: usize) -> Constraint {
    Constraint((0..len).map(|i| mask >> (len - 1 - i) & 1 == 1).collect())
}

/// Color swap and complement. Each is an involution and they commute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivMap {
    Identity,
    SwapColors,
    Complement,
    SwapComplement,
}

impl EquivMap {
    pub const ALL: [EquivMap; 4] = [
        EquivMap::Identity,
        EquivMap::SwapColors,
        EquivMap::Complement,
        EquivMap::SwapComplement,
    ];

    pub fn swaps_colors(self) -> bool {
        matches!(self, EquivMap::SwapColors | EquivMap::SwapComplement)
    }

    pub fn complements(self) -> bool {
        matches!(self, EquivMap::Complement | EquivMap::SwapComplement)
    }

    pub fn compose(self, other: EquivMap) -> EquivMap {
        Self::from_flags(
            self.swaps_colors() ^ other.swaps_colors(),
            self.complements() ^ other.complements(),
        )
    }

    fn from_flags(swap: bool, complement: bool) -> EquivMap {
        match (swap, complement) {
            (false, false) => EquivMap::Identity,
            (true, false) => EquivMap::SwapColors,
            (false, true) => EquivMap::Complement,
            (true, true) => EquivMap::SwapComplement,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivClass {
    pub members: BTreeSet<BinaryProblem>,
    pub canonical: BinaryProblem,
}

/// A (t, s)-resilience question: can any t fixed white ports and any s fixed
/// black ports always be completed to a valid local labeling?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResilienceQuery {
    pub t: usize,
    pub s: usize,
}

impl ResilienceQuery {
    pub fn new(t: usize, s: usize) -> Self {
        ResilienceQuery { t, s }
    }

    pub fn check(&self, p: &BinaryProblem) -> Result<(), ProblemError> {
        if self.t <= p.d && self.s <= p.delta {
            Ok(())
        } else {
            Err(ProblemError::InvalidResilience {
                t: self.t,
                s: self.s,
                d: p.d,
                delta: p.delta,
            })
        }
    }
}

/// Number of additional ones to place on the free ports of a node whose
/// `fixed_total` fixed ports already carry `fixed_ones` ones. Picks the least
/// reachable allowed degree; `None` when no allowed degree is reachable.
pub fn complete_labeling(
    constraint: &Constraint,
    fixed_ones: usize,
    fixed_total: usize,
) -> Option<usize> {
    let k = constraint.degree();
    if fixed_ones > fixed_total || fixed_total > k {
        return None;
    }
    let hi = k - (fixed_total - fixed_ones);
    (fixed_ones..=hi)
        .find(|&j| constraint.allows(j))
        .map(|j| j - fixed_ones)
}

/// Whether the problem has an escape on either side.
pub fn has_escape(p: &BinaryProblem) -> bool {
    p.white.has_escape() || p.black.has_escape()
}
