//! Deterministic and randomized complexity classification.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::problem::{BinaryProblem, Constraint, EquivMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("problem {0} is unsolvable and has no randomized complexity")]
    Unsolvable(BinaryProblem),
    #[error("problem {0} is not in the logarithmic class")]
    NotLogarithmic(BinaryProblem),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    #[serde(rename = "I.a")]
    IA,
    #[serde(rename = "I.b")]
    IB,
    #[serde(rename = "I.c")]
    IC,
    #[serde(rename = "I.d")]
    ID,
    #[serde(rename = "II.a")]
    IIA,
    #[serde(rename = "II.b")]
    IIB,
    #[serde(rename = "III.a")]
    IIIA,
    #[serde(rename = "III.b")]
    IIIB,
    #[serde(rename = "IV.a")]
    IVA,
    #[serde(rename = "IV.b")]
    IVB,
    #[serde(rename = "V.a")]
    VA,
    #[serde(rename = "V.b")]
    VB,
    #[serde(rename = "VI.a")]
    VIA,
    #[serde(rename = "VI.b")]
    VIB,
    #[serde(rename = "VII")]
    VII,
}

impl Family {
    /// Pattern families in table order; `VII` is the fallback and not listed.
    pub const PATTERNS: [Family; 14] = [
        Family::IA,
        Family::IB,
        Family::IC,
        Family::ID,
        Family::IIA,
        Family::IIB,
        Family::IIIA,
        Family::IIIB,
        Family::IVA,
        Family::IVB,
        Family::VA,
        Family::VB,
        Family::VIA,
        Family::VIB,
    ];

    pub fn complexity(self) -> Complexity {
        use Family::*;
        match self {
            IA | IB | IC | ID | IIA | IIB => Complexity::Unsolvable,
            IIIA | IIIB | IVA | IVB => Complexity::Constant,
            VA | VB | VIA | VIB => Complexity::Global,
            VII => Complexity::Logarithmic,
        }
    }

    pub fn tag(self) -> &'static str {
        use Family::*;
        match self {
            IA => "I.a",
            IB => "I.b",
            IC => "I.c",
            ID => "I.d",
            IIA => "II.a",
            IIB => "II.b",
            IIIA => "III.a",
            IIIB => "III.b",
            IVA => "IV.a",
            IVB => "IV.b",
            VA => "V.a",
            VB => "V.b",
            VIA => "VI.a",
            VIB => "VI.b",
            VII => "VII",
        }
    }

    /// Does the problem match this family's pattern? `VII` never matches directly.
    pub fn matches(self, p: &BinaryProblem) -> bool {
        use Family::*;
        let (w, b, d, delta) = (&p.white, &p.black, p.d, p.delta);
        match self {
            IA => w.matches(&one_then_zeros(d)) && !b.first(),
            IB => w.matches(&zeros_then_one(d)) && !b.last(),
            IC => !w.first() && b.matches(&one_then_zeros(delta)),
            ID => !w.last() && b.matches(&zeros_then_one(delta)),
            IIA => w.all_zero(),
            IIB => b.all_zero(),
            IIIA => !w.all_zero() && b.all_one(),
            IIIB => w.all_one() && !b.all_zero(),
            IVA => w.first() && b.first(),
            IVB => w.last() && b.last(),
            VA => delta == 2 && w.matches(&ends_only(d)) && b.matches("010"),
            VB => d == 2 && w.matches("010") && b.matches(&ends_only(delta)),
            VIA => {
                w.matches(&format!("{}1x", "0".repeat(d - 1)))
                    && b.matches(&format!("x1{}", "0".repeat(delta - 1)))
            }
            VIB => {
                w.matches(&format!("x1{}", "0".repeat(d - 1)))
                    && b.matches(&format!("{}1x", "0".repeat(delta - 1)))
            }
            VII => false,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn one_then_zeros(k: usize) -> String {
    format!("1{}", "0".repeat(k))
}

fn zeros_then_one(k: usize) -> String {
    format!("{}1", "0".repeat(k))
}

fn ends_only(k: usize) -> String {
    format!("1{}1", "0".repeat(k - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Complexity {
    Unsolvable,
    Constant,
    Logarithmic,
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub complexity: Complexity,
    pub primary_family: Family,
    pub matched_families: Vec<Family>,
}

/// Classifies by scanning the family table in order; the first match wins.
pub fn classify(p: &BinaryProblem) -> Classification {
    let matched: Vec<Family> = Family::PATTERNS
        .iter()
        .copied()
        .filter(|f| f.matches(p))
        .collect();
    let primary = matched.first().copied().unwrap_or(Family::VII);
    Classification {
        complexity: primary.complexity(),
        primary_family: primary,
        matched_families: if matched.is_empty() {
            vec![Family::VII]
        } else {
            matched
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum RandomizedComplexity {
    Constant,
    LogLog,
    Log,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandomizedBounds {
    pub lower: RandomizedComplexity,
    pub upper: RandomizedComplexity,
    pub justification: Vec<String>,
}

pub const TAG_NO_ESCAPE: &str = "no-escape-propagation";
pub const TAG_INDEPENDENT_SET: &str = "independent-set-pattern";
pub const TAG_CUT: &str = "cut-pattern";
pub const TAG_FORBIDDEN_DEGREE: &str = "forbidden-degree-relaxation";

/// Smallest white degree for which the independent-set style pattern is known hard.
pub const INDEPENDENT_SET_MIN_DEGREE: usize = 20;

pub fn randomized_bounds(p: &BinaryProblem) -> Result<RandomizedBounds, ClassifyError> {
    use RandomizedComplexity::*;
    let c = classify(p);
    let (lower, upper, justification) = match c.complexity {
        Complexity::Unsolvable => return Err(ClassifyError::Unsolvable(p.clone())),
        Complexity::Constant => (Constant, Constant, vec!["constant-class".to_string()]),
        Complexity::Global => (Linear, Linear, vec!["global-class".to_string()]),
        Complexity::Logarithmic => {
            let mut tags = Vec::new();
            if !p.white.has_escape() && !p.black.has_escape() {
                tags.push(TAG_NO_ESCAPE.to_string());
            }
            let class = p.equivalents();
            if class.members.iter().any(matches_independent_set_pattern) {
                tags.push(TAG_INDEPENDENT_SET.to_string());
            }
            if class.members.iter().any(matches_cut_pattern) {
                tags.push(TAG_CUT.to_string());
            }
            if tags.is_empty() {
                (LogLog, Log, vec![TAG_FORBIDDEN_DEGREE.to_string()])
            } else {
                (Log, Log, tags)
            }
        }
    };
    Ok(RandomizedBounds {
        lower,
        upper,
        justification,
    })
}

/// `W = 1 1 0^(d-2) 1`, `B = 010`, with `d` large enough.
pub fn matches_independent_set_pattern(p: &BinaryProblem) -> bool {
    p.d >= INDEPENDENT_SET_MIN_DEGREE
        && p.black.matches("010")
        && p.white.matches(&format!("11{}1", "0".repeat(p.d - 2)))
}

/// `W = 1^(r+1) 0^(d-2r-1) 1^(r+1)`, `B = 010`, with `r < d/4 - sqrt(d-1)/2`.
pub fn matches_cut_pattern(p: &BinaryProblem) -> bool {
    if !p.black.matches("010") {
        return false;
    }
    let d = p.d;
    (0..d).any(|r| {
        2 * r + 2 <= d
            && cut_radius_ok(d, r)
            && p.white.matches(&format!(
                "{}{}{}",
                "1".repeat(r + 1),
                "0".repeat(d - 2 * r - 1),
                "1".repeat(r + 1)
            ))
    })
}

/// Exact integer form of `r < d/4 - sqrt(d-1)/2`, i.e. `2 sqrt(d-1) < d - 4r`.
pub fn cut_radius_ok(d: usize, r: usize) -> bool {
    let gap = d as i64 - 4 * r as i64;
    gap > 0 && 4 * (d as i64 - 1) < gap * gap
}

/// Names of the two relaxation targets for logarithmic problems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetKind {
    /// Bipartite sinkless orientation: `W = 1^d 0`, `B = 0 1^delta`.
    SinklessOrientation,
    /// `W` all ones except at `forbidden`; `B = 0 1^(delta-1) 0`.
    ForbiddenDegree { forbidden: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    White,
    Black,
}

/// A relaxation of a logarithmic problem onto one of the target problems.
///
/// Apply `equivalence` first, then set the listed bits (all zero beforehand)
/// to one; the result is exactly `target_problem`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelaxationTarget {
    pub kind: TargetKind,
    pub equivalence: EquivMap,
    pub flipped_bits: Vec<(Side, usize)>,
    pub target_problem: BinaryProblem,
}

pub fn sinkless_orientation(d: usize, delta: usize) -> BinaryProblem {
    let mut w = Constraint::ones(d + 1);
    w.set(d, false);
    let mut b = Constraint::ones(delta + 1);
    b.set(0, false);
    BinaryProblem::new(d, delta, w, b).expect("degrees at least 2")
}

pub fn forbidden_degree(d: usize, delta: usize, forbidden: usize) -> BinaryProblem {
    let mut w = Constraint::ones(d + 1);
    w.set(forbidden, false);
    let mut b = Constraint::ones(delta + 1);
    b.set(0, false);
    b.set(delta, false);
    BinaryProblem::new(d, delta, w, b).expect("degrees at least 2")
}

pub fn relaxation_target(p: &BinaryProblem) -> Result<RelaxationTarget, ClassifyError> {
    if classify(p).complexity != Complexity::Logarithmic {
        return Err(ClassifyError::NotLogarithmic(p.clone()));
    }
    let (w, b) = (&p.white, &p.black);
    let (equivalence, kind) = if !w.first() && !b.last() {
        (EquivMap::Complement, TargetKind::SinklessOrientation)
    } else if !w.last() && !b.first() {
        (EquivMap::Identity, TargetKind::SinklessOrientation)
    } else if w.first() && w.last() {
        let i = (1..p.d).find(|&i| !w.allows(i)).expect("not all ones");
        (EquivMap::Identity, TargetKind::ForbiddenDegree { forbidden: i })
    } else {
        let i = (1..p.delta).find(|&i| !b.allows(i)).expect("not all ones");
        (EquivMap::SwapColors, TargetKind::ForbiddenDegree { forbidden: i })
    };
    let q = p.apply(equivalence);
    let target = match kind {
        TargetKind::SinklessOrientation => sinkless_orientation(q.d, q.delta),
        TargetKind::ForbiddenDegree { forbidden } => forbidden_degree(q.d, q.delta, forbidden),
    };
    let mut flipped = Vec::new();
    for (side, have, want) in [
        (Side::White, &q.white, &target.white),
        (Side::Black, &q.black, &target.black),
    ] {
        for (i, (h, t)) in have.bits().iter().zip(want.bits()).enumerate() {
            assert!(*h <= *t, "relaxation must only add allowed degrees");
            if h != t {
                flipped.push((side, i));
            }
        }
    }
    Ok(RelaxationTarget {
        kind,
        equivalence,
        flipped_bits: flipped,
        target_problem: target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinaryProblem {
        BinaryProblem::parse(s).unwrap()
    }

    fn fam(s: &str) -> Family {
        classify(&p(s)).primary_family
    }

    #[test]
    fn table_of_examples() {
        assert_eq!(fam("d=3,delta=2,W=0111,B=100"), Family::IC);
        assert_eq!(fam("d=4,delta=2,W=00100,B=111"), Family::IIIA);
        assert_eq!(fam("d=3,delta=2,W=1001,B=010"), Family::VA);
        for s in [
            "d=4,delta=4,W=01110,B=01110",
            "d=3,delta=2,W=1110,B=010",
            "d=3,delta=2,W=0110,B=010",
            "d=3,delta=2,W=1010,B=010",
            "d=3,delta=2,W=0100,B=101",
            "d=3,delta=2,W=0110,B=101",
        ] {
            assert_eq!(fam(s), Family::VII, "{s}");
        }
    }

    #[test]
    fn operation_examples() {
        assert_eq!(fam("d=2,delta=2,W=011,B=111"), Family::IIIA);
        assert_eq!(classify(&p("d=2,delta=2,W=011,B=111")).complexity, Complexity::Constant);
        assert_eq!(fam("d=2,delta=2,W=011,B=110"), Family::VIA);
        assert_eq!(fam("d=2,delta=2,W=010,B=011"), Family::VIB);
        assert_eq!(fam("d=3,delta=2,W=0000,B=010"), Family::IIA);
        assert_eq!(fam("d=2,delta=2,W=101,B=011"), Family::IVB);
    }

    #[test]
    fn first_match_wins_but_all_are_reported() {
        let c = classify(&p("d=2,delta=2,W=111,B=111"));
        assert_eq!(c.primary_family, Family::IIIA);
        assert_eq!(
            c.matched_families,
            vec![Family::IIIA, Family::IIIB, Family::IVA, Family::IVB]
        );
    }

    #[test]
    fn randomized_examples() {
        use RandomizedComplexity::*;
        let so = randomized_bounds(&p("d=3,delta=2,W=1110,B=010")).unwrap();
        assert_eq!((so.lower, so.upper), (LogLog, Log));
        assert_eq!(so.justification, vec![TAG_FORBIDDEN_DEGREE]);
        let even = randomized_bounds(&p("d=3,delta=2,W=1010,B=010")).unwrap();
        assert_eq!((even.lower, even.upper), (Log, Log));
        assert!(even.justification.contains(&TAG_NO_ESCAPE.to_string()));
        let glob = randomized_bounds(&p("d=3,delta=2,W=1001,B=010")).unwrap();
        assert_eq!((glob.lower, glob.upper), (Linear, Linear));
        assert!(randomized_bounds(&p("d=3,delta=2,W=0000,B=010")).is_err());
    }

    #[test]
    fn independent_set_pattern_needs_large_degree() {
        let w = |d: usize| format!("11{}1", "0".repeat(d - 2));
        let big = p(&format!("d=20,delta=2,W={},B=010", w(20)));
        assert_eq!(classify(&big).complexity, Complexity::Logarithmic);
        let r = randomized_bounds(&big).unwrap();
        assert_eq!(r.lower, RandomizedComplexity::Log);
        assert!(r.justification.contains(&TAG_INDEPENDENT_SET.to_string()));
        let small = p(&format!("d=19,delta=2,W={},B=010", w(19)));
        assert!(!randomized_bounds(&small)
            .unwrap()
            .justification
            .contains(&TAG_INDEPENDENT_SET.to_string()));
    }

    #[test]
    fn cut_radius_matches_real_arithmetic() {
        for d in 2..200usize {
            for r in 0..d {
                let real = (r as f64) < d as f64 / 4.0 - ((d - 1) as f64).sqrt() / 2.0;
                assert_eq!(cut_radius_ok(d, r), real, "d={d} r={r}");
            }
        }
    }

    #[test]
    fn cut_pattern_detected_through_equivalence() {
        // d = 10, r = 0: 10/4 - 3/2 = 1 > 0.
        let q = p("d=10,delta=2,W=10000000001,B=010");
        assert!(matches_cut_pattern(&q));
        let swapped = q.apply(EquivMap::SwapColors);
        assert!(!matches_cut_pattern(&swapped));
    }

    #[test]
    fn relaxation_examples() {
        let so = relaxation_target(&p("d=3,delta=2,W=1110,B=010")).unwrap();
        assert_eq!(so.kind, TargetKind::SinklessOrientation);
        assert_eq!(so.flipped_bits, vec![(Side::Black, 2)]);
        let fd = relaxation_target(&p("d=3,delta=3,W=1011,B=0110")).unwrap();
        assert_eq!(fd.kind, TargetKind::ForbiddenDegree { forbidden: 1 });
        assert!(fd.flipped_bits.is_empty());
        let split = relaxation_target(&p("d=4,delta=4,W=01110,B=01110")).unwrap();
        assert_eq!(split.kind, TargetKind::SinklessOrientation);
        assert_eq!(split.flipped_bits.len(), 2);
        assert!(relaxation_target(&p("d=3,delta=2,W=1001,B=010")).is_err());
    }
}
