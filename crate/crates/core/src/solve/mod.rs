//! Constructive solvers and the dispatcher that picks one per problem.

pub mod constant;
pub mod global;
pub mod layered;
pub mod rake;

use std::borrow::Cow;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify, Family, Side};
use crate::labeling::EdgeLabeling;
use crate::oracle::verify_labeling;
use crate::problem::{BinaryProblem, Constraint, EquivMap, ResilienceQuery};
use crate::tree::ColoredTree;
use layered::{solve_layered, LayeredRule};
use rake::LayerDecomposition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("problem {0} is unsolvable")]
    Unsolvable(BinaryProblem),
    #[error("no solver strategy applies to {0}")]
    NoStrategy(BinaryProblem),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("node {node} faces {fixed} fixed ports, over its budget of {budget}")]
    BudgetViolated {
        node: u64,
        fixed: usize,
        budget: usize,
    },
    #[error("node {node} cannot complete its ports")]
    Infeasible { node: u64 },
    #[error("solver output fails verification at {count} nodes (first: node {first})")]
    VerificationFailed { count: usize, first: u64 },
    #[error("internal error: {0}")]
    Internal(String),
}

/// How a solver produces its labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Method {
    /// Whites put their `count` lowest ports in X.
    LowestPorts { count: usize },
    Uniform { value: bool },
    TwoColoring,
    LeafOrientation,
    Layered { rule: LayeredRule },
}

/// The problem actually solved: `target` is obtained from the input by the
/// equivalence map and then by turning off `restricted_bits`. A labeling for
/// `target` on the (possibly color-swapped) tree maps back to the input by
/// complementing when the map complements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolvePlan {
    pub family: Family,
    pub equivalence: EquivMap,
    pub restricted_bits: Vec<(Side, usize)>,
    pub target: BinaryProblem,
    pub method: Method,
}

pub fn hypergraph_matching(d: usize, delta: usize) -> BinaryProblem {
    BinaryProblem::new(d, delta, single_one(d + 1, 1), single_one(delta + 1, 1))
        .expect("valid degrees")
}

pub fn special_problem(d: usize, delta: usize) -> BinaryProblem {
    let mut b = Constraint::zeros(delta + 1);
    b.set(0, true);
    b.set(delta, true);
    BinaryProblem::new(d, delta, single_one(d + 1, 1), b).expect("valid degrees")
}

/// `d = 2`, `W = 110`, `B = 010..0`.
pub fn pick_lower(delta: usize) -> BinaryProblem {
    let mut w = Constraint::zeros(3);
    w.set(0, true);
    w.set(1, true);
    BinaryProblem::new(2, delta, w, single_one(delta + 1, 1)).expect("valid degrees")
}

/// Hardest member of the VI.b family: `W = 010..0`, `B = 0..010`.
pub fn hardest_leaf_orientation(d: usize, delta: usize) -> BinaryProblem {
    BinaryProblem::new(d, delta, single_one(d + 1, 1), single_one(delta + 1, delta - 1))
        .expect("valid degrees")
}

fn single_one(len: usize, at: usize) -> Constraint {
    let mut c = Constraint::zeros(len);
    c.set(at, true);
    c
}

fn turned_off(from: &BinaryProblem, to: &BinaryProblem) -> Vec<(Side, usize)> {
    let mut out = Vec::new();
    for (side, a, b) in [
        (Side::White, &from.white, &to.white),
        (Side::Black, &from.black, &to.black),
    ] {
        for (i, (x, y)) in a.bits().iter().zip(b.bits()).enumerate() {
            if x != y {
                out.push((side, i));
            }
        }
    }
    out
}

pub fn plan(p: &BinaryProblem) -> Result<SolvePlan, SolveError> {
    let family = classify(p).primary_family;
    let simple = |equivalence: EquivMap, target: BinaryProblem, method: Method| {
        let restricted_bits = turned_off(&p.apply(equivalence), &target);
        Ok(SolvePlan {
            family,
            equivalence,
            restricted_bits,
            target,
            method,
        })
    };
    let least_one = |c: &Constraint| (0..c.len()).find(|&i| c.allows(i)).expect("non-empty");
    match family {
        Family::IIIA => simple(
            EquivMap::Identity,
            p.clone(),
            Method::LowestPorts {
                count: least_one(&p.white),
            },
        ),
        Family::IIIB => {
            let q = p.apply(EquivMap::SwapColors);
            let count = least_one(&q.white);
            simple(EquivMap::SwapColors, q, Method::LowestPorts { count })
        }
        Family::IVA => simple(EquivMap::Identity, p.clone(), Method::Uniform { value: false }),
        Family::IVB => simple(EquivMap::Identity, p.clone(), Method::Uniform { value: true }),
        Family::VA => simple(EquivMap::Identity, p.clone(), Method::TwoColoring),
        Family::VB => simple(EquivMap::SwapColors, p.apply(EquivMap::SwapColors), Method::TwoColoring),
        Family::VIB => simple(
            EquivMap::Identity,
            hardest_leaf_orientation(p.d, p.delta),
            Method::LeafOrientation,
        ),
        Family::VIA => simple(
            EquivMap::Complement,
            hardest_leaf_orientation(p.d, p.delta),
            Method::LeafOrientation,
        ),
        Family::VII => {
            if p.is_resilient(ResilienceQuery::new(1, 2)) == Ok(true) {
                return simple(
                    EquivMap::Identity,
                    p.clone(),
                    Method::Layered {
                        rule: LayeredRule::resilient_white(),
                    },
                );
            }
            if p.is_resilient(ResilienceQuery::new(2, 1)) == Ok(true) {
                return simple(
                    EquivMap::Identity,
                    p.clone(),
                    Method::Layered {
                        rule: LayeredRule::resilient_black(),
                    },
                );
            }
            for m in EquivMap::ALL {
                let q = p.apply(m);
                if q.d >= 3 && q.delta >= 3 {
                    let t = hypergraph_matching(q.d, q.delta);
                    if t.is_restriction_of(&q) {
                        return simple(
                            m,
                            t,
                            Method::Layered {
                                rule: LayeredRule::HypergraphMatching,
                            },
                        );
                    }
                }
                if q.d >= 3 {
                    let t = special_problem(q.d, q.delta);
                    if t.is_restriction_of(&q) {
                        return simple(
                            m,
                            t,
                            Method::Layered {
                                rule: LayeredRule::Special,
                            },
                        );
                    }
                }
                if q.d == 2 && q.delta >= 3 {
                    let t = pick_lower(q.delta);
                    if t.is_restriction_of(&q) {
                        return simple(
                            m,
                            t,
                            Method::Layered {
                                rule: LayeredRule::PickLower,
                            },
                        );
                    }
                }
            }
            Err(SolveError::NoStrategy(p.clone()))
        }
        _ => Err(SolveError::Unsolvable(p.clone())),
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub labeling: EdgeLabeling,
    pub plan: SolvePlan,
    /// Present for the layered methods; computed on the tree as seen by the
    /// target problem (colors swapped when the plan swaps them).
    pub decomposition: Option<LayerDecomposition>,
}

/// Solves `p` on `tree` and verifies the result before returning it.
pub fn solve(p: &BinaryProblem, tree: &ColoredTree) -> Result<Solution, SolveError> {
    let plan = plan(p)?;
    solve_with_plan(p, tree, plan)
}

pub fn solve_with_plan(
    p: &BinaryProblem,
    tree: &ColoredTree,
    plan: SolvePlan,
) -> Result<Solution, SolveError> {
    let view: Cow<ColoredTree> = if plan.equivalence.swaps_colors() {
        Cow::Owned(tree.swap_colors())
    } else {
        Cow::Borrowed(tree)
    };
    let mut decomposition = None;
    let raw = match plan.method {
        Method::LowestPorts { count } => constant::lowest_ports(&view, count),
        Method::Uniform { value } => constant::uniform(&view, value),
        Method::TwoColoring => global::two_coloring(&view),
        Method::LeafOrientation => global::orient_towards_leaf(&view),
        Method::Layered { rule } => {
            let sol = solve_layered(rule, &plan.target, &view)?;
            decomposition = Some(sol.decomposition);
            sol.labeling
        }
    };
    let labeling = if plan.equivalence.complements() {
        raw.complemented()
    } else {
        raw
    };
    let violations = verify_labeling(tree, p, &labeling)
        .map_err(|e| SolveError::Internal(e.to_string()))?;
    if let Some(first) = violations.first() {
        return Err(SolveError::VerificationFailed {
            count: violations.len(),
            first: first.node,
        });
    }
    Ok(Solution {
        labeling,
        plan,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{complete_biregular, random_biregular, Color};

    fn p(s: &str) -> BinaryProblem {
        BinaryProblem::parse(s).unwrap()
    }

    #[test]
    fn named_problems_dispatch_and_verify() {
        for s in [
            "d=4,delta=2,W=00100,B=111",
            "d=3,delta=2,W=1001,B=010",
            "d=4,delta=4,W=01110,B=01110",
            "d=3,delta=2,W=1110,B=010",
            "d=3,delta=2,W=0110,B=010",
            "d=3,delta=2,W=1010,B=010",
            "d=3,delta=2,W=0100,B=101",
            "d=3,delta=2,W=0110,B=101",
            "d=3,delta=3,W=0100,B=0100",
            "d=2,delta=2,W=010,B=011",
        ] {
            let q = p(s);
            for seed in 0..3 {
                let t = random_biregular(q.d, q.delta, 300, seed).unwrap();
                solve(&q, &t).unwrap_or_else(|e| panic!("{s}: {e}"));
            }
        }
    }

    #[test]
    fn unsolvable_is_rejected() {
        let q = p("d=3,delta=2,W=0111,B=100");
        let t = complete_biregular(3, 2, 2, Color::White, None).unwrap();
        assert!(matches!(solve(&q, &t), Err(SolveError::Unsolvable(_))));
    }

    #[test]
    fn regular_matching_uses_special_rule() {
        let plan = plan(&p("d=3,delta=2,W=0100,B=101")).unwrap();
        assert_eq!(
            plan.method,
            Method::Layered {
                rule: LayeredRule::Special
            }
        );
        assert!(plan.restricted_bits.is_empty());
    }

    #[test]
    fn restriction_bits_are_reported() {
        // W = 110^(d-1) needs w_0 turned off to reach the matching target.
        let plan = plan(&p("d=3,delta=3,W=1100,B=0100")).unwrap();
        assert_eq!(plan.target, hypergraph_matching(3, 3));
        assert_eq!(plan.restricted_bits, vec![(Side::White, 0)]);
    }

    #[test]
    fn every_small_logarithmic_problem_has_a_strategy() {
        for d in 2..=6 {
            for delta in 2..=6 {
                for q in BinaryProblem::enumerate(d, delta) {
                    if classify(&q).complexity == crate::Complexity::Logarithmic {
                        plan(&q).unwrap_or_else(|e| panic!("{q}: {e}"));
                    }
                }
            }
        }
    }
}
