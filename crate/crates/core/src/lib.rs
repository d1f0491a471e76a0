//! Binary labeling problems on properly two-colored trees.
//!
//! A problem `(d, delta, W, B)` asks for a set X of edges such that every white
//! node of degree `d` has an X-degree allowed by `W` and every black node of
//! degree `delta` one allowed by `B`. The crate classifies such problems by
//! distributed round complexity, solves them constructively, simulates the
//! solvers in the LOCAL model and implements round elimination on the
//! general (multiset) form.

pub mod classify;
pub mod labeling;
pub mod limits;
pub mod local;
pub mod oracle;
pub mod problem;
pub mod re;
pub mod solve;
pub mod tree;

pub use classify::{classify, randomized_bounds, relaxation_target, Classification, Complexity, Family};
pub use labeling::EdgeLabeling;
pub use problem::{BinaryProblem, Constraint, EquivMap, ResilienceQuery};
pub use tree::{Color, ColoredTree};
