//! Example problems accepted by name wherever a problem is expected.

pub const NAMED: [(&str, &str); 9] = [
    ("contradiction", "d=3,delta=2,W=0111,B=100"),
    ("trivial", "d=4,delta=2,W=00100,B=111"),
    ("two-coloring", "d=3,delta=2,W=1001,B=010"),
    ("bipartite-splitting", "d=4,delta=4,W=01110,B=01110"),
    ("sinkless-orientation", "d=3,delta=2,W=1110,B=010"),
    ("sinkless-sourceless", "d=3,delta=2,W=0110,B=010"),
    ("even-orientation", "d=3,delta=2,W=1010,B=010"),
    ("regular-matching", "d=3,delta=2,W=0100,B=101"),
    ("splitting", "d=3,delta=2,W=0110,B=101"),
];

pub fn lookup(name: &str) -> Option<&'static str> {
    NAMED.iter().find(|(n, _)| *n == name).map(|(_, p)| *p)
}
