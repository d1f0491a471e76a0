//! Rake & compress on a partial view, tracking what is certain.
//!
//! Neighbors outside the view are unknown. A node's layer is reported only
//! when every execution consistent with the view removes it in that iteration.

use super::View;
use crate::solve::rake::Variant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Alive,
    Removed(usize),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Stay,
    Remove,
    Unsure,
}

/// Layer of each view node when it is determined by the view.
pub fn partial_layers(view: &View, c: usize, variant: Variant) -> Vec<Option<usize>> {
    let n = view.nodes.len();
    let mut status = vec![Status::Alive; n];
    let mut alive: Vec<usize> = (0..n).collect();
    let mut lo = vec![0usize; n];
    let mut hi = vec![0usize; n];
    let mut i = 0;
    while !alive.is_empty() {
        i += 1;
        for &v in &alive {
            let (mut l, mut h) = (0, 0);
            for p in &view.nodes[v].ports {
                match p.map(|(u, _)| status[u]) {
                    Some(Status::Alive) => {
                        l += 1;
                        h += 1;
                    }
                    Some(Status::Removed(_)) => {}
                    Some(Status::Unknown) | None => h += 1,
                }
            }
            lo[v] = l;
            hi[v] = h;
        }
        let exact_two = |v: usize, status: &[Status]| status[v] == Status::Alive && lo[v] == 2 && hi[v] == 2;
        let steps: Vec<Step> = alive
            .iter()
            .map(|&v| {
                if hi[v] <= 1 {
                    return Step::Remove;
                }
                if !variant.compresses(view.nodes[v].color) {
                    return if lo[v] >= 2 { Step::Stay } else { Step::Unsure };
                }
                if lo[v] >= 3 {
                    return Step::Stay;
                }
                if !exact_two(v, &status) {
                    return Step::Unsure;
                }
                // Walk the run of certain degree-two nodes through v.
                let mut run = vec![v];
                let mut open = false;
                let mut k = 0;
                while k < run.len() && run.len() < c {
                    let x = run[k];
                    k += 1;
                    for p in &view.nodes[x].ports {
                        match *p {
                            None => open = true,
                            Some((u, _)) => match status[u] {
                                Status::Removed(_) => {}
                                Status::Unknown => open = true,
                                Status::Alive => {
                                    if exact_two(u, &status) {
                                        if !run.contains(&u) {
                                            run.push(u);
                                        }
                                    } else if lo[u] <= 2 && 2 <= hi[u] {
                                        open = true;
                                    }
                                }
                            },
                        }
                    }
                }
                if run.len() >= c {
                    Step::Remove
                } else if open {
                    Step::Unsure
                } else {
                    Step::Stay
                }
            })
            .collect();
        let mut changed = false;
        for (&v, s) in alive.iter().zip(&steps) {
            match s {
                Step::Remove => {
                    status[v] = Status::Removed(i);
                    changed = true;
                }
                Step::Unsure => {
                    status[v] = Status::Unknown;
                    changed = true;
                }
                Step::Stay => {}
            }
        }
        if !changed {
            for &v in &alive {
                status[v] = Status::Unknown;
            }
        }
        alive.retain(|&v| status[v] == Status::Alive);
    }
    status
        .into_iter()
        .map(|s| match s {
            Status::Removed(l) => Some(l),
            _ => None,
        })
        .collect()
}
