//! Resource caps shared by the oracle, the simulator and round elimination.

use std::env;

/// Environment variable holding default caps, e.g. `max_edges=20,max_rounds=5000`.
pub const LIMITS_ENV: &str = "BINLCL_LIMITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest tree the brute-force oracle will enumerate.
    pub max_edges: usize,
    /// Round budget for LOCAL simulation.
    pub max_rounds: usize,
    /// Largest input alphabet accepted by round elimination.
    pub max_alphabet: usize,
    /// Largest degree accepted by round elimination.
    pub max_re_degree: usize,
    /// Largest alphabet for the isomorphism search.
    pub max_iso_alphabet: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_edges: 22,
            max_rounds: 1_000_000,
            max_alphabet: 5,
            max_re_degree: 4,
            max_iso_alphabet: 6,
        }
    }
}

impl Limits {
    /// Defaults overridden by `BINLCL_LIMITS`; unknown keys and bad values are ignored.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Ok(text) = env::var(LIMITS_ENV) {
            l.apply_overrides(&text);
        }
        l
    }

    pub fn apply_overrides(&mut self, text: &str) {
        for part in text.split(',') {
            let Some((k, v)) = part.split_once('=') else {
                continue;
            };
            let Ok(v) = v.trim().parse::<usize>() else {
                continue;
            };
            match k.trim() {
                "max_edges" => self.max_edges = v,
                "max_rounds" => self.max_rounds = v,
                "max_alphabet" => self.max_alphabet = v,
                "max_re_degree" => self.max_re_degree = v,
                "max_iso_alphabet" => self.max_iso_alphabet = v,
                _ => {}
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let mut l = Limits::default();
        l.apply_overrides("max_edges=10, max_rounds=7,bogus=3,max_alphabet=x");
        assert_eq!(l.max_edges, 10);
        assert_eq!(l.max_rounds, 7);
        assert_eq!(l.max_alphabet, 5);
    }
}
