//! Generators for the hypergraph families used throughout the test suite.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::binomial;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;

/// Lines of the Fano plane on points `0..7`.
pub const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

/// Above this many candidate edges, random sampling uses rejection instead
/// of materializing every `n`-subset.
const ENUMERATE_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// All `n`-subsets of `v` vertices.
    Complete { v: usize, n: usize },
    Fano,
    /// `m` distinct `n`-subsets of `v` vertices, uniformly at random.
    Random { v: usize, m: usize, n: usize, seed: u64 },
    /// `r` edges of size `n` forming one `r`-chain on `(n-1)r+1` vertices.
    SingleChain { n: usize, r: usize },
}

impl Family {
    pub fn generate(&self) -> Result<Hypergraph> {
        match *self {
            Family::Complete { v, n } => {
                check_uniformity(n)?;
                if v < n {
                    return Err(invalid(format!("complete({v},{n}) needs v >= n")));
                }
                Hypergraph::new(v, n, combinations(v, n))
            }
            Family::Fano => Hypergraph::new(7, 3, FANO_LINES.iter().map(|l| l.to_vec()).collect()),
            Family::Random { v, m, n, seed } => random(v, m, n, seed),
            Family::SingleChain { n, r } => {
                check_uniformity(n)?;
                if r == 0 {
                    return Err(invalid("single_chain needs r >= 1"));
                }
                let edges = (0..r)
                    .map(|i| (i * (n - 1)..=i * (n - 1) + n - 1).collect())
                    .collect();
                Hypergraph::new((n - 1) * r + 1, n, edges)
            }
        }
    }
}

fn check_uniformity(n: usize) -> Result<()> {
    if n < 2 {
        Err(invalid(format!("uniformity must be at least 2, got {n}")))
    } else {
        Ok(())
    }
}

fn random(v: usize, m: usize, n: usize, seed: u64) -> Result<Hypergraph> {
    check_uniformity(n)?;
    if v < n && m > 0 {
        return Err(invalid(format!("random({v},{m},{n}) needs v >= n")));
    }
    let available = if v < n { 0 } else { binomial(v as u128, n as u128) };
    if (m as u128) > available {
        return Err(invalid(format!(
            "cannot pick {m} distinct edges out of C({v},{n}) = {available}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = if available <= ENUMERATE_LIMIT as u128 {
        let all = combinations(v, n);
        sample(&mut rng, all.len(), m)
            .into_iter()
            .map(|i| all[i].clone())
            .collect()
    } else {
        let mut chosen = BTreeSet::new();
        while chosen.len() < m {
            let mut e: Vec<usize> = sample(&mut rng, v, n).into_vec();
            e.sort_unstable();
            chosen.insert(e);
        }
        chosen.into_iter().collect()
    };
    Hypergraph::new(v, n, edges)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Random 3-uniform hypergraph with a random vertex count in `v_range`
/// and edge count in `m_range` (clamped to what fits), keyed by `seed`.
pub fn random_small(
    seed: u64,
    v_range: std::ops::RangeInclusive<usize>,
    m_range: std::ops::RangeInclusive<usize>,
) -> Result<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0fc0_1045);
    let v = rng.gen_range(v_range);
    let max_m = if v < 3 { 0 } else { binomial(v, 3) };
    let m = rng.gen_range(m_range).min(max_m);
    Family::Random { v, m, n: 3, seed }.generate()
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete { v, n } => write!(f, "complete:{v}:{n}"),
            Family::Fano => write!(f, "fano"),
            Family::Random { v, m, n, seed } => write!(f, "random:{v}:{m}:{n}:{seed}"),
            Family::SingleChain { n, r } => write!(f, "chain:{n}:{r}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `fano`, `complete:V:N`, `random:V:M:N:SEED`, `chain:N:R`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let nums: Vec<u64> = parts
            .map(|p| p.parse::<u64>().map_err(|_| invalid(format!("bad family parameter {p:?}"))))
            .collect::<Result<_>>()?;
        let u = |i: usize| nums[i] as usize;
        match (kind, nums.len()) {
            ("fano", 0) => Ok(Family::Fano),
            ("complete", 2) => Ok(Family::Complete { v: u(0), n: u(1) }),
            ("random", 4) => Ok(Family::Random {
                v: u(0),
                m: u(1),
                n: u(2),
                seed: nums[3],
            }),
            ("chain", 2) => Ok(Family::SingleChain { n: u(0), r: u(1) }),
            _ => Err(invalid(format!(
                "unknown family {s:?}; expected fano, complete:V:N, random:V:M:N:SEED or chain:N:R"
            ))),
        }
    }
}
