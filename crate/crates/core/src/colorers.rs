//! Randomized colorers and a seeded Monte Carlo harness.
//!
//! * [`alon_color`]: uniform random coloring with `a < r` colors, then each
//!   monochromatic edge gets one vertex moved to one of the `r - a` spare
//!   colors, at most `n - 1` vertices per spare color.
//! * [`pluhar_color`]: greedy coloring along a uniformly random order.
//! * [`as_color`]: random weights in `[0, 1]`; edges whose weight spread is at
//!   most `(1 - p) / a` are *bad*. The good edges are greedily colored with
//!   `a` colors in weight order, and bad edges are repaired with the spare
//!   colors as in [`alon_color`].
//!
//! Every coloring a colorer returns has been checked proper against all edges.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chains::{greedy_color, GreedyOutcome};
use crate::coloring::{is_proper, monochromatic_edges, Coloring, LinearOrder};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Alon,
    Pluhar,
    AkolzinShabanov,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alon" => Ok(Self::Alon),
            "pluhar" => Ok(Self::Pluhar),
            "as" | "akolzin_shabanov" | "akolzin-shabanov" => Ok(Self::AkolzinShabanov),
            _ => Err(invalid(format!("unknown algorithm {s:?}"))),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::Alon => "alon",
            Algorithm::Pluhar => "pluhar",
            Algorithm::AkolzinShabanov => "akolzin_shabanov",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub r: u32,
    /// Colors used in the first phase (Alon, Akolzin–Shabanov).
    pub a: Option<u32>,
    /// Bad-edge parameter (Akolzin–Shabanov).
    pub p: Option<f64>,
}

/// Why a single colorer run gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Failure {
    /// More monochromatic edges than the spare colors can absorb.
    TooManyMonochromatic,
    /// The greedy pass found an ordered chain.
    OrderedChain,
    /// More bad edges than the spare colors can absorb.
    TooManyBadEdges,
}

/// One colorer run with the statistics the harness aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct Attempt {
    pub outcome: std::result::Result<Coloring, Failure>,
    /// Monochromatic edges after the uniform phase (Alon only).
    pub monochromatic: Option<usize>,
    /// Bad edges (Akolzin–Shabanov only).
    pub bad_edges: Option<usize>,
}

impl Attempt {
    pub fn succeeded(&self) -> bool {
        self.outcome.is_ok()
    }
}

/// Per-vertex weights in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightAssignment(Vec<f64>);

impl WeightAssignment {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return Err(invalid(format!("weight {w} outside [0, 1]")));
        }
        Ok(Self(weights))
    }

    pub fn sample<R: Rng + ?Sized>(num_vertices: usize, rng: &mut R) -> Self {
        Self((0..num_vertices).map(|_| rng.gen::<f64>()).collect())
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    /// Vertices sorted by weight, ties broken by vertex id.
    pub fn order(&self) -> LinearOrder {
        let mut vs: Vec<usize> = (0..self.0.len()).collect();
        vs.sort_by(|&u, &v| self.0[u].total_cmp(&self.0[v]).then(u.cmp(&v)));
        LinearOrder::from_permutation(vs).expect("sorted indices form a permutation")
    }

    /// Whether the edge's weight spread is at most `threshold`.
    pub fn is_bad(&self, edge: &[usize], threshold: f64) -> bool {
        let (lo, hi) = edge.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(self.0[v]), hi.max(self.0[v]))
        });
        hi - lo <= threshold
    }
}

/// The rng a single colorer call uses for `seed`.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of trial `t` in a run keyed by `seed` (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_split(r: u32, a: u32) -> Result<()> {
    if a < 1 || a >= r {
        Err(invalid(format!("need 1 <= a < r, got a = {a}, r = {r}")))
    } else {
        Ok(())
    }
}

/// Uniform random coloring with colors `1..=a`.
pub fn uniform_coloring<R: Rng + ?Sized>(num_vertices: usize, a: u32, rng: &mut R) -> Vec<u32> {
    (0..num_vertices).map(|_| rng.gen_range(1..=a)).collect()
}

/// Moves one vertex (the smallest) of every listed edge into the spare
/// colors `a+1..=r`, at most `n - 1` vertices per spare color, in list order.
/// The caller guarantees `edges.len() <= (n - 1)(r - a)`.
fn repair(h: &Hypergraph, colors: &mut [u32], edges: &[usize], a: u32) {
    let per_color = h.uniformity() - 1;
    let mut moved: Vec<usize> = Vec::new();
    for &e in edges {
        let v = h.edge(e)[0];
        if !moved.contains(&v) {
            moved.push(v);
        }
    }
    for (slot, v) in moved.into_iter().enumerate() {
        colors[v] = a + 1 + (slot / per_color) as u32;
    }
}

fn capacity(h: &Hypergraph, r: u32, a: u32) -> usize {
    (h.uniformity() - 1) * (r - a) as usize
}

fn finish(h: &Hypergraph, colors: Vec<u32>, r: u32, who: &'static str) -> Result<Coloring> {
    let coloring = Coloring::new(colors, r)?;
    if !is_proper(h, &coloring)? {
        return Err(Error::ImproperColoring(who));
    }
    Ok(coloring)
}

pub fn alon_color(h: &Hypergraph, r: u32, a: u32, seed: u64) -> Result<Attempt> {
    alon_color_with(h, r, a, &mut rng_for(seed))
}

pub fn alon_color_with<R: Rng + ?Sized>(h: &Hypergraph, r: u32, a: u32, rng: &mut R) -> Result<Attempt> {
    check_split(r, a)?;
    let mut colors = uniform_coloring(h.num_vertices(), a, rng);
    let mono = monochromatic_edges(h, &colors);
    let outcome = if mono.len() > capacity(h, r, a) {
        Err(Failure::TooManyMonochromatic)
    } else {
        repair(h, &mut colors, &mono, a);
        Ok(finish(h, colors, r, "alon")?)
    };
    Ok(Attempt {
        outcome,
        monochromatic: Some(mono.len()),
        bad_edges: None,
    })
}

pub fn pluhar_color(h: &Hypergraph, r: u32, seed: u64) -> Result<Attempt> {
    pluhar_color_with(h, r, &mut rng_for(seed))
}

pub fn pluhar_color_with<R: Rng + ?Sized>(h: &Hypergraph, r: u32, rng: &mut R) -> Result<Attempt> {
    if r < 1 {
        return Err(invalid("palette must have at least one color"));
    }
    let order = LinearOrder::random(h.num_vertices(), rng);
    let outcome = match greedy_color(h, &order, r)? {
        GreedyOutcome::Colored(c) => Ok(finish(h, c.colors().to_vec(), r, "pluhar")?),
        GreedyOutcome::Stuck { .. } => Err(Failure::OrderedChain),
    };
    Ok(Attempt {
        outcome,
        monochromatic: None,
        bad_edges: None,
    })
}

pub fn as_color(h: &Hypergraph, r: u32, a: u32, p: f64, seed: u64) -> Result<Attempt> {
    as_color_with(h, r, a, p, &mut rng_for(seed))
}

pub fn as_color_with<R: Rng + ?Sized>(
    h: &Hypergraph,
    r: u32,
    a: u32,
    p: f64,
    rng: &mut R,
) -> Result<Attempt> {
    check_split(r, a)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("p must lie in [0, 1], got {p}")));
    }
    let weights = WeightAssignment::sample(h.num_vertices(), rng);
    as_color_weighted(h, r, a, p, &weights)
}

/// The deterministic part of [`as_color`] for a given weight assignment.
pub fn as_color_weighted(
    h: &Hypergraph,
    r: u32,
    a: u32,
    p: f64,
    weights: &WeightAssignment,
) -> Result<Attempt> {
    check_split(r, a)?;
    if weights.weights().len() != h.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: h.num_vertices(),
            actual: weights.weights().len(),
        });
    }
    let threshold = (1.0 - p) / a as f64;
    let bad: Vec<usize> = (0..h.num_edges())
        .filter(|&i| weights.is_bad(h.edge(i), threshold))
        .collect();
    let attempt = |outcome| Attempt {
        outcome,
        monochromatic: None,
        bad_edges: Some(bad.len()),
    };

    let good = h.filter_edges(|i, _| bad.binary_search(&i).is_err());
    let mut colors = match greedy_color(&good, &weights.order(), a)? {
        GreedyOutcome::Colored(c) => c.colors().to_vec(),
        GreedyOutcome::Stuck { .. } => return Ok(attempt(Err(Failure::OrderedChain))),
    };
    if bad.len() > capacity(h, r, a) {
        return Ok(attempt(Err(Failure::TooManyBadEdges)));
    }
    let mono_bad: Vec<usize> = bad
        .iter()
        .copied()
        .filter(|&i| h.edge(i).iter().all(|&v| colors[v] == colors[h.edge(i)[0]]))
        .collect();
    repair(h, &mut colors, &mono_bad, a);
    Ok(attempt(Ok(finish(h, colors, r, "akolzin_shabanov")?)))
}

/// Runs one attempt of `algorithm` keyed by `seed`.
pub fn run_once(algorithm: Algorithm, h: &Hypergraph, params: &Params, seed: u64) -> Result<Attempt> {
    match algorithm {
        Algorithm::Alon => alon_color(h, params.r, require(params.a, "a")?, seed),
        Algorithm::Pluhar => pluhar_color(h, params.r, seed),
        Algorithm::AkolzinShabanov => as_color(
            h,
            params.r,
            require(params.a, "a")?,
            require(params.p, "p")?,
            seed,
        ),
    }
}

fn require<T>(value: Option<T>, name: &str) -> Result<T> {
    value.ok_or_else(|| invalid(format!("parameter {name} is required")))
}

/// Aggregate of `trials` seeded runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub algorithm: Algorithm,
    pub r: u32,
    pub a: Option<u32>,
    pub p: Option<f64>,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    /// Failure reason tally.
    pub failures: BTreeMap<Failure, u64>,
    /// Mean monochromatic edges after the uniform phase (Alon).
    pub mean_monochromatic: Option<f64>,
    /// Mean bad edges (Akolzin–Shabanov).
    pub mean_bad_edges: Option<f64>,
}

impl TrialReport {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

#[derive(Default)]
struct Tally {
    successes: u64,
    failures: BTreeMap<Failure, u64>,
    mono: u64,
    bad: u64,
}

impl Tally {
    fn add(mut self, attempt: &Attempt) -> Self {
        match attempt.outcome {
            Ok(_) => self.successes += 1,
            Err(f) => *self.failures.entry(f).or_default() += 1,
        }
        self.mono += attempt.monochromatic.unwrap_or(0) as u64;
        self.bad += attempt.bad_edges.unwrap_or(0) as u64;
        self
    }

    fn merge(mut self, other: Self) -> Self {
        self.successes += other.successes;
        for (k, v) in other.failures {
            *self.failures.entry(k).or_default() += v;
        }
        self.mono += other.mono;
        self.bad += other.bad;
        self
    }
}

/// Runs `trials` attempts; trial `t` uses seed `derive_seed(seed, t)`, so the
/// report does not depend on scheduling.
pub fn run_trials(
    algorithm: Algorithm,
    h: &Hypergraph,
    params: &Params,
    trials: u64,
    seed: u64,
) -> Result<TrialReport> {
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let tally = (0..trials)
        .into_par_iter()
        .map(|t| run_once(algorithm, h, params, derive_seed(seed, t)))
        .try_fold(Tally::default, |acc, a| a.map(|a| acc.add(&a)))
        .try_reduce(Tally::default, |x, y| Ok(x.merge(y)))?;
    let mean = |sum: u64| sum as f64 / trials as f64;
    Ok(TrialReport {
        algorithm,
        r: params.r,
        a: params.a,
        p: params.p,
        seed,
        trials,
        successes: tally.successes,
        failures: tally.failures,
        mean_monochromatic: (algorithm == Algorithm::Alon).then(|| mean(tally.mono)),
        mean_bad_edges: (algorithm == Algorithm::AkolzinShabanov).then(|| mean(tally.bad)),
    })
}

/// Probability that an edge of size `n` is bad for parameters `(a, p)`:
/// `t^(n-1) (t + n(1 - t))` with `t = (1 - p)/a`.
pub fn bad_edge_probability(n: usize, a: u32, p: f64) -> f64 {
    let t = ((1.0 - p) / a as f64).min(1.0);
    t.powi(n as i32 - 1) * (t + n as f64 * (1.0 - t))
}
