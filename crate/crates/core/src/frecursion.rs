//! Upper bounds on `f(N)`, the largest chromatic number of a 3-uniform
//! hypergraph with `N` edges, and the lower bound on `m(3, r) / r^3` they
//! imply.
//!
//! The table starts from the known exact values for `N <= 26` and is
//! extended with the splitting inequality
//! `f(N) <= max_{a_1 + .. + a_p <= N / p^2} f(a_1) + .. + f(a_p)`.
//! A window inequality then turns the table into `f(N) <= K N^(1/3)` for all
//! large `N`, i.e. `m(3, r) / r^3 >= K^-3` in the limit.

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use crate::bounds::{BoundReport, RIndex};
use crate::error::{invalid, Error, Result};
use crate::exact::{ratio, rational_to_f64};

/// Uniformity the table is built for.
const N: u32 = 3;
/// `c_3 = (1 - 2^-2)^-3 = 64/27`, as numerator and denominator.
const WINDOW_NUM: usize = 64;
const WINDOW_DEN: usize = 27;
/// The lower bound on `L_3` previously reported for this method.
pub const REPORTED_TARGET: f64 = 0.324;

/// Known exact values: `f(0) = 1`, `f(1..=6) = 2`, `f(7..=26) = 3`.
pub fn seed_values() -> Vec<u64> {
    (0..=26)
        .map(|n| match n {
            0 => 1,
            1..=6 => 2,
            _ => 3,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Seed,
    /// Splitting into `p` parts; `parts` is a maximizing composition.
    Cru { p: u32, parts: Vec<usize> },
    /// Lowered to the bound at a larger `N`.
    MonotoneRepair { from: usize },
}

/// Upper bounds `u[N] >= f(N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTable {
    upper: Vec<u64>,
    exact: Vec<bool>,
    provenance: Vec<Provenance>,
}

impl FTable {
    pub fn seed() -> Self {
        let upper = seed_values();
        let len = upper.len();
        Self {
            upper,
            exact: vec![true; len],
            provenance: vec![Provenance::Seed; len],
        }
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<u64> {
        self.upper.get(n).copied()
    }

    pub fn upper(&self) -> &[u64] {
        &self.upper
    }

    pub fn is_exact(&self, n: usize) -> bool {
        self.exact.get(n).copied().unwrap_or(false)
    }

    pub fn provenance(&self, n: usize) -> Option<&Provenance> {
        self.provenance.get(n)
    }

    /// Smallest `N` with `u[N] > r`, a lower bound on `m(3, r)`.
    pub fn m_lower_bound(&self, r: u64) -> Option<usize> {
        self.upper.iter().position(|&u| u > r)
    }

    /// Lowers each entry to the smallest bound at any larger `N`
    /// (valid because `f` is non-decreasing).
    pub fn monotone_repair(&mut self) {
        let mut best: Option<(u64, usize)> = None;
        for n in (0..self.upper.len()).rev() {
            match best {
                Some((u, from)) if u < self.upper[n] => {
                    self.upper[n] = u;
                    self.provenance[n] = Provenance::MonotoneRepair { from };
                }
                _ => best = Some((self.upper[n], n)),
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,upper,exact,provenance\n");
        for n in 0..self.len() {
            let prov = match &self.provenance[n] {
                Provenance::Seed => "seed".to_owned(),
                Provenance::Cru { p, parts } => format!(
                    "cru(p={p};{})",
                    parts.iter().map(usize::to_string).collect::<Vec<_>>().join("+")
                ),
                Provenance::MonotoneRepair { from } => format!("repair({from})"),
            };
            out.push_str(&format!("{n},{},{},{prov}\n", self.upper[n], self.exact[n]));
        }
        out
    }
}

/// Best split found by [`cru_step`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CruResult {
    pub value: u64,
    pub parts: Vec<usize>,
}

fn budget(n: usize, p: u32) -> usize {
    n / (p as usize).pow(N - 1)
}

/// `max Σ u[a_i]` over `a_1 + .. + a_p <= floor(N / p^2)`, `a_i >= 0`, by
/// iterated max-plus convolution over the table.
pub fn cru_step(table: &FTable, n: usize, p: u32) -> Result<CruResult> {
    if p < 2 {
        return Err(invalid(format!("cru_step needs p >= 2, got {p}")));
    }
    let total = budget(n, p);
    if total >= table.len() {
        return Err(Error::MissingEntry(total));
    }
    let u = &table.upper[..=total];
    // best[s] = (max sum of k parts summing to exactly s, last part)
    let mut layers: Vec<Vec<(u64, usize)>> = vec![u.iter().enumerate().map(|(a, &v)| (v, a)).collect()];
    for _ in 1..p {
        let prev = layers.last().expect("non-empty");
        let next = (0..=total)
            .map(|s| {
                (0..=s)
                    .map(|a| (prev[s - a].0 + u[a], a))
                    .max_by_key(|&(v, a)| (v, std::cmp::Reverse(a)))
                    .expect("non-empty range")
            })
            .collect();
        layers.push(next);
    }
    let last = layers.last().expect("non-empty");
    let (value, mut s) = (0..=total)
        .map(|s| (last[s].0, s))
        .max_by_key(|&(v, s)| (v, std::cmp::Reverse(s)))
        .expect("non-empty");
    let mut parts = Vec::with_capacity(p as usize);
    for layer in layers.iter().rev() {
        let a = layer[s].1;
        parts.push(a);
        s -= a;
    }
    parts.reverse();
    Ok(CruResult { value, parts })
}

/// Exact-sum max-plus layers for one `p`, grown as the budget increases.
struct Convolution {
    p: u32,
    /// layers[k][s]: (max over k+1 parts summing to exactly s, last part).
    layers: Vec<Vec<(u64, usize)>>,
    /// (running maximum of the top layer over sums `<= s`, sum attaining it).
    prefix_best: Vec<(u64, usize)>,
}

impl Convolution {
    fn new(p: u32) -> Self {
        Self {
            p,
            layers: vec![Vec::new(); p as usize],
            prefix_best: Vec::new(),
        }
    }

    /// Makes sure sums up to `total` are available, using `u[..=total]`.
    fn grow(&mut self, u: &[u64], total: usize) {
        while self.prefix_best.len() <= total {
            let s = self.prefix_best.len();
            self.layers[0].push((u[s], s));
            for k in 1..self.p as usize {
                let prev = &self.layers[k - 1];
                let best = (0..=s)
                    .map(|a| (prev[s - a].0 + u[a], a))
                    .max_by_key(|&(v, a)| (v, std::cmp::Reverse(a)))
                    .expect("non-empty");
                self.layers[k].push(best);
            }
            let top = self.layers[self.p as usize - 1][s].0;
            let best = match self.prefix_best.last() {
                Some(&(b, at)) if b >= top => (b, at),
                _ => (top, s),
            };
            self.prefix_best.push(best);
        }
    }

    /// Best value for budget `total` and a composition attaining it.
    fn best(&self, total: usize) -> (u64, Vec<usize>) {
        let (value, mut s) = self.prefix_best[total];
        let mut parts = Vec::with_capacity(self.p as usize);
        for layer in self.layers.iter().rev() {
            let a = layer[s].1;
            parts.push(a);
            s -= a;
        }
        parts.reverse();
        (value, parts)
    }
}

/// Extends the table to `n_max` with `u[N] = min_p cru_step(N, p)`, then
/// applies [`FTable::monotone_repair`]. Existing entries are kept, so
/// extending twice to the same `n_max` is a no-op.
pub fn extend_table(table: &FTable, n_max: usize, p_set: &[u32]) -> Result<FTable> {
    if p_set.is_empty() || p_set.iter().any(|&p| p < 2) {
        return Err(invalid(format!("p_set must be non-empty with every p >= 2, got {p_set:?}")));
    }
    let mut out = table.clone();
    let mut convs: Vec<Convolution> = p_set.iter().map(|&p| Convolution::new(p)).collect();
    for n in out.len()..=n_max {
        let mut best: Option<(u64, u32, Vec<usize>)> = None;
        for conv in &mut convs {
            let total = budget(n, conv.p);
            conv.grow(&out.upper, total);
            let (v, parts) = conv.best(total);
            if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
                best = Some((v, conv.p, parts));
            }
        }
        let (value, p, parts) = best.expect("p_set is non-empty");
        out.upper.push(value);
        out.exact.push(false);
        out.provenance.push(Provenance::Cru { p, parts });
    }
    out.monotone_repair();
    Ok(out)
}

/// Result of the window inequality at one `M`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentBound {
    pub m: usize,
    /// Window `[start, end)` of integers `a` with `M <= a < (64/27) M`.
    pub window: (usize, usize),
    /// The `a` attaining the maximum of `u[a] a^(-1/3)`.
    pub argmax: usize,
    /// `K = max u[a] a^(-1/3)`.
    pub k: f64,
    /// `K^-3 = argmax / u[argmax]^3`.
    pub l3: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub l3_exact: BigRational,
}

fn ser_ratio<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Integer window `[M, ceil(64 M / 27))`.
pub fn window(m: usize) -> (usize, usize) {
    (m, (WINDOW_NUM * m).div_ceil(WINDOW_DEN))
}

/// `K = max_{M <= a < c_3 M} u[a] a^(-1/3)` and the implied `L_3 >= K^-3`.
pub fn segment_bound(table: &FTable, m: usize) -> Result<SegmentBound> {
    if m == 0 {
        return Err(invalid("window start M must be positive"));
    }
    let (start, end) = window(m);
    if end > table.len() {
        return Err(Error::WindowOutOfTable {
            start,
            end,
            len: table.len(),
        });
    }
    // maximizing u^3 / a is minimizing a / u^3
    let candidate = |a: usize| ratio(BigUint::from(a), BigUint::from(table.upper[a]).pow(3));
    let argmax = (start..end)
        .min_by(|&x, &y| candidate(x).cmp(&candidate(y)).then(x.cmp(&y)))
        .expect("window is non-empty");
    let l3_exact = candidate(argmax);
    let l3 = rational_to_f64(&l3_exact);
    let k = table.upper[argmax] as f64 / (argmax as f64).cbrt();
    assert!(l3 <= 4.0 / 3.0, "window bound {l3} above the complete-hypergraph limit");
    Ok(SegmentBound {
        m,
        window: (start, end),
        argmax,
        k,
        l3,
        l3_exact,
    })
}

/// Best window bound over `m_range`, skipping windows the table does not cover.
pub fn best_bound(table: &FTable, m_range: std::ops::RangeInclusive<usize>) -> Result<(SegmentBound, BoundReport)> {
    let mut best: Option<SegmentBound> = None;
    let mut considered = 0u64;
    let mut skipped = 0u64;
    for m in m_range.clone() {
        match segment_bound(table, m) {
            Ok(sb) => {
                considered += 1;
                if best.as_ref().is_none_or(|b| sb.l3_exact > b.l3_exact) {
                    best = Some(sb);
                }
            }
            Err(Error::WindowOutOfTable { .. }) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let best = best.ok_or_else(|| {
        invalid(format!(
            "no window in M = {}..={} fits a table of length {}",
            m_range.start(),
            m_range.end(),
            table.len()
        ))
    })?;
    let report = BoundReport::new("f_recursion_segment", RIndex::Limit, best.l3)
        .exact(&best.l3_exact)
        .param("M", best.m as u64)
        .param("argmax", best.argmax as u64)
        .param("K", best.k)
        .param("window_start", best.window.0 as u64)
        .param("window_end", best.window.1 as u64)
        .param("table_len", table.len() as u64)
        .param("windows_considered", considered)
        .param("windows_skipped", skipped)
        .param("target", REPORTED_TARGET)
        .note("computed from the window inequality over the f upper-bound table; target is the previously reported value");
    Ok((best, report))
}
