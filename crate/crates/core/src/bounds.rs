//! Closed-form lower and upper bounds on `m(n, r)` and the limits of
//! `m(3, r) / r^3`.
//!
//! Finite-`r` thresholds are computed with exact integers: each is the
//! largest edge count `E` with `coef * E^r < bound`, and every [`Threshold`]
//! can re-check its own maximality.

use std::collections::BTreeMap;
use std::f64::consts::{E, LN_2};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::exact::{binomial, factorial, largest_strictly_below, ratio, rational_to_f64, to_rational};
use crate::special::ln_gamma;

/// How to charge a chain counted as an unordered edge set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Probability `4/(2r+1)!` per counted chain, exactly as written.
    AsPrinted,
    /// Probability `8/(2r+1)!` per set-counted chain: either orientation
    /// may come out ordered.
    Corrected,
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" | "as_printed" | "as-printed" => Ok(Self::AsPrinted),
            "corrected" => Ok(Self::Corrected),
            _ => Err(invalid(format!("unknown orientation factor {s:?}"))),
        }
    }
}

/// Largest `edges` with `coef * edges^power < bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold {
    pub edges: BigUint,
    coef: BigUint,
    power: u32,
    bound: BigUint,
}

impl Threshold {
    fn solve(coef: BigUint, power: u32, bound: BigUint) -> Self {
        let edges = largest_strictly_below(&coef, power, &bound).expect("bounds are positive");
        Self {
            edges,
            coef,
            power,
            bound,
        }
    }

    /// Whether `e` satisfies the defining strict inequality.
    pub fn holds_at(&self, e: &BigUint) -> bool {
        &self.coef * e.pow(self.power) < self.bound
    }

    /// Re-substitutes `E` and `E + 1`.
    pub fn verify(&self) -> bool {
        self.holds_at(&self.edges) && !self.holds_at(&(&self.edges + 1u32))
    }

    pub fn edges_u64(&self) -> u64 {
        self.edges.to_u64().expect("threshold fits in u64")
    }
}

fn check_nr(n: usize, r: usize, min_r: usize) -> Result<()> {
    if n < 2 || r < min_r {
        Err(invalid(format!("need n >= 2 and r >= {min_r}, got ({n}, {r})")))
    } else {
        Ok(())
    }
}

/// `(n-1) ceil(r/n) floor((n-1)r/n)^(n-1)`.
pub fn alon_lower(n: usize, r: usize) -> Result<BigUint> {
    check_nr(n, r, 1)?;
    let spare = BigUint::from(r.div_ceil(n));
    let base = BigUint::from((n - 1) * r / n);
    Ok(BigUint::from(n - 1) * spare * base.pow((n - 1) as u32))
}

/// `alon_lower(n, r) / r^n`.
pub fn alon_ratio(n: usize, r: usize) -> Result<BigRational> {
    Ok(to_rational(alon_lower(n, r)?) / to_rational(BigUint::from(r).pow(n as u32)))
}

/// Largest `|E|` with `2 |E|^r / r! * ((n-1)!)^2 ((n-2)!)^(r-2) / ((n-1)r+1)! < 1`.
///
/// Both orientation conventions give the same threshold here: the printed
/// count `2|E|^r/r!` already counts directed chains.
pub fn pluhar_threshold(n: usize, r: usize, _orientation: Orientation) -> Result<Threshold> {
    check_nr(n, r, 2)?;
    let per_chain = factorial(n - 1).pow(2u32) * factorial(n - 2).pow((r - 2) as u32);
    let coef = per_chain * 2u32;
    let bound = factorial(r) * factorial((n - 1) * r + 1);
    Ok(Threshold::solve(coef, r as u32, bound))
}

/// Largest `|E|` with `|E|^r / (2 (r-1)^(r-1)) * k / (2r+1)! < 1`, where
/// `k = 4` as printed and `k = 8` corrected (`n = 3`).
pub fn thm1_threshold(r: usize, orientation: Orientation) -> Result<Threshold> {
    check_nr(3, r, 2)?;
    let k: u32 = match orientation {
        Orientation::AsPrinted => 4,
        Orientation::Corrected => 8,
    };
    let bound = BigUint::from(2u32) * BigUint::from(r - 1).pow((r - 1) as u32) * factorial(2 * r + 1);
    Ok(Threshold::solve(BigUint::from(k), r as u32, bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    Alon,
    Pluhar,
    Thm1,
}

impl LimitKind {
    pub const ALL: [LimitKind; 3] = [LimitKind::Alon, LimitKind::Pluhar, LimitKind::Thm1];

    /// The limit of the sequence as `r` grows.
    pub fn limit(self) -> f64 {
        match self {
            LimitKind::Alon => 8.0 / 27.0,
            LimitKind::Pluhar => 4.0 / E.powi(3),
            LimitKind::Thm1 => 4.0 / E.powi(2),
        }
    }
}

impl std::str::FromStr for LimitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alon" => Ok(Self::Alon),
            "pluhar" => Ok(Self::Pluhar),
            "thm1" | "inducibility" => Ok(Self::Thm1),
            _ => Err(invalid(format!("unknown limit kind {s:?}"))),
        }
    }
}

/// The `r`-th term of the sequence converging to the `n = 3` lower-bound
/// constant, evaluated in log space.
pub fn limit_sequence(kind: LimitKind, r: u64) -> Result<f64> {
    if r < 2 {
        return Err(invalid(format!("limit_sequence needs r >= 2, got {r}")));
    }
    let rf = r as f64;
    let ln_term = match kind {
        LimitKind::Alon => return Ok(rational_to_f64(&alon_ratio(3, r as usize)?)),
        // (r! (2r+1)! / 8)^(1/r)
        LimitKind::Pluhar => (ln_gamma(rf + 1.0) + ln_gamma(2.0 * rf + 2.0) - 3.0 * LN_2) / rf,
        // ((2r+1)! (r-1)^(r-1) / 2)^(1/r)
        LimitKind::Thm1 => {
            (ln_gamma(2.0 * rf + 2.0) + (rf - 1.0) * (rf - 1.0).ln() - LN_2) / rf
        }
    };
    Ok((ln_term - 3.0 * rf.ln()).exp())
}

/// `C((n-1)r + 1, n)`: edges of the complete `n`-uniform hypergraph that is
/// just too large to be `r`-colored.
pub fn erdos_value(n: usize, r: usize) -> Result<BigUint> {
    check_nr(n, r, 1)?;
    Ok(binomial((n - 1) * r + 1, n))
}

/// `lim C((n-1)r+1, n) / r^n = (n-1)^n / n!`.
pub fn upper_limit(n: usize) -> Result<BigRational> {
    check_nr(n, 1, 1)?;
    Ok(to_rational(BigUint::from(n - 1).pow(n as u32)) / to_rational(factorial(n)))
}

/// Which reading of the final inequality pair for the weight-based colorer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsVariant {
    /// Chain count bounded through induced paths: `c x^3 p e < 1`.
    Combined,
    /// Original chain estimate: `c x^3 p e^2 < 1`.
    Pure,
}

/// Power of `(1 - p)` in the bad-edge constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsExponent {
    /// `(1 - p)^1`, as written in the final inequality.
    AsPrinted,
    /// `(1 - p)^2`, as in the bad-edge probability bound it comes from.
    Corrected,
}

impl AsVariant {
    fn chain_factor(self) -> f64 {
        match self {
            AsVariant::Combined => E,
            AsVariant::Pure => E * E,
        }
    }
}

impl AsExponent {
    fn power(self) -> i32 {
        match self {
            AsExponent::AsPrinted => 1,
            AsExponent::Corrected => 2,
        }
    }
}

impl std::str::FromStr for AsVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "combined" => Ok(Self::Combined),
            "pure" => Ok(Self::Pure),
            _ => Err(invalid(format!("unknown variant {s:?}"))),
        }
    }
}

impl std::str::FromStr for AsExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" | "as_printed" | "1" => Ok(Self::AsPrinted),
            "corrected" | "2" => Ok(Self::Corrected),
            _ => Err(invalid(format!("unknown exponent {s:?}"))),
        }
    }
}

/// Left-hand sides of the two constraints at `(c, p, x)`; feasible iff both are `< 1`.
pub fn as_constraints(variant: AsVariant, exponent: AsExponent, c: f64, p: f64, x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let chain = c * x3 * p * variant.chain_factor();
    let bad = 3.0 * c * (1.0 - p).powi(exponent.power()) * x3 / (2.0 * (x - 1.0));
    (chain, bad)
}

pub fn as_feasible(variant: AsVariant, exponent: AsExponent, c: f64, p: f64, x: f64) -> bool {
    let (chain, bad) = as_constraints(variant, exponent, c, p, x);
    chain < 1.0 && bad < 1.0
}

/// Supremum of feasible `c` at a fixed `(p, x)`.
pub fn as_max_c(variant: AsVariant, exponent: AsExponent, p: f64, x: f64) -> f64 {
    let (chain, bad) = as_constraints(variant, exponent, 1.0, p, x);
    (1.0 / chain).min(1.0 / bad)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsOptimum {
    /// Supremum of feasible `c` at the returned `(p, x)`.
    pub c: f64,
    pub p: f64,
    pub x: f64,
    /// A value just below `c` at which both constraints hold strictly.
    pub certified_c: f64,
}

/// Grid search for the largest `c` over `p = i/(grid+1)`, `i = 1..=grid`, and
/// `x = 1 + j/grid`, `j = 1..=grid`. Ties go to the smallest `p`, then the
/// smallest `x`.
pub fn as_optimize(variant: AsVariant, exponent: AsExponent, grid: usize) -> Result<AsOptimum> {
    if grid < 1000 {
        return Err(invalid(format!("grid needs at least 1000 points per axis, got {grid}")));
    }
    let mut best: Option<(f64, f64, f64)> = None;
    for i in 1..=grid {
        let p = i as f64 / (grid + 1) as f64;
        for j in 1..=grid {
            let x = 1.0 + j as f64 / grid as f64;
            let c = as_max_c(variant, exponent, p, x);
            if best.is_none_or(|(b, _, _)| c > b) {
                best = Some((c, p, x));
            }
        }
    }
    let (c, p, x) = best.expect("grid is non-empty");
    let certified_c = c * (1.0 - 1e-12);
    if !(c > 0.0 && as_feasible(variant, exponent, certified_c, p, x)) {
        return Err(invalid("empty feasible region"));
    }
    Ok(AsOptimum { c, p, x, certified_c })
}

/// `(P[e is bad], P[C(A_1..A_a)] bound)` for uniformity `n`:
/// `t^(n-1) (t + n(1-t))` with `t = (1-p)/a`, and `a^(-a(n-2)) p^(a-1) / (a-1)!`.
pub fn as_event_bounds(n: usize, a: u32, p: f64) -> Result<(f64, f64)> {
    if n < 2 || a < 2 || !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!(
            "as_event_bounds needs n >= 2, a >= 2, p in [0, 1]; got ({n}, {a}, {p})"
        )));
    }
    let bad = crate::colorers::bad_edge_probability(n, a, p);
    let af = a as f64;
    let ln_chain = -af * (n as f64 - 2.0) * af.ln() + (af - 1.0) * p.ln() - ln_gamma(af);
    Ok((bad, ln_chain.exp()))
}

/// Which `r` a [`BoundReport`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RIndex {
    At(u64),
    Limit,
}

impl Serialize for RIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RIndex::At(r) => s.serialize_u64(*r),
            RIndex::Limit => s.serialize_str("limit"),
        }
    }
}

/// One row of the bounds table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub n: u32,
    pub r: RIndex,
    pub value: f64,
    /// Exact rational value when one is known.
    pub exact: Option<String>,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(name: &str, r: RIndex, value: f64) -> Self {
        Self {
            name: name.to_owned(),
            n: 3,
            r,
            value,
            exact: None,
            parameters: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn exact(mut self, q: &BigRational) -> Self {
        self.exact = Some(q.to_string());
        self
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn note(mut self, text: &str) -> Self {
        self.notes.push(text.to_owned());
        self
    }

    pub fn csv_header() -> &'static str {
        "name,n,r,value,exact,parameters,notes"
    }

    pub fn to_csv_row(&self) -> String {
        let r = match self.r {
            RIndex::At(r) => r.to_string(),
            RIndex::Limit => "limit".to_owned(),
        };
        let params = serde_json::to_string(&self.parameters).expect("plain map");
        format!(
            "{},{},{},{},{},{},{}",
            self.name,
            self.n,
            r,
            self.value,
            self.exact.as_deref().unwrap_or(""),
            csv_quote(&params),
            csv_quote(&self.notes.join("; "))
        )
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

const ORIENTATION_NOTE: &str = "set-counted chains charged 8/(2r+1)! (either direction ordered); \
     the printed 4/(2r+1)! would certify the Fano plane 2-colorable at r = 2";
const EXPONENT_NOTE: &str = "bad-edge constraint uses (1-p)^2 from the Markov bound; \
     with (1-p)^1 the point (0.42, 0.741, 1.05) is infeasible";

/// Every `n = 3` constant the workbench knows, as limit rows plus the finite
/// thresholds at `r_max`. `f_bound` is the window bound from the
/// f-table pipeline, if already computed.
pub fn bounds_table(r_max: usize, grid: usize, f_bound: Option<BoundReport>) -> Result<Vec<BoundReport>> {
    if r_max < 2 {
        return Err(invalid(format!("r_max must be at least 2, got {r_max}")));
    }
    let r64 = r_max as u64;
    let r3 = (r_max as f64).powi(3);
    let mut rows = Vec::new();

    let alon_limit = ratio(8u32, 27u32);
    rows.push(
        BoundReport::new("alon_recolor", RIndex::Limit, 8.0 / 27.0)
            .exact(&alon_limit)
            .note("attained exactly at every r divisible by 3"),
    );
    let alon_r = alon_ratio(3, r_max)?;
    rows.push(
        BoundReport::new("alon_recolor", RIndex::At(r64), rational_to_f64(&alon_r))
            .exact(&alon_r)
            .param("m_lower", alon_lower(3, r_max)?.to_string()),
    );

    rows.push(
        BoundReport::new("pluhar_random_order", RIndex::Limit, LimitKind::Pluhar.limit())
            .note("4/e^3"),
    );
    let pl = pluhar_threshold(3, r_max, Orientation::AsPrinted)?;
    rows.push(
        BoundReport::new("pluhar_random_order", RIndex::At(r64), pl.edges_u64() as f64 / r3)
            .param("threshold_edges", pl.edges_u64())
            .param("sequence", limit_sequence(LimitKind::Pluhar, r64)?),
    );

    let pure = as_optimize(AsVariant::Pure, AsExponent::Corrected, grid)?;
    rows.push(
        BoundReport::new("akolzin_shabanov_pure", RIndex::Limit, pure.c)
            .param("p", pure.p)
            .param("x", pure.x)
            .param("grid", grid as u64)
            .param("target", 0.205)
            .note(EXPONENT_NOTE),
    );

    if let Some(f) = f_bound {
        rows.push(f);
    }

    let combined = as_optimize(AsVariant::Combined, AsExponent::Corrected, grid)?;
    let target_point = as_feasible(AsVariant::Combined, AsExponent::Corrected, 0.42, 0.741, 1.05);
    rows.push(
        BoundReport::new("akolzin_shabanov_combined", RIndex::Limit, combined.c)
            .param("p", combined.p)
            .param("x", combined.x)
            .param("grid", grid as u64)
            .param("target", 0.42)
            .param("target_point_feasible", target_point)
            .note(EXPONENT_NOTE),
    );

    rows.push(
        BoundReport::new("inducibility_chain", RIndex::Limit, LimitKind::Thm1.limit())
            .note("4/e^2"),
    );
    let t_corr = thm1_threshold(r_max, Orientation::Corrected)?;
    let t_print = thm1_threshold(r_max, Orientation::AsPrinted)?;
    rows.push(
        BoundReport::new("inducibility_chain", RIndex::At(r64), t_corr.edges_u64() as f64 / r3)
            .param("threshold_edges", t_corr.edges_u64())
            .param("threshold_edges_as_printed", t_print.edges_u64())
            .param("sequence", limit_sequence(LimitKind::Thm1, r64)?)
            .note(ORIENTATION_NOTE),
    );

    let up = upper_limit(3)?;
    rows.push(
        BoundReport::new("complete_hypergraph_upper", RIndex::Limit, rational_to_f64(&up))
            .exact(&up)
            .note("upper bound"),
    );
    let erd = erdos_value(3, r_max)?;
    rows.push(
        BoundReport::new(
            "complete_hypergraph_upper",
            RIndex::At(r64),
            rational_to_f64(&(to_rational(erd.clone()) / to_rational(BigUint::from(r_max).pow(3u32)))),
        )
        .param("edges", erd.to_string())
        .note("upper bound"),
    );
    Ok(rows)
}
