//! Log-gamma via the Stirling series.

use std::f64::consts::PI;

/// Shift arguments below this up by the recurrence before using the series.
const SERIES_MIN: f64 = 16.0;

/// Bernoulli-number coefficients `B_{2k} / (2k (2k-1))` for k = 1..=8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs a positive argument, got {x}");
    let mut x = x;
    let mut shift = 0.0;
    while x < SERIES_MIN {
        shift += x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut tail = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        tail += c * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + tail - shift
}

/// `ln(n!)`.
pub fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}
