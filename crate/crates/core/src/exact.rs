//! Big-integer helpers: factorials, binomials, logarithms and integer
//! thresholds of the form `k * E^r < Q`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn factorial(n: usize) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // each partial product is an integer binomial coefficient
    (0..k as u64).fold(BigUint::one(), |acc, i| acc * (n as u64 - i) / (i + 1))
}

pub fn to_rational(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Natural logarithm of a positive big integer, accurate to f64 precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    // keep the top 64 bits as mantissa
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Rational to f64 via integer logarithms, safe for huge numerators and denominators.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    if x.is_zero() {
        return 0.0;
    }
    let sign = if x.numer() < &BigInt::zero() { -1.0 } else { 1.0 };
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    sign * (ln_biguint(num) - ln_biguint(den)).exp()
}

/// Largest non-negative integer `e` with `coef * e^r < bound`, or `None`
/// when even `e = 0` fails (i.e. `bound == 0`).
pub fn largest_strictly_below(coef: &BigUint, r: u32, bound: &BigUint) -> Option<BigUint> {
    if bound.is_zero() {
        return None;
    }
    assert!(!coef.is_zero() && r > 0);
    let holds = |e: &BigUint| coef * e.pow(r) < *bound;
    // floor((bound / coef)^(1/r)) is within one of the answer
    let mut e = (bound / coef).nth_root(r);
    while !holds(&e) {
        e -= 1u32;
    }
    while holds(&(&e + 1u32)) {
        e += 1u32;
    }
    Some(e)
}
