//! Exact integer arithmetic: binomial coefficients, integer roots.
//!
//! Everything here is checked. Quantities like `C(n,k)` for n up to 64 and
//! products of two edge counts overflow 64 bits long before they overflow
//! 128, so all values are carried as `u128` and any genuine overflow is
//! reported as an error instead of wrapping.

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, r)` as an exact `u128`.
///
/// Returns 0 when `r > n`. Errors only on genuine `u128` overflow.
pub fn binom(n: usize, r: usize) -> Result<u128> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is always divisible by (i + 1) here: the running
        // value is C(n, i+1) after the division.
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// Checked product with a named context for the error message.
pub fn mul(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

/// Checked sum with a named context for the error message.
pub fn add(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

/// Floor of the square root of `x`.
pub fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    // Newton iteration from an overshooting seed; converges in a few steps.
    let mut guess = 1u128 << (x.ilog2() / 2 + 1);
    loop {
        let next = (guess + x / guess) / 2;
        if next >= guess {
            return guess;
        }
        guess = next;
    }
}

/// `x^e` with overflow checking.
pub fn pow(x: u128, e: u32, what: &'static str) -> Result<u128> {
    x.checked_pow(e).ok_or(Error::Overflow(what))
}

/// Largest `t >= 0` with `t^e <= x` (floor of the e-th root).
pub fn floor_root(x: u128, e: u32) -> u128 {
    assert!(e >= 1);
    if e == 1 || x < 2 {
        return x;
    }
    let mut lo = 0u128;
    let mut hi = 1u128 << (x.ilog2() / e + 1);
    // invariant: lo^e <= x < hi^e (hi may saturate)
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(e) {
            Some(p) if p <= x => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}
