//! Brute-force ground truth for small `n`: direct enumeration of reduced
//! Farey fractions and of all unreduced pairs, with prime exponents taken by
//! repeated division.
//!
//! This module deliberately shares no code with the sieve or product
//! modules; agreement with it is what validates those.

use alloc::vec::Vec;

use crate::accum::Kahan;
use crate::error::{Error, Result};

/// Enumeration is quadratic in `n`; requests above this are rejected.
pub const ENUMERATION_CEILING: u64 = 5000;

/// A reduced fraction `numer/denom` with `1 <= numer <= denom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FareyFraction {
    pub numer: u64,
    pub denom: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Exponent of `p` in `m` by repeated division; no factor tables.
fn valuation(p: u64, mut m: u64) -> i64 {
    let mut v = 0;
    while m % p == 0 {
        v += 1;
        m /= p;
    }
    v
}

fn check_ceiling(n: u64) -> Result<()> {
    if n > ENUMERATION_CEILING {
        return Err(Error::AboveOracleCeiling { n, ceiling: ENUMERATION_CEILING });
    }
    Ok(())
}

/// All positive Farey fractions of order `n` in increasing order of value
/// (compared by cross multiplication).
pub fn enumerate_farey(n: u64) -> Result<Vec<FareyFraction>> {
    check_ceiling(n)?;
    let mut out = Vec::new();
    for denom in 1..=n {
        for numer in 1..=denom {
            if gcd(numer, denom) == 1 {
                out.push(FareyFraction { numer, denom });
            }
        }
    }
    out.sort_unstable_by(|a, b| (a.numer * b.denom).cmp(&(b.numer * a.denom)));
    Ok(out)
}

/// `ord_p(F-bar_n)` summed fraction by fraction.
pub fn oracle_ord_f(p: u64, n: u64) -> Result<i64> {
    check_ceiling(n)?;
    let mut total = 0i64;
    for denom in 1..=n {
        for numer in 1..=denom {
            if gcd(numer, denom) == 1 {
                total += valuation(p, denom) - valuation(p, numer);
            }
        }
    }
    Ok(total)
}

/// `ln(F-bar_n) = -sum ln(h/k)` over the enumeration, compensated.
pub fn oracle_log_f(n: u64) -> Result<f64> {
    check_ceiling(n)?;
    let mut acc = Kahan::new();
    for denom in 1..=n {
        for numer in 1..=denom {
            if gcd(numer, denom) == 1 {
                acc.add(libm::log(denom as f64) - libm::log(numer as f64));
            }
        }
    }
    Ok(acc.value())
}

/// `ord_p(G-bar_n)` over all pairs `1 <= h <= k <= n`, no gcd filter.
pub fn oracle_ord_g(p: u64, n: u64) -> Result<i64> {
    check_ceiling(n)?;
    let mut total = 0i64;
    for denom in 1..=n {
        for numer in 1..=denom {
            total += valuation(p, denom) - valuation(p, numer);
        }
    }
    Ok(total)
}

/// `ln(G-bar_n)` over all pairs, compensated.
pub fn oracle_unreduced_log(n: u64) -> Result<f64> {
    check_ceiling(n)?;
    let mut acc = Kahan::new();
    for denom in 1..=n {
        for numer in 1..=denom {
            acc.add(libm::log(denom as f64) - libm::log(numer as f64));
        }
    }
    Ok(acc.value())
}

/// `ord_p(F-bar_n)` for every `n = 1..=n_limit` in one enumeration pass,
/// accumulating per-denominator contributions and prefix-summing.
pub fn oracle_ord_f_series(p: u64, n_limit: u64) -> Result<Vec<i64>> {
    check_ceiling(n_limit)?;
    let mut values = Vec::with_capacity(n_limit as usize);
    let mut running = 0i64;
    for denom in 1..=n_limit {
        for numer in 1..=denom {
            if gcd(numer, denom) == 1 {
                running += valuation(p, denom) - valuation(p, numer);
            }
        }
        values.push(running);
    }
    Ok(values)
}
