//! Valuations and archimedean sizes of reduced and unreduced Farey products.
//!
//! The two central integer quantities are `ord_p` of the unreduced product
//! (a closed form in base-`p` digit statistics) and `ord_p` of the reduced
//! product, computable by two independent routes: Möbius inversion of the
//! unreduced valuations, and a direct numerator/denominator count. Both must
//! agree with each other and with the brute-force oracle.

use alloc::vec;
use alloc::vec::Vec;

use crate::accum::{BoundedSum, Kahan, LogValue};
use crate::error::{Error, Result};
use crate::radix::DigitStats;
use crate::sieve::SieveTables;

/// Glaisher–Kinkelin constant `A = exp(1/12 - zeta'(-1))`.
pub const GLAISHER_A: f64 = 1.282_427_129_100_622_6;

/// How a valuation series was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Inversion,
    Direct,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Inversion => "inversion",
            Method::Direct => "direct",
            Method::Oracle => "oracle",
        }
    }
}

/// Integer valuations over an inclusive range of `n`.
#[derive(Debug, Clone)]
pub struct ValuationSeries {
    pub base: u64,
    pub start: u64,
    pub values: Vec<i64>,
    pub method: Method,
}

impl ValuationSeries {
    pub fn value(&self, n: u64) -> i64 {
        self.values[(n - self.start) as usize]
    }

    pub fn end(&self) -> u64 {
        self.start + self.values.len() as u64 - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogKind {
    LogF,
    LogG,
}

/// Floating (natural log) series with its tracked accumulation bound.
#[derive(Debug, Clone)]
pub struct LogSeries {
    pub kind: LogKind,
    pub start: u64,
    pub values: Vec<f64>,
    pub accumulation_error_bound: f64,
}

/// Sizes of the reciprocal Farey product in lowest terms: `log_numer` is the
/// log of the reduced numerator (the large part), `log_denom` of the reduced
/// denominator.
#[derive(Debug, Clone, Copy)]
pub struct LowestTerms {
    pub n: u64,
    pub log_numer: f64,
    pub log_denom: f64,
}

/// `(p-1) * ord_p(G-bar_n)` for any base: `2 S_b(n) - (n-1) d_b(n)`.
pub(crate) fn scaled_nu_g(stats: DigitStats, n: u64) -> i64 {
    2 * stats.digit_summatory(n) - (n as i64 - 1) * stats.digit_sum(n) as i64
}

/// Valuation of the unreduced product at a prime `p`:
/// `(2 S_p(n) - (n-1) d_p(n)) / (p-1)`, always a nonnegative integer.
pub fn ord_g(p: u64, n: u64) -> i64 {
    nu_b_g(p, n)
}

/// Base-`b` generalization of [`ord_g`]; integer-valued for every `b >= 2`
/// but only a true valuation when `b` is prime.
pub fn nu_b_g(b: u64, n: u64) -> i64 {
    let stats = DigitStats::new(b).expect("base must be at least 2");
    let num = scaled_nu_g(stats, n);
    let den = b as i64 - 1;
    assert!(num % den == 0, "digit-formula numerator {num} not divisible by {den} (b={b}, n={n})");
    num / den
}

/// Asymptotic expansion of `ln(G-bar_n)`:
/// `n^2/2 - (n/2) ln n + (1 - ln sqrt(2 pi)) n - (ln n)/3 + g0`, with
/// `g0 = -(1/2) ln(2 pi) - 1/12 + 2 ln A`.
pub fn log_g_asymptotic(n: u64) -> f64 {
    let x = n as f64;
    let ln_x = libm::log(x);
    let ln_two_pi = libm::log(2.0 * core::f64::consts::PI);
    let g0 = -0.5 * ln_two_pi - 1.0 / 12.0 + 2.0 * libm::log(GLAISHER_A);
    0.5 * x * x - 0.5 * x * ln_x + (1.0 - 0.5 * ln_two_pi) * x - ln_x / 3.0 + g0
}

/// Prefix table of `ln k!` and its cumulative sums, grown lazily; gives
/// `ln(G-bar_n) = (n+1) ln n! - 2 sum_{k<=n} ln k!` from the binomial-product
/// identity. All sums are compensated.
#[derive(Debug, Clone)]
pub struct LogGTable {
    ln_fact: Vec<f64>,
    ln_fact_sum: Vec<f64>,
    fact_acc: Kahan,
    sum_acc: Kahan,
}

impl Default for LogGTable {
    fn default() -> Self {
        Self::new()
    }
}

impl LogGTable {
    pub fn new() -> Self {
        Self {
            ln_fact: vec![0.0],
            ln_fact_sum: vec![0.0],
            fact_acc: Kahan::new(),
            sum_acc: Kahan::new(),
        }
    }

    pub fn with_bound(n: u64) -> Self {
        let mut t = Self::new();
        t.ensure(n);
        t
    }

    /// Extends the prefix tables so that `log_g` accepts arguments up to `n`.
    pub fn ensure(&mut self, n: u64) {
        for k in self.ln_fact.len()..=n as usize {
            self.fact_acc.add(libm::log(k as f64));
            self.ln_fact.push(self.fact_acc.value());
            self.sum_acc.add(self.fact_acc.value());
            self.ln_fact_sum.push(self.sum_acc.value());
        }
    }

    pub fn bound(&self) -> u64 {
        self.ln_fact.len() as u64 - 1
    }

    /// `ln(G-bar_n)`. Panics if the table has not been grown to `n`.
    pub fn log_g(&self, n: u64) -> f64 {
        let i = n as usize;
        (n as f64 + 1.0) * self.ln_fact[i] - 2.0 * self.ln_fact_sum[i]
    }

    /// Rounding-error envelope for a single `log_g(n)` value.
    pub fn err_at(&self, n: u64) -> f64 {
        8.0 * f64::EPSILON * ((n as f64 + 1.0) * self.ln_fact[n as usize]).abs()
    }
}

fn check_range(n: u64, t: &SieveTables) -> Result<()> {
    if n == 0 || n > t.n_max() {
        return Err(Error::OutOfRange { n, n_max: t.n_max() });
    }
    Ok(())
}

/// Block-decomposed Möbius sum `sum_{l<=n} mu(l) f(floor(n/l))`:
/// `floor(n/l)` takes ~`2 sqrt(n)` values, each weighted by the Mertens
/// difference over its block.
fn mobius_blocks(n: u64, t: &SieveTables, mut f: impl FnMut(u64) -> i64) -> i64 {
    let mut sum = 0i64;
    let mut l = 1u64;
    while l <= n {
        let v = n / l;
        let l2 = n / v;
        let dm = t.mertens(l2) - t.mertens(l - 1);
        if dm != 0 {
            sum += dm * f(v);
        }
        l = l2 + 1;
    }
    sum
}

/// `ord_p(F-bar_n) = sum_l mu(l) ord_p(G-bar_{floor(n/l)})`, evaluated with
/// the block decomposition; `O(sqrt(n) log n)` per call.
pub fn ord_f_inversion(p: u64, n: u64, t: &SieveTables) -> Result<i64> {
    nu_b_f(p, n, t)
}

/// Möbius inversion of [`nu_b_g`] for an arbitrary base `b >= 2`.
pub fn nu_b_f(b: u64, n: u64, t: &SieveTables) -> Result<i64> {
    check_range(n, t)?;
    let stats = DigitStats::new(b)?;
    let den = b as i64 - 1;
    Ok(mobius_blocks(n, t, |v| {
        let num = scaled_nu_g(stats, v);
        debug_assert!(num % den == 0);
        num / den
    }))
}

/// Precomputed `nu_b(G-bar_m)` for `m` up to a bound; backs fast sweeps.
#[derive(Debug, Clone)]
pub struct OrdGTable {
    base: u64,
    values: Vec<i64>,
}

impl OrdGTable {
    pub fn build(base: u64, bound: u64) -> Result<Self> {
        let stats = DigitStats::new(base)?;
        let den = base as i64 - 1;
        let mut values = Vec::with_capacity(bound as usize + 1);
        values.push(0);
        let mut summatory = 0i64; // S_b(m) maintained incrementally
        for m in 1..=bound {
            let d = stats.digit_sum(m) as i64;
            let num = 2 * summatory - (m as i64 - 1) * d;
            debug_assert!(num % den == 0);
            values.push(num / den);
            summatory += d;
        }
        Ok(Self { base, values })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn bound(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn value(&self, m: u64) -> i64 {
        self.values[m as usize]
    }

    pub fn values(&self) -> &[i64] {
        &self.values[1..]
    }
}

/// Table-backed variant of [`ord_f_inversion`] for sweeps.
pub fn ord_f_from_table(g: &OrdGTable, n: u64, t: &SieveTables) -> Result<i64> {
    check_range(n, t)?;
    if n > g.bound() {
        return Err(Error::OutOfRange { n, n_max: g.bound() });
    }
    Ok(mobius_blocks(n, t, |v| g.value(v)))
}

fn inverted_series(base: u64, n_limit: u64, t: &SieveTables) -> Result<ValuationSeries> {
    check_range(n_limit, t)?;
    let g = OrdGTable::build(base, n_limit)?;
    let values =
        (1..=n_limit).map(|n| mobius_blocks(n, t, |v| g.value(v))).collect();
    Ok(ValuationSeries { base, start: 1, values, method: Method::Inversion })
}

/// Inversion-method sweep of `ord_p(F-bar_n)` for `n = 1..=n_limit`.
pub fn ord_f_series(p: u64, n_limit: u64, t: &SieveTables) -> Result<ValuationSeries> {
    inverted_series(p, n_limit, t)
}

/// Inversion-method sweep of `nu_b(F-bar_n)` for `n = 1..=n_limit`.
pub fn nu_b_f_series(b: u64, n_limit: u64, t: &SieveTables) -> Result<ValuationSeries> {
    inverted_series(b, n_limit, t)
}

/// `ord_p` of the Farey product denominator: `sum_b sum_a phi(a p^b)` over
/// `p^b <= n`, `a <= n / p^b`.
pub fn ord_d(p: u64, n: u64, t: &SieveTables) -> Result<i64> {
    check_range(n, t)?;
    let mut total = 0i64;
    let mut pb = p;
    while pb <= n {
        for a in 1..=(n / pb) {
            total += t.phi(a * pb) as i64;
        }
        match pb.checked_mul(p) {
            Some(next) => pb = next,
            None => break,
        }
    }
    Ok(total)
}

/// Count of integers in `[1, d]` coprime to the radical given by
/// `distinct_primes`, by inclusion–exclusion (the `sum_{j} mu(j) floor(d/j)`
/// over squarefree divisors).
fn coprime_count(d: u64, distinct_primes: &[u64]) -> i64 {
    let mut total = 0i64;
    for mask in 0u32..(1u32 << distinct_primes.len()) {
        let mut j = 1u64;
        for (i, &q) in distinct_primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                j *= q;
            }
        }
        let term = (d / j) as i64;
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `ord_p` of the Farey product numerator: counts, for every modulus
/// `a p^b <= n`, the complete residue systems cycled through plus the
/// coprime part of the partial residue system of length `n mod a p^b`.
pub fn ord_n(p: u64, n: u64, t: &SieveTables) -> Result<i64> {
    check_range(n, t)?;
    let mut total = 0i64;
    let mut primes_buf: Vec<u64> = Vec::new();
    let mut pb = p;
    while pb <= n {
        for a in 1..=(n / pb) {
            let m = a * pb;
            total += t.phi(m) as i64 * ((n / m) as i64 - 1);
            let d = n % m;
            if d > 0 {
                primes_buf.clear();
                primes_buf.push(p);
                let mut x = a;
                while x > 1 {
                    let q = t.smallest_prime_factor(x);
                    if q != p {
                        primes_buf.push(q);
                    }
                    while x % q == 0 {
                        x /= q;
                    }
                }
                total += coprime_count(d, &primes_buf);
            }
        }
        match pb.checked_mul(p) {
            Some(next) => pb = next,
            None => break,
        }
    }
    Ok(total)
}

/// Direct route: `ord_p(F-bar_n) = ord_p(D_n) - ord_p(N_n)`.
pub fn ord_f_direct(p: u64, n: u64, t: &SieveTables) -> Result<i64> {
    Ok(ord_d(p, n, t)? - ord_n(p, n, t)?)
}

/// Direct-method sweep for `n = 1..=n_limit`.
pub fn ord_f_series_direct(p: u64, n_limit: u64, t: &SieveTables) -> Result<ValuationSeries> {
    check_range(n_limit, t)?;
    let values = (1..=n_limit).map(|n| ord_f_direct(p, n, t)).collect::<Result<_>>()?;
    Ok(ValuationSeries { base: p, start: 1, values, method: Method::Direct })
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn small_mobius(limit: usize) -> Vec<i8> {
    let mut mu = vec![0i8; limit + 1];
    let mut spf = vec![0u32; limit + 1];
    let mut primes: Vec<u32> = Vec::new();
    if limit >= 1 {
        mu[1] = 1;
    }
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            mu[i] = -1;
            primes.push(i as u32);
        }
        for &p in &primes {
            let ip = i * p as usize;
            if p > spf[i] || ip > limit {
                break;
            }
            spf[ip] = p;
            if i % p as usize == 0 {
                mu[ip] = 0;
                break;
            } else {
                mu[ip] = -mu[i];
            }
        }
    }
    mu
}

/// Closed form for `ord_p(F-bar_{p^2 - 1})`, odd primes only:
/// `(p-1) - sum_{k=1}^{p-1} mu(k) floor((p-1)/k) b_k` with
/// `b_k = floor((p^2-1)/k) - p floor((p-1)/k)`.
///
/// Self-contained (builds its own small Möbius table) so it can cross-check
/// the inversion route without sharing tables with it.
pub fn ord_f_psq_closed(p: u64) -> Result<i64> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::NotOddPrime { p });
    }
    let mu = small_mobius((p - 1) as usize);
    let n = p * p - 1;
    let mut sum = 0i64;
    for k in 1..=(p - 1) {
        let m = mu[k as usize] as i64;
        if m == 0 {
            continue;
        }
        let a_k = ((p - 1) / k) as i64;
        let b_k = (n / k) as i64 - p as i64 * a_k;
        sum += m * a_k * b_k;
    }
    Ok((p as i64 - 1) - sum)
}

/// `ln(F-bar_n) = sum_l mu(l) ln(G-bar_{floor(n/l)})` by block decomposition.
/// The table must be grown to `n`.
pub fn log_f(n: u64, t: &SieveTables, g: &LogGTable) -> Result<LogValue> {
    check_range(n, t)?;
    assert!(g.bound() >= n, "log table built to {} but n = {n}", g.bound());
    let mut acc = BoundedSum::new();
    let mut terms = 0u64;
    let mut l = 1u64;
    while l <= n {
        let v = n / l;
        let l2 = n / v;
        let dm = t.mertens(l2) - t.mertens(l - 1);
        if dm != 0 {
            acc.add(dm as f64 * g.log_g(v));
            terms += 1;
        }
        l = l2 + 1;
    }
    let err_bound = acc.err_bound() + terms as f64 * g.err_at(n);
    Ok(LogValue { value: acc.value(), err_bound })
}

/// Sweep of `ln(F-bar_n)` for `n = 1..=n_limit`.
pub fn log_f_series(n_limit: u64, t: &SieveTables, g: &LogGTable) -> Result<LogSeries> {
    check_range(n_limit, t)?;
    let mut values = Vec::with_capacity(n_limit as usize);
    let mut worst = 0f64;
    for n in 1..=n_limit {
        let lv = log_f(n, t, g)?;
        values.push(lv.value);
        worst = worst.max(lv.err_bound);
    }
    Ok(LogSeries { kind: LogKind::LogF, start: 1, values, accumulation_error_bound: worst })
}

/// Splits `ln(F-bar_n)` over primes `p <= n` into the lowest-terms numerator
/// and denominator logs using the per-prime valuations.
pub fn lowest_terms_logs(n: u64, t: &SieveTables) -> Result<LowestTerms> {
    check_range(n, t)?;
    let mut numer = Kahan::new();
    let mut denom = Kahan::new();
    for &p in t.primes() {
        let p = p as u64;
        if p > n {
            break;
        }
        let e = ord_f_inversion(p, n, t)?;
        if e > 0 {
            numer.add(e as f64 * libm::log(p as f64));
        } else if e < 0 {
            denom.add(-e as f64 * libm::log(p as f64));
        }
    }
    Ok(LowestTerms { n, log_numer: numer.value(), log_denom: denom.value() })
}

/// All `n <= n_limit` for which the reciprocal Farey product is an integer,
/// i.e. `ord_p(F-bar_n) >= 0` for every prime `p <= n`. Primes above `n`
/// cannot occur in either part of the product.
pub fn integer_farey_scan(n_limit: u64, t: &SieveTables) -> Result<Vec<u64>> {
    check_range(n_limit, t)?;
    let mut result = Vec::new();
    'outer: for n in 1..=n_limit {
        for &p in t.primes() {
            let p = p as u64;
            if p > n {
                break;
            }
            if ord_f_inversion(p, n, t)? < 0 {
                continue 'outer;
            }
        }
        result.push(n);
    }
    Ok(result)
}

/// One sampled point of a valuation at a power of the base.
#[derive(Debug, Clone, Copy)]
pub struct PowerPoint {
    pub exponent: u32,
    pub n: u64,
    pub value: i64,
}

/// Sign and growth statistics for `ord_p(F-bar_n)` over `1..=n_limit`.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub base: u64,
    pub n_limit: u64,
    /// Values at `n = p^k - 1` (expected nonpositive).
    pub at_power_minus_one: Vec<PowerPoint>,
    /// Exponents `k` where the value at `p^k - 1` is positive.
    pub nonpositive_violations: Vec<u32>,
    /// Values at `n = p^k` (expected positive).
    pub at_power: Vec<PowerPoint>,
    /// Exponents `k` where the value at `p^k` is not positive.
    pub positive_violations: Vec<u32>,
    pub count_positive: u64,
    pub count_negative: u64,
    pub count_zero: u64,
    /// Max of `|ord| / (n log_p n)` over `2 <= n <= n_limit`.
    pub max_growth_ratio: f64,
    pub max_growth_ratio_n: u64,
}

/// Sweeps `ord_p(F-bar_n)` to `n_limit` and reports the sign pattern at
/// powers of `p`, global sign counts, and the growth envelope.
pub fn property_scan(p: u64, n_limit: u64, t: &SieveTables) -> Result<PropertyReport> {
    let series = ord_f_series(p, n_limit, t)?;
    let mut at_power_minus_one = Vec::new();
    let mut at_power = Vec::new();
    let mut nonpositive_violations = Vec::new();
    let mut positive_violations = Vec::new();
    let mut pk = p;
    let mut k = 1u32;
    loop {
        if pk - 1 >= 1 && pk - 1 <= n_limit {
            let value = series.value(pk - 1);
            at_power_minus_one.push(PowerPoint { exponent: k, n: pk - 1, value });
            if value > 0 {
                nonpositive_violations.push(k);
            }
        }
        if pk <= n_limit {
            let value = series.value(pk);
            at_power.push(PowerPoint { exponent: k, n: pk, value });
            if value <= 0 {
                positive_violations.push(k);
            }
        } else {
            break;
        }
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => break,
        }
        k += 1;
    }

    let mut count_positive = 0;
    let mut count_negative = 0;
    let mut count_zero = 0;
    let mut max_growth_ratio = 0f64;
    let mut max_growth_ratio_n = 0u64;
    let ln_p = libm::log(p as f64);
    for n in 1..=n_limit {
        let v = series.value(n);
        match v.cmp(&0) {
            core::cmp::Ordering::Greater => count_positive += 1,
            core::cmp::Ordering::Less => count_negative += 1,
            core::cmp::Ordering::Equal => count_zero += 1,
        }
        if n >= 2 {
            let ratio = v.unsigned_abs() as f64 / (n as f64 * libm::log(n as f64) / ln_p);
            if ratio > max_growth_ratio {
                max_growth_ratio = ratio;
                max_growth_ratio_n = n;
            }
        }
    }

    Ok(PropertyReport {
        base: p,
        n_limit,
        at_power_minus_one,
        nonpositive_violations,
        at_power,
        positive_violations,
        count_positive,
        count_negative,
        count_zero,
        max_growth_ratio,
        max_growth_ratio_n,
    })
}
