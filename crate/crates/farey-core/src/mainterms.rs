//! Main-term/remainder-term decompositions of `ln(F-bar_n)` and of
//! `ord_p(F-bar_n)`.
//!
//! Each split follows the Dirichlet hyperbola pattern: a short Möbius sum
//! over `k <= K_n` (values of `G-bar` at large arguments) plus a sum over
//! small arguments `l <= L_n` weighted by Mertens differences. With
//! `L_n = floor(sqrt(n))` and `K_n = floor(n / (L_n + 1))` the two parts
//! partition the full Möbius sum exactly, so every p-adic identity here is
//! checked in integer arithmetic with zero tolerance.

use alloc::vec::Vec;

use crate::accum::{BoundedSum, LogValue};
use crate::error::{Error, Result};
use crate::products::{self, LogGTable};
use crate::radix::DigitStats;
use crate::sieve::{binomial_count, SieveTables};

/// Hyperbola-split cutoffs for a given `n`: the remainder sum runs over
/// grouped values `l <= grouped_cutoff = floor(sqrt(n))`, the main sum over
/// direct Möbius terms `k <= direct_cutoff = floor(n / (grouped_cutoff+1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitParams {
    pub n: u64,
    pub grouped_cutoff: u64,
    pub direct_cutoff: u64,
}

impl SplitParams {
    pub fn new(n: u64) -> Self {
        let grouped_cutoff = n.isqrt();
        let direct_cutoff = n / (grouped_cutoff + 1);
        Self { n, grouped_cutoff, direct_cutoff }
    }
}

fn check_range(n: u64, t: &SieveTables) -> Result<()> {
    if n == 0 || n > t.n_max() {
        return Err(Error::OutOfRange { n, n_max: t.n_max() });
    }
    Ok(())
}

/// `ln(F-bar_n) - Phi(n) + psi(n)/2`, the remainder of the classical
/// main-term approximation; `n >= 2`.
pub fn mikolas_remainder(n: u64, t: &SieveTables, g: &LogGTable) -> Result<f64> {
    if n < 2 {
        return Err(Error::OutOfRange { n, n_max: t.n_max() });
    }
    let lf = products::log_f(n, t, g)?;
    Ok(lf.value - t.phi_summatory(n)? as f64 + t.psi(n) / 2.0)
}

/// Full-range Möbius sum of the unreduced pair count:
/// `(1/2) sum_k mu(k) floor(n/k) (floor(n/k)+1)`, block-decomposed in exact
/// integers. Equals `Phi(n)`.
pub fn phi_inf_1(n: u64, t: &SieveTables) -> Result<i64> {
    check_range(n, t)?;
    let mut sum = 0i64;
    let mut l = 1u64;
    while l <= n {
        let v = n / l;
        let l2 = n / v;
        let dm = t.mertens(l2) - t.mertens(l - 1);
        if dm != 0 {
            sum += dm * binomial_count(v);
        }
        l = l2 + 1;
    }
    Ok(sum)
}

/// Short-sum correction `sum_{k<=K_n} mu(k) (ln(G-bar_{floor(n/k)}) -
/// Phi*(floor(n/k)))`.
pub fn phi_inf_2(n: u64, t: &SieveTables, g: &LogGTable) -> Result<LogValue> {
    check_range(n, t)?;
    assert!(g.bound() >= n, "log table built to {} but n = {n}", g.bound());
    let params = SplitParams::new(n);
    let mut acc = BoundedSum::new();
    let mut terms = 0u64;
    for k in 1..=params.direct_cutoff {
        let mu = t.mu(k);
        if mu != 0 {
            let v = n / k;
            acc.add(mu as f64 * (g.log_g(v) - binomial_count(v) as f64));
            terms += 1;
        }
    }
    let err_bound = acc.err_bound() + terms as f64 * g.err_at(n);
    Ok(LogValue { value: acc.value(), err_bound })
}

fn r_inf_grouped_sum(n: u64, t: &SieveTables, g: &LogGTable) -> (LogValue, u64) {
    let params = SplitParams::new(n);
    let mut acc = BoundedSum::new();
    let mut terms = 0u64;
    for l in 1..=params.grouped_cutoff {
        let dm = t.mertens(n / l) - t.mertens(n / (l + 1));
        if dm != 0 {
            acc.add(dm as f64 * (g.log_g(l) - binomial_count(l) as f64));
            terms += 1;
        }
    }
    let err = acc.err_bound() + terms as f64 * g.err_at(params.grouped_cutoff);
    (LogValue { value: acc.value(), err_bound: err }, terms)
}

/// Archimedean remainder `R-bar_inf(n) = sum_{l<=L_n} (M(n/l) - M(n/(l+1)))
/// (ln(G-bar_l) - l(l+1)/2)`.
///
/// Computed by that grouped sum and cross-checked against
/// `ln(F-bar_n) - Phi_inf_1(n) - Phi_inf_2(n)`; disagreement beyond the
/// tracked accumulation bounds reports a cross-check error.
pub fn r_inf(n: u64, t: &SieveTables, g: &LogGTable) -> Result<LogValue> {
    check_range(n, t)?;
    let (grouped, _) = r_inf_grouped_sum(n, t, g);
    let lf = products::log_f(n, t, g)?;
    let p1 = phi_inf_1(n, t)?;
    let p2 = phi_inf_2(n, t, g)?;
    let other = lf.value - p1 as f64 - p2.value;
    let tol = grouped.err_bound + lf.err_bound + p2.err_bound + 1e-9;
    if (grouped.value - other).abs() > tol {
        return Err(Error::CrossCheck { what: "archimedean remainder" });
    }
    Ok(grouped)
}

/// Archimedean main term `Phi_inf(n) = Phi_inf_1(n) + Phi_inf_2(n)`.
pub fn phi_inf(n: u64, t: &SieveTables, g: &LogGTable) -> Result<LogValue> {
    let p1 = phi_inf_1(n, t)?;
    let p2 = phi_inf_2(n, t, g)?;
    Ok(LogValue { value: p1 as f64 + p2.value, err_bound: p2.err_bound })
}

/// Which full-range correction the p-adic arithmetic term carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadicKind {
    /// No full-range correction; short sum of `ord_p(G-bar)` only.
    P0,
    /// Full-range correction removing the digit-sum part.
    P1,
    /// Full-range correction removing the digit-summatory part.
    P2,
}

impl PadicKind {
    pub fn name(self) -> &'static str {
        match self {
            PadicKind::P0 => "p0",
            PadicKind::P1 => "p1",
            PadicKind::P2 => "p2",
        }
    }
}

/// Exact rational with fixed denominator `p - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicValue {
    pub numer: i64,
    pub denom: u64,
}

impl PadicValue {
    pub fn as_f64(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }

    pub fn is_integer(self) -> bool {
        self.numer % self.denom as i64 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.numer / self.denom as i64)
        } else {
            None
        }
    }
}

/// `(m-1) d_p(m)`, the oscillatory part of the scaled digit formula.
fn weighted_digit(stats: DigitStats, m: u64) -> i64 {
    (m as i64 - 1) * stats.digit_sum(m) as i64
}

/// `2 S_p(m)`, the smooth part of the scaled digit formula.
fn twice_summatory(stats: DigitStats, m: u64) -> i64 {
    2 * stats.digit_summatory(m)
}

/// Block-decomposed full-range Möbius sum of `f(floor(n/k))`.
fn full_mobius_sum(n: u64, t: &SieveTables, mut f: impl FnMut(u64) -> i64) -> i64 {
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

/// Short Möbius sum over `k <= direct_cutoff` of `f(floor(n/k))`.
fn short_mobius_sum(n: u64, t: &SieveTables, mut f: impl FnMut(u64) -> i64) -> i64 {
    let params = SplitParams::new(n);
    let mut sum = 0i64;
    for k in 1..=params.direct_cutoff {
        let mu = t.mu(k);
        if mu != 0 {
            sum += mu * f(n / k);
        }
    }
    sum
}

fn phi_p_scaled(kind: PadicKind, stats: DigitStats, n: u64, t: &SieveTables) -> i64 {
    match kind {
        PadicKind::P0 => short_mobius_sum(n, t, |m| {
            twice_summatory(stats, m) - weighted_digit(stats, m)
        }),
        PadicKind::P1 => {
            -full_mobius_sum(n, t, |m| weighted_digit(stats, m))
                + short_mobius_sum(n, t, |m| twice_summatory(stats, m))
        }
        PadicKind::P2 => {
            full_mobius_sum(n, t, |m| twice_summatory(stats, m))
                - short_mobius_sum(n, t, |m| weighted_digit(stats, m))
        }
    }
}

fn r_p_scaled(kind: PadicKind, stats: DigitStats, n: u64, t: &SieveTables) -> i64 {
    let params = SplitParams::new(n);
    let mut sum = 0i64;
    for l in 1..=params.grouped_cutoff {
        let dm = t.mertens(n / l) - t.mertens(n / (l + 1));
        if dm == 0 {
            continue;
        }
        let w = match kind {
            PadicKind::P0 => twice_summatory(stats, l) - weighted_digit(stats, l),
            PadicKind::P1 => twice_summatory(stats, l),
            PadicKind::P2 => -weighted_digit(stats, l),
        };
        sum += dm * w;
    }
    sum
}

/// `(Phi_{p,kind}(n), R-bar_{p,kind}(n))` as exact rationals over `p - 1`.
///
/// The pair is verified to sum to `ord_p(F-bar_n)` exactly before being
/// returned.
pub fn padic_split(
    kind: PadicKind,
    p: u64,
    n: u64,
    t: &SieveTables,
) -> Result<(PadicValue, PadicValue)> {
    check_range(n, t)?;
    let stats = DigitStats::new(p)?;
    let denom = p - 1;
    let main = phi_p_scaled(kind, stats, n, t);
    let remainder = r_p_scaled(kind, stats, n, t);
    let total = products::ord_f_inversion(p, n, t)?;
    if main + remainder != total * denom as i64 {
        return Err(Error::CrossCheck { what: "p-adic split" });
    }
    Ok((PadicValue { numer: main, denom }, PadicValue { numer: remainder, denom }))
}

/// The p-adic arithmetic term `Phi_{p,kind}(n)`.
pub fn phi_p(kind: PadicKind, p: u64, n: u64, t: &SieveTables) -> Result<PadicValue> {
    Ok(padic_split(kind, p, n, t)?.0)
}

/// The p-adic remainder `R-bar_{p,kind}(n)`, evaluated by the grouped sum
/// and cross-checked against `ord_p(F-bar_n) - Phi_{p,kind}(n)`.
pub fn r_p(kind: PadicKind, p: u64, n: u64, t: &SieveTables) -> Result<PadicValue> {
    Ok(padic_split(kind, p, n, t)?.1)
}

/// Which decomposition a [`SplitSeries`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitKind {
    Mikolas,
    Inf,
    Padic(PadicKind),
}

impl SplitKind {
    pub fn name(self) -> &'static str {
        match self {
            SplitKind::Mikolas => "mikolas",
            SplitKind::Inf => "inf",
            SplitKind::Padic(k) => k.name(),
        }
    }
}

/// Lossless integer payload of a p-adic split series.
#[derive(Debug, Clone)]
pub struct SplitExact {
    pub denom: u64,
    pub main_num: Vec<i64>,
    pub remainder_num: Vec<i64>,
}

/// Per-`n` main and remainder values of one decomposition.
#[derive(Debug, Clone)]
pub struct SplitSeries {
    pub kind: SplitKind,
    pub prime: Option<u64>,
    pub start: u64,
    pub main: Vec<f64>,
    pub remainder: Vec<f64>,
    /// Exact numerators over `denom = p - 1` for p-adic kinds.
    pub exact: Option<SplitExact>,
    pub accumulation_error_bound: f64,
}

/// Builds the split series for `n` up to `n_limit` (from `n = 2` for the
/// Mikolás kind, `n = 1` otherwise).
pub fn split_series(
    kind: SplitKind,
    prime: Option<u64>,
    n_limit: u64,
    t: &SieveTables,
    g: &LogGTable,
) -> Result<SplitSeries> {
    check_range(n_limit, t)?;
    match kind {
        SplitKind::Mikolas => {
            if n_limit < 2 {
                return Err(Error::OutOfRange { n: n_limit, n_max: t.n_max() });
            }
            let mut main = Vec::new();
            let mut remainder = Vec::new();
            let mut worst = 0f64;
            for n in 2..=n_limit {
                let m = t.phi_summatory(n)? as f64 - t.psi(n) / 2.0;
                let lf = products::log_f(n, t, g)?;
                main.push(m);
                remainder.push(lf.value - m);
                worst = worst.max(lf.err_bound);
            }
            Ok(SplitSeries {
                kind,
                prime: None,
                start: 2,
                main,
                remainder,
                exact: None,
                accumulation_error_bound: worst,
            })
        }
        SplitKind::Inf => {
            let mut main = Vec::new();
            let mut remainder = Vec::new();
            let mut worst = 0f64;
            for n in 1..=n_limit {
                let m = phi_inf(n, t, g)?;
                let r = r_inf(n, t, g)?;
                main.push(m.value);
                remainder.push(r.value);
                worst = worst.max(m.err_bound.max(r.err_bound));
            }
            Ok(SplitSeries {
                kind,
                prime: None,
                start: 1,
                main,
                remainder,
                exact: None,
                accumulation_error_bound: worst,
            })
        }
        SplitKind::Padic(pk) => {
            let p = prime.expect("p-adic split series requires a prime");
            let denom = p - 1;
            let mut main = Vec::new();
            let mut remainder = Vec::new();
            let mut main_num = Vec::new();
            let mut remainder_num = Vec::new();
            for n in 1..=n_limit {
                let (m, r) = padic_split(pk, p, n, t)?;
                main.push(m.as_f64());
                remainder.push(r.as_f64());
                main_num.push(m.numer);
                remainder_num.push(r.numer);
            }
            Ok(SplitSeries {
                kind,
                prime: Some(p),
                start: 1,
                main,
                remainder,
                exact: Some(SplitExact { denom, main_num, remainder_num }),
                accumulation_error_bound: 0.0,
            })
        }
    }
}

/// Default multiplier on the median absolute increment used to flag jumps.
pub const DEFAULT_JUMP_FACTOR: f64 = 4.0;

/// One location where either remainder series jumps.
#[derive(Debug, Clone, Copy)]
pub struct JumpRow {
    pub n: u64,
    /// Increment of `R-bar_inf` at `n`.
    pub delta_inf: f64,
    /// Increment of `R-bar_{p,1}` at `n` (its negation tracks `delta_inf`).
    pub delta_p: f64,
    /// `Some(m)` when `n = m (m+1)`.
    pub pronic_m: Option<u64>,
    /// `mu(m)` when pronic, else 0.
    pub mu_m: i64,
    pub in_inf: bool,
    pub in_p: bool,
}

/// Jump comparison of `R-bar_inf` against `R-bar_{p,1}`.
#[derive(Debug, Clone)]
pub struct JumpReport {
    pub prime: u64,
    pub n_limit: u64,
    pub threshold_inf: f64,
    pub threshold_p: f64,
    pub rows: Vec<JumpRow>,
    pub common_count: usize,
    pub inf_only: usize,
    pub p_only: usize,
    /// Median of `|delta_p| / |delta_inf|` over common jump locations.
    pub median_ratio: f64,
    /// Raw increments of `R-bar_inf` at `n = 2..=n_limit`.
    pub deltas_inf: Vec<f64>,
    /// Raw increments of `R-bar_{p,1}` at `n = 2..=n_limit`.
    pub deltas_p: Vec<f64>,
}

fn median(values: &mut Vec<f64>) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_unstable_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}

/// Locates jumps of `R-bar_inf(n)` and of `R-bar_{p,1}(n)` over
/// `n <= n_limit` (increments above `factor` times the median absolute
/// increment), tags each location with the pronic decomposition `n = m(m+1)`
/// where present, and reports the magnitude ratio over common locations.
/// The two series jump together with opposite signs.
pub fn jump_correlation_report(
    p: u64,
    n_limit: u64,
    factor: f64,
    t: &SieveTables,
    g: &LogGTable,
) -> Result<JumpReport> {
    check_range(n_limit, t)?;
    let stats = DigitStats::new(p)?;
    let denom = (p - 1) as f64;
    let mut inf_vals = Vec::with_capacity(n_limit as usize);
    let mut p_vals = Vec::with_capacity(n_limit as usize);
    for n in 1..=n_limit {
        let (grouped, _) = r_inf_grouped_sum(n, t, g);
        inf_vals.push(grouped.value);
        p_vals.push(r_p_scaled(PadicKind::P1, stats, n, t) as f64 / denom);
    }

    let deltas =
        |vals: &[f64]| (1..vals.len()).map(|i| vals[i] - vals[i - 1]).collect::<Vec<f64>>();
    let d_inf = deltas(&inf_vals);
    let d_p = deltas(&p_vals);
    let mut abs_inf: Vec<f64> = d_inf.iter().map(|d| d.abs()).collect();
    let mut abs_p: Vec<f64> = d_p.iter().map(|d| d.abs()).collect();
    let threshold_inf = factor * median(&mut abs_inf);
    let threshold_p = factor * median(&mut abs_p);

    let mut rows = Vec::new();
    let mut common_count = 0;
    let mut inf_only = 0;
    let mut p_only = 0;
    let mut ratios = Vec::new();
    for i in 0..d_inf.len() {
        let n = i as u64 + 2;
        let in_inf = d_inf[i].abs() > threshold_inf;
        let in_p = d_p[i].abs() > threshold_p;
        if !in_inf && !in_p {
            continue;
        }
        let m = n.isqrt();
        let pronic_m = if m * (m + 1) == n { Some(m) } else { None };
        let mu_m = pronic_m.map_or(0, |m| t.mu(m));
        if in_inf && in_p {
            common_count += 1;
            ratios.push(d_p[i].abs() / d_inf[i].abs());
        } else if in_inf {
            inf_only += 1;
        } else {
            p_only += 1;
        }
        rows.push(JumpRow { n, delta_inf: d_inf[i], delta_p: d_p[i], pronic_m, mu_m, in_inf, in_p });
    }

    Ok(JumpReport {
        prime: p,
        n_limit,
        threshold_inf,
        threshold_p,
        rows,
        common_count,
        inf_only,
        p_only,
        median_ratio: median(&mut ratios),
        deltas_inf: d_inf,
        deltas_p: d_p,
    })
}
