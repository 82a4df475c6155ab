//! Base-`b` digit statistics: digit sums, the digit summatory function, and
//! the empirical Delange periodic function.

use crate::error::{Error, Result};

/// Largest `n` accepted by [`DigitStats::digit_summatory`]; keeps every
/// intermediate product inside `u128` and the result inside `i64` for all
/// bases of practical size.
pub const DIGIT_SUMMATORY_BOUND: u64 = 1_000_000_000_000_000;

/// Stateless evaluator for digit statistics to a fixed base `b >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitStats {
    base: u64,
}

impl DigitStats {
    pub fn new(base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase { base });
        }
        Ok(Self { base })
    }

    pub fn base(self) -> u64 {
        self.base
    }

    /// Sum of the base-`b` digits of `n`; `0` for `n = 0`.
    pub fn digit_sum(self, n: u64) -> u64 {
        let mut n = n;
        let mut sum = 0;
        while n > 0 {
            sum += n % self.base;
            n /= self.base;
        }
        sum
    }

    /// Digit summatory function `S_b(n) = sum_{j=0}^{n-1} d_b(j)`.
    ///
    /// Evaluated per digit position in O(log n): each position contributes
    /// its complete digit cycles plus a partial cycle, so no prefix table of
    /// length `n` is ever needed.
    pub fn digit_summatory(self, n: u64) -> i64 {
        assert!(
            n <= DIGIT_SUMMATORY_BOUND,
            "digit_summatory argument {n} above overflow guard {DIGIT_SUMMATORY_BOUND}"
        );
        let b = self.base as u128;
        let n = n as u128;
        let full_cycle = b * (b - 1) / 2;
        let mut total: u128 = 0;
        let mut place: u128 = 1;
        while place < n {
            let cycle = place * b;
            let full = n / cycle;
            let rem = n % cycle;
            let digit = rem / place;
            let low = rem % place;
            total += full * full_cycle * place
                + digit * digit.saturating_sub(1) / 2 * place
                + digit * low;
            place = cycle;
        }
        i64::try_from(total).expect("digit summatory overflow")
    }

    /// Exact rearrangement of Delange's decomposition:
    /// `f_b(log_b n) = S_b(n)/n - ((b-1)/2) log_b n`, for `n >= 1`.
    ///
    /// Vanishes at exact powers of `b` since `S_b(b^k) = (b-1) k b^k / 2`.
    pub fn delange_f(self, n: u64) -> f64 {
        assert!(n >= 1, "delange_f requires n >= 1");
        let s = self.digit_summatory(n) as f64;
        let half_bm1 = (self.base - 1) as f64 / 2.0;
        s / n as f64 - half_bm1 * libm::log(n as f64) / libm::log(self.base as f64)
    }

    /// Mean value of the Delange periodic function over one period:
    /// `(b-1)/(2 ln b) * (ln(2 pi) - 1) - (b+1)/4`.
    pub fn delange_c0(self) -> f64 {
        let b = self.base as f64;
        let two_pi = 2.0 * core::f64::consts::PI;
        (b - 1.0) / (2.0 * libm::log(b)) * (libm::log(two_pi) - 1.0) - (b + 1.0) / 4.0
    }
}
