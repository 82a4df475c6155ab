//! Compensated floating-point accumulation.

/// Kahan–Babuška (Neumaier) compensated sum.
///
/// Differences of near-equal large sums appear throughout the remainder-term
/// computations, so every floating accumulation in the crate runs through
/// this instead of a bare `+=`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    compensation: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum that also tracks a conservative rounding-error bound:
/// `4 * eps * (number of terms) * (largest partial sum magnitude)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BoundedSum {
    acc: Kahan,
    terms: u64,
    max_abs: f64,
}

impl BoundedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        self.acc.add(x);
        self.terms += 1;
        let partial = self.acc.value().abs();
        if partial > self.max_abs {
            self.max_abs = partial;
        }
        let term = x.abs();
        if term > self.max_abs {
            self.max_abs = term;
        }
    }

    pub fn value(&self) -> f64 {
        self.acc.value()
    }

    pub fn err_bound(&self) -> f64 {
        4.0 * f64::EPSILON * self.terms as f64 * self.max_abs
    }
}

/// A floating value carrying the accumulation error bound it was computed with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub value: f64,
    pub err_bound: f64,
}
