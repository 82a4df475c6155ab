//! Classical arithmetic prefix tables: totient, Möbius, Mertens, totient
//! summatory, and the von Mangoldt summatory, built by one linear sieve.

use alloc::vec;
use alloc::vec::Vec;

use crate::accum::Kahan;
use crate::error::{Error, Result};

/// Ceiling on the table bound. Keeps the totient summatory inside `i64`
/// (`Phi(1e8) ~ 3e15`) and bounds the build at roughly 33 bytes per entry,
/// i.e. ~3.3 GB at the ceiling itself.
pub const MAX_TABLE_BOUND: u64 = 100_000_000;

/// Immutable arithmetic tables for `1..=n_max`.
///
/// Built once, then shared read-only; every query is `O(1)`.
#[derive(Debug, Clone)]
pub struct SieveTables {
    n_max: u64,
    pub(crate) phi: Vec<u32>,
    pub(crate) mu: Vec<i8>,
    pub(crate) mertens: Vec<i32>,
    pub(crate) phi_sum: Vec<i64>,
    pub(crate) psi: Vec<f64>,
    /// Base prime `p` when the index is a prime power `p^m`, else 0.
    pub(crate) prime_power_base: Vec<u32>,
    /// Smallest prime factor; `spf[p] = p` for primes, `spf[1] = 1`.
    pub(crate) spf: Vec<u32>,
    pub(crate) primes: Vec<u32>,
}

impl SieveTables {
    /// Builds all tables up to `n_max` with a linear (Euler) sieve plus
    /// prefix scans.
    pub fn build(n_max: u64) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::ZeroBound);
        }
        if n_max > MAX_TABLE_BOUND {
            return Err(Error::BoundTooLarge { requested: n_max, ceiling: MAX_TABLE_BOUND });
        }
        let len = n_max as usize + 1;
        let mut phi = vec![0u32; len];
        let mut mu = vec![0i8; len];
        let mut spf = vec![0u32; len];
        let mut primes: Vec<u32> = Vec::new();
        if n_max >= 1 {
            phi[1] = 1;
            mu[1] = 1;
            spf[1] = 1;
        }
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                phi[i] = i as u32 - 1;
                mu[i] = -1;
                primes.push(i as u32);
            }
            for &p in &primes {
                let ip = i * p as usize;
                if p > spf[i] || ip >= len {
                    break;
                }
                spf[ip] = p;
                if i % p as usize == 0 {
                    phi[ip] = phi[i] * p;
                    mu[ip] = 0;
                    break;
                } else {
                    phi[ip] = phi[i] * (p - 1);
                    mu[ip] = -mu[i];
                }
            }
        }

        let mut mertens = vec![0i32; len];
        let mut phi_sum = vec![0i64; len];
        for k in 1..len {
            mertens[k] = mertens[k - 1] + mu[k] as i32;
            phi_sum[k] = phi_sum[k - 1] + phi[k] as i64;
        }

        let mut prime_power_base = vec![0u32; len];
        for &p in &primes {
            let mut m = p as u64;
            while m <= n_max {
                prime_power_base[m as usize] = p;
                match m.checked_mul(p as u64) {
                    Some(next) => m = next,
                    None => break,
                }
            }
        }

        let mut psi = vec![0f64; len];
        let mut acc = Kahan::new();
        for k in 1..len {
            let p = prime_power_base[k];
            if p != 0 {
                acc.add(libm::log(p as f64));
            }
            psi[k] = acc.value();
        }

        Ok(Self { n_max, phi, mu, mertens, phi_sum, psi, prime_power_base, spf, primes })
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    fn check(&self, n: u64) -> Result<usize> {
        if n == 0 || n > self.n_max {
            return Err(Error::OutOfRange { n, n_max: self.n_max });
        }
        Ok(n as usize)
    }

    /// Euler totient `phi(k)`. Panics outside `1..=n_max`.
    pub fn phi(&self, k: u64) -> u64 {
        self.phi[k as usize] as u64
    }

    /// Möbius `mu(k)`. Panics outside `1..=n_max`.
    pub fn mu(&self, k: u64) -> i64 {
        self.mu[k as usize] as i64
    }

    /// Mertens `M(k)`; `M(0) = 0`. Real arguments are handled by the caller
    /// taking the floor first (the step-function reading of `M(x)`).
    pub fn mertens(&self, k: u64) -> i64 {
        self.mertens[k as usize] as i64
    }

    /// Totient summatory `Phi(n) = sum_{k<=n} phi(k)`, the count of nonzero
    /// Farey fractions of order `n`.
    pub fn phi_summatory(&self, n: u64) -> Result<i64> {
        Ok(self.phi_sum[self.check(n)?])
    }

    /// `Phi(n) - 3 n^2 / pi^2`.
    pub fn totient_remainder(&self, n: u64) -> Result<f64> {
        let idx = self.check(n)?;
        let main = 3.0 / (core::f64::consts::PI * core::f64::consts::PI) * (n as f64) * (n as f64);
        Ok(self.phi_sum[idx] as f64 - main)
    }

    /// Chebyshev `psi(k) = sum_{j<=k} Lambda(j)`; `psi(0) = 0`.
    pub fn psi(&self, k: u64) -> f64 {
        self.psi[k as usize]
    }

    /// `Some(p)` when `k = p^m` is a prime power, else `None`.
    pub fn prime_power_base(&self, k: u64) -> Option<u64> {
        match self.prime_power_base[k as usize] {
            0 => None,
            p => Some(p as u64),
        }
    }

    /// Smallest prime factor of `k >= 2`.
    pub fn smallest_prime_factor(&self, k: u64) -> u64 {
        self.spf[k as usize] as u64
    }

    pub fn is_prime(&self, k: u64) -> bool {
        k >= 2 && self.spf[k as usize] as u64 == k
    }

    /// All primes `<= n_max`, ascending.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }
}

/// `Phi*(n) = n(n+1)/2`, the number of unreduced fractions `h/k` with
/// `1 <= h <= k <= n`.
pub fn binomial_count(n: u64) -> i64 {
    let v = n as u128 * (n as u128 + 1) / 2;
    i64::try_from(v).expect("binomial count overflow")
}
