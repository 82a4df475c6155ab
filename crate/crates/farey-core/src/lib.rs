//! Exact-arithmetic building blocks for Farey products.
//!
//! The library computes the classical arithmetic tables (totients, Möbius,
//! Mertens, von Mangoldt sums), base-`b` digit statistics, the integer
//! valuations of reduced and unreduced Farey products, their archimedean
//! sizes, and the hyperbola-method main/remainder decompositions of those
//! quantities, both at the real place and at finite primes.
//!
//! Every quantity with an exact value is carried in integer arithmetic end
//! to end; floating accumulation is compensated and reported with an error
//! bound. A brute-force enumeration oracle ([`oracle`]) provides independent
//! ground truth for small arguments.
//!
//! The crate is `no_std` (with `alloc`); all floating transcendentals go
//! through `libm`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod accum;
pub mod error;
pub mod mainterms;
pub mod oracle;
pub mod products;
pub mod radix;
pub mod sieve;

pub use error::{Error, Result};
pub use radix::DigitStats;
pub use sieve::SieveTables;
