//! # quadlab — a quadratic-congruence workbench
//!
//! Everything here orbits one decision problem: *is there a positive integer
//! `x < c` with `x² ≡ a (mod b)`?* The crate provides the arithmetic to decide
//! it, the number-theoretic structure behind the prime-modulus case, and the
//! instrumentation to measure what the different solution strategies cost.
//!
//! Module map:
//!
//! - [`modmath`] — arbitrary-precision modular arithmetic: primality, prime
//!   streams in arithmetic progressions, observable-cost factorials, Wilson
//!   half-factorial roots of −1, and Tonelli–Shanks square roots.
//! - [`quadcong`] — the decision problem itself: certificate verification,
//!   a root-based decider, an exhaustive scan with exact visited counts, and
//!   the Wilson shortcut for the `a = p−1` instance family.
//! - [`twosquares`] — Fermat two-square decompositions `p = s² + t²` of
//!   primes `p ≡ 1 (mod 4)`, by Euclidean descent and by brute force.
//! - [`gausscensus`] — Gaussian primes enumerated by norm, counted globally
//!   and per angular sector of the first quadrant.
//! - [`lattice`] — lattice points in discs and octants, on-circle
//!   representation counts, and the prime-point/lattice-point ratio.
//! - [`experiments`] — chi-square and Kolmogorov–Smirnov uniformity tests of
//!   the angle and root distributions, plus a scaling benchmark harness.
//!
//! All operations are pure functions of their inputs. Bulk enumerations may
//! use the global rayon pool internally; results are independent of the
//! partitioning.

pub mod error;
pub mod experiments;
pub mod gausscensus;
pub mod lattice;
pub mod modmath;
pub mod quadcong;
pub mod twosquares;

pub(crate) mod textio;

pub use error::{Error, Result};
pub use modmath::{Natural, Prime, Prime4m1};
