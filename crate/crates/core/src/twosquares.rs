//! Fermat two-square decompositions: every prime `p ≡ 1 (mod 4)` is
//! uniquely `s² + t²` with `s > t > 0`.
//!
//! [`decompose`] runs in polynomial time: it takes a square root `z` of −1
//! mod `p` and descends the Euclidean remainder sequence of `(p, z)` — the
//! first remainder below `√p` is `s`, the one after it is `t` (the
//! Hermite–Serret construction). [`decompose_brute`] is the exhaustive
//! alternative that scans `t = 1, 2, …` and reports how many candidates it
//! tried. `p = 2 = 1² + 1²` violates `s > t` and is excluded by the
//! [`Prime4m1`] input type; it is the single special case of the theorem.

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::io::Write;

use crate::error::{Error, Result};
use crate::modmath::{self, sieve::OddSieve, small, Natural, Prime4m1};
use crate::textio::sig12;

/// A verified decomposition `p = s² + t²`, `s > t > 0`, together with the
/// polar angle `theta = atan(t/s) ∈ (0, π/4)` of the lattice point `(s, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoSquareDecomposition {
    p: Natural,
    s: Natural,
    t: Natural,
    theta: f64,
}

impl TwoSquareDecomposition {
    /// Validates `s² + t² = p` and `s > t > 0`.
    pub fn new(p: Natural, s: Natural, t: Natural) -> Result<Self> {
        if t.is_zero() || s <= t {
            return Err(Error::InvalidInstance(format!(
                "two-square parts must satisfy s > t > 0, got s={s}, t={t}"
            )));
        }
        if &s * &s + &t * &t != p {
            return Err(Error::InvalidInstance(format!("{s}² + {t}² != {p}")));
        }
        let theta = (t.to_f64().unwrap_or(f64::NAN)).atan2(s.to_f64().unwrap_or(f64::NAN));
        Ok(TwoSquareDecomposition { p, s, t, theta })
    }

    pub fn p(&self) -> &Natural {
        &self.p
    }

    pub fn s(&self) -> &Natural {
        &self.s
    }

    pub fn t(&self) -> &Natural {
        &self.t
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The congruence restatement of the identity: `s² ≡ p − t² (mod p)`.
    pub fn congruence_form_holds(&self) -> bool {
        verify_congruence_form(&self.p, &self.s, &self.t)
    }
}

/// Checks `s² mod p = (p − t²) mod p` on raw values, so deliberately
/// corrupted triples can be probed as well.
pub fn verify_congruence_form(p: &Natural, s: &Natural, t: &Natural) -> bool {
    if p.is_zero() {
        return false;
    }
    let lhs = (s * s) % p;
    let t2 = (t * t) % p;
    let rhs = if t2.is_zero() { Natural::zero() } else { p - t2 };
    lhs == rhs
}

/// The unique decomposition of `p`, by square root of −1 plus Euclidean
/// descent. Polynomial in `log p`.
pub fn decompose(p: &Prime4m1) -> TwoSquareDecomposition {
    decompose_counted(p).0
}

/// As [`decompose`], reporting the arithmetic operation count (modular
/// multiplications of the root search plus one per descent step).
pub fn decompose_counted(p: &Prime4m1) -> (TwoSquareDecomposition, u64) {
    if let Some(p64) = p.to_u64() {
        let mut ops = 0;
        let (s, t) = decompose_u64(p64, &mut ops);
        let dec = TwoSquareDecomposition::new(Natural::from(p64), Natural::from(s), Natural::from(t))
            .expect("descent yields a valid decomposition");
        return (dec, ops);
    }

    let (root, mut ops) = modmath::sqrt_mod_prime_counted(&(p.value() - 1u32), p.prime());
    let z = root.expect("-1 is a residue mod a 1 mod 4 prime").smaller;
    let sqrt_p = p.value().sqrt();
    let mut a = p.value().clone();
    let mut b = z;
    while b > sqrt_p {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
        ops += 1;
    }
    let t = &a % &b;
    ops += 1;
    let dec = TwoSquareDecomposition::new(p.value().clone(), b, t)
        .expect("descent yields a valid decomposition");
    (dec, ops)
}

pub(crate) fn decompose_u64(p: u64, ops: &mut u64) -> (u64, u64) {
    let (z, _) = small::sqrt_mod_prime_u64(p - 1, p, ops).expect("-1 is a residue");
    let mut a = p;
    let mut b = z;
    while (b as u128) * (b as u128) > p as u128 {
        let r = a % b;
        a = b;
        b = r;
        *ops += 1;
    }
    let s = b;
    let t = a % b;
    *ops += 1;
    debug_assert_eq!(s as u128 * s as u128 + t as u128 * t as u128, p as u128);
    (s, t)
}

/// Exhaustive decomposition: scans `t = 1, 2, …` until `p − t²` is a
/// perfect square. Returns the decomposition and the number of candidates
/// tested.
pub fn decompose_brute(p: &Prime4m1) -> (TwoSquareDecomposition, u64) {
    if let Some(p64) = p.to_u64() {
        let (s, t, visited) = decompose_brute_u64(p64);
        let dec = TwoSquareDecomposition::new(Natural::from(p64), Natural::from(s), Natural::from(t))
            .expect("scan yields a valid decomposition");
        return (dec, visited);
    }
    let mut visited = 0u64;
    let mut t = Natural::from(1u32);
    loop {
        let t2 = &t * &t;
        assert!(&t2 + &t2 < *p.value(), "every 1 mod 4 prime decomposes");
        visited += 1;
        let rem = p.value() - t2;
        let s = rem.sqrt();
        if &s * &s == rem {
            let dec = TwoSquareDecomposition::new(p.value().clone(), s, t)
                .expect("scan yields a valid decomposition");
            return (dec, visited);
        }
        t += 1u32;
    }
}

fn decompose_brute_u64(p: u64) -> (u64, u64, u64) {
    let mut visited = 0u64;
    for t in 1u64.. {
        assert!(2 * (t as u128) * (t as u128) < p as u128, "every 1 mod 4 prime decomposes");
        visited += 1;
        let rem = p - t * t;
        let s = rem.isqrt();
        if s * s == rem {
            return (s, t, visited);
        }
    }
    unreachable!()
}

/// Exhaustively counts the pairs `s > t > 0` with `s² + t² = p`; equals 1
/// for every prime input.
pub fn uniqueness_check(p: &Prime4m1) -> u64 {
    if let Some(p64) = p.to_u64() {
        let mut count = 0;
        let mut t = 1u64;
        while 2 * (t as u128) * (t as u128) < p64 as u128 {
            let rem = p64 - t * t;
            let s = rem.isqrt();
            if s * s == rem {
                count += 1;
            }
            t += 1;
        }
        return count;
    }
    let mut count = 0;
    let mut t = Natural::from(1u32);
    loop {
        let t2 = &t * &t;
        if &t2 + &t2 >= *p.value() {
            return count;
        }
        let rem = p.value() - t2;
        let s = rem.sqrt();
        if &s * &s == rem {
            count += 1;
        }
        t += 1u32;
    }
}

/// Decomposes every prime `p ≡ 1 (mod 4)` with `p <= limit`, ascending.
/// The work is split across the rayon pool; the order of the result does
/// not depend on the partitioning.
pub fn decompose_range(limit: u64) -> Vec<TwoSquareDecomposition> {
    decompose_range_raw(limit)
        .into_iter()
        .map(|(p, s, t)| {
            TwoSquareDecomposition::new(Natural::from(p), Natural::from(s), Natural::from(t))
                .expect("descent yields valid decompositions")
        })
        .collect()
}

/// `(p, s, t)` triples for all `p ≡ 1 (mod 4)`, `p <= limit`, ascending.
pub(crate) fn decompose_range_raw(limit: u64) -> Vec<(u64, u64, u64)> {
    let sieve = OddSieve::up_to(limit);
    let primes: Vec<u64> = sieve.primes().filter(|&p| p % 4 == 1).collect();
    primes
        .into_par_iter()
        .map(|p| {
            let mut ops = 0;
            let (s, t) = decompose_u64(p, &mut ops);
            (p, s, t)
        })
        .collect()
}

/// CSV export: header `p,s,t,theta`, decimal parts, `theta` with 12
/// significant digits.
pub fn write_decompositions_csv<W: Write>(rows: &[TwoSquareDecomposition], mut w: W) -> Result<()> {
    writeln!(w, "p,s,t,theta")?;
    for d in rows {
        writeln!(w, "{},{},{},{}", d.p, d.s, d.t, sig12(d.theta))?;
    }
    Ok(())
}
