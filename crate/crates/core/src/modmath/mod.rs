//! Arbitrary-precision modular arithmetic and primality.
//!
//! Values are [`Natural`] numbers (non-negative, arbitrary precision). The
//! operations dispatch to fixed-width fast paths whenever their inputs fit
//! in a `u64`; above that, everything runs on `BigUint` with identical
//! semantics. Primality is deterministic below 2^64 (fixed Miller–Rabin
//! witness set) and probabilistic above (64 random rounds, error < 2^{-64};
//! the rounds are seeded, so results are reproducible).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

pub(crate) mod sieve;
pub(crate) mod small;

use crate::error::{Error, Result};

/// Non-negative integer of arbitrary precision. Round-trips losslessly
/// through its decimal `Display`/`FromStr` forms.
pub type Natural = BigUint;

/// Seed for the random Miller–Rabin rounds used above 2^64 when the caller
/// does not supply one. Everything below 2^64 is deterministic regardless.
const DEFAULT_MR_SEED: u64 = 0x71ad_9e03_5c2b_f841;
const MR_ROUNDS: usize = 64;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// A validated prime number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(Natural);

impl Prime {
    pub fn new(value: Natural) -> Result<Self> {
        Self::with_seed(value, DEFAULT_MR_SEED)
    }

    /// Like [`Prime::new`] but with an explicit seed for the probabilistic
    /// rounds (only relevant for candidates above 2^64).
    pub fn with_seed(value: Natural, seed: u64) -> Result<Self> {
        if is_prime_with_seed(&value, seed) {
            Ok(Prime(value))
        } else {
            Err(Error::NotPrime(value.to_string()))
        }
    }

    pub fn from_u64(value: u64) -> Result<Self> {
        Self::new(Natural::from(value))
    }

    pub(crate) fn from_u64_unchecked(value: u64) -> Self {
        debug_assert!(small::is_prime_u64(value));
        Prime(Natural::from(value))
    }

    pub fn value(&self) -> &Natural {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A prime congruent to 1 mod 4, i.e. of the form `4m + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime4m1(Prime);

impl Prime4m1 {
    pub fn new(prime: Prime) -> Result<Self> {
        if (prime.value() % 4u32) == Natural::one() {
            Ok(Prime4m1(prime))
        } else {
            Err(Error::NotOneModFour(prime.to_string()))
        }
    }

    pub fn from_natural(value: Natural) -> Result<Self> {
        Self::new(Prime::new(value)?)
    }

    pub fn from_u64(value: u64) -> Result<Self> {
        Self::new(Prime::from_u64(value)?)
    }

    pub(crate) fn from_u64_unchecked(value: u64) -> Self {
        debug_assert_eq!(value % 4, 1);
        Prime4m1(Prime::from_u64_unchecked(value))
    }

    pub fn prime(&self) -> &Prime {
        &self.0
    }

    pub fn value(&self) -> &Natural {
        self.0.value()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl fmt::Display for Prime4m1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The two square roots `{x, p − x}` of a residue, ordered `smaller <=
/// larger`. Degenerates to `(0, 0)` for the residue 0 and to `(x, x)`
/// modulo 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPair {
    pub smaller: Natural,
    pub larger: Natural,
}

impl RootPair {
    pub fn contains(&self, x: &Natural) -> bool {
        &self.smaller == x || &self.larger == x
    }
}

// ---------------------------------------------------------------------------
// Exponentiation and primality
// ---------------------------------------------------------------------------

/// `base^exp mod modulus` by square-and-multiply (O(log exp) multiplications).
pub fn mod_pow(base: &Natural, exp: &Natural, modulus: &Natural) -> Result<Natural> {
    if modulus.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if let (Some(b), Some(e), Some(m)) = (base.to_u64(), exp.to_u64(), modulus.to_u64()) {
        return Ok(Natural::from(small::powmod(b, e, m)));
    }
    Ok(base.modpow(exp, modulus))
}

/// Primality with the default seed: deterministic below 2^64, 64 rounds of
/// seeded random-base Miller–Rabin above.
pub fn is_prime(n: &Natural) -> bool {
    is_prime_with_seed(n, DEFAULT_MR_SEED)
}

pub fn is_prime_with_seed(n: &Natural, seed: u64) -> bool {
    if let Some(v) = n.to_u64() {
        return small::is_prime_u64(v);
    }
    // n >= 2^64 here.
    if n.is_even() {
        return false;
    }
    let one = Natural::one();
    let n_minus_1 = n - &one;
    let trailing = n_minus_1.trailing_zeros().expect("n - 1 > 0");
    let q = &n_minus_1 >> trailing;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let byte_len = (n.bits() as usize).div_ceil(8);
    let n_minus_3 = n - Natural::from(3u32);
    'round: for _ in 0..MR_ROUNDS {
        // base uniform-ish in [2, n - 2]; modular reduction bias is
        // irrelevant for witness selection.
        let mut bytes = vec![0u8; byte_len];
        rng.fill_bytes(&mut bytes);
        let base = Natural::from_bytes_le(&bytes) % &n_minus_3 + Natural::from(2u32);

        let mut x = base.modpow(&q, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..trailing {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'round;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// Prime streams
// ---------------------------------------------------------------------------

/// Ascending stream of the primes `p <= limit` with `p ≡ residue (mod
/// modulus)`, each emitted exactly once.
pub fn primes_in_class(limit: u64, residue: u64, modulus: u64) -> Result<PrimesInClass> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    if residue >= modulus {
        return Err(Error::ResidueOutOfRange { residue, modulus });
    }
    Ok(PrimesInClass {
        sieve: sieve::OddSieve::up_to(limit),
        residue,
        modulus,
        next: 2,
    })
}

pub struct PrimesInClass {
    sieve: sieve::OddSieve,
    residue: u64,
    modulus: u64,
    next: u64,
}

impl Iterator for PrimesInClass {
    type Item = Prime;

    fn next(&mut self) -> Option<Prime> {
        while self.next <= self.sieve.limit() {
            let n = self.next;
            self.next += 1;
            if n % self.modulus == self.residue && self.sieve.is_prime(n) {
                return Some(Prime::from_u64_unchecked(n));
            }
        }
        None
    }
}

/// Smallest prime `p >= start` with `p ≡ residue (mod modulus)`, if one
/// exists in the u64 range.
pub fn next_prime_in_class(start: u64, residue: u64, modulus: u64) -> Option<u64> {
    (start..u64::MAX).find(|&n| n % modulus == residue && small::is_prime_u64(n))
}

// ---------------------------------------------------------------------------
// Factorials and Wilson roots
// ---------------------------------------------------------------------------

/// `n! mod modulus` computed by sequential modular multiplication — the
/// Θ(n) route, deliberately without reflection shortcuts so its cost is
/// what a benchmark sees.
pub fn factorial_mod(n: &Natural, modulus: &Natural) -> Result<Natural> {
    factorial_mod_counted(n, modulus).map(|(v, _)| v)
}

/// As [`factorial_mod`], additionally reporting the number of modular
/// multiplications performed: `n − 1` for `n >= 2`, else 0.
pub fn factorial_mod_counted(n: &Natural, modulus: &Natural) -> Result<(Natural, u64)> {
    if modulus.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if let (Some(n64), Some(m64)) = (n.to_u64(), modulus.to_u64()) {
        let (value, ops) = small::factorial_mod_u64(n64, m64);
        return Ok((Natural::from(value), ops));
    }
    let mut acc = Natural::one() % modulus;
    let mut ops: u64 = 0;
    let mut k = Natural::from(2u32);
    while &k <= n {
        acc = acc * &k % modulus;
        ops += 1;
        k += 1u32;
    }
    Ok((acc, ops))
}

/// The Wilson half-factorial `x = ((p − 1)/2)! mod p` for `p ≡ 1 (mod 4)`,
/// which satisfies `x² ≡ −1 (mod p)`. Reported verbatim; the canonically
/// ordered pair is available from [`sqrt_mod_prime`] on `p − 1`.
pub fn wilson_sqrt_minus_one(p: &Prime4m1) -> Natural {
    wilson_sqrt_minus_one_counted(p).0
}

pub fn wilson_sqrt_minus_one_counted(p: &Prime4m1) -> (Natural, u64) {
    let half = (p.value() - 1u32) / 2u32;
    factorial_mod_counted(&half, p.value()).expect("prime modulus is nonzero")
}

// ---------------------------------------------------------------------------
// Square roots and the Legendre symbol
// ---------------------------------------------------------------------------

/// Square roots of `a` modulo the prime `p` (Tonelli–Shanks; `a` is reduced
/// mod `p` first). `None` when `a` is a non-residue. Polynomial in `log p`.
pub fn sqrt_mod_prime(a: &Natural, p: &Prime) -> Option<RootPair> {
    sqrt_mod_prime_counted(a, p).0
}

/// As [`sqrt_mod_prime`], also reporting the modular multiplications spent
/// (Euler pre-test included).
pub fn sqrt_mod_prime_counted(a: &Natural, p: &Prime) -> (Option<RootPair>, u64) {
    let mut ops: u64 = 0;
    if let (Some(a64), Some(p64)) = (a.to_u64(), p.to_u64()) {
        let pair = small::sqrt_mod_prime_u64(a64, p64, &mut ops)
            .map(|(lo, hi)| RootPair { smaller: Natural::from(lo), larger: Natural::from(hi) });
        return (pair, ops);
    }
    (sqrt_mod_prime_big(&(a % p.value()), p.value(), &mut ops), ops)
}

fn sqrt_mod_prime_big(a: &Natural, p: &Natural, ops: &mut u64) -> Option<RootPair> {
    let two = Natural::from(2u32);
    if *p == two {
        return Some(RootPair { smaller: a.clone(), larger: a.clone() });
    }
    if a.is_zero() {
        return Some(RootPair { smaller: Natural::zero(), larger: Natural::zero() });
    }
    let one = Natural::one();
    let p_minus_1 = p - &one;
    let euler = powmod_big(a, &(&p_minus_1 / &two), p, ops);
    if euler != one {
        return None;
    }

    let root = if p % 4u32 == Natural::from(3u32) {
        powmod_big(a, &((p + &one) / Natural::from(4u32)), p, ops)
    } else {
        tonelli_shanks_big(a, p, ops)
    };
    debug_assert_eq!(&root * &root % p, *a);
    let other = p - &root;
    let (smaller, larger) = if root <= other { (root, other) } else { (other, root) };
    Some(RootPair { smaller, larger })
}

fn tonelli_shanks_big(a: &Natural, p: &Natural, ops: &mut u64) -> Natural {
    let one = Natural::one();
    let two = Natural::from(2u32);
    let p_minus_1 = p - &one;
    let s = p_minus_1.trailing_zeros().expect("p > 2");
    let q = &p_minus_1 >> s;

    let mut z = two.clone();
    loop {
        let e = powmod_big(&z, &(&p_minus_1 / &two), p, ops);
        if e == p_minus_1 {
            break;
        }
        z += 1u32;
    }

    let mut m = s;
    let mut c = powmod_big(&z, &q, p, ops);
    let mut t = powmod_big(a, &q, p, ops);
    let mut r = powmod_big(a, &((&q + &one) / &two), p, ops);

    while !t.is_one() {
        let mut i = 0u64;
        let mut probe = t.clone();
        while !probe.is_one() {
            probe = &probe * &probe % p;
            *ops += 1;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = &b * &b % p;
            *ops += 1;
        }
        m = i;
        c = &b * &b % p;
        t = t * &c % p;
        r = r * &b % p;
        *ops += 3;
    }
    r
}

fn powmod_big(base: &Natural, exp: &Natural, m: &Natural, ops: &mut u64) -> Natural {
    // Same multiplication count as the binary ladder in the u64 path.
    let bits = exp.bits();
    if bits > 0 {
        *ops += bits - 1 + exp.count_ones();
    }
    base.modpow(exp, m)
}

/// Legendre symbol `(a/p)` for an odd prime `p`, via Euler's criterion
/// `a^{(p−1)/2} mod p`: 0 when `p | a`, 1 for a nonzero residue, −1 for a
/// non-residue.
pub fn legendre_symbol(a: &Natural, p: &Prime) -> Result<i8> {
    if p.value() == &Natural::from(2u32) {
        return Err(Error::EvenPrime);
    }
    if let (Some(a64), Some(p64)) = (a.to_u64(), p.to_u64()) {
        return Ok(small::legendre_u64(a64, p64));
    }
    let e = a.modpow(&((p.value() - 1u32) / 2u32), p.value());
    if e.is_zero() {
        Ok(0)
    } else if e.is_one() {
        Ok(1)
    } else {
        Ok(-1)
    }
}
