//! Fixed-width fast paths for moduli that fit in a `u64`. The public
//! operations in [`super`] dispatch here whenever their inputs allow it;
//! the arbitrary-precision code paths mirror these bit for bit.

/// First 64 primes, enough to trial-divide everything below 311² = 96721.
pub(crate) const SMALL_PRIMES: [u64; 64] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
    307, 311,
];

/// Miller–Rabin witnesses that decide primality for every `n < 2^64`.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(m != 0);
    if m <= u32::MAX as u64 {
        // a, b < m < 2^32, so the product fits in a u64.
        (a % m) * (b % m) % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

/// `base^exp mod m`, counting every modular multiplication into `ops`.
pub(crate) fn powmod_counted(mut base: u64, mut exp: u64, m: u64, ops: &mut u64) -> u64 {
    debug_assert!(m != 0);
    if m == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    base %= m;
    while exp != 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
            *ops += 1;
        }
        exp >>= 1;
        if exp != 0 {
            base = mulmod(base, base, m);
            *ops += 1;
        }
    }
    acc
}

#[inline]
pub(crate) fn powmod(base: u64, exp: u64, m: u64) -> u64 {
    let mut ops = 0;
    powmod_counted(base, exp, m, &mut ops)
}

/// Deterministic primality for the full u64 range: trial division by the
/// small-prime table, then Miller–Rabin over the fixed witness set.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 311 * 311 {
        return true;
    }

    let trailing = (n - 1).trailing_zeros();
    let q = (n - 1) >> trailing;
    'witness: for &a in &MR_BASES {
        let mut x = powmod(a % n, q, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..trailing {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Euler-criterion Legendre symbol for odd prime `p`: 0, 1 or −1.
pub(crate) fn legendre_u64(a: u64, p: u64) -> i8 {
    debug_assert!(p > 2);
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let e = powmod(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        debug_assert_eq!(e, p - 1);
        -1
    }
}

/// Square root of `a` modulo prime `p` via Tonelli–Shanks, or `None` when
/// `a` is a non-residue. Returns the pair `(x, p − x)` with `x <= p − x`;
/// for `a = 0` the pair degenerates to `(0, 0)`. Counts every modular
/// multiplication performed (Euler pre-test included) into `ops`.
pub(crate) fn sqrt_mod_prime_u64(a: u64, p: u64, ops: &mut u64) -> Option<(u64, u64)> {
    let a = a % p;
    if p == 2 {
        return Some((a, a));
    }
    if a == 0 {
        return Some((0, 0));
    }
    let e = powmod_counted(a, (p - 1) / 2, p, ops);
    if e != 1 {
        return None;
    }

    let root = if p % 4 == 3 {
        powmod_counted(a, (p + 1) / 4, p, ops)
    } else {
        tonelli_shanks(a, p, ops)
    };
    debug_assert_eq!(mulmod(root, root, p), a);
    let small = root.min(p - root);
    Some((small, p - small))
}

fn tonelli_shanks(a: u64, p: u64, ops: &mut u64) -> u64 {
    // p − 1 = q · 2^s with q odd; here s >= 2 since p ≡ 1 (mod 4).
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;

    let mut z = 2;
    while legendre_scan(z, p, ops) != -1 {
        z += 1;
    }

    let mut m = s;
    let mut c = powmod_counted(z, q, p, ops);
    let mut t = powmod_counted(a, q, p, ops);
    let mut r = powmod_counted(a, (q + 1) / 2, p, ops);

    while t != 1 {
        let mut i = 0;
        let mut probe = t;
        while probe != 1 {
            probe = mulmod(probe, probe, p);
            *ops += 1;
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mulmod(b, b, p);
            *ops += 1;
        }
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
        *ops += 3;
    }
    r
}

#[inline]
fn legendre_scan(a: u64, p: u64, ops: &mut u64) -> i8 {
    let e = powmod_counted(a % p, (p - 1) / 2, p, ops);
    if e == 0 {
        0
    } else if e == 1 {
        1
    } else {
        -1
    }
}

/// `n! mod m` by sequential multiplication; returns the residue and the
/// number of multiplications performed, which is `n − 1` for `n >= 2`
/// (multiplying by 1 is skipped) and 0 otherwise.
pub(crate) fn factorial_mod_u64(n: u64, m: u64) -> (u64, u64) {
    debug_assert!(m != 0);
    if m == 1 {
        return (0, n.saturating_sub(1));
    }
    let mut acc: u64 = 1;
    let mut ops: u64 = 0;
    if m <= u32::MAX as u64 {
        // acc < m < 2^32 and k can be reduced first, so acc * k fits a u64.
        for k in 2..=n {
            acc = acc * (k % m) % m;
            ops += 1;
        }
    } else {
        for k in 2..=n {
            acc = mulmod(acc, k, m);
            ops += 1;
        }
    }
    (acc, ops)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powmod_matches_repeated_multiplication() {
        // oracle: naive repeated multiplication
        for &(b, e, m) in &[(3u64, 5u64, 7u64), (10, 0, 13), (2, 61, 1_000_003), (5, 117, 91)] {
            let mut naive: u64 = 1 % m;
            for _ in 0..e {
                naive = mulmod(naive, b, m);
            }
            assert_eq!(powmod(b, e, m), naive, "b={b} e={e} m={m}");
        }
    }

    #[test]
    fn mulmod_handles_large_moduli() {
        let m = u64::MAX - 58; // prime
        assert_eq!(mulmod(m - 1, m - 1, m), 1);
    }

    #[test]
    fn is_prime_agrees_with_trial_division_below_20000() {
        fn trial(n: u64) -> bool {
            if n < 2 {
                return false;
            }
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    return false;
                }
                d += 1;
            }
            true
        }
        for n in 0..20_000 {
            assert_eq!(is_prime_u64(n), trial(n), "n={n}");
        }
    }

    #[test]
    fn is_prime_rejects_carmichael_and_pseudoprimes() {
        for n in [561, 1105, 1729, 2047, 3277, 4033, 8911, 10585] {
            assert!(!is_prime_u64(n), "{n} is composite");
        }
    }

    #[test]
    fn is_prime_known_large_values() {
        assert!(is_prime_u64(u64::MAX - 58)); // 2^64 - 59
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
    }

    #[test]
    fn sqrt_covers_every_residue_class() {
        // oracle: enumeration of all squares mod p
        for p in [3u64, 5, 13, 17, 97, 101, 769] {
            let mut squares = vec![false; p as usize];
            for x in 0..p {
                squares[mulmod(x, x, p) as usize] = true;
            }
            for a in 0..p {
                let mut ops = 0;
                match sqrt_mod_prime_u64(a, p, &mut ops) {
                    Some((lo, hi)) => {
                        assert!(squares[a as usize]);
                        assert_eq!(mulmod(lo, lo, p), a);
                        assert_eq!(mulmod(hi % p, hi % p, p), a);
                        assert!(lo <= hi);
                    }
                    None => assert!(!squares[a as usize], "missed root for a={a} p={p}"),
                }
            }
        }
    }

    #[test]
    fn factorial_mod_counts_nontrivial_multiplications() {
        assert_eq!(factorial_mod_u64(0, 7), (1, 0));
        assert_eq!(factorial_mod_u64(1, 7), (1, 0));
        assert_eq!(factorial_mod_u64(4, 5), (4, 3));
        assert_eq!(factorial_mod_u64(6, 13), (5, 5)); // 720 mod 13
    }
}
