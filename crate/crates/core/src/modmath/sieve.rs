//! Odd-only Eratosthenes sieve backing the prime streams and censuses.

/// Composite flags for odd numbers: bit `i` covers `2i + 1`.
pub(crate) struct OddSieve {
    limit: u64,
    composite: Vec<u64>,
}

impl OddSieve {
    pub(crate) fn up_to(limit: u64) -> Self {
        let half = (limit / 2 + 1) as usize;
        let mut composite = vec![0u64; half / 64 + 1];
        let set = |bits: &mut [u64], i: usize| bits[i / 64] |= 1 << (i % 64);
        let mut p: u64 = 3;
        while p * p <= limit {
            if composite[(p / 2) as usize / 64] >> ((p / 2) as usize % 64) & 1 == 0 {
                let mut k = p * p;
                while k <= limit {
                    set(&mut composite, (k / 2) as usize);
                    k += 2 * p;
                }
            }
            p += 2;
        }
        OddSieve { limit, composite }
    }

    #[inline]
    pub(crate) fn is_prime(&self, n: u64) -> bool {
        debug_assert!(n <= self.limit);
        if n < 2 {
            false
        } else if n == 2 {
            true
        } else if n % 2 == 0 {
            false
        } else {
            self.composite[(n / 2) as usize / 64] >> ((n / 2) as usize % 64) & 1 == 0
        }
    }

    pub(crate) fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes `<= limit`, ascending.
    pub(crate) fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::once(2)
            .chain((3..=self.limit).step_by(2).filter(move |&n| self.is_prime(n)))
            .filter(move |&n| n <= self.limit)
    }
}
