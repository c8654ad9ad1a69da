//! The quadratic-congruence decision problem: does some positive `x < c`
//! satisfy `x² ≡ a (mod b)`?
//!
//! Three routes are provided. [`verify_certificate`] is the polynomial-time
//! check of a claimed witness. [`decide`] answers the question, using
//! modular square roots when the modulus is prime and falling back to the
//! exhaustive scan otherwise. [`brute_force`] is that scan made first-class:
//! it reports exactly how many candidates were examined, because the cost of
//! the scan is itself an object of study here.
//!
//! Candidates are only ever taken from `1..min(c, b)`, since squares repeat
//! with period `b`. A tempting further cutoff is `√((p−1)/2)`, but it is too
//! small — the two-square instance family has solutions as large as `√p` —
//! so the scan covers the full residue range.

use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modmath::{self, Natural, Prime, Prime4m1};

/// Minimum scan length before [`brute_force`] splits the range across the
/// rayon pool. Verdict and visited count are partition-independent.
const PARALLEL_SCAN_THRESHOLD: u64 = 1 << 22;

/// An instance `(a, b, c)`: target residue, modulus, and strict exclusive
/// witness bound. `a` is normalized mod `b` on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QCInstance {
    a: Natural,
    b: Natural,
    c: Natural,
}

impl QCInstance {
    pub fn new(a: Natural, b: Natural, c: Natural) -> Result<Self> {
        if b < Natural::from(2u32) {
            return Err(Error::InvalidInstance(format!("modulus b = {b} must be >= 2")));
        }
        if c.is_zero() {
            return Err(Error::InvalidInstance("bound c must be >= 1".into()));
        }
        Ok(QCInstance { a: a % &b, b, c })
    }

    pub fn from_u64(a: u64, b: u64, c: u64) -> Result<Self> {
        Self::new(Natural::from(a), Natural::from(b), Natural::from(c))
    }

    pub fn residue(&self) -> &Natural {
        &self.a
    }

    pub fn modulus(&self) -> &Natural {
        &self.b
    }

    pub fn bound(&self) -> &Natural {
        &self.c
    }

    /// `min(c, b)`: candidates are scanned strictly below this.
    fn scan_bound(&self) -> Natural {
        self.c.clone().min(self.b.clone())
    }
}

/// Decision outcome. A witness is present exactly when the instance is
/// satisfiable; it is always the smallest valid one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCVerdict {
    witness: Option<Natural>,
}

impl QCVerdict {
    fn sat(witness: Natural) -> Self {
        QCVerdict { witness: Some(witness) }
    }

    fn unsat() -> Self {
        QCVerdict { witness: None }
    }

    pub fn satisfiable(&self) -> bool {
        self.witness.is_some()
    }

    pub fn witness(&self) -> Option<&Natural> {
        self.witness.as_ref()
    }
}

/// Result of an exhaustive scan: the verdict plus the exact number of
/// candidates tested by the equivalent sequential scan `1, 2, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOutcome {
    pub verdict: QCVerdict,
    pub visited: u64,
}

/// The NP verifier: true iff `0 < x < c` and `x² mod b = a`.
pub fn verify_certificate(inst: &QCInstance, x: &Natural) -> bool {
    if x.is_zero() || *x >= inst.c {
        return false;
    }
    let square = modmath::mod_pow(x, &Natural::from(2u32), &inst.b).expect("b >= 2");
    square == inst.a
}

/// Decides the instance, returning the smallest witness when satisfiable.
///
/// Prime moduli are answered through [`modmath::sqrt_mod_prime`]; composite
/// moduli fall back to the exhaustive scan below `min(c, b)`.
pub fn decide(inst: &QCInstance) -> QCVerdict {
    if modmath::is_prime(&inst.b) {
        let p = Prime::new(inst.b.clone()).expect("checked prime");
        let Some(pair) = modmath::sqrt_mod_prime(&inst.a, &p) else {
            return QCVerdict::unsat();
        };
        // Roots are reduced mod b, so x < b holds; positivity and the c
        // bound are all that is left to check. Root 0 (a = 0) never yields
        // a positive witness below b.
        for candidate in [&pair.smaller, &pair.larger] {
            if !candidate.is_zero() && *candidate < inst.c && *candidate < inst.b {
                return QCVerdict::sat(candidate.clone());
            }
        }
        QCVerdict::unsat()
    } else {
        brute_force(inst).verdict
    }
}

/// Ascending scan over `1, 2, …, min(c, b) − 1`, stopping at the first
/// witness. `visited` equals the witness value when satisfiable and the
/// full scan length otherwise.
pub fn brute_force(inst: &QCInstance) -> ScanOutcome {
    let bound = inst.scan_bound();
    if let (Some(a), Some(b), Some(bound)) =
        (inst.a.to_u64(), inst.b.to_u64(), bound.to_u64())
    {
        return brute_force_u64(a, b, bound);
    }

    // Arbitrary-precision scan; inherently Θ(bound).
    let mut x = Natural::one();
    let mut visited = 0u64;
    while x < bound {
        visited += 1;
        if &x * &x % &inst.b == inst.a {
            return ScanOutcome { verdict: QCVerdict::sat(x), visited };
        }
        x += 1u32;
    }
    ScanOutcome { verdict: QCVerdict::unsat(), visited }
}

fn brute_force_u64(a: u64, b: u64, bound: u64) -> ScanOutcome {
    let hit = |x: u64| -> bool {
        let sq = if b <= u32::MAX as u64 { x * x % b } else { (x as u128 * x as u128 % b as u128) as u64 };
        sq == a
    };
    let witness = if bound > PARALLEL_SCAN_THRESHOLD {
        (1..bound).into_par_iter().find_first(|&x| hit(x))
    } else {
        (1..bound).find(|&x| hit(x))
    };
    match witness {
        Some(w) => ScanOutcome { verdict: QCVerdict::sat(Natural::from(w)), visited: w },
        None => ScanOutcome { verdict: QCVerdict::unsat(), visited: bound.saturating_sub(1) },
    }
}

/// Solves the instance family `(a, b, c) = (p − 1, p, p)` through the Wilson
/// half-factorial: always satisfiable, witness `min(w, p − w)` where
/// `w = ((p−1)/2)! mod p`.
pub fn solve_wilson_instance(p: &Prime4m1) -> QCVerdict {
    let w = modmath::wilson_sqrt_minus_one(p);
    let other = p.value() - &w;
    QCVerdict::sat(w.min(other))
}

/// Parses the one-instance-per-line text format: `a b c` in decimal,
/// whitespace-separated. Blank lines are skipped.
pub fn parse_instances(text: &str) -> Result<Vec<QCInstance>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected 3 fields `a b c`, got {}", fields.len()),
            });
        }
        let parse = |s: &str| -> Result<Natural> {
            s.parse::<Natural>().map_err(|e| Error::Parse {
                line: idx + 1,
                message: format!("bad integer {s:?}: {e}"),
            })
        };
        out.push(QCInstance::new(parse(fields[0])?, parse(fields[1])?, parse(fields[2])?)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    fn inst(a: u64, b: u64, c: u64) -> QCInstance {
        QCInstance::from_u64(a, b, c).unwrap()
    }

    /// Enumeration oracle: smallest witness in `1..min(c, b)`, if any.
    fn oracle_smallest_witness(a: u64, b: u64, c: u64) -> Option<u64> {
        (1..c.min(b)).find(|&x| (x as u128 * x as u128 % b as u128) as u64 == a % b)
    }

    #[test]
    fn verify_certificate_examples() {
        assert!(verify_certificate(&inst(4, 5, 3), &nat(2)));
        assert!(!verify_certificate(&inst(4, 5, 2), &nat(2))); // bound violated
        assert_eq!(16 % 9, 7); // direct computation
        assert!(verify_certificate(&inst(7, 9, 5), &nat(4)));
        assert!(!verify_certificate(&inst(4, 5, 3), &nat(0))); // x must be positive
    }

    #[test]
    fn decide_examples() {
        let v = decide(&inst(4, 5, 3));
        assert_eq!(v.witness(), Some(&nat(2)));

        assert_eq!(oracle_smallest_witness(2, 5, 5), None);
        assert!(!decide(&inst(2, 5, 5)).satisfiable());

        assert_eq!(oracle_smallest_witness(7, 9, 5), Some(4));
        assert_eq!(decide(&inst(7, 9, 5)).witness(), Some(&nat(4)));
    }

    #[test]
    fn brute_force_examples() {
        let out = brute_force(&inst(4, 5, 3));
        assert_eq!(out.verdict.witness(), Some(&nat(2)));
        assert_eq!(out.visited, 2);

        let out = brute_force(&inst(2, 5, 5));
        assert!(!out.verdict.satisfiable());
        assert_eq!(out.visited, 4);

        // (p−1, p, p) for p = 13: first root of −1 is 5.
        assert_eq!(oracle_smallest_witness(12, 13, 13), Some(5));
        let out = brute_force(&inst(12, 13, 13));
        assert_eq!(out.verdict.witness(), Some(&nat(5)));
        assert_eq!(out.visited, 5);
    }

    #[test]
    fn zero_residue_instances() {
        // Prime modulus: x² ≡ 0 (mod p) has no positive solution below p.
        assert!(!decide(&inst(0, 7, 7)).satisfiable());
        assert!(!brute_force(&inst(0, 7, 7)).verdict.satisfiable());
        // Composite modulus: 3² ≡ 0 (mod 9).
        assert_eq!(decide(&inst(0, 9, 9)).witness(), Some(&nat(3)));
    }

    #[test]
    fn instance_normalizes_residue() {
        let i = inst(14, 5, 3);
        assert_eq!(i.residue(), &nat(4));
        assert_eq!(decide(&i).witness(), Some(&nat(2)));
    }

    #[test]
    fn instance_validation() {
        assert!(QCInstance::from_u64(1, 1, 3).is_err());
        assert!(QCInstance::from_u64(1, 5, 0).is_err());
    }

    #[test]
    fn decide_matches_brute_force_on_small_grid() {
        for b in 2..=60u64 {
            for a in 0..b {
                for c in 1..=b {
                    let i = inst(a, b, c);
                    let fast = decide(&i);
                    let scan = brute_force(&i);
                    assert_eq!(fast, scan.verdict, "a={a} b={b} c={c}");
                    assert_eq!(
                        fast.witness().map(|w| w.to_u64().unwrap()),
                        oracle_smallest_witness(a, b, c),
                        "a={a} b={b} c={c}"
                    );
                    if let Some(w) = fast.witness() {
                        assert!(verify_certificate(&i, w));
                    }
                }
            }
        }
    }

    #[test]
    fn solve_wilson_instance_examples() {
        for (p, want) in [(5u64, 2u64), (13, 5), (29, 12)] {
            let verdict = solve_wilson_instance(&Prime4m1::from_u64(p).unwrap());
            assert_eq!(verdict.witness(), Some(&nat(want)), "p={p}");
            // consistent with the scan on (p−1, p, p)
            let scan = brute_force(&inst(p - 1, p, p));
            assert_eq!(scan.verdict.witness(), Some(&nat(want)));
        }
    }

    #[test]
    fn wilson_instances_agree_with_the_scan_below_10000() {
        for p in modmath::primes_in_class(10_000, 1, 4).unwrap() {
            let p64 = p.to_u64().unwrap();
            let wilson = solve_wilson_instance(&Prime4m1::new(p).unwrap());
            let scan = brute_force(&inst(p64 - 1, p64, p64));
            assert_eq!(wilson.witness(), scan.verdict.witness(), "p={p64}");
        }
    }

    #[test]
    fn parse_instances_roundtrip() {
        let text = "4 5 3\n\n2 5 5\n12 13 13\n";
        let parsed = parse_instances(text).unwrap();
        assert_eq!(parsed.len(), 3);
        assert_eq!(parsed[0], inst(4, 5, 3));
        assert_eq!(parsed[2], inst(12, 13, 13));

        assert!(matches!(parse_instances("4 5"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_instances("4 x 3"), Err(Error::Parse { .. })));
        assert!(parse_instances("4 1 3").is_err()); // b < 2
    }

    #[test]
    fn parallel_scan_agrees_with_sequential_contract() {
        // Unsatisfiable prime instance above the parallel threshold: the
        // visited count must still be the full sequential scan length.
        let p: u64 = 8_388_617; // prime, just above 2^23
        let q = Prime::from_u64(p).unwrap();
        let mut a = 2;
        while modmath::legendre_symbol(&nat(a), &q).unwrap() != -1 {
            a += 1;
        }
        let out = brute_force(&inst(a, p, p));
        assert!(!out.verdict.satisfiable());
        assert_eq!(out.visited, p - 1);
    }
}
