//! Lattice points in discs, octants and on circles.
//!
//! `[πr²]` is the classical approximation for the number of lattice points
//! on or inside a circle of radius `r`; its error is O(r), so exact counts
//! are computed here and the approximation is reported alongside as a
//! labeled estimate. The octant region is `x >= y > 0` (diagonal included,
//! axes excluded); its exact count behaves as `πR/8 − c√R + o(√R)` in the
//! squared radius `R`, with `c` produced by least-squares fitting, never
//! assumed. On-circle counts at prime `R` restate Fermat's theorem on the
//! lattice: exactly one point for `R = 2` or `R ≡ 1 (mod 4)`, none for
//! `R ≡ 3 (mod 4)`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::modmath::sieve::OddSieve;
use crate::textio::sig12;

/// Exact disc count next to the `[πr²]` estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscCount {
    pub exact: u64,
    pub approx: u64,
}

impl DiscCount {
    /// `exact − approx`: what the estimate misses.
    pub fn approximation_error(&self) -> i64 {
        self.exact as i64 - self.approx as i64
    }
}

/// Lattice points `(x, y)` with `x² + y² <= r²`, all four quadrants, plus
/// the `[πr²]` approximation.
pub fn count_disc(r: f64) -> Result<DiscCount> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::BadRadius(r));
    }
    let r_squared = r * r;
    if r_squared >= u64::MAX as f64 {
        return Err(Error::ValueTooLarge(format!("{r}")));
    }
    Ok(DiscCount {
        exact: count_disc_norm(r_squared.floor() as u64),
        approx: (std::f64::consts::PI * r_squared).floor() as u64,
    })
}

/// Exact disc count in terms of the squared radius: `#{(x, y) : x² + y² <= R}`.
pub fn count_disc_norm(r_squared: u64) -> u64 {
    let xmax = r_squared.isqrt();
    let mut total = 2 * xmax + 1; // the x axis column at y ... x = 0 row included below
    let mut count = 0u64;
    for x in 1..=xmax {
        let ymax = (r_squared - x * x).isqrt();
        count += 2 * ymax + 1;
    }
    total += 2 * count;
    total
}

/// Lattice points with `x >= y > 0` and `x² + y² <= R`.
pub fn count_octant(r_squared: u64) -> u64 {
    let mut count = 0u64;
    let mut y = 1u64;
    while 2 * y * y <= r_squared {
        count += (r_squared - y * y).isqrt() - y + 1;
        y += 1;
    }
    count
}

/// Points per half-diagonal: `#{x >= 1 : 2x² <= R}`.
pub fn diagonal_count(r_squared: u64) -> u64 {
    let mut d = (r_squared / 2).isqrt();
    while 2 * d * d > r_squared {
        d -= 1;
    }
    while 2 * (d + 1) * (d + 1) <= r_squared {
        d += 1;
    }
    d
}

/// Points `x >= y > 0` with `x² + y² = R` exactly.
pub fn on_circle_count(r_squared: u64) -> u64 {
    let mut count = 0u64;
    let mut y = 1u64;
    while 2 * y * y <= r_squared {
        let rem = r_squared - y * y;
        let x = rem.isqrt();
        if x * x == rem {
            count += 1;
        }
        y += 1;
    }
    count
}

/// Least-squares fit of `c` in `N₀(R) ≈ πR/8 − c√R`.
#[derive(Clone, Debug, PartialEq)]
pub struct OctantFit {
    /// Fitted boundary constant.
    pub c: f64,
    /// Per-point `(N₀ − (πR/8 − c√R))/√R`, in input order.
    pub residuals: Vec<f64>,
}

pub fn fit_octant_constant(r_values: &[u64]) -> Result<OctantFit> {
    if r_values.len() < 3 || r_values.iter().any(|&r| r < 100) {
        return Err(Error::TooFewFitPoints);
    }
    let counts: Vec<u64> = r_values.iter().map(|&r| count_octant(r)).collect();
    // minimize Σ (err_i − c√R_i)² with err = πR/8 − N₀  ⇒  c = Σ err·√R / Σ R
    let mut num = 0.0;
    let mut den = 0.0;
    for (&r, &n0) in r_values.iter().zip(&counts) {
        let rf = r as f64;
        let err = std::f64::consts::PI * rf / 8.0 - n0 as f64;
        num += err * rf.sqrt();
        den += rf;
    }
    let c = num / den;
    let residuals = r_values
        .iter()
        .zip(&counts)
        .map(|(&r, &n0)| {
            let rf = r as f64;
            (n0 as f64 - (std::f64::consts::PI * rf / 8.0 - c * rf.sqrt())) / rf.sqrt()
        })
        .collect();
    Ok(OctantFit { c, residuals })
}

/// Prime-bearing lattice points against all octant points, with the
/// `4/(π log R)` prediction. Both closing estimates for the prime count are
/// reported: `π(R)/2 + 1` and `R/(2 log R)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimePointRatio {
    /// `N`: primes `p <= R` with `p = 2` or `p ≡ 1 (mod 4)`.
    pub n_prime_points: u64,
    /// `N₀`: all octant points with norm `<= R`.
    pub n_octant: u64,
    pub ratio: f64,
    pub predicted: f64,
    pub estimate_half_pnt: f64,
    pub estimate_log: f64,
}

pub fn prime_point_ratio(r_squared: u64) -> Result<PrimePointRatio> {
    if r_squared < 2 {
        return Err(Error::LimitTooSmall(r_squared, 2));
    }
    let sieve = OddSieve::up_to(r_squared);
    let mut split = 0u64;
    let mut all_primes = 0u64;
    for p in sieve.primes() {
        all_primes += 1;
        if p % 4 == 1 {
            split += 1;
        }
    }
    let n = 1 + split; // the prime 2 plus the 4m+1 primes
    let n0 = count_octant(r_squared);
    let rf = r_squared as f64;
    Ok(PrimePointRatio {
        n_prime_points: n,
        n_octant: n0,
        ratio: n as f64 / n0 as f64,
        predicted: 4.0 / (std::f64::consts::PI * rf.ln()),
        estimate_half_pnt: all_primes as f64 / 2.0 + 1.0,
        estimate_log: rf / (2.0 * rf.ln()),
    })
}

/// Full lattice census at one squared radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeCensus {
    pub r_squared: u64,
    pub n_disc: u64,
    pub n_octant: u64,
    pub n_prime_points: u64,
    /// Boundary constant fitted on `{R/100, R/10, R}`; present when
    /// `R >= 10^4` so every fit point stays at or above 100.
    pub c_fit: Option<f64>,
}

pub fn lattice_census(r_squared: u64) -> Result<LatticeCensus> {
    let ratio = prime_point_ratio(r_squared)?;
    let c_fit = if r_squared >= 10_000 {
        Some(fit_octant_constant(&[r_squared / 100, r_squared / 10, r_squared])?.c)
    } else {
        None
    };
    Ok(LatticeCensus {
        r_squared,
        n_disc: count_disc_norm(r_squared),
        n_octant: ratio.n_octant,
        n_prime_points: ratio.n_prime_points,
        c_fit,
    })
}

/// CSV export: `R,n_disc,n_octant,N,ratio,predicted`.
pub fn write_lattice_csv<W: Write>(rows: &[LatticeCensus], mut w: W) -> Result<()> {
    writeln!(w, "R,n_disc,n_octant,N,ratio,predicted")?;
    for row in rows {
        let ratio = row.n_prime_points as f64 / row.n_octant as f64;
        let predicted = 4.0 / (std::f64::consts::PI * (row.r_squared as f64).ln());
        writeln!(
            w,
            "{},{},{},{},{},{}",
            row.r_squared,
            row.n_disc,
            row.n_octant,
            row.n_prime_points,
            sig12(ratio),
            sig12(predicted)
        )?;
    }
    Ok(())
}

/// CSV export of a ratio measurement, both closing estimates included:
/// `R,N,N0,ratio,predicted,estimate_half_pnt,estimate_log`.
pub fn write_ratio_csv<W: Write>(r_squared: u64, r: &PrimePointRatio, mut w: W) -> Result<()> {
    writeln!(w, "R,N,N0,ratio,predicted,estimate_half_pnt,estimate_log")?;
    writeln!(
        w,
        "{},{},{},{},{},{},{}",
        r_squared,
        r.n_prime_points,
        r.n_octant,
        sig12(r.ratio),
        sig12(r.predicted),
        sig12(r.estimate_half_pnt),
        sig12(r.estimate_log)
    )?;
    Ok(())
}
