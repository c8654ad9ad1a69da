//! Census of Gaussian primes by norm.
//!
//! One representative per associate class is enumerated, the one with
//! argument in `[0, π/2)`: the ramified prime `1+i`; for each rational
//! prime `p ≡ 1 (mod 4)` up to the norm bound both conjugate split primes
//! `s+ti` and `t+si`; and each inert rational prime `q ≡ 3 (mod 4)` with
//! `q² ≤ x` sitting on the real axis. Split primes are obtained from
//! [`crate::twosquares::decompose`], so the census doubles as a cross-check
//! of the decomposition path.
//!
//! Sector densities follow `(2/π)(θ₂ − θ₁)·x/log x` — the width must enter
//! as `θ₂ − θ₁`; the reversed order sometimes quoted for this density is
//! negative for ascending bounds. Sector bounds are inclusive on both ends,
//! while the census quadrant is half-open — the real axis is in, the
//! imaginary axis is out.

use rayon::prelude::*;
use std::io::Write;

use crate::error::{Error, Result};
use crate::modmath::sieve::OddSieve;
use crate::textio::sig12;
use crate::twosquares;

/// A Gaussian integer with its norm and principal argument cached.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianInteger {
    re: i64,
    im: i64,
    norm: u64,
    arg: f64,
}

impl GaussianInteger {
    pub fn new(re: i64, im: i64) -> Self {
        let norm128 = re as i128 * re as i128 + im as i128 * im as i128;
        debug_assert!(norm128 <= u64::MAX as i128);
        let mut arg = (im as f64).atan2(re as f64);
        if arg < 0.0 {
            arg += 2.0 * std::f64::consts::PI;
        }
        GaussianInteger { re, im, norm: norm128 as u64, arg }
    }

    pub fn re(&self) -> i64 {
        self.re
    }

    pub fn im(&self) -> i64 {
        self.im
    }

    /// `re² + im²`, exact.
    pub fn norm(&self) -> u64 {
        self.norm
    }

    /// Principal argument normalized to `[0, 2π)`.
    pub fn arg(&self) -> f64 {
        self.arg
    }
}

/// Angular histogram of the census over `[0, π/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorHistogram {
    x_limit: u64,
    bin_edges: Vec<f64>,
    counts: Vec<u64>,
    total: u64,
}

impl SectorHistogram {
    pub fn x_limit(&self) -> u64 {
        self.x_limit
    }

    /// `bins + 1` ascending edges; first 0, last `π/2`.
    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Expected count per bin under angular uniformity of the whole census.
    pub fn expected_per_bin(&self) -> f64 {
        self.total as f64 / self.counts.len() as f64
    }
}

/// Assigns `x` to one of `bins` equal-width bins over `[lo, hi]`. A value
/// exactly on an interior edge goes to the lower bin; `x = hi` lands in the
/// last bin.
pub(crate) fn bin_index_tie_lower(x: f64, lo: f64, hi: f64, bins: usize) -> usize {
    let width = (hi - lo) / bins as f64;
    let mut idx = ((x - lo) / width).floor() as usize;
    if idx > 0 && x <= lo + idx as f64 * width {
        idx -= 1;
    }
    idx.min(bins - 1)
}

/// Every associate-class representative with norm `<= x_limit` and argument
/// in `[0, π/2)`, ascending by norm then argument.
pub fn enumerate_gaussian_primes(x_limit: u64) -> Result<Vec<GaussianInteger>> {
    if x_limit < 2 {
        return Err(Error::LimitTooSmall(x_limit, 2));
    }
    let mut out = vec![GaussianInteger::new(1, 1)];

    let inert_bound = x_limit.isqrt();
    let inert_sieve = OddSieve::up_to(inert_bound);
    out.extend(
        inert_sieve
            .primes()
            .filter(|&q| q % 4 == 3)
            .map(|q| GaussianInteger::new(q as i64, 0)),
    );

    let split: Vec<GaussianInteger> = twosquares::decompose_range_raw(x_limit)
        .into_par_iter()
        .flat_map_iter(|(_, s, t)| {
            [GaussianInteger::new(s as i64, t as i64), GaussianInteger::new(t as i64, s as i64)]
        })
        .collect();
    out.extend(split);

    out.sort_by(|a, b| a.norm.cmp(&b.norm).then(a.arg.total_cmp(&b.arg)));
    Ok(out)
}

/// Census count together with its prime-number-theorem comparison ratio
/// `count·log x / x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CensusCount {
    pub count: u64,
    pub ratio: f64,
}

pub fn count_pi_zi(x_limit: u64) -> Result<CensusCount> {
    if x_limit < 3 {
        return Err(Error::LimitTooSmall(x_limit, 3));
    }
    let count = enumerate_gaussian_primes(x_limit)?.len() as u64;
    let x = x_limit as f64;
    Ok(CensusCount { count, ratio: count as f64 * x.ln() / x })
}

/// Number of census primes with `theta1 <= arg <= theta2` (both ends
/// inclusive) and norm `<= x_limit`.
pub fn sector_count(x_limit: u64, theta1: f64, theta2: f64) -> Result<u64> {
    if !(theta1 >= 0.0 && theta2 <= std::f64::consts::FRAC_PI_2 && theta1 < theta2) {
        return Err(Error::InvalidSector { theta1, theta2 });
    }
    let census = enumerate_gaussian_primes(x_limit)?;
    Ok(census.iter().filter(|g| g.arg >= theta1 && g.arg <= theta2).count() as u64)
}

/// Equal-width angular histogram over `[0, π/2)`. Every census prime lands
/// in exactly one bin; an argument exactly on an interior edge goes to the
/// lower bin (`arg = π/2` cannot occur).
pub fn sector_histogram(x_limit: u64, bins: usize) -> Result<SectorHistogram> {
    sector_histogram_opts(x_limit, bins, false)
}

/// As [`sector_histogram`]; `exclude_axis` drops the inert primes at
/// `arg = 0`, whose O(√x/log x) pile-up sits entirely in the boundary bin.
pub fn sector_histogram_opts(
    x_limit: u64,
    bins: usize,
    exclude_axis: bool,
) -> Result<SectorHistogram> {
    if bins < 2 {
        return Err(Error::TooFewBins(bins));
    }
    let census = enumerate_gaussian_primes(x_limit)?;
    let hi = std::f64::consts::FRAC_PI_2;
    let mut counts = vec![0u64; bins];
    let mut total = 0u64;
    for g in &census {
        if exclude_axis && g.arg == 0.0 {
            continue;
        }
        counts[bin_index_tie_lower(g.arg, 0.0, hi, bins)] += 1;
        total += 1;
    }
    let width = hi / bins as f64;
    let mut bin_edges: Vec<f64> = (0..bins).map(|i| i as f64 * width).collect();
    bin_edges.push(hi);
    Ok(SectorHistogram { x_limit, bin_edges, counts, total })
}

/// Arguments of every census prime, in census order.
pub(crate) fn census_args(x_limit: u64) -> Result<Vec<f64>> {
    Ok(enumerate_gaussian_primes(x_limit)?.iter().map(|g| g.arg).collect())
}

/// CSV export of the census: `re,im,norm,arg`.
pub fn write_census_csv<W: Write>(census: &[GaussianInteger], mut w: W) -> Result<()> {
    writeln!(w, "re,im,norm,arg")?;
    for g in census {
        writeln!(w, "{},{},{},{}", g.re, g.im, g.norm, sig12(g.arg))?;
    }
    Ok(())
}

/// CSV export of a histogram: `bin_lo,bin_hi,count,expected`, where the
/// expected column is the sector density `(2/π)(hi − lo)·x/log x`.
pub fn write_histogram_csv<W: Write>(hist: &SectorHistogram, mut w: W) -> Result<()> {
    writeln!(w, "bin_lo,bin_hi,count,expected")?;
    let x = hist.x_limit as f64;
    for (i, count) in hist.counts.iter().enumerate() {
        let lo = hist.bin_edges[i];
        let hi = hist.bin_edges[i + 1];
        let expected = 2.0 / std::f64::consts::PI * (hi - lo) * x / x.ln();
        writeln!(w, "{},{},{},{}", sig12(lo), sig12(hi), count, sig12(expected))?;
    }
    Ok(())
}
