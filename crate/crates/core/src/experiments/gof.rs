//! Goodness-of-fit machinery: chi-square and Kolmogorov–Smirnov tests
//! against the uniform distribution, with the special functions they need
//! implemented locally.
//!
//! The chi-square p-value comes from the regularized incomplete gamma
//! function, computed by its power series for `x < a + 1` and by the
//! continued fraction (modified Lentz) otherwise — the standard split.
//! Absolute accuracy is ~1e-14, far inside the 1e-8 the pass/fail
//! thresholds need. The KS p-value is the asymptotic Kolmogorov survival
//! function `Q(√n·D)`.

use crate::error::{Error, Result};
use crate::gausscensus::bin_index_tie_lower;

use super::StatReport;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Lanczos approximation (g = 7, 9 coefficients), relative error < 2e-10.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx)
        let pi = std::f64::consts::PI;
        return pi.ln() - (pi * x).sin().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = 0.999_999_999_999_809_9;
    for (i, &c) in COEFFS.iter().enumerate() {
        acc += c / (x + i as f64 + 1.0);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized lower incomplete gamma `P(a, x)`.
pub fn reg_gamma_lower(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "P(a, x) needs a > 0, x >= 0");
    if x == 0.0 {
        0.0
    } else if x < a + 1.0 {
        gamma_series(a, x)
    } else {
        1.0 - gamma_continued_fraction(a, x)
    }
}

/// Regularized upper incomplete gamma `Q(a, x) = 1 − P(a, x)`.
pub fn reg_gamma_upper(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "Q(a, x) needs a > 0, x >= 0");
    if x == 0.0 {
        1.0
    } else if x < a + 1.0 {
        1.0 - gamma_series(a, x)
    } else {
        gamma_continued_fraction(a, x)
    }
}

const GAMMA_EPS: f64 = 1e-15;
const GAMMA_MAX_ITER: usize = 500;

fn gamma_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..GAMMA_MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * GAMMA_EPS {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

fn gamma_continued_fraction(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=GAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < GAMMA_EPS {
            break;
        }
    }
    h * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Survival function of the chi-square distribution with `df` degrees of
/// freedom.
pub fn chi_square_sf(stat: f64, df: f64) -> f64 {
    if stat <= 0.0 {
        1.0
    } else {
        reg_gamma_upper(df / 2.0, stat / 2.0)
    }
}

/// Kolmogorov survival function `Q(z) = P(K > z)` for the asymptotic
/// distribution of `√n·D`. Theta-function inversion below z = 1.18, the
/// alternating series above.
pub fn kolmogorov_sf(z: f64) -> f64 {
    if z <= 0.0 {
        return 1.0;
    }
    let q = if z < 1.18 {
        let y = (-std::f64::consts::PI.powi(2) / (8.0 * z * z)).exp();
        let sum = y + y.powi(9) + y.powi(25) + y.powi(49);
        1.0 - (2.0 * std::f64::consts::PI).sqrt() / z * sum
    } else {
        let mut sum = 0.0;
        let mut sign = 1.0;
        for k in 1..100 {
            let term = (-2.0 * (k as f64) * (k as f64) * z * z).exp();
            sum += sign * term;
            if term < 1e-17 {
                break;
            }
            sign = -sign;
        }
        2.0 * sum
    };
    q.clamp(0.0, 1.0)
}

// ---------------------------------------------------------------------------
// Uniformity tests
// ---------------------------------------------------------------------------

fn check_samples_in_range(samples: &[f64], lo: f64, hi: f64) -> Result<()> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::EmptyRange { lo, hi });
    }
    for &x in samples {
        if !(x >= lo && x <= hi) {
            return Err(Error::SampleOutOfRange { value: x, lo, hi });
        }
    }
    Ok(())
}

/// Chi-square test of the samples against the uniform density on
/// `[lo, hi]`, with `bins` equal-width cells and `bins − 1` degrees of
/// freedom. Requires at least 5 expected counts per bin. A sample exactly
/// on an interior bin edge counts toward the lower bin, matching
/// [`crate::gausscensus::sector_histogram`].
pub fn chi_square_uniform(samples: &[f64], lo: f64, hi: f64, bins: usize) -> Result<StatReport> {
    if bins < 2 {
        return Err(Error::TooFewBins(bins));
    }
    check_samples_in_range(samples, lo, hi)?;
    let expected = samples.len() as f64 / bins as f64;
    if expected < 5.0 {
        return Err(Error::UnderSampled(expected));
    }
    let mut counts = vec![0u64; bins];
    for &x in samples {
        counts[bin_index_tie_lower(x, lo, hi, bins)] += 1;
    }
    let (statistic, p_value) = chi_square_from_counts(&counts, samples.len() as f64);
    Ok(StatReport {
        test_name: "chi_square_uniform".into(),
        sample_size: samples.len(),
        statistic,
        p_value,
        bins: None,
    })
}

/// Chi-square statistic and p-value of observed bin counts against the
/// equal-expectation split of `total`.
pub(crate) fn chi_square_from_counts(counts: &[u64], total: f64) -> (f64, f64) {
    let expected = total / counts.len() as f64;
    let statistic: f64 =
        counts.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    (statistic, chi_square_sf(statistic, counts.len() as f64 - 1.0))
}

/// Kolmogorov–Smirnov test of the samples against the uniform distribution
/// on `[lo, hi]`: statistic `D`, asymptotic p-value `Q(√n·D)`.
pub fn ks_uniform(samples: &[f64], lo: f64, hi: f64) -> Result<StatReport> {
    check_samples_in_range(samples, lo, hi)?;
    if samples.len() < 10 {
        return Err(Error::TooFewSamples { needed: 10, got: samples.len() });
    }
    let mut u: Vec<f64> = samples.iter().map(|&x| (x - lo) / (hi - lo)).collect();
    u.sort_unstable_by(|a, b| a.total_cmp(b));
    let n = u.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in u.iter().enumerate() {
        d = d.max(((i + 1) as f64 / n - x).abs()).max((x - i as f64 / n).abs());
    }
    Ok(StatReport {
        test_name: "ks_uniform".into(),
        sample_size: u.len(),
        statistic: d,
        p_value: kolmogorov_sf(n.sqrt() * d),
        bins: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Quadrature oracle for P(a, x): composite Simpson after the
    /// substitution t = u², which removes the endpoint singularity:
    /// P(a, x) = ∫₀^{√x} 2·u^{2a−1}·e^{−u²} du / Γ(a), smooth for a >= 1/2.
    fn reg_gamma_lower_by_quadrature(a: f64, x: f64) -> f64 {
        let upper = x.sqrt();
        let n = 200_000;
        let h = upper / n as f64;
        let f = |u: f64| -> f64 {
            if u == 0.0 {
                // u^{2a−1} at 0: vanishes for a > 1/2, equals 1 at a = 1/2
                return if 2.0 * a - 1.0 > 0.0 { 0.0 } else { 2.0 * (-ln_gamma(a)).exp() };
            }
            2.0 * ((2.0 * a - 1.0) * u.ln() - u * u - ln_gamma(a)).exp()
        };
        let mut sum = f(0.0) + f(upper);
        for i in 1..n {
            sum += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        sum * h / 3.0
    }

    #[test]
    fn ln_gamma_matches_integer_factorials() {
        let mut fact = 1.0f64;
        for n in 1..15u32 {
            if n > 1 {
                fact *= (n - 1) as f64;
            }
            assert!((ln_gamma(n as f64) - fact.ln()).abs() < 1e-11, "n={n}");
        }
        // Γ(1/2) = √π
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-12);
    }

    #[test]
    fn incomplete_gamma_matches_quadrature_oracle() {
        for (a, x) in [(0.5, 0.3), (1.5, 1.0), (1.5, 40.0), (7.5, 5.0), (7.5, 30.0), (2.0, 2.0)] {
            let got = reg_gamma_lower(a, x);
            let want = reg_gamma_lower_by_quadrature(a, x);
            assert!((got - want).abs() < 1e-8, "a={a} x={x}: got {got}, oracle {want}");
            assert!((reg_gamma_lower(a, x) + reg_gamma_upper(a, x) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn chi_square_sf_known_behavior() {
        // median of chi²(k) is near k − 2/3 for moderate k
        assert!((chi_square_sf(15.337, 16.0) - 0.5).abs() < 0.01);
        // huge statistic underflows gracefully, not to NaN
        let tiny = chi_square_sf(300.0, 3.0);
        assert!(tiny > 0.0 && tiny < 1e-60);
        assert_eq!(chi_square_sf(0.0, 3.0), 1.0);
    }

    #[test]
    fn kolmogorov_sf_branches_agree_with_series_oracle() {
        // oracle: the alternating series, valid for any z > 0 given
        // enough terms
        let oracle = |z: f64| -> f64 {
            let mut sum = 0.0;
            for k in 1..2000 {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sum += sign * (-2.0 * (k as f64).powi(2) * z * z).exp();
            }
            (2.0 * sum).clamp(0.0, 1.0)
        };
        for z in [0.3, 0.5, 0.8, 1.0, 1.17, 1.19, 1.5, 2.0, 3.0] {
            assert!((kolmogorov_sf(z) - oracle(z)).abs() < 1e-10, "z={z}");
        }
        assert_eq!(kolmogorov_sf(0.0), 1.0);
        assert!(kolmogorov_sf(10.0) < 1e-80);
        // the classical 5% critical value
        assert!((kolmogorov_sf(1.3581) - 0.05).abs() < 1e-4);
    }

    #[test]
    fn chi_square_uniform_examples() {
        // perfectly stratified samples: bin centers, equal counts
        let bins = 4;
        let samples: Vec<f64> = (0..bins)
            .flat_map(|b| std::iter::repeat_n((b as f64 + 0.5) / bins as f64, 25))
            .collect();
        let rep = chi_square_uniform(&samples, 0.0, 1.0, bins).unwrap();
        assert_eq!(rep.statistic, 0.0);
        assert_eq!(rep.p_value, 1.0);

        // all 100 samples in the first of 4 bins:
        // (100−25)²/25 + 3·(0−25)²/25 = 225 + 75 = 300
        let clumped = vec![0.1; 100];
        let rep = chi_square_uniform(&clumped, 0.0, 1.0, 4).unwrap();
        assert_eq!(rep.statistic, 300.0);
        assert!(rep.p_value < 1e-60);
    }

    #[test]
    fn chi_square_uniform_validates() {
        let ok = vec![0.5; 50];
        assert!(chi_square_uniform(&ok, 0.0, 1.0, 11).is_err()); // 50/11 < 5
        assert!(chi_square_uniform(&ok, 0.0, 1.0, 1).is_err());
        assert!(chi_square_uniform(&[0.5, 1.5], 0.0, 1.0, 2).is_err()); // out of range
        assert!(chi_square_uniform(&ok, 1.0, 0.0, 2).is_err());
    }

    #[test]
    fn ks_uniform_examples() {
        // sorted uniform grid midpoints: D = 1/(2n)
        let n = 50;
        let samples: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let rep = ks_uniform(&samples, 0.0, 1.0).unwrap();
        assert!((rep.statistic - 1.0 / (2.0 * n as f64)).abs() < 1e-12);
        assert!(rep.p_value > 0.999999);

        // a single cluster at lo drives D toward 1
        let clustered = vec![1e-9; 200];
        let rep = ks_uniform(&clustered, 0.0, 1.0).unwrap();
        assert!(rep.statistic > 0.99);
        assert!(rep.p_value < 1e-60);

        assert!(ks_uniform(&samples[..5], 0.0, 1.0).is_err()); // too few
        assert!(ks_uniform(&samples, 0.3, 0.3).is_err()); // empty range
    }

    #[test]
    fn chi_square_p_values_roughly_uniform_under_null() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let trials = 200;
        let mut below_5pct = 0;
        for _ in 0..trials {
            let samples: Vec<f64> = (0..1000).map(|_| rng.random::<f64>()).collect();
            let rep = chi_square_uniform(&samples, 0.0, 1.0, 10).unwrap();
            if rep.p_value < 0.05 {
                below_5pct += 1;
            }
        }
        let fraction = below_5pct as f64 / trials as f64;
        assert!((0.01..=0.12).contains(&fraction), "fraction = {fraction}");
    }
}
