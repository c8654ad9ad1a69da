//! Statistical tests of the "angles and roots distribute at random" claims
//! and a benchmark harness for the cost claims.
//!
//! "Distributes at random" is operationalized as equidistribution: the
//! samples must pass chi-square and Kolmogorov–Smirnov uniformity tests at
//! significance 1e-3. [`randomness_suite`] assembles the four sample
//! families (two-square angles, normalized `s/√p`, normalized Wilson roots,
//! Gaussian-prime sector arguments) and reports every statistic; it passes
//! no judgement beyond the p-values.
//!
//! Benchmarks report wall time as the median of repetitions but prefer the
//! machine-independent multiplication count for any comparison: the
//! factorial route costs exactly `(p−1)/2 − 1` multiplications, while the
//! square-root routes are polynomial in `log p`. Timed sections are strictly
//! sequential; nothing inside them touches the rayon pool.

use num_traits::ToPrimitive;
use serde::Serialize;
use std::io::Write;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::gausscensus;
use crate::modmath::{self, Prime4m1};
use crate::quadcong::{self, QCInstance};
use crate::twosquares;

mod gof;

pub use gof::{
    chi_square_sf, chi_square_uniform, kolmogorov_sf, ks_uniform, reg_gamma_lower,
    reg_gamma_upper,
};

/// Outcome of one statistical test. Serializes to the JSON report row
/// `{test_name, n, statistic, p_value}`; a histogram is attached only for
/// the sector test.
#[derive(Clone, Debug, Serialize)]
pub struct StatReport {
    pub test_name: String,
    #[serde(rename = "n")]
    pub sample_size: usize,
    pub statistic: f64,
    pub p_value: f64,
    #[serde(skip)]
    pub bins: Option<gausscensus::SectorHistogram>,
}

/// One benchmark measurement: input magnitude, median wall time over the
/// repetitions, and the deterministic operation count.
#[derive(Clone, Debug, Serialize)]
pub struct BenchSample {
    pub op_label: String,
    pub input_magnitude: u64,
    pub wall_time_ns: u64,
    pub op_count: u64,
    pub repetitions: u32,
}

/// Log-log least-squares slopes of cost against input magnitude.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingFit {
    pub op_label: String,
    pub time_slope: f64,
    pub op_count_slope: f64,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub samples: Vec<BenchSample>,
    pub fits: Vec<ScalingFit>,
}

// ---------------------------------------------------------------------------
// Randomness suite
// ---------------------------------------------------------------------------

/// The Wilson-root family computes real half-factorials, a Θ(p) cost per
/// prime, so it is capped at this limit regardless of the suite limit.
const WILSON_FAMILY_CAP: u64 = 100_000;

/// Runs chi-square and KS uniformity tests on (a) two-square angles
/// `θ ∈ (0, π/4)`, (b) normalized `s/√p ∈ (1/√2, 1)`, (c) normalized Wilson
/// roots `min(w, p−w)/p ∈ (0, 1/2)`, and (d) the Gaussian-prime sector
/// arguments over `[0, π/2)`. Deterministic given the limit.
pub fn randomness_suite(p_limit: u64) -> Result<Vec<StatReport>> {
    if p_limit < 10_000 {
        return Err(Error::LimitTooSmall(p_limit, 10_000));
    }
    let mut reports = Vec::with_capacity(8);
    let decs = twosquares::decompose_range_raw(p_limit);

    let angles: Vec<f64> =
        decs.iter().map(|&(_, s, t)| (t as f64).atan2(s as f64)).collect();
    reports.push(named(
        chi_square_uniform(&angles, 0.0, std::f64::consts::FRAC_PI_4, 16)?,
        "two_square_angles_chi2",
    ));
    reports.push(named(
        ks_uniform(&angles, 0.0, std::f64::consts::FRAC_PI_4)?,
        "two_square_angles_ks",
    ));

    let normalized_s: Vec<f64> =
        decs.iter().map(|&(p, s, _)| s as f64 / (p as f64).sqrt()).collect();
    reports.push(named(
        chi_square_uniform(&normalized_s, std::f64::consts::FRAC_1_SQRT_2, 1.0, 16)?,
        "normalized_s_chi2",
    ));
    reports.push(named(
        ks_uniform(&normalized_s, std::f64::consts::FRAC_1_SQRT_2, 1.0)?,
        "normalized_s_ks",
    ));

    let wilson_roots: Vec<f64> = decs
        .iter()
        .take_while(|&&(p, _, _)| p <= WILSON_FAMILY_CAP)
        .map(|&(p, _, _)| {
            let prime = Prime4m1::from_u64_unchecked(p);
            let w = modmath::wilson_sqrt_minus_one(&prime).to_u64().expect("w < p <= 10^5");
            w.min(p - w) as f64 / p as f64
        })
        .collect();
    reports.push(named(
        chi_square_uniform(&wilson_roots, 0.0, 0.5, 16)?,
        "wilson_roots_chi2",
    ));
    reports.push(named(ks_uniform(&wilson_roots, 0.0, 0.5)?, "wilson_roots_ks"));

    let histogram = gausscensus::sector_histogram(p_limit, 16)?;
    let (statistic, p_value) =
        gof::chi_square_from_counts(histogram.counts(), histogram.total() as f64);
    reports.push(StatReport {
        test_name: "gaussian_sectors_chi2".into(),
        sample_size: histogram.total() as usize,
        statistic,
        p_value,
        bins: Some(histogram),
    });
    let args = gausscensus::census_args(p_limit)?;
    reports.push(named(
        ks_uniform(&args, 0.0, std::f64::consts::FRAC_PI_2)?,
        "gaussian_sectors_ks",
    ));

    Ok(reports)
}

fn named(mut report: StatReport, name: &str) -> StatReport {
    report.test_name = name.into();
    report
}

// ---------------------------------------------------------------------------
// Benchmarks
// ---------------------------------------------------------------------------

/// Times the four square-root routes on each grid prime and fits log-log
/// scaling slopes. The grid must be ascending, hold at least 4 primes and
/// span at least 3 decades; `reps >= 5` runs per point, median reported.
pub fn bench_sqrt_methods(grid: &[Prime4m1], reps: u32) -> Result<BenchReport> {
    if grid.len() < 4 {
        return Err(Error::BadBenchGrid(format!("need >= 4 grid points, got {}", grid.len())));
    }
    if !grid.windows(2).all(|w| w[0].value() < w[1].value()) {
        return Err(Error::BadBenchGrid("grid must be strictly ascending".into()));
    }
    let lo = grid.first().unwrap().to_u64().ok_or_else(too_large_grid)?;
    let hi = grid.last().unwrap().to_u64().ok_or_else(too_large_grid)?;
    // 3 decades, with slack for rounding the anchors to nearby primes
    if (hi as f64) < lo as f64 * 900.0 {
        return Err(Error::BadBenchGrid("grid must span at least 3 decades".into()));
    }
    if reps < 5 {
        return Err(Error::BadBenchGrid(format!("need reps >= 5, got {reps}")));
    }

    let mut samples = Vec::new();
    for p in grid {
        let magnitude = p.to_u64().ok_or_else(too_large_grid)?;
        let half = (p.value() - 1u32) / 2u32;
        let p_minus_1 = p.value() - 1u32;

        samples.push(timed(reps, "factorial_root", magnitude, || {
            modmath::factorial_mod_counted(&half, p.value()).expect("nonzero modulus").1
        }));
        samples.push(timed(reps, "sqrt_mod_prime", magnitude, || {
            modmath::sqrt_mod_prime_counted(&p_minus_1, p.prime()).1
        }));
        samples.push(timed(reps, "decompose_descent", magnitude, || {
            twosquares::decompose_counted(p).1
        }));
        samples.push(timed(reps, "decompose_brute", magnitude, || {
            twosquares::decompose_brute(p).1
        }));
    }

    let fits = ["factorial_root", "sqrt_mod_prime", "decompose_descent", "decompose_brute"]
        .iter()
        .map(|op| scaling_fit(&samples, op))
        .collect();
    Ok(BenchReport { samples, fits })
}

fn too_large_grid() -> Error {
    Error::BadBenchGrid("grid primes must fit in u64 to be timed".into())
}

fn timed(reps: u32, label: &str, magnitude: u64, mut run: impl FnMut() -> u64) -> BenchSample {
    let mut times: Vec<u64> = Vec::with_capacity(reps as usize);
    let mut op_count = 0;
    for _ in 0..reps {
        let start = Instant::now();
        op_count = run();
        times.push(start.elapsed().as_nanos().max(1) as u64);
    }
    times.sort_unstable();
    BenchSample {
        op_label: label.into(),
        input_magnitude: magnitude,
        wall_time_ns: times[times.len() / 2],
        op_count: op_count.max(1),
        repetitions: reps,
    }
}

/// Pure least squares on the recorded samples of one operation:
/// slope of `ln cost` against `ln magnitude`.
fn scaling_fit(samples: &[BenchSample], op_label: &str) -> ScalingFit {
    let points: Vec<&BenchSample> =
        samples.iter().filter(|s| s.op_label == op_label).collect();
    let slope = |ys: Vec<f64>| -> f64 {
        let xs: Vec<f64> = points.iter().map(|s| (s.input_magnitude as f64).ln()).collect();
        let n = xs.len() as f64;
        let mean_x = xs.iter().sum::<f64>() / n;
        let mean_y = ys.iter().sum::<f64>() / n;
        let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
        let var: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
        cov / var
    };
    ScalingFit {
        op_label: op_label.into(),
        time_slope: slope(points.iter().map(|s| (s.wall_time_ns as f64).ln()).collect()),
        op_count_slope: slope(points.iter().map(|s| (s.op_count as f64).ln()).collect()),
    }
}

/// Records the exhaustive-search cost of each instance: the visited count
/// is the op_count, the modulus is the input magnitude.
pub fn bench_search_cost(instances: &[QCInstance]) -> Result<Vec<BenchSample>> {
    if instances.is_empty() {
        return Err(Error::BadBenchGrid("instance list must be nonempty".into()));
    }
    Ok(instances
        .iter()
        .map(|inst| {
            let start = Instant::now();
            let outcome = quadcong::brute_force(inst);
            let elapsed = start.elapsed().as_nanos().max(1) as u64;
            BenchSample {
                op_label: "brute_force".into(),
                input_magnitude: inst.modulus().to_u64().unwrap_or(u64::MAX),
                wall_time_ns: elapsed,
                op_count: outcome.visited.max(1),
                repetitions: 1,
            }
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Exports
// ---------------------------------------------------------------------------

/// JSON export: a single top-level array of `{test_name, n, statistic,
/// p_value}` objects.
pub fn write_reports_json<W: Write>(reports: &[StatReport], mut w: W) -> Result<()> {
    serde_json::to_writer(&mut w, reports).map_err(std::io::Error::other)?;
    writeln!(w)?;
    Ok(())
}

/// CSV export of report rows: `test_name,n,statistic,p_value`.
pub fn write_reports_csv<W: Write>(reports: &[StatReport], mut w: W) -> Result<()> {
    writeln!(w, "test_name,n,statistic,p_value")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{}",
            r.test_name,
            r.sample_size,
            crate::textio::sig12(r.statistic),
            crate::textio::sig12(r.p_value)
        )?;
    }
    Ok(())
}

/// CSV export of benchmark samples: `op,p,ns_median,op_count,reps`.
pub fn write_bench_csv<W: Write>(samples: &[BenchSample], mut w: W) -> Result<()> {
    writeln!(w, "op,p,ns_median,op_count,reps")?;
    for s in samples {
        writeln!(
            w,
            "{},{},{},{},{}",
            s.op_label, s.input_magnitude, s.wall_time_ns, s.op_count, s.repetitions
        )?;
    }
    Ok(())
}
