//! Python bindings: the main types and operations of the workbench exposed
//! as plain functions. Arbitrary-precision values cross the boundary as
//! Python ints; domain errors raise `ValueError`.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use quadlab_core::experiments;
use quadlab_core::gausscensus;
use quadlab_core::lattice;
use quadlab_core::modmath::{self, Prime, Prime4m1};
use quadlab_core::quadcong::{self, QCInstance};
use quadlab_core::twosquares;

fn value_err(e: quadlab_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn prime(value: BigUint, seed: Option<u64>) -> PyResult<Prime> {
    match seed {
        Some(seed) => Prime::with_seed(value, seed),
        None => Prime::new(value),
    }
    .map_err(value_err)
}

fn prime4m1(value: BigUint, seed: Option<u64>) -> PyResult<Prime4m1> {
    Prime4m1::new(prime(value, seed)?).map_err(value_err)
}

// -- modmath ----------------------------------------------------------------

#[pyfunction]
fn mod_pow(base: BigUint, exp: BigUint, modulus: BigUint) -> PyResult<BigUint> {
    modmath::mod_pow(&base, &exp, &modulus).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (n, seed=None))]
fn is_prime(n: BigUint, seed: Option<u64>) -> bool {
    match seed {
        Some(seed) => modmath::is_prime_with_seed(&n, seed),
        None => modmath::is_prime(&n),
    }
}

#[pyfunction]
fn primes_in_class(limit: u64, residue: u64, modulus: u64) -> PyResult<Vec<u64>> {
    Ok(modmath::primes_in_class(limit, residue, modulus)
        .map_err(value_err)?
        .map(|p| p.to_u64().expect("sieve primes fit u64"))
        .collect())
}

#[pyfunction]
fn factorial_mod(n: BigUint, modulus: BigUint) -> PyResult<BigUint> {
    modmath::factorial_mod(&n, &modulus).map_err(value_err)
}

#[pyfunction]
fn factorial_mod_counted(n: BigUint, modulus: BigUint) -> PyResult<(BigUint, u64)> {
    modmath::factorial_mod_counted(&n, &modulus).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (p, seed=None))]
fn wilson_sqrt_minus_one(p: BigUint, seed: Option<u64>) -> PyResult<BigUint> {
    Ok(modmath::wilson_sqrt_minus_one(&prime4m1(p, seed)?))
}

#[pyfunction]
#[pyo3(signature = (a, p, seed=None))]
fn sqrt_mod_prime(a: BigUint, p: BigUint, seed: Option<u64>) -> PyResult<Option<(BigUint, BigUint)>> {
    Ok(modmath::sqrt_mod_prime(&a, &prime(p, seed)?).map(|pair| (pair.smaller, pair.larger)))
}

#[pyfunction]
#[pyo3(signature = (a, p, seed=None))]
fn legendre_symbol(a: BigUint, p: BigUint, seed: Option<u64>) -> PyResult<i8> {
    modmath::legendre_symbol(&a, &prime(p, seed)?).map_err(value_err)
}

// -- quadcong ---------------------------------------------------------------

#[pyfunction]
fn verify_certificate(a: BigUint, b: BigUint, c: BigUint, x: BigUint) -> PyResult<bool> {
    let inst = QCInstance::new(a, b, c).map_err(value_err)?;
    Ok(quadcong::verify_certificate(&inst, &x))
}

/// Smallest positive witness x < c with x² ≡ a (mod b), or None.
#[pyfunction]
fn solve_congruence(a: BigUint, b: BigUint, c: BigUint) -> PyResult<Option<BigUint>> {
    let inst = QCInstance::new(a, b, c).map_err(value_err)?;
    Ok(quadcong::decide(&inst).witness().cloned())
}

/// Exhaustive scan; returns (witness or None, visited count).
#[pyfunction]
fn brute_force(a: BigUint, b: BigUint, c: BigUint) -> PyResult<(Option<BigUint>, u64)> {
    let inst = QCInstance::new(a, b, c).map_err(value_err)?;
    let outcome = quadcong::brute_force(&inst);
    Ok((outcome.verdict.witness().cloned(), outcome.visited))
}

#[pyfunction]
#[pyo3(signature = (p, seed=None))]
fn solve_wilson_instance(p: BigUint, seed: Option<u64>) -> PyResult<BigUint> {
    Ok(quadcong::solve_wilson_instance(&prime4m1(p, seed)?)
        .witness()
        .cloned()
        .expect("always satisfiable"))
}

// -- twosquares ---------------------------------------------------------------

/// The unique (s, t, theta) with p = s² + t², s > t > 0.
#[pyfunction]
#[pyo3(signature = (p, seed=None))]
fn decompose(p: BigUint, seed: Option<u64>) -> PyResult<(BigUint, BigUint, f64)> {
    let d = twosquares::decompose(&prime4m1(p, seed)?);
    Ok((d.s().clone(), d.t().clone(), d.theta()))
}

/// Exhaustive decomposition; returns (s, t, theta, visited).
#[pyfunction]
#[pyo3(signature = (p, seed=None))]
fn decompose_brute(p: BigUint, seed: Option<u64>) -> PyResult<(BigUint, BigUint, f64, u64)> {
    let (d, visited) = twosquares::decompose_brute(&prime4m1(p, seed)?);
    Ok((d.s().clone(), d.t().clone(), d.theta(), visited))
}

#[pyfunction]
fn verify_congruence_form(p: BigUint, s: BigUint, t: BigUint) -> bool {
    twosquares::verify_congruence_form(&p, &s, &t)
}

#[pyfunction]
#[pyo3(signature = (p, seed=None))]
fn uniqueness_check(p: BigUint, seed: Option<u64>) -> PyResult<u64> {
    Ok(twosquares::uniqueness_check(&prime4m1(p, seed)?))
}

// -- gausscensus --------------------------------------------------------------

/// Census rows as (re, im, norm, arg), ascending by norm then argument.
#[pyfunction]
fn gaussian_primes(x_limit: u64) -> PyResult<Vec<(i64, i64, u64, f64)>> {
    Ok(gausscensus::enumerate_gaussian_primes(x_limit)
        .map_err(value_err)?
        .iter()
        .map(|g| (g.re(), g.im(), g.norm(), g.arg()))
        .collect())
}

#[pyfunction]
fn count_pi_zi(x_limit: u64) -> PyResult<(u64, f64)> {
    let c = gausscensus::count_pi_zi(x_limit).map_err(value_err)?;
    Ok((c.count, c.ratio))
}

#[pyfunction]
fn sector_count(x_limit: u64, theta1: f64, theta2: f64) -> PyResult<u64> {
    gausscensus::sector_count(x_limit, theta1, theta2).map_err(value_err)
}

/// Angular histogram over [0, π/2); returns (bin_edges, counts).
#[pyfunction]
#[pyo3(signature = (x_limit, bins, exclude_axis=false))]
fn sector_histogram(x_limit: u64, bins: usize, exclude_axis: bool) -> PyResult<(Vec<f64>, Vec<u64>)> {
    let h = gausscensus::sector_histogram_opts(x_limit, bins, exclude_axis).map_err(value_err)?;
    Ok((h.bin_edges().to_vec(), h.counts().to_vec()))
}

// -- lattice -------------------------------------------------------------------

/// Exact disc count and the [πr²] approximation.
#[pyfunction]
fn count_disc(r: f64) -> PyResult<(u64, u64)> {
    let d = lattice::count_disc(r).map_err(value_err)?;
    Ok((d.exact, d.approx))
}

#[pyfunction]
fn count_octant(r_squared: u64) -> u64 {
    lattice::count_octant(r_squared)
}

#[pyfunction]
fn on_circle_count(r_squared: u64) -> u64 {
    lattice::on_circle_count(r_squared)
}

#[pyfunction]
fn prime_point_ratio(py: Python<'_>, r_squared: u64) -> PyResult<Py<PyDict>> {
    let r = lattice::prime_point_ratio(r_squared).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("N", r.n_prime_points)?;
    dict.set_item("N0", r.n_octant)?;
    dict.set_item("ratio", r.ratio)?;
    dict.set_item("predicted", r.predicted)?;
    dict.set_item("estimate_half_pnt", r.estimate_half_pnt)?;
    dict.set_item("estimate_log", r.estimate_log)?;
    Ok(dict.into())
}

/// Least-squares fit of c in N₀(R) ≈ πR/8 − c√R; returns (c, residuals).
#[pyfunction]
fn fit_octant_constant(r_values: Vec<u64>) -> PyResult<(f64, Vec<f64>)> {
    let fit = lattice::fit_octant_constant(&r_values).map_err(value_err)?;
    Ok((fit.c, fit.residuals))
}

// -- experiments ------------------------------------------------------------------

/// Chi-square uniformity test; returns (statistic, p_value).
#[pyfunction]
fn chi_square_uniform(samples: Vec<f64>, lo: f64, hi: f64, bins: usize) -> PyResult<(f64, f64)> {
    let r = experiments::chi_square_uniform(&samples, lo, hi, bins).map_err(value_err)?;
    Ok((r.statistic, r.p_value))
}

/// Kolmogorov–Smirnov uniformity test; returns (D, p_value).
#[pyfunction]
fn ks_uniform(samples: Vec<f64>, lo: f64, hi: f64) -> PyResult<(f64, f64)> {
    let r = experiments::ks_uniform(&samples, lo, hi).map_err(value_err)?;
    Ok((r.statistic, r.p_value))
}

/// All uniformity reports as dicts {test_name, n, statistic, p_value}.
#[pyfunction]
fn randomness_suite(py: Python<'_>, p_limit: u64) -> PyResult<Vec<Py<PyDict>>> {
    experiments::randomness_suite(p_limit)
        .map_err(value_err)?
        .into_iter()
        .map(|r| {
            let dict = PyDict::new(py);
            dict.set_item("test_name", &r.test_name)?;
            dict.set_item("n", r.sample_size)?;
            dict.set_item("statistic", r.statistic)?;
            dict.set_item("p_value", r.p_value)?;
            Ok(dict.into())
        })
        .collect()
}

#[pymodule]
fn quadlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(mod_pow, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(primes_in_class, m)?)?;
    m.add_function(wrap_pyfunction!(factorial_mod, m)?)?;
    m.add_function(wrap_pyfunction!(factorial_mod_counted, m)?)?;
    m.add_function(wrap_pyfunction!(wilson_sqrt_minus_one, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_mod_prime, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(solve_congruence, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(solve_wilson_instance, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_brute, m)?)?;
    m.add_function(wrap_pyfunction!(verify_congruence_form, m)?)?;
    m.add_function(wrap_pyfunction!(uniqueness_check, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_primes, m)?)?;
    m.add_function(wrap_pyfunction!(count_pi_zi, m)?)?;
    m.add_function(wrap_pyfunction!(sector_count, m)?)?;
    m.add_function(wrap_pyfunction!(sector_histogram, m)?)?;
    m.add_function(wrap_pyfunction!(count_disc, m)?)?;
    m.add_function(wrap_pyfunction!(count_octant, m)?)?;
    m.add_function(wrap_pyfunction!(on_circle_count, m)?)?;
    m.add_function(wrap_pyfunction!(prime_point_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(fit_octant_constant, m)?)?;
    m.add_function(wrap_pyfunction!(chi_square_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(ks_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(randomness_suite, m)?)?;
    Ok(())
}
