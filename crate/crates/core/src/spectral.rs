//! The spectral regularity statistic S(n), phase-space classification points,
//! and the coefficient series extracted for plot data.
//!
//! S(n) = (1/n) * sum_{j=1}^{n-1} |(mu_j - mean) / (2 * sigma)| + phi(n)/n,
//! where mean and sigma are taken over the nontrivial eigenvalues (j >= 1,
//! matching the summation limits) and sigma is the population value
//! sqrt(mean |mu_j - mean|^2). The only input with sigma = 0 is n = 3 (both
//! nontrivial eigenvalues equal -1); that case returns phi(n)/n with the sum
//! term defined as zero.

use crate::error::Result;
use crate::minpoly;
use crate::numtheory::euler_totient_u64;
use crate::spectrum::full_spectrum;
use num_bigint::BigInt;
use serde::Serialize;
use std::io::Write;

/// sigma below this is the degenerate all-equal case.
const SIGMA_EPSILON: f64 = 1e-12;

/// One integer's coordinates in the factor-count / spectral-value plane.
///
/// Primality is equivalent to factor_count = 2, so the vertical line at 2.5
/// separates the classes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhasePoint {
    pub n: u64,
    pub factor_count: u64,
    pub spectral_value: f64,
    pub is_prime: bool,
}

/// The classification boundary on the factor-count axis.
pub const PHASE_BOUNDARY: f64 = 2.5;

/// Evaluates S(n) from the double-precision spectrum.
pub fn spectral_property(n: u64) -> Result<f64> {
    let spec = full_spectrum(n)?;
    let phi_term = euler_totient_u64(n)? as f64 / n as f64;
    let count = (n - 1) as f64;
    let mean = spec.iter().skip(1).sum::<num_complex::Complex64>() / count;
    let variance = spec.iter().skip(1).map(|v| (v - mean).norm_sqr()).sum::<f64>() / count;
    let sigma = variance.sqrt();
    if sigma < SIGMA_EPSILON {
        return Ok(phi_term);
    }
    let sum_term =
        spec.iter().skip(1).map(|v| (v - mean).norm() / (2.0 * sigma)).sum::<f64>() / n as f64;
    Ok(sum_term + phi_term)
}

/// Pairs the factor count with S(n); the boundary classification equals the
/// primality verdict.
pub fn phase_point(n: u64) -> Result<PhasePoint> {
    let factor_count = minpoly::factor_count(n)?;
    let spectral_value = spectral_property(n)?;
    // Independent route for the verdict: exhaustive divisor scan.
    let is_prime = crate::baselines::trial_division(&n.into())?;
    let point = PhasePoint { n, factor_count, spectral_value, is_prime };
    debug_assert_eq!(
        point.is_prime,
        point.factor_count == 2,
        "classification disagrees with primality at n={n}"
    );
    Ok(point)
}

/// Coefficients (constant term first) of the highest-degree factor of the
/// minimal polynomial, for the coefficient-pattern plots.
pub fn coefficient_series(n: u64) -> Result<Vec<BigInt>> {
    let factors = minpoly::minimal_polynomial_factors(n)?;
    let largest = factors
        .factors()
        .iter()
        .max_by_key(|f| f.degree())
        .expect("factor set is nonempty");
    Ok(largest.coefficients().to_vec())
}

/// CSV rows `n,factor_count,spectral_value,is_prime` for a range of n.
pub fn write_phase_csv<W: Write>(mut w: W, points: &[PhasePoint]) -> std::io::Result<()> {
    writeln!(w, "n,factor_count,spectral_value,is_prime")?;
    for p in points {
        writeln!(w, "{},{},{},{}", p.n, p.factor_count, p.spectral_value, p.is_prime)?;
    }
    Ok(())
}

/// CSV rows `n,index,coefficient` for one or more coefficient series.
pub fn write_coefficient_csv<W: Write>(
    mut w: W,
    series: &[(u64, Vec<BigInt>)],
) -> std::io::Result<()> {
    writeln!(w, "n,index,coefficient")?;
    for (n, coeffs) in series {
        for (i, c) in coeffs.iter().enumerate() {
            writeln!(w, "{n},{i},{c}")?;
        }
    }
    Ok(())
}
