//! Eigenvalues of the composite circulant C_n = W_n + W_n^2, computed directly
//! from roots of unity: mu_j = lambda_j + lambda_j^2 with
//! lambda_j = e^(2*pi*i*j/n). The matrix itself is never materialized.
//!
//! Two routes are provided: a double-precision evaluation ([`full_spectrum`])
//! and a high-precision variant ([`stable_spectrum`]) that computes
//! theta_j = 2*pi*j/n at the requested number of decimal digits, evaluates
//! lambda_j = cos(theta) + i*sin(theta), and obtains lambda_j^2 through the
//! double-angle identities rather than by complex multiplication.

use crate::error::{Error, Result};
use crate::hp::{self, HpComplex, RM};
use astro_float::BigFloat;
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;

/// Decimal digits carried by the double-precision route.
pub const DOUBLE_PRECISION_DIGITS: u32 = 15;

/// Minimum digits accepted by the stable route.
pub const MIN_STABLE_DIGITS: u32 = 15;

/// The n eigenvalues of C_n at double precision, indexed by j = 0..n-1.
///
/// Invariants: values[0] = 2 exactly, values[j] and values[n-j] are complex
/// conjugates, and the full sum (the trace of C_n) vanishes.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    n: u64,
    values: Vec<(f64, f64)>,
    precision_digits: u32,
}

impl Spectrum {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, j: usize) -> Complex64 {
        let (re, im) = self.values[j];
        Complex64::new(re, im)
    }

    pub fn iter(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.values.iter().map(|&(re, im)| Complex64::new(re, im))
    }

    pub fn sum(&self) -> Complex64 {
        self.iter().sum()
    }

    pub fn sum_of_squares(&self) -> Complex64 {
        self.iter().map(|v| v * v).sum()
    }

    /// Worst-case |values[j] - conj(values[n-j])| over 1 <= j <= n-1.
    pub fn conjugate_residual(&self) -> f64 {
        let n = self.values.len();
        (1..n)
            .map(|j| (self.value(j) - self.value(n - j).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// CSV rows `j,re,im`, one per eigenvalue (with a header line).
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "j,re,im")?;
        for (j, &(re, im)) in self.values.iter().enumerate() {
            writeln!(w, "{j},{re},{im}")?;
        }
        Ok(())
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!("spectrum requires n >= 3, got {n}")));
    }
    Ok(())
}

fn eigenvalue_unchecked(n: u64, j: u64) -> Complex64 {
    if j == 0 {
        return Complex64::new(2.0, 0.0);
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    // theta in [0, 2*pi); the doubled angle is reduced before evaluation.
    let theta = two_pi * (j as f64) / (n as f64);
    let theta2 = {
        let t = 2.0 * theta;
        if t >= two_pi {
            t - two_pi
        } else {
            t
        }
    };
    Complex64::new(theta.cos() + theta2.cos(), theta.sin() + theta2.sin())
}

/// mu_j = e^(2*pi*i*j/n) + e^(4*pi*i*j/n) at double precision.
pub fn eigenvalue(n: u64, j: u64) -> Result<Complex64> {
    check_n(n)?;
    if j >= n {
        return Err(Error::domain(format!("eigenvalue index {j} out of range for n = {n}")));
    }
    Ok(eigenvalue_unchecked(n, j))
}

/// All n eigenvalues at double precision; O(n) trigonometric evaluations.
pub fn full_spectrum(n: u64) -> Result<Spectrum> {
    check_n(n)?;
    let values = (0..n).map(|j| {
        let v = eigenvalue_unchecked(n, j);
        (v.re, v.im)
    });
    Ok(Spectrum { n, values: values.collect(), precision_digits: DOUBLE_PRECISION_DIGITS })
}

/// High-precision spectrum; same mathematical values as [`full_spectrum`].
#[derive(Debug, Clone)]
pub struct PreciseSpectrum {
    n: u64,
    values: Vec<HpComplex>,
    precision_digits: u32,
    prec: usize,
}

impl PreciseSpectrum {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }

    pub(crate) fn prec_bits(&self) -> usize {
        self.prec
    }

    pub(crate) fn hp_value(&self, j: usize) -> &HpComplex {
        &self.values[j]
    }

    pub fn value(&self, j: usize) -> Complex64 {
        self.values[j].to_f64()
    }

    pub fn to_spectrum(&self) -> Spectrum {
        Spectrum {
            n: self.n,
            values: self.values.iter().map(|v| (hp::bf_to_f64(&v.re), hp::bf_to_f64(&v.im))).collect(),
            precision_digits: self.precision_digits,
        }
    }

    /// Worst |values[j] - conj(values[n-j])| measured at working precision.
    pub fn conjugate_residual(&self) -> f64 {
        let n = self.values.len();
        let mut worst: f64 = 0.0;
        for j in 1..n {
            let a = &self.values[j];
            let b = &self.values[n - j];
            let dr = hp::bf_to_f64(&a.re.sub(&b.re, self.prec, RM).abs());
            let di = hp::bf_to_f64(&a.im.add(&b.im, self.prec, RM).abs());
            worst = worst.max(dr).max(di);
        }
        worst
    }

    /// |sum of eigenvalues| (the trace residual) as an f64 estimate.
    pub fn trace_residual(&self) -> f64 {
        let mut acc = HpComplex::zero(self.prec);
        for v in &self.values {
            acc = acc.add(v, self.prec);
        }
        hp::bf_to_f64(&acc.re.abs()).max(hp::bf_to_f64(&acc.im.abs()))
    }
}

/// Stable eigenvalue computation at `precision_digits` decimal digits.
///
/// theta_j = 2*pi*j/n is formed at working precision (j < n keeps it inside
/// [0, 2*pi), so no large-argument reduction is ever needed), lambda_j comes
/// from cos/sin, and lambda_j^2 from cos(2t) = 2cos^2(t) - 1 and
/// sin(2t) = 2sin(t)cos(t).
pub fn stable_spectrum(n: u64, precision_digits: u32) -> Result<PreciseSpectrum> {
    check_n(n)?;
    if precision_digits < MIN_STABLE_DIGITS {
        return Err(Error::domain(format!(
            "stable spectrum requires at least {MIN_STABLE_DIGITS} digits, got {precision_digits}"
        )));
    }
    let prec = hp::bits_for_digits(precision_digits);
    let two_pi = {
        let pi = hp::pi(prec);
        pi.add(&pi, prec, RM)
    };
    let one = hp::bf_u64(1, prec);
    let n_bf = hp::bf_u64(n, prec);
    let mut values = Vec::with_capacity(n as usize);
    values.push(HpComplex { re: hp::bf_u64(2, prec), im: hp::bf_u64(0, prec) });
    for j in 1..n {
        let theta = two_pi.mul(&hp::bf_u64(j, prec), prec, RM).div(&n_bf, prec, RM);
        let (c, s) = hp::with_consts(|cc| {
            (theta.cos(prec, RM, cc), theta.sin(prec, RM, cc))
        });
        let c2 = {
            let sq = c.mul(&c, prec, RM);
            sq.add(&sq, prec, RM).sub(&one, prec, RM)
        };
        let s2 = {
            let sc = s.mul(&c, prec, RM);
            sc.add(&sc, prec, RM)
        };
        values.push(HpComplex { re: c.add(&c2, prec, RM), im: s.add(&s2, prec, RM) });
    }
    Ok(PreciseSpectrum { n, values, precision_digits, prec })
}

/// True when |x| < 10^exp10 (used to assert residuals at elevated precision).
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn bf_below_pow10(x: &BigFloat, exp10: i32) -> bool {
    if x.is_zero() {
        return true;
    }
    // 10^exp10 = 2^(exp10 * log2(10)); compare against the binary exponent.
    let bound_exp2 = (exp10 as f64 * std::f64::consts::LOG2_10).floor() as i64;
    match x.exponent() {
        Some(e) => (e as i64) <= bound_exp2,
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAU: f64 = std::f64::consts::TAU;

    #[test]
    fn eigenvalue_at_zero_is_two_exactly() {
        for n in [3u64, 4, 7, 100] {
            let v = eigenvalue(n, 0).unwrap();
            assert_eq!(v, Complex64::new(2.0, 0.0));
        }
    }

    #[test]
    fn eigenvalue_six_three_is_zero() {
        // mu_3 for n = 6: e^(i*pi) + e^(2*i*pi) = -1 + 1 = 0
        let v = eigenvalue(6, 3).unwrap();
        assert!(v.norm() < 1e-15, "expected 0, got {v}");
    }

    #[test]
    fn eigenvalue_seven_one_matches_direct_evaluation() {
        // Direct high-precision evaluation of cos/sin at 2*pi/7 and 4*pi/7.
        let v = eigenvalue(7, 1).unwrap();
        let want = Complex64::new(
            (TAU / 7.0).cos() + (2.0 * TAU / 7.0).cos(),
            (TAU / 7.0).sin() + (2.0 * TAU / 7.0).sin(),
        );
        assert!((v - want).norm() < 1e-14);
        assert!((v.re - 0.40096886790241915).abs() < 1e-12);
        assert!((v.im - 1.7567593946498393).abs() < 1e-12);
    }

    #[test]
    fn eigenvalue_domain_errors() {
        assert!(eigenvalue(2, 0).is_err());
        assert!(eigenvalue(7, 7).is_err());
    }

    #[test]
    fn full_spectrum_n6_known_values() {
        let s = full_spectrum(6).unwrap();
        let sqrt3 = 3f64.sqrt();
        let want = [
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, sqrt3),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -sqrt3),
        ];
        for (j, w) in want.iter().enumerate() {
            assert!((s.value(j) - w).norm() < 1e-14, "mismatch at j={j}: {}", s.value(j));
        }
    }

    #[test]
    fn full_spectrum_n4_and_n3() {
        let s4 = full_spectrum(4).unwrap();
        let want4 =
            [Complex64::new(2.0, 0.0), Complex64::new(-1.0, 1.0), Complex64::new(0.0, 0.0), Complex64::new(-1.0, -1.0)];
        for (j, w) in want4.iter().enumerate() {
            assert!((s4.value(j) - w).norm() < 1e-14);
        }
        let s3 = full_spectrum(3).unwrap();
        assert!((s3.value(0) - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert!((s3.value(1) - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        assert!((s3.value(2) - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn spectrum_sums_vanish_for_small_n() {
        for n in 5u64..=120 {
            let s = full_spectrum(n).unwrap();
            assert!(s.sum().norm() < 1e-10, "trace at n={n}: {}", s.sum());
            assert!(s.sum_of_squares().norm() < 1e-10, "sum of squares at n={n}");
            assert!(s.conjugate_residual() < 1e-12, "conjugate symmetry at n={n}");
        }
    }

    #[test]
    fn stable_spectrum_matches_double_route() {
        let hp_s = stable_spectrum(97, 30).unwrap();
        let f64_s = full_spectrum(97).unwrap();
        for j in 0..97 {
            let d = (hp_s.value(j) - f64_s.value(j)).norm();
            assert!(d < 1e-13, "stable/direct mismatch at j={j}: {d}");
        }
    }

    #[test]
    fn stable_spectrum_exact_algebraic_value() {
        // mu_2 for n = 6 equals -1; check to 30 digits.
        let s = stable_spectrum(6, 30).unwrap();
        let v = s.hp_value(2);
        let prec = s.prec_bits();
        let err = v.re.add(&hp::bf_u64(1, prec), prec, RM).abs();
        assert!(bf_below_pow10(&err, -30), "mu_2 + 1 not below 1e-30");
        assert!(bf_below_pow10(&v.im.abs(), -30));
    }

    #[test]
    fn stable_spectrum_conjugate_residual_tiny() {
        let s = stable_spectrum(7, 30).unwrap();
        assert!(s.conjugate_residual() < 1e-28, "residual {}", s.conjugate_residual());
        assert!(s.trace_residual() < 1e-28);
    }

    #[test]
    fn stable_spectrum_rejects_low_precision() {
        assert!(stable_spectrum(7, 10).is_err());
        assert!(stable_spectrum(2, 30).is_err());
    }

    #[test]
    fn csv_roundtrip() {
        let s = full_spectrum(7).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("j,re,im"));
        for (j, line) in lines.enumerate() {
            let mut parts = line.split(',');
            assert_eq!(parts.next().unwrap().parse::<usize>().unwrap(), j);
            let re: f64 = parts.next().unwrap().parse().unwrap();
            let im: f64 = parts.next().unwrap().parse().unwrap();
            assert_eq!(Complex64::new(re, im), s.value(j), "roundtrip at j={j}");
        }
    }
}
