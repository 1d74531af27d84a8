//! Reconstruction of the minimal polynomial of C_n as a product of exact
//! integer-coefficient factors, one per Galois orbit of distinct eigenvalues.
//!
//! Each orbit's factor is the expansion of prod(x - mu_j) over the distinct
//! eigenvalue values attained on the orbit (a minimal polynomial carries each
//! eigenvalue once, so indices whose values coincide contribute one root).
//! The expansion runs at high precision and the coefficients are rounded to
//! the nearest integers; the worst rounding residual is recorded. Precision
//! escalates by doubling whenever a residual exceeds the retry threshold,
//! aborting above [`MAX_DIGITS`].
//!
//! Orbit construction already guarantees the factors are irreducible over the
//! rationals, so no general factorization pass runs here; debug builds do a
//! cheap integer-root spot check on every nonlinear factor.

use crate::error::{Error, Result};
use crate::galois::{compute_orbits, OrbitPartition};
use crate::hp::{self, HpComplex, RM};
use crate::spectrum::{stable_spectrum, PreciseSpectrum};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Starting precision in decimal digits: max(30, 2*log10(n) + 20).
pub fn default_digits(n: u64) -> u32 {
    let by_size = (2.0 * (n as f64).log10()).ceil() as u32 + 20;
    by_size.max(30)
}

/// Residual at or above this triggers a retry at doubled precision.
pub const RETRY_RESIDUAL: f64 = 1e-3;

/// Hard ceiling for precision escalation.
pub const MAX_DIGITS: u32 = 480;

/// Two eigenvalue values within this distance (at working precision) are the
/// same root.
const DEDUP_TOLERANCE: f64 = 1e-10;

/// Monic polynomial with exact integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub(crate) fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        debug_assert!(coeffs.len() >= 2, "degree must be at least 1");
        debug_assert!(coeffs.last().map(|c| c.is_one()).unwrap_or(false), "must be monic");
        IntegerPolynomial { coeffs }
    }

    /// Coefficients, constant term first; the last entry is 1.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// p(z) at working precision.
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn evaluate_hp(&self, z: &HpComplex, prec: usize) -> HpComplex {
        let mut acc = HpComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, prec);
            let c_bf = hp::with_consts(|cc| {
                astro_float::BigFloat::parse(&c.to_string(), astro_float::Radix::Dec, prec, RM, cc)
            });
            acc.re = acc.re.add(&c_bf, prec, RM);
        }
        acc
    }

    /// p(z) in plain f64 complex arithmetic (adequate for small coefficients).
    pub fn evaluate(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            let c_f64 = c.to_string().parse::<f64>().unwrap_or(f64::NAN);
            acc = acc * z + c_f64;
        }
        acc
    }

    fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Integer-root spot check: no factor of degree >= 2 may vanish at an
    /// integer point of the closed disc |z| <= 2 that holds every eigenvalue.
    #[cfg(debug_assertions)]
    fn debug_check_no_integer_roots(&self) {
        if self.degree() < 2 {
            return;
        }
        for c in -2i64..=2 {
            assert!(
                !self.eval_bigint(&BigInt::from(c)).is_zero(),
                "nonlinear factor has integer root {c}: {self}"
            );
        }
    }
}

impl PartialOrd for IntegerPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic order: by degree, then lexicographically by coefficients.
impl Ord for IntegerPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.degree();
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let show_coeff = k == 0 || !mag.is_one();
            match (show_coeff, k) {
                (true, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}x")?,
                (true, _) => write!(f, "{mag}x^{k}")?,
                (false, 1) => write!(f, "x")?,
                (false, _) => write!(f, "x^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        let _ = deg;
        Ok(())
    }
}

/// The irreducible factors of the minimal polynomial of C_n.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSet {
    n: u64,
    factors: Vec<IntegerPolynomial>,
    rounding_residual: f64,
}

impl FactorSet {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[IntegerPolynomial] {
        &self.factors
    }

    pub fn factor_count(&self) -> u64 {
        self.factors.len() as u64
    }

    /// Worst distance of any pre-rounding coefficient from its integer.
    pub fn rounding_residual(&self) -> f64 {
        self.rounding_residual
    }

    /// `{"n": n, "factors": [[c0, c1, ...], ...]}` with exact integers.
    pub fn to_json(&self) -> String {
        let mut out = format!("{{\"n\":{},\"factors\":[", self.n);
        for (i, f) in self.factors.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            for (k, c) in f.coefficients().iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&c.to_string());
            }
            out.push(']');
        }
        out.push_str("]}");
        out
    }

    /// Human-readable product, e.g. `(x - 2) * x * (x + 1) * (x^2 + 3)`.
    pub fn product_string(&self) -> String {
        self.factors
            .iter()
            .map(|f| {
                let s = f.to_string();
                if f.coefficients().iter().filter(|c| !c.is_zero()).count() > 1 {
                    format!("({s})")
                } else {
                    s
                }
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

/// Distinct eigenvalue values attained on an index set, in index order.
fn distinct_values(spec: &PreciseSpectrum, orbit: &[u64]) -> Vec<HpComplex> {
    let prec = spec.prec_bits();
    let mut kept: Vec<HpComplex> = Vec::new();
    for &j in orbit {
        let v = spec.hp_value(j as usize);
        let dup = kept
            .iter()
            .any(|u| hp::complex_diff_magnitude(u, v, prec) < DEDUP_TOLERANCE);
        if !dup {
            kept.push(v.clone());
        }
    }
    kept
}

/// Expands prod(x - root) and rounds to integers; returns the polynomial,
/// the worst rounding residual, and whether any coefficient hit an exact
/// rounding tie.
fn expand_roots(roots: &[HpComplex], prec: usize) -> Result<(IntegerPolynomial, f64, bool)> {
    let one = HpComplex { re: hp::bf_u64(1, prec), im: hp::bf_u64(0, prec) };
    let mut coeffs: Vec<HpComplex> = vec![one];
    for r in roots {
        // (c_0 + c_1 x + ...)(x - r)
        coeffs.push(coeffs.last().expect("nonempty").clone());
        for i in (1..coeffs.len() - 1).rev() {
            let shifted = coeffs[i - 1].clone();
            let scaled = r.mul(&coeffs[i], prec);
            coeffs[i] = shifted.sub(&scaled, prec);
        }
        let scaled = r.mul(&coeffs[0], prec);
        coeffs[0] = HpComplex::zero(prec).sub(&scaled, prec);
    }
    let mut worst = 0.0f64;
    let mut any_tie = false;
    let mut rounded: Vec<BigInt> = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let (int, res_re, tie) = hp::round_to_bigint(&c.re, prec);
        let res_im = hp::bf_to_f64(&c.im.abs());
        if res_re.is_finite() && res_im.is_finite() {
            worst = worst.max(res_re).max(res_im);
        } else {
            worst = f64::INFINITY;
        }
        any_tie |= tie;
        rounded.push(int);
    }
    // Leading coefficient must round to exactly 1.
    if !rounded.last().map(|c| c.is_one()).unwrap_or(false) {
        return Err(Error::Integrality { residual: worst });
    }
    Ok((IntegerPolynomial::from_coeffs(rounded), worst, any_tie))
}

fn expand_orbit(
    spec: &PreciseSpectrum,
    orbit: &[u64],
) -> Result<(IntegerPolynomial, f64, bool)> {
    let roots = distinct_values(spec, orbit);
    expand_roots(&roots, spec.prec_bits())
}

/// The integer factor for one orbit of `compute_orbits(n)` at a fixed
/// precision. Residuals at or above [`RETRY_RESIDUAL`] report as precision
/// failures so the caller can retry with more digits; a coefficient landing
/// exactly half-way between integers is a hard integrality failure.
pub fn orbit_polynomial(
    n: u64,
    orbit: &[u64],
    precision_digits: u32,
) -> Result<(IntegerPolynomial, f64)> {
    if orbit.is_empty() {
        return Err(Error::domain("orbit must be nonempty"));
    }
    if orbit.iter().any(|&j| j >= n) {
        return Err(Error::domain("orbit index out of range"));
    }
    let spec = stable_spectrum(n, precision_digits)?;
    let (poly, residual, tie) = expand_orbit(&spec, orbit)?;
    if tie {
        return Err(Error::Integrality { residual: 0.5 });
    }
    if residual.is_nan() || residual >= RETRY_RESIDUAL {
        return Err(Error::PrecisionExhausted { digits: precision_digits, residual });
    }
    Ok((poly, residual))
}

fn try_expand_all(
    partition: &OrbitPartition,
    digits: u32,
) -> Result<(Vec<IntegerPolynomial>, f64)> {
    let spec = stable_spectrum(partition.n(), digits)?;
    let mut factors = Vec::with_capacity(partition.orbits().len());
    let mut worst = 0.0f64;
    for orbit in partition.orbits() {
        let (poly, residual, tie) = expand_orbit(&spec, orbit)?;
        worst = worst.max(residual);
        // A tie at working precision reads as a precision problem here; the
        // escalation loop retries it and only gives up at the digit cap.
        if tie || worst.is_nan() || worst >= RETRY_RESIDUAL {
            return Err(Error::PrecisionExhausted { digits, residual: worst.min(0.5) });
        }
        factors.push(poly);
    }
    Ok((factors, worst))
}

/// One irreducible integer factor per Galois orbit, deduplicated and ordered
/// by (degree, coefficients). Precision starts at [`default_digits`] and
/// doubles on residual failure, hard-capped at [`MAX_DIGITS`].
pub fn minimal_polynomial_factors(n: u64) -> Result<FactorSet> {
    minimal_polynomial_factors_with_digits(n, default_digits(n))
}

/// Same as [`minimal_polynomial_factors`] with an explicit starting precision.
pub fn minimal_polynomial_factors_with_digits(n: u64, start_digits: u32) -> Result<FactorSet> {
    let partition = compute_orbits(n)?;
    let mut digits = start_digits.clamp(crate::spectrum::MIN_STABLE_DIGITS, MAX_DIGITS);
    loop {
        match try_expand_all(&partition, digits) {
            Ok((mut factors, residual)) => {
                factors.sort();
                factors.dedup();
                #[cfg(debug_assertions)]
                for f in &factors {
                    f.debug_check_no_integer_roots();
                }
                return Ok(FactorSet { n, factors, rounding_residual: residual });
            }
            Err(Error::PrecisionExhausted { residual, .. }) => {
                if digits >= MAX_DIGITS {
                    return Err(Error::PrecisionExhausted { digits, residual });
                }
                digits = (digits * 2).min(MAX_DIGITS);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Number of distinct irreducible factors of the minimal polynomial of C_n.
pub fn factor_count(n: u64) -> Result<u64> {
    Ok(minimal_polynomial_factors(n)?.factor_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn coeffs_i64(p: &IntegerPolynomial) -> Vec<i64> {
        p.coefficients().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn orbit_polynomial_septic_orbit() {
        let orbit: Vec<u64> = (1..7).collect();
        let (p, residual) = orbit_polynomial(7, &orbit, 30).unwrap();
        assert_eq!(coeffs_i64(&p), vec![1, 4, 9, 8, 4, 2, 1]);
        assert!(residual < 1e-20, "residual {residual}");
    }

    #[test]
    fn orbit_polynomial_fixed_point() {
        let (p, _) = orbit_polynomial(7, &[0], 30).unwrap();
        assert_eq!(coeffs_i64(&p), vec![-2, 1]);
        let (p, _) = orbit_polynomial(100, &[0], 30).unwrap();
        assert_eq!(coeffs_i64(&p), vec![-2, 1]);
    }

    #[test]
    fn orbit_polynomial_conjugate_pair() {
        // Roots +/- sqrt(3) i: x^2 + 3.
        let (p, _) = orbit_polynomial(6, &[1, 5], 30).unwrap();
        assert_eq!(coeffs_i64(&p), vec![3, 0, 1]);
    }

    #[test]
    fn orbit_polynomial_rejects_bad_orbit() {
        assert!(orbit_polynomial(7, &[], 30).is_err());
        assert!(orbit_polynomial(7, &[9], 30).is_err());
    }

    #[test]
    fn factors_of_six() {
        let fs = minimal_polynomial_factors(6).unwrap();
        let got: Vec<Vec<i64>> = fs.factors().iter().map(coeffs_i64).collect();
        // Orbits {0}, {3}, {2,4} (both -1), {1,5}: the duplicated -1
        // contributes a single root.
        assert_eq!(got, vec![vec![-2, 1], vec![0, 1], vec![1, 1], vec![3, 0, 1]]);
        assert!(fs.rounding_residual() < 1e-6);
    }

    #[test]
    fn factors_of_seven() {
        let fs = minimal_polynomial_factors(7).unwrap();
        let got: Vec<Vec<i64>> = fs.factors().iter().map(coeffs_i64).collect();
        assert_eq!(got, vec![vec![-2, 1], vec![1, 4, 9, 8, 4, 2, 1]]);
        assert_eq!(fs.factor_count(), 2);
    }

    #[test]
    fn factors_of_four() {
        let fs = minimal_polynomial_factors(4).unwrap();
        let got: Vec<Vec<i64>> = fs.factors().iter().map(coeffs_i64).collect();
        assert_eq!(got, vec![vec![-2, 1], vec![0, 1], vec![2, 2, 1]]);
    }

    #[test]
    fn factor_counts() {
        assert_eq!(factor_count(97).unwrap(), 2);
        assert_eq!(factor_count(90).unwrap(), 12);
        assert_eq!(factor_count(125).unwrap(), 4);
    }

    #[test]
    fn count_matches_divisors_and_primality() {
        use crate::numtheory::{divisors_u64, is_prime_u64};
        for n in 3u64..=60 {
            let fs = minimal_polynomial_factors(n).unwrap();
            assert_eq!(
                fs.factor_count(),
                divisors_u64(n).unwrap().len() as u64,
                "factor count at {n}"
            );
            assert_eq!(fs.factor_count() == 2, is_prime_u64(n), "prime iff 2 factors at {n}");
            if is_prime_u64(n) && n > 3 {
                // The non-trivial factor of a prime has degree n - 1. The lone
                // exception is n = 3, where both nontrivial eigenvalues equal
                // -1 and the second factor degenerates to x + 1.
                let nonlinear = fs.factors().iter().find(|f| f.degree() > 1).unwrap();
                assert_eq!(nonlinear.degree() as u64, n - 1, "degree at {n}");
            }
            if n == 3 {
                assert_eq!(fs.factors()[1].coefficients(), &[BigInt::from(1), BigInt::from(1)]);
            }
            // Degrees sum to the number of distinct eigenvalues: n - 1 when
            // 3 | n (indices n/3 and 2n/3 share the value -1), else n.
            let total: usize = fs.factors().iter().map(|f| f.degree()).sum();
            let distinct = if n % 3 == 0 { n - 1 } else { n };
            assert_eq!(total as u64, distinct, "degree sum at {n}");
        }
    }

    #[test]
    fn factors_vanish_on_their_orbits() {
        for n in [6u64, 7, 12, 29, 30] {
            let fs = minimal_polynomial_factors(n).unwrap();
            let spec = stable_spectrum(n, 2 * default_digits(n)).unwrap();
            let prec = spec.prec_bits();
            for j in 0..n {
                let z = spec.hp_value(j as usize);
                let vanishes = fs.factors().iter().any(|f| {
                    let v = f.evaluate_hp(z, prec);
                    hp::bf_to_f64(&v.norm_sqr(prec)).sqrt() < 1e-8
                });
                assert!(vanishes, "no factor vanishes at j={j}, n={n}");
            }
        }
    }

    #[test]
    fn reexpansion_at_double_precision_is_identical() {
        for n in [7u64, 12, 45, 97] {
            let partition = compute_orbits(n).unwrap();
            for orbit in partition.orbits() {
                let (a, _) = orbit_polynomial(n, orbit, 40).unwrap();
                let (b, _) = orbit_polynomial(n, orbit, 80).unwrap();
                assert_eq!(a, b, "coefficients differ at n={n}");
            }
        }
    }

    #[test]
    fn display_formatting() {
        assert_eq!(poly(&[-2, 1]).to_string(), "x - 2");
        assert_eq!(poly(&[0, 1]).to_string(), "x");
        assert_eq!(poly(&[3, 0, 1]).to_string(), "x^2 + 3");
        assert_eq!(poly(&[1, 4, 9, 8, 4, 2, 1]).to_string(), "x^6 + 2x^5 + 4x^4 + 8x^3 + 9x^2 + 4x + 1");
        assert_eq!(poly(&[2, 2, 1]).to_string(), "x^2 + 2x + 2");
        assert_eq!(poly(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
    }

    #[test]
    fn json_and_product_shape() {
        let fs = minimal_polynomial_factors(6).unwrap();
        assert_eq!(
            fs.to_json(),
            "{\"n\":6,\"factors\":[[-2,1],[0,1],[1,1],[3,0,1]]}"
        );
        assert_eq!(fs.product_string(), "(x - 2) * x * (x + 1) * (x^2 + 3)");
        let parsed: serde_json::Value = serde_json::from_str(&fs.to_json()).unwrap();
        assert_eq!(parsed["factors"][3][0], serde_json::json!(3));
    }

    #[test]
    fn ordering_is_degree_then_lex() {
        let mut v = [poly(&[3, 0, 1]), poly(&[1, 1]), poly(&[-2, 1]), poly(&[0, 1])];
        v.sort();
        let got: Vec<Vec<i64>> = v.iter().map(coeffs_i64).collect();
        assert_eq!(got, vec![vec![-2, 1], vec![0, 1], vec![1, 1], vec![3, 0, 1]]);
    }
}
