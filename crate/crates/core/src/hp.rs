//! High-precision real/complex helpers shared by the stable spectrum path and
//! the minimal-polynomial reconstruction.
//!
//! Precision is requested in decimal digits at the public surfaces and mapped
//! to a binary mantissa length with guard bits here. A thread-local constants
//! cache keeps pi evaluations cheap.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use std::cell::RefCell;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Binary precision for a decimal-digit request, with guard bits for the
/// accumulation error of long product expansions.
pub(crate) fn bits_for_digits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

pub(crate) fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

pub(crate) fn pi(prec: usize) -> BigFloat {
    with_consts(|cc| cc.pi(prec, RM))
}

pub(crate) fn bf_u64(v: u64, prec: usize) -> BigFloat {
    BigFloat::from_u64(v, prec)
}

pub(crate) fn bf_to_f64(x: &BigFloat) -> f64 {
    // astro-float's to_f64 lives behind a conversion; format through parts to
    // avoid precision churn on the common path.
    let mut y = x.clone();
    if y.set_precision(64, RM).is_err() {
        return f64::NAN;
    }
    let (words, _, sign, exp, _) = match y.as_raw_parts() {
        Some(parts) => parts,
        None => return if x.is_zero() { 0.0 } else { f64::NAN },
    };
    if words.is_empty() {
        return 0.0;
    }
    let top = words[words.len() - 1];
    let total_bits = words.len() as i64 * 64;
    let mut v = top as f64;
    if words.len() > 1 {
        v += words[words.len() - 2] as f64 / 2f64.powi(64);
    }
    // value = mantissa * 2^(exp - total_bits); top word carries the leading bit
    let scale = exp as i64 - total_bits + (words.len() as i64 - 1) * 64;
    let mut out = v * 2f64.powi(scale as i32);
    if sign == Sign::Neg {
        out = -out;
    }
    out
}

/// Converts an integer-valued BigFloat into an exact BigInt.
pub(crate) fn integer_bigfloat_to_bigint(x: &BigFloat) -> BigInt {
    if x.is_zero() {
        return BigInt::from(0);
    }
    let (words, _nbits, sign, exp, _) = x.as_raw_parts().expect("finite value");
    // value = mantissa * 2^(exp - mantissa_bit_len) with the mantissa stored
    // little-endian and normalized to the top bit of the last word.
    let mant = BigUint::from_slice(
        &words.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect::<Vec<u32>>(),
    );
    let total_bits = words.len() as i64 * 64;
    let shift = exp as i64 - total_bits;
    let mag = if shift >= 0 { mant << shift as u64 } else { mant >> (-shift) as u64 };
    BigInt::from_biguint(if sign == Sign::Neg { IntSign::Minus } else { IntSign::Plus }, mag)
}

/// Rounds to the nearest integer. Returns the integer, the distance to it,
/// and whether that distance is an exact half (an unresolvable tie).
pub(crate) fn round_to_bigint(x: &BigFloat, prec: usize) -> (BigInt, f64, bool) {
    let rounded = x.round(0, RM);
    let residual = x.sub(&rounded, prec, RM).abs();
    let half = {
        let one = bf_u64(1, prec);
        one.div(&bf_u64(2, prec), prec, RM)
    };
    let tie = matches!(residual.cmp(&half), Some(c) if c >= 0);
    (integer_bigfloat_to_bigint(&rounded), bf_to_f64(&residual), tie)
}

/// Complex number over BigFloat components.
#[derive(Debug, Clone)]
pub(crate) struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl HpComplex {
    pub fn zero(prec: usize) -> Self {
        HpComplex { re: bf_u64(0, prec), im: bf_u64(0, prec) }
    }

    pub fn add(&self, rhs: &Self, prec: usize) -> Self {
        HpComplex { re: self.re.add(&rhs.re, prec, RM), im: self.im.add(&rhs.im, prec, RM) }
    }

    pub fn sub(&self, rhs: &Self, prec: usize) -> Self {
        HpComplex { re: self.re.sub(&rhs.re, prec, RM), im: self.im.sub(&rhs.im, prec, RM) }
    }

    pub fn mul(&self, rhs: &Self, prec: usize) -> Self {
        let rr = self.re.mul(&rhs.re, prec, RM);
        let ii = self.im.mul(&rhs.im, prec, RM);
        let ri = self.re.mul(&rhs.im, prec, RM);
        let ir = self.im.mul(&rhs.re, prec, RM);
        HpComplex { re: rr.sub(&ii, prec, RM), im: ri.add(&ir, prec, RM) }
    }

    /// Squared modulus as a BigFloat.
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn norm_sqr(&self, prec: usize) -> BigFloat {
        let rr = self.re.mul(&self.re, prec, RM);
        let ii = self.im.mul(&self.im, prec, RM);
        rr.add(&ii, prec, RM)
    }

    pub fn to_f64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(bf_to_f64(&self.re), bf_to_f64(&self.im))
    }
}

/// max(|re|, |im|) of the difference, as an f64 upper estimate.
pub(crate) fn complex_diff_magnitude(a: &HpComplex, b: &HpComplex, prec: usize) -> f64 {
    let dr = bf_to_f64(&a.re.sub(&b.re, prec, RM).abs());
    let di = bf_to_f64(&a.im.sub(&b.im, prec, RM).abs());
    let m = dr.max(di);
    // hypot-style bound: |z| <= sqrt(2) * max component
    m * std::f64::consts::SQRT_2
}
