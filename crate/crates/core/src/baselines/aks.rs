//! The AKS deterministic primality test.
//!
//! Steps: perfect-power rejection; search for the smallest r with
//! ord_r(n) > log2(n)^2; gcd screening of a <= r; then the polynomial
//! congruences (x + a)^n = x^n + a mod (x^r - 1, n) for
//! a = 1..floor(sqrt(phi(r)) * log2(n)). Coefficient vectors are dense mod n;
//! inputs in the word range go through the NTT-backed cyclic multiplier.

use super::ntt::CyclicMul;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::numtheory::{euler_totient_u64, gcd_u64, is_perfect_power};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Why AKS reached its verdict; the dispatcher maps this onto evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum AksOutcome {
    Prime,
    PerfectPower(BigUint, u32),
    SharedFactor(BigUint),
    CongruenceFailed,
}

pub fn aks_is_prime(n: &BigUint) -> Result<bool> {
    Ok(aks_with_outcome(n, &Budget::unlimited())?.0)
}

pub fn aks_is_prime_budgeted(n: &BigUint, budget: &Budget) -> Result<bool> {
    Ok(aks_with_outcome(n, budget)?.0)
}

fn log2_big(n: &BigUint) -> f64 {
    n.to_f64().map(f64::log2).unwrap_or(f64::MAX)
}

fn order_u64(a: u64, r: u64) -> u64 {
    debug_assert!(gcd_u64(a % r, r) == 1);
    let a = a % r;
    let mut acc = a;
    let mut k = 1u64;
    while acc != 1 {
        acc = acc * a % r;
        k += 1;
    }
    k
}

pub(crate) fn aks_with_outcome(n: &BigUint, budget: &Budget) -> Result<(bool, AksOutcome)> {
    let two = BigUint::from(2u32);
    if n < &two {
        return Err(Error::domain(format!("aks requires n >= 2, got {n}")));
    }
    if *n == two || *n == BigUint::from(3u32) {
        return Ok((true, AksOutcome::Prime));
    }
    if n.is_even() {
        return Ok((false, AksOutcome::SharedFactor(two)));
    }
    if let Some((b, k)) = is_perfect_power(n) {
        return Ok((false, AksOutcome::PerfectPower(b, k)));
    }

    let l2 = log2_big(n);
    let threshold = l2 * l2;

    // Smallest r with ord_r(n) above the threshold. Values of r sharing a
    // nontrivial factor with n expose n as composite on the spot.
    let mut r = 2u64;
    let chosen_r = loop {
        budget.check("aks parameter search")?;
        let n_mod_r = (n % BigUint::from(r)).to_u64().expect("residue fits");
        let g = if n_mod_r == 0 { r } else { gcd_u64(r, n_mod_r) };
        if g > 1 {
            // g divides both r and n; composite unless that factor is n itself.
            if BigUint::from(g) != *n {
                return Ok((false, AksOutcome::SharedFactor(BigUint::from(g))));
            }
        } else if order_u64(n_mod_r, r) as f64 > threshold {
            break r;
        }
        r += 1;
    };

    // gcd screening for a <= min(r, n - 1).
    let screen_max = BigUint::from(chosen_r).min(n - BigUint::one());
    let screen_max = screen_max.to_u64().expect("screen bound fits");
    for a in 2..=screen_max {
        let n_mod_a = (n % BigUint::from(a)).to_u64().expect("residue fits");
        let g = if n_mod_a == 0 { a } else { gcd_u64(a, n_mod_a) };
        if g > 1 && BigUint::from(g) != *n {
            return Ok((false, AksOutcome::SharedFactor(BigUint::from(g))));
        }
    }
    if n <= &BigUint::from(chosen_r) {
        return Ok((true, AksOutcome::Prime));
    }

    let phi_r = euler_totient_u64(chosen_r)?;
    let a_max = ((phi_r as f64).sqrt() * l2).floor() as u64;

    let holds = if let Some(n_small) = n.to_u64() {
        congruences_hold_u64(n_small, chosen_r, a_max, budget)?
    } else {
        congruences_hold_big(n, chosen_r, a_max, budget)?
    };
    if holds {
        Ok((true, AksOutcome::Prime))
    } else {
        Ok((false, AksOutcome::CongruenceFailed))
    }
}

/// Checks (x + a)^n = x^(n mod r) + a in (Z/nZ)[x]/(x^r - 1) for all a up to
/// a_max, with machine-word coefficients.
fn congruences_hold_u64(n: u64, r: u64, a_max: u64, budget: &Budget) -> Result<bool> {
    let r_us = r as usize;
    let cm = CyclicMul::new(r_us, n);
    let bits = 64 - n.leading_zeros();
    for a in 1..=a_max {
        budget.check("aks congruence")?;
        let a_red = a % n;
        // Left-to-right exponentiation of (x + a).
        let mut acc = vec![0u64; r_us];
        acc[0] = a_red;
        acc[1] = (acc[1] + 1) % n;
        for bit in (0..bits - 1).rev() {
            acc = cm.square(&acc);
            if (n >> bit) & 1 == 1 {
                acc = mul_by_x_plus_a(&acc, a_red, n);
            }
        }
        // Target: x^(n mod r) + a.
        let mut target = vec![0u64; r_us];
        target[(n % r) as usize] = 1;
        target[0] = (target[0] + a_red) % n;
        if acc != target {
            return Ok(false);
        }
    }
    Ok(true)
}

fn mul_by_x_plus_a(c: &[u64], a: u64, n: u64) -> Vec<u64> {
    let r = c.len();
    let mut out = vec![0u64; r];
    for j in 0..r {
        let prev = c[(j + r - 1) % r];
        out[j] = ((u128::from(a) * u128::from(c[j]) + u128::from(prev)) % u128::from(n)) as u64;
    }
    out
}

/// Arbitrary-precision fallback for n past the word range: dense schoolbook
/// squaring with reduction mod n per coefficient. Correct but slow; budgets
/// keep it from running away inside the benchmark harness.
fn congruences_hold_big(n: &BigUint, r: u64, a_max: u64, budget: &Budget) -> Result<bool> {
    let r_us = r as usize;
    let bits = n.bits();
    for a in 1..=a_max {
        let a_big = BigUint::from(a) % n;
        let mut acc: Vec<BigUint> = vec![BigUint::zero(); r_us];
        acc[0] = a_big.clone();
        acc[1] += BigUint::one();
        for bit in (0..bits - 1).rev() {
            budget.check("aks congruence")?;
            acc = big_cyclic_square(&acc, n);
            if n.bit(bit) {
                acc = big_mul_by_x_plus_a(&acc, &a_big, n);
            }
        }
        let mut target = vec![BigUint::zero(); r_us];
        let shift = (n % BigUint::from(r)).to_u64().expect("fits") as usize;
        target[shift] = BigUint::one();
        target[0] = (&target[0] + &a_big) % n;
        if acc != target {
            return Ok(false);
        }
    }
    Ok(true)
}

fn big_cyclic_square(c: &[BigUint], n: &BigUint) -> Vec<BigUint> {
    let r = c.len();
    let mut out = vec![BigUint::zero(); r];
    for i in 0..r {
        if c[i].is_zero() {
            continue;
        }
        for j in 0..r {
            let k = if i + j >= r { i + j - r } else { i + j };
            out[k] += &c[i] * &c[j];
        }
    }
    out.into_iter().map(|v| v % n).collect()
}

fn big_mul_by_x_plus_a(c: &[BigUint], a: &BigUint, n: &BigUint) -> Vec<BigUint> {
    let r = c.len();
    (0..r)
        .map(|j| {
            let prev = &c[if j == 0 { r - 1 } else { j - 1 }];
            (&c[j] * a + prev) % n
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aks(n: u64) -> bool {
        aks_is_prime(&BigUint::from(n)).unwrap()
    }

    #[test]
    fn small_known_values() {
        assert!(aks(31));
        assert!(!aks(91)); // 7 * 13
        assert!(aks(2));
        assert!(aks(3));
        assert!(!aks(4));
        assert!(aks(5));
    }

    #[test]
    fn known_prime_7919() {
        // Prime by trial division at test time.
        let n = 7919u64;
        assert!((2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d)));
        assert!(aks(n));
    }

    #[test]
    fn perfect_powers_rejected() {
        // Even powers fall to the parity screen; odd ones reach the
        // perfect-power check.
        let res = aks_with_outcome(&BigUint::from(1024u32), &Budget::unlimited()).unwrap();
        assert!(!res.0);
        let res = aks_with_outcome(&BigUint::from(3125u32), &Budget::unlimited()).unwrap();
        assert!(!res.0, "5^5 must be composite");
        assert!(matches!(res.1, AksOutcome::PerfectPower(_, 5)));
    }

    #[test]
    fn agreement_with_trial_division_to_2000() {
        for n in 2u64..=2000 {
            let brute = (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(aks(n), brute, "aks mismatch at {n}");
        }
    }

    #[test]
    fn carmichael_numbers_rejected() {
        for n in [561u64, 1105, 1729, 2821, 6601] {
            assert!(!aks(n), "aks accepted Carmichael number {n}");
        }
    }

    #[test]
    fn domain_error_below_two() {
        assert!(aks_is_prime(&BigUint::from(1u32)).is_err());
    }
}
