//! Exact integer arithmetic underpinning every other module: gcd,
//! factorization, divisor enumeration, Euler's totient, perfect-power and
//! multiplicative-order checks.
//!
//! All public entry points take arbitrary-precision integers. Inputs that fit
//! in a machine word are routed to `u64` fast paths; the desk-scale contract
//! for factorization is n <= 10^15 (trial division by primes up to 10^6
//! followed by Brent's cycle method with a fixed, deterministic parameter
//! sequence, so the same input always factors the same way).

use crate::budget::{Budget, CHECK_INTERVAL};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

/// Trial-division bound used before switching to the cycle method.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// A multiset of (prime, exponent) pairs with primes strictly ascending.
///
/// Invariants: every exponent is >= 1, every listed prime is prime, and the
/// product of `prime^exponent` reconstructs the original integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    fn new(n: BigUint, mut factors: Vec<(BigUint, u32)>) -> Self {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let f = Factorization { n, factors };
        debug_assert_eq!(f.reconstruct(), f.n, "factor product must reconstruct n");
        debug_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
        f
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// Number of distinct prime divisors.
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    /// True when n = p^1 for a single prime p.
    pub fn is_single_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// d(n) computed as the product of (e_i + 1).
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|(_, e)| u64::from(*e) + 1).product()
    }

    pub fn reconstruct(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (p, e) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Greatest common divisor; gcd(0, 0) = 0.
pub fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}

/// Binary gcd on machine words, used by the orbit-enumeration hot loops.
pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn sieve_table(limit: usize) -> Vec<bool> {
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    if limit >= 1 {
        is_prime[1] = false;
    }
    let mut p = 2usize;
    while p * p <= limit {
        if is_prime[p] {
            let mut m = p * p;
            while m <= limit {
                is_prime[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    is_prime
}

/// Primes up to [`TRIAL_DIVISION_BOUND`], computed once.
pub(crate) fn trial_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let table = sieve_table(TRIAL_DIVISION_BOUND as usize);
        table
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| if p { Some(i as u32) } else { None })
            .collect()
    })
}

pub(crate) fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin on machine words. The witness set proves
/// primality for every n below 3.3 * 10^24, which covers the full u64 range.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding method with a fixed parameter schedule: the c in
/// x -> x^2 + c steps through 1, 2, 3, ... so the factor found for a given
/// n never changes between runs.
fn brent_rho_u64(n: u64, budget: &Budget) -> Result<u64> {
    debug_assert!(n > 1 && !is_prime_u64(n) && n % 2 == 1);
    for c in 1u64.. {
        budget.check("factorization")?;
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
            count += 1;
            if count.is_multiple_of(CHECK_INTERVAL) {
                budget.check("factorization")?;
            }
        }
        if d != n {
            return Ok(d);
        }
    }
    unreachable!()
}

fn factor_u64_into(mut m: u64, out: &mut Vec<u64>, budget: &Budget) -> Result<()> {
    // m has no prime factor <= TRIAL_DIVISION_BOUND here.
    let mut stack = vec![];
    if m > 1 {
        stack.push(m);
    }
    while let Some(v) = stack.pop() {
        if is_prime_u64(v) {
            out.push(v);
            continue;
        }
        let d = brent_rho_u64(v, budget)?;
        stack.push(d);
        stack.push(v / d);
        m = 1;
    }
    let _ = m;
    Ok(())
}

fn factorize_u64_budgeted(n: u64, budget: &Budget) -> Result<Vec<(u64, u32)>> {
    let mut rest = n;
    let mut primes_found: Vec<u64> = Vec::new();
    for (i, &p) in trial_primes().iter().enumerate() {
        let p = u64::from(p);
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            rest /= p;
            primes_found.push(p);
        }
        if (i as u64).is_multiple_of(CHECK_INTERVAL) {
            budget.check("factorization")?;
        }
    }
    if rest > 1 {
        if rest <= TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND || is_prime_u64(rest) {
            // No factor below the trial bound, and rest < bound^2, so prime.
            primes_found.push(rest);
        } else {
            factor_u64_into(rest, &mut primes_found, budget)?;
        }
    }
    primes_found.sort_unstable();
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for p in primes_found {
        match pairs.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => pairs.push((p, 1)),
        }
    }
    Ok(pairs)
}

/// Brent rho over arbitrary-precision integers, for inputs past the word
/// range. Same deterministic parameter schedule as the u64 path.
fn brent_rho_big(n: &BigUint, budget: &Budget) -> Result<BigUint> {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        budget.check("factorization")?;
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut count = 0u64;
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            let d = diff.gcd(n);
            count += 1;
            if count.is_multiple_of(512) {
                budget.check("factorization")?;
            }
            if !d.is_one() {
                if &d != n {
                    return Ok(d);
                }
                break;
            }
        }
        c += &one;
    }
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    // The deterministic witness set is a proof below 3.3e24; above that it is
    // an extremely strong probabilistic screen, far past the 10^15 contract.
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn factorize_big_budgeted(n: &BigUint, budget: &Budget) -> Result<Vec<(BigUint, u32)>> {
    let mut rest = n.clone();
    let mut primes_found: Vec<BigUint> = Vec::new();
    for (i, &p) in trial_primes().iter().enumerate() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            primes_found.push(pb.clone());
        }
        if (i as u64).is_multiple_of(1024) {
            budget.check("factorization")?;
        }
    }
    let mut stack = vec![];
    if !rest.is_one() {
        stack.push(rest);
    }
    while let Some(v) = stack.pop() {
        if let Some(small) = v.to_u64() {
            let mut parts = Vec::new();
            factor_u64_into(small, &mut parts, budget)?;
            primes_found.extend(parts.into_iter().map(BigUint::from));
            continue;
        }
        if is_probable_prime_big(&v) {
            primes_found.push(v);
            continue;
        }
        let d = brent_rho_big(&v, budget)?;
        stack.push(&v / &d);
        stack.push(d);
    }
    primes_found.sort();
    let mut pairs: Vec<(BigUint, u32)> = Vec::new();
    for p in primes_found {
        match pairs.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => pairs.push((p, 1)),
        }
    }
    Ok(pairs)
}

/// Factor n >= 2 into its prime decomposition. Deterministic for a given n.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    factorize_budgeted(n, &Budget::unlimited())
}

pub fn factorize_budgeted(n: &BigUint, budget: &Budget) -> Result<Factorization> {
    if n < &BigUint::from(2u32) {
        return Err(Error::domain(format!("factorize requires n >= 2, got {n}")));
    }
    let pairs = if let Some(small) = n.to_u64() {
        factorize_u64_budgeted(small, budget)?
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect()
    } else {
        factorize_big_budgeted(n, budget)?
    };
    Ok(Factorization::new(n.clone(), pairs))
}

/// All divisors of n >= 1 in ascending order, including 1 and n.
pub fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    if n.is_zero() {
        return Err(Error::domain("divisors requires n >= 1"));
    }
    if n.is_one() {
        return Ok(vec![BigUint::one()]);
    }
    let fac = factorize(n)?;
    let mut divs = vec![BigUint::one()];
    for (p, e) in fac.factors() {
        let mut extended = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=*e {
                extended.push(d * &pk);
                pk *= p;
            }
        }
        divs = extended;
    }
    divs.sort();
    Ok(divs)
}

/// Divisor list on machine words (orbit bookkeeping uses this heavily).
pub fn divisors_u64(n: u64) -> Result<Vec<u64>> {
    let divs = divisors(&BigUint::from(n))?;
    Ok(divs.into_iter().map(|d| d.to_u64().expect("divisor fits u64")).collect())
}

/// Euler's totient, computed from the prime factorization.
pub fn euler_totient(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::domain("euler_totient requires n >= 1"));
    }
    if n.is_one() {
        return Ok(BigUint::one());
    }
    let fac = factorize(n)?;
    let mut phi = BigUint::one();
    for (p, e) in fac.factors() {
        phi *= p.pow(e - 1) * (p - BigUint::one());
    }
    Ok(phi)
}

pub fn euler_totient_u64(n: u64) -> Result<u64> {
    Ok(euler_totient(&BigUint::from(n))?.to_u64().expect("totient fits u64"))
}

/// Returns (b, k) with b^k = n and k >= 2 if n is a perfect power, preferring
/// the largest exponent (so 1024 reports (2, 10), not (32, 2)).
pub fn is_perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if n < &BigUint::from(2u32) {
        return None;
    }
    let max_k = n.bits() as u32; // b >= 2 forces k <= log2(n)
    for k in (2..=max_k).rev() {
        let b = n.nth_root(k);
        if b.pow(k) == *n {
            return Some((b, k));
        }
    }
    None
}

/// Smallest k >= 1 with a^k = 1 (mod r). Requires gcd(a, r) = 1.
pub fn multiplicative_order(a: &BigUint, r: &BigUint) -> Result<BigUint> {
    if r < &BigUint::from(2u32) {
        return Err(Error::domain(format!("multiplicative_order requires r >= 2, got {r}")));
    }
    let a_red = a % r;
    if !gcd(&a_red, r).is_one() {
        return Err(Error::domain(format!(
            "multiplicative_order requires gcd(a, r) = 1, got gcd({a}, {r}) != 1"
        )));
    }
    let mut k = BigUint::one();
    let mut acc = a_red.clone();
    while !acc.is_one() {
        acc = (&acc * &a_red) % r;
        k += BigUint::one();
    }
    Ok(k)
}
