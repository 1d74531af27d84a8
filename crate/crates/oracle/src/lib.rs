//! Brute-force reference implementations for the test suite.
//!
//! Everything here recomputes results through structurally different
//! algorithms from the main library and shares no code with it:
//!
//! * [`sieve`]: an Eratosthenes table as the primality ground truth;
//! * [`brute_orbits`]: Galois orbits via union-find over the relation
//!   j ~ j*a mod n, instead of visited-marking enumeration;
//! * [`brute_min_poly`]: minimal-polynomial factors expanded at quadrupled
//!   precision from powers of a single primitive root of unity, with
//!   conjugate pairs multiplied as real quadratics and duplicates removed by
//!   the exact index rule (mu_j = mu_k for j != k only at {n/3, 2n/3}).
//!
//! These exist to discharge derived expectations; performance is a non-goal.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as IntSign};

const RM: RoundingMode = RoundingMode::ToEven;

/// Primality flags for every integer up to `limit`.
pub struct SieveTable {
    limit: u64,
    flags: Vec<bool>,
}

impl SieveTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "sieve table covers only n <= {}", self.limit);
        self.flags[n as usize]
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.flags.iter().enumerate().filter_map(|(i, &p)| if p { Some(i as u64) } else { None })
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&p| p).count()
    }
}

/// Sieve of Eratosthenes up to `limit` (inclusive).
pub fn sieve(limit: u64) -> SieveTable {
    assert!(limit >= 2);
    let mut flags = vec![true; limit as usize + 1];
    flags[0] = false;
    flags[1] = false;
    let mut p = 2usize;
    while p * p <= limit as usize {
        if flags[p] {
            let mut m = p * p;
            while m <= limit as usize {
                flags[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    SieveTable { limit, flags }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Orbit partition of {0..n-1} under j -> j*a mod n for units a, computed by
/// union-find. Orbits come out ordered by smallest member, members ascending.
pub fn brute_orbits(n: u64) -> Vec<Vec<u64>> {
    assert!((3..=5_000).contains(&n), "brute_orbits domain is 3 <= n <= 5000");
    let size = n as usize;
    let mut uf = UnionFind::new(size);
    for a in 1..n {
        if gcd(a, n) == 1 {
            for j in 0..n {
                uf.union(j as usize, (j * a % n) as usize);
            }
        }
    }
    let mut groups: Vec<Vec<u64>> = vec![Vec::new(); size];
    for j in 0..size {
        let root = uf.find(j);
        groups[root].push(j as u64);
    }
    let mut orbits: Vec<Vec<u64>> = groups.into_iter().filter(|g| !g.is_empty()).collect();
    orbits.sort_by_key(|o| o[0]);
    orbits
}

/// Quadrupled working precision relative to the main path's default.
fn oracle_digits(n: u64) -> u32 {
    let base = ((2.0 * (n as f64).log10()).ceil() as u32 + 20).max(30);
    base * 4
}

fn bits_for(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 96
}

/// Integer part of a nonnegative-exponent BigFloat as a BigInt, read straight
/// off the mantissa words.
fn bigfloat_int_to_bigint(x: &BigFloat) -> BigInt {
    if x.is_zero() {
        return BigInt::from(0);
    }
    let (words, _nbits, sign, exp, _) = x.as_raw_parts().expect("finite");
    if exp <= 0 {
        return BigInt::from(0);
    }
    // The mantissa is a little-endian fraction in [0.5, 1); the integer part
    // is its top `exp` bits.
    let mut mag = BigUint::new(Vec::new());
    for w in words.iter().rev() {
        mag = (mag << 64) | BigUint::from(*w);
    }
    let total_bits = words.len() as u64 * 64;
    let drop = total_bits.saturating_sub(exp as u64);
    mag >>= drop;
    let sign = if sign == Sign::Neg { IntSign::Minus } else { IntSign::Plus };
    BigInt::from_biguint(sign, mag)
}

/// Round-half-away-from-zero with the residual magnitude as f64.
fn round_with_residual(x: &BigFloat, prec: usize) -> (BigInt, f64) {
    let half = {
        let one = BigFloat::from_u8(1, prec);
        let two = BigFloat::from_u8(2, prec);
        one.div(&two, prec, RM)
    };
    let shifted = if x.is_negative() { x.sub(&half, prec, RM) } else { x.add(&half, prec, RM) };
    let value = bigfloat_int_to_bigint(&shifted.int());
    // Residual = |x - value| read back through an exact decimal parse.
    let back = {
        let mut cc = Consts::new().expect("consts");
        BigFloat::parse(&value.to_string(), astro_float::Radix::Dec, prec, RM, &mut cc)
    };
    let res = x.sub(&back, prec, RM).abs();
    let res_f64 = {
        // Crude upper estimate from the binary exponent.
        match res.exponent() {
            _ if res.is_zero() => 0.0,
            Some(e) => 2f64.powi(e),
            None => f64::INFINITY,
        }
    };
    (value, res_f64)
}

/// Real polynomial product helper over BigFloat coefficients.
fn poly_mul(a: &[BigFloat], b: &[BigFloat], prec: usize) -> Vec<BigFloat> {
    let mut out = vec![BigFloat::from_u8(0, prec); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let term = ai.mul(bj, prec, RM);
            out[i + j] = out[i + j].add(&term, prec, RM);
        }
    }
    out
}

/// Minimal-polynomial factors of C_n as integer coefficient vectors (constant
/// term first), sorted by (degree, lexicographic coefficients), plus the
/// worst rounding residual. Panics if any coefficient fails integrality.
pub fn brute_min_poly(n: u64) -> (Vec<Vec<BigInt>>, f64) {
    assert!((3..=300).contains(&n), "brute_min_poly domain is 3 <= n <= 300");
    let digits = oracle_digits(n);
    let prec = bits_for(digits);
    let mut cc = Consts::new().expect("consts");

    // lambda_1 once, every other root by repeated multiplication.
    let two_pi = {
        let pi = cc.pi(prec, RM);
        pi.add(&pi, prec, RM)
    };
    let theta = two_pi.div(&BigFloat::from_u64(n, prec), prec, RM);
    let c1 = theta.cos(prec, RM, &mut cc);
    let s1 = theta.sin(prec, RM, &mut cc);
    let mut re = vec![BigFloat::from_u8(1, prec); n as usize];
    let mut im = vec![BigFloat::from_u8(0, prec); n as usize];
    for j in 1..n as usize {
        // (re, im)[j] = (re, im)[j-1] * (c1, s1)
        let r = re[j - 1].mul(&c1, prec, RM).sub(&im[j - 1].mul(&s1, prec, RM), prec, RM);
        let i = re[j - 1].mul(&s1, prec, RM).add(&im[j - 1].mul(&c1, prec, RM), prec, RM);
        re[j] = r;
        im[j] = i;
    }
    // mu_j = lambda_j + lambda_j^2, the square taken as a complex product.
    let mut mu_re = Vec::with_capacity(n as usize);
    let mut mu_im = Vec::with_capacity(n as usize);
    for j in 0..n as usize {
        let sq_re = re[j].mul(&re[j], prec, RM).sub(&im[j].mul(&im[j], prec, RM), prec, RM);
        let sq_im = {
            let p = re[j].mul(&im[j], prec, RM);
            p.add(&p, prec, RM)
        };
        mu_re.push(re[j].add(&sq_re, prec, RM));
        mu_im.push(im[j].add(&sq_im, prec, RM));
    }

    let orbits = brute_orbits(n);
    let mut factors: Vec<Vec<BigInt>> = Vec::with_capacity(orbits.len());
    let mut worst = 0.0f64;
    for orbit in &orbits {
        // Exact duplicate rule: mu_j = mu_k for j != k happens only for
        // {n/3, 2n/3} when 3 | n (both equal -1); keep the smaller index.
        let kept: Vec<u64> = orbit
            .iter()
            .copied()
            .filter(|&j| !(n.is_multiple_of(3) && j == 2 * n / 3 && orbit.contains(&(n / 3))))
            .collect();
        let kept_set: Vec<u64> = kept.clone();
        let mut used = vec![false; kept.len()];
        let mut poly = vec![BigFloat::from_u8(1, prec)];
        for (idx, &j) in kept.iter().enumerate() {
            if used[idx] {
                continue;
            }
            used[idx] = true;
            let partner = (n - j) % n;
            let partner_pos = kept_set
                .iter()
                .position(|&k| k == partner && k != j)
                .filter(|&p| !used[p]);
            match partner_pos {
                Some(p) => {
                    used[p] = true;
                    // (x - mu)(x - conj(mu)) = x^2 - 2 Re(mu) x + |mu|^2
                    let two_re = mu_re[j as usize].add(&mu_re[j as usize], prec, RM);
                    let normsq = mu_re[j as usize]
                        .mul(&mu_re[j as usize], prec, RM)
                        .add(&mu_im[j as usize].mul(&mu_im[j as usize], prec, RM), prec, RM);
                    let quad = vec![normsq, two_re.neg(), BigFloat::from_u8(1, prec)];
                    poly = poly_mul(&poly, &quad, prec);
                }
                None => {
                    // Real eigenvalue: linear factor (x - mu).
                    let lin = vec![mu_re[j as usize].neg(), BigFloat::from_u8(1, prec)];
                    poly = poly_mul(&poly, &lin, prec);
                }
            }
        }
        let mut int_coeffs = Vec::with_capacity(poly.len());
        for c in &poly {
            let (v, res) = round_with_residual(c, prec);
            assert!(res < 1e-6, "oracle integrality failure at n={n}: residual {res}");
            worst = worst.max(res);
            int_coeffs.push(v);
        }
        assert_eq!(int_coeffs.last().map(|c| c == &BigInt::from(1)), Some(true), "monic");
        factors.push(int_coeffs);
    }
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    factors.dedup();
    (factors, worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_small() {
        let t = sieve(30);
        let primes: Vec<u64> = t.primes().collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let t = sieve(2_000);
        for n in 0u64..=2_000 {
            let brute = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(t.is_prime(n), brute, "sieve mismatch at {n}");
        }
    }

    #[test]
    fn sieve_limit_two() {
        let t = sieve(2);
        assert!(t.is_prime(2));
        assert_eq!(t.count(), 1);
    }

    #[test]
    fn sieve_prime_count_at_1e5() {
        assert_eq!(sieve(100_000).count(), 9592);
    }

    #[test]
    fn orbits_of_seven_and_twelve() {
        assert_eq!(brute_orbits(7), vec![vec![0], (1..7).collect::<Vec<u64>>()]);
        assert_eq!(brute_orbits(7).len(), 2);
        // 12 has divisors 1,2,3,4,6,12.
        assert_eq!(brute_orbits(12).len(), 6);
        assert_eq!(brute_orbits(4), vec![vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn min_poly_known_sextic() {
        let (factors, worst) = brute_min_poly(7);
        let as_i64: Vec<Vec<i64>> = factors
            .iter()
            .map(|f| f.iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        assert_eq!(as_i64, vec![vec![-2, 1], vec![1, 4, 9, 8, 4, 2, 1]]);
        assert!(worst < 1e-30);
    }

    #[test]
    fn min_poly_composite_six() {
        let (factors, _) = brute_min_poly(6);
        let as_i64: Vec<Vec<i64>> = factors
            .iter()
            .map(|f| f.iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        assert_eq!(as_i64, vec![vec![-2, 1], vec![0, 1], vec![1, 1], vec![3, 0, 1]]);
    }

    #[test]
    fn min_poly_three() {
        let (factors, _) = brute_min_poly(3);
        let as_i64: Vec<Vec<i64>> = factors
            .iter()
            .map(|f| f.iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        // Eigenvalues 2, -1, -1.
        assert_eq!(as_i64, vec![vec![-2, 1], vec![1, 1]]);
    }
}
