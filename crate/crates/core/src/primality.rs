//! The circulant-criterion primality tests and the method dispatcher.
//!
//! The full test follows a three-branch structure: a small-prime screen
//! (p < 100), direct Galois-orbit counting for n below the factorization
//! threshold (prime iff exactly two orbits), and a factorization-shape check
//! above it (prime iff exactly one prime factor with exponent one). The
//! simplified test estimates the factor count from the factorization alone
//! and never touches the spectrum.

use crate::baselines::{self, AksOutcome, MethodId};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::galois;
use crate::numtheory::{self, Factorization};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

/// Inputs below this go through direct orbit counting; at or above it the
/// full test decides from the factorization shape.
pub const DEFAULT_BRANCH_THRESHOLD: u64 = 1_000_000;

/// The 25 primes below 100 used by the screening branch.
pub const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97,
];

/// The decisive fact behind a verdict.
///
/// The first six variants mirror the decision branches of the test family;
/// the trailing ones carry the composite-side outcomes of the baseline
/// methods (a failed witness or congruence, a perfect-power hit).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// A prime p < 100 divides n (p = n means n itself is that prime).
    SmallPrimeDivisor { p: u64 },
    /// Direct Galois-orbit count k: prime iff k = 2.
    OrbitCount { k: u64 },
    /// The factorization of n decides: prime iff one prime, exponent one.
    FactorizationShape,
    /// The heuristic factor-count estimate k: prime iff k = 2.
    HeuristicFactorCount { k: u64 },
    /// Every Miller-Rabin witness passed.
    WitnessPassed,
    /// A Miller-Rabin witness exposed n as composite.
    WitnessFailed,
    /// Every AKS polynomial congruence held.
    CongruenceHeld,
    /// An AKS polynomial congruence failed.
    CongruenceFailed,
    /// n = b^k with k >= 2.
    PerfectPower { base: String, exponent: u32 },
    /// Exhaustive trial division found no divisor up to sqrt(n).
    NoDivisorBelowSqrt,
    /// A divisor was found (trial division, or a gcd inside AKS).
    DivisorFound { d: String },
}

/// A primality decision together with the method that produced it and the
/// decisive evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub n: String,
    pub is_prime: bool,
    pub method: MethodId,
    pub evidence: Evidence,
}

impl Verdict {
    fn new(n: &BigUint, is_prime: bool, method: MethodId, evidence: Evidence) -> Self {
        debug_assert!(evidence_consistent(&method, &evidence), "evidence {evidence:?} inconsistent with {method:?}");
        Verdict { n: n.to_string(), is_prime, method, evidence }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

/// Which evidence variants each method may produce.
pub fn evidence_consistent(method: &MethodId, evidence: &Evidence) -> bool {
    match method {
        MethodId::TrialDivision | MethodId::OptimizedTrialDivision => {
            matches!(evidence, Evidence::DivisorFound { .. } | Evidence::NoDivisorBelowSqrt)
        }
        MethodId::MillerRabin { .. } => {
            matches!(evidence, Evidence::WitnessPassed | Evidence::WitnessFailed)
        }
        MethodId::Aks => matches!(
            evidence,
            Evidence::CongruenceHeld
                | Evidence::CongruenceFailed
                | Evidence::PerfectPower { .. }
                | Evidence::DivisorFound { .. }
        ),
        MethodId::CirculantFull => matches!(
            evidence,
            Evidence::SmallPrimeDivisor { .. }
                | Evidence::OrbitCount { .. }
                | Evidence::FactorizationShape
        ),
        MethodId::CirculantSimplified => {
            matches!(evidence, Evidence::HeuristicFactorCount { .. })
        }
    }
}

fn check_min(n: &BigUint) -> Result<()> {
    if n < &BigUint::from(2u32) {
        return Err(Error::domain(format!("primality test requires n >= 2, got {n}")));
    }
    Ok(())
}

/// The full circulant test at the default branch threshold.
pub fn is_prime_circulant_full(n: &BigUint) -> Result<Verdict> {
    is_prime_circulant_full_with(n, DEFAULT_BRANCH_THRESHOLD, &Budget::unlimited())
}

/// The full circulant test with an explicit threshold and budget.
///
/// Branches: (a) small-prime screen over p < 100 (n = 2, 3 are decided here,
/// other small primes fall through to the orbit branch with the n != p
/// guard); (b) for n below the threshold, prime iff the direct orbit count is
/// exactly 2; (c) otherwise prime iff the factorization is p^1.
pub fn is_prime_circulant_full_with(
    n: &BigUint,
    branch_threshold: u64,
    budget: &Budget,
) -> Result<Verdict> {
    check_min(n)?;
    let method = MethodId::CirculantFull;
    // The orbit branch needs n >= 3; 2 and 3 are prime by the screen itself.
    if let Some(v) = n.to_u64() {
        if v == 2 || v == 3 {
            return Ok(Verdict::new(n, true, method, Evidence::SmallPrimeDivisor { p: v }));
        }
    }
    for p in SMALL_PRIMES {
        if (n % BigUint::from(p)).to_u64() == Some(0) && n != &BigUint::from(p) {
            return Ok(Verdict::new(n, false, method, Evidence::SmallPrimeDivisor { p }));
        }
    }
    match n.to_u64() {
        Some(v) if v < branch_threshold => {
            let k = galois::orbit_count_direct_budgeted(v, budget)?;
            Ok(Verdict::new(n, k == 2, method, Evidence::OrbitCount { k }))
        }
        _ => {
            let fac = numtheory::factorize_budgeted(n, budget)?;
            Ok(Verdict::new(n, fac.is_single_prime(), method, Evidence::FactorizationShape))
        }
    }
}

/// Heuristic factor-count estimate from the factorization alone: 1 for the
/// linear factor, 1 per prime with exponent 1, 2 per higher prime power, and
/// 1 more when distinct primes interact.
pub fn simplified_factor_count(n: &BigUint) -> Result<u64> {
    simplified_factor_count_budgeted(n, &Budget::unlimited())
}

pub fn simplified_factor_count_budgeted(n: &BigUint, budget: &Budget) -> Result<u64> {
    check_min(n)?;
    let fac = numtheory::factorize_budgeted(n, budget)?;
    Ok(simplified_count_from(&fac))
}

fn simplified_count_from(fac: &Factorization) -> u64 {
    let mut count = 1u64; // the (x - 2) factor
    for (_, e) in fac.factors() {
        count += if *e == 1 { 1 } else { 2 };
    }
    if fac.distinct_primes() > 1 {
        count += 1;
    }
    count
}

/// The simplified circulant test: prime iff the heuristic count is 2.
pub fn is_prime_circulant_simplified(n: &BigUint) -> Result<Verdict> {
    is_prime_circulant_simplified_budgeted(n, &Budget::unlimited())
}

pub fn is_prime_circulant_simplified_budgeted(n: &BigUint, budget: &Budget) -> Result<Verdict> {
    check_min(n)?;
    let k = simplified_factor_count_budgeted(n, budget)?;
    Ok(Verdict::new(
        n,
        k == 2,
        MethodId::CirculantSimplified,
        Evidence::HeuristicFactorCount { k },
    ))
}

/// Routes n to the named method and wraps the outcome in a uniform verdict.
pub fn test(n: &BigUint, method: &MethodId) -> Result<Verdict> {
    test_budgeted(n, method, &Budget::unlimited())
}

pub fn test_budgeted(n: &BigUint, method: &MethodId, budget: &Budget) -> Result<Verdict> {
    check_min(n)?;
    match *method {
        MethodId::TrialDivision => {
            let prime = baselines::trial_division_budgeted(n, budget)?;
            Ok(Verdict::new(n, prime, *method, trial_evidence(n, prime, budget)?))
        }
        MethodId::OptimizedTrialDivision => {
            let prime = baselines::optimized_trial_division_budgeted(n, budget)?;
            Ok(Verdict::new(n, prime, *method, trial_evidence(n, prime, budget)?))
        }
        MethodId::MillerRabin { rounds, seed } => {
            let prime = baselines::miller_rabin_budgeted(n, rounds, seed, budget)?;
            let ev = if prime { Evidence::WitnessPassed } else { Evidence::WitnessFailed };
            Ok(Verdict::new(n, prime, *method, ev))
        }
        MethodId::Aks => {
            let (prime, outcome) = baselines::aks_with_outcome(n, budget)?;
            let ev = match outcome {
                AksOutcome::Prime => Evidence::CongruenceHeld,
                AksOutcome::CongruenceFailed => Evidence::CongruenceFailed,
                AksOutcome::PerfectPower(b, k) => {
                    Evidence::PerfectPower { base: b.to_string(), exponent: k }
                }
                AksOutcome::SharedFactor(d) => Evidence::DivisorFound { d: d.to_string() },
            };
            Ok(Verdict::new(n, prime, *method, ev))
        }
        MethodId::CirculantFull => is_prime_circulant_full_with(n, DEFAULT_BRANCH_THRESHOLD, budget),
        MethodId::CirculantSimplified => is_prime_circulant_simplified_budgeted(n, budget),
    }
}

fn trial_evidence(n: &BigUint, prime: bool, budget: &Budget) -> Result<Evidence> {
    if prime {
        return Ok(Evidence::NoDivisorBelowSqrt);
    }
    // Recover the smallest divisor for the record; cheap relative to the scan
    // that already ran.
    if let Some(v) = n.to_u64() {
        let mut d = 2u64;
        while d * d <= v {
            if v % d == 0 {
                return Ok(Evidence::DivisorFound { d: d.to_string() });
            }
            d += 1;
        }
        unreachable!("composite input must have a divisor below sqrt");
    }
    let fac = numtheory::factorize_budgeted(n, budget)?;
    Ok(Evidence::DivisorFound { d: fac.factors()[0].0.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn full_test_prime_97_uses_orbit_branch() {
        let v = is_prime_circulant_full(&big(97)).unwrap();
        assert!(v.is_prime);
        assert_eq!(v.evidence, Evidence::OrbitCount { k: 2 });
    }

    #[test]
    fn full_test_rejects_even_in_screen() {
        let v = is_prime_circulant_full(&big(90)).unwrap();
        assert!(!v.is_prime);
        assert_eq!(v.evidence, Evidence::SmallPrimeDivisor { p: 2 });
    }

    #[test]
    fn full_test_large_branch_uses_factorization() {
        let v = is_prime_circulant_full(&big(1_000_003)).unwrap();
        assert!(v.is_prime);
        assert_eq!(v.evidence, Evidence::FactorizationShape);
        let v = is_prime_circulant_full(&big(1_000_001)).unwrap();
        assert!(!v.is_prime);
    }

    #[test]
    fn full_test_special_cases_two_and_three() {
        for n in [2u64, 3] {
            let v = is_prime_circulant_full(&big(n)).unwrap();
            assert!(v.is_prime);
            assert_eq!(v.evidence, Evidence::SmallPrimeDivisor { p: n });
        }
    }

    #[test]
    fn simplified_count_examples() {
        assert_eq!(simplified_factor_count(&big(7)).unwrap(), 2);
        // 12 = 2^2 * 3: 1 + 2 + 1 + 1
        assert_eq!(simplified_factor_count(&big(12)).unwrap(), 5);
        // 25 = 5^2: 1 + 2
        assert_eq!(simplified_factor_count(&big(25)).unwrap(), 3);
        // 6 = 2 * 3: 1 + 1 + 1 + 1
        assert_eq!(simplified_factor_count(&big(6)).unwrap(), 4);
        assert_eq!(simplified_factor_count(&big(49)).unwrap(), 3);
    }

    #[test]
    fn simplified_verdicts() {
        assert!(is_prime_circulant_simplified(&big(97)).unwrap().is_prime);
        let v = is_prime_circulant_simplified(&big(49)).unwrap();
        assert!(!v.is_prime);
        assert_eq!(v.evidence, Evidence::HeuristicFactorCount { k: 3 });
        let v = is_prime_circulant_simplified(&big(6)).unwrap();
        assert!(!v.is_prime);
        assert_eq!(v.evidence, Evidence::HeuristicFactorCount { k: 4 });
    }

    #[test]
    fn dispatcher_examples() {
        let v = test(&big(561), &MethodId::miller_rabin(1)).unwrap();
        assert!(!v.is_prime, "561 is a Carmichael number");
        assert_eq!(v.evidence, Evidence::WitnessFailed);

        let v = test(&big(2), &MethodId::CirculantFull).unwrap();
        assert!(v.is_prime);

        let v = test(&big(91), &MethodId::Aks).unwrap();
        assert!(!v.is_prime);

        let v = test(&big(97), &MethodId::TrialDivision).unwrap();
        assert!(v.is_prime);
        assert_eq!(v.evidence, Evidence::NoDivisorBelowSqrt);

        let v = test(&big(91), &MethodId::OptimizedTrialDivision).unwrap();
        assert!(!v.is_prime);
        assert_eq!(v.evidence, Evidence::DivisorFound { d: "7".into() });
    }

    #[test]
    fn methods_agree_on_prefix() {
        let methods = [
            MethodId::TrialDivision,
            MethodId::OptimizedTrialDivision,
            MethodId::miller_rabin(1),
            MethodId::CirculantFull,
            MethodId::CirculantSimplified,
        ];
        for n in 2u64..=3_000 {
            let verdicts: Vec<bool> =
                methods.iter().map(|m| test(&big(n), m).unwrap().is_prime).collect();
            assert!(
                verdicts.iter().all(|&v| v == verdicts[0]),
                "disagreement at n={n}: {verdicts:?}"
            );
        }
    }

    #[test]
    fn full_verdict_matches_minpoly_count() {
        for n in 3u64..=150 {
            let full = is_prime_circulant_full(&big(n)).unwrap().is_prime;
            let count = crate::minpoly::factor_count(n).unwrap();
            assert_eq!(full, count == 2, "branch consistency at n={n}");
        }
    }

    #[test]
    fn simplified_is_exact_as_predicate() {
        for n in 2u64..=5_000 {
            let simplified = simplified_factor_count(&big(n)).unwrap() == 2;
            let brute = (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(simplified, brute, "simplified predicate at n={n}");
        }
    }

    #[test]
    fn verdict_json_shape() {
        let v = test(&big(97), &MethodId::CirculantFull).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&v.to_json()).unwrap();
        assert_eq!(parsed["n"], "97");
        assert_eq!(parsed["is_prime"], true);
        assert_eq!(parsed["method"]["tag"], "circulant-full");
        assert_eq!(parsed["evidence"]["kind"], "orbit-count");
        assert_eq!(parsed["evidence"]["k"], 2);
    }

    #[test]
    fn domain_errors() {
        assert!(is_prime_circulant_full(&big(1)).is_err());
        assert!(is_prime_circulant_simplified(&big(0)).is_err());
        assert!(test(&big(1), &MethodId::Aks).is_err());
    }
}
