//! Main-path results against the independent brute-force implementations on
//! their overlapping domains.

use circulant_primality::{galois, minpoly, primality};
use circulant_primality_oracle as oracle;
use num_bigint::BigUint;

#[test]
fn orbit_partitions_match_union_find_to_500() {
    for n in 3..=500u64 {
        let main = galois::compute_orbits(n).unwrap();
        let brute = oracle::brute_orbits(n);
        assert_eq!(main.orbits(), brute.as_slice(), "partition mismatch at n={n}");
    }
}

#[test]
fn orbit_partitions_match_union_find_spot_checks() {
    for n in [1_000u64, 2_021, 3_600, 4_999, 5_000] {
        let main = galois::compute_orbits(n).unwrap();
        let brute = oracle::brute_orbits(n);
        assert_eq!(main.orbits(), brute.as_slice(), "partition mismatch at n={n}");
    }
}

#[test]
fn oracle_examples_from_both_sides() {
    // 7: two orbits; 12: six (one per divisor); 4: three.
    assert_eq!(oracle::brute_orbits(7).len(), 2);
    assert_eq!(oracle::brute_orbits(12).len(), 6);
    assert_eq!(oracle::brute_orbits(4).len(), 3);
    assert_eq!(galois::orbit_count_direct(12).unwrap(), 6);
}

#[test]
fn min_poly_spot_checks_beyond_acceptance_range() {
    // The acceptance suite covers 3..=300 exhaustively; freeze a couple of
    // structured cases here for quick failure localization.
    for n in [30u64, 64, 97, 128, 210] {
        let main: Vec<Vec<num_bigint::BigInt>> = minpoly::minimal_polynomial_factors(n)
            .unwrap()
            .factors()
            .iter()
            .map(|f| f.coefficients().to_vec())
            .collect();
        let (brute, residual) = oracle::brute_min_poly(n);
        assert_eq!(main, brute, "factor mismatch at n={n}");
        assert!(residual < 1e-6);
    }
}

#[test]
fn verdicts_match_sieve_on_sample() {
    let truth = oracle::sieve(20_000);
    for n in (2..=20_000u64).step_by(37) {
        let v = primality::is_prime_circulant_full(&BigUint::from(n)).unwrap();
        assert_eq!(v.is_prime, truth.is_prime(n), "verdict mismatch at n={n}");
    }
}
