//! Galois orbits of the eigenvalue indices of C_n.
//!
//! The unit group (Z/nZ)* acts on indices by j -> j*a mod n; each orbit
//! collects eigenvalues that share an irreducible factor of the minimal
//! polynomial. Two counting routes are provided and deliberately kept apart:
//!
//! * [`orbit_count_direct`] enumerates orbits by marking indices, and is the
//!   route the primality test relies on;
//! * [`orbit_count_divisor_formula`] counts 1 plus the divisors d > 1 of n
//!   with gcd(d, n/d) = 1 and an irreducible d-th cyclotomic polynomial.
//!
//! The two agree exactly on squarefree n but the divisor formula undercounts
//! prime powers (n = 4 yields 2 against a direct count of 3), so callers must
//! never substitute one for the other.

use crate::budget::{Budget, CHECK_INTERVAL};
use crate::error::{Error, Result};
use crate::numtheory::gcd_u64;
use serde::Serialize;

/// Partition of {0..n-1} into orbits under multiplication by units mod n.
///
/// Orbits are ordered by smallest member and each orbit's indices are sorted;
/// {0} is always its own orbit since mu_0 = 2 is fixed by the whole group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    n: u64,
    orbits: Vec<Vec<u64>>,
}

impl OrbitPartition {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn orbits(&self) -> &[Vec<u64>] {
        &self.orbits
    }

    pub fn orbit_count(&self) -> u64 {
        self.orbits.len() as u64
    }

    /// The orbit containing a given index.
    pub fn orbit_of(&self, j: u64) -> Option<&[u64]> {
        self.orbits.iter().find(|o| o.binary_search(&j).is_ok()).map(|o| o.as_slice())
    }

    /// `{"n": n, "orbits": [[indices...], ...]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("orbit partition serializes")
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!("orbit computation requires n >= 3, got {n}")));
    }
    Ok(())
}

/// Orbit partition of the indices {0..n-1}: for each unvisited j, apply every
/// a in 1..n-1 with gcd(a, n) = 1 and collect j*a mod n.
pub fn compute_orbits(n: u64) -> Result<OrbitPartition> {
    check_n(n)?;
    let size = usize::try_from(n).map_err(|_| Error::domain("n too large to enumerate orbits"))?;
    let mut visited = vec![false; size];
    let mut orbits = Vec::new();
    for j in 0..n {
        if visited[j as usize] {
            continue;
        }
        let mut orbit = vec![j];
        visited[j as usize] = true;
        for a in 1..n {
            if gcd_u64(a, n) == 1 {
                let jp = (j as u128 * a as u128 % n as u128) as u64;
                if !visited[jp as usize] {
                    visited[jp as usize] = true;
                    orbit.push(jp);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(OrbitPartition { n, orbits })
}

/// Number of orbits, counted by direct enumeration.
///
/// Same marking scheme as [`compute_orbits`] with the unit list hoisted out of
/// the per-orbit pass, since the primality test runs this on every candidate
/// below the factorization threshold.
pub fn orbit_count_direct(n: u64) -> Result<u64> {
    orbit_count_direct_budgeted(n, &Budget::unlimited())
}

pub fn orbit_count_direct_budgeted(n: u64, budget: &Budget) -> Result<u64> {
    check_n(n)?;
    let size = usize::try_from(n).map_err(|_| Error::domain("n too large to enumerate orbits"))?;
    let mut units = Vec::new();
    for a in 1..n {
        if gcd_u64(a, n) == 1 {
            units.push(a);
        }
        if a % CHECK_INTERVAL == 0 {
            budget.check("orbit enumeration")?;
        }
    }
    let mut visited = vec![false; size];
    let mut count = 0u64;
    for j in 0..n {
        if visited[j as usize] {
            continue;
        }
        count += 1;
        budget.check("orbit enumeration")?;
        for &a in &units {
            let jp = (j as u128 * a as u128 % n as u128) as u64;
            visited[jp as usize] = true;
        }
    }
    Ok(count)
}

/// Whether the d-th cyclotomic polynomial is irreducible over the rationals.
///
/// True for every d >= 1; kept as a named operation so the divisor-formula
/// count below reads as the predicate it quantifies over.
pub fn cyclotomic_is_irreducible(d: u64) -> bool {
    debug_assert!(d >= 1);
    true
}

/// Orbit count from the divisor structure: one plus the number of divisors
/// d > 1 of n with gcd(d, n/d) = 1 and Phi_d irreducible.
///
/// Implemented exactly as stated even though it disagrees with
/// [`orbit_count_direct`] on prime powers (first counterexample n = 4).
pub fn orbit_count_divisor_formula(n: u64) -> Result<u64> {
    check_n(n)?;
    let mut count = 1u64; // the orbit of mu_0 = 2
    for d in crate::numtheory::divisors_u64(n)? {
        if d > 1 && gcd_u64(d, n / d) == 1 && cyclotomic_is_irreducible(d) {
            count += 1;
        }
    }
    Ok(count)
}
