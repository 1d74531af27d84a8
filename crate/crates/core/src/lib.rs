//! Deterministic primality testing through the Galois-orbit structure of the
//! spectrum of the circulant matrix C_n = W_n + W_n^2.
//!
//! An integer n > 2 is prime exactly when the minimal polynomial of C_n has
//! two irreducible rational factors: the linear factor (x - 2) from the fixed
//! eigenvalue mu_0 = 2, and a single degree-(n-1) factor collecting every
//! other eigenvalue into one Galois orbit. Composites split the spectrum into
//! further orbits (one per divisor), so counting orbits decides primality.
//!
//! Modules:
//! - [`numtheory`]: exact integer arithmetic (gcd, factorization, divisors,
//!   totient, perfect powers, multiplicative orders);
//! - [`baselines`]: trial division, Miller-Rabin, and AKS for comparison;
//! - [`spectrum`]: eigenvalues mu_j = lambda_j + lambda_j^2 from roots of
//!   unity, with a numerically stable high-precision variant;
//! - [`galois`]: orbit partitions under the unit-group action and the
//!   divisor-based orbit-count shortcut;
//! - [`minpoly`]: exact integer factors of the minimal polynomial,
//!   reconstructed from high-precision eigenvalues;
//! - [`primality`]: the full and simplified circulant tests plus a method
//!   dispatcher;
//! - [`spectral`]: the spectral regularity statistic and phase-point data;
//! - [`bench`]: the timing harness, agreement sweeps, and table emitters;
//! - [`cli`]: the command-line surface.

pub mod baselines;
pub mod bench;
pub mod budget;
pub mod cli;
pub mod error;
pub mod galois;
mod hp;
pub mod minpoly;
pub mod numtheory;
pub mod primality;
pub mod spectral;
pub mod spectrum;

pub use baselines::MethodId;
pub use budget::Budget;
pub use error::{Error, Result};
pub use galois::OrbitPartition;
pub use minpoly::{FactorSet, IntegerPolynomial};
pub use numtheory::Factorization;
pub use primality::{Evidence, Verdict};
pub use spectral::PhasePoint;
pub use spectrum::{PreciseSpectrum, Spectrum};
