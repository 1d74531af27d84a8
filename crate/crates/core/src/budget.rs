//! Cooperative deadlines for long-running operations.
//!
//! The benchmark harness enforces a per-cell timeout, and the large-input
//! branch of the circulant test can hit factorizations that exceed any
//! desk-scale budget. Rather than killing threads, the expensive loops
//! (trial division, rho cycles, AKS congruences, orbit enumeration) poll a
//! shared deadline every few thousand iterations and bail out with
//! [`Error::Timeout`](crate::error::Error::Timeout).

use crate::error::{Error, Result};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    deadline: Option<Instant>,
    started: Instant,
}

/// How many loop iterations pass between deadline polls.
pub const CHECK_INTERVAL: u64 = 4096;

impl Budget {
    /// A budget that never expires.
    pub fn unlimited() -> Self {
        Budget { deadline: None, started: Instant::now() }
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        let now = Instant::now();
        Budget { deadline: Some(now + timeout), started: now }
    }

    pub fn from_seconds(seconds: f64) -> Self {
        if seconds.is_finite() && seconds > 0.0 {
            Budget::with_timeout(Duration::from_secs_f64(seconds))
        } else {
            Budget::unlimited()
        }
    }

    /// Errors with `Error::Timeout` once the deadline has passed.
    pub fn check(&self, what: &'static str) -> Result<()> {
        if let Some(deadline) = self.deadline {
            if Instant::now() > deadline {
                return Err(Error::Timeout { what, seconds: self.started.elapsed().as_secs_f64() });
            }
        }
        Ok(())
    }

    pub fn is_limited(&self) -> bool {
        self.deadline.is_some()
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlimited_never_expires() {
        let b = Budget::unlimited();
        for _ in 0..10 {
            assert!(b.check("test").is_ok());
        }
    }

    #[test]
    fn zero_timeout_expires_immediately() {
        let b = Budget::with_timeout(Duration::from_secs(0));
        std::thread::sleep(Duration::from_millis(2));
        assert!(b.check("test").is_err());
    }

    #[test]
    fn nonpositive_seconds_means_unlimited() {
        assert!(!Budget::from_seconds(0.0).is_limited());
        assert!(!Budget::from_seconds(f64::INFINITY).is_limited());
        assert!(Budget::from_seconds(1.0).is_limited());
    }
}
