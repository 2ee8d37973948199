//! Truncation policy for all infinite series and product evaluation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tail bound plus a hard term cap.
///
/// Every infinite sum or product in the crate truncates at the first index
/// whose analytic tail bound drops below `tol`; an evaluation that reaches
/// `max_terms` first fails with [`Error::NonConverged`] instead of returning
/// a silently inaccurate value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Absolute bound on the neglected tail. Must be positive.
    pub tol: f64,
    /// Hard cap on the number of terms or factors. Must be at least 1.
    pub max_terms: usize,
}

impl TruncationPolicy {
    /// Default tolerance: the double-precision floor with a generous cap.
    pub const DEFAULT_TOL: f64 = 1e-15;
    pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() || max_terms < 1 {
            return Err(Error::InvalidPolicy { tol, max_terms });
        }
        Ok(Self { tol, max_terms })
    }

    /// Same tolerance divided by `factor`, used by consistency tests that
    /// re-evaluate under a tighter policy.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            tol: self.tol / factor,
            max_terms: self.max_terms,
        }
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tol: Self::DEFAULT_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(TruncationPolicy::new(0.0, 10).is_err());
        assert!(TruncationPolicy::new(-1e-3, 10).is_err());
        assert!(TruncationPolicy::new(f64::NAN, 10).is_err());
        assert!(TruncationPolicy::new(1e-12, 0).is_err());
        assert!(TruncationPolicy::new(1e-12, 1).is_ok());
    }

    #[test]
    fn default_matches_documented_values() {
        let p = TruncationPolicy::default();
        assert_eq!(p.tol, 1e-15);
        assert_eq!(p.max_terms, 1_000_000);
    }
}
