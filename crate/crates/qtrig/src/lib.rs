//! Numerical and exact-series toolkit for Gosper's q-trigonometric functions
//! and the first Jacobi theta function.
//!
//! The crate has three layers:
//!
//! - **Evaluation** — [`qseries`] (q-Pochhammer symbols under an explicit
//!   [`TruncationPolicy`]), [`theta`] (theta_1 by series and by both infinite
//!   product representations, plus its modular transformation residuals), and
//!   [`qtrig`] (sin_q, cos_q, Pi_q and their dual-nome theta bridges).
//! - **Verification** — [`catalog`], a registry of the multiplication-formula
//!   identities relating these functions, with residual evaluation, seeded
//!   grid sweeps, finite-difference checks of the addition-formula constant,
//!   and eta-quotient checks.
//! - **Exact proofs** — [`formal`], truncated formal series in a root of the
//!   nome with exact Gaussian-rational Laurent-polynomial coefficients, which
//!   re-verifies the theta-form identities coefficient by coefficient.
//!
//! All evaluation routines are pure functions of their arguments; every type
//! here is immutable after construction and safe to share across threads.

pub mod catalog;
pub mod error;
pub mod formal;
pub mod grid;
pub mod policy;
pub mod qseries;
pub mod qtrig;
pub mod report;
pub mod theta;

pub use error::{Error, Result};
pub use grid::GridSpec;
pub use policy::TruncationPolicy;
pub use qseries::{qpoch_finite, qpoch_infinite, qpoch_multi};
pub use qtrig::{cos_q, cos_q_via_theta, pi_q, sin_q, sin_q_via_theta, QParameter};
pub use theta::{
    dual_prime_residual, jacobi_transform_residual, quasi_period_residuals, theta1_prime0,
    theta1_prime0_series, theta1_product, theta1_series, transform_k_residual, ModularPoint,
    ProductForm,
};

/// Complex scalar used throughout the numeric layer.
pub type Complex = num_complex::Complex64;
