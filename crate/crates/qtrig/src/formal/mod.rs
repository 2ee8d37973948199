//! Exact verification of the theta-form identities as truncated formal
//! series in a root of the nome, with Laurent-polynomial coefficients in
//! `u = e^{iz}` over the Gaussian rationals.

pub mod coeff;
pub mod laurent;
pub mod prove;
pub mod series;
pub mod theta;

pub use coeff::GaussRat;
pub use laurent::LaurentPoly;
pub use prove::{prove, prove_mutated, MismatchReport, ProofOutcome, ProofReport};
pub use series::{first_mismatch, NomeSeries};
pub use theta::{
    constant_formal, pi_q_formal, pochhammer_formal, qpoch_formal, theta1_formal,
    theta1_pi2_formal, theta1_pi4_formal, theta1_prime0_formal, FormalConstant,
};
