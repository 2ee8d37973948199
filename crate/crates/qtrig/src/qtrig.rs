//! Gosper's q-analogues of sine and cosine, the constant Pi_q, and the
//! dual-nome theta bridges.
//!
//! With `w = z/pi` and the principal logarithm of `q`:
//!
//! ```text
//! sin_q(pi w) = q^{(w-1/2)^2} (q^{2w}, q^{2-2w}; q^2)_inf / (q;q^2)_inf^2
//! cos_q(pi w) = q^{w^2}      (q^{1+2w}, q^{1-2w}; q^2)_inf / (q;q^2)_inf^2
//! Pi_q        = q^{1/4} (q^2;q^2)_inf^2 / (q;q^2)_inf^2
//! ```
//!
//! Both functions are pi-antiperiodic (`sin_q(z+pi) = -sin_q(z)`, an exact
//! property of the defining product), which extends product evaluation to
//! arguments whose reduced exponents would otherwise leave the unit disk.
//! The dual bridge `sin_q(z) = theta_1(z|tau') / theta_1(pi/2|tau')` links
//! them to the theta module; evaluation routes through it automatically in
//! the `|q| > 0.95` regime where the dual nome converges fast and the direct
//! products do not.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::policy::TruncationPolicy;
use crate::qseries::{qpoch_infinite, qpoch_multi};
use crate::theta::{theta1_series, ModularPoint};

const PI: f64 = std::f64::consts::PI;

/// A nome `0 < |q| < 1` with its derived modular data: `tau = Log q / (i pi)`
/// (principal log, so `Re tau in (-1, 1]`), the dual point `tau' = -1/tau`,
/// and the dual nome `p = exp(i pi tau')`.
///
/// `log p * log q = pi^2` holds exactly by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParameter {
    q: Complex64,
    log_q: Complex64,
    tau: Complex64,
    tau_dual: Complex64,
    p: Complex64,
    log_p: Complex64,
}

impl QParameter {
    pub fn new(q: Complex64) -> Result<Self> {
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(Error::NonFinite { what: "q" });
        }
        let qn = q.norm();
        if qn <= 0.0 || qn >= 1.0 {
            return Err(Error::NomeOutsideDisk {
                what: "q",
                modulus: qn,
            });
        }
        let log_q = q.ln();
        let tau = log_q / (Complex64::new(0.0, 1.0) * PI);
        let log_p = Complex64::new(PI * PI, 0.0) / log_q;
        Ok(Self {
            q,
            log_q,
            tau,
            tau_dual: -tau.inv(),
            p: log_p.exp(),
            log_p,
        })
    }

    pub fn from_real(q: f64) -> Result<Self> {
        Self::new(Complex64::new(q, 0.0))
    }

    pub fn nome(&self) -> Complex64 {
        self.q
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn tau_dual(&self) -> Complex64 {
        self.tau_dual
    }

    pub fn dual_nome(&self) -> Complex64 {
        self.p
    }

    /// `q^s = exp(s Log q)` with the principal logarithm.
    pub fn nome_pow(&self, s: Complex64) -> Complex64 {
        (self.log_q * s).exp()
    }

    /// Modular point of the dual tau, the argument of every bridge theta.
    pub fn dual_point(&self) -> Result<ModularPoint> {
        ModularPoint::new(self.tau_dual)
    }

    /// QParameter at `q^k` (nome raised to a positive integer power).
    pub fn power(&self, k: u32) -> Result<Self> {
        Self::new(self.q.powu(k))
    }
}

/// Splits `w` into `(sign, w - floor(Re w))`, the pi-antiperiodic reduction.
fn reduce_half_period(w: Complex64) -> (f64, Complex64) {
    let shift = w.re.floor();
    let sign = if (shift as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    (sign, w - shift)
}

fn check_unit_factor(a: Complex64) -> Result<Complex64> {
    let n = a.norm();
    if n > 1.0 + 1e-12 {
        Err(Error::ProductDomain { magnitude: n })
    } else {
        Ok(a)
    }
}

fn use_dual_bridge(qp: &QParameter, w: Complex64) -> bool {
    (qp.q.norm() > 0.95 || w.im.abs() > 2.0) && qp.p.norm() < qp.q.norm()
}

/// Gosper's q-sine via its defining infinite product.
pub fn sin_q(z: Complex64, qp: &QParameter, policy: &TruncationPolicy) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite { what: "z" });
    }
    let w = z / PI;
    if use_dual_bridge(qp, w) {
        return sin_q_via_theta(z, qp, policy);
    }
    let (sign, w) = reduce_half_period(w);
    let a1 = check_unit_factor(qp.nome_pow(2.0 * w))?;
    let a2 = check_unit_factor(qp.nome_pow(2.0 * (Complex64::new(1.0, 0.0) - w)))?;
    let q2 = qp.q * qp.q;
    let num = qpoch_multi(&[a1, a2], q2, policy)?;
    let den = qpoch_infinite(qp.q, q2, policy)?;
    let half = Complex64::new(0.5, 0.0);
    Ok(sign * qp.nome_pow((w - half) * (w - half)) * num / (den * den))
}

/// Gosper's q-cosine via its own defining product (not via `sin_q`).
pub fn cos_q(z: Complex64, qp: &QParameter, policy: &TruncationPolicy) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite { what: "z" });
    }
    let w = z / PI;
    if use_dual_bridge(qp, w) {
        return cos_q_via_theta(z, qp, policy);
    }
    // reduce Re w into [-1/2, 1/2) so both exponents 1 +- 2w stay in the disk
    let shift = (w.re + 0.5).floor();
    let sign = if (shift as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let w = w - shift;
    let one = Complex64::new(1.0, 0.0);
    let a1 = check_unit_factor(qp.nome_pow(one + 2.0 * w))?;
    let a2 = check_unit_factor(qp.nome_pow(one - 2.0 * w))?;
    let q2 = qp.q * qp.q;
    let num = qpoch_multi(&[a1, a2], q2, policy)?;
    let den = qpoch_infinite(qp.q, q2, policy)?;
    Ok(sign * qp.nome_pow(w * w) * num / (den * den))
}

/// Gosper's constant `Pi_q = q^{1/4} (q^2;q^2)_inf^2 / (q;q^2)_inf^2`.
pub fn pi_q(qp: &QParameter, policy: &TruncationPolicy) -> Result<Complex64> {
    let q2 = qp.q * qp.q;
    let num = qpoch_infinite(q2, q2, policy)?;
    let den = qpoch_infinite(qp.q, q2, policy)?;
    let ratio = num / den;
    Ok(qp.nome_pow(Complex64::new(0.25, 0.0)) * ratio * ratio)
}

/// `sin_q(z) = theta_1(z|tau') / theta_1(pi/2|tau')`, the dual-nome bridge.
pub fn sin_q_via_theta(
    z: Complex64,
    qp: &QParameter,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let dual = qp.dual_point()?;
    let den = theta1_series(Complex64::new(PI / 2.0, 0.0), &dual, policy)?;
    if den.norm() == 0.0 {
        // cannot happen for Im tau' > 0
        return Err(Error::NonFinite {
            what: "theta1(pi/2|tau')",
        });
    }
    Ok(theta1_series(z, &dual, policy)? / den)
}

/// `cos_q(z) = theta_1(z + pi/2|tau') / theta_1(pi/2|tau')`.
pub fn cos_q_via_theta(
    z: Complex64,
    qp: &QParameter,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let dual = qp.dual_point()?;
    let den = theta1_series(Complex64::new(PI / 2.0, 0.0), &dual, policy)?;
    if den.norm() == 0.0 {
        return Err(Error::NonFinite {
            what: "theta1(pi/2|tau')",
        });
    }
    Ok(theta1_series(z + PI / 2.0, &dual, policy)? / den)
}
