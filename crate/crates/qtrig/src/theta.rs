//! First Jacobi theta function: series evaluation, both infinite product
//! representations, the derivative at the origin, and residuals of the
//! quasi-periodicity, k-scaled, and imaginary modular transformations.
//!
//! Conventions: `q = exp(i pi tau)` with `Im(tau) > 0`, dual point
//! `tau' = -1/tau`, dual nome `p = exp(i pi tau')`. The defining series is
//!
//! ```text
//! theta_1(z|tau) = 2 sum_{n>=0} (-1)^n q^{(2n+1)^2/4} sin((2n+1) z)
//! ```
//!
//! and the two product forms are
//!
//! ```text
//! theta_1(z|tau) = i q^{1/4} e^{-iz} (q^2 e^{-2iz}, e^{2iz}, q^2; q^2)_inf
//!                = 2 q^{1/4} sin(z) (q^2 e^{2iz}, q^2 e^{-2iz}, q^2; q^2)_inf.
//! ```
//!
//! Fractional powers of the nome are taken as `q^s = exp(s i pi tau)`, which
//! agrees with the principal branch on the `Re(tau) in (-1, 1]` window that
//! [`ModularPoint`] enforces. Square roots like `(-i tau)^{1/2}` use the
//! principal branch; with `Im(tau) > 0` the base lies in the right half-plane
//! where that branch is continuous.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::policy::TruncationPolicy;
use crate::qseries::qpoch_multi;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A point tau in the upper half-plane together with its derived nome,
/// dual point, and dual nome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularPoint {
    tau: Complex64,
    q: Complex64,
    log_q: Complex64,
    tau_dual: Complex64,
    p: Complex64,
}

impl ModularPoint {
    /// Build a modular point from tau, `Im(tau) > 0`, `Re(tau) in (-1, 1]`.
    ///
    /// The window makes `log q = i pi tau` coincide with the principal
    /// logarithm of the nome, so every fractional nome power and the
    /// `(log p)(log q) = pi^2` relation are branch-consistent. theta_1 is not
    /// 2-periodic in tau (a shift by 2 multiplies it by i), so out-of-window
    /// points are rejected rather than reduced.
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.re.is_finite() && tau.im.is_finite()) {
            return Err(Error::NonFinite { what: "tau" });
        }
        if tau.im <= 0.0 {
            return Err(Error::TauNotInUpperHalfPlane { im: tau.im });
        }
        if tau.re <= -1.0 || tau.re > 1.0 {
            return Err(Error::TauWindow { re: tau.re });
        }
        let log_q = I * std::f64::consts::PI * tau;
        let tau_dual = -tau.inv();
        Ok(Self {
            tau,
            q: log_q.exp(),
            log_q,
            tau_dual,
            p: (I * std::f64::consts::PI * tau_dual).exp(),
        })
    }

    /// Purely imaginary tau from a real nome `q in (0, 1)`.
    pub fn from_real_nome(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::NomeOutsideDisk {
                what: "q",
                modulus: q,
            });
        }
        Self::new(Complex64::new(0.0, -q.ln() / std::f64::consts::PI))
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// Nome `q = exp(i pi tau)`, `|q| < 1`.
    pub fn nome(&self) -> Complex64 {
        self.q
    }

    pub fn tau_dual(&self) -> Complex64 {
        self.tau_dual
    }

    /// Dual nome `p = exp(i pi tau')`.
    pub fn dual_nome(&self) -> Complex64 {
        self.p
    }

    /// The modular point at `tau' = -1/tau`.
    pub fn dual(&self) -> Result<Self> {
        Self::new(self.tau_dual)
    }

    /// The modular point at `tau / k`.
    pub fn scaled_down(&self, k: u32) -> Result<Self> {
        Self::new(self.tau / k as f64)
    }

    /// `q^s = exp(s i pi tau)` for real s.
    pub fn nome_pow(&self, s: f64) -> Complex64 {
        (self.log_q * s).exp()
    }
}

/// Which infinite product representation of theta_1 to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProductForm {
    /// `i q^{1/4} e^{-iz} (q^2 e^{-2iz}, e^{2iz}, q^2; q^2)_inf`
    Exponential,
    /// `2 q^{1/4} sin(z) (q^2 e^{2iz}, q^2 e^{-2iz}, q^2; q^2)_inf`
    Sine,
}

/// theta_1(z|tau) by the defining alternating series.
///
/// Terms are evaluated as paired exponentials so that the quadratically
/// decaying nome power and the exponentially growing `sin((2n+1)z)` never
/// overflow separately. Truncation: the tail is bounded by a geometric
/// series once `|q|^{2n+2} e^{2|Im z|} < 1`; we stop when that bound drops
/// below `tol`.
pub fn theta1_series(z: Complex64, m: &ModularPoint, policy: &TruncationPolicy) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite { what: "z" });
    }
    let log_abs_q = -std::f64::consts::PI * m.tau.im; // ln|q| < 0
    let abs_im_z = z.im.abs();
    let log_tol = policy.tol.ln();

    let mut sum = Complex64::new(0.0, 0.0);
    let mut sign = 1.0;
    for n in 0..policy.max_terms {
        let odd = (2 * n + 1) as f64;
        let base = m.log_q * (odd * odd / 4.0);
        // 2 sin((2n+1)z) = -i (e^{i(2n+1)z} - e^{-i(2n+1)z})
        let term = -I * ((base + I * odd * z).exp() - (base - I * odd * z).exp());
        sum += sign * term;
        sign = -sign;

        let next_odd = odd + 2.0;
        let log_next = std::f64::consts::LN_2
            + next_odd * next_odd / 4.0 * log_abs_q
            + next_odd * abs_im_z;
        let log_ratio = (2.0 * odd + 2.0) * log_abs_q + 2.0 * abs_im_z;
        if log_ratio < 0.0 {
            // tail <= next / (1 - ratio)
            let tail = log_next - (-log_ratio.exp_m1()).ln();
            if tail < log_tol {
                return Ok(sum);
            }
        }
    }
    Err(Error::NonConverged {
        max_terms: policy.max_terms,
        tail_bound: f64::NAN,
    })
}

/// theta_1(z|tau) by one of the two infinite product representations.
///
/// Both forms agree with [`theta1_series`] to ~100 tol (relative) on the
/// supported envelope `|q| <= 0.95`, `|Im z| <= 2`.
pub fn theta1_product(
    z: Complex64,
    m: &ModularPoint,
    form: ProductForm,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite { what: "z" });
    }
    let q2 = m.q * m.q;
    let q_quarter = m.nome_pow(0.25);
    let e2iz = (2.0 * I * z).exp();
    match form {
        ProductForm::Exponential => {
            let prod = qpoch_multi(&[q2 / e2iz, e2iz, q2], q2, policy)?;
            Ok(I * q_quarter * (-I * z).exp() * prod)
        }
        ProductForm::Sine => {
            let prod = qpoch_multi(&[q2 * e2iz, q2 / e2iz, q2], q2, policy)?;
            Ok(2.0 * q_quarter * z.sin() * prod)
        }
    }
}

/// Closed form `theta_1(pi/2|tau) = 2 q^{1/4} (-q^2;q^2)_inf^2 (q^2;q^2)_inf`.
pub fn theta1_pi_half_closed(m: &ModularPoint, policy: &TruncationPolicy) -> Result<Complex64> {
    let q2 = m.q * m.q;
    let prod = qpoch_multi(&[-q2, -q2, q2], q2, policy)?;
    Ok(2.0 * m.nome_pow(0.25) * prod)
}

/// `theta_1'(0|tau) = 2 q^{1/4} (q^2;q^2)_inf^3` (product closed form).
pub fn theta1_prime0(m: &ModularPoint, policy: &TruncationPolicy) -> Result<Complex64> {
    let q2 = m.q * m.q;
    let prod = qpoch_multi(&[q2, q2, q2], q2, policy)?;
    Ok(2.0 * m.nome_pow(0.25) * prod)
}

/// `theta_1'(0|tau) = 2 sum (-1)^n (2n+1) q^{(2n+1)^2/4}` (term-wise
/// differentiated series; the independent route against [`theta1_prime0`]).
pub fn theta1_prime0_series(m: &ModularPoint, policy: &TruncationPolicy) -> Result<Complex64> {
    let log_abs_q = -std::f64::consts::PI * m.tau.im;
    let log_tol = policy.tol.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sign = 1.0;
    for n in 0..policy.max_terms {
        let odd = (2 * n + 1) as f64;
        sum += sign * 2.0 * odd * (m.log_q * (odd * odd / 4.0)).exp();
        sign = -sign;
        let next_odd = odd + 2.0;
        let log_next = std::f64::consts::LN_2 + next_odd.ln() + next_odd * next_odd / 4.0 * log_abs_q;
        let log_ratio = ((next_odd + 2.0) / next_odd).ln() + (next_odd + 1.0) * log_abs_q;
        if log_ratio < 0.0 {
            let tail = log_next - (-log_ratio.exp_m1()).ln();
            if tail < log_tol {
                return Ok(sum);
            }
        }
    }
    Err(Error::NonConverged {
        max_terms: policy.max_terms,
        tail_bound: f64::NAN,
    })
}

fn norm_scale(values: &[Complex64]) -> f64 {
    values.iter().fold(1.0f64, |acc, v| acc.max(v.norm()))
}

/// Residuals of the two quasi-periodicity laws,
/// `theta_1(z+pi) + theta_1(z)` and
/// `theta_1(z+pi tau) + q^{-1} e^{-2iz} theta_1(z)`,
/// both normalized by `max(1, |theta_1(z)|)`.
pub fn quasi_period_residuals(
    z: Complex64,
    m: &ModularPoint,
    policy: &TruncationPolicy,
) -> Result<(Complex64, Complex64)> {
    let base = theta1_series(z, m, policy)?;
    let scale = 1.0f64.max(base.norm());
    let shifted_pi = theta1_series(z + std::f64::consts::PI * Complex64::new(1.0, 0.0), m, policy)?;
    let shifted_tau = theta1_series(z + std::f64::consts::PI * m.tau, m, policy)?;
    let r_pi = (shifted_pi + base) / scale;
    let r_pitau = (shifted_tau + m.nome_pow(-1.0) * (-2.0 * I * z).exp() * base) / scale;
    Ok((r_pi, r_pitau))
}

/// Residual of the k-scaled shift law
/// `theta_1(z + pi tau | tau/k) = (-1)^k q^{-k} e^{-2kiz} theta_1(z | tau/k)`,
/// where `q` is the nome of `tau` itself. Normalized by
/// `max(1, |lhs|, |rhs|)`.
pub fn transform_k_residual(
    z: Complex64,
    m: &ModularPoint,
    k: u32,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    assert!(k >= 1, "k must be a positive integer");
    let scaled = m.scaled_down(k)?;
    let lhs = theta1_series(z + std::f64::consts::PI * m.tau, &scaled, policy)?;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let rhs = sign
        * m.nome_pow(-(k as f64))
        * (-2.0 * I * (k as f64) * z).exp()
        * theta1_series(z, &scaled, policy)?;
    Ok((lhs - rhs) / norm_scale(&[lhs, rhs]))
}

/// Residual of Jacobi's imaginary transformation
/// `theta_1(z|tau) = (-i tau)^{-1/2} (-i) e^{i tau' z^2 / pi} theta_1(z tau' | tau')`.
pub fn jacobi_transform_residual(
    z: Complex64,
    m: &ModularPoint,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let exponent = I * m.tau_dual * z * z / std::f64::consts::PI;
    if exponent.re > 700.0 {
        return Err(Error::RangeOverflow {
            exponent: exponent.re,
        });
    }
    let lhs = theta1_series(z, m, policy)?;
    let dual = m.dual()?;
    let rhs = (-I * m.tau).powf(-0.5) * (-I) * exponent.exp() * theta1_series(z * m.tau_dual, &dual, policy)?;
    Ok((lhs - rhs) / norm_scale(&[lhs, rhs]))
}

/// Residual of the transformed derivative law
/// `theta_1'(0|tau') = (-i tau)^{3/2} 2 q^{1/4} (q^2;q^2)_inf^3`,
/// with the left side from the differentiated series and the right side from
/// the product closed form.
pub fn dual_prime_residual(m: &ModularPoint, policy: &TruncationPolicy) -> Result<Complex64> {
    let dual = m.dual()?;
    let lhs = theta1_prime0_series(&dual, policy)?;
    let rhs = (-I * m.tau).powf(1.5) * theta1_prime0(m, policy)?;
    Ok((lhs - rhs) / norm_scale(&[lhs, rhs]))
}
