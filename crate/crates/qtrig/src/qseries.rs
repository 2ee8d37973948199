//! q-shifted factorials (q-Pochhammer symbols).
//!
//! `(a;q)_0 = 1`, `(a;q)_n = prod_{i=0}^{n-1} (1 - a q^i)`, and
//! `(a;q)_inf = lim_{n->inf} (a;q)_n`, which converges for every finite `a`
//! when `|q| < 1`. The infinite product truncates at the first index `k`
//! with `|a| |q|^k / (1 - |q|) < tol`, which bounds the neglected log-tail
//! by a geometric series.
//!
//! All products are evaluated by direct multiplication (no log-sum); the
//! supported numeric envelope `|q| <= 0.95` keeps the conditioning benign.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::policy::TruncationPolicy;

fn ensure_finite(v: Complex64, what: &'static str) -> Result<()> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { what })
    }
}

/// Finite q-shifted factorial `(a;q)_n`.
///
/// `n = 0` returns exactly 1.
pub fn qpoch_finite(a: Complex64, q: Complex64, n: u32) -> Result<Complex64> {
    ensure_finite(a, "a")?;
    ensure_finite(q, "q")?;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut aqi = a;
    for _ in 0..n {
        prod *= Complex64::new(1.0, 0.0) - aqi;
        aqi *= q;
    }
    Ok(prod)
}

/// Infinite q-shifted factorial `(a;q)_inf`, `|q| < 1`.
pub fn qpoch_infinite(a: Complex64, q: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    ensure_finite(a, "a")?;
    ensure_finite(q, "q")?;
    let qn = q.norm();
    if qn >= 1.0 {
        return Err(Error::NomeOutsideDisk {
            what: "q",
            modulus: qn,
        });
    }
    let scale = 1.0 - qn;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut aqi = a;
    for _ in 0..policy.max_terms {
        if aqi.norm() / scale < policy.tol {
            return Ok(prod);
        }
        prod *= Complex64::new(1.0, 0.0) - aqi;
        aqi *= q;
    }
    Err(Error::NonConverged {
        max_terms: policy.max_terms,
        tail_bound: aqi.norm() / scale,
    })
}

/// Product `(a_1, ..., a_k; q)_inf` of infinite q-shifted factorials.
///
/// The empty list returns 1.
pub fn qpoch_multi(
    parameters: &[Complex64],
    q: Complex64,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let mut prod = Complex64::new(1.0, 0.0);
    for &a in parameters {
        prod *= qpoch_infinite(a, q, policy)?;
    }
    Ok(prod)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
    }

    // Pinned by a 64-factor partial product in 40-digit arithmetic.
    const QPOCH_01_01: f64 = 0.890_010_099_998_999_000_000_100_01;

    #[test]
    fn finite_empty_product_is_one() {
        assert_eq!(
            qpoch_finite(c(0.3, 0.0), c(0.7, 0.0), 0).unwrap(),
            c(1.0, 0.0)
        );
    }

    #[test]
    fn finite_q_zero_keeps_first_factor_only() {
        // (1-2)(1-0)(1-0) = -1
        assert_eq!(
            qpoch_finite(c(2.0, 0.0), c(0.0, 0.0), 3).unwrap(),
            c(-1.0, 0.0)
        );
    }

    #[test]
    fn finite_two_factors() {
        // (1-0.5)(1-0.25) = 0.375
        let v = qpoch_finite(c(0.5, 0.0), c(0.5, 0.0), 2).unwrap();
        assert!((v - c(0.375, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn finite_rejects_nan() {
        assert!(qpoch_finite(c(f64::NAN, 0.0), c(0.5, 0.0), 2).is_err());
        assert!(qpoch_finite(c(0.1, 0.0), c(f64::INFINITY, 0.0), 2).is_err());
    }

    #[test]
    fn infinite_a_zero_is_one() {
        let p = TruncationPolicy::default();
        assert_eq!(
            qpoch_infinite(c(0.0, 0.0), c(0.5, 0.0), &p).unwrap(),
            c(1.0, 0.0)
        );
    }

    #[test]
    fn infinite_q_zero_single_factor() {
        let p = TruncationPolicy::default();
        let v = qpoch_infinite(c(0.5, 0.0), c(0.0, 0.0), &p).unwrap();
        assert_eq!(v, c(0.5, 0.0));
    }

    #[test]
    fn infinite_pinned_value() {
        let p = TruncationPolicy::default();
        let v = qpoch_infinite(c(0.1, 0.0), c(0.1, 0.0), &p).unwrap();
        assert!(v.im == 0.0);
        assert!((v.re - QPOCH_01_01).abs() < 1e-15, "got {}", v.re);
    }

    #[test]
    fn infinite_rejects_unit_disk_boundary() {
        let p = TruncationPolicy::default();
        assert!(matches!(
            qpoch_infinite(c(0.5, 0.0), c(1.0, 0.0), &p),
            Err(Error::NomeOutsideDisk { .. })
        ));
    }

    #[test]
    fn infinite_cap_signals_non_convergence() {
        let p = TruncationPolicy::new(1e-15, 3).unwrap();
        assert!(matches!(
            qpoch_infinite(c(1.0, 0.0), c(0.9, 0.0), &p),
            Err(Error::NonConverged { .. })
        ));
    }

    #[test]
    fn multi_empty_and_zeros() {
        let p = TruncationPolicy::default();
        assert_eq!(qpoch_multi(&[], c(0.3, 0.0), &p).unwrap(), c(1.0, 0.0));
        assert_eq!(
            qpoch_multi(&[c(0.0, 0.0), c(0.0, 0.0)], c(0.5, 0.0), &p).unwrap(),
            c(1.0, 0.0)
        );
    }

    #[test]
    fn multi_square_of_pinned_value() {
        // (0.1;0.1)_inf^2, squared oracle value at 40 digits.
        let p = TruncationPolicy::default();
        let v = qpoch_multi(&[c(0.1, 0.0), c(0.1, 0.0)], c(0.1, 0.0), &p).unwrap();
        assert!((v.re - 0.792_117_978_100_228_2).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_tighter_policy() {
        let p = TruncationPolicy::default();
        let tight = p.tightened(2.0);
        for &(a, q) in &[(0.7, 0.8), (-1.5, 0.6), (2.0, 0.9), (0.3, 0.35)] {
            let v1 = qpoch_infinite(c(a, 0.1), c(q, 0.0), &p).unwrap();
            let v2 = qpoch_infinite(c(a, 0.1), c(q, 0.0), &tight).unwrap();
            assert!(rel(v1, v2) < 10.0 * p.tol);
        }
    }

    #[test]
    fn matches_finite_partial_product_at_truncation_depth() {
        let p = TruncationPolicy::default();
        let a = c(0.8, -0.2);
        let q = c(0.55, 0.1);
        let inf = qpoch_infinite(a, q, &p).unwrap();
        let fin = qpoch_finite(a, q, 96).unwrap();
        assert!(rel(inf, fin) < 10.0 * p.tol);
    }

    proptest::proptest! {
        // (a;q)_{n+1} = (a;q)_n (1 - a q^n)
        #[test]
        fn finite_recurrence(ar in -2.0f64..2.0, ai in -2.0f64..2.0,
                             qr in -0.9f64..0.9, qi in -0.3f64..0.3,
                             n in 0u32..20) {
            let a = c(ar, ai);
            let q = c(qr, qi);
            let lhs = qpoch_finite(a, q, n + 1).unwrap();
            let rhs = qpoch_finite(a, q, n).unwrap()
                * (c(1.0, 0.0) - a * q.powu(n));
            proptest::prop_assert!(rel(lhs, rhs) < 1e-12);
        }

        // (a;q)_inf = (1 - a) (aq;q)_inf
        #[test]
        fn infinite_functional_equation(ar in -2.0f64..2.0, ai in -2.0f64..2.0,
                                        qr in -0.88f64..0.88, qi in -0.2f64..0.2) {
            let p = TruncationPolicy::default();
            let a = c(ar, ai);
            let q = c(qr, qi);
            proptest::prop_assume!(q.norm() <= 0.9);
            let lhs = qpoch_infinite(a, q, &p).unwrap();
            let rhs = (c(1.0, 0.0) - a) * qpoch_infinite(a * q, q, &p).unwrap();
            proptest::prop_assert!(rel(lhs, rhs) < 10.0 * p.tol);
        }
    }
}
