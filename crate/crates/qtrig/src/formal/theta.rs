//! Exact formal expansions of the theta ingredients.
//!
//! Everything here is a [`NomeSeries`] in `t` with `t^m` equal to the nome
//! of the identity being proved: the dual nome for the theta-form theorems,
//! the plain nome for the eta-quotient product identities.

use super::coeff::{g_one, gauss, i_pow, rat, GaussRat};
use super::laurent::LaurentPoly;
use super::series::NomeSeries;
use crate::error::{Error, Result};

/// theta_1(a z + s pi/2 | sigma/k) as an exact series:
///
/// ```text
/// sum_n (-1)^n t^{m (2n+1)^2 / (4k)}
///       * (-i) (i^{(2n+1)s} u^{a(2n+1)} - i^{-(2n+1)s} u^{-a(2n+1)})
/// ```
///
/// requires `4k | m` so every exponent is integral.
pub fn theta1_formal(a: u32, s: u8, k: u32, m: u32, order: i64) -> Result<NomeSeries> {
    assert!(a >= 1, "argument multiplier must be positive");
    assert!(s <= 2, "shift is in units of pi/2, at most 2");
    if m % (4 * k) != 0 {
        return Err(Error::RootDivisibility {
            root: m,
            needed: 4 * k,
        });
    }
    let unit = (m / (4 * k)) as i64;
    let mut out = NomeSeries::zero(m, order);
    let mut n: i64 = 0;
    loop {
        let odd = 2 * n + 1;
        let t_exp = unit * odd * odd;
        if t_exp > order {
            break;
        }
        let sign = if n % 2 == 0 { g_one() } else { gauss(-1, 0) };
        let front = sign * gauss(0, -1);
        let mut poly = LaurentPoly::zero();
        poly.add_term((a as i64) * odd, front.clone() * i_pow(odd * s as i64));
        poly.add_term(-(a as i64) * odd, -front * i_pow(-odd * s as i64));
        out.accumulate(t_exp, &poly);
        n += 1;
    }
    Ok(out)
}

/// theta_1(pi/2 | sigma/k): the u-free series `2 sum_n t^{m(2n+1)^2/(4k)}`.
pub fn theta1_pi2_formal(k: u32, m: u32, order: i64) -> Result<NomeSeries> {
    u_free_theta(k, m, order, |_| gauss(2, 0))
}

/// theta_1'(0 | sigma/k): `2 sum_n (-1)^n (2n+1) t^{m(2n+1)^2/(4k)}`.
pub fn theta1_prime0_formal(k: u32, m: u32, order: i64) -> Result<NomeSeries> {
    u_free_theta(k, m, order, |n| {
        let odd = 2 * n + 1;
        if n % 2 == 0 {
            gauss(2 * odd, 0)
        } else {
            gauss(-2 * odd, 0)
        }
    })
}

/// The rational part S of `theta_1(pi/4 | sigma/k) = sqrt(2) * S`:
/// coefficients cycle `+1, -1, -1, +1` with n mod 4. Identities only use
/// even powers of this theta, so the explicit `sqrt(2)` scalar stays exact
/// (`theta^2 = 2 S^2`, `theta^4 = 4 S^4`).
pub fn theta1_pi4_formal(k: u32, m: u32, order: i64) -> Result<NomeSeries> {
    u_free_theta(k, m, order, |n| match n.rem_euclid(4) {
        0 | 3 => gauss(1, 0),
        _ => gauss(-1, 0),
    })
}

fn u_free_theta(
    k: u32,
    m: u32,
    order: i64,
    coeff: impl Fn(i64) -> GaussRat,
) -> Result<NomeSeries> {
    if m % (4 * k) != 0 {
        return Err(Error::RootDivisibility {
            root: m,
            needed: 4 * k,
        });
    }
    let unit = (m / (4 * k)) as i64;
    let mut out = NomeSeries::zero(m, order);
    let mut n: i64 = 0;
    loop {
        let odd = 2 * n + 1;
        let t_exp = unit * odd * odd;
        if t_exp > order {
            break;
        }
        out.accumulate(t_exp, &LaurentPoly::constant(coeff(n)));
        n += 1;
    }
    Ok(out)
}

/// Formal infinite product `prod_{j>=0, a_exp + j*step <= order} (1 - t^{a_exp + j*step})`,
/// exact through the truncation order. `a_exp >= 1` keeps the product formal.
pub fn pochhammer_formal(a_exp: i64, step: i64, m: u32, order: i64) -> Result<NomeSeries> {
    if a_exp <= 0 {
        return Err(Error::NonFormalProduct { a_exp });
    }
    assert!(step >= 1, "step must be a positive integer");
    let mut out = NomeSeries::one(m, order);
    let mut e = a_exp;
    while e <= order {
        let mut factor = NomeSeries::one(m, order);
        factor.accumulate(e, &LaurentPoly::constant(gauss(-1, 0)));
        out = out.mul(&factor)?.truncate(order);
        e += step;
    }
    Ok(out)
}

/// `(q^j; q^s)_inf` in the q-variable (`t^m = q`).
pub fn qpoch_formal(j: i64, s: i64, m: u32, order: i64) -> Result<NomeSeries> {
    pochhammer_formal(j * m as i64, s * m as i64, m, order)
}

/// `Pi_{q^k} = q^{k/4} (q^{2k};q^{2k})^2 / (q^k;q^{2k})^2` in the q-variable.
/// Needs `4 | m`.
pub fn pi_q_formal(k: u32, m: u32, order: i64) -> Result<NomeSeries> {
    if m % 4 != 0 {
        return Err(Error::RootDivisibility { root: m, needed: 4 });
    }
    let k = k as i64;
    let num = qpoch_formal(2 * k, 2 * k, m, order)?;
    let den = qpoch_formal(k, 2 * k, m, order)?;
    let ratio = num.pow(2)?.mul(&den.pow(2)?.recip()?)?;
    Ok(ratio.scale(&g_one(), k * m as i64 / 4))
}

/// Named constants of the multiplication formulas, as exact series in the
/// q-variable (`t^m = q`, `4 | m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormalConstant {
    /// `(1/2) Pi_q / Pi_{q^4}`; leading term `(1/2) t^{-3m/4}`.
    HalfPiQOverPiQ4,
    /// `(1/3) Pi_q / Pi_{q^9}`; leading term `(1/3) t^{-2m}`.
    ThirdPiQOverPiQ9,
    /// `Pi_q / Pi_{q^3}`; leading term `t^{-m/2}`.
    PiQOverPiQ3,
    /// `C(q) = Pi_q / Pi_{q^2}`; leading term `t^{-m/4}`.
    Cq,
}

pub fn constant_formal(name: FormalConstant, m: u32, order: i64) -> Result<NomeSeries> {
    let (scalar, k) = match name {
        FormalConstant::HalfPiQOverPiQ4 => (rat(1, 2), 4),
        FormalConstant::ThirdPiQOverPiQ9 => (rat(1, 3), 9),
        FormalConstant::PiQOverPiQ3 => (rat(1, 1), 3),
        FormalConstant::Cq => (rat(1, 1), 2),
    };
    let ratio = pi_q_formal(1, m, order)?.mul(&pi_q_formal(k, m, order)?.recip()?)?;
    Ok(ratio.scale(&super::coeff::gauss_rat(scalar, rat(0, 1)), 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::series::first_mismatch;

    #[test]
    fn theta1_leading_term() {
        // a=1, s=0, k=1, m=4, N=3: single term t * (-i)(u - u^{-1})
        let s = theta1_formal(1, 0, 1, 4, 3).unwrap();
        assert_eq!(s.iter().count(), 1);
        let p = s.coeff(1).unwrap();
        assert_eq!(p.coeff(1), Some(&gauss(0, -1)));
        assert_eq!(p.coeff(-1), Some(&gauss(0, 1)));
    }

    #[test]
    fn shift_by_pi_negates() {
        let plain = theta1_formal(1, 0, 1, 4, 100).unwrap();
        let shifted = theta1_formal(1, 2, 1, 4, 100).unwrap();
        assert!(first_mismatch(&shifted, &plain.neg(), 100).unwrap().is_none());
    }

    #[test]
    fn argument_multiplier_scales_u() {
        let s = theta1_formal(2, 0, 1, 4, 3).unwrap();
        let p = s.coeff(1).unwrap();
        assert_eq!(p.coeff(2), Some(&gauss(0, -1)));
        assert_eq!(p.coeff(-2), Some(&gauss(0, 1)));
    }

    #[test]
    fn formal_oddness() {
        // negating u-exponents and multiplying by -1 fixes theta (a=1, s=0)
        let s = theta1_formal(1, 0, 1, 8, 200).unwrap();
        let mut reflected = NomeSeries::zero(8, 200);
        for (&e, p) in s.iter() {
            reflected.accumulate(e, &p.invert_u().neg());
        }
        assert!(first_mismatch(&s, &reflected, 200).unwrap().is_none());
    }

    #[test]
    fn root_divisibility_contract() {
        assert!(matches!(
            theta1_formal(1, 0, 3, 8, 50),
            Err(Error::RootDivisibility { .. })
        ));
        assert!(theta1_formal(1, 0, 3, 12, 50).is_ok());
    }

    #[test]
    fn pentagonal_numbers() {
        // (t;t)_inf = 1 - t - t^2 + t^5 + t^7 - ... ; brute force to order 5
        let s = pochhammer_formal(1, 1, 1, 5).unwrap();
        assert_eq!(s.coeff(0).unwrap().coeff(0), Some(&g_one()));
        assert_eq!(s.coeff(1).unwrap().coeff(0), Some(&gauss(-1, 0)));
        assert_eq!(s.coeff(2).unwrap().coeff(0), Some(&gauss(-1, 0)));
        assert_eq!(s.coeff(3), None);
        assert_eq!(s.coeff(4), None);
        assert_eq!(s.coeff(5).unwrap().coeff(0), Some(&g_one()));
    }

    #[test]
    fn pochhammer_single_factor_and_empty() {
        let s = pochhammer_formal(2, 2, 2, 2).unwrap();
        assert_eq!(s.coeff(0).unwrap().coeff(0), Some(&g_one()));
        assert_eq!(s.coeff(2).unwrap().coeff(0), Some(&gauss(-1, 0)));
        assert_eq!(s.iter().count(), 2);

        let s = pochhammer_formal(1, 1, 1, 0).unwrap();
        assert_eq!(s.iter().count(), 1);
        assert_eq!(s.coeff(0).unwrap().coeff(0), Some(&g_one()));

        assert!(matches!(
            pochhammer_formal(0, 1, 1, 5),
            Err(Error::NonFormalProduct { .. })
        ));
    }

    #[test]
    fn degenerate_pi_ratio_is_one() {
        let pi1 = pi_q_formal(1, 4, 60).unwrap();
        let ratio = pi1.mul(&pi1.recip().unwrap()).unwrap();
        let one = NomeSeries::one(4, ratio.order());
        assert!(first_mismatch(&ratio, &one, ratio.order()).unwrap().is_none());
    }

    #[test]
    fn constant_leading_terms() {
        let m = 4;
        let c = constant_formal(FormalConstant::HalfPiQOverPiQ4, m, 80).unwrap();
        assert_eq!(c.leading_exponent(), Some(-3 * m as i64 / 4));
        let lead = c.coeff(-3 * m as i64 / 4).unwrap().coeff(0).unwrap();
        assert_eq!(lead, &super::super::coeff::gauss_rat(rat(1, 2), rat(0, 1)));

        let c = constant_formal(FormalConstant::ThirdPiQOverPiQ9, m, 80).unwrap();
        assert_eq!(c.leading_exponent(), Some(-2 * m as i64));
        let lead = c.coeff(-2 * m as i64).unwrap().coeff(0).unwrap();
        assert_eq!(lead, &super::super::coeff::gauss_rat(rat(1, 3), rat(0, 1)));
    }

    #[test]
    fn jacobi_triple_product_for_pi2_theta() {
        // series route 2 sum t^{(2n+1)^2 m/4} against the product route
        // 2 t^{m/4} (-Q^2;Q^2)^2 (Q^2;Q^2) with Q = t^m, using
        // (-x;x)_inf = (x^2;x^2)_inf / (x;x)_inf.
        let m = 4;
        let order = 200;
        let series = theta1_pi2_formal(1, m, order).unwrap();
        let q2 = 2 * m as i64;
        let minus = pochhammer_formal(2 * q2, 2 * q2, m, order)
            .unwrap()
            .mul(&pochhammer_formal(q2, q2, m, order).unwrap().recip().unwrap())
            .unwrap();
        let product = minus
            .pow(2)
            .unwrap()
            .mul(&pochhammer_formal(q2, q2, m, order).unwrap())
            .unwrap()
            .scale(&gauss(2, 0), m as i64 / 4);
        let through = series.order().min(product.order());
        assert!(first_mismatch(&series, &product, through).unwrap().is_none());
    }
}
