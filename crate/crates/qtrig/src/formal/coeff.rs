//! Exact Gaussian-rational coefficients: `a/b + (c/d) i`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;
pub type GaussRat = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: i64, im: i64) -> GaussRat {
    Complex::new(rat(re, 1), rat(im, 1))
}

pub fn gauss_rat(re: Rat, im: Rat) -> GaussRat {
    Complex::new(re, im)
}

pub fn g_zero() -> GaussRat {
    Complex::new(Rat::zero(), Rat::zero())
}

pub fn g_one() -> GaussRat {
    Complex::new(Rat::one(), Rat::zero())
}

pub fn is_zero(v: &GaussRat) -> bool {
    v.re.is_zero() && v.im.is_zero()
}

/// `i^e` for any integer e (reduced mod 4).
pub fn i_pow(e: i64) -> GaussRat {
    match e.rem_euclid(4) {
        0 => gauss(1, 0),
        1 => gauss(0, 1),
        2 => gauss(-1, 0),
        _ => gauss(0, -1),
    }
}

/// Render as `a/b+c/di` for mismatch reports.
pub fn format_gauss(v: &GaussRat) -> String {
    if v.im.is_zero() {
        format!("{}", v.re)
    } else if v.re.is_zero() {
        format!("{}i", v.im)
    } else {
        format!("{}{}{}i", v.re, if v.im >= Rat::zero() { "+" } else { "" }, v.im)
    }
}

/// Numeric value of a Gaussian rational (test/diagnostic use).
pub fn to_complex64(v: &GaussRat) -> num_complex::Complex64 {
    fn to_f64(r: &Rat) -> f64 {
        // good to double precision for the moderate numerators we produce
        let num = r.numer();
        let den = r.denom();
        let fnum: f64 = num.to_string().parse().unwrap_or(f64::NAN);
        let fden: f64 = den.to_string().parse().unwrap_or(f64::NAN);
        fnum / fden
    }
    num_complex::Complex64::new(to_f64(&v.re), to_f64(&v.im))
}
