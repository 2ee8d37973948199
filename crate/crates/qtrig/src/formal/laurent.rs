//! Laurent polynomials in `u = e^{iz}` with exact Gaussian-rational
//! coefficients. Canonical form: no stored zero coefficients.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::coeff::{is_zero, GaussRat};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, GaussRat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    pub fn monomial(exp: i64, c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, c: GaussRat) {
        if is_zero(&c) {
            return;
        }
        match self.coeffs.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, exp: i64) -> Option<&GaussRat> {
        self.coeffs.get(&exp)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &GaussRat)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if is_zero(c) {
            return Self::zero();
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, v)| (e, v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Substitution `u -> 1/u` (negates all exponents).
    pub fn invert_u(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Numeric evaluation at `u` (diagnostics and cross-engine tests).
    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&e, c)| super::coeff::to_complex64(c) * u.powi(e as i32))
            .sum()
    }
}
