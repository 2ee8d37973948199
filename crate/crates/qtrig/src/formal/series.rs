//! Truncated formal series in a root of the nome.
//!
//! A `NomeSeries` is a Laurent series in the formal variable `t` with
//! `t^m = nome` (the root `m` makes every fractional nome power appearing in
//! an identity an integer power of `t`). Coefficients are [`LaurentPoly`]s in
//! `u = e^{iz}`; arithmetic is exact below the truncation order.
//!
//! Every series carries the absolute exponent `order` through which its
//! coefficients are exact; ring operations propagate that bound (for a
//! product, the unknown tail of one factor first pollutes exponents above
//! `order + min_exponent(other)`), so a proof can assert that its assembled
//! sides are exact through the requested order.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::coeff::{g_one, GaussRat};
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NomeSeries {
    root: u32,
    order: i64,
    coeffs: BTreeMap<i64, LaurentPoly>,
}

impl NomeSeries {
    pub fn zero(root: u32, order: i64) -> Self {
        Self {
            root,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(root: u32, order: i64) -> Self {
        Self::monomial(root, order, 0, LaurentPoly::constant(g_one()))
    }

    pub fn monomial(root: u32, order: i64, t_exp: i64, poly: LaurentPoly) -> Self {
        let mut s = Self::zero(root, order);
        s.set(t_exp, poly);
        s
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn leading_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, t_exp: i64) -> Option<&LaurentPoly> {
        self.coeffs.get(&t_exp)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub(crate) fn set(&mut self, t_exp: i64, poly: LaurentPoly) {
        if t_exp <= self.order && !poly.is_zero() {
            self.coeffs.insert(t_exp, poly);
        }
    }

    pub(crate) fn accumulate(&mut self, t_exp: i64, poly: &LaurentPoly) {
        if t_exp > self.order || poly.is_zero() {
            return;
        }
        let merged = match self.coeffs.get(&t_exp) {
            Some(existing) => existing.add(poly),
            None => poly.clone(),
        };
        if merged.is_zero() {
            self.coeffs.remove(&t_exp);
        } else {
            self.coeffs.insert(t_exp, merged);
        }
    }

    /// Re-express in a finer root (`new_root` a multiple of the current).
    pub fn rebase(&self, new_root: u32) -> Result<Self> {
        if new_root == self.root {
            return Ok(self.clone());
        }
        if new_root % self.root != 0 {
            return Err(Error::RootDivisibility {
                root: new_root,
                needed: self.root,
            });
        }
        let f = (new_root / self.root) as i64;
        Ok(Self {
            root: new_root,
            order: self.order.saturating_mul(f),
            coeffs: self.coeffs.iter().map(|(&e, p)| (e * f, p.clone())).collect(),
        })
    }

    fn common_root(a: &Self, b: &Self) -> u32 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let (x, y) = (a.root as u64, b.root as u64);
        (x / gcd(x, y) * y) as u32
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let root = Self::common_root(self, other);
        let a = self.rebase(root)?;
        let b = other.rebase(root)?;
        let mut out = Self::zero(root, a.order.min(b.order));
        for (&e, p) in &a.coeffs {
            out.accumulate(e, p);
        }
        for (&e, p) in &b.coeffs {
            out.accumulate(e, p);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            root: self.root,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&e, p)| (e, p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let root = Self::common_root(self, other);
        let a = self.rebase(root)?;
        let b = other.rebase(root)?;
        // the unknown tail of `a` (exponents > a.order) first affects the
        // product at a.order + lead(b), and symmetrically
        let order = match (a.leading_exponent(), b.leading_exponent()) {
            (Some(la), Some(lb)) => (a.order + lb).min(b.order + la),
            // multiplying by an (exactly) zero series: zero out to the sum
            (Some(la), None) => b.order + la,
            (None, Some(lb)) => a.order + lb,
            (None, None) => a.order.max(b.order),
        };
        let mut out = Self::zero(root, order);
        for (&e1, p1) in &a.coeffs {
            for (&e2, p2) in &b.coeffs {
                if e1 + e2 > order {
                    continue;
                }
                out.accumulate(e1 + e2, &p1.mul(p2));
            }
        }
        Ok(out)
    }

    /// Multiply by `c * t^shift`.
    pub fn scale(&self, c: &GaussRat, shift: i64) -> Self {
        let mut out = Self::zero(self.root, self.order + shift);
        for (&e, p) in &self.coeffs {
            out.set(e + shift, p.scale(c));
        }
        out
    }

    pub fn truncate(&self, order: i64) -> Self {
        let mut out = self.clone();
        out.order = out.order.min(order);
        out.coeffs.retain(|&e, _| e <= out.order);
        out
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.root, self.order));
        }
        let mut out = self.clone();
        for _ in 1..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Truncated reciprocal. Requires an invertible leading coefficient (a
    /// u-free constant); the result is exact through `order - 2*lead`.
    pub fn recip(&self) -> Result<Self> {
        let lead = self.leading_exponent().ok_or(Error::ZeroDivision)?;
        let lead_poly = &self.coeffs[&lead];
        let c = match (lead_poly.iter().count(), lead_poly.coeff(0)) {
            (1, Some(c)) => c.clone(),
            _ => return Err(Error::ZeroDivision),
        };
        let c_inv = g_one() / c;
        // B = c^{-1} t^{-lead} self - 1 has positive leading exponent
        let rel_order = self.order - lead;
        let b = self
            .scale(&c_inv, -lead)
            .sub(&Self::one(self.root, rel_order))?
            .truncate(rel_order);
        let mut acc = Self::one(self.root, rel_order);
        let mut term = Self::one(self.root, rel_order);
        let b_lead = b.leading_exponent();
        if let Some(bl) = b_lead {
            debug_assert!(bl > 0, "reciprocal tail must have positive exponents");
            let mut power = 0;
            while power * bl <= rel_order {
                term = term.mul(&b.neg())?.truncate(rel_order);
                if term.is_zero() {
                    break;
                }
                acc = acc.add(&term)?;
                power += 1;
            }
        }
        Ok(acc.scale(&c_inv, -lead).truncate(self.order - 2 * lead))
    }

    /// Partial-sum numeric evaluation at a concrete nome and z
    /// (cross-engine consistency checks).
    pub fn eval_numeric(&self, nome: Complex64, z: Complex64) -> Complex64 {
        let t = nome.powf(1.0 / self.root as f64);
        let u = (Complex64::new(0.0, 1.0) * z).exp();
        self.coeffs
            .iter()
            .map(|(&e, p)| t.powi(e as i32) * p.eval(u))
            .sum()
    }
}

/// First coefficient difference between two series, scanned in
/// lexicographic (t-exponent, u-exponent) order through `through`.
pub fn first_mismatch(
    a: &NomeSeries,
    b: &NomeSeries,
    through: i64,
) -> Result<Option<(i64, i64, GaussRat, GaussRat)>> {
    let root = {
        let ar = a.root();
        let br = b.root();
        if ar != br {
            // compare in the common refinement
            let common = {
                fn gcd(a: u64, b: u64) -> u64 {
                    if b == 0 {
                        a
                    } else {
                        gcd(b, a % b)
                    }
                }
                (ar as u64 / gcd(ar as u64, br as u64) * br as u64) as u32
            };
            return first_mismatch(&a.rebase(common)?, &b.rebase(common)?, through);
        }
        ar
    };
    let _ = root;
    let zero = LaurentPoly::zero();
    let mut t_exps: Vec<i64> = a
        .iter()
        .map(|(&e, _)| e)
        .chain(b.iter().map(|(&e, _)| e))
        .filter(|&e| e <= through)
        .collect();
    t_exps.sort_unstable();
    t_exps.dedup();
    for e in t_exps {
        let pa = a.coeff(e).unwrap_or(&zero);
        let pb = b.coeff(e).unwrap_or(&zero);
        if pa == pb {
            continue;
        }
        let mut u_exps: Vec<i64> = pa
            .iter()
            .map(|(&u, _)| u)
            .chain(pb.iter().map(|(&u, _)| u))
            .collect();
        u_exps.sort_unstable();
        u_exps.dedup();
        for u in u_exps {
            let ca = pa.coeff(u).cloned().unwrap_or_else(super::coeff::g_zero);
            let cb = pb.coeff(u).cloned().unwrap_or_else(super::coeff::g_zero);
            if ca != cb {
                return Ok(Some((e, u, ca, cb)));
            }
        }
    }
    Ok(None)
}
