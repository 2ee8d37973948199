//! Exact verification of the theta-form identities as truncated series.
//!
//! The theta-form theorems are verified in the dual-nome variable
//! (`t^m = P`, the nome of tau'): every theta factor expands through
//! [`theta1_formal`] and its u-free companions, and the multiplication
//! constants enter through their own theta closed forms (the content of the
//! eta-quotient lemmas), so each proof is a self-contained series identity.
//! Statements with a constant are cross-multiplied first, which keeps both
//! sides polynomial in the ingredient series — no reciprocals, no branch
//! choices, and the `sqrt(2)` carried by `theta_1(pi/4|.)` only ever appears
//! squared.
//!
//! The eta-quotient lemmas themselves relate dual-nome theta ratios to
//! q-products; that bridge is transcendental, so their formal content is the
//! paper's reduced single-nome product identity (`t^m = q`): the transformed
//! ratio closed forms on one side, the `Pi_q` definitions on the other.
//!
//! A proof certifies finitely many coefficients: reports state "verified
//! through t^N", nothing more.

use serde::Serialize;

use super::coeff::{format_gauss, gauss, rat};
use super::series::{first_mismatch, NomeSeries};
use super::theta::{
    pi_q_formal, qpoch_formal, theta1_formal, theta1_pi2_formal, theta1_pi4_formal,
    theta1_prime0_formal,
};
use crate::catalog::{find, Mutation};
use crate::error::{Error, Result};

/// Outcome of a formal proof attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofOutcome {
    /// All coefficients through the order agree.
    Verified,
    /// A coefficient mismatch was found.
    Refuted,
    /// Both sides vanish through the order; nothing was tested.
    Inconclusive,
}

/// Lowest differing coefficient of a refuted identity.
#[derive(Debug, Clone, Serialize)]
pub struct MismatchReport {
    pub t_exp: i64,
    pub u_exp: i64,
    pub lhs_coeff: String,
    pub rhs_coeff: String,
}

/// Result of [`prove`]: `verified` iff every coefficient of both sides
/// agrees through `t^order`.
#[derive(Debug, Clone, Serialize)]
pub struct ProofReport {
    pub id: String,
    pub verified: bool,
    pub order: i64,
    pub root_m: u32,
    pub outcome: ProofOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<MismatchReport>,
}

struct Builder {
    m: u32,
    n: i64,
}

impl Builder {
    /// theta_1(a z + s pi/2 | sigma/k)
    fn th(&self, a: u32, s: u8, k: u32) -> Result<NomeSeries> {
        theta1_formal(a, s, k, self.m, self.n)
    }

    /// theta_1(pi/2 | sigma/k)
    fn p2(&self, k: u32) -> Result<NomeSeries> {
        theta1_pi2_formal(k, self.m, self.n)
    }

    /// theta_1'(0 | sigma/k)
    fn p0(&self, k: u32) -> Result<NomeSeries> {
        theta1_prime0_formal(k, self.m, self.n)
    }

    /// S with theta_1(pi/4 | sigma/k) = sqrt(2) S
    fn s4(&self, k: u32) -> Result<NomeSeries> {
        theta1_pi4_formal(k, self.m, self.n)
    }

    /// (q^j; q^s)_inf in the q-variable
    fn pe(&self, j: i64, s: i64) -> Result<NomeSeries> {
        qpoch_formal(j, s, self.m, self.n)
    }

    fn int(&self, v: i64) -> NomeSeries {
        NomeSeries::one(self.m, self.n).scale(&gauss(v, 0), 0)
    }
}

fn mul_all(factors: &[&NomeSeries]) -> Result<NomeSeries> {
    let mut it = factors.iter();
    let mut acc = (*it.next().expect("nonempty factor list")).clone();
    for f in it {
        acc = acc.mul(f)?;
    }
    Ok(acc)
}

/// Assemble the two sides of a formal identity at working order `n_work`
/// (cross-multiplied when the statement carries a constant).
pub(crate) fn assemble_sides(
    id: &str,
    m: u32,
    n_work: i64,
    mutation: Option<Mutation>,
) -> Result<(NomeSeries, NomeSeries)> {
    let b = Builder { m, n: n_work };
    if let Some(mu) = mutation {
        let applies = matches!(
            (id, mu),
            ("thm-2.1", Mutation::HalfToThird)
                | ("help-2-3", Mutation::PiExponentNineToEight)
                | ("thm-2.3", Mutation::SignFlipTheorem23)
        );
        if !applies {
            return Err(Error::UnknownIdentity {
                id: format!("{id} with formal mutation {mu:?}"),
            });
        }
    }
    match id {
        "help-0" => {
            // theta(2z+pi/2|s) theta(pi/2|s/2)^2
            //   = theta(pi/2|s) theta(z+pi/2|s/2)^2 - theta(pi/2|s) theta(z|s/2)^2
            let lhs = b.th(2, 1, 1)?.mul(&b.p2(2)?.pow(2)?)?;
            let rhs = b
                .p2(1)?
                .mul(&b.th(1, 1, 2)?.pow(2)?)?
                .sub(&b.p2(1)?.mul(&b.th(1, 0, 2)?.pow(2)?)?)?;
            Ok((lhs, rhs))
        }
        "help" => {
            // theta(z|s/2) theta(z+pi/2|s/2) theta(pi/2|s) = theta(2z|s) * 2 S^2
            let lhs = mul_all(&[&b.th(1, 0, 2)?, &b.th(1, 1, 2)?, &b.p2(1)?])?;
            let rhs = b
                .th(2, 0, 1)?
                .mul(&b.s4(2)?.pow(2)?)?
                .scale(&gauss(2, 0), 0);
            Ok((lhs, rhs))
        }
        "thm-2.1" => {
            // cross-multiplied by theta'(0|s/4)^2 theta^4(pi/4|s/2) = P0(4)^2 4 S^4:
            // lhs' = TH(2z|s)^2 P2(2)^4 P2(4)^2 * P0(4)^2 * 4 S(2)^4
            // rhs' = P0(2)^2 P2(2)^2 P2(4)^2
            //        * [TH(z|s/4)^2 P2(2)^4 P2(1)^2 - TH(z|s/2)^4 P2(4)^2 P2(1)^2]
            let lhs = mul_all(&[
                &b.th(2, 0, 1)?.pow(2)?,
                &b.p2(2)?.pow(4)?,
                &b.p2(4)?.pow(2)?,
                &b.p0(4)?.pow(2)?,
                &b.s4(2)?.pow(4)?.scale(&gauss(4, 0), 0),
            ])?;
            let bracket = mul_all(&[&b.th(1, 0, 4)?.pow(2)?, &b.p2(2)?.pow(4)?, &b.p2(1)?.pow(2)?])?
                .sub(&mul_all(&[
                    &b.th(1, 0, 2)?.pow(4)?,
                    &b.p2(4)?.pow(2)?,
                    &b.p2(1)?.pow(2)?,
                ])?)?;
            let mut rhs = mul_all(&[
                &b.p0(2)?.pow(2)?,
                &b.p2(2)?.pow(2)?,
                &b.p2(4)?.pow(2)?,
                &bracket,
            ])?;
            if mutation == Some(Mutation::HalfToThird) {
                // K = (1/2) ratio becomes (1/3) ratio: K^2 scales by 4/9
                rhs = rhs.scale(&super::coeff::gauss_rat(rat(4, 9), rat(0, 1)), 0);
            }
            Ok((lhs, rhs))
        }
        "thm-2.2" => {
            // A = 3 P0(1) P2(9) / (P0(9) P2(1)); cross-multiplied by P0(9) P2(1):
            // lhs' = TH(3z|s) P2(3)^3 P2(9) P0(9) P2(1)
            // rhs' = 3 P0(1) P2(9) TH(z|s/9) P2(1) P2(3)^3
            //        - [3 P0(1) P2(9) + P0(9) P2(1)] TH(z|s/3)^3 P2(1) P2(9)
            let lhs = mul_all(&[
                &b.th(3, 0, 1)?,
                &b.p2(3)?.pow(3)?,
                &b.p2(9)?,
                &b.p0(9)?,
                &b.p2(1)?,
            ])?;
            let a_num = b.p0(1)?.mul(&b.p2(9)?)?.scale(&gauss(3, 0), 0);
            let a_den = b.p0(9)?.mul(&b.p2(1)?)?;
            let first = mul_all(&[&a_num, &b.th(1, 0, 9)?, &b.p2(1)?, &b.p2(3)?.pow(3)?])?;
            let second = mul_all(&[
                &a_num.add(&a_den)?,
                &b.th(1, 0, 3)?.pow(3)?,
                &b.p2(1)?,
                &b.p2(9)?,
            ])?;
            Ok((lhs, first.sub(&second)?))
        }
        "thm-2.3" => {
            // constant Pi_q/Pi_{q^3} = 3 P0(1) P2(3) / (P0(3) P2(1));
            // cross-multiplied by P0(3) P2(1):
            // lhs' = [TH(3z|s) P2(3)^3 + TH(z|s/3)^3 P2(1)] P0(3) P2(1)
            // rhs' = 3 P0(1) P2(3) TH(z|s/3) TH(z+pi/2|s/3)^2 P2(1)
            let sign = if mutation == Some(Mutation::SignFlipTheorem23) {
                b.int(-1)
            } else {
                b.int(1)
            };
            let sum = b
                .th(3, 0, 1)?
                .mul(&b.p2(3)?.pow(3)?)?
                .add(&mul_all(&[&sign, &b.th(1, 0, 3)?.pow(3)?, &b.p2(1)?])?)?;
            let lhs = mul_all(&[&sum, &b.p0(3)?, &b.p2(1)?])?;
            let rhs = mul_all(&[
                &b.p0(1)?.scale(&gauss(3, 0), 0),
                &b.p2(3)?,
                &b.th(1, 0, 3)?,
                &b.th(1, 1, 3)?.pow(2)?,
                &b.p2(1)?,
            ])?;
            Ok((lhs, rhs))
        }
        "help-2-0" => {
            // 4 P2(3)^3 TH(3z|s) + 4 TH(z|s/3)^3 P2(1)   [theta(3pi/2|s) = -theta(pi/2|s)]
            //   = 12 (P0(1)/P0(3)) TH(z|s/3) TH(z+pi/2|s/3)^2 P2(3); cross-mult by P0(3)
            let sum = b
                .th(3, 0, 1)?
                .mul(&b.p2(3)?.pow(3)?)?
                .add(&b.th(1, 0, 3)?.pow(3)?.mul(&b.p2(1)?)?)?
                .scale(&gauss(4, 0), 0);
            let lhs = sum.mul(&b.p0(3)?)?;
            let rhs = mul_all(&[
                &b.p0(1)?.scale(&gauss(12, 0), 0),
                &b.th(1, 0, 3)?,
                &b.th(1, 1, 3)?.pow(2)?,
                &b.p2(3)?,
            ])?;
            Ok((lhs, rhs))
        }
        "help-2-1" => {
            // help-2-0 divided by 4 and multiplied through by P2(9); cross-mult by P0(3)
            let sum = b
                .th(3, 0, 1)?
                .mul(&b.p2(3)?.pow(3)?)?
                .mul(&b.p2(9)?)?
                .add(&mul_all(&[&b.th(1, 0, 3)?.pow(3)?, &b.p2(1)?, &b.p2(9)?])?)?;
            let lhs = sum.mul(&b.p0(3)?)?;
            let rhs = mul_all(&[
                &b.p0(1)?.scale(&gauss(3, 0), 0),
                &b.th(1, 0, 3)?,
                &b.th(1, 1, 3)?.pow(2)?,
                &b.p2(3)?,
                &b.p2(9)?,
            ])?;
            Ok((lhs, rhs))
        }
        "help-2-2" => {
            // A [TH(z|s/9) P2(3)^3 - TH(z|s/3)^3 P2(9)]
            //   = A (P0(9)/P0(3)) TH(z|s/3) TH(z+pi/2|s/3)^2 P2(3)
            // with A = 3 P0(1) P2(9) / (P0(9) P2(1)); multiplied by P0(9) P2(1) P0(3):
            let a_num = b.p0(1)?.mul(&b.p2(9)?)?.scale(&gauss(3, 0), 0);
            let bracket = b
                .th(1, 0, 9)?
                .mul(&b.p2(3)?.pow(3)?)?
                .sub(&b.th(1, 0, 3)?.pow(3)?.mul(&b.p2(9)?)?)?;
            let lhs = mul_all(&[&a_num, &bracket, &b.p0(3)?])?;
            let rhs = mul_all(&[
                &a_num,
                &b.p0(9)?,
                &b.th(1, 0, 3)?,
                &b.th(1, 1, 3)?.pow(2)?,
                &b.p2(3)?,
            ])?;
            Ok((lhs, rhs))
        }
        // eta-quotient lemmas: reduced single-nome product identities, t^m = q
        "help-1-3" => {
            // transformed ratio route:
            //   (1/8) q^{-1} (q^4;q^4)^6/(q^8;q^8)^6
            // * q^{-1/4} (q^2;q^4)^4/(q;q^2)^2
            // * 2 q^{-1/4} (q^4;q^8)^4 (q^8;q^8)^2 / ((q;q^2)^2 (q^4;q^4)^2)
            // against (1/2 Pi_q/Pi_{q^4})^2 from the Pi definitions.
            let mi = m as i64;
            let ratio3 = b
                .pe(4, 4)?
                .pow(6)?
                .mul(&b.pe(8, 8)?.pow(6)?.recip()?)?
                .scale(&super::coeff::gauss_rat(rat(1, 8), rat(0, 1)), -mi);
            let ratio1 = b
                .pe(2, 4)?
                .pow(4)?
                .mul(&b.pe(1, 2)?.pow(2)?.recip()?)?
                .scale(&gauss(1, 0), -mi / 4);
            let ratio2 = mul_all(&[
                &b.pe(4, 8)?.pow(4)?,
                &b.pe(8, 8)?.pow(2)?,
                &b.pe(1, 2)?.pow(2)?.mul(&b.pe(4, 4)?.pow(2)?)?.recip()?,
            ])?
            .scale(&gauss(2, 0), -mi / 4);
            let lhs = mul_all(&[&ratio3, &ratio1, &ratio2])?;
            let rhs = super::theta::constant_formal(
                super::theta::FormalConstant::HalfPiQOverPiQ4,
                m,
                n_work,
            )?
            .pow(2)?;
            Ok((lhs, rhs))
        }
        "help-2-3" => {
            // 9 * (1/27) q^{-2} (q^2;q^2)^3/(q^18;q^18)^3
            //   * 3 (q^9;q^18)^2 (q^18;q^18) / ((q;q^2)^2 (q^2;q^2))  =  Pi_q/Pi_{q^9}
            let mi = m as i64;
            let ratio_b = b
                .pe(2, 2)?
                .pow(3)?
                .mul(&b.pe(18, 18)?.pow(3)?.recip()?)?
                .scale(&super::coeff::gauss_rat(rat(1, 27), rat(0, 1)), -2 * mi);
            let ratio_t = mul_all(&[
                &b.pe(9, 18)?.pow(2)?,
                &b.pe(18, 18)?,
                &b.pe(1, 2)?.pow(2)?.mul(&b.pe(2, 2)?)?.recip()?,
            ])?
            .scale(&gauss(3, 0), 0);
            let lhs = ratio_b.mul(&ratio_t)?.scale(&gauss(9, 0), 0);
            let k = if mutation == Some(Mutation::PiExponentNineToEight) {
                8
            } else {
                9
            };
            let rhs = pi_q_formal(1, m, n_work)?.mul(&pi_q_formal(k, m, n_work)?.recip()?)?;
            Ok((lhs, rhs))
        }
        "help-3-1" => {
            // 3 * (1/(3 sqrt3)) q^{-1/2} (q^2;q^2)^3/(q^6;q^6)^3
            //   * sqrt3 (q^3;q^6)^2 (q^6;q^6) / ((q;q^2)^2 (q^2;q^2))  =  Pi_q/Pi_{q^3};
            // the sqrt3 factors cancel exactly, leaving the rational scalar 1.
            let mi = m as i64;
            let ratio_b = b
                .pe(2, 2)?
                .pow(3)?
                .mul(&b.pe(6, 6)?.pow(3)?.recip()?)?
                .scale(&gauss(1, 0), -mi / 2);
            let ratio_t = mul_all(&[
                &b.pe(3, 6)?.pow(2)?,
                &b.pe(6, 6)?,
                &b.pe(1, 2)?.pow(2)?.mul(&b.pe(2, 2)?)?.recip()?,
            ])?;
            let lhs = ratio_b.mul(&ratio_t)?;
            let rhs = pi_q_formal(1, m, n_work)?.mul(&pi_q_formal(3, m, n_work)?.recip()?)?;
            Ok((lhs, rhs))
        }
        "Cq" => {
            // q^{-1/4} (q^2;q^4)^4 / (q;q^2)^2 = Pi_q/Pi_{q^2}
            let mi = m as i64;
            let lhs = b
                .pe(2, 4)?
                .pow(4)?
                .mul(&b.pe(1, 2)?.pow(2)?.recip()?)?
                .scale(&gauss(1, 0), -mi / 4);
            let rhs = pi_q_formal(1, m, n_work)?.mul(&pi_q_formal(2, m, n_work)?.recip()?)?;
            Ok((lhs, rhs))
        }
        other => Err(Error::NotFormalCapable {
            id: other.to_owned(),
        }),
    }
}

fn prove_inner(id: &str, order: Option<i64>, mutation: Option<Mutation>) -> Result<ProofReport> {
    let desc = find(id)?;
    let formal = desc.formal.ok_or_else(|| Error::NotFormalCapable {
        id: id.to_owned(),
    })?;
    let order = order.unwrap_or(formal.default_order);
    // slack absorbs the negative prefactor shifts and reciprocals of the
    // eta-lemma assemblies; theorem assemblies only gain order
    let n_work = order + 2 * formal.root_m as i64;
    let (lhs, rhs) = assemble_sides(id, formal.root_m, n_work, mutation)?;
    assert!(
        lhs.order() >= order && rhs.order() >= order,
        "assembly of {id} lost exactness: lhs through {}, rhs through {}, need {order}",
        lhs.order(),
        rhs.order(),
    );

    let mismatch = first_mismatch(&lhs, &rhs, order)?;
    let nontrivial = lhs.leading_exponent().is_some_and(|e| e <= order)
        || rhs.leading_exponent().is_some_and(|e| e <= order);
    let (outcome, first) = match mismatch {
        Some((t_exp, u_exp, a, b)) => (
            ProofOutcome::Refuted,
            Some(MismatchReport {
                t_exp,
                u_exp,
                lhs_coeff: format_gauss(&a),
                rhs_coeff: format_gauss(&b),
            }),
        ),
        None if nontrivial => (ProofOutcome::Verified, None),
        None => (ProofOutcome::Inconclusive, None),
    };
    Ok(ProofReport {
        id: id.to_owned(),
        verified: outcome == ProofOutcome::Verified,
        order,
        root_m: formal.root_m,
        outcome,
        first_mismatch: first,
    })
}

/// Prove a formal-capable identity through `t^order` (default: the
/// catalog's per-identity order). `verified = true` means every coefficient
/// of both sides agrees exactly through that order.
pub fn prove(id: &str, order: Option<i64>) -> Result<ProofReport> {
    prove_inner(id, order, None)
}

/// [`prove`] with one constant deliberately corrupted; used by the
/// mutation-sensitivity tests.
pub fn prove_mutated(id: &str, mutation: Mutation, order: Option<i64>) -> Result<ProofReport> {
    prove_inner(id, order, Some(mutation))
}
