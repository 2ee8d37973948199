//! Machine-readable registry of the multiplication-formula identities, with
//! numeric residual evaluation, seeded grid sweeps, the finite-difference
//! check of the addition-theorem constant, and eta-quotient checks.
//!
//! Identity ids are stable across releases:
//!
//! | id            | statement                                                    |
//! |---------------|--------------------------------------------------------------|
//! | `q-Double`    | double-angle sine, square-root form (verified squared)       |
//! | `q-Double2`   | `sin_q(2z) = (Pi_q/Pi_{q^2}) sin_{q^2} z cos_{q^2} z`        |
//! | `q-Double3`   | `cos_q(2z) = cos_{q^2}^2 z - sin_{q^2}^2 z`                  |
//! | `q-Double4`   | double-angle square-root form in cosines (verified squared)  |
//! | `q-Double5`   | `cos_q(2z) = cos_q^4 z - sin_q^4 z`                          |
//! | `q-Triple`    | triple-angle form with `Pi_q/Pi_{q^9}`                       |
//! | `q-Triple2`   | triple-angle form with `Pi_q/Pi_{q^3}`                       |
//! | `ratio`       | `sin_q(2z) / (sin_{q^2} z cos_{q^2} z)` is independent of z  |
//! | `help-0`      | three-term theta form of `q-Double3`                          |
//! | `help`        | three-term theta form of `q-Double2`                          |
//! | `thm-2.1`     | squared theta addition form of `q-Double`                     |
//! | `thm-2.2`     | theta addition form of `q-Triple`                             |
//! | `thm-2.3`     | theta addition form of `q-Triple2`                            |
//! | `help-1-1`    | quartic theta identity behind `thm-2.1`                       |
//! | `help-2-0`    | addition-theorem instance (k=3, l=1) at x = pi/2              |
//! | `help-2-1`    | `help-2-0` rescaled by `theta_1(pi/2 | tau'/9)`               |
//! | `help-2-2`    | addition-theorem instance with `tau'/9`                       |
//! | `help-1-3`    | eta quotient evaluating `(Pi_q/Pi_{q^4})^2 / 4`               |
//! | `help-2-3`    | eta quotient evaluating `Pi_q/Pi_{q^9}`                       |
//! | `help-3-1`    | eta quotient evaluating `Pi_q/Pi_{q^3}`                       |
//! | `Cq`          | closed form of the double-angle constant `C(q)`               |
//!
//! Left and right sides are computed strictly through the public `theta` and
//! `qtrig` operations, with no sub-evaluations shared between the two sides,
//! so small residuals are evidence rather than tautology.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::policy::TruncationPolicy;
use crate::qtrig::{cos_q, pi_q, sin_q, QParameter};
use crate::report::ComplexField;
use crate::theta::{theta1_prime0_series, theta1_series, ModularPoint};

const PI: f64 = std::f64::consts::PI;

/// Which variables an identity depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variables {
    /// Depends on z and the nome.
    WithZ,
    /// Depends on the nome only.
    NomeOnly,
}

/// Verification modes supported by an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modes {
    pub numeric: bool,
    pub formal: bool,
}

/// Root and default order for the formal prover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalSpec {
    /// `t^root` equals the nome of the identity's formal statement.
    pub root_m: u32,
    /// Default truncation exponent for `prove`.
    pub default_order: i64,
}

/// Catalog entry binding an identity id to its evaluators and metadata.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    /// Anchor describing what the identity states.
    pub statement_ref: &'static str,
    pub variables: Variables,
    /// True when both sides are squared before comparison (the square-root
    /// identities); the unsquared branch is checked by [`sqrt_branch_check`].
    pub squared_form: bool,
    pub modes: Modes,
    pub formal: Option<FormalSpec>,
    /// Divides by sin/cos factors, so sweeps exclude z near {0, pi/2, pi}.
    pub divides_by_trig: bool,
}

/// One residual measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub z: ComplexField,
    pub nome: ComplexField,
    pub lhs: ComplexField,
    pub rhs: ComplexField,
    pub abs_err: f64,
    pub rel_err: f64,
}

impl ResidualRecord {
    fn new(z: Complex64, nome: Complex64, lhs: Complex64, rhs: Complex64) -> Self {
        let abs_err = (lhs - rhs).norm();
        Self {
            z: ComplexField(z),
            nome: ComplexField(nome),
            lhs: ComplexField(lhs),
            rhs: ComplexField(rhs),
            abs_err,
            rel_err: abs_err / 1f64.max(lhs.norm()).max(rhs.norm()),
        }
    }
}

/// Aggregated result of sweeping one identity over a grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub id: String,
    pub grid: GridSpec,
    pub max_rel_err: f64,
    pub worst: Option<ResidualRecord>,
    pub pass: bool,
    /// Set when an evaluation failed outright; the sweep is marked failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Deliberate single-constant corruptions used by the mutation-sensitivity
/// tests; each must make both the numeric sweep and the formal proof fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// `1/2 -> 1/3` in the `thm-2.1` constant.
    HalfToThird,
    /// `Pi_q/Pi_{q^9} -> Pi_q/Pi_{q^8}` (q-Triple, thm-2.2, help-2-3).
    PiExponentNineToEight,
    /// Sign flip of the second LHS term of `thm-2.3`.
    SignFlipTheorem23,
}

/// The full identity registry (21 entries, stable order).
pub fn catalog() -> Vec<IdentityDescriptor> {
    fn entry(
        id: &'static str,
        statement_ref: &'static str,
        variables: Variables,
        squared_form: bool,
        formal: Option<FormalSpec>,
        divides_by_trig: bool,
    ) -> IdentityDescriptor {
        IdentityDescriptor {
            id,
            statement_ref,
            variables,
            squared_form,
            modes: Modes {
                numeric: true,
                formal: formal.is_some(),
            },
            formal,
            divides_by_trig,
        }
    }
    let f = |m, n| {
        Some(FormalSpec {
            root_m: m,
            default_order: n,
        })
    };
    vec![
        entry("q-Double", "sin_q(2z) as a square root of sin_{q^4}/sin_{q^2} squares", Variables::WithZ, true, None, false),
        entry("q-Double2", "sin_q(2z) = (Pi_q/Pi_{q^2}) sin_{q^2}(z) cos_{q^2}(z)", Variables::WithZ, false, None, false),
        entry("q-Double3", "cos_q(2z) = cos_{q^2}(z)^2 - sin_{q^2}(z)^2", Variables::WithZ, false, None, false),
        entry("q-Double4", "sin_q(2z) as a square root of cos_{q^4}/cos_{q^2} squares", Variables::WithZ, true, None, false),
        entry("q-Double5", "cos_q(2z) = cos_q(z)^4 - sin_q(z)^4", Variables::WithZ, false, None, false),
        entry("q-Triple", "sin_q(3z) via sin_{q^9} and sin_{q^3}^3 with Pi_q/Pi_{q^9}", Variables::WithZ, false, None, false),
        entry("q-Triple2", "sin_q(3z) via cos_{q^3}^2 sin_{q^3} with Pi_q/Pi_{q^3}", Variables::WithZ, false, None, false),
        entry("ratio", "sin_q(2z)/(sin_{q^2} z cos_{q^2} z) equals the z-free constant C(q)", Variables::WithZ, false, None, true),
        entry("help-0", "three-term theta form of q-Double3", Variables::WithZ, false, f(8, 160), false),
        entry("help", "three-term theta form of q-Double2", Variables::WithZ, false, f(8, 160), false),
        entry("thm-2.1", "squared theta addition form of q-Double", Variables::WithZ, false, f(16, 200), false),
        entry("thm-2.2", "theta addition form of q-Triple", Variables::WithZ, false, f(36, 360), false),
        entry("thm-2.3", "theta addition form of q-Triple2", Variables::WithZ, false, f(12, 200), false),
        entry("help-1-1", "quartic theta identity behind thm-2.1", Variables::WithZ, false, None, false),
        entry("help-2-0", "addition-theorem instance k=3, l=1 specialized at x = pi/2", Variables::WithZ, false, f(12, 200), false),
        entry("help-2-1", "help-2-0 rescaled by theta1(pi/2|tau'/9)", Variables::WithZ, false, f(36, 360), false),
        entry("help-2-2", "addition-theorem instance pairing tau'/3 with tau'/9", Variables::WithZ, false, f(36, 360), false),
        entry("help-1-3", "eta quotient: theta ratios equal (Pi_q/Pi_{q^4})^2/4", Variables::NomeOnly, false, f(4, 160), false),
        entry("help-2-3", "eta quotient: theta ratios equal Pi_q/Pi_{q^9}", Variables::NomeOnly, false, f(4, 160), false),
        entry("help-3-1", "eta quotient: theta ratios equal Pi_q/Pi_{q^3}", Variables::NomeOnly, false, f(4, 160), false),
        entry("Cq", "closed form of the double-angle constant C(q)", Variables::NomeOnly, false, f(4, 160), false),
    ]
}

/// Look up one descriptor by id.
pub fn find(id: &str) -> Result<IdentityDescriptor> {
    catalog()
        .into_iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownIdentity { id: id.to_owned() })
}

// ---------------------------------------------------------------------------
// side evaluators
// ---------------------------------------------------------------------------

/// `theta_1(x | tau'/k)` with tau' the dual of the q-parameter.
fn th(x: Complex64, qp: &QParameter, k: u32, policy: &TruncationPolicy) -> Result<Complex64> {
    let m = ModularPoint::new(qp.tau_dual() / k as f64)?;
    theta1_series(x, &m, policy)
}

/// `theta_1'(0 | tau'/k)` from the differentiated series.
fn thp(qp: &QParameter, k: u32, policy: &TruncationPolicy) -> Result<Complex64> {
    let m = ModularPoint::new(qp.tau_dual() / k as f64)?;
    theta1_prime0_series(&m, policy)
}

/// `Pi_q / Pi_{q^k}`.
fn pi_ratio(qp: &QParameter, k: u32, policy: &TruncationPolicy) -> Result<Complex64> {
    Ok(pi_q(qp, policy)? / pi_q(&qp.power(k)?, policy)?)
}

/// `sin_{q^k}(z)` and `cos_{q^k}(z)`.
fn sq(z: Complex64, qp: &QParameter, k: u32, policy: &TruncationPolicy) -> Result<Complex64> {
    sin_q(z, &qp.power(k)?, policy)
}

fn cq(z: Complex64, qp: &QParameter, k: u32, policy: &TruncationPolicy) -> Result<Complex64> {
    cos_q(z, &qp.power(k)?, policy)
}

fn pow2(v: Complex64) -> Complex64 {
    v * v
}

fn pow3(v: Complex64) -> Complex64 {
    v * v * v
}

fn pow4(v: Complex64) -> Complex64 {
    pow2(v) * pow2(v)
}

/// Compute (lhs, rhs) of an identity at one point, optionally mutated.
fn eval_pair(
    id: &str,
    mutation: Option<Mutation>,
    z: Complex64,
    qp: &QParameter,
    policy: &TruncationPolicy,
) -> Result<(Complex64, Complex64)> {
    let pi2 = Complex64::new(PI / 2.0, 0.0);
    let pi4 = Complex64::new(PI / 4.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    if let Some(m) = mutation {
        let applies = matches!(
            (id, m),
            ("thm-2.1", Mutation::HalfToThird)
                | ("thm-2.2", Mutation::PiExponentNineToEight)
                | ("q-Triple", Mutation::PiExponentNineToEight)
                | ("help-2-3", Mutation::PiExponentNineToEight)
                | ("thm-2.3", Mutation::SignFlipTheorem23)
        );
        if !applies {
            return Err(Error::UnknownIdentity {
                id: format!("{id} with mutation {m:?}"),
            });
        }
    }
    // constants corrupted by the mutation tests
    let nine = if mutation == Some(Mutation::PiExponentNineToEight) {
        8
    } else {
        9
    };
    let half = if mutation == Some(Mutation::HalfToThird) {
        1.0 / 3.0
    } else {
        0.5
    };
    let lhs_sign = if mutation == Some(Mutation::SignFlipTheorem23) {
        -1.0
    } else {
        1.0
    };

    match id {
        "q-Double" => {
            let lhs = pow2(sin_q(2.0 * z, qp, policy)?);
            let r = pi_ratio(qp, 4, policy)? * 0.5;
            let rhs = r * r * (pow2(sq(z, qp, 4, policy)?) - pow4(sq(z, qp, 2, policy)?));
            Ok((lhs, rhs))
        }
        "q-Double2" => {
            let lhs = sin_q(2.0 * z, qp, policy)?;
            let rhs = pi_ratio(qp, 2, policy)? * sq(z, qp, 2, policy)? * cq(z, qp, 2, policy)?;
            Ok((lhs, rhs))
        }
        "q-Double3" => {
            let lhs = cos_q(2.0 * z, qp, policy)?;
            let rhs = pow2(cq(z, qp, 2, policy)?) - pow2(sq(z, qp, 2, policy)?);
            Ok((lhs, rhs))
        }
        "q-Double4" => {
            let lhs = pow2(sin_q(2.0 * z, qp, policy)?);
            let r = pi_ratio(qp, 4, policy)? * 0.5;
            let rhs = r * r * (pow2(cq(z, qp, 4, policy)?) - pow4(cq(z, qp, 2, policy)?));
            Ok((lhs, rhs))
        }
        "q-Double5" => {
            let lhs = cos_q(2.0 * z, qp, policy)?;
            let rhs = pow4(cos_q(z, qp, policy)?) - pow4(sin_q(z, qp, policy)?);
            Ok((lhs, rhs))
        }
        "q-Triple" => {
            let lhs = sin_q(3.0 * z, qp, policy)?;
            let a = pi_ratio(qp, nine, policy)? / 3.0;
            let rhs = a * sq(z, qp, 9, policy)? - (one + a) * pow3(sq(z, qp, 3, policy)?);
            Ok((lhs, rhs))
        }
        "q-Triple2" => {
            let lhs = sin_q(3.0 * z, qp, policy)?;
            let rhs = pi_ratio(qp, 3, policy)? * pow2(cq(z, qp, 3, policy)?) * sq(z, qp, 3, policy)?
                - pow3(sq(z, qp, 3, policy)?);
            Ok((lhs, rhs))
        }
        "ratio" => {
            let lhs =
                sin_q(2.0 * z, qp, policy)? / (sq(z, qp, 2, policy)? * cq(z, qp, 2, policy)?);
            let rhs = pow2(th(pi2, qp, 2, policy)?) / pow2(th(pi4, qp, 2, policy)?);
            Ok((lhs, rhs))
        }
        "help-0" => {
            let lhs = th(2.0 * z + pi2, qp, 1, policy)? * pow2(th(pi2, qp, 2, policy)?);
            let rhs = th(pi2, qp, 1, policy)? * pow2(th(z + pi2, qp, 2, policy)?)
                - th(pi2, qp, 1, policy)? * pow2(th(z, qp, 2, policy)?);
            Ok((lhs, rhs))
        }
        "help" => {
            let lhs =
                th(z, qp, 2, policy)? * th(z + pi2, qp, 2, policy)? * th(pi2, qp, 1, policy)?;
            let rhs = th(2.0 * z, qp, 1, policy)? * pow2(th(pi4, qp, 2, policy)?);
            Ok((lhs, rhs))
        }
        "thm-2.1" => {
            let lhs = pow2(th(2.0 * z, qp, 1, policy)?)
                * pow4(th(pi2, qp, 2, policy)?)
                * pow2(th(pi2, qp, 4, policy)?);
            let k = pi_ratio(qp, 4, policy)? * half;
            let rhs = k
                * k
                * (pow2(th(z, qp, 4, policy)?)
                    * pow4(th(pi2, qp, 2, policy)?)
                    * pow2(th(pi2, qp, 1, policy)?)
                    - pow4(th(z, qp, 2, policy)?)
                        * pow2(th(pi2, qp, 4, policy)?)
                        * pow2(th(pi2, qp, 1, policy)?));
            Ok((lhs, rhs))
        }
        "thm-2.2" => {
            let lhs = th(3.0 * z, qp, 1, policy)?
                * pow3(th(pi2, qp, 3, policy)?)
                * th(pi2, qp, 9, policy)?;
            let a = pi_ratio(qp, nine, policy)? / 3.0;
            let rhs = a
                * th(z, qp, 9, policy)?
                * th(pi2, qp, 1, policy)?
                * pow3(th(pi2, qp, 3, policy)?)
                - (a + one)
                    * pow3(th(z, qp, 3, policy)?)
                    * th(pi2, qp, 1, policy)?
                    * th(pi2, qp, 9, policy)?;
            Ok((lhs, rhs))
        }
        "thm-2.3" => {
            let lhs = th(3.0 * z, qp, 1, policy)? * pow3(th(pi2, qp, 3, policy)?)
                + lhs_sign * pow3(th(z, qp, 3, policy)?) * th(pi2, qp, 1, policy)?;
            let rhs = pi_ratio(qp, 3, policy)?
                * th(z, qp, 3, policy)?
                * pow2(th(z + pi2, qp, 3, policy)?)
                * th(pi2, qp, 1, policy)?;
            Ok((lhs, rhs))
        }
        "help-1-1" => {
            let lhs = pow2(th(z, qp, 2, policy)?) * pow2(th(z + pi2, qp, 2, policy)?);
            let rd = thp(qp, 2, policy)? / thp(qp, 4, policy)?;
            let ratio = th(pi2, qp, 4, policy)? / th(pi2, qp, 2, policy)?;
            let rhs = rd * rd * pow2(th(pi2, qp, 2, policy)?) * pow2(th(z, qp, 4, policy)?)
                - rd * rd * ratio * ratio * pow4(th(z, qp, 2, policy)?);
            Ok((lhs, rhs))
        }
        "help-2-0" => {
            let lhs = 4.0 * pow3(th(pi2, qp, 3, policy)?) * th(3.0 * z, qp, 1, policy)?
                - 4.0 * pow3(th(z, qp, 3, policy)?) * th(3.0 * pi2, qp, 1, policy)?;
            let rp = thp(qp, 1, policy)? / thp(qp, 3, policy)?;
            let rhs = 12.0
                * rp
                * th(z, qp, 3, policy)?
                * th(pi2 + z, qp, 3, policy)?
                * th(pi2 - z, qp, 3, policy)?
                * th(pi2, qp, 3, policy)?;
            Ok((lhs, rhs))
        }
        "help-2-1" => {
            let lhs = th(3.0 * z, qp, 1, policy)?
                * pow3(th(pi2, qp, 3, policy)?)
                * th(pi2, qp, 9, policy)?
                + pow3(th(z, qp, 3, policy)?) * th(pi2, qp, 1, policy)? * th(pi2, qp, 9, policy)?;
            let rp = thp(qp, 1, policy)? / thp(qp, 3, policy)?;
            let rhs = 3.0
                * rp
                * th(z, qp, 3, policy)?
                * pow2(th(z + pi2, qp, 3, policy)?)
                * th(pi2, qp, 3, policy)?
                * th(pi2, qp, 9, policy)?;
            Ok((lhs, rhs))
        }
        "help-2-2" => {
            let a = pi_ratio(qp, 9, policy)? / 3.0;
            let lhs = a
                * (th(z, qp, 9, policy)? * pow3(th(pi2, qp, 3, policy)?)
                    - pow3(th(z, qp, 3, policy)?) * th(pi2, qp, 9, policy)?);
            let rhs = a
                * (thp(qp, 9, policy)? / thp(qp, 3, policy)?)
                * th(z, qp, 3, policy)?
                * pow2(th(z + pi2, qp, 3, policy)?)
                * th(pi2, qp, 3, policy)?;
            Ok((lhs, rhs))
        }
        "help-1-3" => {
            let rd = thp(qp, 2, policy)? / thp(qp, 4, policy)?;
            let lhs = rd * rd * pow2(th(pi2, qp, 2, policy)?) * pow2(th(pi2, qp, 4, policy)?)
                / pow4(th(pi4, qp, 2, policy)?);
            let r = pi_ratio(qp, 4, policy)?;
            Ok((lhs, r * r * 0.25))
        }
        "help-2-3" => {
            let lhs = 9.0 * (thp(qp, 1, policy)? / thp(qp, 9, policy)?)
                * (th(pi2, qp, 9, policy)? / th(pi2, qp, 1, policy)?);
            Ok((lhs, pi_ratio(qp, nine, policy)?))
        }
        "help-3-1" => {
            let lhs = 3.0 * (thp(qp, 1, policy)? / thp(qp, 3, policy)?)
                * (th(pi2, qp, 3, policy)? / th(pi2, qp, 1, policy)?);
            Ok((lhs, pi_ratio(qp, 3, policy)?))
        }
        "Cq" => {
            let lhs = pow2(th(pi2, qp, 2, policy)?) / pow2(th(pi4, qp, 2, policy)?);
            Ok((lhs, pi_ratio(qp, 2, policy)?))
        }
        _ => Err(Error::UnknownIdentity { id: id.to_owned() }),
    }
}

/// Evaluate both sides of an identity at one point.
///
/// For `squared_form` identities both sides are compared squared; z is
/// ignored by nome-only identities.
pub fn evaluate(
    id: &str,
    z: Complex64,
    qp: &QParameter,
    policy: &TruncationPolicy,
) -> Result<ResidualRecord> {
    let desc = find(id)?;
    let z_used = match desc.variables {
        Variables::WithZ => z,
        Variables::NomeOnly => Complex64::new(0.0, 0.0),
    };
    let (lhs, rhs) =
        eval_pair(id, None, z_used, qp, policy).map_err(|e| e.at_point(id, z_used, qp.nome()))?;
    Ok(ResidualRecord::new(z_used, qp.nome(), lhs, rhs))
}

/// [`evaluate`] with one constant deliberately corrupted.
pub fn evaluate_mutated(
    id: &str,
    mutation: Mutation,
    z: Complex64,
    qp: &QParameter,
    policy: &TruncationPolicy,
) -> Result<ResidualRecord> {
    let desc = find(id)?;
    let z_used = match desc.variables {
        Variables::WithZ => z,
        Variables::NomeOnly => Complex64::new(0.0, 0.0),
    };
    let (lhs, rhs) = eval_pair(id, Some(mutation), z_used, qp, policy)?;
    Ok(ResidualRecord::new(z_used, qp.nome(), lhs, rhs))
}

/// Exclusion radius around the zeros of the normalizing sin/cos factors.
const ZERO_EXCLUSION: f64 = 1e-6;

fn excluded(z: Complex64) -> bool {
    [0.0, PI / 2.0, PI]
        .iter()
        .any(|&w| (z - Complex64::new(w, 0.0)).norm() < ZERO_EXCLUSION)
}

/// Sweep one identity over a grid, returning the report and every record.
pub fn sweep_detailed(
    id: &str,
    grid: &GridSpec,
    policy: &TruncationPolicy,
) -> Result<(SweepReport, Vec<ResidualRecord>)> {
    let desc = find(id)?;
    let mut points: Vec<(Complex64, f64)> = Vec::new();
    match desc.variables {
        Variables::NomeOnly => {
            for &q in &grid.q_values {
                points.push((Complex64::new(0.0, 0.0), q));
            }
        }
        Variables::WithZ => {
            let zs = grid.z_points();
            for &q in &grid.q_values {
                for &z in &zs {
                    if desc.divides_by_trig && excluded(z) {
                        continue;
                    }
                    points.push((z, q));
                }
            }
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }

    let results: Vec<Result<ResidualRecord>> = points
        .par_iter()
        .map(|&(z, q)| {
            let qp = QParameter::from_real(q)?;
            evaluate(id, z, &qp, policy)
        })
        .collect();

    // deterministic reduction: first error by grid index, worst by (rel_err, index)
    let mut records: Vec<ResidualRecord> = Vec::with_capacity(results.len());
    let mut error = None;
    let mut worst: Option<usize> = None;
    let mut max_rel = 0.0f64;
    for (idx, res) in results.into_iter().enumerate() {
        match res {
            Ok(rec) => {
                if worst.map_or(true, |w| records[w].rel_err < rec.rel_err) {
                    worst = Some(records.len());
                    max_rel = rec.rel_err;
                }
                records.push(rec);
            }
            Err(e) => {
                if error.is_none() {
                    error = Some(format!("point {idx}: {e}"));
                }
            }
        }
    }
    let pass = error.is_none() && max_rel < grid.tolerance && !records.is_empty();
    let report = SweepReport {
        id: id.to_owned(),
        grid: grid.clone(),
        max_rel_err: max_rel,
        worst: worst.map(|w| records[w].clone()),
        pass,
        error,
    };
    Ok((report, records))
}

/// Sweep one identity over a grid.
pub fn sweep(id: &str, grid: &GridSpec, policy: &TruncationPolicy) -> Result<SweepReport> {
    sweep_detailed(id, grid, policy).map(|(report, _)| report)
}

/// Check the unsquared square-root identities (`q-Double`, `q-Double4`) with
/// the principal branch on real z in (0, pi/2), real q in (0, 1/2), where the
/// radicand is positive; returns the worst relative residual.
pub fn sqrt_branch_check(
    id: &str,
    z_values: &[f64],
    qp: &QParameter,
    policy: &TruncationPolicy,
) -> Result<f64> {
    if id != "q-Double" && id != "q-Double4" {
        return Err(Error::UnknownIdentity { id: id.to_owned() });
    }
    let mut worst = 0.0f64;
    for &x in z_values {
        let z = Complex64::new(x, 0.0);
        let lhs = sin_q(2.0 * z, qp, policy)?;
        let radicand = if id == "q-Double" {
            pow2(sq(z, qp, 4, policy)?) - pow4(sq(z, qp, 2, policy)?)
        } else {
            pow2(cq(z, qp, 4, policy)?) - pow4(cq(z, qp, 2, policy)?)
        };
        if radicand.re <= 0.0 {
            return Err(Error::ProductDomain {
                magnitude: radicand.re,
            });
        }
        let rhs = pi_ratio(qp, 4, policy)? * 0.5 * radicand.sqrt();
        let rel = (lhs - rhs).norm() / 1f64.max(lhs.norm()).max(rhs.norm());
        worst = worst.max(rel);
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// master-theorem constant relation (finite differences)
// ---------------------------------------------------------------------------

/// The three instantiations of the addition-theorem constant relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantInstance {
    /// k = 2, l = 2: `h1 = theta_1^4(z|tau'/2)`, `h2 = theta_1^2(z|tau'/4)`.
    K2L2,
    /// k = 3, l = 1: `h1 = theta_1^3(z|tau'/3)`, `h2 = theta_1(3z|tau')`.
    K3L1A,
    /// k = 3, l = 1: `h1 = theta_1^3(z|tau'/3)`, `h2 = theta_1(z|tau'/9)`.
    K3L1B,
}

impl ConstantInstance {
    pub fn id(&self) -> &'static str {
        match self {
            ConstantInstance::K2L2 => "k2l2",
            ConstantInstance::K3L1A => "k3l1a",
            ConstantInstance::K3L1B => "k3l1b",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "k2l2" => Some(ConstantInstance::K2L2),
            "k3l1a" => Some(ConstantInstance::K3L1A),
            "k3l1b" => Some(ConstantInstance::K3L1B),
            _ => None,
        }
    }
}

/// l-th order central finite difference of `h` at 0.
fn central_derivative<F>(h: &F, l: u32, step: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let s = Complex64::new(step, 0.0);
    match l {
        1 => Ok((h(s)? - h(-s)?) / (2.0 * step)),
        2 => Ok((h(s)? - 2.0 * h(Complex64::new(0.0, 0.0))? + h(-s)?) / (step * step)),
        _ => unreachable!("only l = 1, 2 are instantiated"),
    }
}

/// Verify the constant relation of the addition theorem at one point:
/// the l-th z-derivatives of the pair (h1, h2) at 0 are estimated by central
/// finite differences with step `fd_step`, the constant C comes from the
/// instance's closed form, and the residual of
///
/// ```text
/// h2^(l)(0) (h1(x) + (-1)^l h1(-x)) - h1^(l)(0) (h2(x) + (-1)^l h2(-x))
///   = C (l!/2) theta_1'(0|tau'/k)^l theta_1^{2+l}(x|tau'/k)
/// ```
///
/// is returned. Errors with [`Error::NumericInstability`] when halving the
/// step changes a derivative estimate by more than a factor of 10 (the
/// cancellation floor).
pub fn verify_constant_relation(
    instance: ConstantInstance,
    x: Complex64,
    qp: &QParameter,
    fd_step: f64,
    policy: &TruncationPolicy,
) -> Result<ResidualRecord> {
    if !(1e-6..=1e-2).contains(&fd_step) {
        return Err(Error::StepOutOfRange { step: fd_step });
    }
    let (k, l): (u32, u32) = match instance {
        ConstantInstance::K2L2 => (2, 2),
        ConstantInstance::K3L1A => (3, 1),
        ConstantInstance::K3L1B => (3, 1),
    };

    let eval_h = |which: u8, w: Complex64| -> Result<Complex64> {
        match (instance, which) {
            (ConstantInstance::K2L2, 1) => Ok(pow4(th(w, qp, 2, policy)?)),
            (ConstantInstance::K2L2, 2) => Ok(pow2(th(w, qp, 4, policy)?)),
            (ConstantInstance::K3L1A, 1) | (ConstantInstance::K3L1B, 1) => {
                Ok(pow3(th(w, qp, 3, policy)?))
            }
            (ConstantInstance::K3L1A, 2) => th(3.0 * w, qp, 1, policy),
            (ConstantInstance::K3L1B, 2) => th(w, qp, 9, policy),
            _ => unreachable!(),
        }
    };

    // closed-form constant (product route, independent of the FD side)
    let prime0 = |div: f64| -> Result<Complex64> {
        crate::theta::theta1_prime0(&ModularPoint::new(qp.tau_dual() / div)?, policy)
    };
    let c = match instance {
        ConstantInstance::K2L2 => {
            let r = prime0(4.0)? / prime0(2.0)?;
            4.0 * r * r
        }
        ConstantInstance::K3L1A => 12.0 * prime0(1.0)? / prime0(3.0)?,
        ConstantInstance::K3L1B => 4.0 * prime0(9.0)? / prime0(3.0)?,
    };

    // derivative estimates with the cancellation detector
    let mut derivs = [Complex64::new(0.0, 0.0); 2];
    for (slot, which) in [(0usize, 1u8), (1usize, 2u8)] {
        let h = |w| eval_h(which, w);
        let d_full = central_derivative(&h, l, fd_step)?;
        let d_half = central_derivative(&h, l, fd_step / 2.0)?;
        let hi = d_full.norm().max(d_half.norm());
        let lo = d_full.norm().min(d_half.norm());
        // scale-aware: estimates that vanish to double precision are exempt
        if hi > 1e-8 && lo > 0.0 && hi / lo > 10.0 {
            return Err(Error::NumericInstability { step: fd_step });
        }
        derivs[slot] = d_full;
    }
    let [h1l, h2l] = derivs;

    let parity = if l % 2 == 0 { 1.0 } else { -1.0 };
    let sym =
        |which: u8| -> Result<Complex64> { Ok(eval_h(which, x)? + parity * eval_h(which, -x)?) };
    let lhs = h2l * sym(1)? - h1l * sym(2)?;

    let l_factorial = if l == 2 { 2.0 } else { 1.0 };
    let tp = thp(qp, k, policy)?;
    let tx = th(x, qp, k, policy)?;
    let rhs = c * (l_factorial / 2.0) * tp.powu(l) * tx.powu(2 + l);
    Ok(ResidualRecord::new(x, qp.nome(), lhs, rhs))
}

/// Numeric eta-quotient checks: theta-ratio side at the dual nome against
/// the q-product side. `which` is one of the nome-only catalog ids
/// (`help-1-3`, `help-2-3`, `help-3-1`, `Cq`).
pub fn eta_quotient_check(
    which: &str,
    qp: &QParameter,
    policy: &TruncationPolicy,
) -> Result<ResidualRecord> {
    let desc = find(which)?;
    if desc.variables != Variables::NomeOnly {
        return Err(Error::UnknownIdentity {
            id: format!("{which} is not an eta-quotient identity"),
        });
    }
    evaluate(which, Complex64::new(0.0, 0.0), qp, policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(q: f64) -> QParameter {
        QParameter::from_real(q).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn catalog_shape() {
        let cat = catalog();
        assert!(cat.len() >= 19, "catalog has {} entries", cat.len());
        let mut ids: Vec<_> = cat.iter().map(|d| d.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), cat.len(), "ids must be unique");

        let d = find("q-Double2").unwrap();
        assert!(d.modes.numeric && !d.modes.formal);
        let d = find("thm-2.1").unwrap();
        assert!(d.modes.numeric && d.modes.formal);
        let d = find("help-1-3").unwrap();
        assert_eq!(d.variables, Variables::NomeOnly);
        let squared: Vec<_> = cat.iter().filter(|d| d.squared_form).map(|d| d.id).collect();
        assert_eq!(squared, ["q-Double", "q-Double4"]);
        assert!(find("no-such-identity").is_err());
    }

    #[test]
    fn every_descriptor_evaluable_at_reference_point() {
        let policy = TruncationPolicy::default();
        let q = qp(0.3);
        for d in catalog() {
            let rec = evaluate(d.id, c(0.3, 0.0), &q, &policy)
                .unwrap_or_else(|e| panic!("{} failed: {e}", d.id));
            assert!(rec.rel_err < 1e-9, "{}: rel_err = {}", d.id, rec.rel_err);
        }
    }

    #[test]
    fn double5_at_zero_degenerates() {
        let policy = TruncationPolicy::default();
        let rec = evaluate("q-Double5", c(0.0, 0.0), &qp(0.4), &policy).unwrap();
        assert!((rec.lhs.0 - c(1.0, 0.0)).norm() < 1e-13);
        assert!(rec.rel_err < 1e-13);
    }

    #[test]
    fn triple_at_half_pi_is_minus_one() {
        let policy = TruncationPolicy::default();
        let rec = evaluate("q-Triple", c(PI / 2.0, 0.0), &qp(0.3), &policy).unwrap();
        assert!((rec.lhs.0 - c(-1.0, 0.0)).norm() < 1e-12, "{:?}", rec.lhs);
        assert!(rec.rel_err < 1e-10);
    }

    #[test]
    fn help0_internal_consistency() {
        let policy = TruncationPolicy::default();
        let rec = evaluate("help-0", c(0.4, 0.0), &qp(0.25), &policy).unwrap();
        assert!(rec.rel_err < 1e-10);
    }

    #[test]
    fn sweep_examples() {
        let policy = TruncationPolicy::default();
        let grid = GridSpec {
            z_re: (0.1, 1.4),
            z_im: (0.0, 0.0),
            n_z: 20,
            q_values: vec![0.1, 0.2, 0.3, 0.4, 0.5],
            seed: crate::grid::DEFAULT_SEED,
            tolerance: 1e-9,
        };
        for id in ["q-Double2", "thm-2.2"] {
            let report = sweep(id, &grid, &policy).unwrap();
            assert!(report.pass, "{id}: {report:?}");
        }
    }

    #[test]
    fn sweep_q_double_with_sqrt_branch() {
        let policy = TruncationPolicy::default();
        let grid = GridSpec {
            z_re: (0.05, 0.7),
            z_im: (0.0, 0.0),
            n_z: 25,
            q_values: vec![0.1, 0.3],
            seed: crate::grid::DEFAULT_SEED,
            tolerance: 1e-9,
        };
        let report = sweep("q-Double", &grid, &policy).unwrap();
        assert!(report.pass, "{report:?}");
        // unsquared principal-branch check on the positive-radicand region
        let zs: Vec<f64> = (1..24).map(|i| 0.05 + 0.027 * i as f64).collect();
        for q in [0.1, 0.3] {
            for id in ["q-Double", "q-Double4"] {
                let worst = sqrt_branch_check(id, &zs, &qp(q), &policy).unwrap();
                assert!(worst < 1e-10, "{id} q={q}: {worst}");
            }
        }
    }

    #[test]
    fn ratio_identity_skips_trig_zeros() {
        let policy = TruncationPolicy::default();
        let grid = GridSpec {
            z_re: (0.1, 1.4),
            z_im: (0.0, 0.0),
            n_z: 15,
            q_values: vec![0.2, 0.4],
            seed: 3,
            tolerance: 1e-9,
        };
        let report = sweep("ratio", &grid, &policy).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn constant_relation_instances() {
        let policy = TruncationPolicy::default();
        let cases = [
            (ConstantInstance::K3L1A, 0.5, 0.3, 1e-4, 1e-6),
            (ConstantInstance::K2L2, 0.7, 0.2, 1e-3, 1e-5),
            (ConstantInstance::K3L1B, 0.4, 0.25, 1e-4, 1e-6),
        ];
        for (inst, x, q, step, tol) in cases {
            let rec = verify_constant_relation(inst, c(x, 0.0), &qp(q), step, &policy).unwrap();
            assert!(rec.rel_err < tol, "{}: rel = {}", inst.id(), rec.rel_err);
        }
    }

    #[test]
    fn constant_relation_quadratic_in_step() {
        let policy = TruncationPolicy::default();
        let r1 =
            verify_constant_relation(ConstantInstance::K3L1A, c(0.5, 0.0), &qp(0.3), 1e-3, &policy)
                .unwrap()
                .rel_err;
        let r2 =
            verify_constant_relation(ConstantInstance::K3L1A, c(0.5, 0.0), &qp(0.3), 5e-4, &policy)
                .unwrap()
                .rel_err;
        let ratio = r1 / r2;
        assert!((2.5..6.0).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn constant_relation_rejects_bad_step() {
        let policy = TruncationPolicy::default();
        assert!(matches!(
            verify_constant_relation(ConstantInstance::K2L2, c(0.5, 0.0), &qp(0.3), 1e-7, &policy),
            Err(Error::StepOutOfRange { .. })
        ));
    }

    #[test]
    fn eta_quotient_examples() {
        let policy = TruncationPolicy::default();
        let rec = eta_quotient_check("help-1-3", &qp(0.3), &policy).unwrap();
        assert!(rec.rel_err < 1e-10, "{rec:?}");
        // both sides approximate Pi_q/Pi_{q^9}; pinned by the 40-digit oracle
        let rec = eta_quotient_check("help-2-3", &qp(0.2), &policy).unwrap();
        assert!(rec.rel_err < 1e-10);
        assert!((rec.rhs.0.re - 36.485_434_528_572_839).abs() < 1e-11);
        let rec = eta_quotient_check("help-3-1", &qp(0.5), &policy).unwrap();
        assert!(rec.rel_err < 1e-10);
        assert!((rec.rhs.0.re - 3.000_905_140_855_177).abs() < 1e-12);
        let rec = eta_quotient_check("Cq", &qp(0.3), &policy).unwrap();
        assert!(rec.rel_err < 1e-10);
        assert!((rec.rhs.0.re - 2.002_203_873_789_509_1).abs() < 1e-13);
        assert!(eta_quotient_check("q-Double2", &qp(0.3), &policy).is_err());
    }

    #[test]
    fn mutations_break_the_identities() {
        let policy = TruncationPolicy::default();
        let z = c(0.4, 0.0);
        let cases = [
            ("thm-2.1", Mutation::HalfToThird),
            ("thm-2.2", Mutation::PiExponentNineToEight),
            ("q-Triple", Mutation::PiExponentNineToEight),
            ("help-2-3", Mutation::PiExponentNineToEight),
            ("thm-2.3", Mutation::SignFlipTheorem23),
        ];
        for (id, m) in cases {
            let clean = evaluate(id, z, &qp(0.3), &policy).unwrap();
            let broken = evaluate_mutated(id, m, z, &qp(0.3), &policy).unwrap();
            assert!(clean.rel_err < 1e-9, "{id} clean: {}", clean.rel_err);
            assert!(
                broken.rel_err > 1e-4,
                "{id} with {m:?} should fail: {}",
                broken.rel_err
            );
        }
        assert!(
            evaluate_mutated("q-Double2", Mutation::HalfToThird, z, &qp(0.3), &policy).is_err()
        );
    }

    #[test]
    fn corollary_and_theorem_sweeps_both_pass() {
        let policy = TruncationPolicy::default();
        let grid = GridSpec {
            n_z: 10,
            q_values: vec![0.2, 0.4],
            ..GridSpec::default_identity_grid()
        };
        for (cor, thm) in [
            ("q-Double", "thm-2.1"),
            ("q-Triple", "thm-2.2"),
            ("q-Triple2", "thm-2.3"),
        ] {
            let a = sweep(cor, &grid, &policy).unwrap();
            let b = sweep(thm, &grid, &policy).unwrap();
            assert!(a.pass && b.pass, "{cor}/{thm}");
        }
    }
}
