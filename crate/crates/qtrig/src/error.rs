//! Error type shared by the evaluation, catalog, and formal layers.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An operand had a NaN or infinite component.
    #[error("non-finite input in {what}")]
    NonFinite { what: &'static str },

    /// A nome or ratio left the open unit disk.
    #[error("|{what}| = {modulus} must be < 1")]
    NomeOutsideDisk { what: &'static str, modulus: f64 },

    /// A q-trig product factor exceeded the supported magnitude envelope.
    #[error("product-form factor magnitude {magnitude} exceeds 1; outside the supported domain")]
    ProductDomain { magnitude: f64 },

    /// A series or product hit the term cap before meeting the tolerance.
    #[error("did not converge within {max_terms} terms (tail bound {tail_bound:e})")]
    NonConverged { max_terms: usize, tail_bound: f64 },

    /// tau must lie in the upper half-plane.
    #[error("Im(tau) = {im} must be positive")]
    TauNotInUpperHalfPlane { im: f64 },

    /// Re(tau) outside the principal-log consistency window.
    #[error("Re(tau) = {re} outside the supported window (-1, 1]")]
    TauWindow { re: f64 },

    /// An exponential factor would overflow double precision.
    #[error("exponent {exponent} overflows the double-precision range")]
    RangeOverflow { exponent: f64 },

    /// Invalid truncation policy parameters.
    #[error("invalid truncation policy: tol = {tol}, max_terms = {max_terms}")]
    InvalidPolicy { tol: f64, max_terms: usize },

    /// Identity id not present in the catalog.
    #[error("unknown identity `{id}`")]
    UnknownIdentity { id: String },

    /// Identity has no formal mode.
    #[error("identity `{id}` has no formal mode")]
    NotFormalCapable { id: String },

    /// Finite-difference step hit the cancellation floor.
    #[error("finite-difference step {step} is numerically unstable (estimates vary more than 10x)")]
    NumericInstability { step: f64 },

    /// Finite-difference step outside the supported bracket.
    #[error("finite-difference step {step} outside [1e-6, 1e-2]")]
    StepOutOfRange { step: f64 },

    /// Formal-series root does not make every exponent integral.
    #[error("series root {root} violates the divisibility contract (needs a multiple of {needed})")]
    RootDivisibility { root: u32, needed: u32 },

    /// A formal infinite product with a non-positive leading exponent.
    #[error("formal product starting at exponent {a_exp} does not converge")]
    NonFormalProduct { a_exp: i64 },

    /// Attempted reciprocal of the zero series.
    #[error("cannot invert a formal series that vanishes through its truncation order")]
    ZeroDivision,

    /// An evaluation failed at a specific grid point.
    #[error("identity `{id}` failed at z = {z}, nome = {nome}: {source}")]
    AtPoint {
        id: String,
        z: String,
        nome: String,
        #[source]
        source: Box<Error>,
    },

    /// Grid has no points.
    #[error("grid specification produced no evaluation points")]
    EmptyGrid,

    /// Malformed command-line arguments (bad literal, missing flag).
    #[error("{message}")]
    Usage { message: String },
}

impl Error {
    /// Attach identity/grid-point context to an evaluation error.
    pub(crate) fn at_point(self, id: &str, z: crate::Complex, nome: crate::Complex) -> Error {
        Error::AtPoint {
            id: id.to_owned(),
            z: crate::report::fmt_complex(z),
            nome: crate::report::fmt_complex(nome),
            source: Box::new(self),
        }
    }
}
