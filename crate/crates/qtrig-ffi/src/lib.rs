//! C ABI for the qtrig library.
//!
//! Conventions: every function returns a [`QtrigStatus`]; results travel
//! through out-pointers; complex numbers are (re, im) double pairs; the
//! truncation policy is an opaque handle (`NULL` means the default policy).
//! Strings are NUL-terminated UTF-8. The generated header lives at
//! `include/qtrig.h`.

use std::ffi::{c_char, CStr};

use num_complex::Complex64;
use qtrig::catalog;
use qtrig::formal::ProofOutcome;
use qtrig::theta::{theta1_series, ModularPoint};
use qtrig::{Error, GridSpec, QParameter, TruncationPolicy};

/// Status codes returned by every `qtrig_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QtrigStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Input outside the mathematical domain (nome modulus, tau half-plane,
    /// product envelope).
    Domain = 3,
    /// Truncation cap reached before meeting the tolerance.
    NonConverged = 4,
    /// Intermediate exponential overflows double precision.
    Range = 5,
    UnknownIdentity = 6,
    /// Identity has no formal mode.
    NotFormal = 7,
    /// Finite-difference step at the cancellation floor.
    Unstable = 8,
    Internal = 9,
}

fn status_of(e: &Error) -> QtrigStatus {
    match e {
        Error::NonFinite { .. } | Error::InvalidPolicy { .. } | Error::StepOutOfRange { .. } => {
            QtrigStatus::InvalidArgument
        }
        Error::NomeOutsideDisk { .. }
        | Error::ProductDomain { .. }
        | Error::TauNotInUpperHalfPlane { .. }
        | Error::TauWindow { .. } => QtrigStatus::Domain,
        Error::NonConverged { .. } => QtrigStatus::NonConverged,
        Error::RangeOverflow { .. } => QtrigStatus::Range,
        Error::UnknownIdentity { .. } => QtrigStatus::UnknownIdentity,
        Error::NotFormalCapable { .. } => QtrigStatus::NotFormal,
        Error::NumericInstability { .. } => QtrigStatus::Unstable,
        Error::AtPoint { source, .. } => status_of(source),
        _ => QtrigStatus::Internal,
    }
}

/// Opaque truncation policy handle.
pub struct QtrigPolicy(TruncationPolicy);

/// Create a truncation policy. Returns NULL if `tol <= 0` or
/// `max_terms == 0`. Free with `qtrig_policy_free`.
#[no_mangle]
pub extern "C" fn qtrig_policy_new(tol: f64, max_terms: usize) -> *mut QtrigPolicy {
    match TruncationPolicy::new(tol, max_terms) {
        Ok(p) => Box::into_raw(Box::new(QtrigPolicy(p))),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Free a policy created by `qtrig_policy_new`. NULL is a no-op.
///
/// # Safety
/// `policy` must be either NULL or a pointer previously returned by
/// `qtrig_policy_new` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn qtrig_policy_free(policy: *mut QtrigPolicy) {
    if !policy.is_null() {
        drop(Box::from_raw(policy));
    }
}

unsafe fn policy_or_default(policy: *const QtrigPolicy) -> TruncationPolicy {
    if policy.is_null() {
        TruncationPolicy::default()
    } else {
        (*policy).0
    }
}

unsafe fn write_complex(
    value: Complex64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QtrigStatus {
    if out_re.is_null() || out_im.is_null() {
        return QtrigStatus::NullPointer;
    }
    *out_re = value.re;
    *out_im = value.im;
    QtrigStatus::Ok
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return status_of(&err),
        }
    };
}

/// Gosper's q-sine at z for nome q (|q| in (0, 1)).
///
/// # Safety
/// `policy` must be NULL or a live policy handle; `out_re`/`out_im` must be
/// valid writable pointers.
#[no_mangle]
pub unsafe extern "C" fn qtrig_sinq(
    z_re: f64,
    z_im: f64,
    q_re: f64,
    q_im: f64,
    policy: *const QtrigPolicy,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QtrigStatus {
    let pol = policy_or_default(policy);
    let qp = try_ffi!(QParameter::new(Complex64::new(q_re, q_im)));
    let v = try_ffi!(qtrig::sin_q(Complex64::new(z_re, z_im), &qp, &pol));
    write_complex(v, out_re, out_im)
}

/// Gosper's q-cosine at z for nome q.
///
/// # Safety
/// Same contract as `qtrig_sinq`.
#[no_mangle]
pub unsafe extern "C" fn qtrig_cosq(
    z_re: f64,
    z_im: f64,
    q_re: f64,
    q_im: f64,
    policy: *const QtrigPolicy,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QtrigStatus {
    let pol = policy_or_default(policy);
    let qp = try_ffi!(QParameter::new(Complex64::new(q_re, q_im)));
    let v = try_ffi!(qtrig::cos_q(Complex64::new(z_re, z_im), &qp, &pol));
    write_complex(v, out_re, out_im)
}

/// Gosper's constant Pi_q.
///
/// # Safety
/// Same contract as `qtrig_sinq`.
#[no_mangle]
pub unsafe extern "C" fn qtrig_piq(
    q_re: f64,
    q_im: f64,
    policy: *const QtrigPolicy,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QtrigStatus {
    let pol = policy_or_default(policy);
    let qp = try_ffi!(QParameter::new(Complex64::new(q_re, q_im)));
    let v = try_ffi!(qtrig::pi_q(&qp, &pol));
    write_complex(v, out_re, out_im)
}

/// First Jacobi theta function theta_1(z | tau), Im(tau) > 0.
///
/// # Safety
/// Same contract as `qtrig_sinq`.
#[no_mangle]
pub unsafe extern "C" fn qtrig_theta1(
    z_re: f64,
    z_im: f64,
    tau_re: f64,
    tau_im: f64,
    policy: *const QtrigPolicy,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QtrigStatus {
    let pol = policy_or_default(policy);
    let m = try_ffi!(ModularPoint::new(Complex64::new(tau_re, tau_im)));
    let v = try_ffi!(theta1_series(Complex64::new(z_re, z_im), &m, &pol));
    write_complex(v, out_re, out_im)
}

/// Number of identities in the catalog.
#[no_mangle]
pub extern "C" fn qtrig_identity_count() -> usize {
    catalog::catalog().len()
}

/// Copy the NUL-terminated id of the identity at `index` into `buf`.
/// Fails with `InvalidArgument` if the index is out of range or the buffer
/// is too small.
///
/// # Safety
/// `buf` must point to at least `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn qtrig_identity_id(
    index: usize,
    buf: *mut c_char,
    buf_len: usize,
) -> QtrigStatus {
    if buf.is_null() {
        return QtrigStatus::NullPointer;
    }
    let cat = catalog::catalog();
    let Some(desc) = cat.get(index) else {
        return QtrigStatus::InvalidArgument;
    };
    let bytes = desc.id.as_bytes();
    if bytes.len() + 1 > buf_len {
        return QtrigStatus::InvalidArgument;
    }
    std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    QtrigStatus::Ok
}

/// Sweep one identity over the default seeded grid (overriding the seed and
/// z-sample count when nonzero) and report the worst relative residual and
/// the pass flag at the grid tolerance 1e-9.
///
/// # Safety
/// `id` must be a NUL-terminated string; out-pointers must be writable;
/// `policy` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qtrig_check(
    id: *const c_char,
    seed: u64,
    grid_n: usize,
    policy: *const QtrigPolicy,
    out_max_rel_err: *mut f64,
    out_pass: *mut i32,
) -> QtrigStatus {
    if id.is_null() || out_max_rel_err.is_null() || out_pass.is_null() {
        return QtrigStatus::NullPointer;
    }
    let Ok(id) = CStr::from_ptr(id).to_str() else {
        return QtrigStatus::InvalidArgument;
    };
    let pol = policy_or_default(policy);
    let mut grid = GridSpec::default_identity_grid();
    if seed != 0 {
        grid.seed = seed;
    }
    if grid_n != 0 {
        grid.n_z = grid_n;
    }
    let report = try_ffi!(catalog::sweep(id, &grid, &pol));
    *out_max_rel_err = report.max_rel_err;
    *out_pass = report.pass as i32;
    QtrigStatus::Ok
}

/// Formally verify one identity through `t^order` (`order <= 0` means the
/// per-identity default). `out_verified`: 1 verified, 0 refuted,
/// -1 inconclusive (order below the leading exponent).
///
/// # Safety
/// `id` must be a NUL-terminated string; `out_verified` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qtrig_prove(
    id: *const c_char,
    order: i64,
    out_verified: *mut i32,
) -> QtrigStatus {
    if id.is_null() || out_verified.is_null() {
        return QtrigStatus::NullPointer;
    }
    let Ok(id) = CStr::from_ptr(id).to_str() else {
        return QtrigStatus::InvalidArgument;
    };
    let order = if order <= 0 { None } else { Some(order) };
    let report = try_ffi!(qtrig::formal::prove(id, order));
    *out_verified = match report.outcome {
        ProofOutcome::Verified => 1,
        ProofOutcome::Refuted => 0,
        ProofOutcome::Inconclusive => -1,
    };
    QtrigStatus::Ok
}
