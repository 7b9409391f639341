//! C interface to the qutrit MAD channel library.
//!
//! Channels are opaque handles created by `madcap_channel_new` and released
//! with `madcap_channel_free`. Every fallible call returns a `MadcapStatus`;
//! on failure `madcap_last_error_message` describes the error for the
//! calling thread. Matrices cross the boundary as separate row-major real
//! and imaginary `double` arrays.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use madcap::capacity::{capacity, Quantity, Status};
use madcap::channel::{apply, complement, compose_rates};
use madcap::linalg::{ComplexMatrix, C64};
use madcap::{classify, DensityMatrix, Error, RateVector3, TriVerdict};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MadcapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidRates = 2,
    InvalidArgument = 3,
    NotInvertible = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MadcapQuantity {
    Q = 0,
    Cp = 1,
    Qe = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MadcapEstimateStatus {
    Exact = 0,
    Zero = 1,
    LowerBound = 2,
    Interval = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MadcapAntidegradable {
    No = 0,
    Yes = 1,
    Unknown = 2,
}

/// Opaque qutrit channel.
pub struct MadcapChannel {
    rates: RateVector3,
}

/// Capacity value or bounds. `upper` is meaningful only when `has_upper`
/// is nonzero.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MadcapEstimate {
    pub lower: f64,
    pub upper: f64,
    pub has_upper: i32,
    pub status: MadcapEstimateStatus,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MadcapClassification {
    /// 1 when degradable, 0 otherwise.
    pub degradable: i32,
    pub antidegradable: MadcapAntidegradable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: MadcapStatus, msg: &str) -> MadcapStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> MadcapStatus {
    let status = match e {
        Error::InvalidRates(_) => MadcapStatus::InvalidRates,
        Error::NotInvertible(_) => MadcapStatus::NotInvertible,
        _ => MadcapStatus::InvalidArgument,
    };
    fail(status, &e.to_string())
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> MadcapStatus) -> MadcapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal error".into());
            fail(MadcapStatus::Internal, &msg)
        }
    }
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn madcap_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn madcap_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a channel with rates `g1` (1 -> 0), `g2` (2 -> 1), `g3` (2 -> 0).
#[no_mangle]
pub unsafe extern "C" fn madcap_channel_new(
    g1: f64,
    g2: f64,
    g3: f64,
    out: *mut *mut MadcapChannel,
) -> MadcapStatus {
    guard(|| {
        if out.is_null() {
            return fail(MadcapStatus::NullPointer, "output handle pointer is null");
        }
        match RateVector3::new(g1, g2, g3) {
            Ok(rates) => {
                *out = Box::into_raw(Box::new(MadcapChannel { rates }));
                MadcapStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Releases a channel; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn madcap_channel_free(channel: *mut MadcapChannel) {
    if !channel.is_null() {
        drop(Box::from_raw(channel));
    }
}

/// Writes the three rates of `channel` to `out[0..3]`.
#[no_mangle]
pub unsafe extern "C" fn madcap_channel_rates(
    channel: *const MadcapChannel,
    out: *mut f64,
) -> MadcapStatus {
    guard(|| {
        let Some(ch) = channel.as_ref() else {
            return fail(MadcapStatus::NullPointer, "channel is null");
        };
        if out.is_null() {
            return fail(MadcapStatus::NullPointer, "output array is null");
        }
        std::ptr::copy_nonoverlapping(ch.rates.as_array().as_ptr(), out, 3);
        MadcapStatus::Ok
    })
}

unsafe fn read_state(re: *const f64, im: *const f64, d: usize) -> Result<DensityMatrix, MadcapStatus> {
    if re.is_null() || im.is_null() {
        return Err(fail(MadcapStatus::NullPointer, "state array is null"));
    }
    let re = std::slice::from_raw_parts(re, d * d);
    let im = std::slice::from_raw_parts(im, d * d);
    let m = ComplexMatrix::from_fn(d, d, |r, c| C64::new(re[r * d + c], im[r * d + c]));
    DensityMatrix::new(m).map_err(|e| from_error(&e))
}

unsafe fn write_matrix(m: &ComplexMatrix, re: *mut f64, im: *mut f64) -> MadcapStatus {
    if re.is_null() || im.is_null() {
        return fail(MadcapStatus::NullPointer, "output array is null");
    }
    let (rows, cols) = m.shape();
    let re = std::slice::from_raw_parts_mut(re, rows * cols);
    let im = std::slice::from_raw_parts_mut(im, rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            re[r * cols + c] = m[(r, c)].re;
            im[r * cols + c] = m[(r, c)].im;
        }
    }
    MadcapStatus::Ok
}

/// Output state for a 3x3 input state; all arrays hold 9 entries.
#[no_mangle]
pub unsafe extern "C" fn madcap_channel_apply(
    channel: *const MadcapChannel,
    rho_re: *const f64,
    rho_im: *const f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> MadcapStatus {
    guard(|| {
        let Some(ch) = channel.as_ref() else {
            return fail(MadcapStatus::NullPointer, "channel is null");
        };
        let rho = match read_state(rho_re, rho_im, 3) {
            Ok(r) => r,
            Err(s) => return s,
        };
        match apply(&ch.rates.to_rate_matrix(), &rho) {
            Ok(out) => write_matrix(out.matrix(), out_re, out_im),
            Err(e) => from_error(&e),
        }
    })
}

/// Environment state (4x4, 16 entries per output array) for a 3x3 input.
#[no_mangle]
pub unsafe extern "C" fn madcap_channel_complement(
    channel: *const MadcapChannel,
    rho_re: *const f64,
    rho_im: *const f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> MadcapStatus {
    guard(|| {
        let Some(ch) = channel.as_ref() else {
            return fail(MadcapStatus::NullPointer, "channel is null");
        };
        let rho = match read_state(rho_re, rho_im, 3) {
            Ok(r) => r,
            Err(s) => return s,
        };
        match complement(&ch.rates.to_rate_matrix(), &rho) {
            Ok(out) => write_matrix(out.matrix(), out_re, out_im),
            Err(e) => from_error(&e),
        }
    })
}

/// Degradability and antidegradability with Choi-eigenvalue tolerance `tol`.
#[no_mangle]
pub unsafe extern "C" fn madcap_channel_classify(
    channel: *const MadcapChannel,
    tol: f64,
    out: *mut MadcapClassification,
) -> MadcapStatus {
    guard(|| {
        let Some(ch) = channel.as_ref() else {
            return fail(MadcapStatus::NullPointer, "channel is null");
        };
        let Some(out) = out.as_mut() else {
            return fail(MadcapStatus::NullPointer, "output is null");
        };
        if !(tol > 0.0 && tol.is_finite()) {
            return fail(MadcapStatus::InvalidArgument, "tolerance must be positive");
        }
        let r = classify(&ch.rates, tol);
        out.degradable = i32::from(r.degradable.is_yes());
        out.antidegradable = match r.antidegradable {
            TriVerdict::Yes => MadcapAntidegradable::Yes,
            TriVerdict::No => MadcapAntidegradable::No,
            TriVerdict::Unknown => MadcapAntidegradable::Unknown,
        };
        MadcapStatus::Ok
    })
}

/// Capacity estimate. When `method` is non-null the method tag is copied
/// into it, truncated to `method_len - 1` bytes and NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn madcap_channel_capacity(
    channel: *const MadcapChannel,
    quantity: MadcapQuantity,
    out: *mut MadcapEstimate,
    method: *mut c_char,
    method_len: usize,
) -> MadcapStatus {
    guard(|| {
        let Some(ch) = channel.as_ref() else {
            return fail(MadcapStatus::NullPointer, "channel is null");
        };
        let Some(out) = out.as_mut() else {
            return fail(MadcapStatus::NullPointer, "output is null");
        };
        let q = match quantity {
            MadcapQuantity::Q => Quantity::Q,
            MadcapQuantity::Cp => Quantity::Cp,
            MadcapQuantity::Qe => Quantity::Qe,
        };
        let est = capacity(&ch.rates, q);
        out.lower = est.lower;
        out.upper = est.upper.unwrap_or(f64::NAN);
        out.has_upper = i32::from(est.upper.is_some());
        out.status = match est.status {
            Status::Exact => MadcapEstimateStatus::Exact,
            Status::Zero => MadcapEstimateStatus::Zero,
            Status::LowerBound => MadcapEstimateStatus::LowerBound,
            Status::Interval => MadcapEstimateStatus::Interval,
        };
        if !method.is_null() && method_len > 0 {
            let tag = est.method.tag().as_bytes();
            let n = tag.len().min(method_len - 1);
            std::ptr::copy_nonoverlapping(tag.as_ptr().cast::<c_char>(), method, n);
            *method.add(n) = 0;
        }
        MadcapStatus::Ok
    })
}

/// New channel equal to `outer ∘ inner` (`inner` acts first).
#[no_mangle]
pub unsafe extern "C" fn madcap_compose_rates(
    outer: *const MadcapChannel,
    inner: *const MadcapChannel,
    out: *mut *mut MadcapChannel,
) -> MadcapStatus {
    guard(|| {
        let (Some(a), Some(b)) = (outer.as_ref(), inner.as_ref()) else {
            return fail(MadcapStatus::NullPointer, "channel is null");
        };
        if out.is_null() {
            return fail(MadcapStatus::NullPointer, "output handle pointer is null");
        }
        match compose_rates(&a.rates, &b.rates) {
            Ok(rates) => {
                *out = Box::into_raw(Box::new(MadcapChannel { rates }));
                MadcapStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    #[test]
    fn invalid_rates_set_message() {
        let mut h = std::ptr::null_mut();
        let s = unsafe { madcap_channel_new(0.1, 0.7, 0.5, &mut h) };
        assert_eq!(s, MadcapStatus::InvalidRates);
        assert!(h.is_null());
        let msg = unsafe { CStr::from_ptr(madcap_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("γ2+γ3"));
    }

    #[test]
    fn version_matches_crate() {
        let v = unsafe { CStr::from_ptr(madcap_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn panics_become_internal() {
        assert_eq!(guard(|| panic!("boom")), MadcapStatus::Internal);
        let msg = unsafe { CStr::from_ptr(madcap_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "boom");
    }
}
