//! C ABI over the quadric K-theory workbench.
//!
//! Conventions:
//! - Rings are opaque handles created by `qk_ring_new` and released by
//!   `qk_ring_free`.
//! - Every fallible call returns a [`QkStatus`]; results come back through
//!   out-pointers.
//! - Arbitrary-precision values cross the boundary as decimal strings or as
//!   JSON documents; strings returned by this library are heap-allocated and
//!   must be released with `qk_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use num_bigint::BigInt;
use qk_core::kquadric::{
    build_ring, hyperplane_divides, integer_divisibility_threshold, KClass, QuadricKRing,
};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedDimension = 3,
    InternalError = 4,
}

/// Opaque handle to a quadric K-theory ring.
pub struct QkRing {
    inner: QuadricKRing,
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

unsafe fn parse_bigint(text: *const c_char) -> Option<BigInt> {
    if text.is_null() {
        return None;
    }
    CStr::from_ptr(text).to_str().ok()?.trim().parse().ok()
}

/// Build the K-ring of the (m-1)-dimensional quadric. On success `*out`
/// owns the ring; release it with `qk_ring_free`.
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_ring_new(m: u32, out: *mut *mut QkRing) -> QkStatus {
    if out.is_null() {
        return QkStatus::NullPointer;
    }
    *out = ptr::null_mut();
    if m < 3 {
        return QkStatus::UnsupportedDimension;
    }
    match build_ring(m as usize) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(QkRing { inner }));
            QkStatus::Ok
        }
        Err(qk_core::Error::UnsupportedDimension { .. }) => QkStatus::UnsupportedDimension,
        Err(_) => QkStatus::InternalError,
    }
}

/// Release a ring created by `qk_ring_new`. Null is a no-op.
///
/// # Safety
/// `ring` must be null or a pointer previously returned by `qk_ring_new`
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn qk_ring_free(ring: *mut QkRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Rank of the free abelian group underlying the ring.
///
/// # Safety
/// `ring` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qk_ring_rank(ring: *const QkRing, out: *mut u32) -> QkStatus {
    let (Some(ring), false) = (ring.as_ref(), out.is_null()) else {
        return QkStatus::NullPointer;
    };
    *out = ring.inner.rank() as u32;
    QkStatus::Ok
}

/// Ambient projective dimension m of the ring.
///
/// # Safety
/// `ring` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qk_ring_ambient_dimension(ring: *const QkRing, out: *mut u32) -> QkStatus {
    let (Some(ring), false) = (ring.as_ref(), out.is_null()) else {
        return QkStatus::NullPointer;
    };
    *out = ring.inner.m() as u32;
    QkStatus::Ok
}

/// Label of basis element `index` ("1", "L", "L^2", ..., "X" / "X+", "X-")
/// as a fresh string; free with `qk_string_free`.
///
/// # Safety
/// `ring` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qk_ring_basis_label(
    ring: *const QkRing,
    index: u32,
    out: *mut *mut c_char,
) -> QkStatus {
    let (Some(ring), false) = (ring.as_ref(), out.is_null()) else {
        return QkStatus::NullPointer;
    };
    match ring.inner.basis_labels().get(index as usize) {
        Some(label) => {
            *out = string_out(label.clone());
            QkStatus::Ok
        }
        None => QkStatus::InvalidArgument,
    }
}

/// Full ring document (basis, multiplication table, provenance) as JSON;
/// free with `qk_string_free`.
///
/// # Safety
/// `ring` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qk_ring_to_json(ring: *const QkRing, out: *mut *mut c_char) -> QkStatus {
    let (Some(ring), false) = (ring.as_ref(), out.is_null()) else {
        return QkStatus::NullPointer;
    };
    match ring.inner.export_json() {
        Ok(json) => {
            *out = string_out(json);
            QkStatus::Ok
        }
        Err(_) => QkStatus::InternalError,
    }
}

unsafe fn parse_coords(ring: &QuadricKRing, text: *const c_char) -> Option<KClass> {
    if text.is_null() {
        return None;
    }
    let text = CStr::from_ptr(text).to_str().ok()?;
    let values: Vec<serde_json::Value> = serde_json::from_str(text).ok()?;
    if values.len() != ring.rank() {
        return None;
    }
    let mut coords = Vec::with_capacity(values.len());
    for v in values {
        let c: BigInt = match v {
            serde_json::Value::Number(n) => n.to_string().parse().ok()?,
            serde_json::Value::String(s) => s.parse().ok()?,
            _ => return None,
        };
        coords.push(c);
    }
    ring.class(coords).ok()
}

/// Multiply two classes given as JSON arrays of integers (numbers or decimal
/// strings) in the canonical basis; the product is returned the same way.
/// Free the result with `qk_string_free`.
///
/// # Safety
/// `ring`, `a`, `b` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qk_ring_mul_json(
    ring: *const QkRing,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> QkStatus {
    let (Some(ring), false) = (ring.as_ref(), out.is_null()) else {
        return QkStatus::NullPointer;
    };
    let (Some(ca), Some(cb)) = (parse_coords(&ring.inner, a), parse_coords(&ring.inner, b)) else {
        return QkStatus::InvalidArgument;
    };
    match ring.inner.mul(&ca, &cb) {
        Ok(prod) => {
            let coords: Vec<String> = prod.coords().iter().map(BigInt::to_string).collect();
            *out = string_out(serde_json::to_string(&coords).unwrap_or_default());
            QkStatus::Ok
        }
        Err(_) => QkStatus::InternalError,
    }
}

/// Exponent e with 2^e = the integer divisibility threshold of 1 + O(1) in
/// K(F), i.e. e = floor((m+1)/2).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_divisibility_exponent(m: u32, out: *mut u32) -> QkStatus {
    if out.is_null() {
        return QkStatus::NullPointer;
    }
    if m < 3 {
        return QkStatus::UnsupportedDimension;
    }
    *out = m.div_ceil(2);
    QkStatus::Ok
}

/// Decide whether 1 + O(1) divides the integer `l` (decimal string) in the
/// K-ring at ambient dimension m. When `out_witness_json` is non-null and
/// the answer is yes, it receives the witness coordinates as JSON (free with
/// `qk_string_free`; it is set to null otherwise).
///
/// # Safety
/// `l` and `out_divisible` must be valid pointers; `out_witness_json` may be
/// null.
#[no_mangle]
pub unsafe extern "C" fn qk_hyperplane_divides(
    m: u32,
    l: *const c_char,
    out_divisible: *mut bool,
    out_witness_json: *mut *mut c_char,
) -> QkStatus {
    if out_divisible.is_null() {
        return QkStatus::NullPointer;
    }
    if m < 3 {
        return QkStatus::UnsupportedDimension;
    }
    let Some(l) = parse_bigint(l) else {
        return QkStatus::InvalidArgument;
    };
    if !out_witness_json.is_null() {
        *out_witness_json = ptr::null_mut();
    }
    match hyperplane_divides(m as usize, &l) {
        Ok(witness) => {
            *out_divisible = witness.is_some();
            if let (Some(w), false) = (witness, out_witness_json.is_null()) {
                let coords: Vec<String> = w.coords().iter().map(BigInt::to_string).collect();
                *out_witness_json = string_out(serde_json::to_string(&coords).unwrap_or_default());
            }
            QkStatus::Ok
        }
        Err(_) => QkStatus::InternalError,
    }
}

/// Divisibility verdict for an n-dimensional secant-deficient manifold of
/// type delta: 1 admissible, 0 rejected, -1 when the constraint does not
/// apply (delta < 3).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_lqel_admissible(n: u64, delta: u64, out: *mut i32) -> QkStatus {
    if out.is_null() {
        return QkStatus::NullPointer;
    }
    if n < 1 || delta < 1 || delta > n {
        return QkStatus::InvalidArgument;
    }
    if delta < 3 {
        *out = -1;
        return QkStatus::Ok;
    }
    let threshold = BigInt::from(1u8) << ((delta as usize - 1) / 2);
    let diff = BigInt::from(n) - BigInt::from(delta);
    *out = if (diff % threshold) == BigInt::from(0) {
        1
    } else {
        0
    };
    QkStatus::Ok
}

/// Possible Severi-variety dimensions up to `n_max`, written into `buf`
/// (capacity `cap`); `*written` receives the count. Returns
/// `InvalidArgument` when the buffer is too small.
///
/// # Safety
/// `buf` must point to at least `cap` writable u64 slots; `written` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_severi_dimensions(
    n_max: u64,
    buf: *mut u64,
    cap: usize,
    written: *mut usize,
) -> QkStatus {
    if buf.is_null() || written.is_null() {
        return QkStatus::NullPointer;
    }
    let mut survivors = Vec::new();
    let mut n = 2u64;
    while n <= n_max {
        let admitted = if n <= 4 {
            true
        } else {
            let delta = n / 2;
            let threshold = BigInt::from(1u8) << ((delta as usize - 1) / 2);
            (BigInt::from(n - delta) % threshold) == BigInt::from(0)
        };
        if admitted {
            survivors.push(n);
        }
        n += 2;
    }
    *written = survivors.len();
    if survivors.len() > cap {
        return QkStatus::InvalidArgument;
    }
    for (i, v) in survivors.iter().enumerate() {
        *buf.add(i) = *v;
    }
    QkStatus::Ok
}

/// 2^[(m+1)/2] as a decimal string; free with `qk_string_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_divisibility_threshold(m: u32, out: *mut *mut c_char) -> QkStatus {
    if out.is_null() {
        return QkStatus::NullPointer;
    }
    if m < 3 {
        return QkStatus::UnsupportedDimension;
    }
    *out = string_out(integer_divisibility_threshold(m as usize).to_string());
    QkStatus::Ok
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a pointer previously returned by a qk_* function.
#[no_mangle]
pub unsafe extern "C" fn qk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    unsafe fn take_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        qk_string_free(p);
        s
    }

    #[test]
    fn ring_lifecycle_and_multiplication() {
        unsafe {
            let mut ring: *mut QkRing = ptr::null_mut();
            assert_eq!(qk_ring_new(4, &mut ring), QkStatus::Ok);
            assert!(!ring.is_null());

            let mut rank = 0u32;
            assert_eq!(qk_ring_rank(ring, &mut rank), QkStatus::Ok);
            assert_eq!(rank, 4);

            let mut label: *mut c_char = ptr::null_mut();
            assert_eq!(qk_ring_basis_label(ring, 3, &mut label), QkStatus::Ok);
            assert_eq!(take_string(label), "X");
            assert_eq!(
                qk_ring_basis_label(ring, 9, &mut label),
                QkStatus::InvalidArgument
            );

            // L * X = 4 - 2X.
            let a = CString::new("[0, 1, 0, 0]").unwrap();
            let b = CString::new("[0, 0, 0, 1]").unwrap();
            let mut prod: *mut c_char = ptr::null_mut();
            assert_eq!(
                qk_ring_mul_json(ring, a.as_ptr(), b.as_ptr(), &mut prod),
                QkStatus::Ok
            );
            assert_eq!(take_string(prod), r#"["4","0","0","-2"]"#);

            let mut doc: *mut c_char = ptr::null_mut();
            assert_eq!(qk_ring_to_json(ring, &mut doc), QkStatus::Ok);
            let json = take_string(doc);
            let v: serde_json::Value = serde_json::from_str(&json).unwrap();
            assert_eq!(v["m"], 4);

            qk_ring_free(ring);
        }
    }

    #[test]
    fn status_codes_for_bad_input() {
        unsafe {
            let mut ring: *mut QkRing = ptr::null_mut();
            assert_eq!(qk_ring_new(2, &mut ring), QkStatus::UnsupportedDimension);
            assert!(ring.is_null());
            assert_eq!(qk_ring_new(4, ptr::null_mut()), QkStatus::NullPointer);

            let mut e = 0u32;
            assert_eq!(
                qk_divisibility_exponent(2, &mut e),
                QkStatus::UnsupportedDimension
            );
            assert_eq!(qk_divisibility_exponent(9, &mut e), QkStatus::Ok);
            assert_eq!(e, 5);

            let mut out = -7i32;
            assert_eq!(
                qk_lqel_admissible(3, 5, &mut out),
                QkStatus::InvalidArgument
            );
        }
    }

    #[test]
    fn divisibility_oracle_matches_threshold() {
        unsafe {
            let l = CString::new("32").unwrap();
            let mut divisible = false;
            let mut witness: *mut c_char = ptr::null_mut();
            assert_eq!(
                qk_hyperplane_divides(9, l.as_ptr(), &mut divisible, &mut witness),
                QkStatus::Ok
            );
            assert!(divisible);
            let coords = take_string(witness);
            // Witness is X+ + X- at m = 9.
            let v: Vec<String> = serde_json::from_str(&coords).unwrap();
            assert_eq!(v.len(), 10);
            assert_eq!(v[8], "1");
            assert_eq!(v[9], "1");

            let l = CString::new("16").unwrap();
            assert_eq!(
                qk_hyperplane_divides(9, l.as_ptr(), &mut divisible, ptr::null_mut()),
                QkStatus::Ok
            );
            assert!(!divisible);
        }
    }

    #[test]
    fn lqel_and_severi_wrappers() {
        unsafe {
            let mut out = 0i32;
            assert_eq!(qk_lqel_admissible(16, 8, &mut out), QkStatus::Ok);
            assert_eq!(out, 1);
            assert_eq!(qk_lqel_admissible(12, 6, &mut out), QkStatus::Ok);
            assert_eq!(out, 0);
            assert_eq!(qk_lqel_admissible(5, 2, &mut out), QkStatus::Ok);
            assert_eq!(out, -1);

            let mut buf = [0u64; 16];
            let mut written = 0usize;
            assert_eq!(
                qk_severi_dimensions(100, buf.as_mut_ptr(), buf.len(), &mut written),
                QkStatus::Ok
            );
            assert_eq!(&buf[..written], &[2, 4, 8, 16]);

            let mut threshold: *mut c_char = ptr::null_mut();
            assert_eq!(qk_divisibility_threshold(9, &mut threshold), QkStatus::Ok);
            assert_eq!(take_string(threshold), "32");
        }
    }
}
