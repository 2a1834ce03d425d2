//! C ABI for the polysurf library.
//!
//! Complexes are opaque handles created from psc-1 text or a generator spec
//! and freed with [`psf_complex_free`]. Every fallible call returns a
//! [`PsfStatus`]; on failure a thread-local message is readable through
//! [`psf_last_error`]. The matching declarations live in
//! `include/polysurf.h`.

use std::cell::RefCell;
use std::ffi::{c_char, c_double, c_int, CStr, CString};

use num::ToPrimitive;

use polysurf::complex::{PolygonalComplex, VertexType};
use polysurf::curvature::{classify, curvature, CurvatureProfile, TypeVerdict};
use polysurf::gauss_bonnet::check_gauss_bonnet;
use polysurf::generators::{generate, GeneratorSpec};
use polysurf::psc::{parse_psc, write_psc};
use polysurf::spherical::{critical_radius, phi_s};

/// Result codes shared with the C header.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsfStatus {
    Ok = 0,
    InvalidArgument = 1,
    ParseError = 2,
    ValidationError = 3,
    NumericalError = 4,
}

/// Conformal type codes shared with the C header.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsfVerdict {
    Elliptic = 0,
    Parabolic = 1,
    Hyperbolic = 2,
    Indeterminate = 3,
}

/// Opaque complex handle.
pub struct PsfComplex {
    inner: PolygonalComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).expect("nul bytes stripped");
    });
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn psf_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, PsfStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(PsfStatus::InvalidArgument);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        PsfStatus::InvalidArgument
    })
}

fn export(complex: PolygonalComplex, out: *mut *mut PsfComplex) -> PsfStatus {
    if out.is_null() {
        set_error("null output handle");
        return PsfStatus::InvalidArgument;
    }
    let handle = Box::new(PsfComplex { inner: complex });
    unsafe { *out = Box::into_raw(handle) };
    PsfStatus::Ok
}

unsafe fn borrow<'a>(handle: *const PsfComplex) -> Result<&'a PolygonalComplex, PsfStatus> {
    if handle.is_null() {
        set_error("null complex handle");
        return Err(PsfStatus::InvalidArgument);
    }
    Ok(unsafe { &(*handle).inner })
}

/// Parses psc-1 text into a new complex handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn psf_complex_from_psc(
    text: *const c_char,
    out: *mut *mut PsfComplex,
) -> PsfStatus {
    let text = match unsafe { read_str(text) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    let data = match parse_psc(text) {
        Ok(d) => d,
        Err(e) => {
            set_error(e.to_string());
            return PsfStatus::ParseError;
        }
    };
    match PolygonalComplex::build(&data) {
        Ok(c) => export(c, out),
        Err(e) => {
            set_error(e.to_string());
            PsfStatus::ValidationError
        }
    }
}

/// Builds a generator family, e.g. `"dodecahedron"` or `"pq-ball 7 3 2"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn psf_complex_generate(
    spec: *const c_char,
    out: *mut *mut PsfComplex,
) -> PsfStatus {
    let text = match unsafe { read_str(spec) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    let spec = match GeneratorSpec::parse(text) {
        Ok(s) => s,
        Err(e) => {
            set_error(e.to_string());
            return PsfStatus::InvalidArgument;
        }
    };
    match generate(spec) {
        Ok(c) => export(c, out),
        Err(e) => {
            set_error(e.to_string());
            PsfStatus::ValidationError
        }
    }
}

/// Frees a complex handle. Null is accepted.
///
/// # Safety
/// `handle` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn psf_complex_free(handle: *mut PsfComplex) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Vertex, edge, and face counts.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn psf_complex_counts(
    handle: *const PsfComplex,
    vertices: *mut u64,
    edges: *mut u64,
    faces: *mut u64,
) -> PsfStatus {
    let complex = match unsafe { borrow(handle) } {
        Ok(c) => c,
        Err(status) => return status,
    };
    if vertices.is_null() || edges.is_null() || faces.is_null() {
        set_error("null output pointer");
        return PsfStatus::InvalidArgument;
    }
    unsafe {
        *vertices = complex.num_vertices() as u64;
        *edges = complex.num_edges() as u64;
        *faces = complex.num_faces() as u64;
    }
    PsfStatus::Ok
}

/// Sets flags for closedness, orientability, and the edge-to-edge property
/// (1 = true, 0 = false).
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn psf_complex_flags(
    handle: *const PsfComplex,
    closed: *mut c_int,
    orientable: *mut c_int,
    edge_to_edge: *mut c_int,
) -> PsfStatus {
    let complex = match unsafe { borrow(handle) } {
        Ok(c) => c,
        Err(status) => return status,
    };
    if closed.is_null() || orientable.is_null() || edge_to_edge.is_null() {
        set_error("null output pointer");
        return PsfStatus::InvalidArgument;
    }
    unsafe {
        *closed = complex.is_closed() as c_int;
        *orientable = complex.is_orientable() as c_int;
        *edge_to_edge = complex.is_edge_to_edge() as c_int;
    }
    PsfStatus::Ok
}

/// Euler characteristic and the exact curvature sum (as a fraction); also
/// reports whether the two agree.
///
/// # Safety
/// All pointers must be valid; the complex must be closed.
#[no_mangle]
pub unsafe extern "C" fn psf_complex_gauss_bonnet(
    handle: *const PsfComplex,
    chi: *mut i64,
    curvature_num: *mut i64,
    curvature_den: *mut i64,
    consistent: *mut c_int,
) -> PsfStatus {
    let complex = match unsafe { borrow(handle) } {
        Ok(c) => c,
        Err(status) => return status,
    };
    if chi.is_null() || curvature_num.is_null() || curvature_den.is_null() || consistent.is_null()
    {
        set_error("null output pointer");
        return PsfStatus::InvalidArgument;
    }
    let report = match check_gauss_bonnet(complex) {
        Ok(r) => r,
        Err(e) => {
            set_error(e.to_string());
            return PsfStatus::ValidationError;
        }
    };
    let (Some(num), Some(den)) = (
        report.curvature_sum.numer().to_i64(),
        report.curvature_sum.denom().to_i64(),
    ) else {
        set_error("curvature sum does not fit in 64 bits");
        return PsfStatus::NumericalError;
    };
    unsafe {
        *chi = report.chi_euler;
        *curvature_num = num;
        *curvature_den = den;
        *consistent = report.consistent as c_int;
    }
    PsfStatus::Ok
}

/// Conformal type of the universal cover by curvature signs.
///
/// # Safety
/// All pointers must be valid; the complex must be closed and orientable.
#[no_mangle]
pub unsafe extern "C" fn psf_complex_classify(
    handle: *const PsfComplex,
    verdict: *mut PsfVerdict,
) -> PsfStatus {
    let complex = match unsafe { borrow(handle) } {
        Ok(c) => c,
        Err(status) => return status,
    };
    if verdict.is_null() {
        set_error("null output pointer");
        return PsfStatus::InvalidArgument;
    }
    let profile = match CurvatureProfile::from_complex(complex) {
        Ok(p) => p,
        Err(e) => {
            set_error(e.to_string());
            return PsfStatus::ValidationError;
        }
    };
    let value = match classify(&profile) {
        TypeVerdict::Elliptic => PsfVerdict::Elliptic,
        TypeVerdict::Parabolic => PsfVerdict::Parabolic,
        TypeVerdict::Hyperbolic => PsfVerdict::Hyperbolic,
        TypeVerdict::Indeterminate(reason) => {
            set_error(reason);
            PsfVerdict::Indeterminate
        }
    };
    unsafe { *verdict = value };
    PsfStatus::Ok
}

/// Serializes the complex back to psc-1 text; free with [`psf_string_free`].
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn psf_complex_to_psc(
    handle: *const PsfComplex,
    out: *mut *mut c_char,
) -> PsfStatus {
    let complex = match unsafe { borrow(handle) } {
        Ok(c) => c,
        Err(status) => return status,
    };
    if out.is_null() {
        set_error("null output pointer");
        return PsfStatus::InvalidArgument;
    }
    let text = write_psc(&complex.to_gluing_data());
    let text = CString::new(text).expect("psc documents contain no NUL");
    unsafe { *out = text.into_raw() };
    PsfStatus::Ok
}

/// Frees a string returned by this library. Null is accepted.
///
/// # Safety
/// `text` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn psf_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

fn tuple_from_raw(sizes: *const u32, len: usize) -> Result<VertexType, PsfStatus> {
    if sizes.is_null() || len == 0 {
        set_error("vertex-type must be a non-empty array");
        return Err(PsfStatus::InvalidArgument);
    }
    let slice = unsafe { std::slice::from_raw_parts(sizes, len) };
    let tuple: Vec<usize> = slice.iter().map(|&k| k as usize).collect();
    VertexType::cyclic(&tuple).map_err(|e| {
        set_error(e.to_string());
        PsfStatus::InvalidArgument
    })
}

/// Exact combinatorial curvature of a vertex-type, as a reduced fraction.
///
/// # Safety
/// `sizes` must point to `len` entries; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn psf_vertex_curvature(
    sizes: *const u32,
    len: usize,
    num: *mut i64,
    den: *mut i64,
) -> PsfStatus {
    let vt = match tuple_from_raw(sizes, len) {
        Ok(t) => t,
        Err(status) => return status,
    };
    if num.is_null() || den.is_null() {
        set_error("null output pointer");
        return PsfStatus::InvalidArgument;
    }
    let kappa = curvature(&vt);
    let (Some(n), Some(d)) = (kappa.numer().to_i64(), kappa.denom().to_i64()) else {
        set_error("curvature does not fit in 64 bits");
        return PsfStatus::NumericalError;
    };
    unsafe {
        *num = n;
        *den = d;
    }
    PsfStatus::Ok
}

/// Base angle of the unit regular r-spherical n-gon.
///
/// # Safety
/// `phi` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn psf_phi_s(r: c_double, n: u32, phi: *mut c_double) -> PsfStatus {
    if phi.is_null() {
        set_error("null output pointer");
        return PsfStatus::InvalidArgument;
    }
    match phi_s(r, n as usize) {
        Ok(angle) => {
            unsafe { *phi = angle.phi };
            PsfStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            PsfStatus::ValidationError
        }
    }
}

/// Critical radius for one vertex-type with the given margin.
///
/// # Safety
/// `sizes` must point to `len` entries; `radius` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn psf_critical_radius(
    sizes: *const u32,
    len: usize,
    margin: c_double,
    radius: *mut c_double,
) -> PsfStatus {
    let vt = match tuple_from_raw(sizes, len) {
        Ok(t) => t,
        Err(status) => return status,
    };
    if radius.is_null() {
        set_error("null output pointer");
        return PsfStatus::InvalidArgument;
    }
    match critical_radius(&[vt], margin) {
        Ok(r) => {
            unsafe { *radius = r };
            PsfStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            match e {
                polysurf::spherical::SphericalError::NonConvergence(_) => {
                    PsfStatus::NumericalError
                }
                _ => PsfStatus::ValidationError,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(text: &str) -> CString {
        CString::new(text).unwrap()
    }

    #[test]
    fn generate_inspect_and_free() {
        let mut handle: *mut PsfComplex = std::ptr::null_mut();
        let spec = cstr("dodecahedron");
        let status = unsafe { psf_complex_generate(spec.as_ptr(), &mut handle) };
        assert_eq!(status, PsfStatus::Ok);
        let (mut v, mut e, mut f) = (0u64, 0u64, 0u64);
        let status = unsafe { psf_complex_counts(handle, &mut v, &mut e, &mut f) };
        assert_eq!(status, PsfStatus::Ok);
        assert_eq!((v, e, f), (20, 30, 12));

        let mut verdict = PsfVerdict::Indeterminate;
        let status = unsafe { psf_complex_classify(handle, &mut verdict) };
        assert_eq!(status, PsfStatus::Ok);
        assert_eq!(verdict, PsfVerdict::Elliptic);

        let (mut closed, mut orientable, mut e2e) = (0, 0, 0);
        let status =
            unsafe { psf_complex_flags(handle, &mut closed, &mut orientable, &mut e2e) };
        assert_eq!(status, PsfStatus::Ok);
        assert_eq!((closed, orientable, e2e), (1, 1, 1));

        let (mut chi, mut num, mut den, mut ok) = (0i64, 0i64, 0i64, 0);
        let status = unsafe {
            psf_complex_gauss_bonnet(handle, &mut chi, &mut num, &mut den, &mut ok)
        };
        assert_eq!(status, PsfStatus::Ok);
        assert_eq!((chi, num, den, ok), (2, 2, 1, 1));
        unsafe { psf_complex_free(handle) };
    }

    #[test]
    fn psc_round_trip_through_the_abi() {
        let mut handle: *mut PsfComplex = std::ptr::null_mut();
        let spec = cstr("square-torus");
        assert_eq!(
            unsafe { psf_complex_generate(spec.as_ptr(), &mut handle) },
            PsfStatus::Ok
        );
        let mut text: *mut c_char = std::ptr::null_mut();
        assert_eq!(unsafe { psf_complex_to_psc(handle, &mut text) }, PsfStatus::Ok);
        let round = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
        unsafe { psf_string_free(text) };
        unsafe { psf_complex_free(handle) };

        let mut again: *mut PsfComplex = std::ptr::null_mut();
        let doc = cstr(&round);
        assert_eq!(
            unsafe { psf_complex_from_psc(doc.as_ptr(), &mut again) },
            PsfStatus::Ok
        );
        let (mut v, mut e, mut f) = (0u64, 0u64, 0u64);
        unsafe { psf_complex_counts(again, &mut v, &mut e, &mut f) };
        assert_eq!((v, e, f), (1, 2, 1));
        unsafe { psf_complex_free(again) };
    }

    #[test]
    fn errors_set_status_and_message() {
        let mut handle: *mut PsfComplex = std::ptr::null_mut();
        let bad = cstr("{\"format\": \"psc-2\", \"faces\": [], \"gluings\": []}");
        let status = unsafe { psf_complex_from_psc(bad.as_ptr(), &mut handle) };
        assert_eq!(status, PsfStatus::ParseError);
        let message = unsafe { CStr::from_ptr(psf_last_error()) }.to_str().unwrap();
        assert!(message.contains("psc-1"), "{message}");

        let unknown = cstr("klein-bottle");
        let status = unsafe { psf_complex_generate(unknown.as_ptr(), &mut handle) };
        assert_eq!(status, PsfStatus::InvalidArgument);
    }

    #[test]
    fn scalar_helpers() {
        let sizes = [7u32, 7, 7];
        let (mut num, mut den) = (0i64, 0i64);
        let status =
            unsafe { psf_vertex_curvature(sizes.as_ptr(), sizes.len(), &mut num, &mut den) };
        assert_eq!(status, PsfStatus::Ok);
        assert_eq!((num, den), (-1, 14));

        let mut phi = 0f64;
        assert_eq!(unsafe { psf_phi_s(1.0, 4, &mut phi) }, PsfStatus::Ok);
        assert!((phi - 0.9369303962653182).abs() < 1e-12);
        assert_eq!(
            unsafe { psf_phi_s(0.3, 4, &mut phi) },
            PsfStatus::ValidationError
        );

        let sizes = [4u32, 4, 4];
        let mut radius = 0f64;
        let status = unsafe {
            psf_critical_radius(sizes.as_ptr(), sizes.len(), 0.0, &mut radius)
        };
        assert_eq!(status, PsfStatus::Ok);
        assert!((radius - 1.0 / (1f64 / 3.0).acos()).abs() < 1e-9);
    }
}
