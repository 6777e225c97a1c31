//! C interface. Objects cross the boundary as opaque handles that the caller frees with the
//! matching `*_free`; every call returns a `BlStatus` and writes results through pointers.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use boundary_lab::cli::classify_report;
use boundary_lab::covering::{build_annulus_covering, build_punctured_disk_covering, classify_radial, ExplicitCovering, RadialClass};
use boundary_lab::domain::load_system;
use boundary_lab::exhaustion::{radial_type, ExhaustionError, RadialType};
use boundary_lab::group::{limit_set_cover, GroupError, SchottkySystem};
use boundary_lab::harmonic::{harmonic_measure_annulus, MethodRequest};
use boundary_lab::prime_ends::{classify_prime_end, prime_end_quotient_count, PrimeEndClass, PrimeEndError};
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Ambiguous = 4,
    NotEscaping = 5,
    ResourceLimit = 6,
    Domain = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlRadialType {
    Escaping = 0,
    Bounded = 1,
    Bungee = 2,
    Undecided = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlPrimeEndClass {
    Regular = 0,
    Singular = 1,
    Parabolic = 2,
}

/// Opaque pairing system.
pub struct BlSystem(SchottkySystem);

/// Opaque explicit covering.
pub struct BlCovering(ExplicitCovering);

fn group_status(e: &GroupError) -> BlStatus {
    match e {
        GroupError::AmbiguousAtTolerance { .. } => BlStatus::Ambiguous,
        GroupError::ResourceLimit { .. } => BlStatus::ResourceLimit,
        GroupError::Malformed(_) => BlStatus::Parse,
        _ => BlStatus::Domain,
    }
}

fn exhaustion_status(e: &ExhaustionError) -> BlStatus {
    match e {
        ExhaustionError::Group(g) => group_status(g),
        _ => BlStatus::Domain,
    }
}

fn prime_end_status(e: &PrimeEndError) -> BlStatus {
    match e {
        PrimeEndError::Group(g) => group_status(g),
        PrimeEndError::Exhaustion(x) => exhaustion_status(x),
        PrimeEndError::NotEscaping { .. } => BlStatus::NotEscaping,
        _ => BlStatus::Domain,
    }
}

fn guard(f: impl FnOnce() -> BlStatus) -> BlStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(BlStatus::Panic)
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, BlStatus> {
    if s.is_null() {
        return Err(BlStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| BlStatus::InvalidArgument)
}

unsafe fn write<T>(out: *mut T, value: T) -> BlStatus {
    if out.is_null() {
        return BlStatus::NullPointer;
    }
    *out = value;
    BlStatus::Ok
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn bl_status_message(status: BlStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BlStatus::Ok => c"ok",
        BlStatus::NullPointer => c"null pointer argument",
        BlStatus::InvalidArgument => c"invalid argument",
        BlStatus::Parse => c"input could not be parsed",
        BlStatus::Ambiguous => c"point is ambiguous at the coding tolerance",
        BlStatus::NotEscaping => c"point is not of escaping type",
        BlStatus::ResourceLimit => c"resource limit exceeded",
        BlStatus::Domain => c"computation rejected the input",
        BlStatus::Panic => c"internal error",
    };
    s.as_ptr()
}

/// Load a fixture by name, or a system or domain JSON file by path.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_system_load(name: *const c_char, levels: u32, out: *mut *mut BlSystem) -> BlStatus {
    guard(|| {
        let name = match str_arg(name) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match load_system(name, levels) {
            Ok(sys) => write(out, Box::into_raw(Box::new(BlSystem(sys)))),
            Err(_) => BlStatus::Parse,
        }
    })
}

/// Parse a system from its JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_system_from_json(json: *const c_char, out: *mut *mut BlSystem) -> BlStatus {
    guard(|| {
        let text = match str_arg(json) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match SchottkySystem::from_json_str(text) {
            Ok(sys) => write(out, Box::into_raw(Box::new(BlSystem(sys)))),
            Err(_) => BlStatus::Parse,
        }
    })
}

/// # Safety
/// `sys` must come from `bl_system_load`/`bl_system_from_json` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bl_system_free(sys: *mut BlSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_system_rank(sys: *const BlSystem, out: *mut usize) -> BlStatus {
    guard(|| match sys.as_ref() {
        Some(s) => write(out, s.0.rank()),
        None => BlStatus::NullPointer,
    })
}

/// Radial type of `e^{iθ}` from at most `horizon` itinerary letters.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_radial_type(sys: *const BlSystem, theta: f64, horizon: usize, out: *mut BlRadialType) -> BlStatus {
    guard(|| {
        let Some(s) = sys.as_ref() else { return BlStatus::NullPointer };
        match radial_type(&s.0, theta, horizon) {
            Ok(t) => write(
                out,
                match t {
                    RadialType::Escaping => BlRadialType::Escaping,
                    RadialType::Bounded => BlRadialType::Bounded,
                    RadialType::Bungee => BlRadialType::Bungee,
                    RadialType::Undecided => BlRadialType::Undecided,
                },
            ),
            Err(e) => exhaustion_status(&e),
        }
    })
}

/// Prime-end class at an escaping point.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_prime_end_class(sys: *const BlSystem, theta: f64, horizon: usize, out: *mut BlPrimeEndClass) -> BlStatus {
    guard(|| {
        let Some(s) = sys.as_ref() else { return BlStatus::NullPointer };
        match classify_prime_end(&s.0, theta, horizon) {
            Ok(pe) => write(
                out,
                match pe.class {
                    PrimeEndClass::Regular => BlPrimeEndClass::Regular,
                    PrimeEndClass::Singular => BlPrimeEndClass::Singular,
                    PrimeEndClass::Parabolic => BlPrimeEndClass::Parabolic,
                },
            ),
            Err(e) => prime_end_status(&e),
        }
    })
}

/// Total length of the limit-set cover at `depth`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_cover_length(sys: *const BlSystem, depth: usize, out: *mut f64) -> BlStatus {
    guard(|| {
        let Some(s) = sys.as_ref() else { return BlStatus::NullPointer };
        match limit_set_cover(&s.0, depth) {
            Ok(c) => write(out, c.total_length),
            Err(e) => group_status(&e),
        }
    })
}

/// Number of prime-end classes of depth-0 gaps.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_quotient_count(sys: *const BlSystem, horizon: u32, out: *mut usize) -> BlStatus {
    guard(|| {
        let Some(s) = sys.as_ref() else { return BlStatus::NullPointer };
        match prime_end_quotient_count(&s.0, horizon) {
            Ok(q) => write(out, q.classes),
            Err(e) => prime_end_status(&e),
        }
    })
}

/// Classification report of `e^{iθ}` as a JSON string, released with `bl_string_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_classify_json(sys: *const BlSystem, theta: f64, horizon: usize, out: *mut *mut c_char) -> BlStatus {
    guard(|| {
        let Some(s) = sys.as_ref() else { return BlStatus::NullPointer };
        match classify_report(&s.0, theta, horizon) {
            Ok(r) => {
                let text = serde_json::to_string(&r).expect("serializable report");
                write(out, CString::new(text).expect("no interior NUL").into_raw())
            }
            Err(_) => BlStatus::Domain,
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Covering of `{1/R < |z| < R}`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_covering_annulus(r: f64, out: *mut *mut BlCovering) -> BlStatus {
    guard(|| match build_annulus_covering(r) {
        Ok(c) => write(out, Box::into_raw(Box::new(BlCovering(c)))),
        Err(_) => BlStatus::InvalidArgument,
    })
}

/// Covering of the punctured unit disk.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_covering_punctured(out: *mut *mut BlCovering) -> BlStatus {
    guard(|| write(out, Box::into_raw(Box::new(BlCovering(build_punctured_disk_covering())))))
}

/// # Safety
/// `cov` must come from a `bl_covering_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bl_covering_free(cov: *mut BlCovering) {
    if !cov.is_null() {
        drop(Box::from_raw(cov));
    }
}

/// `π(re + i·im)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_covering_eval(cov: *const BlCovering, re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> BlStatus {
    guard(|| {
        let Some(c) = cov.as_ref() else { return BlStatus::NullPointer };
        if out_re.is_null() || out_im.is_null() {
            return BlStatus::NullPointer;
        }
        match c.0.eval(Complex64::new(re, im)) {
            Ok(w) => {
                *out_re = w.re;
                *out_im = w.im;
                BlStatus::Ok
            }
            Err(_) => BlStatus::InvalidArgument,
        }
    })
}

/// Radial type along the radius to `e^{iθ}` of an explicit covering; `Undecided` stands
/// for an undetermined trace.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_covering_radial(cov: *const BlCovering, theta: f64, samples: usize, out: *mut BlRadialType) -> BlStatus {
    guard(|| {
        let Some(c) = cov.as_ref() else { return BlStatus::NullPointer };
        match classify_radial(&c.0, theta, samples) {
            Ok(RadialClass::Escaping) => write(out, BlRadialType::Escaping),
            Ok(RadialClass::Bounded) => write(out, BlRadialType::Bounded),
            Ok(RadialClass::Undetermined) => write(out, BlRadialType::Undecided),
            Err(_) => BlStatus::InvalidArgument,
        }
    })
}

/// Harmonic measure of the inner circle of `{1/R < |z| < R}` at `re + i·im`. With
/// `n_walks == 0` the closed form is used and the standard error is 0.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_harmonic_annulus(
    r: f64,
    re: f64,
    im: f64,
    n_walks: u64,
    seed: u64,
    out_value: *mut f64,
    out_stderr: *mut f64,
) -> BlStatus {
    guard(|| {
        if out_value.is_null() || out_stderr.is_null() {
            return BlStatus::NullPointer;
        }
        let method = if n_walks == 0 { MethodRequest::ClosedForm } else { MethodRequest::MonteCarlo { n_walks, seed } };
        match harmonic_measure_annulus(r, Complex64::new(re, im), method) {
            Ok(e) => {
                *out_value = e.value;
                *out_stderr = e.stderr;
                BlStatus::Ok
            }
            Err(_) => BlStatus::InvalidArgument,
        }
    })
}
