//! C interface to `fiblucas`.
//!
//! Polynomials cross the boundary as opaque `FlPoly` handles (create with
//! `fl_poly_from_json`, release with `fl_poly_free`) or as JSON text.
//! Every call returns an `FlStatus`; on failure `fl_last_error_message`
//! describes the error for the calling thread. Strings returned through
//! `char **out` parameters are owned by the caller and released with
//! `fl_string_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fiblucas::dixmier::{cayley_closed, cayley_constructive};
use fiblucas::exactnum::format_rational;
use fiblucas::identity::{discriminant_demo, emit, phi_subst, verify_identity, Format};
use fiblucas::intertwine::{alpha, b_sequence, check_intertwining, psi};
use fiblucas::{Builtin, Derivation, Error, FamilyKind, MapKind, Poly, Route};

/// Opaque polynomial handle.
pub struct FlPoly(Poly);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    InvalidArgument = 4,
    Computation = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlFamily {
    Fibonacci = 0,
    Lucas = 1,
    Appell = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlMapKind {
    Al = 0,
    Af = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlRoute {
    Recurrence = 0,
    Beta = 1,
    Series = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlCayleyRoute {
    Closed = 0,
    Constructive = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlFormat {
    Json = 0,
    Latex = 1,
}

impl From<FlFamily> for FamilyKind {
    fn from(f: FlFamily) -> Self {
        match f {
            FlFamily::Fibonacci => FamilyKind::Fibonacci,
            FlFamily::Lucas => FamilyKind::Lucas,
            FlFamily::Appell => FamilyKind::AppellMonomial,
        }
    }
}

impl From<FlMapKind> for MapKind {
    fn from(k: FlMapKind) -> Self {
        match k {
            FlMapKind::Al => MapKind::AL,
            FlMapKind::Af => MapKind::AF,
        }
    }
}

impl From<FlRoute> for Route {
    fn from(r: FlRoute) -> Self {
        match r {
            FlRoute::Recurrence => Route::RecurrenceDirect,
            FlRoute::Beta => Route::BetaDecomposition,
            FlRoute::Series => Route::SeriesReciprocal,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

struct Failure(FlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Json(_) => FlStatus::InvalidJson,
            Error::InvalidArgument(_) | Error::BelowMinimum { .. } | Error::UnknownFormat(_) => {
                FlStatus::InvalidArgument
            }
            _ => FlStatus::Computation,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FlStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, recording any error or panic for `fl_last_error_message`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FlStatus {
    let result = catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|_| Err(Failure(FlStatus::Panic, "internal panic".into())));
    match result {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FlStatus::Ok
        }
        Err(Failure(status, msg)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
            status
        }
    }
}

unsafe fn poly_ref<'a>(p: *const FlPoly) -> Result<&'a Poly, Failure> {
    p.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| null("polynomial handle"))
}

unsafe fn write_poly(out: *mut *mut FlPoly, p: Poly) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(FlPoly(p)));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s)
        .map_err(|_| Failure(FlStatus::Computation, "interior NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_value<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = v;
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Free with `fl_string_free`.
#[no_mangle]
pub extern "C" fn fl_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_deref() {
        Some(msg) => {
            CString::new(msg.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
        }
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_poly_from_json(json: *const c_char, out: *mut *mut FlPoly) -> FlStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Failure(FlStatus::InvalidUtf8, "input is not UTF-8".into()))?;
        write_poly(out, Poly::from_json(text)?)
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_poly_to_json(p: *const FlPoly, out: *mut *mut c_char) -> FlStatus {
    guard(|| write_string(out, poly_ref(p)?.to_json()))
}

/// # Safety
/// `p` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fl_poly_free(p: *mut FlPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_poly_equal(
    a: *const FlPoly,
    b: *const FlPoly,
    out: *mut bool,
) -> FlStatus {
    guard(|| write_value(out, poly_ref(a)? == poly_ref(b)?))
}

/// Applies the family's derivation `power` times.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_derive(
    family: FlFamily,
    p: *const FlPoly,
    power: u32,
    out: *mut *mut FlPoly,
) -> FlStatus {
    guard(|| {
        let d = Derivation::Builtin(Builtin::from(FamilyKind::from(family)));
        write_poly(out, d.derive_power(poly_ref(p)?, power as usize)?)
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_kernel_member(
    family: FlFamily,
    p: *const FlPoly,
    out: *mut bool,
) -> FlStatus {
    guard(|| {
        let d = Derivation::Builtin(Builtin::from(FamilyKind::from(family)));
        write_value(out, d.kernel_member(poly_ref(p)?)?)
    })
}

/// Cayley element `C_n` of the Fibonacci or Lucas derivation.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_cayley(
    family: FlFamily,
    n: u32,
    route: FlCayleyRoute,
    out: *mut *mut FlPoly,
) -> FlStatus {
    guard(|| {
        let kind = Builtin::from(FamilyKind::from(family));
        let c = match route {
            FlCayleyRoute::Closed => cayley_closed(kind, n)?,
            FlCayleyRoute::Constructive => cayley_constructive(kind, n)?,
        };
        write_poly(out, c)
    })
}

/// Substitutes `x_i -> F_i(x)` / `L_i(x)` / `x^i`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_phi_subst(
    family: FlFamily,
    p: *const FlPoly,
    out: *mut *mut FlPoly,
) -> FlStatus {
    guard(|| write_poly(out, phi_subst(family.into(), poly_ref(p)?)?))
}

/// Identity report as JSON or LaTeX text.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_verify_identity(
    family: FlFamily,
    p: *const FlPoly,
    format: FlFormat,
    out: *mut *mut c_char,
) -> FlStatus {
    guard(|| {
        let report = verify_identity(poly_ref(p)?, family.into())?;
        let format = match format {
            FlFormat::Json => Format::Json,
            FlFormat::Latex => Format::Latex,
        };
        write_string(out, emit(&report, format))
    })
}

/// First `count` b-coefficients as a JSON array of fraction strings.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_b_sequence(
    kind: FlMapKind,
    count: u32,
    out: *mut *mut c_char,
) -> FlStatus {
    guard(|| {
        let b: Vec<String> = b_sequence(kind.into(), count as usize)?
            .iter()
            .map(format_rational)
            .collect();
        write_string(out, serde_json::to_string(&b).expect("string array"))
    })
}

/// `alpha_n^(s)` as a fraction string `"p"` or `"p/q"`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_alpha(
    kind: FlMapKind,
    n: u32,
    s: u32,
    route: FlRoute,
    out: *mut *mut c_char,
) -> FlStatus {
    guard(|| {
        write_string(
            out,
            format_rational(&alpha(kind.into(), n, s, route.into())?),
        )
    })
}

/// Builds `psi` to `n_max` and checks it against the Appell derivation; JSON report.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_check_intertwining(
    kind: FlMapKind,
    n_max: u32,
    route: FlRoute,
    out: *mut *mut c_char,
) -> FlStatus {
    guard(|| {
        let kind = MapKind::from(kind);
        let m = psi(kind, n_max, route.into())?;
        let report = check_intertwining(&m, &Derivation::appell(), &kind.target(), n_max)?;
        write_string(out, report.to_json())
    })
}

/// Staged determinant report as JSON; `ok` receives whether every stage passed.
///
/// # Safety
/// `out` and `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fl_discriminant_demo(out: *mut *mut c_char, ok: *mut bool) -> FlStatus {
    guard(|| {
        let report = discriminant_demo()?;
        write_value(ok, report.ok)?;
        write_string(out, report.to_json())
    })
}
