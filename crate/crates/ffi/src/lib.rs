//! C ABI over `specmom`.
//!
//! Spectra live behind the opaque `SmSpectrum` handle. Every function
//! returns an `SmStatus`; on failure `sm_last_error` describes the problem.
//! Strings handed out by the library are released with `sm_string_free`,
//! rationals cross the boundary as decimal `p/q` strings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use specmom::bernoulli::bernoulli_numbers;
use specmom::bernoulli_poly::a_eval;
use specmom::harness::{check_conjecture, gamma_moments, trace_convergence, Mode};
use specmom::rational::{parse_rational, rat, Rational};
use specmom::spectra::{
    spectrum_curve, spectrum_from_weights, spectrum_tpqr, thom_sebastiani, PuiseuxData, Spectrum, TpqrParams,
    WeightSystem,
};

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmStatus {
    Ok = 0,
    /// A required pointer was null.
    Null = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// A string argument was not UTF-8.
    Utf8 = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// Opaque spectrum handle.
pub struct SmSpectrum(Spectrum);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SmStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn invalid(e: impl ToString) -> Failure {
    Failure(SmStatus::InvalidArgument, e.to_string())
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> SmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SmStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SmStatus::Internal
        }
    }
}

fn nonnull<T>(p: *const T, what: &str) -> FfiResult<()> {
    if p.is_null() {
        Err(Failure(SmStatus::Null, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    nonnull(p, what)?;
    CStr::from_ptr(p).to_str().map_err(|e| Failure(SmStatus::Utf8, format!("{what}: {e}")))
}

unsafe fn read_rational(p: *const c_char, what: &str) -> FfiResult<Rational> {
    parse_rational(read_str(p, what)?).map_err(|e| Failure(SmStatus::Parse, format!("{what}: {e}")))
}

unsafe fn read_slice<'a>(p: *const i64, len: usize, what: &str) -> FfiResult<&'a [i64]> {
    if len == 0 {
        return Ok(&[]);
    }
    nonnull(p, what)?;
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn spectrum<'a>(s: *const SmSpectrum) -> FfiResult<&'a Spectrum> {
    nonnull(s, "spectrum")?;
    Ok(&(*s).0)
}

unsafe fn put_spectrum(out: *mut *mut SmSpectrum, s: Spectrum) -> FfiResult<()> {
    nonnull(out, "out")?;
    *out = Box::into_raw(Box::new(SmSpectrum(s)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    nonnull(out, "out")?;
    *out = CString::new(s).map_err(|e| Failure(SmStatus::Internal, e.to_string()))?.into_raw();
    Ok(())
}

/// Spectrum of a quasihomogeneous singularity with weights
/// `num[i]/den[i]`, `i < len`.
///
/// # Safety
/// `num` and `den` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_spectrum_from_weights(
    num: *const i64,
    den: *const i64,
    len: usize,
    out: *mut *mut SmSpectrum,
) -> SmStatus {
    guard(|| {
        let (n, d) = (read_slice(num, len, "num")?, read_slice(den, len, "den")?);
        if d.contains(&0) {
            return Err(invalid("zero denominator"));
        }
        let w = WeightSystem::new(n.iter().zip(d).map(|(a, b)| rat(*a, *b)).collect()).map_err(invalid)?;
        put_spectrum(out, spectrum_from_weights(&w).map_err(invalid)?)
    })
}

/// Spectrum of the hyperbolic singularity `T_{p,q,r}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_spectrum_tpqr(p: i64, q: i64, r: i64, out: *mut *mut SmSpectrum) -> SmStatus {
    guard(|| {
        let t = TpqrParams::new(p, q, r).map_err(invalid)?;
        put_spectrum(out, spectrum_tpqr(&t))
    })
}

/// Spectrum of an irreducible plane curve with Puiseux pairs `(n[i], r[i])`.
///
/// # Safety
/// `n` and `r` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_spectrum_curve(
    n: *const i64,
    r: *const i64,
    len: usize,
    out: *mut *mut SmSpectrum,
) -> SmStatus {
    guard(|| {
        let (n, r) = (read_slice(n, len, "n")?, read_slice(r, len, "r")?);
        let data = PuiseuxData::new(n.iter().copied().zip(r.iter().copied()).collect()).map_err(invalid)?;
        put_spectrum(out, spectrum_curve(&data).map_err(invalid)?)
    })
}

/// Reads a spectrum in the text format produced by `sm_spectrum_to_text`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_spectrum_parse(text: *const c_char, out: *mut *mut SmSpectrum) -> SmStatus {
    guard(|| {
        let s = Spectrum::parse(read_str(text, "text")?).map_err(|e| Failure(SmStatus::Parse, e.to_string()))?;
        put_spectrum(out, s)
    })
}

/// Spectrum of the sum of two singularities in separate variables.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_spectrum_thom_sebastiani(
    a: *const SmSpectrum,
    b: *const SmSpectrum,
    out: *mut *mut SmSpectrum,
) -> SmStatus {
    guard(|| put_spectrum(out, thom_sebastiani(spectrum(a)?, spectrum(b)?)))
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sm_spectrum_free(s: *mut SmSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The `n` of the spectrum, i.e. the number of variables minus one.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_spectrum_dimension(s: *const SmSpectrum, out: *mut i64) -> SmStatus {
    guard(|| {
        let n = spectrum(s)?.n();
        nonnull(out, "out")?;
        *out = n;
        Ok(())
    })
}

/// Total multiplicity as a `p/q` string.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_spectrum_milnor(s: *const SmSpectrum, out: *mut *mut c_char) -> SmStatus {
    guard(|| put_string(out, spectrum(s)?.milnor_number().to_string()))
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_spectrum_to_text(s: *const SmSpectrum, out: *mut *mut c_char) -> SmStatus {
    guard(|| put_string(out, spectrum(s)?.to_text()))
}

/// Exact Bernoulli moment `Gamma_{2k}(V, nu)` of the spectrum.
///
/// # Safety
/// `s` must be a live handle, `nu` a NUL-terminated rational; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_gamma_moment(
    s: *const SmSpectrum,
    nu: *const c_char,
    k: usize,
    out: *mut *mut c_char,
) -> SmStatus {
    guard(|| {
        let s = spectrum(s)?;
        let nu = read_rational(nu, "nu")?;
        let g = gamma_moments(s, &nu, k).swap_remove(k);
        put_string(out, g.to_string())
    })
}

/// Checks the alternating signs of `Gamma_{2k}` for `k <= k_max`.
/// `mode` 0 uses `nu = n+1` with strict signs, 1 uses the spectral width.
///
/// # Safety
/// `s` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_check_conjecture(
    s: *const SmSpectrum,
    mode: i32,
    k_max: usize,
    passed: *mut bool,
) -> SmStatus {
    guard(|| {
        let s = spectrum(s)?;
        let mode = match mode {
            0 => Mode::Weak,
            1 => Mode::Strong,
            m => return Err(invalid(format!("mode must be 0 or 1, got {m}"))),
        };
        nonnull(passed, "passed")?;
        *passed = check_conjecture(s, mode, k_max).overall;
        Ok(())
    })
}

/// `B_n` as a `p/q` string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_bernoulli_number(n: usize, out: *mut *mut c_char) -> SmStatus {
    guard(|| put_string(out, bernoulli_numbers(n + 1)[n].to_string()))
}

/// Exact `A_k(x, nu)`.
///
/// # Safety
/// `x` and `nu` must be NUL-terminated rationals; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_a_eval(k: usize, x: *const c_char, nu: *const c_char, out: *mut *mut c_char) -> SmStatus {
    guard(|| {
        let (x, nu) = (read_rational(x, "x")?, read_rational(nu, "nu")?);
        put_string(out, a_eval(k, &x, &nu).to_string())
    })
}

/// Writes the normalized moments for `k = 1..=k_max` into `values`, which
/// must hold at least `k_max` doubles.
///
/// # Safety
/// `s` must be a live handle, `nu` a NUL-terminated rational and `values`
/// writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn sm_trace_convergence(
    s: *const SmSpectrum,
    nu: *const c_char,
    k_max: usize,
    values: *mut f64,
    len: usize,
) -> SmStatus {
    guard(|| {
        let s = spectrum(s)?;
        let nu = read_rational(nu, "nu")?;
        nonnull(values, "values")?;
        if len < k_max {
            return Err(invalid(format!("buffer holds {len} values, need {k_max}")));
        }
        let seq = trace_convergence(s, &nu, k_max).map_err(invalid)?;
        ptr::copy_nonoverlapping(seq.as_ptr(), values, seq.len());
        Ok(())
    })
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `p` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sm_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}
