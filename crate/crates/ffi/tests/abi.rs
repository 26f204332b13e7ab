use std::ffi::{c_char, CStr, CString};
use std::ptr;

use specmom_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { sm_string_free(p) };
    s
}

fn last_error() -> String {
    let p = sm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn weights(num: &[i64], den: &[i64]) -> *mut SmSpectrum {
    let mut s = ptr::null_mut();
    let st = unsafe { sm_spectrum_from_weights(num.as_ptr(), den.as_ptr(), num.len(), &mut s) };
    assert_eq!(st, SmStatus::Ok);
    s
}

#[test]
fn cusp_round_trip() {
    let cusp = weights(&[1, 1], &[2, 3]);
    let mut n = -1;
    assert_eq!(unsafe { sm_spectrum_dimension(cusp, &mut n) }, SmStatus::Ok);
    assert_eq!(n, 1);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sm_spectrum_milnor(cusp, &mut out) }, SmStatus::Ok);
    assert_eq!(take_string(out), "2");

    assert_eq!(unsafe { sm_spectrum_to_text(cusp, &mut out) }, SmStatus::Ok);
    let text = CString::new(take_string(out)).unwrap();
    let mut parsed = ptr::null_mut();
    assert_eq!(unsafe { sm_spectrum_parse(text.as_ptr(), &mut parsed) }, SmStatus::Ok);
    assert_eq!(unsafe { sm_spectrum_to_text(parsed, &mut out) }, SmStatus::Ok);
    assert_eq!(take_string(out), text.to_str().unwrap());

    let mut passed = false;
    assert_eq!(unsafe { sm_check_conjecture(cusp, 1, 8, &mut passed) }, SmStatus::Ok);
    assert!(passed);
    unsafe {
        sm_spectrum_free(cusp);
        sm_spectrum_free(parsed);
    }
}

#[test]
fn gamma_and_trace() {
    let cusp = weights(&[1, 1], &[2, 3]);
    let nu = CString::new("2").unwrap();
    let mut out = ptr::null_mut();
    // Gamma_2 = V_2 - V_0 nu / 12 = 2/36 - 2*2/12
    assert_eq!(unsafe { sm_gamma_moment(cusp, nu.as_ptr(), 1, &mut out) }, SmStatus::Ok);
    assert_eq!(take_string(out), "-5/18");
    let mut buf = [0.0f64; 30];
    assert_eq!(unsafe { sm_trace_convergence(cusp, nu.as_ptr(), 30, buf.as_mut_ptr(), buf.len()) }, SmStatus::Ok);
    // two points at +-1/6: target 2 cos(pi/3) = 1
    assert!((buf[29] - 1.0).abs() < 0.05, "{}", buf[29]);
    assert_eq!(
        unsafe { sm_trace_convergence(cusp, nu.as_ptr(), 30, buf.as_mut_ptr(), 10) },
        SmStatus::InvalidArgument
    );
    unsafe { sm_spectrum_free(cusp) };
}

#[test]
fn constructors() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { sm_spectrum_tpqr(2, 3, 7, &mut t) }, SmStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sm_spectrum_milnor(t, &mut out) }, SmStatus::Ok);
    assert_eq!(take_string(out), "11");

    let (n, r) = ([2i64, 2], [3i64, 7]);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { sm_spectrum_curve(n.as_ptr(), r.as_ptr(), 2, &mut c) }, SmStatus::Ok);
    assert_eq!(unsafe { sm_spectrum_milnor(c, &mut out) }, SmStatus::Ok);
    assert_eq!(take_string(out), "16");

    // x^2 + y^3 joined with z^2 is x^2 + y^3 + z^2
    let a = weights(&[1, 1], &[2, 3]);
    let b = weights(&[1], &[2]);
    let mut ab = ptr::null_mut();
    assert_eq!(unsafe { sm_spectrum_thom_sebastiani(a, b, &mut ab) }, SmStatus::Ok);
    let direct = weights(&[1, 1, 1], &[2, 3, 2]);
    let (mut x, mut y) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        sm_spectrum_to_text(ab, &mut x);
        sm_spectrum_to_text(direct, &mut y);
    }
    assert_eq!(take_string(x), take_string(y));
    for s in [t, c, a, b, ab, direct] {
        unsafe { sm_spectrum_free(s) };
    }
}

#[test]
fn scalar_functions() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sm_bernoulli_number(12, &mut out) }, SmStatus::Ok);
    assert_eq!(take_string(out), "-691/2730");
    let (x, nu) = (CString::new("3").unwrap(), CString::new("12").unwrap());
    assert_eq!(unsafe { sm_a_eval(2, x.as_ptr(), nu.as_ptr(), &mut out) }, SmStatus::Ok);
    assert_eq!(take_string(out), "8");
}

#[test]
fn error_codes() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sm_spectrum_tpqr(1, 3, 7, &mut s) }, SmStatus::InvalidArgument);
    assert!(!last_error().is_empty());
    assert!(s.is_null());

    assert_eq!(unsafe { sm_spectrum_tpqr(2, 3, 7, ptr::null_mut()) }, SmStatus::Null);

    let bad = CString::new("not a spectrum").unwrap();
    assert_eq!(unsafe { sm_spectrum_parse(bad.as_ptr(), &mut s) }, SmStatus::Parse);

    let invalid_utf8 = [0xffu8, 0xfe, 0];
    assert_eq!(unsafe { sm_spectrum_parse(invalid_utf8.as_ptr().cast(), &mut s) }, SmStatus::Utf8);

    let cusp = weights(&[1, 1], &[2, 3]);
    let mut out = ptr::null_mut();
    let garbage = CString::new("1/0").unwrap();
    assert_eq!(unsafe { sm_gamma_moment(cusp, garbage.as_ptr(), 1, &mut out) }, SmStatus::Parse);
    let mut passed = false;
    assert_eq!(unsafe { sm_check_conjecture(cusp, 7, 3, &mut passed) }, SmStatus::InvalidArgument);
    assert_eq!(unsafe { sm_spectrum_dimension(ptr::null(), &mut 0) }, SmStatus::Null);

    assert_eq!(unsafe { sm_spectrum_from_weights([1].as_ptr(), [0].as_ptr(), 1, &mut s) }, SmStatus::InvalidArgument);

    // success clears the message
    let mut n = 0;
    assert_eq!(unsafe { sm_spectrum_dimension(cusp, &mut n) }, SmStatus::Ok);
    assert!(sm_last_error().is_null());
    unsafe {
        sm_spectrum_free(cusp);
        sm_spectrum_free(ptr::null_mut());
        sm_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/specmom.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["sm_spectrum_from_weights", "sm_gamma_moment", "sm_last_error", "SM_STATUS_INTERNAL"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"specmom.h\"\nint main(void) { SmSpectrum *s = 0; int64_t n = 0;\n\
         return sm_spectrum_dimension(s, &n) == SM_STATUS_NULL ? 0 : 1; }\n",
    )
    .unwrap();
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}
