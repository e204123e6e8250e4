//! The C interface driven through its own ABI: handle lifecycle, status
//! codes, error messages, emission and evaluation.

use std::ffi::{CStr, CString};
use std::ptr;

use sigforge_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sf_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn compile_emit_eval_roundtrip() {
    unsafe {
        let src = c("profile simple\nsignature Nat where\n zero : iota\n suc : iota -> iota\n");
        let name = c("nat.sig");
        let mut handle: *mut SfCompiled = ptr::null_mut();
        assert!(sf_compile(src.as_ptr(), name.as_ptr(), &mut handle) == SfStatus::Ok);
        assert!(!handle.is_null());
        assert_eq!(sf_entry_count(handle), 2);
        let profile = CStr::from_ptr(sf_profile(handle)).to_str().unwrap();
        assert_eq!(profile, "simple");

        let what = c("a,d,s");
        let mut text: *mut std::ffi::c_char = ptr::null_mut();
        assert!(sf_emit(handle, what.as_ptr(), SfStyle::Ascii, &mut text) == SfStatus::Ok);
        let emitted = CStr::from_ptr(text).to_str().unwrap().to_string();
        assert!(emitted.contains("NatAlg = (X : Set) * (zero : X) * (X -> X)"));
        assert!(emitted.contains("NatSection"));
        sf_string_free(text);

        let alg = c(r#"{"carrier":"int64","ops":{"zero":"0","suc":"x0 + 1"}}"#);
        let term = c("suc (suc zero)");
        let mut value = 0i64;
        assert!(
            sf_eval(handle, alg.as_ptr(), ptr::null(), term.as_ptr(), &mut value)
                == SfStatus::Ok
        );
        assert_eq!(value, 2);

        let mut listing: *mut std::ffi::c_char = ptr::null_mut();
        assert!(sf_enumerate(handle, 3, &mut listing) == SfStatus::Ok);
        let lines = CStr::from_ptr(listing).to_str().unwrap().to_string();
        assert_eq!(lines, "zero\nsuc zero\nsuc (suc zero)");
        sf_string_free(listing);

        sf_free(handle);
    }
}

#[test]
fn diagnostics_surface_through_status_and_message() {
    unsafe {
        let src = c("profile hiit-strict\nsignature T where\n T : U\n b : El T\n p : El (Id b b)\n t : El (Id (J (y q. El (Id b y)) p p) p)\n");
        let name = c("torus.sig");
        let mut handle: *mut SfCompiled = ptr::null_mut();
        let st = sf_compile(src.as_ptr(), name.as_ptr(), &mut handle);
        assert!(st == SfStatus::Diagnostic);
        assert!(last_error().contains("E_PROFILE"), "{}", last_error());
    }
}

#[test]
fn usage_errors_are_reported_not_crashed() {
    unsafe {
        let mut handle: *mut SfCompiled = ptr::null_mut();
        assert!(sf_compile(ptr::null(), ptr::null(), &mut handle) == SfStatus::Usage);

        let src = c("profile fqii\nsignature M where\n M : U\n");
        let name = c("m.sig");
        assert!(sf_compile(src.as_ptr(), name.as_ptr(), &mut handle) == SfStatus::Ok);

        let what = c("bogus");
        let mut text: *mut std::ffi::c_char = ptr::null_mut();
        assert!(sf_emit(handle, what.as_ptr(), SfStyle::Ascii, &mut text) == SfStatus::Usage);
        assert!(last_error().contains("bogus"));

        // evaluation on a non-simple profile is a diagnostic, not a crash
        let alg = c(r#"{"carrier":"int64","ops":{"M":"0"}}"#);
        let term = c("M");
        let mut value = 0i64;
        assert!(
            sf_eval(handle, alg.as_ptr(), ptr::null(), term.as_ptr(), &mut value)
                == SfStatus::Diagnostic
        );
        sf_free(handle);
        sf_free(ptr::null_mut());
    }
}
