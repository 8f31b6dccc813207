use qcanon_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { qc_string_free(s) };
    out
}

fn last_error() -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qc_last_error(&mut s) }, QcStatus::Ok);
    take(s)
}

#[test]
fn datum_and_basis() {
    let tag = CString::new("A2").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { qc_datum_new(tag.as_ptr(), &mut d) }, QcStatus::Ok);
    let mut rank = 0usize;
    assert_eq!(unsafe { qc_datum_rank(d, &mut rank) }, QcStatus::Ok);
    assert_eq!(rank, 2);
    let word = CString::new("1,2,1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qc_basis_json(d, word.as_ptr(), 2, &mut out) }, QcStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(doc, qcanon::cli::basis_document("A2", "1,2,1", 2).unwrap());
    assert_eq!(doc["elements"].as_array().unwrap().len(), 7);

    let bad = CString::new("1,1").unwrap();
    assert_eq!(unsafe { qc_basis_json(d, bad.as_ptr(), 2, &mut out) }, QcStatus::InvalidInput);
    assert!(last_error().contains("not a reduced expression"));
    assert_eq!(unsafe { qc_basis_json(d, word.as_ptr(), 40, &mut out) }, QcStatus::ResourceLimit);
    unsafe { qc_datum_free(d) };
}

#[test]
fn error_codes() {
    let mut d = ptr::null_mut();
    let tag = CString::new("E8").unwrap();
    assert_eq!(unsafe { qc_datum_new(tag.as_ptr(), &mut d) }, QcStatus::InvalidInput);
    assert!(d.is_null());
    assert_eq!(unsafe { qc_datum_new(ptr::null(), &mut d) }, QcStatus::NullPointer);
    let invalid = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { qc_datum_new(invalid.as_ptr(), &mut d) }, QcStatus::InvalidUtf8);
    assert_eq!(unsafe { qc_report_passed(ptr::null()) }, QcStatus::NullPointer);
    unsafe {
        qc_datum_free(ptr::null_mut());
        qc_report_free(ptr::null_mut());
        qc_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_reports() {
    let checks = CString::new("prop39").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { qc_verify(checks.as_ptr(), ptr::null(), -1, 2, 7, &mut r) }, QcStatus::Ok);
    assert_eq!(unsafe { qc_report_passed(r) }, QcStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qc_report_json(r, &mut s) }, QcStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["results"][0]["report"]["instances"], 96);
    unsafe { qc_report_free(r) };

    let unknown = CString::new("pbw,nope").unwrap();
    assert_eq!(unsafe { qc_verify(unknown.as_ptr(), ptr::null(), -1, 0, 7, &mut r) }, QcStatus::InvalidInput);
    let pbw = CString::new("pbw").unwrap();
    let g2 = CString::new("G2").unwrap();
    assert_eq!(unsafe { qc_verify(pbw.as_ptr(), g2.as_ptr(), 20, 0, 7, &mut r) }, QcStatus::ResourceLimit);
}

#[test]
fn phi_b2_round_trip() {
    let x = [3i64, 1, 4, 1];
    let (mut y, mut z) = ([0i64; 4], [0i64; 4]);
    assert_eq!(unsafe { qc_phi_b2(x.as_ptr(), false, y.as_mut_ptr()) }, QcStatus::Ok);
    assert_eq!(y, qcanon::tropical::phi_b2(x));
    assert_eq!(unsafe { qc_phi_b2(y.as_ptr(), true, z.as_mut_ptr()) }, QcStatus::Ok);
    assert_eq!(z, x);
}

#[test]
fn header_is_current_and_links_from_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/qcanon.h")).unwrap();
    for name in ["qc_datum_new", "qc_basis_json", "qc_verify", "qc_report_json", "qc_string_free", "QC_STATUS_RESOURCE_LIMIT"] {
        assert!(header.contains(name), "{name} missing from the header");
    }
    // the static library sits next to the test binary's deps directory
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let lib = lib_dir.join("libqcanon_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let bin = lib_dir.join(format!("qcanon-c-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    let _ = std::fs::remove_file(&bin);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let y = qcanon::tropical::phi_b2([1, 0, 0, 0]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), format!("{} {} {} {}", y[0], y[1], y[2], y[3]));
}
