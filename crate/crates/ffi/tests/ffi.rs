use std::ffi::{c_char, CStr, CString};
use std::ptr;

use posthopf_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { ph_string_free(p) };
    s
}

fn last_error() -> String {
    let p = ph_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn sweedler() -> *mut PhHopf {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ph_hopf_sweedler(&mut h) }, PhStatus::Ok);
    h
}

fn family(id: &str, param: Option<&str>) -> Result<*mut PhOp, PhStatus> {
    let id = CString::new(id).unwrap();
    let param = param.map(|p| CString::new(p).unwrap());
    let mut op = ptr::null_mut();
    let st = unsafe { ph_op_family(id.as_ptr(), param.as_ref().map_or(ptr::null(), |p| p.as_ptr()), &mut op) };
    if st == PhStatus::Ok {
        Ok(op)
    } else {
        Err(st)
    }
}

fn verify(h: *const PhHopf, op: *const PhOp, mode: PhMode) -> bool {
    let mut passed = false;
    assert_eq!(unsafe { ph_op_verify(h, op, mode, &mut passed) }, PhStatus::Ok);
    passed
}

#[test]
fn sweedler_round_trip_and_axioms() {
    let h = sweedler();
    let mut passed = false;
    assert_eq!(unsafe { ph_hopf_verify(h, &mut passed) }, PhStatus::Ok);
    assert!(passed);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ph_hopf_to_json(h, &mut json) }, PhStatus::Ok);
    let json = take_string(json);
    let c = CString::new(json.clone()).unwrap();
    let mut h2 = ptr::null_mut();
    assert_eq!(unsafe { ph_hopf_from_json(c.as_ptr(), &mut h2) }, PhStatus::Ok);
    let mut json2 = ptr::null_mut();
    assert_eq!(unsafe { ph_hopf_to_json(h2, &mut json2) }, PhStatus::Ok);
    assert_eq!(take_string(json2), json);
    unsafe {
        ph_hopf_free(h);
        ph_hopf_free(h2);
    }
}

#[test]
fn families_verify_by_mode() {
    let h = sweedler();
    for (id, param, weak) in [
        ("i", None, true),
        ("i", Some("-3/2"), true),
        ("ii", Some("5"), true),
        ("iii", None, true),
        ("iv", None, false),
        ("v", None, false),
        ("vi", None, false),
    ] {
        let op = family(id, param).unwrap();
        assert!(verify(h, op, PhMode::Relaxed), "{id}");
        assert_eq!(verify(h, op, PhMode::Weak), weak, "{id}");
        unsafe { ph_op_free(op) };
    }
    unsafe { ph_hopf_free(h) };
}

#[test]
fn op_json_round_trip() {
    let h = sweedler();
    let op = family("ii", Some("2")).unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ph_op_to_json(op, &mut json) }, PhStatus::Ok);
    let json = CString::new(take_string(json)).unwrap();
    let mut op2 = ptr::null_mut();
    assert_eq!(unsafe { ph_op_from_json(json.as_ptr(), &mut op2) }, PhStatus::Ok);
    assert!(verify(h, op2, PhMode::Weak));
    unsafe {
        ph_op_free(op);
        ph_op_free(op2);
        ph_hopf_free(h);
    }
}

#[test]
fn error_reporting() {
    assert_eq!(family("vii", None), Err(PhStatus::InvalidArgument));
    assert!(last_error().contains("vii"));
    assert_eq!(family("iii", Some("1")), Err(PhStatus::InvalidArgument));
    assert_eq!(family("i", Some("1/0")), Err(PhStatus::ParseError));

    let bad = CString::new("{not json").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ph_hopf_from_json(bad.as_ptr(), &mut h) }, PhStatus::ParseError);
    assert!(h.is_null());
    assert_eq!(unsafe { ph_hopf_from_json(ptr::null(), &mut h) }, PhStatus::NullPointer);
    assert_eq!(unsafe { ph_hopf_sweedler(ptr::null_mut()) }, PhStatus::NullPointer);

    let mut passed = false;
    assert_eq!(unsafe { ph_op_verify(ptr::null(), ptr::null(), PhMode::Relaxed, &mut passed) }, PhStatus::NullPointer);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ph_enumerate_json(4, PhMode::Relaxed, &mut out) }, PhStatus::InvalidArgument);
    assert!(out.is_null());

    let h = sweedler();
    assert!(ph_last_error().is_null());
    unsafe {
        ph_hopf_free(h);
        ph_hopf_free(ptr::null_mut());
        ph_op_free(ptr::null_mut());
        ph_string_free(ptr::null_mut());
    }
}

#[test]
fn enumerate_counts() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ph_enumerate_json(3, PhMode::Relaxed, &mut out) }, PhStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["count"], 10);
    assert_eq!(unsafe { ph_enumerate_json(5, PhMode::Weak, &mut out) }, PhStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["count"], 11);
}

#[test]
fn classify_weak_report() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { ph_classify_json(PhMode::Weak, PhParameterization::Generator32, &mut out) },
        PhStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["families"].as_array().unwrap().len(), 3);
    assert!(v["unresolved"].as_array().unwrap().is_empty());
    assert_eq!(v["match"]["bijection"], true);
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/posthopf.h")).unwrap();
    for name in [
        "ph_last_error",
        "ph_version",
        "ph_string_free",
        "ph_hopf_sweedler",
        "ph_hopf_from_json",
        "ph_hopf_to_json",
        "ph_hopf_free",
        "ph_hopf_verify",
        "ph_op_family",
        "ph_op_from_json",
        "ph_op_to_json",
        "ph_op_free",
        "ph_op_verify",
        "ph_classify_json",
        "ph_enumerate_json",
        "PH_STATUS_NULL_POINTER",
        "PH_MODE_WEAK",
        "typedef struct PhHopf PhHopf",
    ] {
        assert!(header.contains(name), "{name}");
    }
    let v = unsafe { CStr::from_ptr(ph_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = std::env::temp_dir().join(format!("posthopf-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"posthopf.h\"\nint main(void) {\n  PhHopf *h = 0;\n  PhStatus s = ph_hopf_sweedler(&h);\n  bool ok = false;\n  ph_hopf_verify(h, &ok);\n  ph_hopf_free(h);\n  return s == PH_STATUS_OK && ok ? 0 : 1;\n}\n",
    )
    .unwrap();
    let out = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", concat!(env!("CARGO_MANIFEST_DIR"), "/include")])
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}
