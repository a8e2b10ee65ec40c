use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use g2dbl_ffi::*;

fn take(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { g2dbl_string_free(p) };
    s
}

#[test]
fn manifest_round_trip() {
    let m = CString::new(r#"[{"id":"g2chars.dim7"},{"id":"zeta.check3","params":{"D":3}},{"id":"weyl.nu0_words"}]"#).unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { g2dbl_run_manifest(m.as_ptr(), 10, 2, &mut out) };
    assert_eq!(s, G2dblStatus::Ok);
    unsafe {
        assert_eq!(g2dbl_reports_len(out), 3);
        assert_eq!(g2dbl_reports_status(out, 0), 0);
        assert_eq!(g2dbl_reports_status(out, 2), 2);
        assert_eq!(g2dbl_reports_status(out, 3), -1);
    }
    let v: serde_json::Value = serde_json::from_str(&take(unsafe { g2dbl_reports_json(out) })).unwrap();
    assert_eq!(v[1]["id"], "zeta.check3");
    assert_eq!(v[1]["truncation"], 3);
    unsafe { g2dbl_reports_free(out) };
    assert!(g2dbl_last_error().is_null());
}

#[test]
fn negative_control_alone_passes_and_bad_input_is_usage() {
    let mut out = ptr::null_mut();
    let id = CString::new("zeta.negative_control").unwrap();
    assert_eq!(unsafe { g2dbl_run_check(id.as_ptr(), 4, &mut out) }, G2dblStatus::Ok);
    unsafe { g2dbl_reports_free(out) };

    let bad = CString::new(r#"[{"id":"zeta.check3","param":{}}]"#).unwrap();
    assert_eq!(unsafe { g2dbl_run_manifest(bad.as_ptr(), 10, 1, &mut out) }, G2dblStatus::Usage);
    assert!(out.is_null());
    assert!(take(g2dbl_last_error()).contains("manifest"));

    let not_json = CString::new("{").unwrap();
    assert_eq!(unsafe { g2dbl_run_manifest(not_json.as_ptr(), 10, 1, &mut out) }, G2dblStatus::Usage);
    let zero = CString::new("[]").unwrap();
    assert_eq!(unsafe { g2dbl_run_manifest(zero.as_ptr(), 0, 1, &mut out) }, G2dblStatus::Usage);
}

#[test]
fn invalid_utf8_is_reported() {
    let raw = [0xffu8, 0xfe, 0];
    let mut out = ptr::null_mut();
    let s = unsafe { g2dbl_run_check(raw.as_ptr() as *const std::ffi::c_char, 10, &mut out) };
    assert_eq!(s, G2dblStatus::InvalidUtf8);
}

#[test]
fn weyl_handle() {
    let g = g2dbl_weyl_e8_new();
    assert!(!g.is_null());
    let mut len = 0usize;
    for (w, l) in [("", 0), ("1", 1), ("11", 0), ("345678243546576", 15)] {
        let c = CString::new(w).unwrap();
        assert_eq!(unsafe { g2dbl_weyl_length(g, c.as_ptr(), &mut len) }, G2dblStatus::Ok, "{w}");
        assert_eq!(len, l, "{w}");
    }
    let c = CString::new("19").unwrap();
    assert_eq!(unsafe { g2dbl_weyl_length(g, c.as_ptr(), &mut len) }, G2dblStatus::Usage);
    assert_eq!(unsafe { g2dbl_weyl_length(ptr::null(), c.as_ptr(), &mut len) }, G2dblStatus::NullPointer);
    unsafe { g2dbl_weyl_free(g) };
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/g2dbl.h")).unwrap();
    for f in [
        "g2dbl_run_manifest",
        "g2dbl_run_check",
        "g2dbl_reports_len",
        "g2dbl_reports_status",
        "g2dbl_reports_json",
        "g2dbl_reports_free",
        "g2dbl_check_count",
        "g2dbl_check_id",
        "g2dbl_weyl_e8_new",
        "g2dbl_weyl_length",
        "g2dbl_weyl_free",
        "g2dbl_last_error",
        "g2dbl_string_free",
        "typedef struct G2dblReports G2dblReports",
        "G2DBL_STATUS_INTERNAL = 3",
    ] {
        assert!(h.contains(f), "{f}");
    }
}

/// Compiles `c/smoke.c` against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let Some(cc) = ["cc", "gcc", "clang"].into_iter().find(|c| Command::new(c).arg("--version").output().is_ok())
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libg2dbl_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipped", lib.display());
        return;
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("g2dbl_smoke");
    let st = Command::new(cc)
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success(), "compile");
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
