use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use interweight_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    iw_string_free(s);
    out
}

#[test]
fn quotient_and_table() {
    unsafe {
        let s = [0i64, 3, 1, 2];
        let mut q = ptr::null_mut();
        assert_eq!(iw_quotient_new(s.as_ptr(), 2, 3, &mut q), IwStatus::Ok);
        assert_eq!(iw_quotient_cells(q), 2);
        let mut out = ptr::null_mut();
        assert_eq!(iw_quotient_cell_size(q, 1, &mut out), IwStatus::Ok);
        assert_eq!(take(out), "6");
        assert_eq!(iw_quotient_cell_size(q, 2, &mut out), IwStatus::OutOfRange);

        let mut t = ptr::null_mut();
        assert_eq!(iw_table_build(q, IwTableKind::Triangle, 3, &mut t), IwStatus::Ok);
        assert_eq!(iw_table_max_level(t), 3);
        let expected = ["0", "6", "0", "0", "0", "0", "6", "12"];
        for (flat, e) in expected.iter().enumerate() {
            assert_eq!(iw_table_entry(t, 0, 0, 1, flat >> 2, (flat >> 1) & 1, flat & 1, &mut out), IwStatus::Ok);
            assert_eq!(take(out), *e);
        }
        assert_eq!(iw_table_entry(t, 2, 2, 0, 0, 0, 0, &mut out), IwStatus::OutOfRange);
        assert_eq!(iw_table_build(q, IwTableKind::Triangle, 4, &mut t), IwStatus::LevelTooHigh);
        iw_table_free(t);
        iw_quotient_free(q);
    }
}

#[test]
fn errors_carry_messages() {
    unsafe {
        let s = [1i64, 2, 1, 1];
        let mut q = ptr::null_mut();
        assert_eq!(iw_quotient_new(s.as_ptr(), 2, 3, &mut q), IwStatus::InvalidMatrix);
        assert!(q.is_null());
        let msg = take(iw_last_error_message());
        assert!(msg.contains("row 2"), "{msg}");
        assert_eq!(iw_quotient_new(ptr::null(), 2, 3, &mut q), IwStatus::NullPointer);
        assert_eq!(CStr::from_ptr(iw_status_name(IwStatus::InvalidMatrix)).to_str().unwrap(), "invalid quotient matrix");
        iw_quotient_free(ptr::null_mut());
    }
}

#[test]
fn certificates_and_polynomials() {
    unsafe {
        let s = [0i64, 22, 0, 5, 6, 11, 0, 10, 12];
        let mut c = ptr::null_mut();
        assert_eq!(iw_certify(s.as_ptr(), 3, 22, -1, &mut c), IwStatus::Ok);
        assert_eq!(iw_certificate_nonexistent(c), 1);
        let mut out = ptr::null_mut();
        assert_eq!(iw_certificate_json(c, &mut out), IwStatus::Ok);
        let json = take(out);
        assert!(json.contains("\"triple\"") && json.contains("nonexistent"));
        iw_certificate_free(c);

        assert_eq!(iw_poly_render(1, 1, 1, &mut out), IwStatus::Ok);
        assert_eq!(take(out), "x*y*z - x^2 - y^2 - z^2 + 2*n");
    }
}

fn target_dir() -> PathBuf {
    // .../target/<profile>/deps/ffi-<hash>
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = root.join("include");
    assert!(header_dir.join("interweight.h").exists());
    let lib = target_dir().join("libinterweight_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping C link check: no cc or no static library at {}", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "interweight.h"
int main(void) {
    int64_t s[4] = {0, 3, 1, 2};
    IwQuotient *q = NULL;
    if (iw_quotient_new(s, 2, 3, &q) != IW_STATUS_OK) return 1;
    IwTable *t = NULL;
    if (iw_table_build(q, IW_TABLE_KIND_TRIANGLE, 3, &t) != IW_STATUS_OK) return 2;
    char *v = NULL;
    if (iw_table_entry(t, 0, 0, 1, 1, 1, 1, &v) != IW_STATUS_OK) return 3;
    int ok = strcmp(v, "12") == 0;
    printf("%s\n", v);
    iw_string_free(v);
    iw_table_free(t);
    iw_quotient_free(q);
    return ok ? 0 : 4;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "12");
}
