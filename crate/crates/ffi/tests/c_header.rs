use std::path::{Path, PathBuf};
use std::process::Command;

/// Directory holding the shared library built alongside this test binary.
fn library_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/taucat.h")).unwrap();
    for name in [
        "taucat_algebra_parse",
        "taucat_context_build",
        "taucat_inventory_len",
        "taucat_check",
        "taucat_complete",
        "taucat_enumerate",
        "taucat_verify",
        "taucat_export_dot",
        "taucat_string_free",
        "taucat_last_error_message",
        "typedef struct TaucatContext TaucatContext",
        "TAUCAT_STATUS_CAP_EXCEEDED",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let libdir = library_dir();
    assert!(libdir.join("libtaucat_ffi.so").exists(), "shared library in {}", libdir.display());
    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-L")
        .arg(&libdir)
        .arg("-ltaucat_ffi")
        .arg("-o")
        .arg(&exe)
        .status()
        .expect("run cc");
    assert!(status.success());
    let out = Command::new(&exe).env("LD_LIBRARY_PATH", &libdir).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
