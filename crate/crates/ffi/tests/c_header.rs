//! Compiles `examples/demo.c` against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn profile_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/weakfree.h")).unwrap();
    for name in [
        "WEAKFREE_H",
        "typedef struct WfSession WfSession;",
        "typedef struct WfTable WfTable;",
        "WF_STATUS_OK = 0",
        "WF_STATUS_SYNTAX = 2",
        "WF_STATUS_SELFTEST_FAILED = 5",
        "wf_session_new(",
        "wf_normalize(",
        "wf_equivalent(",
        "wf_multiply(",
        "wf_green(",
        "wf_skeleton_report(",
        "wf_last_error(void)",
        "wf_string_free(",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = profile_dir().join("libweakfree_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("demo");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("examples/demo.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout.contains("normalize: 1 1 B(x) x 1"));
    assert!(stdout.contains("syntax error: 2"));
}
