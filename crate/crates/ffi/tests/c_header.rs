//! Compiles and runs a C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/gasp.h")).unwrap();
    for name in [
        "gasp_instance_from_json",
        "gasp_solve",
        "gasp_verify",
        "gasp_string_free",
        "gasp_last_error",
        "typedef struct GaspInstance GaspInstance",
        "GASP_STATUS_BUDGET_EXCEEDED = 4",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libgasp_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let dir = env!("CARGO_MANIFEST_DIR");
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("gasp_smoke");
    let status = Command::new("cc")
        .args([&format!("{dir}/tests/smoke.c"), "-I", &format!("{dir}/include"), "-o"])
        .arg(&exe)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"["a","void"]"#);
}
