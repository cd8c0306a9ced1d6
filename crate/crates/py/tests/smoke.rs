//! Stages the freshly built extension and runs the Python smoke script.

use std::path::PathBuf;
use std::process::Command;

fn library() -> PathBuf {
    // integration tests live in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    for name in ["libpytrigauge.so", "libpytrigauge.dylib"] {
        let p = profile_dir.join(name);
        if p.exists() {
            return p;
        }
    }
    panic!("extension library not found in {}", profile_dir.display());
}

#[test]
fn python_smoke_test() {
    let stage = tempfile::tempdir().unwrap();
    std::fs::copy(library(), stage.path().join("pytrigauge.so")).unwrap();
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../python/smoke_test.py");
    let out = Command::new("python3").arg(&script).env("PYTHONPATH", stage.path()).output().expect("python3 runs");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}\n{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout.contains("smoke test: ok"));
}
