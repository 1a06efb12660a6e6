//! Recorded command/output pairs under `tests/golden/<case>/`:
//! `args.json` (argument list), `stdout` (exact bytes) and `status`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::{fs, str};

pub struct Golden {
    pub name: String,
    pub args: Vec<String>,
    pub stdout: String,
    pub status: i32,
}

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn cases() -> Vec<Golden> {
    let dir = root().join("tests").join("golden");
    let mut names: Vec<_> = fs::read_dir(&dir)
        .expect("golden directory")
        .map(|e| e.expect("golden entry").file_name().into_string().expect("utf-8 name"))
        .collect();
    names.sort();
    names.into_iter().map(|n| load(&dir.join(&n), n)).collect()
}

fn load(dir: &Path, name: String) -> Golden {
    let read = |f: &str| fs::read_to_string(dir.join(f)).unwrap_or_else(|e| panic!("{name}/{f}: {e}"));
    Golden {
        args: serde_json::from_str(&read("args.json")).expect("args.json is a JSON string array"),
        stdout: read("stdout"),
        status: read("status").trim().parse().expect("status is an integer"),
        name,
    }
}

/// Runs the binary; `Err` describes the first difference.
pub fn check(case: &Golden) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_langlands"))
        .args(&case.args)
        .current_dir(root())
        .output()
        .map_err(|e| format!("{}: cannot run binary: {e}", case.name))?;
    let stdout = str::from_utf8(&out.stdout).map_err(|_| format!("{}: stdout is not UTF-8", case.name))?;
    if out.status.code() != Some(case.status) {
        return Err(format!("{}: exit {:?}, expected {}", case.name, out.status.code(), case.status));
    }
    if stdout != case.stdout {
        return Err(format!("{}: stdout differs\n  got:      {stdout}  expected: {}", case.name, case.stdout));
    }
    Ok(())
}
