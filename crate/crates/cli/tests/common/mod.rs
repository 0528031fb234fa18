#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_effectkit"));
    cmd.env_remove("EFFECTKIT_SEED");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write fixture");
    path
}

/// Real diagonal matrix document.
pub fn diag_doc(d: &[f64]) -> String {
    let n = d.len();
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let cells: Vec<String> = (0..n)
                .map(|j| format!("[{},0]", if i == j { d[i] } else { 0.0 }))
                .collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!(r#"{{"n":{n},"rows":[{}]}}"#, rows.join(","))
}

pub fn ray_doc(v: &[f64]) -> String {
    let cells: Vec<String> = v.iter().map(|x| format!("[{x},0]")).collect();
    format!(r#"{{"n":{},"vector":[{}]}}"#, v.len(), cells.join(","))
}

pub fn map_doc(u_diag: &[f64], conjugate: bool, p: f64) -> String {
    format!(
        r#"{{"U":{},"conjugate":{conjugate},"p":{p}}}"#,
        diag_doc(u_diag)
    )
}

pub fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}
