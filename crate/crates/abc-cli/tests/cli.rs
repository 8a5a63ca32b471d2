// Copyright 2026 The abc-core Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::Path;
use std::process::{Command, Output};

const EXAMPLE1: &str = "m=30
60: 1 2 3 4 5 6 7 8 9 10
30: 11 12 13 14 15 16 17 18 19 20
10: 21 22 23 24 25 26 27 28 29 30
";

fn abc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn elect_example1() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "e1.abc", EXAMPLE1);
    for rule in ["seq-phragmen", "seq-phragmen-load", "seq-pav"] {
        let o = abc(&["elect", "--rule", rule, "--file", &file, "-k", "10"]);
        assert!(o.status.success(), "{rule}");
        let out = stdout(&o);
        assert!(
            out.starts_with("committee {1, 2, 3, 4, 5, 6, 11, 12, 13, 21}\n"),
            "{rule}: {out}"
        );
    }
}

#[test]
fn elect_csv_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "e1.abc", EXAMPLE1);
    let target = dir.path().join("out.csv");
    let o = abc(&[
        "--format",
        "csv",
        "-o",
        target.to_str().unwrap(),
        "elect",
        "--rule",
        "seq-pav",
        "--file",
        &file,
        "-k",
        "3",
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(target).unwrap(),
        "position,candidate\n1,1\n2,2\n3,11\n"
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.abc", "m=2\n1 1\n");
    let file = write(dir.path(), "e1.abc", EXAMPLE1);
    assert_eq!(abc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        abc(&["elect", "--rule", "pav", "-k", "3"]).status.code(),
        Some(1)
    );
    let o = abc(&["elect", "--rule", "pav", "--file", &bad, "-k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = abc(&[
        "elect",
        "--rule",
        "seq-thiele",
        "--lambda",
        "custom:1,1/2",
        "--file",
        &file,
        "-k",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    // Exhaustive PAV on the three-party profile exceeds the default budget.
    let o = abc(&["elect", "--rule", "pav", "--file", &file, "-k", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "e1.abc", EXAMPLE1);
    let o = Command::new(env!("CARGO_BIN_EXE_abc"))
        .args(["elect", "--rule", "pav", "--file", &file, "-k", "2"])
        .env("ABC_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn audit_reports_violation_and_ejr() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "e1.abc", EXAMPLE1);
    let o = abc(&[
        "audit",
        "--file",
        &file,
        "-k",
        "10",
        "--committee",
        "1,2,3,4,5,6,7,8,9,10",
        "--query",
        "3:2",
        "--ejr",
        "1",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("VIOLATION"), "{out}");
    assert!(out.contains("# ejr,false"), "{out}");
}

#[test]
fn bounds_values() {
    assert_eq!(
        stdout(&abc(&[
            "bounds", "--rule", "phragmen", "--lower", "-l", "3"
        ])),
        "1\n"
    );
    assert_eq!(
        stdout(&abc(&[
            "bounds",
            "--rule",
            "max-phragmen",
            "--upper",
            "-l",
            "5"
        ])),
        "1\n"
    );
    let o = abc(&[
        "--exact", "bounds", "--rule", "phragmen", "--upper", "-l", "2", "-k", "10",
    ]);
    assert_eq!(stdout(&o), "9/7\n");
    let o = abc(&[
        "bounds", "--rule", "thiele", "--lower", "-l", "2", "-k", "4", "--lambda", "pav",
    ]);
    assert_eq!(stdout(&o), "1.5\n");
}

#[test]
fn lp_values() {
    assert_eq!(
        stdout(&abc(&["lp", "--kind", "relaxed", "-k", "10"])),
        "0.77054\n"
    );
    assert_eq!(
        stdout(&abc(&["--exact", "lp", "--kind", "exact", "-k", "3"])),
        "8/9\n"
    );
    assert_eq!(
        abc(&["--exact", "lp", "--kind", "exact", "-k", "9"])
            .status
            .code(),
        Some(1)
    );
    let dir = tempfile::tempdir().unwrap();
    let lp_path = dir.path().join("k3.lp");
    let prof_path = dir.path().join("k3.abc");
    let o = abc(&[
        "lp",
        "--kind",
        "exact",
        "-k",
        "3",
        "--write-lp",
        lp_path.to_str().unwrap(),
        "--profile",
        prof_path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(lp_path)
        .unwrap()
        .starts_with("\\ exact k=3\n"));
    let profile = std::fs::read_to_string(&prof_path).unwrap();
    assert!(profile.starts_with("m=3\n"));
    assert!(abc(&[
        "elect",
        "--rule",
        "seq-pav",
        "--file",
        prof_path.to_str().unwrap(),
        "-k",
        "3"
    ])
    .status
    .success());
}

#[test]
fn table_csv() {
    let o = abc(&[
        "--format",
        "csv",
        "table",
        "--kind",
        "seqpav-exact",
        "-k",
        "1..3",
    ]);
    assert_eq!(stdout(&o), "k,coefficient\n1,1\n2,1\n3,0.888889\n");
}

#[test]
fn gen_round_trips_through_elect() {
    let o = abc(&["gen", "maxphragmen-tie", "-k", "4", "--block", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("# W2={5, 6, 7, 8}"));
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "tie.abc", &text);
    let o = abc(&[
        "elect",
        "--rule",
        "seq-phragmen",
        "--file",
        &file,
        "-k",
        "4",
    ]);
    assert!(stdout(&o).starts_with("committee {1, 2, 3, 4}\n"));
    let o = abc(&[
        "gen",
        "party-list",
        "--weights",
        "60,30,10",
        "--per-party",
        "10",
    ]);
    assert_eq!(stdout(&o), EXAMPLE1);
}

#[test]
fn output_is_byte_stable() {
    let args = ["gen", "phragmen-hard", "-l", "2", "-k", "10"];
    assert_eq!(abc(&args).stdout, abc(&args).stdout);
    let args = [
        "--format",
        "csv",
        "curve",
        "--kind",
        "thiele-guarantee-vs-ell",
        "--range",
        "1..6",
        "-k",
        "6",
        "--lambda",
        "sqrt",
    ];
    let a = abc(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, abc(&args).stdout);
}
