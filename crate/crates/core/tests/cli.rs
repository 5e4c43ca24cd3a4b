//! End-to-end runs of the `eulerchi` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerchi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["--help"], 0),
        (&["--version"], 0),
        (&["eulerian", "classical", "--n", "4"], 0),
        (&["verify", "suite", "--name", "witt"], 0),
        (&["verify", "suite", "--name", "eq19-vs-eq20", "--max-n", "6"], 0),
        // printed normalization is off by q^2
        (&["verify", "suite", "--name", "eq16-distribution", "--variant", "printed", "--modulus", "3"], 1),
        (&["verify", "suite", "--name", "interpolation"], 1),
        (&["verify", "suite", "--name", "interpolation", "--modulus", "3,5"], 0),
        (&[], 2),
        (&["verify", "suite"], 2),
        (&["verify", "suite", "--name", "witt", "--p", "4"], 2),
        (&["eulerian", "chi", "--n", "2", "--modulus", "6"], 2),
        (&["lfunction", "eval", "--modulus", "3", "--char", "1", "--q", "1/2"], 2),
        (&["padic", "integral", "--n", "1", "--p", "5", "--q", "7"], 2),
    ];
    for (args, want) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(*want), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn errors_go_to_stderr() {
    let o = run(&["chars", "list", "--modulus", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("even"));
}

#[test]
fn suite_json_shape() {
    let o = run(&["verify", "suite", "--name", "witt-chi", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["identity"], "witt-chi");
        assert_eq!(r["status"], "pass");
        assert_eq!(r["metric"]["kind"], "padic");
        assert!(r["params"]["p"].is_string());
        assert!(r["elapsed_ms"].is_u64());
    }
}

#[test]
fn suite_csv_matches_json() {
    let args = ["verify", "suite", "--name", "eq13-series", "--max-n", "2", "--modulus", "3"];
    let csv_out = stdout(&run(&[&args[..], &["--format", "csv"]].concat()));
    let json_out = stdout(&run(&[&args[..], &["--format", "json"]].concat()));
    let mut rdr = csv::Reader::from_reader(csv_out.as_bytes());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[0], "identity");
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    let json: Value = serde_json::from_str(&json_out).unwrap();
    let json = json.as_array().unwrap();
    assert_eq!(rows.len(), json.len());
    let status = header.iter().position(|h| h == "status").unwrap();
    let lhs = header.iter().position(|h| h == "lhs").unwrap();
    for (r, j) in rows.iter().zip(json) {
        assert_eq!(&r[status], j["status"].as_str().unwrap());
        assert_eq!(&r[lhs], j["lhs"].as_str().unwrap());
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let o = run(&[
        "emit",
        "table",
        "--kind",
        "classical",
        "--range",
        "0..=6",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 7);
    // row sums are n!
    for (n, r) in rows.iter().enumerate().skip(1) {
        let sum: u64 = r[1].split(',').map(|c| c.parse::<u64>().unwrap()).sum();
        assert_eq!(sum, (1..=n as u64).product::<u64>(), "n = {n}");
    }
}

#[test]
fn table_formats_agree() {
    let base = ["emit", "table", "--kind", "chi-eulerian", "--range", "0..4", "--modulus", "5", "--q", "2,3"];
    let csv_out = stdout(&run(&[&base[..], &["--format", "csv"]].concat()));
    let json_out = stdout(&run(&[&base[..], &["--format", "json"]].concat()));
    let json: Value = serde_json::from_str(&json_out).unwrap();
    let json = json.as_array().unwrap();
    let mut rdr = csv::Reader::from_reader(csv_out.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    // 4 characters x 2 values of q x 4 indices
    assert_eq!(rows.len(), 32);
    assert_eq!(rows.len(), json.len());
    for (r, j) in rows.iter().zip(json) {
        for (h, v) in header.iter().zip(r.iter()) {
            assert_eq!(j[h.as_str()], v, "column {h}");
        }
    }
}

#[test]
fn chi_values_match_table() {
    let o = run(&["eulerian", "chi", "--n", "1", "--modulus", "3", "--char", "1", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("12"), "{}", stdout(&o));
}

#[test]
fn chars_list_counts() {
    for (d, count) in [(1u64, 1usize), (5, 4), (9, 6), (15, 8)] {
        let o = run(&["chars", "list", "--modulus", &d.to_string()]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).lines().count(), count, "d = {d}");
    }
}
