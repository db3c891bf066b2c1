use std::path::Path;
use std::process::{Command, Output};

fn nagel2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nagel2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn table_csv() {
    let out = nagel2(&["table"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "s,0,1,2,3+\n4,81,81,114,infeasible\n5,237/2,231/2,122,114\n"
    );
}

#[test]
fn table_json_with_certificates() {
    let out = nagel2(&["table", "--format", "json", "--certificates"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["columns"], serde_json::json!(["0", "1", "2", "3+"]));
    let bounds: Vec<&str> = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["bound"].as_str().unwrap())
        .collect();
    assert_eq!(
        bounds,
        [
            "81",
            "81",
            "114",
            "infeasible",
            "237/2",
            "231/2",
            "122",
            "114"
        ]
    );
    assert!(v["cells"][4]["certificate"]["weights"]["rows"].is_object());
}

#[test]
fn table_dump_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let lp_dir = dir.path().join("lp");
    let out_file = dir.path().join("table.csv");
    let out = nagel2(&[
        "table",
        "--dump-lp",
        lp_dir.to_str().unwrap(),
        "--out",
        out_file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&out_file)
        .unwrap()
        .contains("4,81,81,114,infeasible"));
    let c2 = std::fs::read_to_string(lp_dir.join("s4_C2.lp")).unwrap();
    assert!(c2.starts_with("variables: q_empty"));
    assert!(c2.contains("largeway:"));
    // the dump parses back and solves to the same bound
    let lp = nagel2::ratlp::text::program_from_text(&c2).unwrap();
    let value = nagel2::ratlp::solve(&lp).unwrap();
    assert_eq!(value.optimal_value(), Some(&nagel2::rational::int(114)));
}

#[test]
fn solve_commands() {
    assert_eq!(stdout(&nagel2(&["solve-base", "--s", "5"])), "141/2\n");
    assert_eq!(stdout(&nagel2(&["solve-base", "--s", "4"])), "45\n");
    assert_eq!(
        stdout(&nagel2(&["solve-base", "--s", "5", "--aux-bc"])),
        "129\n"
    );
    assert_eq!(
        stdout(&nagel2(&["solve-case", "--s", "5", "--c", "1"])),
        "231/2\n"
    );
    assert_eq!(
        stdout(&nagel2(&["solve-case", "--s", "4", "--c", "3"])),
        "infeasible\n"
    );
    assert_eq!(
        stdout(&nagel2(&["solve-case", "--s", "5", "--c", "0", "--approx"])),
        "237/2 ~ 118.5\n"
    );
    let cert = stdout(&nagel2(&[
        "solve-case",
        "--s",
        "4",
        "--c",
        "2",
        "--certificate",
    ]));
    assert!(cert.starts_with("status: optimal\nvalue: 114\n"));
    let dump = stdout(&nagel2(&[
        "solve-case",
        "--s",
        "4",
        "--c",
        "1",
        "--dump-lp",
    ]));
    assert!(dump.contains("middleway_2:"));
    assert!(dump.contains("status: optimal"));
}

#[test]
fn min_objective_command() {
    let out = nagel2(&["min-objective", "--s", "4", "--objective", "q_singleton"]);
    assert_eq!(stdout(&out), "8\n");
    let out = nagel2(&["min-objective", "--s", "5", "--objective", "sum_singletons"]);
    assert_eq!(stdout(&out), "85/2\n");
    let out = nagel2(&["min-objective", "--s", "4", "--objective", "total"]);
    assert_eq!(stdout(&out), "45\n");
    let out = nagel2(&["min-objective", "--s", "4", "--objective", "q_zz"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "f.txt", "-\n1\n1 2\n");
    let out = nagel2(&["analyze", &path, "--base", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("m: 3\n"));
    assert!(text.contains("f_2: 1/3 (element 2)\n"));
    assert!(text.contains("q_{} = 2\n"));

    let json = write(dir.path(), "f.json", r#"{"n": 2, "sets": [[1], [1, 2]]}"#);
    let text = stdout(&nagel2(&["analyze", &json, "--add-empty"]));
    assert!(text.contains("f_2: 1/3"));
    let text = stdout(&nagel2(&["analyze", &json, "--approx"]));
    assert!(text.contains("f_2: 1/2 ~ 0.5"));
}

#[test]
fn covers_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "f.txt", "1 2\n2 3\n");
    let text = stdout(&nagel2(&["covers", &path]));
    assert!(text.contains("  {2}\n  {1,3}\n"));
    assert!(text.contains("involution MC(MC(F)) = F: true"));
    let with_empty = write(dir.path(), "e.txt", "-\n1\n");
    assert_eq!(nagel2(&["covers", &with_empty]).status.code(), Some(2));
}

#[test]
fn search_and_checks() {
    let out = nagel2(&["search-nagel", "--n", "3", "--jobs", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["min_f2"], "1/3");
    assert_eq!(v["families_checked"], 90);
    assert_eq!(v["passed"], true);

    let dir = tempfile::tempdir().unwrap();
    // closure of {2,5}, {3}, {4}, {1}, {3,5} together with the empty set
    let family = "-\n1\n3\n1 3\n4\n1 4\n3 4\n1 3 4\n2 5\n1 2 5\n3 5\n1 3 5\n2 3 5\n\
                  1 2 3 5\n2 4 5\n1 2 4 5\n3 4 5\n1 3 4 5\n2 3 4 5\n1 2 3 4 5\n";
    let path = write(dir.path(), "f.txt", family);
    let out = nagel2(&["check-lemmas", &path, "--base", "2,3,4"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"]["flexible_pairs"], 1);

    let out = nagel2(&["lemma-corpus", "--instances", "20"]);
    assert!(out.status.success());
    let out = nagel2(&["cover-theorem", "--n-max", "3"]);
    assert!(out.status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(
        nagel2(&["solve-case", "--s", "6", "--c", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(nagel2(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(nagel2(&["--help"]).status.code(), Some(0));
    assert_eq!(
        nagel2(&["analyze", "/nonexistent/file.txt"]).status.code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let open = write(dir.path(), "open.txt", "1\n2\n");
    assert_eq!(
        nagel2(&["check-lemmas", &open, "--base", "2"])
            .status
            .code(),
        Some(2)
    );
    let bad = write(dir.path(), "bad.txt", "2 1\n");
    assert_eq!(nagel2(&["analyze", &bad]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = nagel2(&["table", "--format", "json", "--certificates"]);
    let b = nagel2(&["table", "--format", "json", "--certificates", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
}
