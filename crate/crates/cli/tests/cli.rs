use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl4-branch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ladder_ktypes_are_even_multiples() {
    let o = run(&["ktypes", "--module", "ladder", "--max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x\ty\tmult\n0\t0\t1\n2\t0\t1\n4\t0\t1\n6\t0\t1\n");
}

#[test]
fn aq_ktypes_are_multiplicity_free() {
    let o = run(&["ktypes", "--module", "aq:0", "--max", "8"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert!(rows.iter().all(|r| r.ends_with("\t1")));
    assert_eq!(rows.first(), Some(&"3\t3\t1"));
    assert!(rows.contains(&"8\t8\t1"));
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["ktypes", "--module", "aq:-4", "--max", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("-4"));

    assert_eq!(run(&["ktypes", "--module", "aq:0:1", "--max", "4"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "--module", "aq:0", "--subgroup", "sp2", "--max", "8"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "grid", "--max", "3"]).status.code(), Some(2));
    assert_eq!(run(&["restrict", "--module", "aq:0", "--max", "4"]).status.code(), Some(2));
}

#[test]
fn non_admissible_decomposition_exits_one() {
    let o = run(&["decompose", "--module", "aqprime:0", "--subgroup", "sp", "--max", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not admissible"));
}

#[test]
fn table_json_schema() {
    let o = run(&["restrict", "--module", "aq:0", "--subgroup", "sp", "--max", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["module"], "aq:0");
    assert_eq!(v["subgroup"], "sp");
    assert_eq!(v["variant"], "V1");
    assert_eq!(v["maxNorm"], 6);
    assert_eq!(v["certificate"]["finite"], true);
    let entries = v["entries"].as_array().unwrap();
    assert!(entries
        .iter()
        .any(|e| e["hw"] == serde_json::json!([5, 5]) && e["mult"] == 3));
}

#[test]
fn decompose_tsv_lists_cones() {
    let o = run(&["decompose", "--module", "aq:0", "--subgroup", "sp", "--max", "6"]);
    assert_eq!(
        stdout(&o),
        "module\tx\ty\tmult\nsp:0\t3\t3\t1\nsp:1\t4\t4\t1\nsp:2\t5\t5\t1\nsp:3\t6\t6\t1\n# exact=true residual_keys=0\n"
    );
}

#[test]
fn admissibility_verdicts() {
    let yes = run(&["admissible", "--module", "aq:0", "--variant", "V1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&yes.stdout).unwrap();
    assert_eq!(v["admissible"], true);

    let no = run(&["admissible", "--module", "aq:0", "--subgroup", "sp2", "--format", "json"]);
    assert_eq!(no.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&no.stdout).unwrap();
    assert_eq!(v["admissible"], false);
    assert_eq!(v["variant"], "V2");
    assert_eq!(v["certificate"]["contributors"]["count"], "infinite");
}

#[test]
fn verify_writes_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.json");
    let o = run(&["verify", "grid", "--max", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["target"], "grid");
    assert_eq!(v["passed"], true);
}

#[test]
fn figures_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["figures", "--out", dir.path().to_str().unwrap(), "--max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    for k in 1..=9 {
        for ext in ["txt", "svg"] {
            assert!(dir.path().join(format!("fig{k}.{ext}")).is_file(), "fig{k}.{ext}");
        }
    }
    let fig2 = fs::read_to_string(dir.path().join("fig2.txt")).unwrap();
    // row y = 3 is the sixth line after the title at N = 8
    let row: Vec<&str> = fig2.lines().nth(1 + 8 - 3).unwrap().split(' ').collect();
    assert_eq!(row[3], "1");
    assert_eq!(row[5], "1");
    assert_eq!(row[4], ".");
}
