use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stendhal")).args(args).env_remove("STENDHAL_FIELD").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn algebra_dimensions() {
    for (l, k, want) in [("2", "1", "5\n"), ("3", "1", "14\n")] {
        let o = run(&["algebra", "--l", l, "--k", k, "dims"]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), want);
    }
    let o = run(&["algebra", "--l", "4", "--k", "2", "verify", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["relations_checked"].as_u64().unwrap() > 0);
    assert!(v.get("relation_failures").is_none());
}

#[test]
fn both_engines_agree() {
    for (w, rows) in [("", 2), ("1 1", 4), ("1 1 1", 4)] {
        for field in ["q", "2"] {
            let o = run(&["kh", "--braid", w, "--engine", "both", "--field", field, "--format", "json"]);
            assert!(o.status.success(), "{} {}", w, String::from_utf8_lossy(&o.stderr));
            let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
            assert_eq!(v["meta"]["field"], field);
            let n = v["table"].as_array().unwrap().len();
            assert_eq!(n, if field == "2" && w == "1 1 1" { 6 } else { rows });
        }
    }
}

#[test]
fn trefoil_table_tsv() {
    let o = run(&["kh", "--braid", "1 1 1", "--format", "tsv"]);
    assert_eq!(stdout(&o), "h\tq\trank\n0\t1\t1\n0\t3\t1\n2\t5\t1\n3\t9\t1\n");
}

#[test]
fn field_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_stendhal"))
        .args(["kh", "--braid", "1 1 1", "--engine", "cube", "--format", "tsv"])
        .env("STENDHAL_FIELD", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["algebra", "--l", "7", "--k", "1"]).status.code(), Some(3));
    assert_eq!(run(&["kh", "--braid", "1 -2 1 -2", "--engine", "functor"]).status.code(), Some(3));
    assert_eq!(run(&["kh", "--tangle", "cap 0"]).status.code(), Some(1));
    assert_eq!(run(&["kh", "--braid", "1 x"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["kh", "--braid", "1 -2 1 -2", "--engine", "cube"]).status.code(), Some(0));
}

#[test]
fn tangle_words_and_kinks() {
    let unknot = run(&["kh", "--braid", "", "--format", "tsv"]);
    for w in ["cup 0, pos 0, cap 0", "cup 0\ncup 1\nneg 0\ncap 1\ncap 0"] {
        let o = run(&["kh", "--tangle", w, "--engine", "functor", "--format", "tsv"]);
        assert_eq!(stdout(&o), stdout(&unknot), "{}", w);
    }
}

#[test]
fn jones_pairs() {
    let o = run(&["jones", "--braid", "1 1 1", "--format", "tsv"]);
    assert_eq!(stdout(&o), "exp\tcoeff\n1\t1\n3\t1\n5\t1\n9\t-1\n");
}

#[test]
fn decat_and_jw() {
    let o = run(&["decat", "--l", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_equal"], true);
    let o = run(&["jw", "--l", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cutoff"], 8);
    assert_eq!(v["all_equal"], true);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("stendhal-{}.json", std::process::id()));
    let o = run(&["kh", "--braid", "1 1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["table"].as_array().unwrap().len(), 4);
    std::fs::remove_file(path).unwrap();
}
