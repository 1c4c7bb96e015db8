use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-sing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn quoted_examples() {
    assert_eq!(stdout(&["embed", "--pattern", "A9+A1", "--host", "A11"]), "true\n");
    assert_eq!(stdout(&["lattice", "discriminant", "--type", "T"]), "2,2,2,2,2,2\n");
    assert_eq!(stdout(&["picard", "genus", "--class", "2,6"]), "3\n");
}

#[test]
fn embed_negative_and_builtin_host() {
    assert_eq!(stdout(&["embed", "--pattern", "2A1", "--host", "A2"]), "false\n");
    assert_eq!(stdout(&["embed", "--pattern", "9A1", "--host", "builtin:gamma"]), "true\n");
    assert_eq!(stdout(&["embed", "--pattern", "10A1", "--host", "builtin:gamma"]), "false\n");
}

#[test]
fn classify_table5_row() {
    let keep: Vec<String> = (1..=15u32)
        .filter(|v| ![3, 8, 9, 11, 15].contains(v))
        .map(|v| v.to_string())
        .collect();
    let keep = keep.join(",");
    assert_eq!(
        stdout(&["classify", "--graph", "builtin:gamma", "--subset", &keep]),
        "E8+A2\n"
    );
    assert_eq!(stdout(&["classify", "--graph", "builtin:gamma"]), "not ADE\n");
}

#[test]
fn classify_edge_list_file() {
    let dir = std::env::temp_dir().join(format!("cubic-sing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d4.txt");
    std::fs::write(&path, "# star\nn 4\n0 1\n0 2\n0 3\n").unwrap();
    assert_eq!(stdout(&["classify", "--graph", path.to_str().unwrap()]), "D4\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn enumerate_surfaces_json() {
    let out = stdout(&["enumerate", "--host", "builtin:e6tilde", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["count"], 20);
    let items: Vec<&str> = v["configurations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(items.contains(&"E6"));
    assert!(items.contains(&"3A2"));
    assert!(!items.contains(&"E6+A1"));
}

#[test]
fn closure_maximal_only() {
    assert_eq!(
        stdout(&["closure", "--seeds", "A3,2A1", "--maximal-only"]),
        "A3\n"
    );
    assert_eq!(stdout(&["closure", "--seeds", "A2"]), "A2\nA1\n");
}

#[test]
fn lattice_queries() {
    assert_eq!(stdout(&["lattice", "signature", "--type", "3D4+2U"]), "(14,2)\n");
    assert_eq!(
        stdout(&["lattice", "obstruction", "--type", "A12"]),
        "rank_signature silent\ncomplement_generators fires\n"
    );
    let json = stdout(&["lattice", "obstruction", "--type", "15A1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["obstructions"][0]["obstruction"], "rank_signature");
    assert_eq!(v["obstructions"][0]["fires"], true);
    assert_eq!(v["obstructions"][0]["witness"]["n_plus_host"], 14);
}

#[test]
fn picard_queries() {
    assert_eq!(stdout(&["picard", "intersect", "--class", "s+3*f", "--class2", "1,2"]), "3\n");
    assert_eq!(stdout(&["picard", "solve-genus", "--b", "6", "--genus", "3"]), "2,4\n");
    assert_eq!(
        stdout(&["picard", "split", "--class", "3,6", "--parts", "3"]),
        "1*s+2*f + 1*s+2*f + 1*s+2*f\n"
    );
    assert_eq!(stdout(&["picard", "genus", "--class", "-2,-4"]), "9\n");
}

#[test]
fn verify_single_check_and_json() {
    let out = stdout(&["verify", "--only", "table5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"][0]["check_id"], "table5");
    assert!(v["checks"][0].get("elapsed_ms").is_none());
}

#[test]
fn verify_all_passes_deterministically() {
    let a = stdout(&["verify"]);
    let b = stdout(&["verify"]);
    assert_eq!(a, b);
    assert!(a.contains("coverage: 204/204 golden rows"));
    assert!(!a.contains("FAIL"));
}

#[test]
fn export_dot() {
    let dot = stdout(&["export-dot", "--graph", "builtin:e6tilde"]);
    assert!(dot.starts_with("graph e6tilde {"));
    assert_eq!(dot.matches(" -- ").count(), 6);
    let dot = stdout(&["export-dot", "--poset", "A2,A1"]);
    assert!(dot.contains("\"A2\" -> \"A1\";"));
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["frobnicate"]), 2);
    assert_eq!(exit_code(&["embed", "--pattern", "A1"]), 2);
    assert_eq!(exit_code(&["embed", "--pattern", "A0", "--host", "A1"]), 3);
    assert_eq!(exit_code(&["closure", "--seeds", "16A1"]), 3);
    assert_eq!(exit_code(&["verify", "--only", "nope"]), 3);
    assert_eq!(exit_code(&["classify", "--graph", "builtin:petersen"]), 3);
    assert_eq!(exit_code(&["picard", "split", "--class", "2,6", "--parts", "9"]), 3);
    assert_eq!(exit_code(&["--help"]), 0);
}
