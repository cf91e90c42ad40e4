use std::process::{Command, Output};

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn triple_point_number() {
    let o = schubert(&["triple", "4,4,4,1,1 @ 4x5", "4,4,2,1,1 @ 4x5", "4,4,2,2,2 @ 4x5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1/1\n");
}

#[test]
fn pair_kinds() {
    assert_eq!(stdout(&schubert(&["pairkind", "2,1 @ 2x2", "1 @ 2x2"])), "point\n");
    assert_eq!(stdout(&schubert(&["pairkind", "1 @ 2x2", "1 @ 2x2"])), "empty\n");
    assert_eq!(stdout(&schubert(&["pairkind", "2,1 @ 2x2", "2 @ 2x2"])), "other\n");
}

#[test]
fn basis_listing() {
    let o = schubert(&["basis", "--schubert", "3,2,1 @ 3x3", "--degree", "4"]);
    assert_eq!(stdout(&o), "3,1,0 @ 3x3\n2,2,0 @ 3x3\n2,1,1 @ 3x3\n");
    let o = schubert(&["basis", "--box", "2x2", "--degree", "1"]);
    assert_eq!(stdout(&o), "1,0 @ 2x2\n");
}

#[test]
fn singular_locus() {
    let o = schubert(&["singular", "--schubert", "3,2,1 @ 3x3"]);
    assert_eq!(stdout(&o), "1,1,1 @ 3x3\n3,0,0 @ 3x3\n");
}

#[test]
fn profile() {
    let o = schubert(&["profile", "--schubert", "3,3,2 @ 3x3"]);
    assert_eq!(stdout(&o), "m'' = 3\nk'' = 1\na'' = 1 @ 3x1\n");
}

#[test]
fn duality_suite() {
    let o = schubert(&["verify", "duality", "--box", "3x3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("duality: 400 cases, 0 failures (ok)\n"));
}

#[test]
fn expansion_lists_unknowns() {
    let o = schubert(&["expand", "--schubert", "2,1 @ 2x2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("\"mode\": \"shallow\""));
    assert!(text.contains("\"kind\": \"genus\""));
    assert!(text.contains("\"kind\": \"integral\""));
}

#[test]
fn expansion_is_deterministic() {
    let args = ["expand", "--schubert", "2,2 @ 3x2", "--mode", "deep"];
    assert_eq!(stdout(&schubert(&args)), stdout(&schubert(&args)));
}

#[test]
fn expand_then_resolve() {
    let dir = std::env::temp_dir().join(format!("schubert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let oracle = dir.join("oracle.json");
    std::fs::write(
        &oracle,
        r#"{"integrals": [], "genera": [{"variety": "schubert:1@1x1", "box2": "0x0", "a2": "", "value": "2"}], "restrictions": []}"#,
    )
    .unwrap();
    let o = schubert(&["resolve", "--schubert", "1 @ 1x1", "--oracle", oracle.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("\"partition\": \"0 @ 1x1\""));
    assert!(text.contains("\"coefficient\": \"2/1\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn worked_example() {
    let o = schubert(&["example", "x321"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("lambda_{2,2} = I(M=3,1,1 @ 3x3; Z=3,2,1 @ 3x3; j=1)\n"));
    assert!(text.contains("lambda_{3,1} = 2/3 + I("));
}

#[test]
fn rejects_unknown_flag() {
    let o = schubert(&["product", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rejects_bad_partition() {
    let o = schubert(&["product", "1,2 @ 3x3", "1 @ 3x3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not weakly decreasing"));
}

#[test]
fn reports_domain_errors() {
    let o = schubert(&["product", "1 @ 3x3", "1 @ 2x2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
}
