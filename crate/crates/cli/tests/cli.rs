use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codebounds"))
        .args(args)
        .output()
        .expect("run codebounds")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn table_matches_golden() {
    let golden = include_str!("golden/table.csv");
    let o = run(&["table"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), golden);
}

#[test]
fn bounds_at_15_6() {
    let o = run(&["bounds", "--n", "15", "--d", "6"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("# codebounds-table v1\n"));
    assert!(s.contains("15,6,3,new_r3,upper,rigorous"));
    assert!(s
        .lines()
        .any(|l| l.starts_with("15,6,3,gv,lower") && l.contains(",7,")));
}

#[test]
fn construct_reports_dimension() {
    let o = run(&["construct", "--m", "6", "--c", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("n = 63"));
    assert!(s.contains("k = 12"));
}

#[test]
fn eigen_asymptotic_json() {
    let o = run(&["--json", "eigen", "--r", "2", "--asymptotic"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let t = v.to_string();
    assert!(t.contains("1.73205080"), "{t}");
}

#[test]
fn invalid_parameters_exit_2() {
    let o = run(&["bounds", "--n", "15", "--d", "16"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error["));
}

#[test]
fn bad_arguments_exit_2() {
    let o = run(&["table", "--pair", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[invalid-arguments]"));
}

#[test]
fn not_applicable_exit_3() {
    let o = run(&[
        "replay",
        "--r",
        "1",
        "--code",
        "000000000000000,000000000000001",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn budget_exit_4() {
    let o = run(&["distance", "--m", "8", "--c", "3", "--max-dimension", "20"]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("codebounds-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let o = run(&[
        "--out",
        path.to_str().unwrap(),
        "bounds",
        "--n",
        "15",
        "--d",
        "6",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("# codebounds-table v1"));
    std::fs::remove_dir_all(&dir).unwrap();
}
