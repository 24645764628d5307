//! End-to-end runs of the `assoc` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_assoc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn group_info_reports_structure() {
    let out = run(&["group", "info", "--group", "quaternion8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order 8"));
    assert!(text.contains("nilpotency class 2"));
    assert!(text.contains("solvable true"));

    let out = run(&["group", "info", "--group", "alternating(5)"]);
    let text = stdout(&out);
    assert!(text.contains("order 60"));
    assert!(text.contains("solvable false"));
    // derived-set sequence of a perfect group stays at the whole group
    assert!(text.contains("derived-set sequence sizes 60 60 (cycles back to index 0)"));

    let out = run(&["group", "info", "--group", "cyclic(1)"]);
    let text = stdout(&out);
    assert!(text.contains("order 1"));
    assert!(text.contains("nilpotency class 0"));
}

#[test]
fn f_arithmetic_round_trips() {
    // an expansion of the generator reduces back to it
    let expanded_src = "(((*,*),((*,*),*)),*)";
    let expanded_tgt = "((*,*),(((*,*),*),*))";
    let out = run(&[
        "f",
        "reduce",
        "--pair",
        &format!("{} ; {}", expanded_src, expanded_tgt),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "((*,*),*) ; (*,(*,*))");

    // generator times its inverse is the identity
    let out = run(&[
        "f",
        "mul",
        "--pair",
        "((*,*),*) ; (*,(*,*))",
        "--pair",
        "(*,(*,*)) ; ((*,*),*)",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "* ; *");

    let out = run(&["f", "inv", "--pair", "((*,*),*) ; (*,(*,*))"]);
    assert_eq!(stdout(&out).trim(), "(*,(*,*)) ; ((*,*),*)");

    let out = run(&["f", "eq", "--pair", "* ; *", "--pair", "(*,*) ; (*,*)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "equivalent");
}

#[test]
fn assoc_check_verdicts_drive_exit_codes() {
    let out = run(&[
        "assoc", "check",
        "--group", "symmetric(3)",
        "--pair", "((*,*),*) ; (*,(*,*))",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("witness p=1"));

    let out = run(&[
        "assoc", "check",
        "--group", "alternating(5)",
        "--pair", "((*,*),*) ; (*,(*,*))",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not eventually satisfied"));
    assert!(stdout(&out).contains("counterexample"));
}

#[test]
fn survey_output_is_deterministic_across_worker_counts() {
    let args = |workers: &str| {
        vec![
            "assoc".to_string(), "survey".to_string(),
            "--group".to_string(), "symmetric(3)".to_string(),
            "--max-leaves".to_string(), "4".to_string(),
            "--workers".to_string(), workers.to_string(),
        ]
    };
    let a = run(&args("1").iter().map(String::as_str).collect::<Vec<_>>());
    let b = run(&args("4").iter().map(String::as_str).collect::<Vec<_>>());
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn levi_and_main_theorem() {
    let out = run(&["assoc", "levi", "--group", "heisenberg(3)"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "associative: yes; class <= 2: yes; Levi consistent"
    );

    let out = run(&["assoc", "levi", "--group", "symmetric(3)"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("associative: no; class <= 2: no"));

    let out = run(&[
        "assoc", "main-theorem", "--max-order", "8", "--max-leaves", "3",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("main-theorem-check: pass"));
}

#[test]
fn vine_rewrite_and_verify() {
    let out = run(&["vine", "rewrite", "--n", "5", "--turns", "RRLR", "--side", "l"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[x5,[[x3,[x2,[a,x1]]],x4]]"));
    assert!(text.contains("l_{5,l}(a^-1"));
    assert!(text.contains(")^-1"));

    let out = run(&[
        "vine", "verify",
        "--group", "symmetric(4)",
        "--n", "3",
        "--samples", "2000",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // 2^(n-1) shapes, two sides each
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().all(|l| l.contains(": ok")));

    let out = run(&[
        "vine", "centralize",
        "--group", "symmetric(3)",
        "--j", "1",
        "--multiples", "1,2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("ok:"));
}

#[test]
fn color_bound_and_check() {
    let out = run(&["color", "bound", "--n", "1", "--j", "2", "--exact"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("clique size 2 (lower bound 2): verified"));
    assert!(text.contains("exact minimum"));

    let out = run(&["color", "check", "--n", "1", "--j", "1", "--colors", "0,1,2,3"]);
    assert!(out.status.success());

    let out = run(&["color", "check", "--n", "1", "--j", "1", "--colors", "0,1,0,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn group_files_load() {
    let dir = std::env::temp_dir().join("assoc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("klein.grp");
    std::fs::write(
        &path,
        "name klein4\ntable 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n",
    )
    .unwrap();
    let out = run(&["group", "info", "--group", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("group klein4"));
    assert!(text.contains("abelian true"));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["group", "info", "--group", "nonsense(9)"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["assoc", "check", "--group", "cyclic(2)", "--pair", "((*,*),*) ; *"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_file_matches_stdout() {
    let dir = std::env::temp_dir().join("assoc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let out = run(&[
        "group", "info",
        "--group", "dihedral(4)",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&out));
}
