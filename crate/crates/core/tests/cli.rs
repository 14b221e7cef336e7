use std::io::Write;
use std::process::{Command, Output, Stdio};

use pte::{parse_solution, MultigradeSolution};

fn pte(args: &[&str], stdin: &str) -> Output {
    pte_env(args, stdin, &[])
}

fn pte_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pte"))
        .args(args)
        .env_remove("PTE_SAFETY_BOUND")
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const DEG4: &str = "57 -22 40 -61 -14 | 19 16 -42 62 -55 @ 4";

#[test]
fn verify_prints_table() {
    let o = pte(&["verify", "--cap", "6"], DEG4);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[4], "r=5 fails");
    assert_eq!(lines[5], "r=6 holds");
    assert_eq!(lines[6], "max_degree=4");
}

#[test]
fn verify_reads_file_and_json() {
    let dir = std::env::temp_dir().join(format!("pte-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sol.json");
    std::fs::write(&path, pte::to_json(&parse_solution(DEG4).unwrap())).unwrap();
    let o = pte(&["--json", "verify", "--in", path.to_str().unwrap()], "");
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["max_degree"], 4);
    assert_eq!(doc["verified"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(code(&pte(&["verify"], "1 2 3 | 4 5 6 @ 1")), 1);
    assert_eq!(code(&pte(&["verify"], "this is not a solution")), 2);
    assert_eq!(code(&pte(&["verify", "--in", "/nonexistent/file"], "")), 2);
    assert_eq!(code(&pte(&[], "")), 2);
    assert_eq!(
        code(&pte(&["family", "Deg6", "--params", "n1=1,n2=1"], "")),
        3
    );
    assert_eq!(code(&pte(&["ec", "--multiple", "0"], "")), 3);
}

#[test]
fn errors_name_the_failure() {
    let o = pte(&["family", "Deg6", "--params", "n1=1,n2=1"], "");
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error: DegenerateParameters:"), "{err}");
}

#[test]
fn family_deg7() {
    let o = pte(&["family", "Deg7", "--params", "n=2"], "");
    assert_eq!(code(&o), 0);
    let s = parse_solution(&stdout(&o)).unwrap();
    let want = MultigradeSolution::plus_minus(&[63, 211, 125, 292], &[36, 203, 145, 293], 7);
    assert!(pte::equivalent(&s, &want));
}

#[test]
fn printed_solutions_reparse() {
    let cases: [(&[&str], &str); 7] = [
        (&["reduce"], DEG4),
        (&["shift", "--h", "5", "--h", "-2"], "1 5 6 | 2 3 7 @ 2"),
        (&["family", "Deg4B", "--params", "f=2,g=1,u=2,v=-1"], ""),
        (&["family", "eqprod-deg5", "--params", "m=-1"], ""),
        (&["ec", "--multiple", "3", "--deg7"], ""),
        (&["ec", "--multiple", "-2"], ""),
        (&["--json", "family", "Deg5Sym2", "--params", "m=1,t=3"], ""),
    ];
    for (args, input) in cases {
        let o = pte(args, input);
        assert_eq!(code(&o), 0, "{args:?}");
        let s = parse_solution(&stdout(&o)).unwrap();
        assert!(s.is_valid(), "{args:?}");
        let again = if args.contains(&"--json") {
            pte::to_json(&s)
        } else {
            s.to_string()
        };
        assert_eq!(again.trim(), stdout(&o).trim());
    }
}

#[test]
fn classify() {
    let o = pte(
        &["classify"],
        "-66 -134 133 47 8 87 -75 | 66 134 -133 -47 -8 -87 75 @ 6",
    );
    assert_eq!(stdout(&o).trim(), "SymmetricOdd");
    let o = pte(&["classify"], DEG4);
    assert_eq!(stdout(&o).trim(), "Nonsymmetric");
}

#[test]
fn prove_every_family() {
    for id in pte::FamilyId::ALL {
        let o = pte(&["prove", id.name()], "");
        assert_eq!(code(&o), 0, "{id}");
    }
}

#[test]
fn fermat_ascent() {
    let o = pte(
        &[
            "fermat",
            "--coeffs",
            "1,2,3,0,1",
            "--start",
            "0",
            "--steps",
            "2",
        ],
        "",
    );
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("t=8/5 sqrt=121/25"));
    assert_eq!(text.lines().count(), 2);
    assert_eq!(
        code(&pte(&["fermat", "--coeffs", "1,2,3", "--start", "0"], "")),
        2
    );
}

#[test]
fn search_streams_deterministic_json() {
    let args = ["search", "--k", "3", "--s", "4", "--bound", "12"];
    let a = pte(&args, "");
    let b = pte(&[&args[..], &["--jobs", "1"]].concat(), "");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let target = MultigradeSolution::from_i64(&[0, 4, 7, 11], &[1, 2, 9, 10], 3);
    let found: Vec<MultigradeSolution> = stdout(&a)
        .lines()
        .map(|l| parse_solution(l).unwrap())
        .collect();
    assert!(found.iter().any(|s| pte::equivalent(s, &target)));
}

#[test]
fn search_safety_bound_from_environment() {
    let args = ["search", "--k", "2", "--bound", "20"];
    assert_eq!(code(&pte_env(&args, "", &[("PTE_SAFETY_BOUND", "10")])), 2);
    assert_eq!(code(&pte_env(&args, "", &[("PTE_SAFETY_BOUND", "30")])), 0);
    assert_eq!(
        code(&pte(&["search", "--k", "2", "--bound", "1000"], "")),
        2
    );
}
