use std::path::Path;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn luinv(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_luinv"))
        .args(args)
        .env("LUINV_THREADS", "1")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn trees_listing_and_counts() {
    let r = luinv(&["trees", "--k", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r
        .stdout
        .starts_with("# ordered binary trees with k=3 nodes: 5\n"));
    let perms: Vec<&str> = r
        .stdout
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(perms.len(), 5);
    assert!(r.stdout.contains("(1 2 3)"));

    let r = luinv(&["trees", "--k", "0"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("nodes: 1"));

    let r = luinv(&["trees", "--k", "8", "--count-only"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("1430"), "{}", r.stdout);

    let r = luinv(&["trees", "--k", "2", "--draw"]);
    assert_eq!(r.code, 0);
}

#[test]
fn reduce_rows() {
    let r = luinv(&["reduce", "--k", "4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("\n576 196 36 97 20 10\n"), "{}", r.stdout);
    assert!(r.stdout.contains("matches the reference row"));
    assert!(r.stdout.contains("Burnside"));

    let r = luinv(&["reduce", "--k", "1"]);
    assert!(r.stdout.contains("\n1 1 1 1 1 1\n"));

    // k = 8 needs the long-running flag
    assert_eq!(luinv(&["reduce", "--k", "8"]).code, 4);
    // and a step budget is honored
    assert_eq!(luinv(&["reduce", "--k", "6", "--max-steps", "10"]).code, 4);
}

#[test]
fn eval_reference_state() {
    let r = luinv(&["eval", "--state", "rho1", "--perms", "id;id"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("f[id;id] = 1\n"), "{}", r.stdout);

    let r = luinv(&[
        "eval", "--state", "rho1", "--perms", "(1 2);id", "--mode", "float",
    ]);
    assert_eq!(r.code, 0);
    assert!(
        r.stdout.contains("= 0.") || r.stdout.contains("= (0."),
        "{}",
        r.stdout
    );

    assert_eq!(
        luinv(&["eval", "--state", "rho1", "--perms", "(1 2);(1 2);(1 2)"]).code,
        2
    );
    assert_eq!(
        luinv(&["eval", "--state", "rho1", "--perms", "(1 1)"]).code,
        2
    );
    assert_eq!(
        luinv(&["eval", "--state", "/nonexistent.json", "--perms", "id;id"]).code,
        2
    );
}

#[test]
fn invalid_state_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"format":"luinv-state","version":1,"dims":[2],"scalar":"rational",
            "matrix":[[["1","0"],["1","0"]],[["0","0"],["0","0"]]]}"#,
    )
    .unwrap();
    let r = luinv(&["eval", "--state", path(&bad), "--perms", "id"]);
    assert_eq!(r.code, 2);
    assert!(!r.stderr.is_empty());
    // accepted without validation
    assert_eq!(
        luinv(&["eval", "--state", path(&bad), "--perms", "id", "--raw"]).code,
        0
    );
}

#[test]
fn expand_counts_terms() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("f.txt");
    let r = luinv(&[
        "expand",
        "--perms",
        "(1 2 3);(1 2 3)",
        "--poly",
        path(&poly),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(
        r.stdout.contains("degree 3, 24 terms, coefficient sum 64"),
        "{}",
        r.stdout
    );
    let text = std::fs::read_to_string(&poly).unwrap();
    assert!(text.starts_with("# terms=24 degree=3"));
}

#[test]
fn dims_and_completeness() {
    let r = luinv(&["dims", "--k", "0"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("d_0 = 1"));

    let r = luinv(&["dims", "--k", "4", "--exact"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("d_4 = 16"), "{}", r.stdout);
    assert!(r.stdout.contains("exact rank mod 2^61-1: 16"));

    assert_eq!(luinv(&["dims", "--k", "4", "--samples", "5"]).code, 2);
    assert_eq!(luinv(&["dims", "--k", "9"]).code, 4);

    let r = luinv(&["complete", "--k", "6"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(
        r.stdout.starts_with("degree 6: expected 52, achieved 52"),
        "{}",
        r.stdout
    );
}

#[test]
fn charpoly_on_reference_state() {
    let r = luinv(&["charpoly", "--state", "rho2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(!r.stdout.is_empty());
}

#[test]
fn equivalence_verdicts() {
    let r = luinv(&["equiv", "rho1", "rho2"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stdout.starts_with("verdict: INEQUIVALENT\n"));
    assert!(r.stdout.contains("witness degree: 6"), "{}", r.stdout);

    let r = luinv(&["equiv", "rho1", "rho2", "--max-degree", "5"]);
    assert_eq!(r.code, 0);
    assert!(r
        .stdout
        .starts_with("verdict: INCONCLUSIVE_UP_TO_DEGREE(5)"));

    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(
        luinv(&["sample", "--seed", "4", "--file", path(&a)]).code,
        0
    );
    assert_eq!(
        luinv(&[
            "conjugate",
            "--state",
            path(&a),
            "--seed",
            "9",
            "--file",
            path(&b)
        ])
        .code,
        0
    );
    let r = luinv(&["equiv", path(&a), path(&b), "--max-degree", "4"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r
        .stdout
        .starts_with("verdict: INCONCLUSIVE_UP_TO_DEGREE(4)"));

    let three = dir.path().join("c.json");
    assert_eq!(
        luinv(&["sample", "--dims", "2,2,2", "--file", path(&three)]).code,
        0
    );
    assert_eq!(luinv(&["equiv", path(&a), path(&three)]).code, 2);
}

#[test]
fn json_report_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let r = luinv(&["--output", path(&report), "reduce", "--k", "3"]);
    assert_eq!(r.code, 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["command"], "reduce");
    assert_eq!(json["matches_reference"], true);
    assert!(r.stderr.contains("luinv: config"));

    let first = luinv(&["dims", "--k", "3", "--seed", "7"]).stdout;
    assert_eq!(first, luinv(&["dims", "--k", "3", "--seed", "7"]).stdout);

    let (x, y) = (dir.path().join("x.json"), dir.path().join("y.json"));
    luinv(&[
        "sample",
        "--seed",
        "11",
        "--projector-rank",
        "2",
        "--file",
        path(&x),
    ]);
    luinv(&[
        "sample",
        "--seed",
        "11",
        "--projector-rank",
        "2",
        "--file",
        path(&y),
    ]);
    assert_eq!(std::fs::read(&x).unwrap(), std::fs::read(&y).unwrap());
    let r = luinv(&[
        "eval",
        "--state",
        path(&x),
        "--projector",
        "--perms",
        "(1 2);(1 2)",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn usage_errors() {
    assert_eq!(luinv(&[]).code, 2);
    assert_eq!(luinv(&["trees"]).code, 2);
    assert_eq!(luinv(&["frobnicate"]).code, 2);
    assert_eq!(luinv(&["--help"]).code, 0);
}
