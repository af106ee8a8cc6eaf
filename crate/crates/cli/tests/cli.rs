use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shiftbribery"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const ONE_BEHIND: &str = "rule: borda\ncandidates: p,a,b\npreferred: p\nbudget: 2\nvoters: 2\na>p>b ; unit\nb>a>p ; list:1,5\n";

#[test]
fn verify_rechecks_success_and_cost() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "i.txt", ONE_BEHIND);
    let f = f.to_str().unwrap();
    let o = run(&["verify", "-i", f, "--action", "1,0"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("successful: yes"));
    assert!(stdout(&o).contains("cost: 1"));
    let o = run(&["verify", "-i", f, "--action", "0,0", "--json"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["successful"], false);
    assert_eq!(v["cost"], 0);
    // Successful but over the budget.
    let o = run(&["verify", "-i", f, "--action", "1,2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("exceeded"));
    assert_eq!(code(&run(&["verify", "-i", f, "--action", "1"])), 2);
    assert_eq!(code(&run(&["verify", "-i", f, "--action", "1,x"])), 2);
}

#[test]
fn fpt_shifts_rejects_copeland() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "i.txt", ONE_BEHIND);
    let o = run(&["solve", "--algo", "fpt-shifts", "--rule", "copeland", "-i", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("borda and maximin"), "{}", stderr(&o));
}

#[test]
fn generated_set_cover_is_solved() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("sc.txt");
    let f = f.to_str().unwrap();
    let o = run(&["generate", "setcover", "--universe", "1", "--sets", "0", "--k", "1", "--rule", "borda", "--prices", "unit", "-o", f]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(f).unwrap();
    assert!(text.contains("--max-affected 1"));
    let o = run(&["solve", "--algo", "bruteforce", "--max-affected", "1", "-i", f, "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["feasible"], true);
    assert_eq!(v["parameters"]["max_affected"], 1);

    // Two sets are needed but only one may be used.
    let o = run(&["generate", "setcover", "--universe", "2", "--sets", "0;1", "--k", "1", "--rule", "maximin", "--prices", "aon", "-o", f]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = run(&["solve", "--algo", "bruteforce", "--max-affected", "1", "-i", f]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("feasible: no"));
}

#[test]
fn generated_clique_and_mcc() {
    let o = run(&["generate", "clique", "--vertices", "3", "--edges", "0-1,1-2,0-2", "--k", "2", "--prices", "aon"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("rule: copeland"));
    assert!(stdout(&o).contains("padded with 4 isolated vertices"));
    let o = run(&["generate", "mcc", "--vertices", "4", "--edges", "0-2,1-3", "--k", "2", "--coloring", "0,0,1,1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = run(&["generate", "mcc", "--vertices", "3", "--edges", "0-1,0-2", "--k", "2", "--coloring", "0,1,1"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["generate", "clique", "--vertices", "3", "--edges", "0-9", "--k", "2", "--prices", "unit"])), 2);
}

fn solve_json(f: &str, algo: &str, extra: &[&str]) -> (i32, Value) {
    let mut args = vec!["solve", "--algo", algo, "-i", f, "--json"];
    args.extend_from_slice(extra);
    let o = run(&args);
    let v = if o.stdout.is_empty() { Value::Null } else { serde_json::from_str(&stdout(&o)).unwrap() };
    (code(&o), v)
}

#[test]
fn every_solver_agrees_with_verify() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..6 {
        for family in ["unit", "aon", "sortable"] {
            let f = dir.path().join(format!("r{seed}{family}.txt"));
            let f = f.to_str().unwrap();
            let seed = seed.to_string();
            let o = run(&["generate", "random", "--candidates", "4", "--voters", "4", "--family", family, "--seed", &seed, "-o", f]);
            assert_eq!(code(&o), 0, "{}", stderr(&o));
            let (_, best) = solve_json(f, "bruteforce", &[]);
            for algo in ["bruteforce", "fpt-shifts", "aon", "xp-flow", "greedy", "fptas-voters", "fptas-candidates"] {
                let (c, v) = solve_json(f, algo, &[]);
                if c == 2 {
                    // Price family outside the solver's domain.
                    assert!(matches!(algo, "aon" | "greedy" | "fptas-candidates"), "{algo} on {family}");
                    continue;
                }
                assert_eq!(c, 0, "{algo}");
                let action: Vec<String> = v["action"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
                let o = run(&["verify", "-i", f, "--action", &action.join(","), "--json"]);
                let check: Value = serde_json::from_str(&stdout(&o)).unwrap();
                assert_eq!(code(&o), 0, "{algo}: {v}");
                assert_eq!(check["cost"], v["spent"], "{algo}");
                if v["guarantee"] == "exact" {
                    assert_eq!(v["spent"], best["spent"], "{algo}");
                }
            }
        }
    }
}

#[test]
fn result_documents() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "i.txt", ONE_BEHIND);
    let f = f.to_str().unwrap();
    let (c, v) = solve_json(f, "fptas-candidates", &["--epsilon", "1"]);
    assert_eq!(c, 0);
    assert_eq!(v["guarantee"], "4/1");
    assert_eq!(v["parameters"]["epsilon"], "1/1");
    assert_eq!(v["rule"], "borda");
    let (c, v) = solve_json(f, "bruteforce", &["--budget", "0"]);
    assert_eq!(c, 1);
    assert_eq!(v["feasible"], false);
    assert!(v.get("action").is_none());
    let (c, v) = solve_json(f, "bruteforce", &["--rule", "copeland", "--alpha", "0/1"]);
    assert_eq!(c, 0);
    assert_eq!(v["rule"], "copeland(0)");
    let (c, _) = solve_json(f, "xp-flow", &["--t", "2"]);
    assert_eq!(c, 2);
    let (c, _) = solve_json(f, "bruteforce", &["--alpha", "1/2"]);
    assert_eq!(c, 2);
}

#[test]
fn capacity_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.txt");
    let big = big.to_str().unwrap();
    assert_eq!(code(&run(&["generate", "random", "--candidates", "12", "--voters", "12", "-o", big])), 0);
    let o = run(&["solve", "--algo", "bruteforce", "-i", big]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));

    let bad = write(dir.path(), "bad.txt", "rule: borda\ncandidates: a,p\npreferred: p\nvoters: 1\na>a ; unit\n");
    let o = run(&["solve", "--algo", "bruteforce", "-i", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
    assert_eq!(code(&run(&["solve", "--algo", "bruteforce", "-i", "/nonexistent/file"])), 2);
    assert_eq!(code(&run(&["solve", "--algo", "nope", "-i", big])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn kernelize_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "i.txt", ONE_BEHIND);
    let f = f.to_str().unwrap();
    let o = run(&["kernelize", "--rule", "borda", "--t", "2", "-i", f]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("returned unchanged"));
    let o = run(&["kernelize", "--rule", "maximin", "--t", "1", "--force", "-i", f]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let k = write(dir.path(), "k.txt", &stdout(&o));
    let k = k.to_str().unwrap();
    // Both sides decided with at most one unit shift.
    let (_, a) = solve_json(f, "bruteforce", &["--t", "1", "--rule", "maximin"]);
    let (_, b) = solve_json(k, "bruteforce", &["--t", "1"]);
    assert_eq!(a["feasible"], b["feasible"]);
    assert_eq!(code(&run(&["kernelize", "--rule", "copeland", "--t", "1", "-i", f])), 2);

    let o = run(&["classify", "-i", f, "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["unit"], false);
    assert_eq!(v["convex"], true);
    assert_eq!(v["blocks"], 2);
    let o = run(&["classify", "-i", f]);
    assert!(stdout(&o).contains("families: {convex,sortable}"), "{}", stdout(&o));
}

#[test]
fn bench_emits_one_row_per_job() {
    let dir = tempfile::tempdir().unwrap();
    for seed in ["1", "2"] {
        let f = dir.path().join(format!("r{seed}.txt"));
        let o = run(&["generate", "random", "--candidates", "4", "--voters", "3", "--family", "sortable", "--seed", seed, "-o", f.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    let suite = write(
        dir.path(),
        "suite.json",
        r#"{"instances": ["r1.txt", "r2.txt"],
            "rules": [{"rule": "borda"}, {"rule": "copeland", "alpha": "1/3"}],
            "solvers": [{"algo": "bruteforce"}, {"algo": "fpt-shifts", "t": 2}, {"algo": "fptas-voters", "epsilon": "1/2"}],
            "timeout_ms": 60000}"#,
    );
    let o = bin().args(["bench", "--suite", suite.to_str().unwrap()]).env("SHIFTBRIBERY_WORKERS", "2").output().unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "instance");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    let status = headers.iter().position(|h| h == "status").unwrap();
    let algo = headers.iter().position(|h| h == "algo").unwrap();
    let rule = headers.iter().position(|h| h == "rule").unwrap();
    for r in &rows {
        if &r[algo] == "fpt-shifts" && r[rule].starts_with("copeland") {
            assert_eq!(&r[status], "usage");
        } else {
            assert!(matches!(&r[status], "ok" | "infeasible"), "{r:?}");
        }
    }
    let o = bin().args(["bench", "--suite", suite.to_str().unwrap()]).env("SHIFTBRIBERY_WORKERS", "zero").output().unwrap();
    assert_eq!(code(&o), 2);
}
