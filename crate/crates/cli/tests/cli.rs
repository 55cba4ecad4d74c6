use std::path::PathBuf;

use ramcoh_cli::dispatch;
use serde_json::Value;

fn run(args: &str) -> ramcoh_cli::Dispatch {
    let mut argv = vec!["ramcoh".to_string()];
    argv.extend(shell_words(args));
    dispatch(argv)
}

// splits on spaces, keeping single-quoted spans together
fn shell_words(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in s.chars() {
        match ch {
            '\'' => quoted = !quoted,
            ' ' if !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn schema(cmd: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema").join(format!("{cmd}.json"));
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn json_of(args: &str) -> (i32, Value) {
    let d = run(&format!("--format json {args}"));
    assert!(d.stderr.is_empty(), "{args}: {}", d.stderr);
    (d.code, serde_json::from_str(&d.stdout).unwrap())
}

#[test]
fn every_subcommand_validates_against_its_schema() {
    let cases = [
        "different",
        "different --profile '[[0,6],[1,3],[2,3],[3,1]]'",
        "herbrand --at 1,5/2,-1",
        "--p 5 jumps --e-l 2",
        "suffram",
        "--p 5 suffram --e-l 1",
        "tracelab --n-max 1 --samples 10",
        "ledger --theorem 4.0.4 --p-parity odd --tame",
        "ledger --p-parity both --mode conservative",
        "ledger --theorem 4.0.5 --subst v_j=1 --set M=5",
        "liecoh --algebra gl2",
        "liecoh --algebra heisenberg3 --scale-exp 1",
        "decalage --complexes 5 --triples 5",
        "btball --radius 2",
        "--p 2 btball --n 3 --radius 1 --export",
        "theorema --n 3",
        "witt",
        "witt --action ghost --u 1,1",
        "witt --action add --u 1,2 --v 3,-1",
        "--p 5 witt --action mul --u 7,11,2 --v 1,0,0 --modulus-exp 3",
        "witt --action split --series 1,1,2,0,1,0,0,2,1",
        "witt --action artin-schreier --k 3 --a 7",
        "selftest",
        "selftest --full",
    ];
    for args in cases {
        let (code, v) = json_of(args);
        let cmd = v["command"].as_str().unwrap().to_string();
        let validator = jsonschema::validator_for(&schema(&cmd)).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| format!("{e} at {}", e.instance_path())).collect();
        assert!(errors.is_empty(), "{args}: {errors:?}");
        assert_eq!(code, 0, "{args}");
        assert_eq!(v["ok"], true, "{args}");
    }
}

#[test]
fn documented_examples() {
    let d = run("ledger --theorem 4.0.4 --p-parity odd --tame");
    assert_eq!(d.code, 0);
    let h1 = d.stdout.lines().find(|l| l.starts_with("4.0.4 (tame)") && l.split_whitespace().nth(2) == Some("1")).unwrap();
    assert_eq!(h1.split_whitespace().nth(3), Some("3"));

    let (code, v) = json_of("different --profile '[[0,6],[1,3],[2,3],[3,1]]'");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["different_lower"], 9);
    assert!(run("different --profile '[[0,6],[1,3],[2,3],[3,1]]'").stdout.contains("different: 9\n"));

    let (_, v) = json_of("theorema --n 2");
    let degs: Vec<(i64, u64)> = v["result"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| (d["degree"].as_i64().unwrap(), d["dimension"].as_u64().unwrap()))
        .collect();
    assert_eq!(degs, [(0, 1), (-1, 1), (-3, 1), (-4, 1)]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        "different --bogus",
        "frobnicate",
        "--precision 3 jumps",
        "--p 4 jumps",
        "--format yaml theorema",
        "different --profile '[[0,6],[1,4],[2,1]]'",
        "ledger --theorem 9.9.9",
        "ledger --set Q=1",
        "--p 5 jumps --e-l 5",
        "btball --n 3 --radius 2",
        "witt --action ghost",
        "selftest --quick --full",
    ] {
        let d = run(args);
        assert_eq!(d.code, 2, "{args}: {}", d.stdout);
        assert!(d.stdout.is_empty(), "{args}");
        assert!(!d.stderr.is_empty(), "{args}");
    }
    assert!(run("different --bogus").stderr.contains("Usage"));
}

#[test]
fn verification_failures_exit_one() {
    use ramcoh_valuation::Error;
    assert_eq!(ramcoh_cli::error_code(&Error::PrecisionExhausted("x".into())), 1);
    assert_eq!(ramcoh_cli::error_code(&Error::InvalidInput("x".into())), 2);
    // conservative derivations differ from the stated exponents but must dominate paper mode
    let (code, v) = json_of("ledger --p-parity both --mode conservative");
    assert_eq!(code, 0);
    let pipes = v["result"]["pipelines"].as_array().unwrap();
    assert!(pipes.iter().all(|p| p["dominates_paper"] == true));
    assert!(pipes.iter().any(|p| p["match"] == false));
}

#[test]
fn reports_echo_config_and_are_deterministic() {
    let a = run("--format json --seed 7 decalage --complexes 20 --triples 10");
    let b = run("--format json --seed 7 decalage --complexes 20 --triples 10");
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["params"]["complexes"], 20);
    assert_eq!(v["version"], ramcoh_cli::VERSION);
    assert!(run("--seed 7 theorema").stdout.starts_with(&format!("# ramcoh {} theorema p=3 precision=12 seed=7", ramcoh_cli::VERSION)));
}

#[test]
fn ledger_reports_substitutions() {
    let (_, v) = json_of("ledger --theorem 4.0.5 --subst v_j=1 --set M=5");
    let p = &v["result"]["pipelines"][0];
    assert_eq!(p["substitution"]["v_j"], "1");
    assert_eq!(p["numeric_values"]["M"], 5);
    assert_eq!(p["numeric_values"]["a_p"], 0);
}

#[test]
fn out_writes_the_report() {
    let path = std::env::temp_dir().join(format!("ramcoh-out-{}.json", std::process::id()));
    let d = run(&format!("--format json --out {} theorema --n 1", path.display()));
    assert_eq!(d.code, 0);
    assert!(d.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["total"], 2);
    std::fs::remove_file(path).ok();
}
