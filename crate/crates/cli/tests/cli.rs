use assert_cmd::Command;
use serde_json::Value;

fn qe() -> Command {
    Command::cargo_bin("qeinstein").unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = qe().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    qe().args(args).output().unwrap().status.code().unwrap()
}

fn analyze(args: &[&str]) -> Value {
    let mut all = vec!["analyze"];
    all.extend_from_slice(args);
    serde_json::from_str(&run_ok(&all)).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/solve_report.v1.json"))
        .unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(report: &Value) {
    let v = schema();
    let errors: Vec<String> = v.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

fn generic(report: &Value) -> Vec<&Value> {
    report["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["branch"] == "GENERIC")
        .collect()
}

/// Midpoint of a `"p/q"` or `["lo", "hi"]` value, as f64.
fn approx(v: &Value) -> f64 {
    let one = |s: &str| -> f64 {
        match s.split_once('/') {
            Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
            None => s.parse().unwrap(),
        }
    };
    match v {
        Value::String(s) => one(s),
        Value::Array(a) => (one(a[0].as_str().unwrap()) + one(a[1].as_str().unwrap())) / 2.0,
        _ => panic!("not a value: {v}"),
    }
}

#[test]
fn a6_has_three_natural_and_one_new_solution() {
    let r = analyze(&["--family", "A6"]);
    assert_valid(&r);
    let sols = r["solutions"].as_array().unwrap();
    let natural = sols.iter().filter(|s| s["naturally_reductive"] == true).count();
    assert_eq!(natural, 3);
    let g = generic(&r);
    assert_eq!(g.len(), 1);
    let x = approx(&g[0]["x"]);
    assert!(1.0 < x && x < 4.0 / 3.0, "x = {x}");
    assert_eq!(r["exception_class"], "NOT_EXCEPTIONAL");
    assert_eq!(r["omega1"], "-1/18");
}

#[test]
fn exceptional_rows_are_labelled() {
    let r = analyze(&["--family", "B3", "--n1", "2", "--n2", "2", "--k", "1"]);
    assert_valid(&r);
    assert_eq!(r["exception_class"], "EXC_B3_K1");
    assert!(generic(&r).is_empty());
    let r = analyze(&["--family", "A5"]);
    assert_eq!(r["exception_class"], "EXC_A5");
    let r = analyze(&["--family", "A4", "--n1", "10", "--n2", "2", "--n3", "2", "--k", "2"]);
    assert_eq!(r["exception_class"], "EXC_A4_FAMILY");
}

#[test]
fn reports_validate_against_the_schema() {
    for args in [
        vec!["--family", "A1", "--n1", "3", "--n2", "2", "--n3", "4", "--k", "2"],
        vec!["--family", "B1", "--n1", "2", "--n2", "3", "--k", "4"],
        vec!["--family", "B13", "--timing"],
        vec!["--family", "A3", "--n1", "2", "--n2", "2", "--k", "3", "--dim-h", "2"],
        vec!["--family", "B2", "--n", "2", "--k", "6", "--dim-k", "12", "--k-p", "1/10"],
    ] {
        assert_valid(&analyze(&args));
    }
    let bad = serde_json::json!({"schema": "solve_report.v1"});
    assert!(!schema().is_valid(&bad));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["analyze", "--family", "B4"];
    assert_eq!(run_ok(&args), run_ok(&args));
    let args = ["scan", "--max-n", "4", "--max-k", "3", "--all"];
    assert_eq!(run_ok(&args), run_ok(&args));
}

#[test]
fn solve_raw_matches_analyze() {
    let r = analyze(&["--family", "B5"]);
    let q = serde_json::to_string(&r["quadruple"]).unwrap();
    let out = qe().args(["solve-raw"]).write_stdin(q).output().unwrap();
    assert!(out.status.success());
    let raw: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(raw, r);
    let bad = qe().args(["solve-raw"]).write_stdin("{").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn table_output() {
    let t = run_ok(&["analyze", "--family", "A6", "--table"]);
    assert!(t.contains("GENERIC"));
    assert!(t.contains("omega       (-1/18, -2/9)"));
    assert_eq!(exit_code(&["analyze", "--family", "A6", "--table", "--json"]), 2);
}

#[test]
fn counts() {
    assert_eq!(run_ok(&["count", "12"]), "4\n");
    assert_eq!(run_ok(&["count", "7"]), "0\n");
    assert_eq!(run_ok(&["count", "6"]), "2\n");
    assert_eq!(exit_code(&["count", "1"]), 2);
}

#[test]
fn verify_tables_scopes() {
    let csv = run_ok(&["verify-tables", "--scope", "table-c"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "scope,item,quantity,expected,actual,status");
    assert_eq!(lines.len(), 9);
    assert!(lines[1..].iter().all(|l| l.ends_with(",PASS")));
    let csv = run_ok(&["verify-tables", "--scope", "appendix-b"]);
    assert!(csv.contains("appendix-b,A6,fbar_beta,2/729,2/729,PASS"));
    run_ok(&["verify-tables"]);
    assert_eq!(exit_code(&["verify-tables", "--scope", "appendix-a", "--corrupt"]), 1);
    assert_eq!(exit_code(&["verify-tables", "--scope", "nowhere"]), 2);
}

#[test]
fn scans() {
    let csv = run_ok(&["scan", "--family", "B1", "--max-n", "8", "--max-k", "8"]);
    assert_eq!(csv.lines().count(), 1, "{csv}");
    let csv = run_ok(&["scan", "--max-n", "5", "--max-k", "5"]);
    let mut header = csv.lines();
    assert_eq!(
        header.next(),
        Some("family,n1,n2,n3,k,c1,c2,l_p,k_p,h_p,omega1,omega2,exception_class")
    );
    for line in header {
        let f: Vec<&str> = line.split(',').collect();
        let ok = match f[0] {
            "A4" => (f[1] == "2" && f[2] == "2") || (f[2] == "2" && f[3] == "2"),
            "B3" => f[1] == "2" && f[2] == "2",
            "A5" | "A6" | "B4" | "B5" => true,
            _ => false,
        };
        assert!(ok, "unexpected row {line}");
    }
    assert!(csv.contains("A5,,,,,2/3,1/2,1/2,1/3,1/12,-1/6,0,EXC_A5"));
    assert!(csv.contains("B3,2,2,,1,"));
}

#[test]
fn usage_and_budget_errors() {
    assert_eq!(exit_code(&["scan"]), 2);
    assert_eq!(exit_code(&["scan", "--max-n", "1", "--max-k", "1"]), 2);
    assert_eq!(exit_code(&["scan", "--family", "A3", "--max-n", "3", "--max-k", "3"]), 2);
    assert_eq!(exit_code(&["analyze", "--family", "A2", "--n1", "2", "--n2", "2", "--n3", "2", "--k", "1"]), 2);
    assert_eq!(exit_code(&["analyze", "--family", "Z9"]), 2);
    assert_eq!(exit_code(&["analyze", "--family", "A6", "--tol", "0"]), 2);
    assert_eq!(exit_code(&["analyze", "--family", "A6", "--max-iter", "3"]), 3);
}
