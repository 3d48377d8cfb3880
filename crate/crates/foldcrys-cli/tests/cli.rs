use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn foldcrys(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_foldcrys"));
    cmd.args(args).env_remove("FOLDCRYS_CAPS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&doc).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Run with `--format json`, check the exit code and validate against the named schema.
fn json_run(args: &[&str], name: &str, code: i32) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let r = foldcrys(&full, &[]);
    assert_eq!(r.code, code, "{args:?}: {}", r.stderr);
    let doc: Value = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", r.stdout));
    let v = schema(name);
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
    doc
}

#[test]
fn unfold_g2_reports_d4() {
    let doc = json_run(&["unfold", "--type", "G2"], "unfold", 0);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(doc["arrows"].as_array().unwrap().len(), 3);
    let table = foldcrys(&["unfold", "--type", "G2"], &[]);
    assert_eq!(table.code, 0);
    assert!(table.stdout.contains("arrows (2,1)->(1,2) (2,1)->(1,4) (2,1)->(1,6)"), "{}", table.stdout);
}

#[test]
fn unfold_a3_is_the_identity() {
    let doc = json_run(&["unfold", "--type", "A3"], "unfold", 0);
    assert_eq!(doc["cartan"], doc["base"]["cartan"]);
}

#[test]
fn invalid_datum_is_diagnosed() {
    let dir = tempdir();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"cartan":[[2,-1],[-3,2]],"symmetrizer":[1,1],"parity":[0,1]}"#).unwrap();
    let doc = json_run(&["unfold", "--input", bad.to_str().unwrap()], "error", 1);
    assert_eq!(doc["error"]["kind"], "InvalidDatum");
    assert_eq!(doc["error"]["details"]["violations"][0]["kind"], "NonSymmetrizable");
    let r = foldcrys(&["unfold", "--input", bad.to_str().unwrap()], &[]);
    assert!(r.stderr.contains("NonSymmetrizable"));
    let unknown = std::fs::write(&bad, r#"{"type":"B2","colour":1}"#);
    unknown.unwrap();
    assert_eq!(foldcrys(&["unfold", "--input", bad.to_str().unwrap()], &[]).code, 1);
}

#[test]
fn datum_file_with_seed() {
    let dir = tempdir();
    let f = dir.join("b2.json");
    std::fs::write(&f, r#"{"cartan":[[2,-1],[-2,2]],"symmetrizer":[2,1],"parity":[0,1],"seed":[1,2]}"#).unwrap();
    let doc = json_run(&["unfold", "--input", f.to_str().unwrap()], "unfold", 0);
    assert_eq!(doc["seed"], serde_json::json!([1, 2]));
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn crystal_component_exports() {
    let doc = json_run(&["crystal-component", "--type", "B2", "--monomial", "z[1,4]"], "crystal-component", 0);
    assert_eq!(doc["nodes"].as_array().unwrap().len(), 4);
    let same = json_run(&["crystal-component", "--type", "B2", "--triples", "[[1,4,1]]"], "crystal-component", 0);
    assert_eq!(doc, same);
    let dot = foldcrys(&["crystal-component", "--type", "B2", "--monomial", "z[2,2]", "--format", "dot"], &[]);
    assert_eq!(dot.code, 0);
    assert!(dot.stdout.starts_with("digraph crystal {"));
    assert_eq!(dot.stdout.matches(" -> ").count(), 6);
    // odd variable
    assert_eq!(foldcrys(&["crystal-component", "--type", "B2", "--monomial", "z[1,3]"], &[]).code, 1);
}

#[test]
fn closure_and_labels() {
    let c = json_run(&["closure", "--type", "B2", "--rho", "-1,-3/2;∅"], "closure", 0);
    assert_eq!(c["graph"]["nodes"].as_array().unwrap().len(), 15);
    let l = json_run(&["labels", "--type", "B2", "--gamma", "1:[-4,-6];2:[]"], "labels", 0);
    let zero: Vec<&Value> = l["labels"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x["weight"].as_array().unwrap().iter().all(|w| w == 0))
        .collect();
    assert_eq!(zero.len(), 3);
}

#[test]
fn verify_b2_passes() {
    let doc = json_run(&["verify-b2"], "verify-b2", 0);
    assert_eq!(doc["cases"].as_array().unwrap().len(), 5);
    let one = json_run(&["verify-b2", "--case", "e"], "verify-b2", 0);
    assert_eq!(one["cases"][0]["case"], "e");
    assert_eq!(foldcrys(&["verify-b2", "--case", "z"], &[]).code, 1);
}

#[test]
fn check_relations_table_and_json() {
    let r =
        foldcrys(&["check-relations", "--type", "B2", "--dims", "1,1", "--framing", "1,0", "--relations", "a-h"], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("54/54 instances hold"), "{}", r.stdout);
    let doc = json_run(&["check-relations", "--type", "A1", "--dims", "2", "--framing", "1"], "check-relations", 0);
    assert_eq!(doc["passed"], true);
    let a0 = json_run(
        &["check-relations", "--type", "A1", "--dims", "1", "--framing", "0", "--relations", "A0"],
        "check-relations",
        0,
    );
    assert_eq!(a0["reports"][0]["relation"], "A0");
}

#[test]
fn budgets_exit_with_two() {
    let r = foldcrys(
        &["check-relations", "--type", "A1", "--dims", "2", "--framing", "1"],
        &[("FOLDCRYS_CAPS", "terms=2")],
    );
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("BudgetExceeded"));
    let r = foldcrys(&["closure", "--type", "B2", "--rho", "-1,-3/2;∅", "--caps", "nodes=3"], &[]);
    assert_eq!(r.code, 2);
    let doc = json_run(&["closure", "--type", "B2", "--rho", "-1,-3/2;∅", "--caps", "nodes=3"], "error", 2);
    assert_eq!(doc["error"]["kind"], "CapExceeded");
    // malformed caps are invalid input, not a budget
    assert_eq!(foldcrys(&["unfold", "--type", "B2"], &[("FOLDCRYS_CAPS", "colour=1")]).code, 1);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(foldcrys(&["no-such-command"], &[]).code, 1);
    assert_eq!(foldcrys(&["unfold"], &[]).code, 1);
    assert_eq!(foldcrys(&["unfold", "--type", "B2", "--format", "dot"], &[]).code, 1);
    assert_eq!(foldcrys(&["--help"], &[]).code, 0);
}

#[test]
fn seq_bijection_json() {
    let doc = json_run(&["seq", "bijection", "--alpha", "2,1", "--levels", "-1,1"], "seq-bijection", 0);
    assert_eq!(doc["sequences"], doc["j_points"]);
    assert_eq!(doc["onto"], true);
    let m0 = json_run(&["seq", "bijection", "--alpha", "1,1", "--window", "0,1"], "seq-bijection", 0);
    assert_eq!(m0["sequences"], 4);
    assert_eq!(foldcrys(&["seq", "bijection", "--alpha", "1", "--levels", "2,1"], &[]).code, 1);
}

#[test]
fn dim_and_tensor() {
    let d = json_run(&["dim", "--type", "A3", "--highest", "0,1,0"], "dim", 0);
    assert_eq!(d["dimension"], 6);
    let t = json_run(&["tensor", "--type", "A3", "--left", "0,1,0", "--right", "0,1,0"], "tensor", 0);
    assert_eq!(t["total_dimension"], 36);
    assert_eq!(t["summands"].as_array().unwrap().len(), 3);
    // the unfolded B2 Cartan matrix is of type A3
    let u = json_run(&["dim", "--type", "B2", "--unfolded", "--highest", "1,0,0"], "dim", 0);
    assert_eq!(u["dimension"], 4);
    assert_eq!(foldcrys(&["dim", "--type", "B2", "--highest", "1,0"], &[]).code, 1);
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let args = ["closure", "--type", "B2", "--rho", "∅;-1,-2", "--format", "json"];
    let one = foldcrys(&[&args[..], &["--jobs", "1"]].concat(), &[]);
    let four = foldcrys(&[&args[..], &["--jobs", "4"]].concat(), &[]);
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, four.stdout);
    let rel = ["check-relations", "--type", "B2", "--dims", "1,1", "--framing", "0,1"];
    assert_eq!(
        foldcrys(&[&rel[..], &["--jobs", "1"]].concat(), &[]).stdout,
        foldcrys(&[&rel[..], &["--jobs", "3"]].concat(), &[]).stdout
    );
}

fn tempdir() -> PathBuf {
    let dir =
        std::env::temp_dir().join(format!("foldcrys-cli-{}-{:?}", std::process::id(), std::thread::current().id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
