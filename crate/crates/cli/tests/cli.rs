use std::path::PathBuf;
use std::process::{Command, Output};

fn cpap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpap")).args(args).output().expect("run cpap")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixtures() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data/series")
        .display()
        .to_string()
}

#[test]
fn enumerate_engines_and_class_labels_agree() {
    let dp = cpap(&["enumerate", "--pattern", "1423", "--n", "9"]);
    let brute = cpap(&["enumerate", "--pattern", "1423", "--n", "9", "--algorithm", "brute"]);
    let class = cpap(&["enumerate", "--class", "4.V", "--n", "9"]);
    assert!(dp.status.success());
    assert_eq!(dp.stdout, brute.stdout);
    assert_eq!(dp.stdout, class.stdout);
    let csv = stdout(&cpap(&["enumerate", "--pattern", "1423", "--n", "40", "--format", "csv"]));
    assert!(csv.lines().any(|l| l == "4,23"));
    assert_eq!(csv.lines().count(), 42);
}

#[test]
fn cache_is_reused_and_corrupt_files_are_replaced() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache-dir", cache, "enumerate", "--pattern", "1342", "--n", "20"];
    let first = cpap(&args);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    std::fs::write(&files[0], b"garbage").unwrap();
    let second = cpap(&args);
    assert!(second.status.success());
    assert!(String::from_utf8_lossy(&second.stderr).contains("ignoring cache file"));
    assert_eq!(first.stdout, second.stdout);
    let third = cpap(&args);
    assert!(third.stderr.is_empty());
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(cpap(&["enumerate", "--pattern", "14x3", "--n", "5"]).status.code(), Some(4));
    assert_eq!(cpap(&["enumerate", "--n", "5"]).status.code(), Some(4));
    assert_eq!(cpap(&["poles", "--m", "3", "--depth", "2"]).status.code(), Some(4));
    assert_eq!(cpap(&["--help"]).status.code(), Some(0));
    assert_eq!(cpap(&["--version"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("partial.json");
    let o = cpap(&[
        "enumerate", "--pattern", "12345", "--n", "30", "--memory-mib", "1", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("partial"));
    assert!(text.contains("\"order\": 16"));
}

#[test]
fn poles_csv_has_one_row_per_root() {
    let o = cpap(&["poles", "--m", "4", "--depth", "3", "--all", "--format", "csv"]);
    let text = stdout(&o);
    let depth3 = text.lines().filter(|l| l.starts_with("3,")).count();
    assert_eq!(depth3, 8);
    assert_eq!(text.lines().next(), Some("depth,branch,re,im,residual"));
}

#[test]
fn ode_reciprocal_matches_enumeration() {
    let ode = cpap(&["ode", "solve", "--source", "5.V", "--n", "30", "--reciprocal", "--format", "csv"]);
    let dp = cpap(&["enumerate", "--class", "5.V", "--n", "30", "--format", "csv"]);
    assert!(ode.status.success());
    assert_eq!(ode.stdout, dp.stdout);
}

#[test]
fn fit_and_algverify() {
    let fit = stdout(&cpap(&["ode", "fit", "--class", "4.I", "--terms", "30"]));
    let shown = stdout(&cpap(&["ode", "show", "--source", "4.I"]));
    assert_eq!(fit, shown);
    let o = cpap(&["algverify", "--m", "6", "--order", "40", "--hypergeometric"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"relation_holds\": true"));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["clusters", "--family", "general", "--m", "6", "--c", "1", "--n", "14"];
    assert_eq!(cpap(&args).stdout, cpap(&args).stdout);
    let args = ["asymptotics", "--class", "4.VII", "--n", "40", "--fixtures", &fixtures()];
    let a = cpap(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, cpap(&args).stdout);
}

#[test]
fn asymptotics_row_matches_published_growth_constant() {
    let o = cpap(&["asymptotics", "--class", "4.I", "--n", "40", "--fixtures", &fixtures(), "--format", "csv"]);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    let kappa: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((kappa - 0.963_005_528_915_494_2).abs() < 1e-12, "{row}");
}

#[test]
fn verify_all_reports_per_criterion() {
    let o = cpap(&["verify-all", "--quick", "--only", "6,7,9"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 3);
}
