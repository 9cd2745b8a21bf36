use std::path::Path;
use std::process::{Command, Output};

const GAUSSIAN: &str = r#"{"family":"gaussian","amplitude":0.3,"scale":1.0}"#;
const ZERO: &str = r#"{"family":"gaussian","amplitude":0.0,"scale":1.0}"#;

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn run_env(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hardedge"));
    cmd.args(args).env_remove("THREADS");
    if let Some(t) = threads {
        cmd.env("THREADS", t);
    }
    cmd.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Fields of the final "command status max_residual runtime_s" line.
fn summary(o: &Output) -> Vec<String> {
    stdout(o).lines().last().unwrap().split(' ').map(String::from).collect()
}

#[test]
fn zero_symbol_identity_passes_with_zero_residual() {
    let o = run(&["verify-identity", "--symbol", ZERO, "--nu", "0", "--R", "2,5,10"]);
    assert_eq!(code(&o), 0);
    let s = summary(&o);
    assert_eq!(&s[..3], &["verify-identity", "ok", "0.0000000000000000e0"]);
    assert!(s[3].parse::<f64>().unwrap() >= 0.0);
}

#[test]
fn invalid_inputs_exit_with_two() {
    let cases: [&[&str]; 7] = [
        &["verify-identity", "--symbol", GAUSSIAN, "--nu", "-1.5", "--R", "2"],
        &["rate-scan", "--symbol", GAUSSIAN, "--nu", "0"],
        &["norms", "--symbol", r#"{"family":"gaussian","amplitude":0.3,"scale":1.0,"extra":2}"#],
        &["norms", "--symbol", GAUSSIAN, "--unknown-flag"],
        &["verify-identity", "--symbol", GAUSSIAN, "--nu", "0", "--R", "5,2"],
        &["verify-identity", "--symbol", GAUSSIAN, "--nu", "0", "--R", "2", "--method", "hankel"],
        &["clt", "--symbol", GAUSSIAN, "--R", "10"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.lines().any(|l| l.starts_with("error: ")), "{err}");
    }
    assert_eq!(code(&run_env(&["selftest"], Some("zero"))), 2);
}

#[test]
fn symbol_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    std::fs::write(&path, ZERO).unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(code(&run(&["verify-identity", "--symbol", &arg, "--nu", "0.7", "--R", "3"])), 0);
    assert_eq!(code(&run(&["norms", "--symbol", "@/nonexistent/b.json"])), 2);
}

#[test]
fn selftest_residuals_are_tiny() {
    let o = run(&["selftest"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    assert!(csv.starts_with("oracle,max_residual\n"));
    assert_eq!(csv.lines().filter(|l| !l.contains(' ')).count(), 5);
    assert!(summary(&o)[2].parse::<f64>().unwrap() < 1e-9);
}

#[test]
fn selftest_fails_an_impossible_tolerance() {
    assert_eq!(code(&run(&["selftest", "--tol", "0"])), 1);
}

#[test]
fn rate_scan_csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.csv");
    let o = run(&["rate-scan", "--symbol", GAUSSIAN, "--nu", "0.5", "--R", "1,2,3", "--out", out.to_str().unwrap()]);
    let status = &summary(&o)[1];
    assert_eq!(code(&o), if status == "ok" { 0 } else { 1 });
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "R,value,bound,slope_running");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with(','), "first row has no running slope");
    assert!(csv.ends_with('\n'));
}

#[test]
fn io_failure_exits_with_four() {
    assert_eq!(code(&run(&["selftest", "--out", "/nonexistent/dir/out.csv"])), 4);
}

fn read(p: &Path) -> Vec<u8> {
    std::fs::read(p).unwrap()
}

#[test]
fn sampling_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<_> = [("a", "1"), ("b", "1"), ("c", "3")]
        .iter()
        .map(|(name, threads)| {
            let p = dir.path().join(format!("{name}.csv"));
            let o = run_env(
                &["sample", "--nu", "0.3", "--R", "8", "--seed", "42", "--count", "200", "--out", p.to_str().unwrap()],
                Some(threads),
            );
            assert_eq!(code(&o), 0);
            p
        })
        .collect();
    assert_eq!(read(&files[0]), read(&files[1]));
    assert_eq!(read(&files[0]), read(&files[2]));
    let text = String::from_utf8(read(&files[0])).unwrap();
    assert!(text.starts_with("config_index,point\n"));
    let other = dir.path().join("d.csv");
    run(&["sample", "--nu", "0.3", "--R", "8", "--seed", "43", "--count", "200", "--out", other.to_str().unwrap()]);
    assert_ne!(read(&files[0]), read(&other));
}

#[test]
fn json_output_round_trips_the_csv_values() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, json) = (dir.path().join("s.csv"), dir.path().join("s.json"));
    let base = ["sample", "--nu", "0", "--R", "6", "--seed", "7", "--count", "50"];
    run(&[&base[..], &["--out", csv.to_str().unwrap()]].concat());
    run(&[&base[..], &["--format", "json", "--out", json.to_str().unwrap()]].concat());
    let doc: serde_json::Value = serde_json::from_slice(&read(&json)).unwrap();
    assert_eq!(doc["provenance"]["config"]["seed"], 7);
    let from_json: Vec<f64> = doc["results"]["configs"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["points"].as_array().unwrap().iter().map(|p| p.as_f64().unwrap()))
        .collect();
    let from_csv: Vec<f64> =
        String::from_utf8(read(&csv)).unwrap().lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(!from_csv.is_empty());
    assert_eq!(
        from_json.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
        from_csv.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
    );
}

#[test]
fn clt_by_inversion() {
    let o = run(&["clt", "--symbol", r#"{"family":"gaussian","amplitude":1.0,"scale":1.0}"#, "--normalize", "--R", "10,40"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("R,x,f,phi\n"));
    assert_eq!(out.lines().count(), 1 + 2 * 401 + 1);
    assert!(summary(&o)[2].parse::<f64>().unwrap() < 0.05);
}

#[test]
fn norms_report() {
    let o = run(&["norms", "--symbol", GAUSSIAN, "--nu", "0.5"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("quantity,value\n"));
    // c2 = −(ν/2)·b(0) at b(0) = 0.3.
    let c2: f64 = out.lines().find(|l| l.starts_with("c2b,")).unwrap()[4..].parse().unwrap();
    assert!((c2 + 0.075).abs() < 1e-15);
}
