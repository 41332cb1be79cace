//! Acceptance gate for the harness: bundles must be byte-identical across
//! reruns with the same seed, and the exit-code contract (0 pass, 1 failed
//! check, 2 usage, 3 malformed input) must hold end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

fn exe() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_convexkit"));
    // The suite must not inherit a seed from the environment it runs in.
    cmd.env_remove("CONVEXKIT_SEED");
    cmd
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    exe().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn criterion_8_deterministic_bundles_and_exit_codes() {
    // Two identically-seeded stress runs must serialize to the same bytes.
    let (a, b) = (tmp("run_a.json"), tmp("run_b.json"));
    for path in [&a, &b] {
        let out = run(&[
            "verify",
            "pow:3",
            "ext-jensen",
            "--seed",
            "7",
            "--trials",
            "1000",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            code(&out),
            0,
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(
        bytes_a, bytes_b,
        "rerun with the same seed changed the bundle"
    );

    // The bundle re-read from disk must reproduce its own summary counts.
    let bundle: serde_json::Value = serde_json::from_slice(&bytes_a).unwrap();
    assert_eq!(bundle["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(bundle["config"]["seed"], 7);
    let reports = bundle["reports"].as_array().unwrap();
    let passed = reports
        .iter()
        .filter(|r| r["passed"].as_bool().unwrap())
        .count();
    assert_eq!(bundle["summary"]["passed"], passed);
    assert_eq!(bundle["summary"]["failed"], reports.len() - passed);
    assert_eq!(passed, reports.len(), "the stress run itself must pass");

    // Failing check: a cube violates the overshoot bound, exit 1.
    let out = run(&["verify", "pow:3", "gamma", "--seed", "7"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"), "stdout: {text}");

    // Usage errors: unknown id, and two seed sources at once.
    let out = run(&["classify", "nosuchfn"]);
    assert_eq!(code(&out), 2);
    let out = exe()
        .env("CONVEXKIT_SEED", "2")
        .args(["verify", "pow:2", "jensen", "--seed", "1", "--trials", "1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("both set"));

    // Malformed input: a row that does not parse, exit 3 with its number.
    let bad = tmp("bad.csv");
    std::fs::write(&bad, "1,0.5\noops,0.5\n").unwrap();
    let out = run(&["bound", bad.to_str().unwrap(), "cipu"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 2"));

    println!("criterion 8: PASS (byte-identical bundles; exit codes 0/1/2/3 exercised)");
}

#[test]
fn equal_weight_power_bound_matches_the_variance_bound() {
    let data = tmp("pair.csv");
    std::fs::write(&data, "1,0.5\n3,0.5\n").unwrap();

    let cipu = tmp("pair_cipu.json");
    let out = run(&[
        "bound",
        data.to_str().unwrap(),
        "cipu",
        "--json",
        cipu.to_str().unwrap(),
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let cipu: serde_json::Value = serde_json::from_slice(&std::fs::read(&cipu).unwrap()).unwrap();
    let report = &cipu["reports"][0];
    // (1, 3) with equal weights attains the bound exactly.
    assert_eq!(report["bound_value"].as_f64().unwrap(), 1.0);
    assert_eq!(report["actual_value"].as_f64().unwrap(), 1.0);
    assert_eq!(report["slack"].as_f64().unwrap(), 0.0);

    let power = tmp("pair_power.json");
    let out = run(&[
        "bound",
        data.to_str().unwrap(),
        "power",
        "--p",
        "2",
        "--json",
        power.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let power: serde_json::Value = serde_json::from_slice(&std::fs::read(&power).unwrap()).unwrap();
    assert_eq!(
        power["reports"][0]["bound_value"], cipu["reports"][0]["bound_value"],
        "with equal weights the p = 2 power bound is the variance bound"
    );
}

#[test]
fn zero_sample_point_is_a_usage_error() {
    let data = tmp("zero.csv");
    std::fs::write(&data, "0,0.5\n3,0.5\n").unwrap();
    let out = run(&["bound", data.to_str().unwrap(), "cipu"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn catalog_lists_the_integral_examples() {
    let out = run(&["catalog"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("xsq_ln"));
    assert!(text.contains("phi-convex with phi = -f on [0, 1]"));
    assert!(text.contains("lp_root:<p>"));
    assert!(text.contains("any p > 0"));
}
