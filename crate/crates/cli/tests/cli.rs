use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_blindshape"));
    c.env_remove("BLINDSHAPE_OUT");
    c
}

fn run(args: &[&str], cwd: &Path) -> Output {
    bin().args(args).current_dir(cwd).output().unwrap()
}

fn report(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn run_writes_every_artifact() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "run",
            "triangle-default",
            "--n-sensors",
            "300",
            "--seed",
            "4",
            "--out",
            "r",
            "--write-traces",
        ],
        tmp.path(),
    );
    assert!(
        matches!(o.status.code(), Some(0 | 2)),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    for f in [
        "manifest.json",
        "config.json",
        "traces.csv",
        "samples.csv",
        "lengths_hist.csv",
        "angles_hist.csv",
        "report.json",
    ] {
        assert!(tmp.path().join("r").join(f).exists(), "{f}");
    }
    let r = report(&tmp.path().join("r"));
    assert_eq!(r["seed"], 4);
    assert_eq!(r["knowledge"]["n_s"], 300);
    let hist = std::fs::read_to_string(tmp.path().join("r/angles_hist.csv")).unwrap();
    let total: u64 = hist
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, r["angles"]["candidates"].as_u64().unwrap());
}

#[test]
fn same_seed_gives_identical_report_bytes() {
    let tmp = tempfile::tempdir().unwrap();
    for d in ["a", "b"] {
        run(
            &["run", "triangle-default", "--n-sensors", "400", "--out", d],
            tmp.path(),
        );
    }
    let a = std::fs::read(tmp.path().join("a/report.json")).unwrap();
    let b = std::fs::read(tmp.path().join("b/report.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn staged_commands_match_one_shot_run() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path();
    run(
        &[
            "run",
            "building-default",
            "--n-sensors",
            "500",
            "--out",
            "one",
        ],
        p,
    );
    assert!(run(
        &[
            "simulate",
            "building-default",
            "--n-sensors",
            "500",
            "--out",
            "st"
        ],
        p
    )
    .status
    .success());
    assert!(
        run(&["analyze", "--traces", "st/traces.csv", "--out", "st"], p)
            .status
            .success()
    );
    let e = run(
        &["estimate", "--samples", "st/samples.csv", "--out", "st"],
        p,
    );
    assert!(matches!(e.status.code(), Some(0 | 2)));
    assert_eq!(
        std::fs::read(p.join("one/samples.csv")).unwrap(),
        std::fs::read(p.join("st/samples.csv")).unwrap()
    );
    let (a, b) = (report(&p.join("one")), report(&p.join("st")));
    for k in ["lengths", "angles", "pair_matrix", "shape", "shape_error"] {
        assert_eq!(a[k], b[k], "{k}");
    }
}

#[test]
fn env_var_sets_default_output_dir() {
    let tmp = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["simulate", "triangle-200"])
        .env("BLINDSHAPE_OUT", "from-env")
        .current_dir(tmp.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(tmp.path().join("from-env/traces.csv").exists());
}

#[test]
fn config_errors_point_at_the_problem() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("typo.json"),
        "{\n  \"target\": \"triangle\",\n  \"fleet\": { \"nsensors\": 3 }\n}\n",
    )
    .unwrap();
    let o = run(&["run", "typo.json"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("nsensors"), "{err}");

    std::fs::write(
        tmp.path().join("range.json"),
        r#"{"target": "triangle", "noise": {"eps_l": 2.0}}"#,
    )
    .unwrap();
    let err = String::from_utf8_lossy(&run(&["run", "range.json"], tmp.path()).stderr).to_string();
    assert!(err.contains("noise.eps_l"), "{err}");
}

#[test]
fn custom_polygon_path_resolves_beside_config() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::create_dir(tmp.path().join("cfg")).unwrap();
    std::fs::write(
        tmp.path().join("cfg/square.csv"),
        "x,y\n0,0\n20,0\n20,20\n0,20\n",
    )
    .unwrap();
    std::fs::write(
        tmp.path().join("cfg/sq.json"),
        r#"{"target": "square.csv", "fleet": {"n_s": 300}}"#,
    )
    .unwrap();
    let o = run(&["run", "cfg/sq.json", "--out", "sq"], tmp.path());
    assert!(
        matches!(o.status.code(), Some(0 | 2)),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(report(&tmp.path().join("sq"))["target"], "square.csv");
}

#[test]
fn oracle_reports_pass_and_json() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(
        &["oracle", "measure1", "--trials", "100", "--json"],
        tmp.path(),
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let o = run(
        &[
            "oracle",
            "qd-mc",
            "--trials",
            "20000",
            "--lambda",
            "25",
            "--half-swath",
        ],
        tmp.path(),
    );
    assert!(
        !o.status.success(),
        "the half-swath normalizer should miss the Monte Carlo rate"
    );
    assert!(!run(&["oracle", "bogus"], tmp.path()).status.success());
}
