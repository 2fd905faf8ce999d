use std::process::{Command, Output};

fn dressed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dressed"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = [
        "amplitude",
        "--steps",
        "50",
        "--n-modes",
        "30",
        "--delta",
        "0.3",
    ];
    let (a, b) = (dressed(&args), dressed(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("t,re_f,im_f,abs2_f,method\n"));
    assert!(text.lines().nth(1).unwrap().ends_with(",discrete-sum"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(
        code(&dressed(&["spectrum", "--k-min", "4", "--k-max", "1"])),
        1
    );
    assert_eq!(code(&dressed(&["entropy", "--xi", "1.5"])), 1);
    assert_eq!(code(&dressed(&["entropy", "--regime", "free-space"])), 1);
    assert_eq!(code(&dressed(&["amplitude", "--regime", "vacuum"])), 1);
    assert_eq!(code(&dressed(&["no-such-command"])), 1);
    // outside the small-cavity series regime
    assert_eq!(
        code(&dressed(&[
            "amplitude",
            "--regime",
            "small-cavity",
            "--delta",
            "5"
        ])),
        1
    );
}

#[test]
fn entropy_at_quarter_weight() {
    let out = dressed(&[
        "entropy",
        "--xi",
        "0.25",
        "--steps",
        "40",
        "--n-modes",
        "60",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t,rho00,rho0101,rho1010,re_coh,im_coh,D,E\n"));
    for line in text.lines().skip(1) {
        let e: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((e - 0.562335).abs() < 1e-6);
    }
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("max |E(t) - E(0)|"));
}

#[test]
fn files_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let csv = dir.path().join("d.csv");
    let svg = dir.path().join("d.svg");
    std::fs::write(&cfg, "# short run\nsteps = 1\nn_modes = 20\n").unwrap();
    let out = dressed(&[
        "impurity",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 2);
    let d: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(d[0], 0.0);
    assert_eq!(d[1], 0.0);
    assert!(d[2].abs() < 1e-12);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
}

#[test]
fn missing_config_is_a_usage_error() {
    assert_eq!(
        code(&dressed(&["impurity", "--config", "/nonexistent/run.cfg"])),
        1
    );
}

#[test]
fn spectrum_and_matrix_dump() {
    let out = dressed(&["spectrum", "--k-max", "3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let roots: Vec<f64> = text
        .lines()
        .filter(|l| l.starts_with("root,"))
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(roots.len(), 4);
    assert!(roots.windows(2).all(|w| w[0] < w[1]));

    let out = dressed(&["matrix-dump", "--n-modes", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "r,Omega_r,t_atom_r,t_1_r,t_2_r,t_3_r,t_4_r"
    );
}

#[test]
fn oracle_check_reports_passes() {
    let out = dressed(&["oracle-check", "--n-modes", "10"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.ends_with(",pass")));
}
