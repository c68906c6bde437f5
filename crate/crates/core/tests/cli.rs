use std::path::Path;
use std::process::{Command, Output};

use headmouse::sim::{load_trace, save_trace, scenario};

fn headmouse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_headmouse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn simulate_writes_reports_and_path() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    save_trace(&scenario::target_acquisition(10), &trace).unwrap();
    let reports = dir.path().join("r.txt");
    let path = dir.path().join("p.txt");
    let o = headmouse(&["simulate", p(&trace), "--reports", p(&reports), "--path", p(&path)]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    assert!(out.contains("rows 112\n"), "{out}");
    assert!(out.contains("reports 111\n"));
    assert!(out.contains("diag 10 ok\n"));
    assert!(out.ends_with("final 1560 540\n"), "{out}");

    let text = std::fs::read_to_string(&reports).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("10 00 "), "{first}");
    assert!(text.lines().all(|l| {
        let f: Vec<&str> = l.split(' ').collect();
        f.len() == 4 && f[1..].iter().all(|b| b.len() == 2 && b.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()))
    }));
    let path_text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(path_text.lines().next(), Some("0 960 540"));
    assert_eq!(path_text.lines().last(), Some("1110 1560 540"));
}

#[test]
fn simulate_reports_events_in_improved_mode() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    save_trace(&scenario::press_during_motion(10, 12.0, 400, 200, 1000), &trace).unwrap();
    let faithful = stdout(&headmouse(&["simulate", p(&trace)]));
    assert!(!faithful.contains("event"));
    let improved = stdout(&headmouse(&["simulate", p(&trace), "--mode", "improved"]));
    assert!(improved.contains("event 420 L press\nevent 620 L release\n"), "{improved}");
}

#[test]
fn config_file_is_applied_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    save_trace(&scenario::target_acquisition(10), &trace).unwrap();
    let cfg = dir.path().join("flip.conf");
    std::fs::write(&cfg, "# mirrored mount\nsign_x = -1\n").unwrap();
    let out = stdout(&headmouse(&["simulate", p(&trace), "--config", p(&cfg)]));
    assert!(out.ends_with("final 360 540\n"), "{out}");

    std::fs::write(&cfg, "dpi = 800\n").unwrap();
    let o = headmouse(&["simulate", p(&trace), "--config", p(&cfg)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown key `dpi`"));

    let o = headmouse(&["simulate", p(&trace), "--config", p(&dir.path().join("none.conf"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn noise_then_jitter() {
    let dir = tempfile::tempdir().unwrap();
    let clean = dir.path().join("clean.csv");
    let noisy = dir.path().join("noisy.csv");
    save_trace(&scenario::rest(1001, 10), &clean).unwrap();
    let o = headmouse(&["noise", p(&clean), "--seed", "1", "--sigma", "50", "--out", p(&noisy)]);
    assert!(o.status.success(), "{o:?}");
    let tr = load_trace(&noisy).unwrap();
    assert_eq!(tr.rows()[0].ax, -2);

    let o = headmouse(&["jitter", p(&noisy), "--from", "1000", "--to", "10000"]);
    assert_eq!(stdout(&o), "rms_px 0.000000\npeak_px 0.000000\n");

    let conf = dir.path().join("open.conf");
    std::fs::write(&conf, "dead_zone_deg = 0\n").unwrap();
    let o = headmouse(&["jitter", p(&noisy), "--from", "1000", "--to", "10000", "--config", p(&conf)]);
    let out = stdout(&o);
    let rms: f64 = out.lines().next().unwrap().split(' ').nth(1).unwrap().parse().unwrap();
    assert!(rms > 0.0, "{out}");

    let o = headmouse(&["jitter", p(&noisy), "--from", "20000", "--to", "30000"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn calibrate_reads_first_row() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    let mut rows = scenario::rest(3, 10).into_rows();
    rows[0] = scenario::pose_row(0, 5.0, -3.0);
    save_trace(&headmouse::sim::Trace::new(rows).unwrap(), &trace).unwrap();
    let out = stdout(&headmouse(&["calibrate", p(&trace)]));
    let vals: Vec<f64> = out.lines().map(|l| l.split(' ').nth(1).unwrap().parse().unwrap()).collect();
    assert!((vals[0] - 5.0).abs() < 0.01 && (vals[1] + 3.0).abs() < 0.01, "{out}");
}

#[test]
fn malformed_trace_is_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("bad.csv");
    std::fs::write(
        &trace,
        "t_ms,ax,ay,az,gx,gy,gz,pedal_l,pedal_r,a_attached,b_attached\n0,40000,0,0,0,0,0,0,0,1,1\n",
    )
    .unwrap();
    let o = headmouse(&["simulate", p(&trace)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ax = 40000"));
}

#[test]
fn same_argv_same_output() {
    let a = headmouse(&["features", "--mode", "improved"]);
    let b = headmouse(&["features", "--mode", "improved"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 11);
}
