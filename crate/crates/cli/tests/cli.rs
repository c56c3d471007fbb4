use std::path::Path;
use std::process::{Command, Output};

use qwitt_core::coboundary::d1;
use qwitt_core::cochains::{random_cochain2, Cochain2, CoeffKind, Window};
use qwitt_core::deformation::TruncatedDeformation;
use qwitt_core::h2solver::ClosedCoboundaries;
use qwitt_core::qfield::{QRat, Symbolic};
use qwitt_core::qwitt::Parity;

fn qwitt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwitt")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_algebra_reports_zero_defects() {
    for n in ["1", "4"] {
        let o = qwitt(&["verify-algebra", "--window", n, "--mode", "symbolic"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(stderr(&o).contains("0 defects"));
        let j = stdout_json(&o);
        assert_eq!(j["jacobi_defects"], 0);
        assert_eq!(j["config"]["window"], n.parse::<i64>().unwrap());
    }
}

#[test]
fn injected_fault_is_reported_with_a_witness() {
    let o = qwitt(&["verify-algebra", "--window", "3", "--mode", "symbolic", "--inject-fault"]);
    assert_eq!(code(&o), 2);
    let j = stdout_json(&o);
    assert!(j["jacobi_defects"].as_u64().unwrap() > 0);
    assert!(!j["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn h2_sweep_csv_has_one_row_per_sector() {
    let o = qwitt(&["h2-sweep", "--window", "8", "--s-min", "-1", "--s-max", "1", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "parity,s,N,N_core,mode,dim_Z_core,dim_B_core,dim_H2_core,wall_time_ms");
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("even,-1,8,2,sampled(2),"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",0,")));
}

#[test]
fn sweep_reports_are_identical_across_thread_counts() {
    let run = |t: &str| qwitt(&["h2-sweep", "--window", "8", "--s-min", "0", "--s-max", "1", "--threads", t]).stdout;
    assert_eq!(run("1"), run("4"));
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.cfg", "# sweep settings\nparity = odd\ns-min = 1\ns-max = 1\nwindow = 7\nq = 3/2\n");
    let o = qwitt(&["h2-sweep", "--config", &cfg, "--window", "8"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let j = stdout_json(&o);
    assert_eq!(j["config"]["window"], 8);
    assert_eq!(j["config"]["mode"]["q"], "3/2");
    assert_eq!(j["sectors"].as_array().unwrap().len(), 1);
    assert_eq!(j["sectors"][0]["parity"], "odd");
}

#[test]
fn configuration_errors_exit_with_3_and_a_json_record() {
    for args in [
        vec!["h2-sweep", "--window", "8", "--core", "5"],
        vec!["h2-sweep", "--q", "-1"],
        vec!["h2-sweep", "--s-min", "2", "--s-max", "1"],
        vec!["h2-sweep", "--mode", "symbolic", "--q", "2"],
    ] {
        let o = qwitt(&args);
        assert_eq!(code(&o), 3, "{args:?}");
        let rec: serde_json::Value = serde_json::from_str(stderr(&o).lines().last().unwrap()).unwrap();
        assert_eq!(rec["exit_code"], 3);
    }
    let o = qwitt(&["h2-sweep", "--q", "-1"]);
    assert!(stderr(&o).contains("InadmissibleSample"));
}

#[test]
fn unreadable_or_malformed_input_exits_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let o = qwitt(&["reduce", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    let bad = write(dir.path(), "bad.txt", "kind cochain2\nparity even\ndegree zero\n");
    assert_eq!(code(&qwitt(&["reduce", &bad])), 4);
}

#[test]
fn reducing_the_zero_cochain_gives_g_zero() {
    let dir = tempfile::tempdir().unwrap();
    let c = Cochain2::<QRat>::new(Parity::Even, 0, 6);
    let p = write(dir.path(), "zero.txt", &c.to_text());
    let o = qwitt(&["reduce", &p, "--mode", "symbolic"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let j = stdout_json(&o);
    assert!(j["certificate"]["g"]["entries"].as_array().unwrap().is_empty());
    assert_eq!(j["verified"], true);
}

#[test]
fn reducing_a_coboundary_writes_a_certificate_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = Symbolic::new();
    let w = Window::new(9, 3).unwrap();
    let g = ClosedCoboundaries::new(&f, Parity::Odd, -1, &w).unwrap().sample(&f, 4);
    let c = d1(&f, &g, &w);
    assert!(!c.is_zero());
    let p = write(dir.path(), "cob.json", &c.to_json());
    let out = dir.path().join("cert.json");
    let o = qwitt(&["reduce", &p, "--q", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(j["certificate"]["recipe"], "odd-sm1");
    assert_eq!(j["verified"], true);
}

#[test]
fn reducing_a_non_cocycle_is_a_finding() {
    let dir = tempfile::tempdir().unwrap();
    let w = Window::new(7, 1).unwrap();
    let p = write(dir.path(), "rand.txt", &random_cochain2(Parity::Even, 2, &w, 3, CoeffKind::Integer).to_text());
    let o = qwitt(&["reduce", &p]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("Precondition"));
}

#[test]
fn deform_check_trivializes_a_coboundary_term() {
    let dir = tempfile::tempdir().unwrap();
    let f = Symbolic::new();
    let w = Window::new(8, 2).unwrap();
    let g = ClosedCoboundaries::new(&f, Parity::Even, 2, &w).unwrap().sample(&f, 6);
    let c = d1(&f, &g, &w);
    assert!(!c.is_zero());
    let d = TruncatedDeformation::first_order(&f, w, vec![c]).unwrap();
    let p = write(dir.path(), "def.txt", &d.to_text());
    let o = qwitt(&["deform-check", &p, "--q", "3/2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("trivializable: yes"));
    assert_eq!(stdout_json(&o)["report"]["cocycle"], true);
}

#[test]
fn deform_check_flags_a_non_cocycle() {
    let dir = tempfile::tempdir().unwrap();
    let f = Symbolic::new();
    let w = Window::new(6, 0).unwrap();
    let d = TruncatedDeformation::first_order(&f, w, vec![random_cochain2(Parity::Even, 0, &w, 2, CoeffKind::Integer)]).unwrap();
    let p = write(dir.path(), "def.json", &serde_json::to_string(&d.to_json_value()).unwrap());
    let o = qwitt(&["deform-check", &p, "--mode", "sampled"]);
    assert_eq!(code(&o), 2);
    let j = stdout_json(&o);
    assert_eq!(j["report"]["cocycle"], false);
    assert_eq!(j["report"]["witness_verified"], true);
}

#[test]
fn verify_complex_reports_alpha_compatible_cochains_as_closed() {
    let o = qwitt(&["verify-complex", "--window", "6", "--s-min", "-1", "--s-max", "1", "--samples", "2", "--alpha-compatible"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = qwitt(&["verify-complex", "--window", "6", "--parity", "odd", "--s-min", "1", "--s-max", "1", "--samples", "2"]);
    assert_eq!(code(&o), 2);
    assert!(stdout_json(&o)["sectors"][0]["first_defect"].is_string());
}
