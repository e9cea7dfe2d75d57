use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn ila(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ila"))
        .args(args)
        .env_remove("ILA_COLOR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn regular_thevenin() {
    let o = ila(&["regular", &path("thevenin.ila")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("regular\n"));
}

#[test]
fn clashing_sources_are_not_regular() {
    let o = ila(&["regular", &path("clashing_sources.ila")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not regular"));
    let o = ila(&[
        "behaviour",
        "--method",
        "adjoint-gyrator",
        &path("clashing_sources.ila"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not regular"));
}

#[test]
fn thevenin_behaviour_text_and_json() {
    let o = ila(&["behaviour", &path("thevenin.ila")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("v(p1) - 2 i(p1) = 4"));
    let o = ila(&["--json", "behaviour", &path("thevenin.ila")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"], "rational");
    assert_eq!(v["ports"], serde_json::json!(["p1"]));
    assert_eq!(v["behaviour"]["void"], false);
    assert_eq!(v["behaviour"]["labels"], serde_json::json!(["p1'", "p1''"]));
}

#[test]
fn behaviour_json_is_identical_across_methods() {
    for name in [
        "thevenin.ila",
        "source_free.ila",
        "bridge.ila",
        "ladder.ila",
        "hybrid.ila",
        "gyrator_open.ila",
        "transformer.ila",
        "phasor.ila",
    ] {
        let a = ila(&["--json", "behaviour", "--method", "eliminate", &path(name)]);
        let b = ila(&[
            "--json",
            "behaviour",
            "--method",
            "adjoint-gyrator",
            &path(name),
        ]);
        assert_eq!(a.status.code(), Some(0), "{name}");
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

#[test]
fn maxpower_worked_one_port() {
    let o = ila(&["--json", "maxpower", &path("thevenin.ila")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["voltages"], serde_json::json!(["2"]));
    assert_eq!(v["currents"], serde_json::json!(["-1"]));
    assert_eq!(v["lambda"], serde_json::json!(["-1"]));
    assert_eq!(v["delivered_power"], "2");
    let o = ila(&[
        "--json",
        "maxpower",
        "--method",
        "adjoint-transformer",
        &path("thevenin.ila"),
    ]);
    let w: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(w["voltages"], v["voltages"]);
    assert_eq!(w["currents"], v["currents"]);
    assert_eq!(w["lambda"], serde_json::Value::Null);
}

#[test]
fn maxpower_on_void_and_portless() {
    assert_eq!(
        ila(&["maxpower", &path("clashing_sources.ila")])
            .status
            .code(),
        Some(1)
    );
    let o = ila(&["maxpower", &path("empty.ila")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no ports"));
}

#[test]
fn adjoint_twice_restores_a_source_free_behaviour() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.ila");
    let twice = dir.path().join("twice.ila");
    let o = ila(&["adjoint", &path("source_free.ila")]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&once, &o.stdout).unwrap();
    let o = ila(&[
        "-o",
        twice.to_str().unwrap(),
        "adjoint",
        once.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let back = ila(&["--json", "behaviour", twice.to_str().unwrap()]);
    let original = ila(&["--json", "behaviour", &path("source_free.ila")]);
    assert_eq!(back.stdout, original.stdout);
}

#[test]
fn check_reports_and_selects_properties() {
    let o = ila(&["check", &path("thevenin.ila")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("passive: yes"));
    assert_eq!(
        ila(&[
            "check",
            "--property",
            "strictly-passive",
            &path("thevenin.ila")
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        ila(&["check", "--property", "dirac", &path("thevenin.ila")])
            .status
            .code(),
        Some(1)
    );
    let o = ila(&["--json", "check", "--of", "device", &path("thevenin.ila")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["of"], "device");
    assert_eq!(v["properties"]["passive"], true);
    assert_eq!(v["properties"]["strictly-passive"], false);
}

#[test]
fn verify_suites() {
    let o = ila(&["verify", "--suite", "idt", "--trials", "50", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("50/50"));
    let o = ila(&[
        "--json", "verify", "--suite", "tellegen", "--trials", "10", "--field", "gaussian",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], 10);
    assert_eq!(v["field"], "gaussian");
    assert_ne!(ila(&["verify", "--suite", "bogus"]).status.code(), Some(0));
}

#[test]
fn missing_file_exits_two() {
    let o = ila(&["regular", "/no/such/file.ila"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("ila: error: /no/such/file.ila"));
}

#[test]
fn parse_errors_carry_position_and_code() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("field rational\nnode a b\nedge e a c\n", "3:", "[VERTEX]"),
        (
            "field rational\nnode a b\nedge e a b\nedge e b a\n",
            "4:",
            "[DUPEDGE]",
        ),
        ("field octonion\n", "1:", "[FIELD]"),
    ];
    for (k, (text, line, code)) in cases.into_iter().enumerate() {
        let file = dir.path().join(format!("bad{k}.ila"));
        std::fs::write(&file, text).unwrap();
        let o = ila(&["behaviour", file.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        let err = stderr(&o);
        assert!(err.contains(&format!("bad{k}.ila:{line}")), "{err}");
        assert!(err.contains(code), "{err}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.json");
    let o = ila(&[
        "--json",
        "-o",
        out.to_str().unwrap(),
        "behaviour",
        &path("thevenin.ila"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&out).unwrap();
    assert_eq!(
        written,
        ila(&["--json", "behaviour", &path("thevenin.ila")]).stdout
    );
    let o = ila(&["-o", "/no/such/dir/x", "regular", &path("thevenin.ila")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn colored_errors_on_request() {
    let o = Command::new(env!("CARGO_BIN_EXE_ila"))
        .args(["regular", "/no/such/file.ila"])
        .env("ILA_COLOR", "1")
        .output()
        .unwrap();
    assert!(stderr(&o).contains("\x1b[1;31merror"));
}
