use std::io::Write;
use std::process::{Command, Output, Stdio};

use gammadyn::parallel::{finite_orbit_characters, with_threads, THREADS_VAR};
use gammadyn::AnalysisReport;
use gammadyn_core::linalg::IntMatrix;
use gammadyn_core::toral::{self, paper_example_spec, StructureHint, ToralActionSpec};
use serde_json::{json, Value};

const GAMMA0: &str = r#"{"n":3,"generators":[[[1,0,1],[0,1,0],[0,0,1]],[[1,0,0],[0,1,1],[0,0,1]]]}"#;

fn gammadyn(args: &[&str], stdin: &str, threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gammadyn"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    match threads {
        Some(t) => cmd.env(THREADS_VAR, t),
        None => cmd.env_remove(THREADS_VAR),
    };
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn certificate_kind(r: &Value, verdict: &str) -> String {
    let id = r["verdicts"][verdict]["certificate"].as_u64().unwrap() as usize;
    r["certificates"][id]["kind"].as_str().unwrap().to_string()
}

fn without_time(out: &Output) -> String {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"wall_time_us\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn output_is_deterministic_up_to_timing() {
    let a = gammadyn(&["toral"], GAMMA0, None);
    let b = gammadyn(&["toral"], GAMMA0, Some("1"));
    let c = gammadyn(&["paper-example"], "", Some("3"));
    let d = gammadyn(&["paper-example"], "", None);
    assert_eq!(without_time(&a), without_time(&b));
    assert_eq!(without_time(&c), without_time(&d));
    assert!(!without_time(&a).is_empty());
}

#[test]
fn reports_round_trip_and_validate() {
    let out = gammadyn(&["paper-example"], "", None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let report: AnalysisReport = serde_json::from_str(&text).unwrap();
    report.validate().unwrap();
    assert_eq!(report.to_json(), text);
    assert_eq!(report.input_sha256.len(), 64);
}

#[test]
fn malformed_input_exits_with_two() {
    let cases = [
        ("toral", "{not json"),
        ("toral", r#"{"n":2,"generators":[[[1,0],[0,1]]],"colour":1}"#),
        ("toral", r#"{"n":2,"generators":[[[2,0],[0,1]]]}"#),
        (
            "invert",
            r#"{"f":{"spec":{"type":"free_abelian","rank":1},"terms":[{"g":[0],"c":1},{"g":[1],"c":-1}]}}"#,
        ),
        (
            "shift",
            r#"{"f":{"spec":{"type":"heisenberg"},"terms":[{"g":[0,0,0],"c":3}]},
                "quotient":{"type":"finite_quotient","base":{"type":"heisenberg"},"moduli":[2,2,2]}}"#,
        ),
        (
            "h1",
            r#"{"presentation":{"generators":2,"relators":[[1,2,-1,-2]]},
                   "action":{"modulus":4,"rank":2,"matrices":[[[1,1],[0,1]],[[1,0],[1,1]]]}}"#,
        ),
    ];
    for (cmd, input) in cases {
        let out = gammadyn(&[cmd], input, None);
        assert_eq!(out.status.code(), Some(2), "{cmd} {input}");
        let err = stdout_json(&out);
        assert_eq!(err["error"]["kind"], "bad_input");
        assert_eq!(err["error"]["exit_code"], 2);
        assert!(!err["error"]["message"].as_str().unwrap().is_empty());
    }
    assert_eq!(gammadyn(&["no-such-command"], "", None).status.code(), Some(2));
    assert_eq!(
        gammadyn(&["toral", "--epsilon", "x"], GAMMA0, None).status.code(),
        Some(2)
    );
}

#[test]
fn undecided_verdicts_exit_with_one() {
    // a quarter turn and a shear: the cyclotomic kernel is nonzero but no
    // character in it has a finite orbit
    let pair = r#"{"n":2,"generators":[[[0,-1],[1,0]],[[1,1],[0,1]]]}"#;
    let out = gammadyn(&["toral", "--orbit-cap", "50"], pair, None);
    assert_eq!(out.status.code(), Some(1));
    let r = stdout_json(&out);
    assert_eq!(r["status"], "unknown");
    assert_eq!(r["verdicts"]["ergodicity"]["outcome"], "unknown");
    assert_eq!(r["verdicts"]["ergodicity"]["bounds"]["orbit_cap"], 50);
    assert_eq!(r["verdicts"]["expansiveness"]["outcome"], "expansive");

    let rot = r#"{"n":2,"generators":[[[0,-1],[1,0]]],"hint":"cyclic"}"#;
    let out = gammadyn(&["toral", "--orbit-cap", "2"], rot, None);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["verdicts"]["ergodicity"]["outcome"], "non_ergodic");
    assert_eq!(certificate_kind(&r, "ergodicity"), "finite_orbit_character");

    let shift = json!({
        "f": {"spec": {"type": "free_abelian", "rank": 1}, "terms": [{"g": [0], "c": 1}, {"g": [1], "c": -1}]},
        "quotient": {"type": "finite_quotient", "base": {"type": "free_abelian", "rank": 1}, "moduli": [3]},
    });
    let out = gammadyn(&["shift"], &shift.to_string(), None);
    assert_eq!(out.status.code(), Some(1));
    let r = stdout_json(&out);
    assert_eq!(r["verdicts"]["expansiveness"]["outcome"], "unknown");
    assert_eq!(r["results"]["dimension"], 1);
}

#[test]
fn inverse_of_two_minus_shift() {
    let input = r#"{"f":{"spec":{"type":"free_abelian","rank":1},"terms":[{"g":[0],"c":2},{"g":[1],"c":-1}]}}"#;
    let out = gammadyn(&["invert", "--epsilon", "1/1024"], input, None);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["results"]["support_size"], 10);
    assert_eq!(r["options"]["epsilon"], "1/1024");
    assert_eq!(r["verdicts"]["invertibility"]["outcome"], "invertible");
}

#[test]
fn trivial_action_on_z3() {
    let input = r#"{"presentation":{"generators":1,"relators":[]},"action":{"modulus":3,"rank":1,"matrices":[[[1]]]}}"#;
    let out = gammadyn(&["h1"], input, None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["results"]["h1"]["order"], "3");
}

#[test]
fn flags_override_payload_bounds() {
    let payload = json!({"n": 3, "generators": [[[1, 0, 1], [0, 1, 0], [0, 0, 1]]], "norm_bound": 5, "orbit_cap": 7});
    let r = stdout_json(&gammadyn(&["toral"], &payload.to_string(), None));
    assert_eq!(r["options"]["norm_bound"], 5);
    assert_eq!(r["options"]["orbit_cap"], 7);
    let r = stdout_json(&gammadyn(
        &["toral", "--norm-bound", "3", "--depth", "4"],
        &payload.to_string(),
        None,
    ));
    assert_eq!(r["options"]["norm_bound"], 3);
    assert_eq!(r["options"]["orbit_cap"], 7);
    assert_eq!(r["options"]["search_depth"], 4);
}

#[test]
fn input_and_output_files() {
    let dir = std::env::temp_dir().join(format!("gammadyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("gamma0.json");
    let output = dir.join("report.json");
    std::fs::write(&input, GAMMA0).unwrap();
    let out = gammadyn(
        &[
            "toral",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
        ],
        "",
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(written["verdicts"]["expansiveness"]["outcome"], "non_expansive");
    let missing = gammadyn(
        &["toral", "--input", dir.join("absent.json").to_str().unwrap()],
        "",
        None,
    );
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_lists_defaults() {
    let out = gammadyn(&["--help"], "", None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for needle in [
        "paper-example",
        "--norm-bound",
        "[default: 20]",
        "[default: 10000]",
        "GAMMADYN_THREADS",
    ] {
        assert!(text.contains(needle), "{needle} missing from help");
    }
}

#[test]
fn parallel_search_matches_sequential() {
    let rot = IntMatrix::from_rows([[0, -1], [1, 0]]).unwrap();
    let shear = IntMatrix::from_rows([[1, 1], [0, 1]]).unwrap();
    let specs = [
        paper_example_spec(),
        ToralActionSpec::new(2, vec![rot], StructureHint::Cyclic).unwrap(),
        ToralActionSpec::new(2, vec![shear], StructureHint::Cyclic).unwrap(),
    ];
    for spec in &specs {
        let sequential = toral::finite_orbit_characters(spec, 6, 50).unwrap();
        for threads in [Some(1), Some(4), None] {
            let parallel = with_threads(threads, || finite_orbit_characters(spec, 6, 50)).unwrap();
            assert_eq!(parallel, sequential);
        }
    }
}
