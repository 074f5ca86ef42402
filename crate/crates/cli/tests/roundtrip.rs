use std::path::Path;
use std::process::Command;

use pairloc_core::session::parse_session;
use serde_json::Value;

fn session_path() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/session.pl")
}

fn run(args: &[&str], seed: Option<&str>) -> (Value, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pairloc"));
    cmd.args(args).arg("--session").arg(session_path()).arg("--no-timings");
    match seed {
        Some(s) => cmd.env("PAIRLOC_SEED", s),
        None => cmd.env_remove("PAIRLOC_SEED"),
    };
    let out = cmd.output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (json, out.status.code().unwrap_or(-1))
}

#[test]
fn echoed_ideals_reparse_to_equal_ideals() {
    let text = std::fs::read_to_string(session_path()).unwrap();
    let session = parse_session(&text).unwrap();
    let calls: &[&[&str]] = &[
        &["gamma", "--I", "I + J", "--J", "J^2", "--K", "K"],
        &["intersect", "--a", "A", "--b", "x*y - 1/2*z^2, 3*z"],
        &["w-member", "--p", "P", "--I", "I*M", "--J", "E"],
    ];
    for args in calls {
        let (json, code) = run(args, None);
        assert_eq!(code, 0, "{json}");
        for (key, value) in json["inputs"].as_object().unwrap() {
            let Some(gens) = value.as_array() else { continue };
            let echoed: Vec<&str> = gens.iter().map(|g| g.as_str().unwrap()).collect();
            let original = args
                .windows(2)
                .find(|w| w[0] == format!("--{key}"))
                .map(|w| w[1])
                .unwrap();
            let a = session.ideal_arg(original).unwrap();
            let b = session.ideal_arg(&echoed.join(", ")).unwrap();
            assert!(a.equals(&b).unwrap(), "{key}: {original} vs {echoed:?}");
        }
    }
}

#[test]
fn seed_comes_from_environment_then_session() {
    let args = ["check", "--suite", "gamma-triangle", "--samples", "5"];
    let (json, code) = run(&args, Some("99"));
    assert_eq!(code, 0);
    assert_eq!(json["result"]["seed"], 99);
    let (json, _) = run(&args, None);
    assert_eq!(json["result"]["seed"], 7);
    let (json, _) = run(&[&args[..], &["--seed", "3"]].concat(), Some("99"));
    assert_eq!(json["result"]["seed"], 3);
}

#[test]
fn errors_map_to_exit_codes() {
    let (json, code) = run(&["top-degree", "--I", "I", "--J", "J"], None);
    assert_eq!(code, 2);
    assert_eq!(json["error"]["kind"], "precondition");
    let (json, code) = run(&["check", "--suite", "no-such-suite"], None);
    assert_eq!(code, 2);
    assert_eq!(json["error"]["kind"], "precondition");
}
