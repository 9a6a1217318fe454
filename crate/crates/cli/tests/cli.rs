use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Runs the binary in the fixture directory; the timing line is dropped.
fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_opcalc")).args(args).current_dir(fixtures()).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stdout: String = stdout.lines().filter(|l| !l.starts_with("elapsed-ms:")).map(|l| format!("{l}\n")).collect();
    (stdout, String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

const GOLDEN: &[(&str, &str, i32)] = &[
    ("circ-com+", "circ com+.coll com+.coll --max-arity 4", 0),
    ("circ-orbitwise-labels", "circ com+.coll l+.coll --max-arity 3 --orbitwise --labels", 0),
    ("check-ass4", "check-operad ass4.op", 0),
    ("check-bad-ass3", "check-operad bad-ass3.op", 1),
    ("free-binary", "free binary.coll --max-arity 5", 0),
    ("schur-com3", "schur com3.op --dim 2 --max-arity 3", 0),
    ("check-module", "check-module free-com+.mod", 0),
    ("convolve-ass3", "convolve ass3.op z2.hopf", 0),
    ("convolve-reduced", "convolve com3.op z2mult.hopf --reduced-along id-com3.mor", 0),
    ("path-chain-com", "path-chain com3.op z2mult.hopf --reduced", 0),
    ("path-chain-ass", "path-chain ass3.op z2mult.hopf --reduced", 1),
    ("coalg-conv", "coalg-conv ass3.op grouplike2.coalg com+3.op free-com+.mod", 0),
    ("oracle-species", "oracle-compare com+.coll l+.coll --mode species --max-arity 4", 0),
    ("oracle-egf", "oracle-compare l+.coll l+.coll --mode egf --max-arity 4", 0),
    ("sigma-split-com", "sigma-split com3.op builtin:com-split-iota:3 builtin:com-split-rho:3", 1),
];

#[test]
fn golden_reports() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, cmd, code) in GOLDEN {
        let args: Vec<&str> = cmd.split(' ').collect();
        let (stdout, stderr, status) = run(&args);
        assert_eq!(status, *code, "{cmd}: {stderr}");
        let path = dir.join(format!("{name}.txt"));
        if update {
            fs::write(&path, &stdout).unwrap();
        }
        assert_eq!(stdout, fs::read_to_string(&path).unwrap(), "{cmd}");
        assert_eq!(run(&args).0, stdout, "{cmd} is not deterministic");
    }
}

#[test]
fn canonical_fixtures_round_trip() {
    let mut count = 0;
    for entry in fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        if name.starts_with("bad-") || name.starts_with("syntax-") {
            continue;
        }
        let (stdout, stderr, status) = run(&["emit", &name]);
        assert_eq!(status, 0, "{name}: {stderr}");
        assert_eq!(stdout, fs::read_to_string(&path).unwrap(), "{name} is not canonical");
        count += 1;
    }
    assert!(count >= 10);
}

#[test]
fn malformed_input_exits_with_two() {
    let (out, err, code) = run(&["circ", "bad-braid.coll", "unit.coll", "--max-arity", "3"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("bad-braid.coll:16:1") && err.contains("s_1s_2s_1 != s_2s_1s_2"), "{err}");
    let (_, err, code) = run(&["check-operad", "syntax-error.op"]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid rational `one`"), "{err}");
    let (_, _, code) = run(&["check-operad"]);
    assert_eq!(code, 2);
    let (_, err, code) = run(&["check-operad", "missing.op"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"), "{err}");
    let (_, err, code) = run(&["check-operad", "com+.coll"]);
    assert_eq!(code, 2);
    assert!(err.contains("expected an operad, found a collection"), "{err}");
}

#[test]
fn emit_builtins() {
    let (out, _, code) = run(&["emit", "builtin:ass:3"]);
    assert_eq!(code, 0);
    assert_eq!(out, fs::read_to_string(fixtures().join("ass3.op")).unwrap());
    let (_, err, code) = run(&["emit", "builtin:nonsense:3"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown builtin"));
}
