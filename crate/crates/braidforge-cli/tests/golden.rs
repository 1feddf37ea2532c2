//! Golden outputs of the command-line tool. Set `BRAIDFORGE_BLESS=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

const CASES: [(&str, &[&str]); 12] = [
    ("jones_trefoil", &["jones", "--word", "1 1 1", "--strands", "2"]),
    ("jones_mirror", &["--json", "jones", "--word", "-1 -1 -1", "--strands", "2"]),
    ("alexander_unknot", &["alexander", "--word", "", "--strands", "1"]),
    ("alexander_figure_eight", &["alexander", "--word", "1 -2 1 -2", "--strands", "3", "--conway"]),
    ("burau_b4", &["--json", "burau", "--word", "1 2 3", "--strands", "4"]),
    ("bracket_sigma1", &["--json", "bracket", "--word", "1", "--strands", "2"]),
    ("tl_gram3", &["tl", "gram", "--n", "3"]),
    ("anyon_fib_dims", &["--json", "anyon", "dims", "--level", "3", "--leaf", "2", "--n", "10", "--charge", "0"]),
    ("rep_ising", &["--json", "rep", "jones", "--level", "2", "--n", "4", "--charge", "0"]),
    ("sim_trefoil", &["--json", "sim", "plat", "--word", "2 2 2", "--strands", "4", "--r", "5", "--seed", "42"]),
    ("verify_level4", &["verify", "ybe", "--fixture", "level4"]),
    ("fib_cert", &["--json", "localize", "fib-cert", "--d", "3", "--nmax", "6"]),
];

fn run(args: &[&str], tol_env: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_braidforge"));
    cmd.args(args).env_remove("BRAIDFORGE_TOL");
    if let Some(t) = tol_env {
        cmd.env("BRAIDFORGE_TOL", t);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

#[test]
fn golden_corpus() {
    let bless = std::env::var_os("BRAIDFORGE_BLESS").is_some();
    for (name, args) in CASES {
        let (code, stdout) = run(args, None);
        let shown: Vec<String> =
            args.iter().map(|a| if a.is_empty() || a.contains(' ') { format!("\"{a}\"") } else { a.to_string() }).collect();
        let got = format!("$ braidforge {}\nexit: {code}\n{stdout}", shown.join(" "));
        let path = golden_dir().join(format!("{name}.txt"));
        if bless {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(got, want, "{name}");
        assert_eq!(code, 0, "{name}");
    }
}

#[test]
fn outputs_are_reproducible() {
    for (_, args) in CASES {
        assert_eq!(run(args, None), run(args, None));
    }
}

#[test]
fn json_mode_emits_one_object() {
    for (name, args) in CASES.iter().filter(|(_, a)| a[0] == "--json") {
        let (_, out) = run(args, None);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(v.is_object());
        assert_eq!(out.trim().lines().count(), 1);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nope"], None).0, 2);
    assert_eq!(run(&["jones", "--word", "1 x", "--strands", "2"], None).0, 2);
    assert_eq!(run(&["jones", "--word", "3", "--strands", "2"], None).0, 2);
    assert_eq!(run(&["sim", "plat", "--word", "1", "--strands", "3", "--r", "5"], None).0, 2);
    assert_eq!(run(&["--tol", "-1", "jones", "--word", "1", "--strands", "2"], None).0, 2);
    // F^{222}_2 at level 5 has three channels
    assert_eq!(run(&["rep", "jones", "--level", "5", "--n", "4", "--charge", "0", "--leaf", "2"], None).0, 1);
}

#[test]
fn tolerance_from_environment() {
    let (code, out) = run(&["verify", "ybe", "--fixture", "level4"], Some("1e-30"));
    assert_eq!(code, 1);
    assert!(out.contains("pass: false"));
    let (code, _) = run(&["--tol", "1e-6", "verify", "ybe", "--fixture", "level4"], Some("1e-30"));
    assert_eq!(code, 0);
}

#[test]
fn matrices_round_trip() {
    let (_, out) = run(&["--json", "rep", "jones", "--level", "3", "--n", "3", "--charge", "2", "--leaf", "2"], None);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let model = braidforge::anyon::AnyonModel::new(3).unwrap();
    let rep = braidforge::jonesrep::braid_generator_matrices(&model, 2, 3, 2).unwrap();
    for (g, j) in rep.generators.iter().zip(v["generators"].as_array().unwrap()) {
        let back = braidforge::ring::cmat::matrix_from_json(j).unwrap();
        assert!(g.iter().zip(back.iter()).all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()));
    }
}

#[test]
fn word_from_stdin_and_file() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_braidforge"))
        .args(["jones", "--word", "-", "--strands", "2"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1 1 1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "jones: q + q^3 - q^4\n");
    let path = std::env::temp_dir().join(format!("braidforge-word-{}.txt", std::process::id()));
    std::fs::write(&path, "1 -2 1 -2").unwrap();
    let (code, out) = run(&["jones", "--word-file", path.to_str().unwrap(), "--strands", "3"], None);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(out, "jones: q^-2 - q^-1 + 1 - q + q^2\n");
}
