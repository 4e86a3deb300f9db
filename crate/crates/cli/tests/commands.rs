use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_treecoeff"));
    cmd.args(args).env_remove("TREECOEFF_CACHE_DIR").env_remove("TREECOEFF_CAPS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn coefficient_examples() {
    assert_eq!(stdout(&run(&["coeff", "b", "--lambda", "1,1", "--mu", "2"])), "29/720\n");
    assert_eq!(stdout(&run(&["coeff", "a", "--lambda", "1,1,1", "--mu", "3"])), "20736\n");
    assert_eq!(stdout(&run(&["coeff", "b", "--lambda", "3", "--mu", "3"])), "1/1680\n");
    assert_eq!(stdout(&run(&["coeff", "b", "--lambda", "1,1"])), "29/720\n");
    assert_eq!(
        stdout(&run(&["coeff", "b", "--lambda", "2,1", "--mu", "3", "--format", "json"])),
        "{\"kind\":\"b\",\"lambda\":[2,1],\"mu\":[3],\"value\":\"-19/3360\"}\n"
    );
    assert_eq!(
        stdout(&run(&["coeff", "b", "--lambda", "2,1", "--mu", "3", "--format", "latex"])),
        "-\\frac{19}{3360}\n"
    );
}

#[test]
fn cup_examples() {
    assert_eq!(
        stdout(&run(&["cup", "--lambda", "1", "--mu", "1", "--format", "json"])),
        "{\"lambda\":[1],\"mu\":[1],\"terms\":{\"1,1\":\"2\",\"2\":\"29/5\"}}\n"
    );
    assert_eq!(
        stdout(&run(&["cup", "--lambda", "1", "--format", "json"])),
        "{\"lambda\":[1],\"mu\":[],\"terms\":{\"1\":\"1\"}}\n"
    );
    let text = stdout(&run(&["cup", "--lambda", "1", "--mu", "2"]));
    for line in text.lines() {
        let (nu, _) = line.split_once(": ").unwrap();
        let weight: u32 = nu.trim_matches(['(', ')']).split(',').map(|s| s.parse::<u32>().unwrap()).sum();
        assert_eq!(weight, 3, "{line}");
    }
}

#[test]
fn witten_row() {
    assert_eq!(
        stdout(&run(&["witten", "--lambda", "1,1,1"])),
        "(3): 20736\n(2,1): 4176\n(1,1,1): 288\n"
    );
}

#[test]
fn treepoly_examples() {
    assert_eq!(stdout(&run(&["treepoly", "0", "--variant", "full"])), "x0\n");
    assert_eq!(
        stdout(&run(&["treepoly", "2", "--variant", "reduced", "--format", "text", "--x0-zero"])),
        "x1^2*x2*x4 + 2*x1^2*x3*x4 + x1*x2^2*x4 + 5*x1*x2*x3*x4\n"
    );
    assert_eq!(stdout(&run(&["treepoly", "1"])), "x0*x2 + x1*x2\n");
    let json = stdout(&run(&["treepoly", "1", "--variant", "l:1", "--format", "json"]));
    let expected = serde_json::to_string(&treecoeff::treepoly::l_poly(1, 1).unwrap()).unwrap();
    assert_eq!(json.trim_end(), expected);
    let fam = stdout(&run(&["treepoly", "1", "--variant", "pfamily"]));
    assert_eq!(fam.lines().count(), 2);
    assert!(fam.starts_with("P^1 = "));
}

#[test]
fn exit_codes() {
    let mismatch = run(&["coeff", "b", "--lambda", "1", "--mu", "2"]);
    assert_eq!(mismatch.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&mismatch.stderr).contains("weight mismatch"));

    let capped = run(&["oracle", "treepoly", "6"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("--cap-trees"));

    let capped = run(&["treepoly", "7"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("--cap-poly"));

    assert_eq!(run(&["treepoly", "1", "--variant", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["table", "0"]).status.code(), Some(2));
    assert_eq!(run(&["--cap-trees", "1", "treepoly", "1"]).status.code(), Some(2));
}

#[test]
fn cap_flags_beat_environment() {
    let env = [("TREECOEFF_CAPS", "letters=5")];
    assert_eq!(run_env(&["oracle", "shuffle-sum", "3,1,3"], &env).status.code(), Some(3));
    let out = run_env(&["--cap-letters", "7", "oracle", "shuffle-sum", "3,1,3"], &env);
    assert!(stdout(&out).ends_with("equal\n"));
}

#[test]
fn oracle_examples() {
    assert_eq!(
        stdout(&run(&["oracle", "counting", "4", "3"])),
        "counting n=4 s=3\nbrute:  -16\nclosed: -16\nequal\n"
    );
    assert_eq!(
        stdout(&run(&["oracle", "xe", "X0", "2", "2"])),
        "xe X0 n=2 m=2\nbrute:  4\nclosed: 4\nequal\n"
    );
    assert!(stdout(&run(&["oracle", "treepoly", "2"])).ends_with("\nequal\n"));
    let json = stdout(&run(&["oracle", "shuffle-sum", "1,1,1", "--format", "json"]));
    assert_eq!(json, "{\"what\":\"shuffle-sum 1,1,1\",\"brute\":\"2\",\"closed\":\"2\",\"equal\":true}\n");
}

#[test]
fn table_files_are_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t3.json");
    let arg = path.to_str().unwrap();
    assert_eq!(stdout(&run(&["table", "3", "--out", arg])), "");
    let first = fs::read(&path).unwrap();
    stdout(&run(&["table", "3", "--out", arg]));
    assert_eq!(fs::read(&path).unwrap(), first);

    let doc: treecoeff::coeff::TableDocument = serde_json::from_slice(&first).unwrap();
    doc.validate().unwrap();
    let i = doc.order.iter().position(|p| p.parts() == [1, 1, 1]).unwrap();
    let j = doc.order.iter().position(|p| p.parts() == [3]).unwrap();
    assert_eq!(doc.b[i][j].to_string(), "263/6720");

    let one = stdout(&run(&["table", "1", "--format", "text"]));
    assert_eq!(one, "weight 1\norder (1)\nb:\n  (1): 1/12\na:\n  (1): 12\n");
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut files: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

#[test]
fn cache_serves_and_verify_catches_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache-dir", cache, "coeff", "b", "--lambda", "1,1,1", "--mu", "3"];
    assert_eq!(stdout(&run(&args)), "263/6720\n");
    let files = cache_files(dir.path());
    assert_eq!(files.len(), 1);
    assert_eq!(stdout(&run(&args)), "263/6720\n");

    let ok = run(&["--cache-dir", cache, "verify"]);
    assert!(stdout(&ok).contains("PASS cache entry"));

    let text = fs::read_to_string(&files[0]).unwrap().replace("263/6720", "263/6721");
    fs::write(&files[0], text).unwrap();
    let bad = run(&["--cache-dir", cache, "verify"]);
    assert_eq!(bad.status.code(), Some(4));
    let report = String::from_utf8(bad.stdout).unwrap();
    assert!(report.contains("FAIL cache entry"), "{report}");
    assert!(report.contains("\"263/6721\" != \"263/6720\""), "{report}");
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache-dir", cache, "table", "2"];
    let fresh = stdout(&run(&args));
    let files = cache_files(dir.path());
    fs::write(&files[0], b"{\"schema\":1,\"op\":\"table\",\"params\":\"n=2\",\"value\":[]}").unwrap();
    assert_eq!(stdout(&run(&args)), fresh);
    // The rewritten entry is valid again.
    assert!(stdout(&run(&["--cache-dir", cache, "verify"])).contains("0 failed"));
}

#[test]
fn verify_quick_passes() {
    let text = stdout(&run(&["verify"]));
    assert!(text.ends_with(" checks, 0 failed\n"), "{text}");
    assert!(!text.contains("FAIL"));
    let json = stdout(&run(&["verify", "--format", "json"]));
    let checks: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(checks.as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}
