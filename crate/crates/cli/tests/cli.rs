use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn mtg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtg")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = mtg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code_of(args: &[&str]) -> i32 {
    mtg(args).status.code().expect("exited")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const KEY_CONFIG: &str = "field = f2_32_1024\nbase = 0\ns0 = 1\nn = 24\nt = 4\ntwist = 1 1\n";

#[test]
fn builds_and_decodes_the_binary_example() {
    let dir = TempDir::new().unwrap();
    let params = fixture("example3.params");
    let report = ok(&["code", "build", "--params", p(&params), "--out", p(dir.path())]);
    assert!(report.contains("n = 20"), "{report}");
    for f in ["H.txt", "H_expanded.txt", "G.txt", "report.txt"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }

    let err = dir.path().join("e.txt");
    let tr = dir.path().join("tr.txt");
    let received = fixture("example3.received");
    let cw = ok(&["code", "decode", "--params", p(&params), "--in", p(&received), "--out", p(&err), "--transcript", p(&tr)]);
    assert_eq!(cw.trim(), "1 0 0 1 0 0 0 1 0 1 1 0 1 0 0 0 1 1 0 0");
    assert!(fs::read_to_string(&err).unwrap().starts_with("1 0 0"));
    assert!(fs::read_to_string(&tr).unwrap().lines().any(|l| l == "J = {1}"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let params = fixture("example3.params");
    // input errors
    assert_eq!(code_of(&["code", "distance", "--params", "/no/such/file"]), 2);
    let bad = dir.path().join("bad.params");
    fs::write(&bad, "not a parameter file\n").unwrap();
    assert_eq!(code_of(&["code", "distance", "--params", p(&bad)]), 2);
    assert_eq!(code_of(&["code", "frobnicate"]), 2);
    // resource bound
    assert_eq!(code_of(&["code", "distance", "--params", p(&params), "--bound", "2"]), 4);
    assert!(ok(&["code", "distance", "--params", p(&params)]).trim().parse::<usize>().unwrap() >= 4);

    // an undecodable ciphertext
    let cfg = dir.path().join("key.cfg");
    fs::write(&cfg, KEY_CONFIG).unwrap();
    let prefix = dir.path().join("key");
    ok(&["keygen", "--params", p(&cfg), "--seed", "5", "--out", p(&prefix)]);
    let k: usize = fs::read_to_string(prefix.with_extension("pub"))
        .unwrap()
        .lines()
        .find_map(|l| l.strip_prefix("k = "))
        .unwrap()
        .parse()
        .unwrap();
    let ct = dir.path().join("ct");
    fs::write(&ct, vec!["1"; 24 - k].join(" ")).unwrap();
    let out = dir.path().join("e");
    assert_eq!(code_of(&["decrypt", "--key", p(&prefix.with_extension("sec")), "--in", p(&ct), "--out", p(&out)]), 3);
    assert!(!out.exists());
}

#[test]
fn keygen_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("key.cfg");
    fs::write(&cfg, KEY_CONFIG).unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    ok(&["keygen", "--params", p(&cfg), "--seed", "11", "--out", p(&a)]);
    ok(&["keygen", "--params", p(&cfg), "--seed", "11", "--out", p(&b)]);
    for ext in ["pub", "sec"] {
        assert_eq!(fs::read(a.with_extension(ext)).unwrap(), fs::read(b.with_extension(ext)).unwrap(), "{ext}");
    }

    let e = dir.path().join("e");
    let ct = dir.path().join("ct");
    let back = dir.path().join("back");
    ok(&["encrypt", "--key", p(&a.with_extension("pub")), "--seed", "3", "--error-out", p(&e), "--out", p(&ct)]);
    ok(&["decrypt", "--key", p(&a.with_extension("sec")), "--in", p(&ct), "--out", p(&back)]);
    assert_eq!(fs::read(&e).unwrap(), fs::read(&back).unwrap());

    // re-encrypting the recovered error reproduces the ciphertext
    let ct2 = dir.path().join("ct2");
    ok(&["encrypt", "--key", p(&a.with_extension("pub")), "--in", p(&back), "--out", p(&ct2)]);
    assert_eq!(fs::read(&ct).unwrap(), fs::read(&ct2).unwrap());
    assert_eq!(code_of(&["encrypt", "--key", p(&a.with_extension("pub")), "--out", p(&ct2)]), 2);
}

#[test]
fn quasi_cyclic_build_report() {
    let dir = TempDir::new().unwrap();
    let report = ok(&["qc", "build", "--params", p(&fixture("qc_f9.qc")), "--out", p(dir.path())]);
    for line in ["n = 8", "k = 3", "t = 4", "d = 4", "quasi-cyclic order = 4", "involution in PAut = true"] {
        assert!(report.lines().any(|l| l == line), "missing {line:?} in\n{report}");
    }
    let params = dir.path().join("code.params");
    assert_eq!(ok(&["code", "distance", "--params", p(&params)]).trim(), "4");
    assert!(fs::read_to_string(dir.path().join("qc.key")).unwrap().starts_with("mtg-qc-key v1"));
}

#[test]
fn experiment_csv_outputs() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("fp.cfg");
    fs::write(&cfg, "field = f2_32_1024\nbase = 0\ns0 = 1\nn = 16\nt = 2\ntwist = 1 1\neps = 14\nj = 0, 1\n").unwrap();
    let csv = ok(&["attack", "fp-rate", "--params", p(&cfg), "--seed", "1", "--trials", "20"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "q,m,t,j,trials,accepted,predicted,empirical,sigma,m_t,union_bound,skipped");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("2,10,2,0,20,20,"));
    assert_eq!(csv, ok(&["attack", "fp-rate", "--params", p(&cfg), "--seed", "1", "--trials", "20"]));

    let bench = dir.path().join("bench.cfg");
    fs::write(&bench, "field = f2_32_1024\nbase = 0\ns0 = 1\nn = 16, 24\nt = 3\ntwist = 1 1\n").unwrap();
    let out = dir.path().join("bench.csv");
    ok(&["bench", "decode", "--params", p(&bench), "--seed", "2", "--trials", "5", "--out", p(&out)]);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(2).unwrap().starts_with("24,3,5,"));

    let recovered = ok(&["attack", "recover", "--params", p(&fixture("example3.params")), "--seed", "1"]);
    assert_eq!(recovered.lines().nth(1).map(|l| l.ends_with(",true")), Some(true), "{recovered}");
}
