use std::path::Path;
use std::process::{Command, Output};

fn specbasis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specbasis")).args(args).env_remove("SPECBASIS_TOL").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn fourier_basis_closes_and_canonical_does_not() {
    let dir = tempfile::tempdir().unwrap();
    let f4 = p(dir.path(), "f4.json");
    assert_eq!(code(&specbasis(&["basis", "gen", "--kind", "fourier", "--n", "4", "--out", &f4])), 0);
    assert!(Path::new(&f4).exists());

    let out = specbasis(&["closure", "check", "--basis", &f4, "--k", "4"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["verdict"], true);
    assert_eq!(report["witnesses"].as_array().unwrap().len(), 256);

    let c2 = p(dir.path(), "canonical2.json");
    assert_eq!(code(&specbasis(&["basis", "gen", "--kind", "canonical", "--n", "2", "--out", &c2])), 0);
    let out = specbasis(&["closure", "check", "--basis", &c2, "--k", "1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], false);
}

#[test]
fn basis_verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let b = p(dir.path(), "h.json");
    assert_eq!(code(&specbasis(&["basis", "gen", "--kind", "hadamard", "--m", "2", "--out", &b])), 0);
    let out = specbasis(&["basis", "verify", "--basis", &b]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["summary"], true);
    let text = specbasis(&["basis", "verify", "--basis", &b, "--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("summary: PASS"));
}

#[test]
fn transform_round_trip_and_multiply() {
    let dir = tempfile::tempdir().unwrap();
    let a = p(dir.path(), "a.csv");
    let b = p(dir.path(), "b.json");
    std::fs::write(&a, "0,1\n1,0\n").unwrap();
    std::fs::write(&b, r#"{"n":2,"entries":[[[1,0],[0,0]],[[0,0],[-1,0]]]}"#).unwrap();

    let coeffs = p(dir.path(), "c.csv");
    assert_eq!(code(&specbasis(&["transform", "analyze", "--matrix", &a, "--out", &coeffs])), 0);
    let table = std::fs::read_to_string(&coeffs).unwrap();
    assert!(table.starts_with("k\\l,0,1"), "{table}");
    let back = p(dir.path(), "back.csv");
    assert_eq!(code(&specbasis(&["transform", "synthesize", "--coeffs", &coeffs, "--out", &back])), 0);
    assert_eq!(std::fs::read_to_string(&back).unwrap(), "0+0j,1+0j\n1+0j,0+0j\n");

    let out = specbasis(&["transform", "multiply", "--a", &a, "--b", &b, "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0+0j,-1+0j\n1+0j,0+0j\n");
}

#[test]
fn hadamard_gen_verify_extract() {
    let dir = tempfile::tempdir().unwrap();
    let h = p(dir.path(), "h8.txt");
    assert_eq!(code(&specbasis(&["hadamard", "gen", "--m", "3", "--out", &h])), 0);
    assert_eq!(std::fs::read_to_string(&h).unwrap().lines().count(), 8);
    assert_eq!(code(&specbasis(&["hadamard", "verify", "--input", &h])), 0);

    let bad = p(dir.path(), "bad.txt");
    std::fs::write(&bad, "++\n++\n").unwrap();
    assert_eq!(code(&specbasis(&["hadamard", "verify", "--input", &bad])), 1);

    let basis = p(dir.path(), "basis.json");
    assert_eq!(code(&specbasis(&["basis", "gen", "--kind", "hadamard", "--hadamard", &h, "--out", &basis])), 0);
    let out = specbasis(&["hadamard", "extract", "--basis", &basis]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["hadamard"]["n"], 8);

    let f = p(dir.path(), "f3.json");
    specbasis(&["basis", "gen", "--kind", "fourier", "--n", "3", "--out", &f]);
    assert_eq!(code(&specbasis(&["hadamard", "extract", "--basis", &f])), 1);
}

#[test]
fn group_and_representations() {
    let out = specbasis(&["group", "enumerate", "--kind", "fourier", "--n", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["order"], 27);
    let capped = specbasis(&["group", "enumerate", "--kind", "fourier", "--n", "3", "--cap", "5"]);
    assert_eq!(code(&capped), 1);

    let out = specbasis(&["rep", "t", "--n", "3", "--k", "1", "--l", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["size"], 9);
    assert_eq!(v["triplets"].as_array().unwrap().len(), 9);

    assert_eq!(code(&specbasis(&["rep", "check-hom", "--map", "t-group", "--n", "3"])), 0);
    // the linear R is not multiplicative on every basis pair, so the verdict fails
    let out = specbasis(&["rep", "check-hom", "--map", "r", "--n", "2", "--m", "1"]);
    assert_eq!(code(&out), 1);
    let checks = json(&out)["checks"].as_array().unwrap().clone();
    let basis_pairs = checks.iter().find(|c| c["name"] == "R multiplicative (basis pairs)").unwrap();
    assert_eq!(basis_pairs["detail"], "4 of 16 ordered pairs fail");
}

#[test]
fn sampled_checks_are_deterministic() {
    let run = || specbasis(&["rep", "check-hom", "--map", "t-linear", "--n", "2", "--seed", "7"]).stdout;
    assert_eq!(run(), run());
    let out = specbasis(&["cyclo", "demo", "--n", "3", "--m", "3", "--pairs", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["summary"], true);
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = p(dir.path(), "bench.csv");
    assert_eq!(code(&specbasis(&["bench", "--n", "2,4", "--reps", "3", "--out", &csv])), 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,method,rep,wall_time_s,residual"));
    assert_eq!(lines.count(), 18);
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&specbasis(&["bench", "--reps", "2"])), 2);
    assert_eq!(code(&specbasis(&["closure", "check", "--basis", "x.json", "--k", "0"])), 2);
    assert_eq!(code(&specbasis(&["basis", "gen", "--kind", "fourier", "--n", "2", "--bogus", "1", "--out", "x"])), 2);
    assert_eq!(code(&specbasis(&["basis", "gen", "--kind", "nope", "--n", "2", "--out", "x"])), 2);
    assert_eq!(code(&specbasis(&["frobnicate"])), 2);
    let missing = p(dir.path(), "missing.json");
    assert_eq!(code(&specbasis(&["basis", "verify", "--basis", &missing])), 3);
    let garbage = p(dir.path(), "garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(code(&specbasis(&["closure", "check", "--basis", &garbage, "--k", "2"])), 3);
    let rect = p(dir.path(), "rect.csv");
    std::fs::write(&rect, "1,2\n3,4\n5,6\n").unwrap();
    assert_eq!(code(&specbasis(&["transform", "analyze", "--matrix", &rect])), 3);
}

#[test]
fn tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(dir.path(), "f.json");
    specbasis(&["basis", "gen", "--kind", "fourier", "--n", "3", "--out", &f]);
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_specbasis"))
            .args(["basis", "verify", "--basis", &f])
            .env("SPECBASIS_TOL", tol)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("1e-10")), 0);
    assert_eq!(code(&run("abc")), 2);
    assert_eq!(code(&run("-1")), 2);
    assert_eq!(code(&specbasis(&["basis", "verify", "--basis", &f, "--tol", "0"])), 2);
}
