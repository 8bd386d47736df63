use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_levelt"))
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("levelt-cli-{}-{tag}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.join(name);
        fs::write(&p, body).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(path: &PathBuf) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn coeffs(entry: &serde_json::Value) -> Vec<String> {
    entry["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn construct_then_analyze() {
    let s = Scratch::new("construct");
    let spectra = s.file("spectra.json", r#"[{"values": [1, -1]}, {"values": ["e(1/4)", "e(3/4)"]}]"#);
    let tuple = s.path("tuple.json");
    let out = run(bin().arg("construct").arg(&spectra).arg("-o").arg(&tuple));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(String::from_utf8_lossy(&out.stdout).contains("n=2 p=2"));

    // companions of x^2 - 1 and x^2 + 1
    let t = json(&tuple);
    let first = &t["members"][0]["entries"];
    assert_eq!(coeffs(&first[0][1]), vec!["1"]);
    assert_eq!(coeffs(&first[1][1]), vec!["0"]);
    let second = &t["members"][1]["entries"];
    assert_eq!(coeffs(&second[0][1]), vec!["-1"]);

    let report = s.path("report.json");
    let out = run(bin().arg("analyze").arg(&tuple).arg("--report").arg(&report));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = json(&report);
    assert_eq!(r["irreducible"], true);
    assert_eq!(r["burnside_dim"], 4);
    assert_eq!(r["spectra_intersection"], serde_json::json!([]));
    assert!(r["rigidity_index"].is_null());
    assert!(r["notes"]["rigidity_index"].is_string());
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "n",
            "p",
            "pseudo_reflection_pairs",
            "spectra",
            "spectra_intersection",
            "irreducible",
            "burnside_dim",
            "invariant_witness",
            "rigidity_index",
            "shared_frame",
            "notes"
        ]
    );
}

#[test]
fn reducible_pair_witness() {
    let s = Scratch::new("witness");
    let tuple = s.file(
        "t.json",
        r#"{"members": [{"entries": [[1, 0], [0, 2]]}, {"entries": [[1, 1], [0, 3]]}]}"#,
    );
    let report = s.path("r.json");
    let out = run(bin().arg("analyze").arg(&tuple).arg("-o").arg(&report));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = json(&report);
    assert_eq!(r["irreducible"], false);
    let w = &r["invariant_witness"];
    assert_eq!(w["dim"], 1);
    assert_eq!(coeffs(&w["basis"][0][0]), vec!["1"]);
    assert_eq!(coeffs(&w["basis"][0][1]), vec!["0"]);
}

#[test]
fn reports_are_byte_identical() {
    let s = Scratch::new("determinism");
    let tuple = s.path("t.json");
    assert_eq!(
        code(&run(bin().args(["hypergeom", "--num", "1/3,2/3", "--den", "0,1/2", "-o"]).arg(&tuple))),
        0
    );
    let (a, b) = (s.path("a.json"), s.path("b.json"));
    run(bin().arg("analyze").arg(&tuple).arg("-o").arg(&a));
    run(bin().arg("analyze").arg(&tuple).arg("-o").arg(&b));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn written_tuples_read_back_exactly() {
    let s = Scratch::new("roundtrip");
    let spectra = s.file("s.json", r#"[["e(1/3)", 2], ["e(1/4)", 3], [-1, "1/2"]]"#);
    let tuple = s.path("t.json");
    let out = run(bin().arg("construct").arg(&spectra).arg("-o").arg(&tuple));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let normalized = s.path("n.json");
    let out = run(bin().arg("normalize").arg("--frame").arg(&tuple).arg("-o").arg(&normalized));
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    for file in [&tuple, &normalized] {
        let again = s.path("again.json");
        // the CLI reads it, and parsing then writing gives the same bytes
        let out = run(bin().arg("conjugate").arg(file).arg(file).arg("-o").arg(&again));
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let text = fs::read_to_string(file).unwrap();
        let parsed = levelt::wire::tuple_from_json::<levelt::Scalar>(&text).unwrap();
        assert_eq!(levelt::wire::tuple_to_json(&parsed), text);
    }
}

#[test]
fn artifact_on_stdout_without_output_flag() {
    let out = run(bin().args(["hypergeom", "--num", "1/2,1/2", "--den", "1,1"]));
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.trim_start().starts_with('{'));
    assert!(stderr(&out).contains("rigidity index: 2"));
}

#[test]
fn exit_codes() {
    let s = Scratch::new("codes");
    let common = s.file("common.json", "[[1, 2], [1, 3]]");
    let out = run(bin().arg("construct").arg(&common));
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("common eigenvalue"));

    let zero = s.file("zero.json", "[[0, 2], [1, 3]]");
    assert_eq!(code(&run(bin().arg("construct").arg(&zero))), 3);

    let empty = s.file("empty.json", "");
    assert_eq!(code(&run(bin().arg("construct").arg(&empty))), 2);

    let garbage = s.file("bad.json", "[{\"values\": [1, \"x/\"]}]");
    let out = run(bin().arg("construct").arg(&garbage));
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("[0].values[1]"), "{}", stderr(&out));

    let ragged = s.file("ragged.json", r#"{"members": [{"entries": [[1, 0], [0]]}, {"entries": [[1]]}]}"#);
    assert_eq!(code(&run(bin().arg("analyze").arg(&ragged))), 2);

    let singular = s.file(
        "singular.json",
        r#"{"members": [{"entries": [[1, 2], [2, 4]]}, {"entries": [[1, 0], [0, 1]]}]}"#,
    );
    assert_eq!(code(&run(bin().arg("analyze").arg(&singular))), 4);

    let out = run(bin().args(["hypergeom", "--num", "1/3,2/3", "--den", "1/3,1"]));
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("a_1 - b_1"), "{}", stderr(&out));

    assert_eq!(code(&run(bin().args(["hypergeom", "--num", "1/2", "--den", "1"]))), 2);
    assert_eq!(code(&run(bin().args(["hypergeom", "--num", "1/2,1/3", "--den", "1"]))), 2);
    assert_eq!(code(&run(bin().arg("analyze").arg(s.path("missing.json")))), 2);
    assert_eq!(code(&run(bin().arg("frobnicate"))), 2);
}

#[test]
fn conjugate_reports_missing_conjugator() {
    let s = Scratch::new("conjugate");
    let a = s.file("a.json", r#"{"members": [{"entries": [[1, 0], [0, 2]]}, {"entries": [[1, 0], [0, 3]]}]}"#);
    let b = s.file("b.json", r#"{"members": [{"entries": [[1, 0], [0, 2]]}, {"entries": [[1, 0], [0, 5]]}]}"#);
    let u = s.path("u.json");
    let out = run(bin().arg("conjugate").arg(&a).arg(&b).arg("-o").arg(&u));
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("conjugate: no"));
    assert_eq!(fs::read_to_string(&u).unwrap().trim(), "null");
}
