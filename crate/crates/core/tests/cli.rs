//! The command line through the library entry point and the built binary.

use std::path::PathBuf;
use std::process::Command;

use shiftlab::io::parse_spec;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = shiftlab::cli::run(
        std::iter::once("shiftlab").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("shiftlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn ind_entropy_json_golden() {
    let (code, out, _) = run(&["ind-entropy", &data("golden_mean.json"), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"value":0.3465735903,"cycle":["{0,1}","{0}"]}"#);
}

#[test]
fn entropy_json_fields_and_stability() {
    let args = ["entropy", &data("even_shift.json"), "--json", "--counting", "3"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["value"], 0.4812118251);
    assert_eq!(v["counts"][2]["count"], "7");
    for _ in 0..3 {
        assert_eq!(run(&args).1, first);
    }
}

#[test]
fn usage_errors_exit_two() {
    let gm = data("golden_mean.json");
    assert_eq!(run(&["boost", &gm, "--epsilon", "1.5"]).0, 2);
    assert_eq!(run(&["boost", &gm, "--epsilon", "0"]).0, 2);
    assert_eq!(run(&["boost", &gm]).0, 2);
    assert_eq!(run(&["higher-block", &gm]).0, 2);
    assert_eq!(run(&["nonsense"]).0, 2);
}

#[test]
fn domain_errors_name_the_variant() {
    let (code, _, err) = run(&["entropy", "/no/such/file.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("entropy") && err.contains("Io"), "{err}");

    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"alphabet":["0","1"],"forbidden":[["0"],["1"]]}"#).unwrap();
    let (code, _, err) = run(&["entropy", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("EmptyShift"), "{err}");

    let plan = scratch("overlapping.json");
    std::fs::write(&plan, r#"{"n":3,"k":2,"f":3,"M":"000","S":"","C":"01"}"#).unwrap();
    let out = scratch("never.json");
    let (code, _, err) = run(&[
        "boost",
        &data("golden_mean.json"),
        "--manual",
        plan.to_str().unwrap(),
        "--emit-recoder",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("OverlapUnverified"), "{err}");
}

#[test]
fn emitted_presentations_parse_back() {
    let gm = data("golden_mean.json");
    let hat = scratch("hat.json");
    assert_eq!(run(&["hat", &gm, "-o", hat.to_str().unwrap()]).0, 0);
    let spec = parse_spec(&std::fs::read_to_string(&hat).unwrap()).unwrap();
    assert_eq!(spec.alphabet().symbols(), ["{0}", "{1}", "{0,1}"]);

    let (code, out, _) = run(&["higher-block", &gm, "--N", "2"]);
    assert_eq!(code, 0);
    let hb = parse_spec(&out).unwrap();
    let h = shiftlab::entropy::topological_entropy(&hb, &shiftlab::Caps::default()).unwrap();
    assert!((h.value - 0.481_211_825_059_603_4).abs() < 1e-9);
}

#[test]
fn manual_boost_emits_recoder() {
    let rec = scratch("recoder.json");
    let (code, out, _) = run(&[
        "boost",
        &data("golden_mean.json"),
        "--manual",
        &data("golden_manual_plan.json"),
        "--K",
        "2",
        "--json",
        "--emit-recoder",
        rec.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["eta"], 21);
    assert_eq!(v["gamma_size"], "9");
    assert_eq!(v["overlap"]["passed"], true);
    assert_eq!(v["certificate"]["value"], 0.1046297418);
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    assert_eq!(r["gamma"].as_array().unwrap().len(), 9);
    assert_eq!(r["forward"]["memory"], 18);
    assert_eq!(r["inverse"]["anticipation"], 0);
}

#[test]
fn words_and_pair() {
    let (_, out, _) = run(&["words", &data("golden_mean.json"), "--n", "3"]);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["000", "001", "010", "100", "101"]);
    let (code, out, _) = run(&["asymptotic-pair", &data("golden_mean.json"), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["diff_index"], 0);
}

#[test]
fn verify_reports_a_table() {
    let (code, out, _) = run(&["verify", &data("golden_mean.json")]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
    let (_, out, _) = run(&["verify", "--fuzz", "5", "--seed", "11"]);
    assert!(out.starts_with("random SFTs: 5 (seed 11)"));
}

#[test]
fn binary_exit_codes_and_state_cap() {
    let bin = env!("CARGO_BIN_EXE_shiftlab");
    let ok = Command::new(bin)
        .args(["entropy", &data("full2.json")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("h = 0.6931471806"));

    let usage = Command::new(bin)
        .args(["boost", &data("golden_mean.json"), "--epsilon", "2"])
        .output()
        .unwrap();
    assert_eq!(usage.status.code(), Some(2));

    let capped = Command::new(bin)
        .args(["hat", &data("even_shift.json")])
        .env("SHIFTLAB_STATE_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("StateBlowup"));
}
