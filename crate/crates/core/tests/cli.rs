use std::process::Command;

fn superw(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superw")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn sl2_generator_and_bracket() {
    let (code, out) = superw(&["generators", "--algebra", "sl2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "ω_F = F + (1/4)H·H + (1/2)k·∂H    [weight 2, even]\n");
    let (code, out) = superw(&["bracket", "0", "0", "--method", "closed"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{ω_F λ ω_F} = k·∂ω_F + (2k·ω_F)λ + (-(1/2)k^3)λ^3\n");
}

#[test]
fn numeric_level() {
    let (code, out) = superw(&["generators", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ω_F = F + (1/4)H·H + ∂H"), "{}", out);
}

#[test]
fn verify_reports_pass_lines() {
    let (code, out) = superw(&["verify", "--algebra", "osp12", "--suite", "d-squared"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{}", out);
    assert!(out.contains("{d_χ d} = 0 (c = c)"));
}

#[test]
fn exit_codes() {
    assert_eq!(superw(&["generators", "--algebra", "missing.json"]).0, 2);
    assert_eq!(superw(&["verify", "--suite", "nonsense"]).0, 2);
    assert_eq!(superw(&["brst-check", "--algebra", "sl2"]).0, 2);
    assert_eq!(superw(&["catalog"]).0, 0);
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["susy-bracket-table", "--algebra", "sl21", "--format", "structured"];
    let (c1, a) = superw(&args);
    let (c2, b) = superw(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["result"].as_array().unwrap().len(), 4);
    let v: superw::susy_pva::ChiPoly = serde_json::from_value(doc["result"][3]["value"].clone()).unwrap();
    assert!(!v.is_zero());
}

#[test]
fn algebra_from_file() {
    let dir = std::env::temp_dir().join(format!("superw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("osp.json");
    std::fs::write(&path, superw::liesuper::catalog("osp12").unwrap().to_json()).unwrap();
    let (code, out) = superw(&["susy-generators", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.starts_with("τ_F = "), "{}", out);
    std::fs::write(&path, "{\"name\": \"x\", \"basis\": [").unwrap();
    let (code, out) = superw(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("line"), "{}", out);
}
