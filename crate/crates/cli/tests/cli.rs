use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodgeform")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn corrupted_orientation_exits_with_witness() {
    let out = run(&["verify", "--fixture", "corrupted_octahedron", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    let o = &v["outcomes"][0];
    assert_eq!(o["status"], "falsified");
    assert_eq!(o["witness"]["subset"], serde_json::json!([1, 3, 5]));
    assert_eq!(o["witness"]["ord"].as_i64().unwrap() % 2, 0);

    let text = run(&["verify", "--fixture", "corrupted_octahedron"]);
    assert_eq!(text.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&text.stdout).contains("witness"));
}

#[test]
fn intact_octahedron_verifies() {
    let out = run(&["verify", "--fixture", "octahedron"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn hilbert_over_binary_field() {
    let out = run(&["hilbert", "--fixture", "rp2_suspension", "--char", "2^10", "--seed", "7", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["h"], serde_json::json!([1, 4, 9, 6, 1]));
    assert_eq!(v["hbar"], serde_json::json!([1, 4, 8, 4, 1]));
}

#[test]
fn gram_on_the_suspension() {
    let out = run(&["gram", "--fixture", "sigma:3", "--q", "1", "--basis", "x4,x5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["matrix"].as_array().unwrap().len(), 2);
    assert!(v["determinant"].is_string());
    let profile = v["ord_profile"].as_object().unwrap();
    assert_eq!(profile.len(), 10);
    for facet in ["1,2,4", "1,3,4", "2,3,4", "1,2,5", "1,3,5", "2,3,5"] {
        assert_eq!(profile[facet].as_i64().unwrap().rem_euclid(2), 1, "{facet}");
    }
}

#[test]
fn degree_of_s0() {
    let out = run(&["degree", "--fixture", "s0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], "(a_1_1 - a_1_2)/((a_1_1)*(a_1_2))");
    let kx = run(&["degree", "--fixture", "s0", "--monomial", "x1", "--method", "kx", "--json"]);
    assert_eq!(json(&kx)["value"], "(-1)/((a_1_1))");
}

#[test]
fn punctured_system() {
    let out = run(&["hilbert", "--fixture", "sigma:2", "--lsop", "punctured:1,2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["hbar"], serde_json::json!([1, 2, 1]));
    let facet = run(&["hilbert", "--fixture", "sigma:2", "--lsop", "punctured:1,3"]);
    assert_eq!(facet.status.code(), Some(65));
}

#[test]
fn analyze_and_fixtures() {
    let out = run(&["analyze", "--fixture", "octahedron", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["h_vector"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(v["topology"]["is_homology_sphere"], true);
    let list = run(&["fixtures"]);
    assert!(String::from_utf8_lossy(&list.stdout).contains("corrupted_octahedron"));
}

#[test]
fn usage_errors_are_distinct() {
    for args in [&["frobnicate"][..], &["gram", "--fixture", "sigma:2"], &["verify"], &["--char", "4", "fixtures"]] {
        let code = run(args).status.code().unwrap();
        assert!(code >= 64, "{args:?} exited {code}");
    }
    assert_eq!(run(&["degree", "--fixture", "torus"]).status.code(), Some(65));
    assert_eq!(run(&["verify", "--suite", "desk", "--lsop", "punctured:1,2"]).status.code(), Some(64));
}
