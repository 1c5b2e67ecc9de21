use qtangle::cli::{run, Outcome, EXIT_INVALID, EXIT_PARSE, EXIT_REFUSED};
use qtangle::diagram::SurgeryPresentation;

fn qt(args: &[&str]) -> Outcome {
    run(std::iter::once("qtangle").chain(args.iter().copied()))
}

fn data(path: &str) -> String {
    format!("{}/data/{}", env!("CARGO_MANIFEST_DIR"), path)
}

#[test]
fn documented_examples() {
    let out = qt(&["bracket", "braid 2 : s1 s1 s1"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "A^7 + A^3 + A^-1 - A^-9\n");
    assert_eq!(qt(&["jones", "braid 2 : s1 s1 s1"]).stdout, "t^(1/2)*(t^4 - t^2 - t - 1)\n");
    assert_eq!(qt(&["tqft-dim", "--l", "3", "--genus", "2"]).stdout, "4\n");
}

#[test]
fn pd_input_and_methods_agree() {
    let pd = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
    let auto = qt(&["bracket", pd]);
    assert_eq!(auto.code, 0, "{}", auto.stderr);
    assert_eq!(qt(&["bracket", "--method", "functor", pd]).stdout, auto.stdout);
    assert_eq!(qt(&["bracket", "--method", "statesum", pd]).stdout, auto.stdout);
}

#[test]
fn exit_codes() {
    let parse = qt(&["bracket", "braid 2 : s3"]);
    assert_eq!(parse.code, EXIT_PARSE);
    assert!(parse.stderr.starts_with("error: parse error"));
    assert_eq!(parse.stderr.lines().count(), 1);
    assert_eq!(qt(&["bracket", "X(1,1,2,3)"]).code, EXIT_INVALID);
    assert_eq!(qt(&["modular-data", "--l", "4", "--root-exp", "2"]).code, EXIT_INVALID);
    assert_eq!(qt(&["frobnicate"]).code, EXIT_INVALID);
    assert_eq!(qt(&["bracket", "/no/such/file"]).code, EXIT_INVALID);
    let refused = qt(&["rt", "--l", "7", "--framings", "0,0,0,0,0,0,0,0,0", "braid 9 :"]);
    assert_eq!(refused.code, EXIT_REFUSED);
    let budget = qt(&["--max-cost", "5", "rt", "--l", "4", "--framings", "0,0", "braid 2 : s1 s1"]);
    assert_eq!(budget.code, EXIT_REFUSED);
}

#[test]
fn rt_from_file_and_inline_agree() {
    let file = qt(&["rt", "--l", "5", &data("corpus/trefoil_m1.surgery")]);
    assert_eq!(file.code, 0, "{}", file.stderr);
    let inline = qt(&["rt", "--l", "5", "--framings", "-1", "braid 2 : s1 s1 s1"]);
    assert_eq!(file.stdout, inline.stdout);
    assert!(file.stdout.contains("signature: -1"));
}

#[test]
fn output_is_independent_of_thread_count() {
    let args = ["rt", "--l", "5", &data("corpus/chain_1_2_m1.surgery")];
    let one = qt(&[&["--threads", "1"][..], &args[..]].concat());
    let four = qt(&[&["--threads", "4"][..], &args[..]].concat());
    assert_eq!(one, four);
    assert_eq!(one.code, 0);
}

#[test]
fn json_outputs_parse() {
    let out = qt(&["--json", "modular-data", "--l", "4"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["l"], 4);
    assert_eq!(v["qdims"].as_array().unwrap().len(), 3);
    let out = qt(&["--json", "rt", "--l", "3", "--framings", "0", "braid 1 :"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!((v["numeric"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let out = qt(&["--json", "bracket", "braid 2 : s1 s1 s1"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["bracket"]["text"], "A^7 + A^3 + A^-1 - A^-9");
}

#[test]
fn surgery_json_round_trip() {
    let text = std::fs::read_to_string(data("corpus/hopf_2_m1.surgery")).unwrap();
    let p = SurgeryPresentation::parse(&text).unwrap();
    let dir = std::env::temp_dir().join(format!("qtangle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hopf.json");
    std::fs::write(&path, p.to_json().to_string()).unwrap();
    let from_json = qt(&["rt", "--l", "4", path.to_str().unwrap()]);
    let from_text = qt(&["rt", "--l", "4", &data("corpus/hopf_2_m1.surgery")]);
    assert_eq!(from_json, from_text);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_suites_pass() {
    for suite in ["relations", "kirby", "dual-alg"] {
        let out = qt(&["check", suite]);
        assert_eq!(out.code, 0, "{}: {}", suite, out.stdout);
        assert!(out.stdout.starts_with(suite));
    }
}

#[test]
fn colored_values() {
    let out = qt(&["colored", "braid 2 : s1 s1", "--labels", "2,3"]);
    assert_eq!(out.stdout, "s^10 + s^6 + s^2 + s^-2 + s^-6 + s^-10\n");
    let bad = qt(&["colored", "braid 2 : s1 s1", "--labels", "2"]);
    assert_eq!(bad.code, EXIT_INVALID);
}
