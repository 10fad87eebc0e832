//! End-to-end CLI flows through real files: code files, stream files with
//! path references, search report output and CSV export.

use std::path::PathBuf;

fn run(args: &[&str]) -> (i32, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut buf = Vec::new();
    let code = convmdp::cli::run(&args, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

fn temp_path(name: &str) -> PathBuf {
    let mut dir = std::env::temp_dir();
    dir.push(format!("convmdp-test-{}-{name}", std::process::id()));
    dir
}

#[test]
fn check_and_distance_from_code_file() {
    let code_path = temp_path("f13.json");
    std::fs::write(
        &code_path,
        r#"{"field":"13","n":2,"k":1,"delta":2,"H":[[1,1],[1,12],[2,2]]}"#,
    )
    .unwrap();
    let code_arg = code_path.to_str().unwrap();

    let (status, out) = run(&["check", "--code", code_arg, "--property", "mdp", "--assert"]);
    assert_eq!(status, 0);
    assert!(out.contains("\"holds\":true"));

    let (status, out) = run(&["check", "--code", code_arg, "--property", "reverse-mdp", "--pretty"]);
    assert_eq!(status, 0);
    assert!(out.contains("holds"));

    let (status, out) = run(&["distance", "--code", code_arg, "--j", "4"]);
    assert_eq!(status, 0);
    assert!(out.contains("\"column_distance\":6"));

    std::fs::remove_file(&code_path).ok();
}

#[test]
fn decode_with_stream_file_referencing_code_path() {
    use convmdp::decoder::{encode_stream, ReceivedStream};
    use convmdp::pattern::parse_pattern;
    use convmdp::{ConvCode, Field};

    let code_path = temp_path("f7-code.json");
    let stream_path = temp_path("f7-stream.json");
    let code_json = r#"{"field":"7","n":2,"k":1,"delta":2,"H":[[1,1],[1,2],[5,5]]}"#;
    std::fs::write(&code_path, code_json).unwrap();

    let f = Field::shared(7, 1, None).unwrap();
    let code = ConvCode::from_json(code_json).unwrap();
    let message: Vec<Vec<convmdp::Element>> =
        [1u64, 4, 2].iter().map(|&v| vec![f.element(v).unwrap()]).collect();
    let steps = encode_stream(&code, &message).unwrap();
    let pattern = parse_pattern("x.|..|.x|..|..").unwrap();
    let stream = ReceivedStream::from_codeword(code, &steps, &pattern, true).unwrap();

    // swap the inline code for a path reference
    let mut value: serde_json::Value = serde_json::from_str(&stream.to_json()).unwrap();
    value["code"] = serde_json::Value::String(code_path.to_str().unwrap().to_string());
    std::fs::write(&stream_path, value.to_string()).unwrap();

    let (status, out) = run(&[
        "decode",
        "--stream",
        stream_path.to_str().unwrap(),
        "--algo",
        "low-delay",
        "--delay",
        "2",
    ]);
    assert_eq!(status, 0);
    let report: convmdp::decoder::DecodeReport = serde_json::from_str(&out).unwrap();
    assert!(report.is_fully_recovered());

    std::fs::remove_file(&code_path).ok();
    std::fs::remove_file(&stream_path).ok();
}

#[test]
fn search_writes_report_and_csv() {
    let json_path = temp_path("search.json");
    let csv_path = temp_path("search.csv");

    let (status, _) = run(&[
        "search", "--field", "5", "--delta", "2", "--j", "1",
        "--out", json_path.to_str().unwrap(),
    ]);
    assert_eq!(status, 0);
    let report: convmdp::search::SearchReport =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(report.count, 24);
    assert_eq!(report.candidates, 256);

    let (status, _) = run(&[
        "search", "--field", "5", "--delta", "2", "--j", "1",
        "--out", csv_path.to_str().unwrap(), "--csv",
    ]);
    assert_eq!(status, 0);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 24);
    assert!(csv.lines().all(|l| l.split(',').count() == 4));

    std::fs::remove_file(&json_path).ok();
    std::fs::remove_file(&csv_path).ok();
}

#[test]
fn random_search_with_alpha_rendering() {
    let (status, out) = run(&[
        "search", "--field", "2^4", "--delta", "2", "--j", "4",
        "--mode", "random", "--trials", "2000", "--seed", "9",
        "--pretty", "--alpha",
    ]);
    assert_eq!(status, 0);
    assert!(out.contains("candidates"));
}

#[test]
fn gen_pattern_roundtrips_through_decode_spec() {
    let (status, out) = run(&["gen-pattern", "--spec", "iid:0.5", "--length", "20", "--seed", "4"]);
    assert_eq!(status, 0);
    let pattern = convmdp::pattern::parse_pattern(out.trim()).unwrap();
    assert_eq!(pattern.len(), 20);
}
