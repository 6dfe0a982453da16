use powerkit_cli::{run_with_env, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(args: &[&str], max_n: Option<&str>) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("powerkit").chain(args.iter().copied());
    let code = run_with_env(argv, max_n.map(String::from), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Outcome {
    run_env(args, None)
}

fn schema_validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../docs/output.schema.json"
    ))
    .unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, stdout: &str) -> Value {
    let value: Value = serde_json::from_str(stdout).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&value)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{errors:?}\n{stdout}");
    value
}

#[test]
fn nucleolus_of_the_intro_game() {
    let o = run(&["compute", "--game", "[5;3,2,1,1]", "--index", "nucleolus"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("exact    1, 0, 0, 0"), "{}", o.stdout);
}

#[test]
fn decimal_game_prints_the_same_as_integer_game() {
    for format in ["table", "json"] {
        let a = run(&[
            "compute",
            "--game",
            "[0.67;0.50,0.26,0.15,0.09]",
            "--format",
            format,
        ]);
        let b = run(&["compute", "--game", "[5;3,2,1,1]", "--format", format]);
        assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let args = [
        "spectrum", "--index", "dp", "--n", "4", "--top", "4", "--format", "json",
    ];
    let first = run(&args);
    assert_eq!(first.code, EXIT_OK, "{}", first.stderr);
    assert_eq!(first.stdout, run(&args).stdout);
    let threaded = run(&[
        "spectrum", "--index", "dp", "--n", "4", "--top", "4", "--format", "json", "--jobs", "3",
    ]);
    assert_eq!(first.stdout, threaded.stdout);
}

#[test]
fn two_player_bounds_are_all_attained() {
    let o = run(&["bounds", "--n", "2", "--format", "json"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r["attained"] == Value::Bool(true)));
}

#[test]
fn game_files_and_simple_game_json() {
    let dir = std::env::temp_dir().join(format!("powerkit-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bracket = dir.join("game.txt");
    std::fs::write(&bracket, "[5;3,2,1,1]\n").unwrap();
    let json = dir.join("game.json");
    std::fs::write(&json, r#"{"n": 4, "minimal_winning": [[1,2],[1,3,4]]}"#).unwrap();
    let a = run(&[
        "compute",
        "--file",
        bracket.to_str().unwrap(),
        "--index",
        "ssi,pgi",
    ]);
    let b = run(&[
        "compute",
        "--file",
        json.to_str().unwrap(),
        "--index",
        "ssi,pgi",
    ]);
    assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn printed_game_reparses_to_the_same_game() {
    let o = run(&[
        "compute",
        "--game",
        "[7; 4, 3, 2, 1, 1]",
        "--index",
        "ssi",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let back =
        serde_json::json!({ "n": v["game"]["n"], "minimal_winning": v["game"]["minimal_winning"] })
            .to_string();
    let again = run(&[
        "compute", "--game", &back, "--index", "ssi", "--format", "json",
    ]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn input_errors_exit_with_one() {
    let o = run(&["compute", "--game", "[5;3,2,x]"]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("column 8"), "{}", o.stderr);

    let o = run(&["compute", "--game", "[5;3,2,1,1]", "--index", "power"]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("valid names: ssi"), "{}", o.stderr);

    let o = run(&["bounds", "--n", "6"]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("n ≤ 5"), "{}", o.stderr);

    let o = run(&["compute"]);
    assert_eq!(o.code, EXIT_INPUT);

    let o = run(&["inverse", "--sigma", "1/2,1/4", "--index", "pgi"]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("summing to 1"), "{}", o.stderr);
}

#[test]
fn non_weighted_game_reports_partial_results() {
    let game = r#"{"n": 4, "minimal_winning": [[1,2],[3,4]]}"#;
    let o = run(&["compute", "--game", game, "--index", "ssi,msri"]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stdout.contains("1/4, 1/4, 1/4, 1/4"), "{}", o.stdout);
    assert!(
        o.stderr.contains("msri: the game is not weighted"),
        "{}",
        o.stderr
    );
}

#[test]
fn cap_override_warns_and_applies() {
    let o = run_env(
        &["spectrum", "--index", "nucleolus", "--n", "5", "--top", "1"],
        Some("3"),
    );
    assert_eq!(o.code, EXIT_INPUT);
    assert!(
        o.stderr.contains("warning: POWERKIT_MAX_N=3"),
        "{}",
        o.stderr
    );
    let o = run_env(
        &["spectrum", "--index", "ssi", "--n", "2", "--top", "1"],
        Some("nope"),
    );
    assert_eq!(o.code, EXIT_INPUT);
}

#[test]
fn help_goes_to_stdout() {
    let o = run(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("compute"));
}

#[test]
fn inverse_example() {
    let o = run(&[
        "inverse",
        "--sigma",
        "3/4,1/4,0,0",
        "--index",
        "pgi",
        "--format",
        "json",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["bound"], serde_json::json!({"num": "1", "den": "4"}));
    assert_eq!(v["player"], 1);
}

#[test]
fn json_output_matches_the_schema() {
    let validator = schema_validator();
    let commands: [&[&str]; 6] = [
        &["compute", "--game", "[5;3,2,1,1]"],
        &[
            "compute",
            "--game",
            "[3;1,1,1,1]",
            "--index",
            "shift,shift-dp,all",
        ],
        &["bounds", "--n", "3"],
        &["spectrum", "--index", "ssi", "--n", "3"],
        &[
            "inverse", "--sigma", "1/2,1/2", "--index", "msri", "--class", "weighted",
        ],
        &["enumerate", "--n", "3", "--class", "complete"],
    ];
    for args in commands {
        let mut args = args.to_vec();
        args.extend(["--format", "json"]);
        let o = run(&args);
        assert_eq!(o.code, EXIT_OK, "{args:?}: {}", o.stderr);
        assert_valid(&validator, &o.stdout);
    }
    let partial = run(&[
        "compute",
        "--game",
        r#"{"n":4,"minimal_winning":[[1,2],[3,4]]}"#,
        "--format",
        "json",
    ]);
    let v = assert_valid(&validator, &partial.stdout);
    assert!(v["indices"]
        .as_array()
        .unwrap()
        .iter()
        .any(|i| i.get("error").is_some()));
}

#[test]
fn enumeration_records() {
    let o = run(&["enumerate", "--n", "2"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "2 8\n2 a\n2 c\n2 e\n");
}
