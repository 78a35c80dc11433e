//! End-to-end tests of the `qsk` binary: exit codes, file round trips,
//! determinism and conformance of every report to the shipped schema.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_qsk");

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn qsk(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("QSK_SEED")
        .output()
        .expect("spawn qsk")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&o.stdout)
        )
    })
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schema/report.schema.json"
    ))
    .unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
}

fn assert_conforms(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect();
    assert!(
        errors.is_empty(),
        "report violates schema: {errors:#?}\n{doc:#}"
    );
}

/// Every report-producing invocation, with its expected exit code.
fn report_runs() -> Vec<(Vec<String>, i32)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        (
            s(&["check-algebra", "--in", &data("s3_group_algebra.json")]),
            0,
        ),
        (
            s(&["check-hopf", "--in", &data("s3_function_algebra.json")]),
            0,
        ),
        (s(&["group", "--table", &data("s3.json"), "--check"]), 0),
        (s(&["functions", "--table", &data("z4.json"), "--check"]), 0),
        (
            s(&["dual-op", "--in", &data("s3_group_algebra.json"), "--check"]),
            0,
        ),
        (
            s(&[
                "pair",
                "--plus",
                &data("s3_group_algebra.json"),
                "--minus",
                &data("s3_function_algebra.json"),
            ]),
            0,
        ),
        (
            s(&[
                "double",
                "--in",
                &data("s3_group_algebra.json"),
                "--check",
                "--irreps",
            ]),
            0,
        ),
        (
            s(&["double-trace", "--in", &data("s3_group_algebra.json")]),
            0,
        ),
        (s(&["irreps", "--in", &data("s3_group_algebra.json")]), 0),
        (
            s(&["fusion-validate", "--in", &data("s3_group.fusion.json")]),
            0,
        ),
        (
            s(&[
                "fusion-zero",
                "--in",
                &data("s3_group.fusion.json"),
                "--sign",
                "-",
            ]),
            0,
        ),
        (
            s(&[
                "fusion-from-hopf",
                "--in",
                &data("z2_function_algebra.json"),
                "--depth-two",
                "2",
            ]),
            0,
        ),
        (s(&["tl", "--n", "5", "--verify-relations", "--basis"]), 0),
        (s(&["tl", "--n", "6", "--jones-word", "0", "--k", "2"]), 0),
        (
            s(&[
                "pair",
                "--plus",
                &data("s3_group_algebra.json"),
                "--minus",
                &data("s3_group_algebra.json"),
            ]),
            1,
        ),
    ]
}

#[test]
fn reports_conform_to_schema_and_exit_codes_match_status() {
    let v = validator();
    let mut commands = std::collections::BTreeSet::new();
    for (args, code) in report_runs() {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = qsk(&argv);
        assert_eq!(
            o.status.code(),
            Some(code),
            "{argv:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let doc = json(&o);
        assert_conforms(&v, &doc);
        let expected = if code == 0 { "pass" } else { "fail" };
        assert_eq!(doc["status"], expected, "{argv:?}");
        commands.insert(doc["command"].as_str().unwrap().to_string());
    }
    assert_eq!(
        commands.len(),
        13,
        "every subcommand produces a report: {commands:?}"
    );
}

#[test]
fn schema_rejects_inconsistent_reports() {
    let v = validator();
    let good = json(&qsk(&["tl", "--n", "3", "--verify-relations"]));
    assert!(v.is_valid(&good));
    let mut bad = good.clone();
    bad["status"] = "fail".into();
    assert!(!v.is_valid(&bad), "fail status without a failing check");
    let mut bad = good.clone();
    bad["extra"] = 1.into();
    assert!(!v.is_valid(&bad));
    let mut bad = good;
    bad["checks"][0]["outcome"] = "fail".into();
    assert!(!v.is_valid(&bad), "failing check without witness");
}

#[test]
fn output_is_byte_identical_across_runs_and_seeds_are_honoured() {
    for (args, _) in report_runs() {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(qsk(&argv).stdout, qsk(&argv).stdout, "{argv:?}");
    }
    let seeded = |seed: &str| {
        Command::new(BIN)
            .args(["irreps", "--in", &data("s3_group_algebra.json")])
            .env("QSK_SEED", seed)
            .output()
            .unwrap()
    };
    let (a, b) = (seeded("0x2a"), seeded("42"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a)["results"], json(&b)["results"]);
    assert_eq!(seeded("not-a-seed").status.code(), Some(2));
}

#[test]
fn algebra_files_round_trip_byte_for_byte() {
    for name in [
        "s3_group_algebra.json",
        "s3_function_algebra.json",
        "z2_function_algebra.json",
    ] {
        let original = std::fs::read_to_string(data(name)).unwrap();
        let doc = qsk::cli::files::parse_algebra(&original).unwrap();
        assert_eq!(qsk::cli::files::render(&doc.to_json()), original, "{name}");
    }
    let out = scratch("s3_group_algebra.out.json");
    let o = qsk(&[
        "group",
        "--table",
        &data("s3.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read(&out).unwrap(),
        std::fs::read(data("s3_group_algebra.json")).unwrap()
    );
}

#[test]
fn dual_op_of_group_algebra_is_function_algebra_file() {
    let o = qsk(&["dual-op", "--in", &data("s3_group_algebra.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        o.stdout,
        std::fs::read(data("s3_function_algebra.json")).unwrap()
    );
}

#[test]
fn double_file_feeds_back_into_the_checkers() {
    let path = scratch("double_z3.json");
    let table = data("z3.json");
    let alg = scratch("z3_group.json");
    assert_eq!(
        qsk(&["group", "--table", &table, "--out", alg.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        qsk(&[
            "double",
            "--in",
            alg.to_str().unwrap(),
            "--out",
            path.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    let o = qsk(&["check-hopf", "--in", path.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    let o = qsk(&["irreps", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        json(&o)["results"]["sorted_block_dims"],
        serde_json::json!(vec![1; 9])
    );
}

#[test]
fn verification_failures_exit_one_with_witness() {
    let text = std::fs::read_to_string(data("z2_function_algebra.json")).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    // δ[g1]·δ[g1] = 2δ[g1] breaks the unit law.
    for e in doc["mult"].as_array_mut().unwrap() {
        if e[0] == 1 && e[1] == 1 {
            e[3] = "2/1".into();
        }
    }
    let path = scratch("broken.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = qsk(&["check-algebra", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let report = json(&o);
    assert_conforms(&validator(), &report);
    let failing: Vec<&Value> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["outcome"] == "fail")
        .collect();
    assert!(!failing.is_empty() && failing.iter().all(|c| c.get("witness").is_some()));

    let text = std::fs::read_to_string(data("s3_group.fusion.json")).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    doc["fusion"].as_array_mut().unwrap().pop();
    let path = scratch("broken.fusion.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(
        qsk(&["fusion-validate", "--in", path.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn input_errors_exit_two_with_usage_on_stderr() {
    let cases: Vec<Vec<&str>> = vec![
        vec![],
        vec!["no-such-command"],
        vec!["tl"],
        vec!["tl", "--n", "3", "--tol", "abc"],
        vec!["check-algebra", "--in", "/definitely/missing.json"],
        vec![
            "check-hopf",
            "--in",
            concat!(env!("CARGO_MANIFEST_DIR"), "/data/s3.json"),
        ],
        vec![
            "fusion-zero",
            "--in",
            concat!(env!("CARGO_MANIFEST_DIR"), "/data/s3_group.fusion.json"),
            "--sign",
            "x",
        ],
        vec!["tl", "--n", "2", "--jones-word", "-1", "--k", "3"],
    ];
    for args in cases {
        let o = qsk(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?} wrote to stdout");
        assert!(!o.stderr.is_empty(), "{args:?} gave no diagnostics");
    }
    assert_eq!(qsk(&["--help"]).status.code(), Some(0));
}

#[test]
fn library_entry_point_matches_binary() {
    let args = ["qsk", "tl", "--n", "4", "--jones-word", "-1"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = qsk::cli::run(args, &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, qsk(&args[1..]).stdout);
}
