use std::path::Path;
use std::process::{Command, Output};

fn rankbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankbench"))
        .args(args)
        .env_remove("RANKBENCH_CONFIG")
        .output()
        .expect("spawn rankbench")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

const PERTURBED: &str = r#"{"entries": [[1, 2, 6], [0.5, 1, 2], [0.16666666666666666, 0.5, 1]]}"#;

#[test]
fn reproduce_paper_table() {
    let o = rankbench(&["reproduce-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for name in ["sim1", "sim2", "sim3", "sim4"] {
        assert!(text.contains(&format!("Ranking based on {name} attribute weights")));
    }
    assert!(text.contains("RF2  0.4059 Rank # 1  0.7800 Rank # 1"));
    assert!(text.contains("RF3  0.4751 Rank # 1  0.9576 Rank # 1"));
    assert_eq!(text.matches("kendall tau = 1.0000").count(), 4);
    assert!(text.trim_end().ends_with("4/4 scenarios: AHP and SAW rank orders identical"));
}

#[test]
fn every_command_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", PERTURBED);
    let cases: Vec<Vec<&str>> = vec![
        vec!["reproduce-paper"],
        vec!["reproduce-paper", "--format", "json"],
        vec!["compare", "--format", "csv"],
        vec!["rank", "--scenario", "sim2"],
        vec!["rank", "--weights", "rnc=1.0"],
        vec!["sweep", "--scenario", "sim4", "--criterion", "rnc", "--from", "0", "--to", "1", "--steps", "21"],
        vec!["check-consistency", &m],
    ];
    for args in cases {
        let a = rankbench(&args);
        let b = rankbench(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
    }
}

#[test]
fn compare_csv_has_four_blocks() {
    let o = rankbench(&["compare", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let blocks: Vec<&str> = text.split("\r\n\n").filter(|b| !b.trim().is_empty()).collect();
    assert_eq!(blocks.len(), 4);
    for (block, name) in blocks.iter().zip(["sim1", "sim2", "sim3", "sim4"]) {
        let lines: Vec<&str> = block.trim_end().split("\r\n").collect();
        assert_eq!(lines[0], "scenario,alternative,AHP score,AHP rank,SAW score,SAW rank");
        assert_eq!(lines.len(), 4);
        assert!(lines[1..].iter().all(|l| l.starts_with(&format!("{name},RF"))));
    }
}

#[test]
fn json_report_parses() {
    let o = rankbench(&["reproduce-paper", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(stderr(&o).trim(), "4/4 scenarios: AHP and SAW rank orders identical");
}

#[test]
fn inline_single_weight_ranks_by_cost() {
    let o = rankbench(&["rank", "--weights", "rnc=1.0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("RF2  0.5505 Rank # 1  1.0000 Rank # 1"), "{text}");
    assert!(text.contains("RF3  0.0826 Rank # 3  0.1500 Rank # 3"));
    assert!(stderr(&o).contains("1 of the catalog's criteria"));
}

#[test]
fn check_consistency_reports() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", PERTURBED);
    let o = rankbench(&["check-consistency", &m]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n           3\nlambda_max  3.0183\nCI          0.0091\nRI          0.5800\nCR          0.0158\nverdict     acceptable (CR < 0.1)\n"
    );

    let ones = write(dir.path(), "ones.json", r#"{"entries": [[1,1,1],[1,1,1],[1,1,1]]}"#);
    let o = rankbench(&["check-consistency", &ones]);
    assert!(stdout(&o).contains("CR          0.0000\n"));

    // Strongly intransitive: a > b > c > a.
    let bad = write(dir.path(), "bad.json", r#"{"entries": [[1,9,0.1111111111111111],[0.1111111111111111,1,9],[9,0.1111111111111111,1]]}"#);
    let o = rankbench(&["check-consistency", &bad]);
    assert_eq!(o.status.code(), Some(0), "a high CR is a warning, not an error");
    assert!(stdout(&o).contains("not acceptable"));
    assert!(stderr(&o).contains("warning"));

    let o = rankbench(&["check-consistency", &m, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["consistency_ratio"].as_f64().unwrap() - 0.015_771_299_387_611).abs() < 1e-9);
}

#[test]
fn exit_codes_by_failure_class() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.json").display().to_string();

    // I/O
    assert_eq!(rankbench(&["reproduce-paper", "--catalog", &missing]).status.code(), Some(2));
    assert_eq!(rankbench(&["check-consistency", &missing]).status.code(), Some(2));

    // validation
    let o = rankbench(&["rank", "--weights", "rnc=0.5,fut=0.3"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("sum"));
    assert_eq!(rankbench(&["rank", "--weights", "nope=1.0"]).status.code(), Some(1));
    assert_eq!(rankbench(&["rank", "--weights", "rnc"]).status.code(), Some(1));
    assert_eq!(rankbench(&["rank", "--scenario", "sim9"]).status.code(), Some(1));
    assert_eq!(rankbench(&["reproduce-paper", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(rankbench(&["frobnicate"]).status.code(), Some(1));
    let garbage = write(dir.path(), "garbage.json", "{not json");
    assert_eq!(rankbench(&["reproduce-paper", "--catalog", &garbage]).status.code(), Some(1));
    let nonrecip = write(dir.path(), "nr.json", r#"{"entries": [[1,2],[2,1]]}"#);
    assert_eq!(rankbench(&["check-consistency", &nonrecip]).status.code(), Some(1));

    // internal: the eigenvector iteration is starved of iterations
    let o = rankbench(&["reproduce-paper", "--max-iterations", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("did not converge"));

    assert_eq!(rankbench(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_table_shows_flip() {
    let o = rankbench(&[
        "sweep", "--scenario", "sim4", "--criterion", "rnc", "--values", "0.25,0.30,0.35",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("AHP rank order changes between 0.2500 and 0.3000"), "{text}");
    assert!(text.contains("SAW rank order changes between 0.3000 and 0.3500"));
    let o = rankbench(&["sweep", "--criterion", "nope", "--values", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_dir_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("reports");
    let o = rankbench(&["reproduce-paper", "--format", "csv", "--output", out_dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = out_dir.join("reproduce-paper.csv");
    assert!(stdout(&o).starts_with("wrote "));
    let direct = rankbench(&["reproduce-paper", "--format", "csv"]);
    assert_eq!(std::fs::read(&written).unwrap(), direct.stdout);

    let cfg = write(dir.path(), "run.json", r#"{"format": "json"}"#);
    let o = Command::new(env!("CARGO_BIN_EXE_rankbench"))
        .arg("reproduce-paper")
        .env("RANKBENCH_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(serde_json::from_slice::<serde_json::Value>(&o.stdout).is_ok());

    // Flags override the config file.
    let o = rankbench(&["--config", &cfg, "reproduce-paper", "--format", "table"]);
    assert!(stdout(&o).starts_with("Ranking based on sim1"));

    let bad = write(dir.path(), "bad.json", r#"{"format": "json", "bogus": 1}"#);
    assert_eq!(rankbench(&["--config", &bad, "reproduce-paper"]).status.code(), Some(1));
}

#[test]
fn timestamps_only_touch_table_output() {
    let o = rankbench(&["reproduce-paper", "--timestamps"]);
    assert!(stdout(&o).starts_with("# generated "));
    let csv = rankbench(&["reproduce-paper", "--timestamps", "--format", "csv"]);
    assert_eq!(csv.stdout, rankbench(&["reproduce-paper", "--format", "csv"]).stdout);
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = rankbench::cli::run(["rankbench", "compare", "--format", "csv"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, rankbench(&["compare", "--format", "csv"]).stdout);
}
