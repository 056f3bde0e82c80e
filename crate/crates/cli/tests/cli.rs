use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use span_oracle::{apsp, CombinedOracle, Graph, NetMethod, Oracle, QueryAnswer};
use span_oracle_cli::{commands, run, Outcome};
use tempfile::TempDir;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("span-oracle").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> Outcome {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).expect("stdout is a JSON report")
}

fn error_kind(out: &Outcome) -> String {
    let v: Value = serde_json::from_str(&out.stderr).expect("stderr is a JSON error");
    v["error"]["kind"].as_str().unwrap().to_string()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn s(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_string()
    }
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn gen_examples() {
    let dir = Dir::new();
    let report = json(&ok(&["gen", "path", "--n", "10", "--out", &dir.s("p.txt")]));
    assert_eq!(report["sizes"]["n"], 10);
    assert_eq!(report["sizes"]["edges"], 9);
    let report = json(&ok(&[
        "gen",
        "grid",
        "--rows",
        "5",
        "--cols",
        "5",
        "--out",
        &dir.s("g.txt"),
    ]));
    assert_eq!(report["sizes"]["n"], 25);
    assert_eq!(report["sizes"]["edges"], 40);

    let gnp = [
        "gen", "gnp", "--n", "100", "--p", "0.05", "--seed", "1", "--out",
    ];
    ok(&[&gnp[..], &[&dir.s("a.txt")]].concat());
    ok(&[&gnp[..], &[&dir.s("b.txt")]].concat());
    assert_eq!(
        fs::read(dir.path("a.txt")).unwrap(),
        fs::read(dir.path("b.txt")).unwrap()
    );

    let stdout = ok(&["gen", "cycle", "--n", "4"]).stdout;
    assert_eq!(Graph::parse(&stdout).unwrap().m(), 4);
    let weighted = ok(&[
        "gen",
        "path",
        "--n",
        "6",
        "--max-weight",
        "5",
        "--seed",
        "3",
    ])
    .stdout;
    assert!(!Graph::parse(&weighted).unwrap().is_unweighted());
}

#[test]
fn gen_rejects_bad_params() {
    assert_eq!(cli(&["gen", "gnp", "--n", "10"]).code, 1);
    assert_eq!(cli(&["gen", "gnp", "--n", "10", "--p", "2"]).code, 1);
    assert_eq!(cli(&["gen", "cycle", "--n", "2"]).code, 1);
    assert_eq!(cli(&["gen", "lattice", "--n", "2"]).code, 1);
    let out = cli(&["gen", "grid", "--rows", "3"]);
    assert_eq!(error_kind(&out), "usage");
}

#[test]
fn path_ten_pipeline() {
    let dir = Dir::new();
    ok(&["gen", "path", "--n", "10", "--out", &dir.s("p10.txt")]);
    let report = json(&ok(&[
        "build-net",
        "--in",
        &dir.s("p10.txt"),
        "--eps",
        "0.5",
        "--method",
        "greedy",
        "--out",
        &dir.s("net.txt"),
    ]));
    assert_eq!(report["sizes"]["net"], 1);
    assert_eq!(report["result"]["vertices"], serde_json::json!([4]));

    let verify = json(&ok(&[
        "verify-net",
        "--in",
        &dir.s("p10.txt"),
        "--net",
        &dir.s("net.txt"),
    ]));
    assert_eq!(verify["result"]["certified"], true);

    ok(&[
        "build-oracle",
        "combined",
        "--in",
        &dir.s("p10.txt"),
        "--eps",
        "0.5",
        "--delta",
        "0.5",
        "--out",
        &dir.s("c.bin"),
    ]);
    let out = ok(&["query", "--in", &dir.s("c.bin"), "0,1", "0,9", "0,5"]);
    assert_eq!(out.stdout, "bottom\n9\n5\n");

    fs::write(dir.path("pairs.txt"), "# pairs\n0 1\n\n2,8\n").unwrap();
    let out = ok(&[
        "query",
        "--in",
        &dir.s("c.bin"),
        "--pairs",
        &dir.s("pairs.txt"),
    ]);
    assert_eq!(out.stdout, "bottom\n6\n");

    let out = ok(&[
        "--report",
        &dir.s("q.json"),
        "query",
        "--in",
        &dir.s("c.bin"),
        "0,9",
    ]);
    assert_eq!(out.stdout, "9\n");
    let saved: Value =
        serde_json::from_str(&fs::read_to_string(dir.path("q.json")).unwrap()).unwrap();
    assert_eq!(saved["result"]["answers"][0][2], "9");
}

#[test]
fn net_file_remembers_its_seed() {
    let dir = Dir::new();
    ok(&[
        "gen",
        "grid",
        "--rows",
        "6",
        "--cols",
        "6",
        "--out",
        &dir.s("g.txt"),
    ]);
    for method in ["greedy", "sample"] {
        ok(&[
            "build-net",
            "--in",
            &dir.s("g.txt"),
            "--eps",
            "0.2",
            "--method",
            method,
            "--seed",
            "9",
            "--out",
            &dir.s("n.txt"),
        ]);
        let net =
            span_oracle::EpsNet::parse(&fs::read_to_string(dir.path("n.txt")).unwrap()).unwrap();
        assert_eq!(net.seed, 9);
        let verify = json(&ok(&[
            "verify-net",
            "--in",
            &dir.s("g.txt"),
            "--net",
            &dir.s("n.txt"),
        ]));
        assert_eq!(verify["config"]["seed"], 9);
        ok(&[
            "build-oracle",
            "simple",
            "--in",
            &dir.s("g.txt"),
            "--net",
            &dir.s("n.txt"),
            "--out",
            &dir.s("s.bin"),
        ]);
    }
}

#[test]
fn vc_check_on_p5() {
    let dir = Dir::new();
    ok(&["gen", "path", "--n", "5", "--out", &dir.s("p5.txt")]);
    let report = json(&ok(&["vc-check", "--in", &dir.s("p5.txt")]));
    assert_eq!(report["result"]["vc_dimension"], 2);
    assert_eq!(report["result"]["at_most_two"], true);
    assert_eq!(
        cli(&["vc-check", "--in", &dir.s("p5.txt"), "--max-size", "9"]).code,
        1
    );
}

#[test]
fn contract_violations_exit_three() {
    let dir = Dir::new();
    ok(&["gen", "path", "--n", "10", "--out", &dir.s("p10.txt")]);
    fs::write(
        dir.path("bad.txt"),
        "eps 0.5\nmethod greedy\nseed 0\nsize 1\n0\n",
    )
    .unwrap();

    let out = cli(&[
        "verify-net",
        "--in",
        &dir.s("p10.txt"),
        "--net",
        &dir.s("bad.txt"),
    ]);
    assert_eq!(out.code, 3);
    assert_eq!(error_kind(&out), "contract");
    let report = json(&out);
    assert_eq!(report["result"]["certified"], false);
    assert!(report["result"]["failing_pair"].is_array());

    let out = cli(&[
        "build-oracle",
        "simple",
        "--in",
        &dir.s("p10.txt"),
        "--net",
        &dir.s("bad.txt"),
        "--out",
        &dir.s("s.bin"),
    ]);
    assert_eq!((out.code, error_kind(&out).as_str()), (3, "contract"));

    ok(&[
        "gen",
        "path",
        "--n",
        "10",
        "--max-weight",
        "4",
        "--out",
        &dir.s("w.txt"),
    ]);
    let out = cli(&[
        "build-oracle",
        "combined",
        "--in",
        &dir.s("w.txt"),
        "--eps",
        "0.5",
        "--delta",
        "0.5",
        "--out",
        &dir.s("c.bin"),
    ]);
    assert_eq!(out.code, 3);
}

#[test]
fn input_errors_exit_two() {
    let dir = Dir::new();
    fs::write(dir.path("g.txt"), "3 2 unweighted\n0 1\n1 1\n").unwrap();
    let out = cli(&["build-net", "--in", &dir.s("g.txt"), "--eps", "0.5"]);
    assert_eq!(out.code, 2);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    assert!(
        v["error"]["message"].as_str().unwrap().contains("line 3"),
        "{}",
        out.stderr
    );

    assert_eq!(
        cli(&["build-net", "--in", &dir.s("missing.txt"), "--eps", "0.5"]).code,
        2
    );
    fs::write(dir.path("junk.bin"), b"SPOR1 nope").unwrap();
    assert_eq!(cli(&["query", "--in", &dir.s("junk.bin"), "0,1"]).code, 2);

    ok(&["gen", "path", "--n", "4", "--out", &dir.s("p.txt")]);
    assert_eq!(
        cli(&["build-net", "--in", &dir.s("p.txt"), "--eps", "1.5"]).code,
        1
    );
    ok(&[
        "build-oracle",
        "tz",
        "--in",
        &dir.s("p.txt"),
        "--k",
        "2",
        "--out",
        &dir.s("t.bin"),
    ]);
    fs::write(dir.path("pairs.txt"), "0 1\n0 x\n").unwrap();
    let out = cli(&[
        "query",
        "--in",
        &dir.s("t.bin"),
        "--pairs",
        &dir.s("pairs.txt"),
    ]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2"));
    assert_eq!(cli(&["query", "--in", &dir.s("t.bin")]).code, 1);
}

/// Build-then-query through files agrees with the in-process oracle on
/// every pair.
#[test]
fn file_round_trip_matches_in_process() {
    let dir = Dir::new();
    ok(&[
        "gen",
        "gnp",
        "--n",
        "40",
        "--p",
        "0.12",
        "--seed",
        "5",
        "--out",
        &dir.s("g.txt"),
    ]);
    let graph = Graph::parse(&fs::read_to_string(dir.path("g.txt")).unwrap()).unwrap();
    let n = graph.n();
    let pairs: String = (0..n)
        .flat_map(|a| (0..n).map(move |b| format!("{a} {b}\n")))
        .collect();
    fs::write(dir.path("pairs.txt"), pairs).unwrap();

    for (kind, extra) in [
        ("simple", vec!["--eps", "0.2"]),
        ("tz", vec!["--k", "3"]),
        ("combined", vec!["--eps", "0.25", "--delta", "0.34"]),
    ] {
        let out_file = dir.s(&format!("{kind}.bin"));
        let mut args = vec![
            "build-oracle",
            kind,
            "--in",
            dir.path("g.txt").to_str().unwrap(),
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
        args.extend(extra.iter().map(|s| s.to_string()));
        args.extend([
            "--seed".into(),
            "7".into(),
            "--out".into(),
            out_file.clone(),
        ]);
        ok(&args.iter().map(String::as_str).collect::<Vec<_>>());

        let answers = ok(&["query", "--in", &out_file, "--pairs", &dir.s("pairs.txt")]).stdout;
        let oracle = Oracle::from_bytes(&fs::read(&out_file).unwrap()).unwrap();
        let expected: String = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| commands::answer(&oracle, a, b) + "\n")
            .collect();
        assert_eq!(answers, expected, "{kind}");
    }

    let combined = CombinedOracle::build(&graph, 0.25, 0.34, 7, NetMethod::Greedy).unwrap();
    let dm = apsp(&graph.perturb(7)).unwrap();
    let answers = ok(&[
        "query",
        "--in",
        &dir.s("combined.bin"),
        "--pairs",
        &dir.s("pairs.txt"),
    ])
    .stdout;
    for (line, (a, b)) in answers
        .lines()
        .zip((0..n).flat_map(|a| (0..n).map(move |b| (a, b))))
    {
        assert_eq!(line, combined.query(a, b).to_string());
        match dm.d_unw(a, b) {
            Some(h) if h as f64 >= 0.25 * n as f64 => {
                assert_eq!(combined.query(a, b), QueryAnswer::Exact(h as f64))
            }
            _ => assert_eq!(line, "bottom"),
        }
    }
}

fn run_all_reports(dir: &Path) -> Vec<Value> {
    let g = dir.join("g.txt");
    let g = g.to_str().unwrap();
    let out = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let commands: Vec<Vec<String>> = [
        vec![
            "build-net",
            "--in",
            g,
            "--eps",
            "0.25",
            "--method",
            "sample",
            "--seed",
            "3",
            "--out",
            &out("n.txt"),
        ],
        vec!["verify-net", "--in", g, "--net", &out("n.txt")],
        vec![
            "build-oracle",
            "combined",
            "--in",
            g,
            "--eps",
            "0.25",
            "--delta",
            "0.5",
            "--seed",
            "3",
            "--out",
            &out("c.bin"),
        ],
        vec![
            "build-oracle",
            "tz",
            "--in",
            g,
            "--k",
            "2",
            "--seed",
            "3",
            "--out",
            &out("t.bin"),
        ],
        vec![
            "eval-embed",
            "--in",
            g,
            "--eps",
            "0.25",
            "--mode",
            "compressed",
            "--seed",
            "3",
            "--out",
            &out("e.txt"),
        ],
        vec!["eval-embed", "--in", g, "--eps", "0.5", "--mode", "exact"],
        vec!["vc-check", "--in", g, "--seed", "3"],
        vec!["bench", "--in", g, "--seed", "3"],
    ]
    .iter()
    .map(|c| c.iter().map(|s| s.to_string()).collect())
    .collect();
    commands
        .iter()
        .map(|c| strip_timing(json(&ok(&c.iter().map(String::as_str).collect::<Vec<_>>()))))
        .collect()
}

#[test]
fn reports_are_deterministic() {
    let dir = Dir::new();
    ok(&[
        "gen",
        "geometric",
        "--n",
        "30",
        "--radius",
        "0.35",
        "--seed",
        "2",
        "--out",
        &dir.s("g.txt"),
    ]);
    let first = run_all_reports(dir.0.path());
    let second = run_all_reports(dir.0.path());
    assert_eq!(first, second);
    let embed = &first[4]["result"];
    assert_eq!(embed["non_contracting"], true);
    assert_eq!(embed["within_bound"], true);
}

#[test]
fn binary_exit_codes_and_thread_env() {
    let bin = env!("CARGO_BIN_EXE_span-oracle");
    let status = Command::new(bin).arg("--help").output().unwrap();
    assert!(status.status.success());
    let status = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    let out = Command::new(bin)
        .args(["gen", "path", "--n", "3"])
        .env("SPAN_ORACLE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin)
        .args(["gen", "path", "--n", "3"])
        .env("SPAN_ORACLE_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "3 2 unweighted\n0 1\n1 2\n"
    );
}
