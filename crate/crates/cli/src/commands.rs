use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use span_oracle::embed::{blackbox_embed, evaluate_distortion, Bourgain, StarMode};
use span_oracle::generate;
use span_oracle::net::{
    build_net_greedy, build_net_sample, find_shattered, sample_budget, vc_dimension, verify_net,
    PathSystem, SampleConfig, Verdict,
};
use span_oracle::oracle::levels_for;
use span_oracle::{
    apsp, CombinedOracle, DistanceMatrix, EpsNet, Graph, NetMethod, Oracle, SimpleOracle, TzOracle,
};

use crate::args::*;
use crate::report::{num, Report};
use crate::CliError;

/// What a command hands back to the driver.
pub struct Done {
    pub report: Report,
    /// Primary output (query answers, a graph on stdout); when present the
    /// report is printed only if `--report` names a file.
    pub text: Option<String>,
    /// Nonzero when the command ran but found a violated contract.
    pub code: i32,
}

impl Done {
    fn ok(report: Report) -> Self {
        Self {
            report,
            text: None,
            code: 0,
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(Graph::parse(&read_text(path)?)?)
}

fn require<T>(value: Option<T>, flag: &str, why: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required {why}")))
}

fn distances(report: &mut Report, graph: &Graph, seed: u64) -> Result<DistanceMatrix, CliError> {
    Ok(report.timed("apsp", || apsp(&graph.perturb(seed)))?)
}

fn build_net(dm: &DistanceMatrix, eps: f64, method: Method, seed: u64) -> Result<EpsNet, CliError> {
    Ok(match method {
        Method::Greedy => build_net_greedy(dm, eps)?,
        Method::Sample => build_net_sample(dm, eps, seed, &SampleConfig::default())?,
    })
}

fn graph_sizes(report: &mut Report, graph: &Graph) {
    report
        .size("n", graph.n())
        .size("edges", graph.m())
        .size("weighted", !graph.is_unweighted());
}

pub fn gen(args: &GenArgs) -> Result<Done, CliError> {
    let mut report = Report::new("gen");
    report.config("family", format!("{:?}", args.family).to_lowercase());
    report.config("seed", args.seed);
    let n = || require(args.n, "n", "for this family");
    let graph = match args.family {
        Family::Path => generate::path(n()?),
        Family::Cycle => generate::cycle(n()?)?,
        Family::Grid => {
            let rows = require(args.rows, "rows", "for grid")?;
            let cols = require(args.cols, "cols", "for grid")?;
            report.config("rows", rows).config("cols", cols);
            generate::grid(rows, cols)
        }
        Family::Gnp => {
            let p = require(args.p, "p", "for gnp")?;
            report.config("p", p);
            generate::gnp(n()?, p, args.seed)?
        }
        Family::Geometric => {
            let radius = require(args.radius, "radius", "for geometric")?;
            report.config("radius", radius);
            generate::geometric(n()?, radius, args.seed)?
        }
    };
    if let Some(n) = args.n {
        report.config("n", n);
    }
    let graph = match args.max_weight {
        Some(w) => {
            report.config("max_weight", w);
            generate::random_weights(&graph, w, args.seed)?
        }
        None => graph,
    };
    graph_sizes(&mut report, &graph);
    let text = graph.to_text();
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            report.config("out", path);
            Ok(Done::ok(report))
        }
        None => Ok(Done {
            report,
            text: Some(text),
            code: 0,
        }),
    }
}

pub fn build_net_cmd(args: &NetArgs) -> Result<Done, CliError> {
    let mut report = Report::new("build-net");
    report
        .config("in", &args.input)
        .config("eps", args.eps)
        .config("method", NetMethod::from(args.method))
        .config("seed", args.seed);
    let graph = read_graph(&args.input)?;
    graph_sizes(&mut report, &graph);
    let dm = distances(&mut report, &graph, args.seed)?;
    let net = report.timed("net", || build_net(&dm, args.eps, args.method, args.seed))?;
    report.size("net", net.len()).size(
        "sample_budget",
        sample_budget(args.eps, &SampleConfig::default()),
    );
    report.result = json!({
        "vertices": net.vertices,
        "method_used": net.method,
        "certified": net.certified,
    });
    if let Some(path) = &args.out {
        write_file(path, net.to_text())?;
        report.config("out", path);
    }
    Ok(Done::ok(report))
}

pub fn verify_net_cmd(args: &VerifyArgs) -> Result<Done, CliError> {
    let mut report = Report::new("verify-net");
    let graph = read_graph(&args.input)?;
    let net = EpsNet::parse(&read_text(&args.net)?)?;
    let eps = args.eps.unwrap_or(net.eps);
    let seed = args.seed.unwrap_or(net.seed);
    report
        .config("in", &args.input)
        .config("net", &args.net)
        .config("eps", eps)
        .config("seed", seed);
    graph_sizes(&mut report, &graph);
    report.size("net", net.len());
    let dm = distances(&mut report, &graph, seed)?;
    let verdict = report.timed("verify", || verify_net(&dm, eps, &net.vertices))?;
    let code = match verdict {
        Verdict::Certified => {
            report.result = json!({ "certified": true, "failing_pair": null });
            0
        }
        Verdict::Failure { v1, v2 } => {
            report.result = json!({ "certified": false, "failing_pair": [v1, v2] });
            3
        }
    };
    Ok(Done {
        report,
        text: None,
        code,
    })
}

pub fn build_oracle(args: &OracleArgs) -> Result<Done, CliError> {
    let mut report = Report::new("build-oracle");
    report
        .config("kind", format!("{:?}", args.kind).to_lowercase())
        .config("in", &args.input)
        .config("seed", args.seed)
        .config("out", &args.out);
    let graph = read_graph(&args.input)?;
    graph_sizes(&mut report, &graph);
    let oracle = match args.kind {
        OracleKind::Simple => {
            let net = match &args.net {
                Some(path) => {
                    let mut net = EpsNet::parse(&read_text(path)?)?;
                    report.config("net", path).config("eps", net.eps);
                    let dm = distances(&mut report, &graph, net.seed)?;
                    if let Verdict::Failure { v1, v2 } = net.certify(&dm)? {
                        return Err(CliError::Contract(format!(
                            "net misses the canonical path of ({v1}, {v2})"
                        )));
                    }
                    net
                }
                None => {
                    let eps = require(args.eps, "eps", "unless --net is given")?;
                    report
                        .config("eps", eps)
                        .config("method", NetMethod::from(args.method));
                    let dm = distances(&mut report, &graph, args.seed)?;
                    report.timed("net", || build_net(&dm, eps, args.method, args.seed))?
                }
            };
            let o = report.timed("build", || SimpleOracle::build(&graph, &net))?;
            report.size("landmarks", o.landmarks().len());
            Oracle::Simple(o)
        }
        OracleKind::Tz => {
            let k = require(args.k, "k", "for tz")?;
            report.config("k", k);
            let o = report.timed("build", || TzOracle::build(&graph, k, args.seed))?;
            report.size("bunch_size", o.bunch_size());
            Oracle::Tz(o)
        }
        OracleKind::Combined => {
            let eps = require(args.eps, "eps", "for combined")?;
            let delta = require(args.delta, "delta", "for combined")?;
            report
                .config("eps", eps)
                .config("delta", delta)
                .config("method", NetMethod::from(args.method));
            let o = report.timed("build", || {
                CombinedOracle::build(&graph, eps, delta, args.seed, args.method.into())
            })?;
            report
                .size("k", o.k())
                .size("landmarks", o.landmark().landmarks().len())
                .size("bunch_size", o.tz().bunch_size());
            Oracle::Combined(o)
        }
    };
    let bytes = report.timed("serialize", || oracle.to_bytes());
    report.size("oracle_bytes", bytes.len());
    write_file(&args.out, &bytes)?;
    report.result = json!({ "kind": oracle.kind_name(), "bytes": bytes.len() });
    Ok(Done::ok(report))
}

/// Parses `u v` or `u,v`; `line` is 1-based, 0 for inline pairs.
fn parse_pair(s: &str, line: usize, n: usize) -> Result<(usize, usize), CliError> {
    let where_ = if line == 0 {
        format!("pair `{s}`")
    } else {
        format!("pairs file line {line}")
    };
    let toks: Vec<&str> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    let [a, b] = toks[..] else {
        return Err(CliError::Input(format!(
            "{where_}: expected two vertex ids"
        )));
    };
    let parse = |t: &str| -> Result<usize, CliError> {
        let v: usize = t
            .parse()
            .map_err(|_| CliError::Input(format!("{where_}: invalid vertex `{t}`")))?;
        if v >= n {
            return Err(CliError::Input(format!(
                "{where_}: vertex {v} out of range for {n} vertices"
            )));
        }
        Ok(v)
    };
    Ok((parse(a)?, parse(b)?))
}

pub fn answer(oracle: &Oracle, v1: usize, v2: usize) -> String {
    let plain = |d: f64| {
        if d.is_finite() {
            d.to_string()
        } else {
            "inf".to_string()
        }
    };
    match oracle {
        Oracle::Simple(o) => plain(o.query(v1, v2)),
        Oracle::Tz(o) => plain(o.query(v1, v2)),
        Oracle::Combined(o) => o.query(v1, v2).to_string(),
    }
}

pub fn query(args: &QueryArgs) -> Result<Done, CliError> {
    let mut report = Report::new("query");
    report.config("in", &args.input);
    let bytes = fs::read(&args.input)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.input.display())))?;
    let oracle = report.timed("load", || Oracle::from_bytes(&bytes))?;
    let n = oracle.n();
    let mut pairs = Vec::new();
    if let Some(path) = &args.pairs {
        report.config("pairs", path);
        for (i, line) in read_text(path)?.lines().enumerate() {
            let line_trim = line.trim();
            if line_trim.is_empty() || line_trim.starts_with('#') {
                continue;
            }
            pairs.push(parse_pair(line_trim, i + 1, n)?);
        }
    }
    for s in &args.pair {
        pairs.push(parse_pair(s, 0, n)?);
    }
    if pairs.is_empty() {
        return Err(CliError::Usage(
            "no pairs given (use --pairs or u,v arguments)".into(),
        ));
    }
    let answers: Vec<String> = report.timed("query", || {
        pairs.iter().map(|&(a, b)| answer(&oracle, a, b)).collect()
    });
    report
        .size("n", n)
        .size("pairs", pairs.len())
        .size("oracle_bytes", bytes.len());
    report.result = json!({
        "kind": oracle.kind_name(),
        "answers": pairs.iter().zip(&answers).map(|(&(a, b), ans)| json!([a, b, ans])).collect::<Vec<_>>(),
    });
    let mut text = answers.join("\n");
    text.push('\n');
    Ok(Done {
        report,
        text: Some(text),
        code: 0,
    })
}

pub fn eval_embed(args: &EmbedArgs) -> Result<Done, CliError> {
    let mut report = Report::new("eval-embed");
    let mode = match args.mode {
        Mode::Exact => StarMode::Exact,
        Mode::Compressed => StarMode::Compressed { m: args.m },
    };
    report
        .config("in", &args.input)
        .config("eps", args.eps)
        .config("method", NetMethod::from(args.method))
        .config("mode", format!("{:?}", args.mode).to_lowercase())
        .config("seed", args.seed);
    if let StarMode::Compressed { m } = mode {
        report.config("m", m);
    }
    let graph = read_graph(&args.input)?;
    graph_sizes(&mut report, &graph);
    let dm = distances(&mut report, &graph, args.seed)?;
    let net = report.timed("net", || build_net(&dm, args.eps, args.method, args.seed))?;
    let bb = report.timed("embed", || {
        blackbox_embed(&dm, &net, &Bourgain::default(), mode, args.seed)
    })?;
    let dist = report.timed("evaluate", || {
        evaluate_distortion(&dm, &bb.embedding, args.eps)
    })?;
    report
        .size("net", net.len())
        .size("landmarks", bb.assignment.landmarks.len())
        .size("dim", bb.embedding.dim())
        .size("g_dim", bb.g_dim)
        .size("h_dim", bb.h_dim);
    let bound = bb.large_pair_bound();
    report.result = json!({
        "distortion": dist,
        "base_expansion": num(bb.base_expansion),
        "star_expansion": num(bb.star_expansion),
        "large_pair_bound": num(bound),
        "within_bound": dist.max_ratio_large <= bound * (1.0 + 1e-9),
        "non_contracting": dist.pairs == 0 || dist.min_ratio_all >= 1.0 - 1e-9,
    });
    if let Some(path) = &args.out {
        write_file(path, bb.embedding.to_text())?;
        report.config("out", path);
    }
    Ok(Done::ok(report))
}

pub fn vc_check(args: &VcArgs) -> Result<Done, CliError> {
    let mut report = Report::new("vc-check");
    report
        .config("in", &args.input)
        .config("seed", args.seed)
        .config("max_size", args.max_size);
    let graph = read_graph(&args.input)?;
    graph_sizes(&mut report, &graph);
    let dm = distances(&mut report, &graph, args.seed)?;
    let ps = PathSystem::new(&dm);
    let vc = report.timed("shatter", || vc_dimension(&ps, args.max_size))?;
    report.size("ranges", ps.num_ranges());
    let witness = find_shattered(&ps, vc);
    report.result = json!({
        "vc_dimension": vc,
        "witness": witness,
        "at_most_two": vc <= 2,
    });
    let code = if vc <= 2 { 0 } else { 4 };
    Ok(Done {
        report,
        text: None,
        code,
    })
}

pub fn bench(args: &BenchArgs) -> Result<Done, CliError> {
    let mut report = Report::new("bench");
    report
        .config("in", &args.input)
        .config("eps", args.eps)
        .config("delta", args.delta)
        .config("seed", args.seed);
    let graph = read_graph(&args.input)?;
    graph_sizes(&mut report, &graph);
    let n = graph.n();
    let dm = distances(&mut report, &graph, args.seed)?;
    let greedy = report.timed("net_greedy", || build_net_greedy(&dm, args.eps))?;
    let sampled = report.timed("net_sample", || {
        build_net_sample(&dm, args.eps, args.seed, &SampleConfig::default())
    })?;
    let simple = report.timed("build_simple", || SimpleOracle::build(&graph, &greedy))?;
    let k = levels_for(args.delta);
    let tz = report.timed("build_tz", || TzOracle::build(&graph, k, args.seed))?;
    report
        .size("net_greedy", greedy.len())
        .size("net_sample", sampled.len())
        .size("k", k)
        .size("bunch_size", tz.bunch_size())
        .size(
            "simple_bytes",
            Oracle::Simple(simple.clone()).to_bytes().len(),
        )
        .size("tz_bytes", Oracle::Tz(tz.clone()).to_bytes().len());

    let sweep = |f: &dyn Fn(usize, usize) -> f64| {
        let mut total = 0.0;
        for a in 0..n {
            for b in 0..n {
                let d = f(a, b);
                if d.is_finite() {
                    total += d;
                }
            }
        }
        total
    };
    let simple_sum = report.timed("query_simple", || sweep(&|a, b| simple.query(a, b)));
    let tz_sum = report.timed("query_tz", || sweep(&|a, b| tz.query(a, b)));
    let mut result = json!({
        "pairs": n * n,
        "simple_checksum": num(simple_sum),
        "tz_checksum": num(tz_sum),
        "combined": Value::Null,
    });
    if graph.is_unweighted() {
        let combined = report.timed("build_combined", || {
            CombinedOracle::build(&graph, args.eps, args.delta, args.seed, NetMethod::Greedy)
        })?;
        let exact = report.timed("query_combined", || {
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| combined.query(a, b).value().is_some())
                .count()
        });
        report
            .size("combined_landmarks", combined.landmark().landmarks().len())
            .size("combined_bytes", combined.to_bytes().len());
        result["combined"] = json!({ "exact_answers": exact });
    }
    report.result = result;
    Ok(Done::ok(report))
}
