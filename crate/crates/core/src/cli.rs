//! Command-line front end: the graph file format and the subcommands.
//!
//! Files are line oriented. `c` starts a comment, `p mwss <n> <m>` is the
//! header, `n <id> <w>` sets a weight (default 1) and `e <u> <v>` adds an
//! edge. Ids are 1-based in files and in all output.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::canonical::{
    canonical_violation, canonicalize, greedy_maximal_stable_set, CanonicalMove,
};
use crate::decompose::DecomposeOptions;
use crate::detect::{find_claw, find_net, PatternWitness};
use crate::error::{Error, Result};
use crate::gen::{generate, GenMode, GenSpec, WeightRegime, RNG_NAME};
use crate::graph::{Graph, GraphBuilder, NodeSet, Weight};
use crate::interval::StageAction;
use crate::oracle::{configured_limit, oracle_mwss_with_limit, ENUMERATION_LIMIT};
use crate::order::verify_consistent;
use crate::solver::{solve_with, Route, SolveOptions, SolveTrace};

/// Parses the graph file format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut header: Option<(usize, usize, usize)> = None;
    let mut builder: Option<GraphBuilder> = None;
    let mut weighted = Vec::new();
    let mut edges = 0usize;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let Some(&kind) = tokens.first() else {
            continue;
        };
        let num = |t: &str, what: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| err(line, format!("invalid {what} `{t}`")))
        };
        match kind {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(err(line, "second header line".into()));
                }
                if tokens.len() != 4 || tokens[1] != "mwss" {
                    return Err(err(line, "expected `p mwss <n> <m>`".into()));
                }
                let n = num(tokens[2], "node count")?;
                let m = num(tokens[3], "edge count")?;
                header = Some((line, n, m));
                builder = Some(GraphBuilder::new(n));
                weighted = vec![false; n];
            }
            "n" | "e" => {
                let Some(b) = builder.as_mut() else {
                    return Err(err(line, format!("`{kind}` line before the header")));
                };
                if tokens.len() != 3 {
                    return Err(err(
                        line,
                        format!("expected `{kind}` followed by two values"),
                    ));
                }
                let n = b.n();
                let id = |t: &str| -> Result<usize> {
                    let v = num(t, "node id")?;
                    if v == 0 || v > n {
                        return Err(err(line, format!("node id {v} out of range 1..={n}")));
                    }
                    Ok(v - 1)
                };
                if kind == "n" {
                    let v = id(tokens[1])?;
                    let w: Weight = tokens[2]
                        .parse()
                        .map_err(|_| err(line, format!("invalid weight `{}`", tokens[2])))?;
                    if std::mem::replace(&mut weighted[v], true) {
                        return Err(err(line, format!("weight of node {} given twice", v + 1)));
                    }
                    b.set_weight(v, w)?;
                } else {
                    let (u, v) = (id(tokens[1])?, id(tokens[2])?);
                    if u == v {
                        return Err(err(line, format!("self-loop at node {}", u + 1)));
                    }
                    if !b.add_edge(u, v)? {
                        return Err(err(
                            line,
                            format!("duplicate edge {} {}", u.min(v) + 1, u.max(v) + 1),
                        ));
                    }
                    edges += 1;
                }
            }
            other => return Err(err(line, format!("unknown line type `{other}`"))),
        }
    }
    let Some((hline, _, m)) = header else {
        return Err(err(last.max(1), "missing `p mwss <n> <m>` header".into()));
    };
    if edges != m {
        return Err(err(
            hline,
            format!("header declares {m} edges, found {edges}"),
        ));
    }
    Ok(builder.expect("header seen").build())
}

/// Serializes `g`; weights other than 1 get an `n` line.
pub fn write_graph(g: &Graph, comments: &[String]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "c {c}");
    }
    let _ = writeln!(s, "p mwss {} {}", g.n(), g.m());
    for v in g.nodes() {
        if g.weight(v) != 1 {
            let _ = writeln!(s, "n {} {}", v + 1, g.weight(v));
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "e {} {}", u + 1, v + 1);
    }
    s
}

#[derive(Debug, Parser)]
#[command(
    name = "clawnet",
    version,
    about = "Maximum weight stable sets in claw-free, net-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance; prints `value W` and `set ids...`.
    Solve {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Compare with the exhaustive oracle (graphs with at most 24 nodes).
        #[arg(long)]
        oracle_check: bool,
        /// Skip the claw and net detectors.
        #[arg(long)]
        trust: bool,
    },
    /// Report claw and net witnesses.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the strip decomposition of every component as JSON.
    Decompose {
        file: PathBuf,
        /// Add the canonical moves, square elimination log and orders.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = crate::decompose::DEFAULT_CERTIFY_LIMIT)]
        certify_limit: usize,
    },
    /// Canonicalize the ascending greedy maximal stable set.
    Canonicalize {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate an instance.
    Gen(GenArgs),
    /// Solve by branch and bound.
    Oracle {
        file: PathBuf,
        /// Size limit; overrides MWSS_ORACLE_LIMIT.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Time the solver on strip instances of growing size.
    Bench {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [1000, 4000, 16000, 64000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
    /// Check solver invariants on generated instances.
    Selftest {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Strip,
    Rejection,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WeightArg {
    Unit,
    Random,
    Ties,
}

#[derive(Debug, clap::Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Strip)]
    mode: ModeArg,
    #[arg(long, default_value_t = 20)]
    nodes: usize,
    #[arg(long, default_value_t = 2)]
    clique_min: usize,
    #[arg(long, default_value_t = 4)]
    clique_max: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, value_enum, default_value_t = WeightArg::Unit)]
    weights: WeightArg,
    #[arg(long, default_value_t = 1)]
    lo: Weight,
    #[arg(long, default_value_t = 100)]
    hi: Weight,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl GenArgs {
    fn spec(&self) -> GenSpec {
        GenSpec {
            seed: self.seed,
            mode: match self.mode {
                ModeArg::Strip => GenMode::StripBuild,
                ModeArg::Rejection => GenMode::Rejection,
            },
            nodes: self.nodes,
            clique_min: self.clique_min,
            clique_max: self.clique_max,
            density: self.density,
            weights: match self.weights {
                WeightArg::Unit => WeightRegime::Unit,
                WeightArg::Random => WeightRegime::Random {
                    lo: self.lo,
                    hi: self.hi,
                },
                WeightArg::Ties => WeightRegime::Ties,
            },
        }
    }
}

/// Failure of a subcommand with its exit code.
struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_contract_violation() { 1 } else { 2 },
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 2,
            msg: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: 2,
            msg: e.to_string(),
        }
    }
}

fn violation(msg: String) -> Failure {
    Failure { code: 1, msg }
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    parse_graph(&text)
}

fn one_based(set: &NodeSet) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

fn join(ids: &[usize]) -> String {
    ids.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn witness_ids(w: &PatternWitness) -> Vec<usize> {
    w.nodes.iter().map(|v| v + 1).collect()
}

fn detect(g: &Graph) -> Result<(), Failure> {
    if let Some(w) = find_claw(g).or_else(|| find_net(g)) {
        return Err(violation(format!(
            "input is not claw/net-free: {:?} {}",
            w.kind,
            join(&witness_ids(&w))
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct SolutionJson {
    value: Weight,
    set: Vec<usize>,
    route: Route,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleCheck>,
}

#[derive(Serialize)]
struct OracleCheck {
    value: Weight,
    agrees: bool,
}

fn print_json(out: &mut dyn Write, v: &impl Serialize) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn cmd_solve(
    out: &mut dyn Write,
    file: &PathBuf,
    json: bool,
    oracle_check: bool,
    trust: bool,
) -> Result<(), Failure> {
    let g = read_graph(file)?;
    if !trust {
        detect(&g)?;
    }
    let (sol, _) = solve_with(&g, SolveOptions::default())?;
    let oracle = if oracle_check && g.n() <= ENUMERATION_LIMIT {
        let o = crate::oracle::enumerate_mwss(&g)?;
        Some(OracleCheck {
            value: o.value,
            agrees: o.value == sol.value,
        })
    } else {
        None
    };
    if json {
        let report = SolutionJson {
            value: sol.value,
            set: one_based(&sol.set),
            route: sol.route,
            n: g.n(),
            m: g.m(),
            oracle,
        };
        print_json(out, &report)?;
        if let Some(o) = &report.oracle {
            if !o.agrees {
                return Err(violation(format!(
                    "oracle value {} differs from {}",
                    o.value, sol.value
                )));
            }
        }
    } else {
        writeln!(out, "value {}", sol.value)?;
        writeln!(out, "set {}", join(&one_based(&sol.set)))?;
        if let Some(o) = oracle {
            if !o.agrees {
                return Err(violation(format!(
                    "oracle value {} differs from {}",
                    o.value, sol.value
                )));
            }
            writeln!(out, "oracle {} match", o.value)?;
        } else if oracle_check {
            writeln!(out, "oracle skipped: more than {ENUMERATION_LIMIT} nodes")?;
        }
    }
    Ok(())
}

fn cmd_check(out: &mut dyn Write, file: &PathBuf, json: bool) -> Result<(), Failure> {
    let g = read_graph(file)?;
    let claw = find_claw(&g);
    let net = find_net(&g);
    let ok = claw.is_none() && net.is_none();
    if json {
        let report = json!({
            "claw": claw.as_ref().map(witness_ids),
            "net": net.as_ref().map(witness_ids),
            "ok": ok,
        });
        print_json(out, &report)?;
    } else {
        for (name, w) in [("claw", &claw), ("net", &net)] {
            match w {
                Some(w) => writeln!(out, "{name} {}", join(&witness_ids(w)))?,
                None => writeln!(out, "{name} none")?,
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(violation("input is not claw/net-free".into()))
    }
}

fn map_move(m: &CanonicalMove, id: &dyn Fn(usize) -> usize) -> Value {
    match *m {
        CanonicalMove::Augment { s, x, y } => {
            json!({"op": "augment", "s": id(s), "x": id(x), "y": id(y)})
        }
        CanonicalMove::Alternate { s, x } => json!({"op": "alternate", "s": id(s), "x": id(x)}),
    }
}

fn map_action(a: &StageAction, id: &dyn Fn(usize) -> usize) -> Value {
    match a {
        StageAction::Remove { a, dropped } => json!({
            "action": "remove",
            "a": id(*a),
            "dropped": dropped.iter().map(|&v| id(v)).collect::<Vec<_>>(),
        }),
        StageAction::KillC4 {
            a_max,
            a2,
            b1,
            b2,
            added,
        } => json!({
            "action": "kill_c4",
            "a_max": id(*a_max),
            "a2": id(*a2),
            "b1": id(*b1),
            "b2": id(*b2),
            "added": [id(added.0), id(added.1)],
        }),
        StageAction::KillDiags { a, spared, added } => json!({
            "action": "kill_diags",
            "a": id(*a),
            "spared": id(*spared),
            "added": added.iter().map(|&v| id(v)).collect::<Vec<_>>(),
        }),
    }
}

/// Decomposition report with every id mapped back to the input graph.
pub fn decomposition_json(g: &Graph, trace: &SolveTrace, detailed: bool) -> Value {
    let original = |r: usize| trace.positive.as_slice()[trace.twins.kept[r]] + 1;
    let components: Vec<Value> = trace
        .components
        .iter()
        .map(|c| {
            let local = |v: usize| original(c.nodes.as_slice()[v]);
            let ids = |s: &NodeSet| s.iter().map(local).collect::<Vec<_>>();
            let mut entry = json!({
                "nodes": c.nodes.iter().map(original).collect::<Vec<_>>(),
                "route": c.route,
                "value": c.value,
            });
            if let Some(run) = &c.run {
                let d = &run.decomposition;
                let mut p = json!({
                    "seed": ids(&run.seed),
                    "canonical": ids(&run.canonical.stable_set()),
                    "canonical_steps": run.canonical.steps(),
                    "wing_graph": {
                        "shape": d.wing_graph.shape,
                        "order": d.wing_graph.order.iter().map(|&v| local(v)).collect::<Vec<_>>(),
                    },
                    "q": ids(&d.q),
                    "anchor": {
                        "index": d.anchor.index,
                        "node": local(d.anchor.node),
                        "case": d.anchor.case,
                        "source": d.anchor.source,
                    },
                    "x": ids(&d.x),
                    "y": ids(&d.y),
                    "kind": d.kind,
                    "strips": d.strips.iter().map(|s| s.iter().map(ids).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "dp_passes": run.dp_passes,
                    "chosen_x": run.chosen_x.map(local),
                });
                if detailed {
                    let to_comp = |v: usize| local(run.interval.to_parent[v]);
                    p["trace"] = json!({
                        "canonical_moves": run.canonical.history().iter().map(|m| map_move(m, &local)).collect::<Vec<_>>(),
                        "added_edges": run.interval.added.iter().map(|&(u, v)| [local(u), local(v)]).collect::<Vec<_>>(),
                        "stages": run.interval.pairs.iter().map(|pl| json!({
                            "strip": pl.strip,
                            "layer": pl.layer,
                            "actions": pl.actions.iter().map(|a| map_action(a, &local)).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                        "order": run.order.order.iter().map(|&v| to_comp(v)).collect::<Vec<_>>(),
                    });
                }
                entry["pipeline"] = p;
            }
            entry
        })
        .collect();
    json!({
        "n": g.n(),
        "m": g.m(),
        "components": components,
    })
}

fn cmd_decompose(
    out: &mut dyn Write,
    file: &PathBuf,
    detailed: bool,
    certify_limit: usize,
) -> Result<(), Failure> {
    let g = read_graph(file)?;
    detect(&g)?;
    let opts = SolveOptions {
        decompose: DecomposeOptions { certify_limit },
        keep_trace: true,
    };
    let (_, trace) = solve_with(&g, opts)?;
    let trace = trace.expect("trace requested");
    print_json(out, &decomposition_json(&g, &trace, detailed))
}

fn cmd_canonicalize(out: &mut dyn Write, file: &PathBuf, json: bool) -> Result<(), Failure> {
    let g = read_graph(file)?;
    let st = greedy_maximal_stable_set(&g);
    let initial = st.stable_set();
    let st = canonicalize(&g, st)?;
    let bound = 50 * (g.n() + g.m()) as u64;
    if let Some(s) = canonical_violation(&g, &st) {
        return Err(violation(format!(
            "node {} still violates canonicity",
            s + 1
        )));
    }
    let id = |v: usize| v + 1;
    if json {
        let report = json!({
            "initial": one_based(&initial),
            "canonical": one_based(&st.stable_set()),
            "moves": st.history().iter().map(|m| map_move(m, &id)).collect::<Vec<_>>(),
            "steps": st.steps(),
            "step_bound": bound,
        });
        print_json(out, &report)?;
    } else {
        writeln!(out, "initial {}", join(&one_based(&initial)))?;
        writeln!(out, "canonical {}", join(&one_based(&st.stable_set())))?;
        writeln!(out, "moves {}", st.history().len())?;
        writeln!(out, "steps {} bound {bound}", st.steps())?;
    }
    Ok(())
}

fn cmd_gen(out: &mut dyn Write, args: &GenArgs) -> Result<(), Failure> {
    let spec = args.spec();
    let g = generate(&spec)?;
    let comments = vec![
        "generated by clawnet gen".to_string(),
        format!("rng {RNG_NAME} seed {}", spec.seed),
        format!("params {}", serde_json::to_string(&spec)?),
    ];
    let text = write_graph(&g, &comments);
    match &args.output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_oracle(
    out: &mut dyn Write,
    file: &PathBuf,
    limit: Option<usize>,
    json: bool,
) -> Result<(), Failure> {
    let g = read_graph(file)?;
    let s = oracle_mwss_with_limit(&g, limit.unwrap_or_else(configured_limit))?;
    if json {
        print_json(out, &json!({"value": s.value, "set": one_based(&s.set)}))?;
    } else {
        writeln!(out, "value {}", s.value)?;
        writeln!(out, "set {}", join(&one_based(&s.set)))?;
    }
    Ok(())
}

/// Median solve time in seconds over `reps` instances of size `n`.
pub fn bench_median(n: usize, seed: u64, reps: usize) -> Result<(f64, usize)> {
    let mut times = Vec::with_capacity(reps);
    let mut edges = 0;
    for r in 0..reps.max(1) {
        let g = generate(&GenSpec::scaling(n, seed.wrapping_add(r as u64)))?;
        edges = g.m();
        let t = Instant::now();
        crate::solver::solve(&g)?;
        times.push(t.elapsed().as_secs_f64());
    }
    times.sort_by(f64::total_cmp);
    Ok((times[times.len() / 2], edges))
}

fn cmd_bench(out: &mut dyn Write, seed: u64, sizes: &[usize], reps: usize) -> Result<(), Failure> {
    writeln!(
        out,
        "{:>8} {:>9} {:>12} {:>7}",
        "n", "m", "median_ms", "ratio"
    )?;
    let mut prev: Option<f64> = None;
    for &n in sizes {
        let (t, m) = bench_median(n, seed, reps)?;
        let ratio = prev.map_or("-".to_string(), |p| format!("{:.2}", t / p));
        writeln!(out, "{n:>8} {m:>9} {:>12.2} {ratio:>7}", t * 1e3)?;
        prev = Some(t);
    }
    Ok(())
}

/// Invariant violations found on one instance.
fn audit(g: &Graph) -> Result<Vec<String>> {
    let mut issues = Vec::new();
    if let Some(w) = find_claw(g).or_else(|| find_net(g)) {
        issues.push(format!("generator emitted {w}"));
        return Ok(issues);
    }
    let (sol, trace) = solve_with(
        g,
        SolveOptions {
            keep_trace: true,
            ..SolveOptions::default()
        },
    )?;
    if !g.is_stable(sol.set.as_slice()) || g.total_weight(&sol.set) != sol.value {
        issues.push("solution set invalid".into());
    }
    let oracle = oracle_mwss_with_limit(g, 64)?;
    if oracle.value != sol.value {
        issues.push(format!("value {} but oracle {}", sol.value, oracle.value));
    }
    for c in trace.expect("trace requested").components {
        let Some(run) = c.run else { continue };
        let h = &run.graph;
        if canonical_violation(h, &run.canonical).is_some() {
            issues.push("canonical set has a violation".into());
        }
        if run.canonical.steps() > 50 * (h.n() + h.m()) as u64 {
            issues.push("canonical step bound exceeded".into());
        }
        if let Some(w) = find_claw(&run.interval.graph) {
            issues.push(format!("transformed graph has {w}"));
        }
        if verify_consistent(&run.interval.graph, &run.order).is_some() {
            issues.push("order is not consistent".into());
        }
    }
    Ok(issues)
}

fn cmd_selftest(out: &mut dyn Write, seed: u64, count: usize) -> Result<(), Failure> {
    let mut failures = 0;
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let spec = GenSpec {
            seed: s,
            mode: if i % 2 == 0 {
                GenMode::StripBuild
            } else {
                GenMode::Rejection
            },
            nodes: 6 + (i as usize % 17),
            clique_min: 1,
            clique_max: 4,
            density: 0.2 + 0.1 * (i % 9) as f64,
            weights: match i % 3 {
                0 => WeightRegime::Unit,
                1 => WeightRegime::Random { lo: 1, hi: 100 },
                _ => WeightRegime::Ties,
            },
        };
        let g = generate(&spec)?;
        let issues = match audit(&g) {
            Ok(issues) => issues,
            Err(e) => vec![e.to_string()],
        };
        for issue in &issues {
            writeln!(out, "seed {s}: {issue}")?;
        }
        failures += usize::from(!issues.is_empty());
    }
    writeln!(out, "selftest: {count} instances, {failures} failing")?;
    if failures > 0 {
        return Err(violation(format!(
            "{failures} instances violate invariants"
        )));
    }
    Ok(())
}

/// Runs the command line `args` (including the program name). Returns the
/// exit code: 0 on success, 1 on a contract violation, 2 on usage, parse or
/// I/O errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Solve {
            file,
            json,
            oracle_check,
            trust,
        } => cmd_solve(out, file, *json, *oracle_check, *trust),
        Command::Check { file, json } => cmd_check(out, file, *json),
        Command::Decompose {
            file,
            trace,
            certify_limit,
        } => cmd_decompose(out, file, *trace, *certify_limit),
        Command::Canonicalize { file, json } => cmd_canonicalize(out, file, *json),
        Command::Gen(args) => cmd_gen(out, args),
        Command::Oracle { file, limit, json } => cmd_oracle(out, file, *limit, *json),
        Command::Bench { seed, sizes, reps } => cmd_bench(out, *seed, sizes, *reps),
        Command::Selftest { seed, count } => cmd_selftest(out, *seed, *count),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
