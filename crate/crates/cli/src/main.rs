//! `symrep`: command-line front end for the invariant-representativeness
//! toolkit.
//!
//! Exit status is 0 on success or a passing check, 1 when a check's verdict
//! is `fail`, and 2 on input errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use symrep::aut::automorphisms;
use symrep::constructions::FamilySpec;
use symrep::hitting::min_hitting_set;
use symrep::io::{parse_graph, serialize_graph, ActionFile};
use symrep::occurrences::enumerate_occurrences;
use symrep::representativeness::{plain_representativeness, representativeness};
use symrep::symmetrize::symmetrize;
use symrep::theory_checks::{self as tc, CheckReport, Prop1Case};
use symrep::{Graph, Mode};

#[derive(Parser)]
#[command(name = "symrep", version, about = "Invariant systems of representatives for graphs and group actions")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum number of vertices (or edges) meeting every pattern occurrence
    Rep {
        #[arg(long)]
        host: PathBuf,
        #[arg(long = "pattern", required = true)]
        patterns: Vec<PathBuf>,
        #[arg(long, default_value = "vertex")]
        mode: Mode,
        /// Also compute the value over automorphism-invariant sets.
        #[arg(long)]
        symmetric: bool,
    },
    /// Orbits of a permutation action file, or of a graph's automorphism group
    Orbits {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        action: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Automorphism group: generators, order and orbits
    Aut {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Pattern occurrences as vertex or edge sets
    Occ {
        #[arg(long)]
        host: PathBuf,
        #[arg(long = "pattern", required = true)]
        patterns: Vec<PathBuf>,
        #[arg(long, default_value = "vertex")]
        mode: Mode,
    },
    /// Turn a transversal into an invariant one; a minimum transversal is used when the file has none
    Symmetrize {
        #[arg(long)]
        action: PathBuf,
    },
    /// Write a named construction in graph format
    Gen {
        /// One of the construction names; see `--list`.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// Integer parameters as key=value, e.g. `l=4 m=2`.
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
    /// Place a simple undirected graph in the chair-free classification
    Classify {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run a check and report its verdict
    Check {
        #[command(subcommand)]
        check: CheckCmd,
    },
    /// Symmetrize a minimum transversal of the "mars" 5-subset family of a digraph
    MarsDemo {
        #[arg(long)]
        host: PathBuf,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// value <= symmetric value <= bound factor * value
    Corollary1 {
        #[arg(long)]
        host: PathBuf,
        #[arg(long = "pattern", required = true)]
        patterns: Vec<PathBuf>,
        #[arg(long, default_value = "vertex")]
        mode: Mode,
    },
    /// Extremal copies of the completion of K
    Theorem1 {
        #[arg(long)]
        k: PathBuf,
        #[arg(long)]
        m: usize,
        /// Join consecutive copies by chains.
        #[arg(long)]
        connected: bool,
    },
    /// Bound for a pattern with two components
    DisconnectedBound {
        #[arg(long)]
        k1: PathBuf,
        #[arg(long)]
        k2: PathBuf,
        #[arg(long)]
        host: PathBuf,
    },
    /// Chair-free graphs against the structural classes, exhaustively
    Lemma1 {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Search for the 5-vertex graph characterising the structural classes
    FindLemma1 {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Chair in a vertex-transitive host; `--catalog` runs the bundled hosts
    Theorem2 {
        #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
        host: Option<PathBuf>,
        #[arg(long)]
        catalog: bool,
    },
    /// Closed forms for stars and edge-transitive patterns
    Proposition1(Prop1Args),
    /// Two disjoint edges in K_{2,m}
    #[command(name = "2k2")]
    TwoK2 {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args)]
struct Prop1Args {
    /// no-hanging-edges | directed-star | path-star | claw-honeycomb | large-star
    #[arg(long)]
    case: String,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Pattern file for no-hanging-edges.
    #[arg(long)]
    k: Option<PathBuf>,
    #[arg(long)]
    connected: bool,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("in {}", path.display()))
}

fn read_graphs(paths: &[PathBuf]) -> Result<Vec<Graph>> {
    paths.iter().map(|p| read_graph(p)).collect()
}

fn read_action(path: &Path) -> Result<ActionFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ActionFile::from_json(&text).with_context(|| format!("in {}", path.display()))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", text());
    }
    Ok(())
}

fn fmt_sets(sets: &[Vec<usize>]) -> String {
    sets.iter().map(|s| format!("  {s:?}\n")).collect()
}

fn report_text(r: &CheckReport) -> String {
    let mut out = format!("{}: {}\n  {}\n", r.check, r.instance, r.relation);
    for (k, v) in &r.quantities {
        out += &format!("  {k} = {v}\n");
    }
    for (k, v) in &r.witnesses {
        out += &format!("  {k}: {v:?}\n");
    }
    for note in &r.notes {
        out += &format!("  {note}\n");
    }
    out + &format!("verdict: {}\n", r.verdict)
}

/// Prints the reports and returns whether all of them passed.
fn emit_reports(json: bool, reports: &[CheckReport]) -> Result<bool> {
    if json {
        match reports {
            [one] => println!("{}", serde_json::to_string_pretty(one)?),
            many => println!("{}", serde_json::to_string_pretty(many)?),
        }
    } else {
        print!("{}", reports.iter().map(report_text).collect::<Vec<_>>().join("\n"));
    }
    Ok(reports.iter().all(CheckReport::passed))
}

#[derive(Serialize)]
struct PlainRep {
    mode: Mode,
    value: u64,
    witness: Vec<usize>,
    nodes_explored: u64,
}

#[derive(Serialize)]
struct OccReport {
    mode: Mode,
    bound_factor: usize,
    count: usize,
    sets: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct GraphReport {
    directed: bool,
    loops: bool,
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, usize>> {
    raw.iter()
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| anyhow!("parameter `{kv}` is not key=value"))?;
            let v = v.parse().with_context(|| format!("parameter `{k}` needs a non-negative integer"))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

fn prop1_case(a: &Prop1Args) -> Result<Prop1Case> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("case `{}` needs --{name}", a.case));
    Ok(match a.case.as_str() {
        "no-hanging-edges" => {
            let path = a.k.as_ref().ok_or_else(|| anyhow!("case `no-hanging-edges` needs --k"))?;
            Prop1Case::NoHangingEdges { k: read_graph(path)?, m: need(a.m, "m")?, connected: a.connected }
        }
        "directed-star" => Prop1Case::DirectedStar { l: need(a.l, "l")?, m: need(a.m, "m")? },
        "path-star" => Prop1Case::PathStar { l: need(a.l, "l")?, m: need(a.m, "m")? },
        "claw-honeycomb" => Prop1Case::ClawHoneycomb { n: need(a.n, "n")? },
        "large-star" => Prop1Case::LargeStar { l: need(a.l, "l")?, m: need(a.m, "m")? },
        other => bail!("unknown case `{other}`"),
    })
}

fn run_check(json: bool, check: CheckCmd) -> Result<bool> {
    let reports = match check {
        CheckCmd::Corollary1 { host, patterns, mode } => {
            vec![tc::check_corollary1(&read_graph(&host)?, &read_graphs(&patterns)?, mode)?]
        }
        CheckCmd::Theorem1 { k, m, connected } => vec![tc::check_theorem1(&read_graph(&k)?, m, connected)?],
        CheckCmd::DisconnectedBound { k1, k2, host } => {
            vec![tc::check_disconnected_bound(&read_graph(&k1)?, &read_graph(&k2)?, &read_graph(&host)?)?]
        }
        CheckCmd::Lemma1 { nmax } => vec![tc::check_lemma1_exhaustive(nmax)?],
        CheckCmd::FindLemma1 { nmax } => vec![tc::find_lemma1_graph_report(nmax)?],
        CheckCmd::Theorem2 { host: Some(host), .. } => vec![tc::check_theorem2(&read_graph(&host)?)?],
        CheckCmd::Theorem2 { host: None, .. } => tc::theorem2_catalog()
            .into_iter()
            .map(|(name, g)| tc::check_theorem2(&g).with_context(|| format!("catalog host {name}")))
            .collect::<Result<_>>()?,
        CheckCmd::Proposition1(args) => vec![tc::check_proposition1(&prop1_case(&args)?)?],
        CheckCmd::TwoK2 { m } => vec![tc::check_2k2_example(m)?],
    };
    emit_reports(json, &reports)
}

fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    match cli.command {
        Command::Rep { host, patterns, mode, symmetric } => {
            let (host, patterns) = (read_graph(&host)?, read_graphs(&patterns)?);
            if symmetric {
                let r = representativeness(&host, &patterns, mode)?;
                emit(json, &r, || {
                    format!(
                        "value {}\nsymmetric {}\nbound factor {}\noccurrences {}\nwitness {:?}\nsymmetric witness {:?}\n",
                        r.value, r.symmetric_value, r.bound_factor, r.occurrences, r.witness, r.symmetric_witness
                    )
                })?;
            } else {
                let h = plain_representativeness(&host, &patterns, mode)?;
                let r = PlainRep { mode, value: h.size, witness: h.witness, nodes_explored: h.nodes_explored };
                emit(json, &r, || format!("value {}\nwitness {:?}\n", r.value, r.witness))?;
            }
        }
        Command::Orbits { action: Some(path), .. } => {
            let orbits = read_action(&path)?.action()?.orbits();
            emit(json, &orbits, || fmt_sets(orbits.classes()))?;
        }
        Command::Orbits { graph, .. } => {
            let graph = graph.expect("clap requires one of --action/--graph");
            let aut = automorphisms(&read_graph(&graph)?)?;
            let report = serde_json::json!({
                "vertex_orbits": aut.vertex_orbits,
                "edge_orbits": aut.edge_orbits,
            });
            emit(json, &report, || {
                format!("vertex orbits\n{}edge orbits\n{}", fmt_sets(aut.vertex_orbits.classes()), fmt_sets(aut.edge_orbits.classes()))
            })?;
        }
        Command::Aut { graph } => {
            let aut = automorphisms(&read_graph(&graph)?)?;
            emit(json, &aut, || {
                let gens: String = aut.generators.iter().map(|g| format!("  {:?}\n", g.images())).collect();
                format!(
                    "order {}\ngenerators\n{gens}vertex orbits\n{}edge orbits\n{}",
                    aut.order,
                    fmt_sets(aut.vertex_orbits.classes()),
                    fmt_sets(aut.edge_orbits.classes())
                )
            })?;
        }
        Command::Occ { host, patterns, mode } => {
            let host = read_graph(&host)?;
            let occ = enumerate_occurrences(&host, &read_graphs(&patterns)?, mode)?;
            let r = OccReport { mode, bound_factor: occ.bound_factor(), count: occ.sets.len(), sets: occ.sets.sets().to_vec() };
            emit(json, &r, || format!("{} occurrence(s)\n{}", r.count, fmt_sets(&r.sets)))?;
        }
        Command::Symmetrize { action } => {
            let file = read_action(&action)?;
            let (act, fam) = (file.action()?, file.family()?);
            let x = if file.transversal.is_empty() { min_hitting_set(&fam).witness } else { file.transversal()? };
            let r = symmetrize(&act, &fam, &x)?;
            emit(json, &r, || {
                let sums: String = r.neumann_sums.iter().map(|t| format!("  {:?}: {}\n", t.set, t.sum)).collect();
                format!("X {x:?}\nY {:?}\n|Y| = {} <= {} = m|X|\nNeumann sums\n{sums}", r.y, r.y.len(), r.bound)
            })?;
        }
        Command::Gen { list: true, .. } => {
            emit(json, &FamilySpec::NAMES, || FamilySpec::NAMES.join("\n") + "\n")?;
        }
        Command::Gen { name, params, out, .. } => {
            let spec = FamilySpec { name: name.expect("clap requires a name"), params: parse_params(&params)? };
            let g = spec.build()?;
            let text = serialize_graph(&g);
            match out {
                Some(path) => fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?,
                None => {
                    let r = GraphReport {
                        directed: g.is_directed(),
                        loops: g.kind().loops_allowed,
                        vertices: g.vertex_count(),
                        edges: g.edges().to_vec(),
                    };
                    emit(json, &r, || text)?;
                }
            }
        }
        Command::Classify { graph } => {
            let class = tc::lemma1_classify(&read_graph(&graph)?)?;
            emit(json, &serde_json::json!({ "class": class }), || format!("{class:?}\n"))?;
        }
        Command::Check { check } => return run_check(json, check),
        Command::MarsDemo { host } => return emit_reports(json, &[tc::mars_demo(&read_graph(&host)?)?]),
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
