use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use interval_dps::das::build_das;
use interval_dps::dps::build_dps;
use interval_dps::experiment::{run_experiment, to_csv, ExperimentConfig};
use interval_dps::graph::Graph;
use interval_dps::instance::Instance;
use interval_dps::instances::families::{gen_gset, gen_gzero, gen_hard, SetCoverInstance};
use interval_dps::instances::manhattan::{gen_gint, gen_manhattan};
use interval_dps::instances::{gen_random, Flavor};
use interval_dps::io::{
    digraph_dot, graph_dot, instance_dot, parse_any, subgraph_dot, to_json, AnyFile, DigraphFile, GraphFile,
    InstanceFile, Meta, SubgraphFile,
};
use interval_dps::oracle::{min_branching_das, min_branching_dps, min_set_cover, SearchBudget};
use interval_dps::subgraph::{verify_approx, Subgraph};

#[derive(Parser)]
#[command(name = "interval-dps", version, about = "Distance-preserving subgraphs of interval graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Hard,
    Manhattan,
    Gint,
    Gzero,
    Gset,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Das,
    Dps,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Dps,
    Das,
    Setcover,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance file.
    Gen {
        family: Family,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Flavor::General)]
        flavor: Flavor,
        /// Subsets for `gset`, e.g. "1,2;2,3".
        #[arg(long)]
        sets: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an approximating (das) or preserving (dps) subgraph and verify it.
    Build {
        mode: Mode,
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a subgraph file against an instance.
    Verify {
        input: PathBuf,
        subgraph: PathBuf,
        #[arg(long, default_value_t = 0)]
        slack: u32,
    },
    /// Exact minimum by exhaustive search.
    Oracle {
        kind: OracleKind,
        /// Instance or graph file; for `setcover` use --sets instead.
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        slack: u32,
        #[arg(long, default_value_t = 64)]
        budget_edges: usize,
        #[arg(long, default_value_t = 120)]
        timeout_secs: u64,
        /// Count terminal branching vertices as well.
        #[arg(long)]
        count_terminals: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        sets: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Branching-count sweep over random instances, written as CSV.
    Experiment {
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 8, 16, 32, 64, 128])]
        k: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Flavor::UnitPoint)]
        flavor: Flavor,
        #[arg(long)]
        check_levels: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a file to DOT or normalized JSON.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Host instance, needed to label a subgraph file.
        #[arg(long)]
        host: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_any(p: &PathBuf) -> anyhow::Result<AnyFile> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    Ok(parse_any(&text).with_context(|| format!("parsing {}", p.display()))?)
}

fn read_instance(p: &PathBuf) -> anyhow::Result<Instance> {
    match read_any(p)? {
        AnyFile::Instance(f) => Ok(f.to_instance()?),
        _ => bail!("{} is not an interval instance file", p.display()),
    }
}

fn parse_sets(n: Option<usize>, spec: &str) -> anyhow::Result<SetCoverInstance> {
    let mut sets = Vec::new();
    for part in spec.split(';') {
        let s = part
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad element {t:?}")))
            .collect::<anyhow::Result<Vec<_>>>()?;
        sets.push(s);
    }
    let n = n.unwrap_or_else(|| sets.iter().flatten().copied().max().unwrap_or(0));
    Ok(SetCoverInstance::new(n, sets)?)
}

fn counts_line<G: Graph>(g: &G) -> String {
    format!("vertices={} edges={} terminals={}", g.vertex_count(), g.edge_count(), g.terminals().len())
}

fn cmd_gen(
    family: Family,
    k: usize,
    n: usize,
    seed: u64,
    flavor: Flavor,
    sets: Option<String>,
    out: &Option<PathBuf>,
) -> anyhow::Result<bool> {
    let meta = |name: &str| Meta { name: Some(name.to_string()), seed: None };
    let (json, summary) = match family {
        Family::Manhattan => {
            let d = gen_manhattan(k)?;
            let s = format!("vertices={} edges={} terminals={}", d.vertex_count(), d.edge_count(), d.terminals().len());
            (to_json(&DigraphFile::from_digraph(&d)), s)
        }
        Family::Gset => {
            let sc = parse_sets(None, sets.as_deref().unwrap_or("1"))?;
            let (g, _) = gen_gset(&sc)?;
            (to_json(&GraphFile::from_graph(&g, meta("gset"))), counts_line(&g))
        }
        _ => {
            let (g, name, seed) = match family {
                Family::Hard => (gen_hard(k)?, "hard", None),
                Family::Gint => (gen_gint(k)?, "gint", None),
                Family::Gzero => (gen_gzero(k)?.0, "gzero", None),
                _ => (gen_random(n, k, seed, flavor)?, "random", Some(seed)),
            };
            let nt = g.len() - g.terminals().len();
            let s = format!("{} non-terminals={nt}", counts_line(&g));
            (to_json(&InstanceFile::from_instance(&g, Meta { name: Some(name.into()), seed })), s)
        }
    };
    emit(out, &(json + "\n"))?;
    eprintln!("{summary}");
    Ok(true)
}

fn cmd_build(mode: Mode, input: &PathBuf, out: &Option<PathBuf>) -> anyhow::Result<bool> {
    let g = read_instance(input)?;
    let k = g.terminals().len();
    let (h, slack) = match mode {
        Mode::Das => (build_das(&g)?.subgraph, 1),
        Mode::Dps => (build_dps(&g)?.subgraph, 0),
    };
    let rep = verify_approx(&g, &h, slack)?;
    emit(out, &(to_json(&SubgraphFile::from_subgraph(&h)) + "\n"))?;
    let label = if slack == 0 { "preserving" } else { "approximating(+1)" };
    eprintln!(
        "terminals={k} edges={} branching_vertices={} branching_edges={}",
        h.edge_count(),
        h.branching_vertices().0,
        h.branching_edges()
    );
    eprintln!("{label}: {}", if rep.ok { "ok" } else { "FAILED" });
    Ok(rep.ok)
}

fn cmd_verify(input: &PathBuf, sub: &PathBuf, slack: u32) -> anyhow::Result<bool> {
    let g = read_instance(input)?;
    let h = match read_any(sub)? {
        AnyFile::Subgraph(f) => f.to_subgraph(&g)?,
        _ => bail!("{} is not a subgraph file", sub.display()),
    };
    let rep = verify_approx(&g, &h, slack)?;
    println!("{}", to_json(&rep));
    eprintln!("slack {slack}: {}", if rep.ok { "ok" } else { "FAILED" });
    Ok(rep.ok)
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    kind: OracleKind,
    input: &Option<PathBuf>,
    slack: u32,
    budget: SearchBudget,
    count_terminals: bool,
    n: Option<usize>,
    sets: &Option<String>,
    out: &Option<PathBuf>,
) -> anyhow::Result<bool> {
    if let OracleKind::Setcover = kind {
        let sc = parse_sets(n, sets.as_deref().context("--sets is required")?)?;
        match min_set_cover(&sc) {
            Some(c) => println!("min_set_cover={c}"),
            None => println!("min_set_cover=inf"),
        }
        return Ok(true);
    }
    let path = input.as_ref().context("an input file is required")?;
    let result = match (read_any(path)?, kind) {
        (AnyFile::Instance(f), OracleKind::Das) => {
            let g = f.to_instance()?;
            let r = min_branching_das(&g, slack, &budget)?;
            (verify_approx(&g, &r.witness, slack)?.ok, r)
        }
        (AnyFile::Instance(f), _) => {
            let g = f.to_instance()?;
            let r = min_branching_dps(&g, count_terminals, &budget)?;
            (verify_approx(&g, &r.witness, 0)?.ok, r)
        }
        (AnyFile::Graph(f), OracleKind::Dps) => {
            let g = f.to_graph()?;
            let r = min_branching_dps(&g, count_terminals, &budget)?;
            (verify_approx(&g, &r.witness, 0)?.ok, r)
        }
        (AnyFile::Graph(f), _) => {
            let g = f.to_graph()?;
            let r = min_branching_das(&g, slack, &budget)?;
            (verify_approx(&g, &r.witness, slack)?.ok, r)
        }
        _ => bail!("{} is not an instance or graph file", path.display()),
    };
    let (ok, r) = result;
    emit(out, &(to_json(&SubgraphFile::from_subgraph(&r.witness)) + "\n"))?;
    eprintln!("min={} candidate_edges={} states={} witness: {}", r.min, r.candidate_edges, r.states, if ok { "ok" } else { "FAILED" });
    Ok(ok)
}

fn cmd_export(input: &PathBuf, format: Format, host: &Option<PathBuf>, out: &Option<PathBuf>) -> anyhow::Result<bool> {
    let file = read_any(input)?;
    let text = match format {
        Format::Json => match &file {
            AnyFile::Instance(f) => to_json(&InstanceFile::from_instance(&f.to_instance()?, f.meta.clone())),
            AnyFile::Graph(f) => to_json(&GraphFile::from_graph(&f.to_graph()?, f.meta.clone())),
            AnyFile::Digraph(f) => to_json(&DigraphFile::from_digraph(&f.to_digraph()?)),
            AnyFile::Subgraph(f) => to_json(f),
        },
        Format::Dot => match &file {
            AnyFile::Instance(f) => instance_dot(&f.to_instance()?),
            AnyFile::Graph(f) => graph_dot(&f.to_graph()?),
            AnyFile::Digraph(f) => digraph_dot(&f.to_digraph()?),
            AnyFile::Subgraph(f) => {
                let hp = host.as_ref().context("--host is required to export a subgraph")?;
                let g = read_instance(hp)?;
                let h: Subgraph = f.to_subgraph(&g)?;
                subgraph_dot(&h, |v| g.interval(v).to_string())
            }
        },
    };
    emit(out, &(text.trim_end().to_string() + "\n"))?;
    Ok(true)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Gen { family, k, n, seed, flavor, sets, out } => cmd_gen(family, k, n, seed, flavor, sets, &out),
        Cmd::Build { mode, input, out } => cmd_build(mode, &input, &out),
        Cmd::Verify { input, subgraph, slack } => cmd_verify(&input, &subgraph, slack),
        Cmd::Oracle { kind, input, slack, budget_edges, timeout_secs, count_terminals, n, sets, out } => {
            let budget = SearchBudget {
                max_candidate_edges: budget_edges,
                timeout: Duration::from_secs(timeout_secs),
                ..SearchBudget::default()
            };
            cmd_oracle(kind, &input, slack, budget, count_terminals, n, &sets, &out)
        }
        Cmd::Experiment { k, trials, seed, flavor, check_levels, out } => {
            let cfg = ExperimentConfig { ks: k, trials, seed, flavor, check_levels, ..ExperimentConfig::default() };
            let rep = run_experiment(&cfg)?;
            emit(&out, &to_csv(&rep))?;
            eprintln!("c_fit={:.4} c_max={:.4}", rep.c_fit, rep.c_max);
            Ok(rep.rows.iter().all(|r| r.all_ok))
        }
        Cmd::Export { input, format, host, out } => cmd_export(&input, format, &host, &out),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
