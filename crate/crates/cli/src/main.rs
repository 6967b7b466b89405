//! `pam`: generate preferential attachment graphs, count subgraphs, and
//! predict or measure their growth.

mod report;
mod settings;

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use pam_core::census::{census, CensusMode};
use pam_core::concentration::{classify, variance_experiment};
use pam_core::experiment::{scaling_experiment, Target};
use pam_core::graph::{generate_sequential, generate_urn, read_edge_list, write_edge_list};
use pam_core::optimizer::{atlas, solve_b, solve_b_unordered};
use pam_core::theory::{
    asymptotic_triangle_expectation, exact_embedding_probability, exact_triangle_expectation, EdgeSet,
};
use pam_core::{Error, ModelParams, OrderedSubgraph, Seed, UnorderedDigraph};
use serde_json::{json, Value};

use report::{csv_rows, emit, envelope, CliError};
use settings::{Settings, SizeList};

#[derive(Parser)]
#[command(name = "pam", version, about = "Subgraph counts in preferential attachment graphs")]
struct Cli {
    /// Flat `key = value` file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (the PAM_WORKERS variable takes precedence).
    #[arg(long, global = true)]
    workers: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Edges per new vertex.
    #[arg(long)]
    m: Option<String>,
    /// Attachment shift, greater than -m.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
}

#[derive(Args)]
struct OutArgs {
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Grow one graph and write it as an edge list.
    Generate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        /// sequential or urn.
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        out: Option<String>,
        /// Urn model only: write the latent positions as CSV.
        #[arg(long)]
        urn_out: Option<String>,
    },
    /// Count labeled copies of an ordered subgraph in a graph file.
    Count {
        #[arg(long)]
        graph: Option<String>,
        /// Inline `2>1,3>1`, JSON, or a file holding either.
        #[arg(long)]
        subgraph: Option<String>,
        /// Count in the prefix on vertices 1..=t.
        #[arg(long)]
        t: Option<String>,
        /// triangle-fast, general or brute-force.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Predicted growth exponent and log power of a subgraph.
    Predict {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        subgraph: Option<String>,
        /// Treat vertex ids as arrival positions.
        #[arg(long)]
        ordered: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Growth of every connected 3- and 4-vertex digraph.
    Atlas {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutArgs,
    },
    /// Expected labeled triangle count.
    Triangles {
        #[arg(value_enum)]
        kind: TriangleKind,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Probability that a set of labeled edges is present at time t.
    EmbedProb {
        #[command(flatten)]
        params: ParamArgs,
        /// Inline `3>1:1,3>2:2`, JSON, or a file holding either.
        #[arg(long)]
        edges: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Seeded Monte Carlo experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Concentration of subgraph counts.
    #[command(subcommand)]
    Concentration(ConcentrationCommand),
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum TriangleKind {
    Exact,
    Asymptotic,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Mean counts over replicas against the predicted growth.
    Scaling {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        subgraph: Option<String>,
        #[arg(long)]
        ordered: bool,
        /// Comma-separated sizes, strictly increasing.
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        replicas: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        #[command(flatten)]
        output: OutArgs,
    },
}

#[derive(Subcommand)]
enum ConcentrationCommand {
    /// Compare merged copies with the squared mean.
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        subgraph: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Variance and normalized counts over replicas.
    Experiment {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        subgraph: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        replicas: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        #[command(flatten)]
        output: OutArgs,
        /// CSV of per-replica normalized counts.
        #[arg(long)]
        density_out: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err("expected csv or json".into()),
        }
    }
}

#[derive(Clone, Copy)]
enum Model {
    Sequential,
    Urn,
}

impl FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sequential" => Ok(Model::Sequential),
            "urn" => Ok(Model::Urn),
            _ => Err("expected sequential or urn".into()),
        }
    }
}

struct Mode(CensusMode);

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "triangle-fast" => Ok(Mode(CensusMode::TriangleFast)),
            "general" => Ok(Mode(CensusMode::General)),
            "brute-force" => Ok(Mode(CensusMode::BruteForce)),
            _ => Err("expected triangle-fast, general or brute-force".into()),
        }
    }
}

fn params(s: &mut Settings, args: ParamArgs) -> Result<ModelParams, CliError> {
    let m = s.require("m", args.m)?;
    let delta = s.require("delta", args.delta)?;
    Ok(ModelParams::new(m, delta)?)
}

fn seed(s: &mut Settings, flag: Option<String>) -> Result<Seed, CliError> {
    Ok(Seed::new(s.require("seed", flag)?))
}

fn path(s: &mut Settings, key: &str, flag: Option<String>) -> Result<Option<PathBuf>, CliError> {
    s.get::<PathBuf>(key, flag)
}

/// The text itself, or the contents of the file it names.
fn inline_or_file(arg: &str) -> Result<String, CliError> {
    let p = Path::new(arg);
    if p.is_file() {
        std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{arg}: {e}")).into())
    } else {
        Ok(arg.to_string())
    }
}

fn format_error(err: Error) -> CliError {
    match err {
        Error::Parse(m) => CliError::SubgraphFormat(m),
        other => other.into(),
    }
}

fn ordered_subgraph(s: &mut Settings, flag: Option<String>) -> Result<OrderedSubgraph, CliError> {
    let arg: String = s.require("subgraph", flag)?;
    OrderedSubgraph::parse(&inline_or_file(&arg)?).map_err(format_error)
}

fn unordered_subgraph(s: &mut Settings, flag: Option<String>) -> Result<UnorderedDigraph, CliError> {
    let arg: String = s.require("subgraph", flag)?;
    UnorderedDigraph::parse(&inline_or_file(&arg)?).map_err(format_error)
}

fn target(s: &mut Settings, subgraph: Option<String>, ordered: bool) -> Result<Target, CliError> {
    Ok(if s.switch("ordered", ordered)? {
        Target::Ordered(ordered_subgraph(s, subgraph)?)
    } else {
        Target::Unordered(unordered_subgraph(s, subgraph)?)
    })
}

fn configure_workers(s: &mut Settings, flag: Option<String>) -> Result<(), CliError> {
    let env = std::env::var("PAM_WORKERS").ok().filter(|v| !v.trim().is_empty());
    let workers: Option<usize> = match env {
        Some(v) => Some(v.trim().parse().map_err(|_| CliError::Usage(format!("bad PAM_WORKERS '{v}'")))?),
        None => s.get("workers", flag)?,
    };
    match workers {
        Some(0) => Err(CliError::Usage("worker count must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("worker pool: {e}"))),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut s = Settings::load(cli.config.as_deref())?;
    configure_workers(&mut s, cli.workers)?;
    match cli.command {
        Command::Generate { params: p, t, seed: sd, model, out, urn_out } => {
            s.record("command", "generate");
            let params = params(&mut s, p)?;
            let t: usize = s.require("t", t)?;
            let seed = seed(&mut s, sd)?;
            let model = s.get("model", model)?.unwrap_or(Model::Sequential);
            let out = path(&mut s, "out", out)?;
            let urn_out = path(&mut s, "urn_out", urn_out)?;
            let (graph, urn) = match model {
                Model::Sequential => {
                    if urn_out.is_some() {
                        return Err(CliError::Usage("--urn-out needs --model urn".into()));
                    }
                    (generate_sequential(params, t, seed)?, None)
                }
                Model::Urn => {
                    let (g, u) = generate_urn(params, t, seed)?;
                    (g, Some(u))
                }
            };
            let mut text = Vec::new();
            write_edge_list(&graph, &mut text)?;
            emit(out.as_deref(), &String::from_utf8_lossy(&text))?;
            if let (Some(p), Some(u)) = (urn_out, urn) {
                emit(Some(&p), &u.to_csv())?;
            }
        }
        Command::Count { graph, subgraph, t, mode, out } => {
            s.record("command", "count");
            let file: PathBuf = s.require("graph", graph)?;
            let h = ordered_subgraph(&mut s, subgraph)?;
            let prefix: Option<usize> = s.get("t", t)?;
            let mode = s.get::<Mode>("mode", mode)?.map(|m| m.0);
            let out = path(&mut s, "out", out)?;
            let reader = File::open(&file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let g = read_edge_list(BufReader::new(reader))?;
            let view = match prefix {
                Some(t) => g.prefix(t)?,
                None => g.view(),
            };
            let mode = mode.unwrap_or(if is_triangle(&h) { CensusMode::TriangleFast } else { CensusMode::General });
            let r = census(view, &h, mode)?;
            let results = json!({ "subgraph": r.subgraph, "t": r.t, "count": r.count, "mode": r.mode });
            emit(out.as_deref(), &envelope(s.into_echo(), &results)?)?;
        }
        Command::Predict { params: p, subgraph, ordered, out } => {
            s.record("command", "predict");
            let params = params(&mut s, p)?;
            let target = target(&mut s, subgraph, ordered)?;
            let out = path(&mut s, "out", out)?;
            let results = match target {
                Target::Ordered(h) => to_value(&solve_b(&h, &params)?),
                Target::Unordered(g) => {
                    let rep = solve_b_unordered(&g, &params)?;
                    let mut v = to_value(&rep.best);
                    v["orderings"] = to_value(&rep.per_ordering);
                    v
                }
            };
            emit(out.as_deref(), &envelope(s.into_echo(), &results)?)?;
        }
        Command::Atlas { params: p, output } => {
            s.record("command", "atlas");
            let params = params(&mut s, p)?;
            let (format, out) = output_args(&mut s, output)?;
            let rows = atlas(&params)?;
            let text = match format {
                Format::Csv => csv_rows(&rows)?,
                Format::Json => envelope(s.into_echo(), &rows)?,
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Triangles { kind, params: p, t, out } => {
            let params = params(&mut s, p)?;
            let (name, t, value) = match kind {
                TriangleKind::Exact => {
                    s.record("command", "triangles exact");
                    let t: usize = s.require("t", t)?;
                    ("exact", Value::from(t), exact_triangle_expectation(&params, t)?)
                }
                TriangleKind::Asymptotic => {
                    s.record("command", "triangles asymptotic");
                    let t: f64 = s.require("t", t)?;
                    ("asymptotic", Value::from(t), asymptotic_triangle_expectation(&params, t)?)
                }
            };
            let out = path(&mut s, "out", out)?;
            let results = json!({ "kind": name, "t": t, "expectation": value });
            emit(out.as_deref(), &envelope(s.into_echo(), &results)?)?;
        }
        Command::EmbedProb { params: p, edges, t, out } => {
            s.record("command", "embed-prob");
            let params = params(&mut s, p)?;
            let arg: String = s.require("edges", edges)?;
            let es = EdgeSet::parse(&inline_or_file(&arg)?, params.m())?;
            let t: usize = s.require("t", t)?;
            let out = path(&mut s, "out", out)?;
            let p = exact_embedding_probability(&es, &params, t)?;
            let results = json!({ "edges": es.edges(), "t": t, "probability": p });
            emit(out.as_deref(), &envelope(s.into_echo(), &results)?)?;
        }
        Command::Experiment(ExperimentCommand::Scaling {
            params: p,
            subgraph,
            ordered,
            t,
            replicas,
            seed: sd,
            output,
        }) => {
            s.record("command", "experiment scaling");
            let params = params(&mut s, p)?;
            let target = target(&mut s, subgraph, ordered)?;
            let SizeList(t_list) = s.require("t", t)?;
            let replicas: usize = s.require("replicas", replicas)?;
            let seed = seed(&mut s, sd)?;
            let (format, out) = output_args(&mut s, output)?;
            let table = scaling_experiment(&params, &target, &t_list, replicas, seed)?;
            let text = match format {
                Format::Csv => table.to_csv(),
                Format::Json => envelope(s.into_echo(), &table)?,
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Concentration(ConcentrationCommand::Classify { params: p, subgraph, out }) => {
            s.record("command", "concentration classify");
            let params = params(&mut s, p)?;
            let h = ordered_subgraph(&mut s, subgraph)?;
            let out = path(&mut s, "out", out)?;
            let verdict = classify(&h, &params)?;
            emit(out.as_deref(), &envelope(s.into_echo(), &verdict)?)?;
        }
        Command::Concentration(ConcentrationCommand::Experiment {
            params: p,
            subgraph,
            t,
            replicas,
            seed: sd,
            output,
            density_out,
        }) => {
            s.record("command", "concentration experiment");
            let params = params(&mut s, p)?;
            let h = ordered_subgraph(&mut s, subgraph)?;
            let SizeList(t_list) = s.require("t", t)?;
            let replicas: usize = s.require("replicas", replicas)?;
            let seed = seed(&mut s, sd)?;
            let (format, out) = output_args(&mut s, output)?;
            let density_out = path(&mut s, "density_out", density_out)?;
            let table = variance_experiment(&params, &h, &t_list, replicas, seed)?;
            match format {
                Format::Csv => {
                    emit(out.as_deref(), &table.to_csv())?;
                    if let Some(p) = density_out {
                        emit(Some(&p), &table.density_csv())?;
                    }
                }
                Format::Json => {
                    if density_out.is_some() {
                        return Err(CliError::Usage("--density-out needs --format csv".into()));
                    }
                    emit(out.as_deref(), &envelope(s.into_echo(), &table)?)?;
                }
            }
        }
    }
    Ok(())
}

fn output_args(s: &mut Settings, o: OutArgs) -> Result<(Format, Option<PathBuf>), CliError> {
    let format = s.get("format", o.format)?.unwrap_or(Format::Csv);
    Ok((format, path(s, "out", o.out)?))
}

fn is_triangle(h: &OrderedSubgraph) -> bool {
    let mut e = h.edges().to_vec();
    e.sort_unstable();
    h.k() == 3 && e == [(2, 1), (3, 1), (3, 2)]
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize to JSON")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.render().to_string().trim().to_string());
            eprintln!("{}", err.record());
            return ExitCode::from(err.code().1 as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.record());
            ExitCode::from(err.code().1 as u8)
        }
    }
}
