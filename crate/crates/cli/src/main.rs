mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use mlgraphlet::experiments::{emit_report, load_series, run_experiment, ExperimentPlan, MetricTarget};
use mlgraphlet::generators::{generate, ingest_external, BlueModel, Coupling, GeneratorSpec, RedModel};
use mlgraphlet::oracle::{bound_diagnostics, compute_m, count_exact, published_normalization};
use mlgraphlet::{
    compute_iso_coefficients, load_graph, save_graph, Algorithm, GraphletType, Sampler, TwoLayerGraph,
};

/// Graphlet concentration estimation in two-layer multiplex graphs.
#[derive(Debug, Parser)]
#[command(name = "mlg", version, about)]
struct Cli {
    /// Base random seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for trials and exact counting [default: all cores].
    #[arg(long, global = true, env = "MLG_THREADS")]
    threads: Option<usize>,

    /// Log filter (error, warn, info, debug, trace).
    #[arg(long, global = true, default_value = "warn")]
    log_level: String,

    /// TOML file of flag defaults: top-level keys for global flags,
    /// [subcommand] tables for the rest.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic two-layer graph.
    Generate(GenerateArgs),
    /// Build a graph from a real blue edge list plus a synthetic red layer.
    Ingest(IngestArgs),
    /// Exact graphlet counts and concentrations (JSON).
    Exact(ExactArgs),
    /// Run one walk and print its concentration estimate (JSON).
    Sample(SampleArgs),
    /// Multi-trial MRE/NRMSE experiment with CSV, JSON and SVG output.
    Experiment(ExperimentArgs),
    /// Re-render charts and CSV from a results.json.
    Report(ReportArgs),
    /// Print the sixteen graphlet types and their coefficients.
    Catalog(CatalogArgs),
    /// Step-bound factors and, on small graphs, the explicit-chain mixing time (JSON).
    Diagnose(DiagnoseArgs),
}

#[derive(Debug, Args)]
struct RedArgs {
    /// Red layer model: er[:ratio=R,rho=P] | sw:k=K[,p=P] | ba:m=M | none.
    #[arg(long, default_value = "er:ratio=0.4,rho=0")]
    red: String,

    /// Identity coupling: one-to-one | half-overlap | blue-double.
    #[arg(long, default_value = "one-to-one")]
    coupling: String,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Blue layer model: er:n=N,m=M | er:n=N,p=P | sw:n=N,k=K[,p=P] | ba:n=N,m=M.
    #[arg(long)]
    blue: String,

    #[command(flatten)]
    red: RedArgs,

    /// Output mlx file.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct IngestArgs {
    /// Whitespace-separated blue edge list.
    input: PathBuf,

    #[command(flatten)]
    red: RedArgs,

    /// Output mlx file.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct ExactArgs {
    /// Graph in mlx format.
    graph: PathBuf,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Walk algorithm: rwnbn | rwebe | rwomrn | rwmix | rwnr.
    #[arg(long)]
    algo: Algorithm,

    /// Accumulated walk steps.
    #[arg(long, default_value_t = 20_000)]
    steps: usize,

    /// Steps discarded before accumulation.
    #[arg(long, default_value_t = 0)]
    burn_in: usize,

    /// Normalisation constant M; adds absolute count estimates to the output.
    #[arg(long, conflicts_with = "counts")]
    m: Option<f64>,

    /// Compute M from the whole graph and add count estimates.
    #[arg(long)]
    counts: bool,

    /// Graph in mlx format.
    graph: PathBuf,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "rwnbn,rwebe,rwomrn,rwmix,rwnr")]
    algos: Vec<Algorithm>,

    /// Independent trials per algorithm.
    #[arg(long, default_value_t = 1000)]
    trials: usize,

    /// Walk steps per trial.
    #[arg(long, default_value_t = 20_000)]
    steps: usize,

    /// Checkpoint stride in steps (0 for the final step only).
    #[arg(long, default_value_t = 2000)]
    stride: usize,

    /// Steps discarded before accumulation.
    #[arg(long, default_value_t = 0)]
    burn_in: usize,

    /// Compare concentrations or absolute counts.
    #[arg(long, default_value = "concentrations", value_parser = ["concentrations", "counts"])]
    target: String,

    /// Output directory for results.csv, results.json and charts.
    #[arg(short, long, default_value = "results")]
    out: PathBuf,

    /// Graph in mlx format.
    graph: PathBuf,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// results.json from a previous experiment.
    results: PathBuf,

    /// Output directory.
    #[arg(short, long, default_value = "report")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    /// Show one model's coefficients only.
    #[arg(long)]
    model: Option<Algorithm>,
}

#[derive(Debug, Args)]
struct DiagnoseArgs {
    /// Algorithms to report on.
    #[arg(long, value_delimiter = ',', default_value = "rwnbn,rwebe,rwomrn,rwmix,rwnr")]
    algos: Vec<Algorithm>,

    /// Largest explicit chain to build for the mixing time (0 to skip).
    #[arg(long, default_value_t = 5000)]
    chain_cap: usize,

    /// Graph in mlx format.
    graph: PathBuf,
}

fn load(path: &PathBuf) -> Result<TwoLayerGraph> {
    let g = load_graph(path).with_context(|| format!("loading {}", path.display()))?;
    log::info!(
        "{}: {} identities, {} blue edges, {} red edges",
        path.display(),
        g.num_identities(),
        g.num_blue_edges(),
        g.num_red_edges()
    );
    Ok(g)
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn graph_summary(path: &PathBuf, g: &TwoLayerGraph) -> serde_json::Value {
    let blue = (0..g.num_identities() as u32).filter(|&u| g.in_blue(u)).count();
    let red = (0..g.num_identities() as u32).filter(|&u| g.in_red(u)).count();
    serde_json::json!({
        "path": path,
        "identities": g.num_identities(),
        "blue_identities": blue,
        "red_identities": red,
        "blue_edges": g.num_blue_edges(),
        "red_edges": g.num_red_edges(),
    })
}

fn print_summary(cli: &Cli, path: &PathBuf, g: &TwoLayerGraph, extra: Option<serde_json::Value>) -> Result<()> {
    let mut summary = graph_summary(path, g);
    if let Some(extra) = extra {
        summary["ingest"] = extra;
    }
    if cli.json {
        return print_json(&summary);
    }
    println!(
        "wrote {}: {} identities ({} blue, {} red), {} blue edges, {} red edges",
        path.display(),
        summary["identities"],
        summary["blue_identities"],
        summary["red_identities"],
        summary["blue_edges"],
        summary["red_edges"]
    );
    Ok(())
}

fn red_layer(args: &RedArgs) -> Result<(RedModel, Coupling)> {
    Ok((args.red.parse()?, args.coupling.parse()?))
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Generate(a) => {
            let (red, coupling) = red_layer(&a.red)?;
            let spec = GeneratorSpec {
                blue: a.blue.parse::<BlueModel>()?,
                red,
                coupling,
                seed: cli.seed,
            };
            let g = generate(&spec)?;
            save_graph(&g, &a.output)?;
            print_summary(cli, &a.output, &g, None)
        }
        Command::Ingest(a) => {
            let (red, coupling) = red_layer(&a.red)?;
            let (g, report) = ingest_external(&a.input, &red, coupling, cli.seed)?;
            save_graph(&g, &a.output)?;
            print_summary(cli, &a.output, &g, Some(serde_json::to_value(report)?))
        }
        Command::Exact(a) => print_json(&count_exact(&load(&a.graph)?)),
        Command::Sample(a) => {
            let g = load(&a.graph)?;
            let sampler = Sampler::new(a.algo, &g)?;
            let opts = mlgraphlet::samplers::EstimatorOptions {
                burn_in: a.burn_in,
                checkpoints: Vec::new(),
            };
            let est = sampler.run(a.steps, cli.seed, &opts)?.estimate;
            let mut v = serde_json::to_value(&est)?;
            let m = if a.counts { Some(compute_m(&g, a.algo)) } else { a.m };
            if let Some(m) = m {
                v["M"] = m.into();
                v["counts"] = serde_json::to_value(est.counts(m))?;
            }
            print_json(&v)
        }
        Command::Experiment(a) => {
            let g = load(&a.graph)?;
            let truth = count_exact(&g);
            let plan = ExperimentPlan {
                graph: Some(a.graph.display().to_string()),
                algorithms: a.algos.clone(),
                trials: a.trials,
                steps: a.steps,
                checkpoint_stride: (a.stride > 0).then_some(a.stride),
                base_seed: cli.seed,
                burn_in: a.burn_in,
                target: if a.target == "counts" {
                    MetricTarget::Counts
                } else {
                    MetricTarget::Concentrations
                },
            };
            let series = run_experiment(&g, &plan, &truth)?;
            let files = emit_report(&series, &a.out)?;
            if cli.json {
                return print_json(&serde_json::json!({ "files": files, "series": series }));
            }
            println!("{:<8} {}", "algo", (1..=14).map(|t| format!("{t:>8}")).collect::<String>());
            for s in &series.algos {
                let row: String = s
                    .final_mre()
                    .iter()
                    .map(|m| m.map_or_else(|| format!("{:>8}", "-"), |m| format!("{m:>8.4}")))
                    .collect();
                println!("{:<8} {row}", s.algo.name());
            }
            println!("final-step MRE per type; {} files in {}", files.len(), a.out.display());
            Ok(())
        }
        Command::Report(a) => {
            let series = load_series(&a.results)?;
            let files = emit_report(&series, &a.out)?;
            if cli.json {
                return print_json(&files);
            }
            for f in files {
                println!("{}", f.display());
            }
            Ok(())
        }
        Command::Catalog(a) => catalog(cli, a.model),
        Command::Diagnose(a) => {
            let g = load(&a.graph)?;
            let truth = count_exact(&g);
            let cap = (a.chain_cap > 0).then_some(a.chain_cap);
            let reports: Vec<serde_json::Value> = a
                .algos
                .iter()
                .map(|&algo| {
                    let mut v = serde_json::to_value(bound_diagnostics(&g, algo, &truth, cap))?;
                    v["M_published"] = serde_json::to_value(published_normalization(&g, algo))?;
                    v["xi"] = "not computed".into();
                    v["phi_norm"] = "not computed".into();
                    Ok(v)
                })
                .collect::<Result<_>>()?;
            print_json(&reports)
        }
    }
}

fn catalog(cli: &Cli, model: Option<Algorithm>) -> Result<()> {
    let models: Vec<Algorithm> = match model {
        Some(m) => vec![m],
        None => vec![Algorithm::RwNbN, Algorithm::RwEbE, Algorithm::RwOmrn, Algorithm::RwMix, Algorithm::RwNr],
    };
    let tables: Vec<_> = models.iter().map(|&m| compute_iso_coefficients(m)).collect();
    if cli.json {
        let rows: Vec<serde_json::Value> = GraphletType::all()
            .map(|t| {
                let alpha: serde_json::Map<String, serde_json::Value> = tables
                    .iter()
                    .map(|tab| (tab.algo.name().to_owned(), tab.get(t).into()))
                    .collect();
                serde_json::json!({
                    "type": t.index(),
                    "shape": if t.is_triangle() { "triangle" } else { "path" },
                    "colors": t.colors().iter().map(|c| c.short()).collect::<Vec<_>>(),
                    "alpha": alpha,
                })
            })
            .collect();
        return print_json(&rows);
    }
    print!("{:>4}  {:<20}", "type", "structure");
    for m in &models {
        print!("{:>8}", m.name());
    }
    println!();
    for t in GraphletType::all() {
        print!("{:>4}  {:<20}", t.index(), t.label());
        for tab in &tables {
            print!("{:>8}", tab.get(t));
        }
        println!();
    }
    Ok(())
}

/// Repeated flags keep the last value, so config defaults yield to the command line.
fn command() -> clap::Command {
    fn relax(cmd: clap::Command) -> clap::Command {
        cmd.args_override_self(true).mut_subcommands(relax)
    }
    relax(Cli::command())
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let parsed = command()
        .try_get_matches_from(argv)
        .and_then(|mut m| Cli::from_arg_matches_mut(&mut m));
    let cli = match parsed {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    env_logger::Builder::new().parse_filters(&cli.log_level).init();
    eprintln!("mlg: resolved config: {cli:?}");
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
