//! `aseriate`: generate scenario matrices, run Monte Carlo sweeps, seriate
//! a matrix file, and summarize records into error curves.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use active_seriation::harness::{
    read_records, run_experiment, seriate_file, summarize, write_curves, write_records, AlgorithmId,
    ExperimentConfig, SeriateRequest,
};
use active_seriation::rng::Stream;
use active_seriation::scenarios::save_matrix_csv;
use active_seriation::{apply_permutation, generate, NoiseKind, NoiseModel, Permutation, ScenarioId, ScenarioSpec};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "aseriate", version, about = "Active seriation of noisy similarity matrices")]
struct Cli {
    /// Log progress (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a scenario's Robinson matrix as CSV.
    Gen(GenArgs),
    /// Run an experiment grid and write per-replicate records.
    Run(RunArgs),
    /// Recover the ordering of a matrix file through a simulated oracle.
    Seriate(SeriateArgs),
    /// Turn a records CSV into error curves.
    Summarize(SummarizeArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    scenario: ScenarioId,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hide the ordering behind a uniformly random permutation.
    #[arg(long)]
    shuffle: bool,
    /// With --shuffle, write the latent ranks as `item,rank`.
    #[arg(long, requires = "shuffle")]
    truth_out: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// JSON experiment config; replaces the grid flags below.
    #[arg(long, conflicts_with_all = ["scenario", "algo", "n", "t", "sigma", "delta_grid"])]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    scenario: Vec<ScenarioId>,
    #[arg(long, value_delimiter = ',')]
    algo: Vec<AlgorithmId>,
    #[arg(long)]
    n: Option<usize>,
    /// Sampling budget `T`.
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, default_value = "gaussian")]
    noise: NoiseKind,
    #[arg(long, value_delimiter = ',')]
    delta_grid: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long, default_value_t = 10)]
    groups: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tolerance for asii-ext (defaults to each cell's delta).
    #[arg(long)]
    delta_tilde: Option<f64>,
    /// Matrix for the `file` scenario.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Records CSV.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    curves_out: Option<PathBuf>,
}

#[derive(Args)]
struct SeriateArgs {
    /// Headerless square CSV, treated as the hidden similarity matrix.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "asii")]
    algo: AlgorithmId,
    #[arg(long)]
    t: u64,
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    #[arg(long, default_value = "gaussian")]
    noise: NoiseKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    delta_tilde: Option<f64>,
    /// Recovered ordering as `rank,item`.
    #[arg(long)]
    order_out: PathBuf,
    /// Input matrix with rows and columns in recovered order.
    #[arg(long)]
    matrix_out: Option<PathBuf>,
    /// Items dropped by asii-ext as `item,kept_before,reason`.
    #[arg(long)]
    discards_out: Option<PathBuf>,
}

#[derive(Args)]
struct SummarizeArgs {
    #[arg(long)]
    records: PathBuf,
    #[arg(long, default_value_t = 10)]
    groups: usize,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Run(a) => run(a),
        Command::Seriate(a) => seriate(a),
        Command::Summarize(a) => summarize_cmd(a),
    }
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn gen(a: GenArgs) -> Result<()> {
    if a.scenario == ScenarioId::File {
        bail!("gen needs a synthetic scenario (s1 to s4)");
    }
    let mut m = generate(&ScenarioSpec::synthetic(a.scenario, a.n, a.delta, a.seed))?;
    if a.shuffle {
        let truth = Permutation::random(a.n, &mut Stream::new(a.seed ^ 0x5EED));
        m = apply_permutation(&m, &truth)?;
        if let Some(path) = &a.truth_out {
            let mut w = create(path)?;
            writeln!(w, "item,rank")?;
            for (item, rank) in truth.ranks().iter().enumerate() {
                writeln!(w, "{item},{rank}")?;
            }
            w.flush()?;
        }
    }
    save_matrix_csv(&m, &a.out)?;
    log::info!("wrote {}", a.out.display());
    Ok(())
}

fn run(a: RunArgs) -> Result<()> {
    let cfg = match &a.config {
        Some(path) => ExperimentConfig::load(path).with_context(|| format!("reading {}", path.display()))?,
        None => {
            let missing = |name: &str| anyhow::anyhow!("--{name} is required without --config");
            let cfg = ExperimentConfig {
                scenarios: a.scenario.clone(),
                algorithms: a.algo.clone(),
                delta_grid: a.delta_grid.clone(),
                n: a.n.ok_or_else(|| missing("n"))?,
                budget_t: a.t.ok_or_else(|| missing("t"))?,
                sigma: a.sigma.ok_or_else(|| missing("sigma"))?,
                noise: a.noise,
                replicates: a.reps,
                groups: a.groups,
                master_seed: a.seed,
                delta_tilde: a.delta_tilde,
                matrix_path: a.matrix.clone(),
            };
            cfg.validate()?;
            cfg
        }
    };
    let records = run_experiment(&cfg)?;
    write_records(&records, create(&a.out)?)?;
    if let Some(path) = &a.curves_out {
        write_curves(&summarize(&records, cfg.groups)?, create(path)?)?;
    }
    log::info!("{} records written to {}", records.len(), a.out.display());
    Ok(())
}

fn seriate(a: SeriateArgs) -> Result<()> {
    let out = seriate_file(&SeriateRequest {
        input: a.input.clone(),
        algorithm: a.algo,
        budget_t: a.t,
        noise: NoiseModel::new(a.noise, a.sigma)?,
        seed: a.seed,
        delta_tilde: a.delta_tilde,
    })?;
    out.write_order(&a.order_out)?;
    if let Some(path) = &a.matrix_out {
        out.write_matrix(path)?;
    }
    if let Some(path) = &a.discards_out {
        out.write_discards(path)?;
    }
    println!(
        "ordered {} items ({} discarded) using {} samples",
        out.order.len(),
        out.discards.len(),
        out.queries
    );
    Ok(())
}

fn summarize_cmd(a: SummarizeArgs) -> Result<()> {
    let file = File::open(&a.records).with_context(|| format!("opening {}", a.records.display()))?;
    let curves = summarize(&read_records(file)?, a.groups)?;
    write_curves(&curves, create(&a.out)?)?;
    Ok(())
}
