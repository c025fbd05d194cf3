//! Batch front door: ingest instances, run pipelines, emit artifacts.
//!
//! Exit codes: 0 success/pass, 1 certification fail, 2 input error,
//! 3 enumeration budget exceeded.

mod config;
mod run;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "coreset", version, about = "Coreset construction and verification toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a coreset (multiplicative, additive, or iterative pipeline).
    Coreset(CoresetArgs),
    /// Certify a coreset against its instance by exhaustive enumeration.
    Certify(CertifyArgs),
    /// Solve on a coreset by partition enumeration, evaluate on the instance.
    Solve(SolveArgs),
    /// Build and verify a planar separator decomposition.
    Decompose(DecomposeArgs),
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Point set CSV: `id,weight,c1,...,cm` (Euclidean) or
    /// `id,weight,vertex` (with --graph/--planar).
    points: Option<std::path::PathBuf>,

    /// Edge-list graph file (`p <n> <m>` then `u v w` lines).
    #[arg(long)]
    graph: Option<std::path::PathBuf>,

    /// Planar graph file (edge list plus `r <v> <e...>` rotation lines).
    #[arg(long)]
    planar: Option<std::path::PathBuf>,
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    z: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    s_of_k: Option<f64>,
    #[arg(long)]
    sdim_proxy: Option<f64>,
    /// Leading constant of the sample-size formula.
    #[arg(long)]
    constant: Option<f64>,
    /// Enumeration budget (also via env CORESET_ENUM_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads for internal parallelism (default 1).
    #[arg(long)]
    workers: Option<usize>,
    /// JSON config file; flags override its keys, which override defaults.
    #[arg(long)]
    config: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct CoresetArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// multiplicative | additive | iterative
    #[arg(long, default_value = "multiplicative")]
    algo: String,
    /// Output path for the coreset JSON (stdout when omitted).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Output path for the schedule dump (iterative pipeline).
    #[arg(long)]
    schedule_out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Coreset JSON to certify (omit when using --seeds batch mode).
    #[arg(long)]
    coreset: Option<std::path::PathBuf>,
    /// Batch mode: build+certify one trial per seed, `start..end`.
    #[arg(long)]
    seeds: Option<String>,
    /// Pipeline used in batch mode.
    #[arg(long, default_value = "multiplicative")]
    algo: String,
    /// json | csv
    #[arg(long, default_value = "json")]
    format: String,
    /// Batch pass threshold: exit 0 iff pass fraction >= this.
    #[arg(long, default_value_t = 1.0)]
    pass_rate: f64,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Use an existing coreset JSON instead of building one.
    #[arg(long)]
    coreset: Option<std::path::PathBuf>,
    #[arg(long, default_value = "multiplicative")]
    algo: String,
    /// Attach the certification report to the output.
    #[arg(long)]
    emit_report: bool,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Marked vertices, comma separated (defaults to the point set).
    #[arg(long)]
    s: Option<String>,
    /// Run the portal distortion sweep against the exact oracle.
    #[arg(long)]
    check_portals: bool,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Coreset(args) => run::cmd_coreset(args),
        Cmd::Certify(args) => run::cmd_certify(args),
        Cmd::Solve(args) => run::cmd_solve(args),
        Cmd::Decompose(args) => run::cmd_decompose(args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(run::exit_code_for(&e))
        }
    }
}
