use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use semisym::cli::{
    cmd_catalogue, cmd_pair_verify, cmd_tensor_check, parse_params, OutputFormat, RunConfig,
};
use semisym::exact::DEFAULT_SEED;

/// Exact-arithmetic checks for semi-symmetric curvature tensors on
/// neutral pseudo-Euclidean spaces.
#[derive(Parser)]
#[command(name = "semisym", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for genericity sampling (fixed default keeps runs reproducible).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Rational parameter assignments, e.g. `a=1,b=2/3`.
    #[arg(long, global = true)]
    params: Option<String>,
    /// Fail on any deviation from the printed table claims (adjudicated
    /// errata included).
    #[arg(long = "strict-paper", global = true)]
    strict_paper: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute R(g) and g_sym for catalogue subalgebras of so(2,2) and
    /// compare with the table claims.
    Catalogue {
        /// Entry names to check (default: all), e.g. --entry 1.3^1.
        #[arg(long = "entry")]
        entries: Vec<String>,
    },
    /// Check a tensor file: Bianchi, semi-symmetry, holonomy, Ricci type.
    Tensor { file: PathBuf },
    /// Run the homogeneous-pair pipeline on a pair file.
    Pair {
        file: PathBuf,
        /// Metric family coefficients, e.g. `t1=1,t2=0`.
        #[arg(long)]
        metric: Option<String>,
    },
    /// Pair pipeline restricted to isotropy dimension zero (Lie groups).
    Group {
        file: PathBuf,
        #[arg(long)]
        metric: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let params = match &cli.global.params {
        None => Default::default(),
        Some(text) => match parse_params(text) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
        },
    };
    let cfg = RunConfig {
        seed: cli.global.seed,
        params,
        format: if cli.global.json {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        },
        strict_paper: cli.global.strict_paper,
    };
    let (report, code) = match cli.command {
        Command::Catalogue { entries } => {
            let filter = if entries.is_empty() {
                None
            } else {
                Some(entries)
            };
            cmd_catalogue(filter, &cfg)
        }
        Command::Tensor { file } => cmd_tensor_check(&file, &cfg),
        Command::Pair { file, metric } => {
            cmd_pair_verify(&file, metric.as_deref(), &cfg, false)
        }
        Command::Group { file, metric } => {
            cmd_pair_verify(&file, metric.as_deref(), &cfg, true)
        }
    };
    match cfg.format {
        OutputFormat::Json => println!("{}", report.to_json()),
        OutputFormat::Text => print!("{}", report.render_text()),
    }
    ExitCode::from(code as u8)
}
