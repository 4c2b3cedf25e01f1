use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rbound_lab::emit::canonical_json;
use rbound_lab::verify::{render_table, verify_all};
use rbound_lab::{run_experiment, CliError, ExperimentConfig, Format, Kind};

#[derive(Debug, Parser)]
#[command(name = "rbound-lab", version)]
#[command(about = "Rademacher averages, R-bounds and the experiments built on them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,

    /// Overrides the seed in the config.
    #[arg(long)]
    seed: Option<u64>,

    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,

    /// Output file; defaults to the config's `output`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rademacher or Gaussian moment of a finite sum
    Rademacher(RunArgs),
    /// R-bound lower estimate of an operator family
    Rbound(RunArgs),
    /// Type-p constant lower bound
    Type(RunArgs),
    /// Cotype-q constant lower bound
    Cotype(RunArgs),
    /// Lorentz norm of a step function
    Lorentz(RunArgs),
    /// Besov norm of a grid function, optionally with the Hölder check
    Besov(RunArgs),
    /// R-bounds of integral-operator families
    Integral(RunArgs),
    /// γ-multiplier constant
    Gamma(RunArgs),
    /// R-bound of {T(t) i_α} for a diagonal semigroup
    Semigroup(RunArgs),
    /// Growth exponent of the translation-group quotient
    Sharpness(RunArgs),
    /// Run the acceptance suite and print a pass/fail table
    VerifyAll {
        /// Smaller trial counts.
        #[arg(long)]
        quick: bool,

        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
    },
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn run(kind: Kind, args: &RunArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|source| CliError::Io { path: args.config.display().to_string(), source })?;
    let (mut cfg, params) = ExperimentConfig::parse(&text)?;
    if cfg.kind != kind {
        return Err(CliError::config("$.kind", format!("config is for {:?}, not {:?}", cfg.kind.as_str(), kind.as_str())));
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let report = run_experiment(&cfg, &params)?;
    let format = match args.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Csv => Format::Csv,
    };
    let out = args.out.as_deref().or(cfg.output.as_deref());
    write_output(out, &report.emit(format)?)
}

fn configure_threads() {
    if let Some(n) = std::env::var("RBLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            // only fails if a pool exists already, which cannot happen this early
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match &cli.command {
        Command::Rademacher(a) => run(Kind::Rademacher, a),
        Command::Rbound(a) => run(Kind::Rbound, a),
        Command::Type(a) => run(Kind::Type, a),
        Command::Cotype(a) => run(Kind::Cotype, a),
        Command::Lorentz(a) => run(Kind::Lorentz, a),
        Command::Besov(a) => run(Kind::Besov, a),
        Command::Integral(a) => run(Kind::Integral, a),
        Command::Gamma(a) => run(Kind::Gamma, a),
        Command::Semigroup(a) => run(Kind::Semigroup, a),
        Command::Sharpness(a) => run(Kind::Sharpness, a),
        Command::VerifyAll { quick, format } => {
            let outcomes = verify_all(*quick);
            let text = match format {
                TableFormat::Text => render_table(&outcomes),
                TableFormat::Json => canonical_json(&serde_json::to_value(&outcomes).expect("outcomes serialize")),
            };
            let all = outcomes.iter().all(|o| o.passed);
            match write_output(None, text.as_bytes()) {
                Ok(()) if all => return ExitCode::SUCCESS,
                Ok(()) => return ExitCode::from(1),
                Err(e) => Err(e),
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprint!("{}", canonical_json(&err.to_json()));
            ExitCode::from(err.exit_code())
        }
    }
}
