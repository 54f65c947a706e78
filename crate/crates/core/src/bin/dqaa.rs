use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dqaa::cli::{self, ExitStatus, Format, Mode, RunConfig, PRESETS};
use dqaa::Error;

#[derive(Parser)]
#[command(name = "dqaa", version, about = "Distributed amplitude amplification simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a preset, a config file and/or flags.
    Run(RunArgs),
    /// Write the fixed-point phase schedule for `l` iterations.
    Schedule {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        epsilon: f64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List built-in presets, or print one as a config file.
    Preset { name: Option<String> },
}

#[derive(Args)]
struct RunArgs {
    /// Built-in preset to start from.
    #[arg(long)]
    preset: Option<String>,
    /// TOML run config, applied after the preset.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Initial success probability override.
    #[arg(long)]
    a: Option<f64>,
    /// Skip the consistency check on --a (qaa mode).
    #[arg(long)]
    trust_a: bool,
    /// Comma-separated target bitstrings.
    #[arg(long, value_delimiter = ',')]
    targets: Option<Vec<String>>,
    #[arg(long)]
    oracle_file: Option<PathBuf>,
    /// Built-in oracle: empty, all, parity, palindrome, zero.
    #[arg(long)]
    predicate: Option<String>,
    /// uniform-hadamard, identity or file:<path>.
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    prefix_algorithm: Option<String>,
    #[arg(long)]
    suffix_algorithm: Option<String>,
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated subset of json, csv, text.
    #[arg(long, value_delimiter = ',')]
    format: Option<Vec<String>>,
}

fn build_config(args: RunArgs) -> Result<RunConfig, Error> {
    let mut config = match &args.preset {
        Some(name) => cli::preset(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown preset {name:?}")))?,
        None => RunConfig::default(),
    };
    if let Some(path) = &args.config {
        config.merge(RunConfig::load(path)?);
    }
    let formats = args
        .format
        .map(|list| list.iter().map(|f| f.parse::<Format>()).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    config.merge(RunConfig {
        mode: args.mode,
        n: args.n,
        j: args.j,
        targets: args.targets,
        oracle_file: args.oracle_file,
        predicate: args.predicate,
        algorithm: args.algorithm,
        prefix_algorithm: args.prefix_algorithm,
        suffix_algorithm: args.suffix_algorithm,
        epsilon: args.epsilon,
        delta: args.delta,
        a: args.a,
        trust_a: args.trust_a.then_some(true),
        shots: args.shots,
        seed: args.seed,
        out: args.out,
        formats,
    });
    Ok(config)
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(ExitStatus::from_error(err).code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(ExitStatus::Usage.code() as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Run(args) => {
            let artifacts = match build_config(args).and_then(|config| cli::run(&config)) {
                Ok(artifacts) => artifacts,
                Err(err) => return fail(&err),
            };
            print!("{}", artifacts.summary);
            if artifacts.target_found() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(ExitStatus::NoTarget.code() as u8)
            }
        }
        Command::Schedule { l, epsilon, out } => match cli::emit_schedule(l, epsilon, out.as_deref()) {
            Ok(dump) => {
                if out.is_none() {
                    print!("{dump}");
                }
                ExitCode::SUCCESS
            }
            Err(err) => fail(&err),
        },
        Command::Preset { name: None } => {
            for (name, description) in PRESETS {
                println!("{name:<20} {description}");
            }
            ExitCode::SUCCESS
        }
        Command::Preset { name: Some(name) } => match cli::preset(&name) {
            Some(config) => {
                print!("{}", config.to_toml());
                ExitCode::SUCCESS
            }
            None => fail(&Error::InvalidArgument(format!("unknown preset {name:?}"))),
        },
    }
}
