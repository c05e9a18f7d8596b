use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ilw::runner::{self, Command, ExperimentConfig, RunOptions};
use ilw::Error;

/// Intermediate long wave experiments.
///
/// Any configuration key can be overridden as `--section.key=value`.
#[derive(Parser, Debug)]
#[command(name = "ilw", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// TOML configuration file; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for every random battery.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads; 1 gives byte-identical reruns.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Parent directory of run directories.
    #[arg(long, global = true)]
    output: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Evolve the initial datum and write diagnostics.
    Simulate,
    /// Compute a solitary wave and test its propagation.
    Soliton {
        /// Shorthand for `--model.delta`.
        #[arg(long)]
        delta: Option<f64>,
        /// Shorthand for `--initial.soliton_speed`.
        #[arg(long)]
        speed: Option<f64>,
    },
    /// Compare against the Benjamin-Ono and KdV limits.
    Limits,
    /// Run the seeded inequality batteries.
    CheckInequalities,
    /// Recompute diagnostics over a stored run.
    Diagnose {
        /// Run directory containing config.toml and trajectory.bin.
        run_dir: PathBuf,
    },
}

/// Split `--section.key=value` overrides from the arguments clap understands.
fn split_overrides(args: Vec<String>) -> (Vec<String>, Vec<(String, String)>) {
    let mut rest = Vec::new();
    let mut overrides = Vec::new();
    for arg in args {
        if let Some(body) = arg.strip_prefix("--") {
            if let Some((key, value)) = body.split_once('=') {
                if key.contains('.') {
                    overrides.push((key.to_string(), value.to_string()));
                    continue;
                }
            }
        }
        rest.push(arg);
    }
    (rest, overrides)
}

fn load_config(cli: &Cli, mut overrides: Vec<(String, String)>) -> Result<ExperimentConfig, Error> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.clone(), source: e })?,
        None => String::new(),
    };
    if let Some(seed) = cli.seed {
        overrides.push(("seed".into(), seed.to_string()));
    }
    if let Some(dir) = &cli.output {
        overrides.push(("output.directory".into(), format!("{dir:?}")));
    }
    if let Sub::Soliton { delta, speed } = &cli.command {
        overrides.push(("initial.kind".into(), "\"soliton\"".into()));
        if let Some(d) = delta {
            overrides.push(("model.delta".into(), d.to_string()));
        }
        if let Some(c) = speed {
            overrides.push(("initial.soliton_speed".into(), c.to_string()));
        }
    }
    Ok(runner::parse_config_with_overrides(&text, &overrides)?)
}

fn execute(cli: Cli, overrides: Vec<(String, String)>) -> Result<(), Error> {
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("thread pool already initialised: {e}");
        }
    }
    let command = match &cli.command {
        Sub::Diagnose { run_dir } => {
            let outcome = runner::diagnose(run_dir)?;
            println!("{}", outcome.path.display());
            return match outcome.matches_original {
                Some(false) => Err(Error::Format {
                    path: run_dir.join(runner::DIAGNOSTICS_FILE),
                    reason: "recomputed diagnostics differ from the stored CSV".into(),
                }),
                _ => Ok(()),
            };
        }
        Sub::Simulate => Command::Simulate,
        Sub::Soliton { .. } => Command::Soliton,
        Sub::Limits => Command::Limits,
        Sub::CheckInequalities => Command::CheckInequalities,
    };
    let config = load_config(&cli, overrides)?;
    let dir = runner::run_directory(&config, command);
    let result = runner::run(command, &config, &RunOptions { threads: cli.threads });
    println!("{}", dir.display());
    let manifest = result?;
    for w in &manifest.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let (args, overrides) = split_overrides(std::env::args().collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli, overrides) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
