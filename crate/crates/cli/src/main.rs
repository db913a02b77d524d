use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcnr::commands;
use qcnr::config::{load_config, Format, RunConfig};
use qcnr::error::{CliError, ConfigError};
use qcnr::export::{export, Output};
use qcnr::sweep::{run_operation, run_sweep, Operation};
use qcnr_core::fit::ResonanceModel;

/// Cooper-pair box, nanomechanical resonator and LC cavity modelling.
///
/// Exit status: 0 success, 2 configuration error, 3 numerical failure
/// (including any failed sweep point), 4 I/O error.
#[derive(Debug, Parser)]
#[command(name = "qcnr", version)]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output file; defaults to `[output] path`, then standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format; defaults to `[output] format`, then csv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for grid evaluation (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Reserved: every current operation is deterministic and ignores it.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Treat unknown config keys as errors instead of warnings.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lowest CPB levels at the configured bias.
    QubitSpectrum {
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// Single-tone response map over the `[sweep]` flux grid and `[probe]` frequencies.
    SingleTone,
    /// CPB transition energy over the `[sweep]` grid at each `sweep.n_g`.
    TwoTone,
    /// Beam, coupling and coherence figures of merit.
    Design,
    /// Fit a resonance to a two-column trace (frequency in Hz, amplitude).
    Fit {
        trace: PathBuf,
        #[arg(long, value_enum, default_value_t = Model::Hanger)]
        model: Model,
    },
    /// Evaluate `[sweep] operation` over the sweep grid.
    Sweep,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    Hanger,
    Lorentzian,
}

impl From<Model> for ResonanceModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Hanger => ResonanceModel::Hanger,
            Model::Lorentzian => ResonanceModel::Lorentzian,
        }
    }
}

fn config(cli: &Cli, required: bool) -> Result<RunConfig, CliError> {
    let Some(path) = &cli.config else {
        if required {
            return Err(ConfigError::Invalid { key: "--config".into(), reason: "this command needs a config".into() }.into());
        }
        return Ok(RunConfig::default());
    };
    let loaded = load_config(path, cli.strict)?;
    for key in &loaded.unknown_keys {
        eprintln!("warning: ignoring unknown config key `{key}`");
    }
    Ok(loaded.config)
}

fn write_output(cli: &Cli, cfg: &RunConfig, output: &Output) -> Result<(), CliError> {
    let format = cli.format.or(cfg.output.format).unwrap_or(Format::Csv);
    let bytes = export(output, format);
    let path = cli.out.clone().or_else(|| cfg.output.path.as_ref().map(PathBuf::from));
    match path {
        Some(path) => std::fs::write(&path, bytes).map_err(|source| CliError::Io { path, source }),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|source| CliError::Io { path: Path::new("<stdout>").to_owned(), source }),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = config(cli, !matches!(cli.command, Command::Fit { .. }))?;
    let output = match &cli.command {
        Command::QubitSpectrum { levels } => commands::qubit_spectrum(&cfg, *levels)?,
        Command::SingleTone => run_operation(&cfg, Operation::SingleToneMap, cli.threads)?,
        Command::TwoTone => run_operation(&cfg, Operation::TwoToneOverlay, cli.threads)?,
        Command::Sweep => run_sweep(&cfg, cli.threads)?,
        Command::Fit { trace, model } => commands::fit(&cfg, trace, (*model).into())?,
        Command::Design => {
            let (report, table) = commands::design(&cfg)?;
            // the report goes to the terminal unless a table was asked for there
            let to_file = cli.out.is_some() || cfg.output.path.is_some();
            if to_file || cli.format.is_some() {
                write_output(cli, &cfg, &table)?;
            }
            if to_file || cli.format.is_none() {
                print!("{}", report.render());
            }
            return Ok(());
        }
    };
    write_output(cli, &cfg, &output)?;
    match output.failure_count() {
        0 => Ok(()),
        failed => Err(CliError::PartialFailure { failed, total: output.point_count() }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
