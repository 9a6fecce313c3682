use std::path::PathBuf;
use std::process::ExitCode;

use biphoton::states::AxisUnits;
use biphoton_cli::{commands, config, validate, CliError, Overrides, RunConfig};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "biphoton", version, about = "Biphoton joint spectra through cavity-material systems")]
struct Cli {
    /// Output directory (overrides the config and the BIPHOTON_OUT_DIR variable).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Regularization epsilon in meV (overrides [system] epsilon).
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Seed for the randomized validation instances.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate one input and write JSIs, Schmidt spectrum, entropy and purity.
    Run { config: PathBuf },
    /// Repeat the run over the [sweep] values and write entropy.csv.
    Sweep { config: PathBuf },
    /// Run the oracle-equivalence and invariant checks.
    Validate,
    /// Convert a grid file between nm and meV axes.
    Convert {
        input: PathBuf,
        output: PathBuf,
        /// Target units; defaults to the other unit.
        #[arg(long, value_enum)]
        to: Option<Unit>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Unit {
    #[value(name = "meV")]
    Mev,
    Nm,
}

fn execute(cli: Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
    }
    let env_out = std::env::var(config::OUTPUT_DIR_ENV).ok();
    let overrides = Overrides {
        out: cli.out.as_deref(),
        epsilon: cli.epsilon,
    };
    match &cli.command {
        Command::Run { config } => {
            let cfg = RunConfig::load(config)?;
            let outcome = commands::run(&cfg, &overrides, env_out.as_deref())?;
            let s = &outcome.summary;
            println!(
                "entropy {:.6} -> {:.6} nats, purity {}, eps {:e}, wrote {}",
                s.entropy_input,
                s.entropy_output,
                s.purity.mu.map_or("n/a".to_string(), |m| format!("{m:.6e}")),
                s.diagnostics.epsilon_used,
                outcome.dir.display()
            );
        }
        Command::Sweep { config } => {
            let cfg = RunConfig::load(config)?;
            let (dir, rows) = commands::sweep(&cfg, &overrides, env_out.as_deref())?;
            for r in &rows {
                println!("{}={} M={} entropy {:.6}", r.parameter, r.value, r.materials, r.summary.entropy_output);
            }
            println!("wrote {}", dir.join("entropy.csv").display());
        }
        Command::Validate => {
            let report = validate::validate(cli.seed.unwrap_or(validate::DEFAULT_SEED));
            print!("{}", report.render());
            if !report.passed() {
                let names: Vec<_> = report.failures().map(|c| c.name).collect();
                return Err(CliError::Validation(names.join(", ")));
            }
        }
        Command::Convert { input, output, to } => {
            let to = to.map(|u| match u {
                Unit::Mev => AxisUnits::MilliElectronVolt,
                Unit::Nm => AxisUnits::Nanometer,
            });
            let units = commands::convert(input, output, to)?;
            println!("wrote {} ({})", output.display(), units.label());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
