use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use relay_secrecy_sim::{apply_config, run_to_files, Error, ExperimentSpec, Preset, Sweep};

/// Secrecy outage capacity sweeps for an energy-harvesting LS-MIMO AF relay.
///
/// Writes one CSV row per sweep point (closed form, Monte Carlo estimate,
/// legitimate capacity, high-power limit, optimal split) and a `.manifest`
/// file with the resolved parameters next to it.
#[derive(Parser, Debug)]
#[command(version)]
struct Cli {
    /// Starting preset: fig2, fig3, fig4, fig5, fig6 or custom.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["fig2", "fig3", "fig4", "fig5", "fig6", "custom"]))]
    preset: Option<String>,
    /// key=value config file applied on top of the preset.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV output path; CSV goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Monte Carlo trials per sweep point (0 = closed forms only).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Sweep as var:lo:hi:step, e.g. alpha_re:0.2:2:0.2.
    #[arg(long)]
    sweep: Option<Sweep>,
    /// Optimize the power-splitting ratio at every sweep point.
    #[arg(long)]
    optimize_theta: bool,
    /// Transmit SNR in dB (sets the source power).
    #[arg(long, allow_hyphen_values = true)]
    snr_db: Option<f64>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

fn resolve(cli: &Cli) -> Result<ExperimentSpec, Error> {
    let base = match &cli.preset {
        Some(name) => name.parse::<Preset>().map_err(Error::Sweep)?.spec(),
        None => ExperimentSpec::default(),
    };
    let mut spec = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| relay_secrecy_sim::ConfigError::Io(path.clone(), e))?;
            apply_config(&text, base)?
        }
        None => base,
    };
    if let Some(out) = &cli.out {
        spec.out = Some(out.clone());
    }
    if let Some(trials) = cli.trials {
        spec.trials = trials;
    }
    if let Some(seed) = cli.seed {
        spec.seed = seed;
    }
    if let Some(sweep) = cli.sweep {
        spec.sweep = sweep;
    }
    if cli.optimize_theta {
        spec.optimize_theta = true;
    }
    if let Some(db) = cli.snr_db {
        spec.params = spec.params.with_snr_db(db);
    }
    spec.validate()?;
    Ok(spec)
}

fn run(cli: Cli) -> Result<(), Error> {
    let spec = resolve(&cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Sweep(format!("cannot start worker pool: {e}")))?;
    let rows = pool.install(|| run_to_files(&spec))?;
    if let Some(out) = &spec.out {
        eprintln!("wrote {} rows to {}", rows.len(), out.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
