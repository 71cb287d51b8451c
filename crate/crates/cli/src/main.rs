use anyhow::{bail, Context, Result};
use casimir_chain::checks::{run_check, CHECK_COUNT};
use casimir_chain::experiment::{load_config, run_experiment, write_atomically, ExperimentKind};
use casimir_chain::ForceForm;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Free fermions on deformed hopping chains.
#[derive(Parser)]
#[command(name = "casimir-chain", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single-particle spectra
    Spectrum(RunArgs),
    /// Ground-state energies over a size sweep
    Energy(RunArgs),
    /// Block entropy profiles against a CFT curve
    Entropy(RunArgs),
    /// Obstacle potential scans
    Potential(RunArgs),
    /// Edge forces and their predictions
    Force(RunArgs),
    /// Cardy fits of an energy sweep
    Fit(RunArgs),
    /// Runs the acceptance checks and prints one line per check
    Check(CheckArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML experiment description.
    #[arg(long)]
    config: PathBuf,
    /// Overrides `output_path`; stdout when neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; all cores by default.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Force prediction the residual column is taken against.
    #[arg(long, value_enum, default_value_t = Variant::Eq20)]
    variant: Variant,
}

#[derive(Args)]
struct CheckArgs {
    /// Check ids to run; all when omitted.
    ids: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; all cores by default.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Print measured quantities under each line.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Eq19,
    Eq20,
}

impl From<Variant> for ForceForm {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Eq19 => ForceForm::Smooth,
            Variant::Eq20 => ForceForm::WeakDeformation,
        }
    }
}

fn pool(jobs: Option<u32>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        b = b.num_threads(n as usize);
    }
    Ok(b.build()?)
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => write_atomically(path, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn run(kind: ExperimentKind, args: RunArgs) -> Result<()> {
    let cfg = load_config(&args.config)?;
    let out = args.out.or_else(|| cfg.output_path.clone());
    let output = pool(args.jobs)?.install(|| run_experiment(&cfg, kind, args.variant.into()))?;
    let bytes = output.to_bytes()?;
    emit(out.as_ref(), &bytes).with_context(|| format!("writing {} output", kind.name()))
}

fn check(args: CheckArgs) -> Result<bool> {
    let ids = if args.ids.is_empty() { (1..=CHECK_COUNT).collect() } else { args.ids };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=CHECK_COUNT).contains(&i)) {
        bail!("check id {bad} out of range 1..={CHECK_COUNT}");
    }
    let outcomes = pool(args.jobs)?.install(|| ids.iter().map(|&i| run_check(i)).collect::<Vec<_>>());
    let mut text = String::new();
    for o in &outcomes {
        if args.verbose || args.out.is_some() {
            text.push_str(&o.to_string());
        } else {
            text.push_str(&o.summary());
            text.push('\n');
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    text.push_str(&format!("{passed}/{} passed\n", outcomes.len()));
    emit(args.out.as_ref(), text.as_bytes())?;
    Ok(passed == outcomes.len())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(a) => run(ExperimentKind::Spectrum, a).map(|_| true),
        Command::Energy(a) => run(ExperimentKind::EnergySweep, a).map(|_| true),
        Command::Entropy(a) => run(ExperimentKind::EntropyProfile, a).map(|_| true),
        Command::Potential(a) => run(ExperimentKind::PotentialScan, a).map(|_| true),
        Command::Force(a) => run(ExperimentKind::ForceSweep, a).map(|_| true),
        Command::Fit(a) => run(ExperimentKind::Fit, a).map(|_| true),
        Command::Check(a) => check(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
