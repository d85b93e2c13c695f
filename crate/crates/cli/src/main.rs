use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tracedist::{RunConfig, Variant};
use tracedist_cli::commands::{self, Table};
use tracedist_cli::files::{
    estimator_kind, validate_clock, EstimateSettings, EstimatorName, ExperimentConfig, InitName, ModeName,
    StateFile, VariantName,
};
use tracedist_cli::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "tracedist", version, about = "Trace-distance estimation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the exact trace distance of two states
    Oracle(Pair),
    /// Run the estimator over a clock sweep and emit CSV
    Estimate(EstimateArgs),
    /// Regenerate the reference tables as CSV
    Reproduce(ReproduceArgs),
    /// Run the equality test
    Distinguish(DistinguishArgs),
    /// Probability that the SWAP test reads 1 for two pure states
    SwapTest(Pair),
}

#[derive(Args, Debug)]
struct Pair {
    #[arg(long)]
    state_a: PathBuf,
    #[arg(long)]
    state_b: PathBuf,
}

#[derive(Args, Debug, Default)]
struct RunFlags {
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Clock sizes, e.g. `2,3,4` or `2-10`
    #[arg(long)]
    clock: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    estimator: Option<EstimatorArg>,
    /// Draws per readout for `--estimator sample`
    #[arg(long)]
    shots: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Second-stage clock qubits (exact readout when omitted)
    #[arg(long)]
    second_clock: Option<usize>,
    #[arg(long, value_enum)]
    init: Option<InitArg>,
    /// Partial-swap steps per unitary in `--mode lmr`
    #[arg(long)]
    lmr_steps: Option<usize>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    /// Experiment file; flags override its settings
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    state_a: Option<PathBuf>,
    #[arg(long)]
    state_b: Option<PathBuf>,
    #[command(flatten)]
    run: RunFlags,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[arg(value_enum)]
    table: TableArg,
    #[command(flatten)]
    run: RunFlags,
}

#[derive(Args, Debug)]
struct DistinguishArgs {
    #[command(flatten)]
    pair: Pair,
    /// First-stage clock sizes, one verdict per size
    #[arg(long, default_value = "5")]
    clock: String,
    /// Second-stage clock qubits (defaults to the first-stage size)
    #[arg(long)]
    second_clock: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Full,
    Reduced,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Trotter,
    Lmr,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EstimatorArg {
    Expectation,
    Mode,
    Sample,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InitArg {
    Uniform,
    ImprovedSine,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableArg {
    Table2,
    Fig4,
}

fn parse_clock(text: &str) -> CliResult<Vec<usize>> {
    let bad = |part: &str| CliError::field("clock", format!("cannot parse `{part}`"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| bad(part))?;
                let hi: usize = hi.trim().parse().map_err(|_| bad(part))?;
                if lo > hi {
                    return Err(bad(part));
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| bad(part))?),
        }
    }
    validate_clock("clock", &out)?;
    Ok(out)
}

fn load_state(path: &Path) -> CliResult<tracedist::DensityMatrix> {
    StateFile::load(path)?.to_density()
}

impl RunFlags {
    fn apply(
        &self,
        mut settings: EstimateSettings,
        config_shots: Option<usize>,
    ) -> CliResult<EstimateSettings> {
        if let Some(v) = self.variant {
            settings.variant = match v {
                VariantArg::Full => VariantName::Full,
                VariantArg::Reduced => VariantName::Reduced,
            }
            .into();
        }
        if let Some(c) = &self.clock {
            settings.clock = parse_clock(c)?;
        }
        let run = &mut settings.run;
        if let Some(m) = self.mode {
            run.unitary_mode = match m {
                ModeArg::Exact => ModeName::Exact,
                ModeArg::Trotter => ModeName::Trotter,
                ModeArg::Lmr => ModeName::Lmr,
            }
            .into();
        }
        let name = match (self.estimator, run.estimator) {
            (Some(EstimatorArg::Expectation), _) => Some(EstimatorName::Expectation),
            (Some(EstimatorArg::Mode), _) => Some(EstimatorName::Mode),
            (Some(EstimatorArg::Sample), _) => Some(EstimatorName::Sample),
            (None, tracedist::EstimatorKind::Sample { .. }) if self.shots.is_some() => {
                Some(EstimatorName::Sample)
            }
            (None, _) => None,
        };
        if let Some(name) = name {
            run.estimator = estimator_kind(name, self.shots.or(config_shots))?;
        }
        if let Some(s) = self.seed {
            run.seed = s;
        }
        if let Some(p) = self.second_clock {
            if !(1..=24).contains(&p) {
                return Err(CliError::field(
                    "second-clock",
                    format!("must be in 1..=24, got {p}"),
                ));
            }
            run.second_clock_qubits = Some(p);
        }
        if let Some(i) = self.init {
            run.init = match i {
                InitArg::Uniform => InitName::Uniform,
                InitArg::ImprovedSine => InitName::ImprovedSine,
            }
            .into();
        }
        if let Some(n) = self.lmr_steps {
            if n == 0 {
                return Err(CliError::field("lmr-steps", "must be at least 1"));
            }
            run.lmr_steps = n;
        }
        Ok(settings)
    }
}

fn with_output(out: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> CliResult<()>) -> CliResult<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
        }
    }
    Ok(())
}

fn estimate(args: EstimateArgs) -> CliResult<()> {
    let (a_path, b_path, base, config_shots, config_out) = match &args.config {
        Some(path) => {
            let cfg = ExperimentConfig::load(path)?;
            let settings = cfg.settings()?;
            (cfg.state_a, cfg.state_b, settings, cfg.shots, cfg.output)
        }
        None => {
            let a = args
                .state_a
                .clone()
                .ok_or_else(|| CliError::field("state-a", "required without --config"))?;
            let b = args
                .state_b
                .clone()
                .ok_or_else(|| CliError::field("state-b", "required without --config"))?;
            let settings = EstimateSettings {
                variant: Variant::Reduced,
                clock: vec![RunConfig::default().clock_qubits],
                run: RunConfig::default(),
            };
            (a, b, settings, None, None)
        }
    };
    let a_path = args.state_a.clone().unwrap_or(a_path);
    let b_path = args.state_b.clone().unwrap_or(b_path);
    let settings = args.run.apply(base, config_shots)?;
    let a = load_state(&a_path)?;
    let b = load_state(&b_path)?;
    let rows = commands::estimate_rows(&a, &b, &settings)?;
    let sources = vec![
        format!("state_a={}", a_path.display()),
        format!("state_b={}", b_path.display()),
    ];
    let out = args.run.out.clone().or(config_out);
    with_output(out.as_deref(), |w| {
        commands::write_estimate_csv(w, &rows, &settings, &sources)
    })
}

fn reproduce(args: ReproduceArgs) -> CliResult<()> {
    let settings = args.run.apply(commands::reproduce_settings(), None)?;
    let table = match args.table {
        TableArg::Table2 => Table::Table2,
        TableArg::Fig4 => Table::Fig4,
    };
    with_output(args.run.out.as_deref(), |w| {
        commands::write_reproduction(w, table, &settings)
    })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Oracle(p) => {
            println!(
                "{}",
                commands::oracle(&load_state(&p.state_a)?, &load_state(&p.state_b)?)?
            );
        }
        Command::Estimate(args) => estimate(args)?,
        Command::Reproduce(args) => reproduce(args)?,
        Command::Distinguish(args) => {
            let a = load_state(&args.pair.state_a)?;
            let b = load_state(&args.pair.state_b)?;
            for m in parse_clock(&args.clock)? {
                let cfg = RunConfig {
                    clock_qubits: m,
                    second_clock_qubits: args.second_clock,
                    ..RunConfig::default()
                };
                println!("{}", commands::distinguish(&a, &b, &cfg)?);
            }
        }
        Command::SwapTest(p) => {
            let psi = StateFile::load(&p.state_a)?.ket()?;
            let phi = StateFile::load(&p.state_b)?.ket()?;
            println!("{}", commands::swap_test(&psi, &phi)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
