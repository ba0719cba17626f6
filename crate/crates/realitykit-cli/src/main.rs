use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use realitykit::reality::Mode;
use realitykit_cli::experiments::{
    run_axiom_suite, run_mu_sweep, run_tsallis_sweep, run_updown_gap, run_werner_sweep, CliError,
    CliResult, GapConfig, MuConfig, SuiteConfig, TsallisConfig, WernerConfig,
};

#[derive(Parser)]
#[command(
    name = "realitykit",
    version,
    about = "Reality-monotone sweeps and property suites for small quantum systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep Werner-state reality across the purity grid for each Renyi order
    WernerSweep(WernerArgs),
    /// Sweep parity-family reality across mu for each polar angle and order
    MuSweep(MuArgs),
    /// Map the optimized-minus-plain reality gap over an (alpha, eps) grid
    UpdownGap(GapArgs),
    /// Sweep Werner-state Tsallis reality across the purity grid
    TsallisSweep(TsallisArgs),
    /// Run the randomized property-check registry and write JSONL reports
    AxiomSuite(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Reject order parameters without monotonicity guarantees
    Monotone,
    /// Evaluate any order in the formula's domain
    Exploratory,
}

impl From<ModeArg> for Mode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::Monotone => Mode::Monotone,
            ModeArg::Exploratory => Mode::Exploratory,
        }
    }
}

#[derive(Args)]
struct WernerArgs {
    /// Renyi orders, comma separated
    #[arg(long = "alpha", value_delimiter = ',', num_args = 1..)]
    alphas: Option<Vec<f64>>,
    /// Number of eps grid points
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path; the plot script lands next to it
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Monotone)]
    mode: ModeArg,
}

#[derive(Args)]
struct MuArgs {
    #[arg(long = "alpha", value_delimiter = ',', num_args = 1..)]
    alphas: Option<Vec<f64>>,
    /// Polar angles of the measured spin direction, comma separated
    #[arg(long = "phi", value_delimiter = ',', num_args = 1..)]
    polar_angles: Option<Vec<f64>>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Monotone)]
    mode: ModeArg,
}

#[derive(Args)]
struct GapArgs {
    /// Interior grid points per axis
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TsallisArgs {
    /// Tsallis orders, comma separated
    #[arg(long = "q", value_delimiter = ',', num_args = 1..)]
    qs: Option<Vec<f64>>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Monotone)]
    mode: ModeArg,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// Samples per check, overriding each check's default
    #[arg(long)]
    batch: Option<usize>,
    /// Run only checks whose id contains this substring
    #[arg(long = "check")]
    filter: Option<String>,
    /// Output JSONL path
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::WernerSweep(args) => {
            let mut cfg = WernerConfig::default();
            if let Some(alphas) = args.alphas {
                cfg.alphas = alphas;
            }
            if let Some(steps) = args.steps {
                cfg.steps = steps;
            }
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(out) = args.out {
                cfg.out = out;
            }
            cfg.mode = args.mode.into();
            let summary = run_werner_sweep(&cfg)?;
            println!(
                "werner-sweep: {} rows -> {} (max |numeric - closed| = {:.3e}); plot script {}",
                summary.rows,
                summary.csv.display(),
                summary.max_abs_diff,
                summary.script.display()
            );
        }
        Command::MuSweep(args) => {
            let mut cfg = MuConfig::default();
            if let Some(alphas) = args.alphas {
                cfg.alphas = alphas;
            }
            if let Some(polar) = args.polar_angles {
                cfg.polar_angles = polar;
            }
            if let Some(steps) = args.steps {
                cfg.steps = steps;
            }
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(out) = args.out {
                cfg.out = out;
            }
            cfg.mode = args.mode.into();
            let summary = run_mu_sweep(&cfg)?;
            println!(
                "mu-sweep: {} rows -> {} (max azimuth spread = {:.3e}); plot script {}",
                summary.rows,
                summary.csv.display(),
                summary.max_azimuth_spread,
                summary.script.display()
            );
        }
        Command::UpdownGap(args) => {
            let mut cfg = GapConfig::default();
            if let Some(steps) = args.steps {
                cfg.steps = steps;
            }
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(out) = args.out {
                cfg.out = out;
            }
            let summary = run_updown_gap(&cfg)?;
            println!(
                "updown-gap: {} rows -> {}; plot script {}",
                summary.rows,
                summary.csv.display(),
                summary.script.display()
            );
            println!(
                "  gap max {:.12e} at (alpha={}, eps={}), min {:.3e}",
                summary.max_gap, summary.argmax.0, summary.argmax.1, summary.min_gap
            );
            println!(
                "  plus-eps chi variant: max {:.12e} at (alpha={}, eps={})",
                summary.plus_max_gap, summary.plus_argmax.0, summary.plus_argmax.1
            );
        }
        Command::TsallisSweep(args) => {
            let mut cfg = TsallisConfig::default();
            if let Some(qs) = args.qs {
                cfg.qs = qs;
            }
            if let Some(steps) = args.steps {
                cfg.steps = steps;
            }
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(out) = args.out {
                cfg.out = out;
            }
            cfg.mode = args.mode.into();
            let summary = run_tsallis_sweep(&cfg)?;
            println!(
                "tsallis-sweep: {} rows -> {} (max |numeric - closed| = {:.3e}); plot script {}",
                summary.rows,
                summary.csv.display(),
                summary.max_abs_diff,
                summary.script.display()
            );
        }
        Command::AxiomSuite(args) => {
            let mut cfg = SuiteConfig::default();
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            cfg.batch = args.batch;
            cfg.filter = args.filter;
            if let Some(out) = args.out {
                cfg.out = out;
            }
            let summary = run_axiom_suite(&cfg)?;
            let asserted = summary.reports.iter().filter(|r| !r.is_probe()).count();
            let probes = summary.reports.len() - asserted;
            for report in summary.reports.iter().filter(|r| !r.pass && !r.is_probe()) {
                eprintln!("FAIL {}", report.to_json_line());
            }
            println!(
                "axiom-suite: {} checks ({} asserted, {} probes) -> {}; asserted checks {}",
                summary.reports.len(),
                asserted,
                probes,
                summary.jsonl.display(),
                if summary.all_pass { "pass" } else { "FAIL" }
            );
            if !summary.all_pass {
                return Err(CliError::Assertion("asserted checks failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err @ CliError::Assertion(_)) => {
            eprintln!("{err}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(2)
        }
    }
}
