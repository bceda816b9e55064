use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use thompson_budget::harness::{self, ExperimentSpec, Preset, PresetOptions, FULL_HORIZON};
use thompson_budget::verification::{
    leading_coefficient_ratio, prior_art_bound, run_suite, theorem1_bound, ts_ma_pull_threshold,
    ts_td_pull_threshold, BoundKind, BoundReport, SuiteOptions, TS_TD_SLACK,
};
use thompson_budget::Result;

#[derive(Parser)]
#[command(
    name = "tsbudget",
    version,
    about = "Budgeted Thompson sampling experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON spec file.
    Run {
        spec: PathBuf,
        /// Overrides the spec's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run a built-in experiment.
    Preset {
        name: Preset,
        #[arg(long)]
        horizon: Option<u64>,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Use a 10^6 horizon.
        #[arg(long, conflicts_with = "horizon")]
        full_horizon: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run the numerical self-checks and print one line per check.
    Verify {
        #[arg(long, default_value_t = SuiteOptions::default().seed)]
        seed: u64,
    },
    /// Print regret bounds for a single gap.
    Bounds {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        horizon: u64,
        #[arg(long)]
        alpha: f64,
    },
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { spec, out, threads } => {
            let text = std::fs::read_to_string(&spec)
                .map_err(|e| thompson_budget::Error::io(spec.clone(), e))?;
            let mut spec = ExperimentSpec::from_json(&text)?;
            if out.is_some() {
                spec.output_dir = out;
            }
            let output = harness::run_experiment_with(&spec, threads)?;
            println!("{}", output.results_csv.display());
        }
        Command::Preset {
            name,
            horizon,
            reps,
            seed,
            full_horizon,
            out,
            threads,
        } => {
            let defaults = PresetOptions::default();
            let opts = PresetOptions {
                horizon: horizon.unwrap_or(if full_horizon {
                    FULL_HORIZON
                } else {
                    defaults.horizon
                }),
                replications: reps.unwrap_or(defaults.replications),
                seed: seed.unwrap_or(defaults.seed),
            };
            for (label, mut spec) in name.specs(&opts) {
                let base = out.clone().unwrap_or_else(|| spec.resolved_output_dir());
                spec.output_dir = Some(base.join(&label));
                let output = harness::run_experiment_with(&spec, threads)?;
                println!("{}", output.results_csv.display());
            }
        }
        Command::Verify { seed } => {
            let outcomes = run_suite(&SuiteOptions {
                seed,
                ..SuiteOptions::default()
            })?;
            let mut all = true;
            for o in &outcomes {
                println!(
                    "{} {}: {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                );
                all &= o.passed;
            }
            return Ok(all);
        }
        Command::Bounds {
            delta,
            horizon,
            alpha,
        } => {
            let gaps = [delta];
            for (label, kind) in [
                ("theorem1", BoundKind::VanillaTs),
                ("ts-ma", BoundKind::TsMa { alpha }),
                (
                    "ts-td",
                    BoundKind::TsTd {
                        alpha,
                        slack: TS_TD_SLACK,
                    },
                ),
            ] {
                println!("# {label}");
                print!("{}", BoundReport::for_gaps(kind, &gaps, horizon)?.to_csv());
            }
            let prior = prior_art_bound(delta, horizon)?;
            println!(
                "theorem1_regret_bound={}",
                harness::fmt_real(theorem1_bound(delta, horizon)?)
            );
            println!(
                "prior_art_leading_term_ln={}",
                harness::fmt_real(prior.ln_value)
            );
            println!("prior_art_leading_term={}", harness::fmt_real(prior.value));
            println!(
                "leading_coefficient_ratio={}",
                harness::fmt_real(leading_coefficient_ratio())
            );
            println!(
                "ts_ma_pull_threshold={}",
                harness::fmt_real(ts_ma_pull_threshold(delta, horizon, alpha)?)
            );
            println!(
                "ts_td_pull_threshold={}",
                harness::fmt_real(ts_td_pull_threshold(delta, horizon, alpha)?)
            );
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
