use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use detsfc::commands::{cmd_compare, cmd_oracle_check, cmd_simulate, CommandError, Overrides};
use detsfc::StrategyKind;

#[derive(Parser)]
#[command(name = "detsfc", version, about = "Deterministic-latency SFC deployment experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON config file; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    strategy: Option<StrategyKind>,
    #[arg(long)]
    epochs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured strategy and write metrics.
    Simulate(Common),
    /// Run both strategies on identical workloads.
    Compare(Common),
    /// Check both heuristics against the exhaustive solver on small instances.
    OracleCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides { seed: self.seed, epochs: self.epochs, strategy: self.strategy }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result: Result<String, CommandError> = match &cli.command {
        Command::Simulate(c) => cmd_simulate(c.config.as_deref(), &c.overrides(), &c.out).map(|m| {
            format!(
                "{}: mean acceptance {:.4}, mean profit {:.4} over {} epochs -> {}",
                m.strategy,
                m.mean_acceptance.unwrap_or(f64::NAN),
                m.mean_profit,
                m.epochs.len(),
                c.out.display()
            )
        }),
        Command::Compare(c) => cmd_compare(c.config.as_deref(), &c.overrides(), &c.out).map(|s| {
            format!(
                "acceptance gain {:+.4} (95% CI [{:+.4}, {:+.4}]), peak {:+.4}, off-peak {:+.4}, profit gain {:+.4} -> {}",
                s.mean_acceptance_gain,
                s.acceptance_gain_ci.lo,
                s.acceptance_gain_ci.hi,
                s.peak.mean_acceptance_gain.unwrap_or(f64::NAN),
                s.off_peak.mean_acceptance_gain.unwrap_or(f64::NAN),
                s.mean_profit_gain,
                c.out.display()
            )
        }),
        Command::OracleCheck { common: c, instances } => {
            cmd_oracle_check(c.config.as_deref(), &c.overrides(), &c.out, *instances).map(|s| {
                format!(
                    "{} instances, {} dominance failures, det/oracle {:.4}, sph/oracle {:.4} -> {}",
                    s.instances,
                    s.dominance_failures,
                    s.det_mean_ratio.unwrap_or(f64::NAN),
                    s.sph_mean_ratio.unwrap_or(f64::NAN),
                    c.out.display()
                )
            })
        }
    };
    match result {
        Ok(line) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
