use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use skyrelay::bench::commands;
use skyrelay::scenario::Scale;
use skyrelay::solvers::{Algorithm, RunConfig, Strategy};

#[derive(Parser)]
#[command(name = "skyrelay", version, about = "Multi-UAV relay deployment for D2D networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a scenario file.
    GenScenario {
        #[arg(long, value_parser = parse::<Scale>)]
        scale: Scale,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run repeated trials of one algorithm and export the results.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_parser = parse::<Algorithm>)]
        algo: Algorithm,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        pop: usize,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        p_in: f64,
        #[arg(long, default_value_t = 0.2)]
        sigma1: f64,
        #[arg(long, default_value_t = 0.6)]
        sigma2: f64,
    },
    /// Recompute statistics from a run directory.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the solution picked by a strategy in one trial.
    Pick {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = parse::<Strategy>)]
        strategy: Strategy,
        #[arg(long)]
        trial: usize,
    },
    /// Communication energy efficiency with and without UAVs.
    Eff {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        scenario: PathBuf,
    },
}

fn parse<T: std::str::FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::GenScenario { scale, seed, out } => commands::gen_scenario(scale, seed, &out),
        Command::Run { scenario, algo, trials, pop, iters, seed, out, p_in, sigma1, sigma2 } => {
            let rc = RunConfig { pop, max_iters: iters, seed, p_in, sigma1, sigma2, ..RunConfig::default() };
            commands::run(&scenario, algo, trials, &rc, &out)
        }
        Command::Stats { input, out } => commands::stats(&input, &out),
        Command::Pick { input, strategy, trial } => commands::pick(&input, strategy, trial),
        Command::Eff { input, scenario } => commands::eff(&input, &scenario),
    };
    match result {
        Ok(text) => {
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
