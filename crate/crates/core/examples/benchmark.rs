//! Repeated trials of several algorithms, statistics and exported files.
//!
//! `cargo run --release --example benchmark -- [trials] [out_dir]`
//!
//! Set `SKYRELAY_THREADS` to cap the worker pool; results do not depend on it.

use std::path::PathBuf;

use skyrelay::bench::{benchmark, commands::render_stats, read_stats_csv};
use skyrelay::scenario::{Scale, ScenarioConfig};
use skyrelay::solvers::{Algorithm, RunConfig};

fn main() -> skyrelay::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("skyrelay_bench"));

    let cfg = ScenarioConfig::generate(Scale::One, 1);
    let rc = RunConfig { max_iters: 60, ..RunConfig::default() };
    let algos = [Algorithm::Nsga3fdu, Algorithm::Nsga3, Algorithm::Nsga2, Algorithm::Ud, Algorithm::Rd];
    let (reports, stats) = benchmark(&cfg, &rc, &algos, trials, &out)?;

    print!("{}", render_stats(&stats));
    for algo in algos {
        println!("{:<14} feasibility {:.2}", algo.label(), stats.feasibility_rate(algo).unwrap_or(f64::NAN));
    }
    let reread = read_stats_csv(&out.join("stats.csv"))?;
    println!("{} reports, stats.csv round trip identical: {}", reports.len(), reread == stats);
    println!("files under {}", out.display());
    Ok(())
}
