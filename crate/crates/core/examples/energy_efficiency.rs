//! Communication energy efficiency of the max-capacity deployment against
//! direct device-to-device links.
//!
//! `cargo run --release --example energy_efficiency -- [trials]`

use skyrelay::bench::{efficiency_table, run_trials};
use skyrelay::scenario::{Scale, ScenarioConfig};
use skyrelay::solvers::{Algorithm, RunConfig};

fn main() -> skyrelay::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let cfg = ScenarioConfig::generate(Scale::One, 1);
    let rc = RunConfig { max_iters: 80, ..RunConfig::default() };
    let reports = run_trials(&cfg, &rc, Algorithm::Nsga3fdu, trials)?;

    println!("{:<6}{:>16}{:>16}{:>16}{:>16}", "trial", "cap UAV bps", "cap D2D bps", "eff UAV b/J", "eff D2D b/J");
    for r in efficiency_table(&reports, &cfg)? {
        println!(
            "{:<6}{:>16.4e}{:>16.4e}{:>16.4e}{:>16.4e}",
            r.trial, r.capacity_with_uavs_bps, r.capacity_without_uavs_bps, r.efficiency_with_uavs, r.efficiency_without_uavs
        );
    }
    Ok(())
}
