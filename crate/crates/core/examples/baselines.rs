//! Every algorithm once on a Scale-1 scenario with a short budget, plus the
//! UD and RD reference deployments.
//!
//! `cargo run --release --example baselines -- [iters]`

use skyrelay::scenario::{Scale, ScenarioConfig};
use skyrelay::solvers::{pick_strategy, Algorithm, RunConfig, Strategy};

fn main() -> skyrelay::Result<()> {
    let iters = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let cfg = ScenarioConfig::generate(Scale::One, 1);
    let rc = RunConfig { max_iters: iters, seed: 4, ..RunConfig::default() };

    println!("{:<17}{:>6}{:>14}{:>5}{:>11}{:>10}{:>9}", "algo", "front", "maxcap f1", "N", "f3 J", "evals", "secs");
    for algo in Algorithm::ALL {
        let res = algo.run(&cfg, &rc)?;
        let o = pick_strategy(&res.final_front, Strategy::MaxNetCap)?.objectives;
        println!(
            "{:<17}{:>6}{:>14.4e}{:>5}{:>11.1}{:>10}{:>9.2}{}",
            algo.label(),
            res.final_front.len(),
            o.f1(),
            o.f2,
            o.f3,
            res.evaluations,
            res.wall_time_s,
            if o.feasible { "" } else { "  (penalized)" }
        );
    }
    Ok(())
}
