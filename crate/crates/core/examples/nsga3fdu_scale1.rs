//! One NSGA-III-FDU run on a Scale-1 scenario, then the three strategy picks.
//!
//! `cargo run --release --example nsga3fdu_scale1 -- [scenario_seed] [run_seed]`

use skyrelay::scenario::{Scale, ScenarioConfig};
use skyrelay::solvers::{nsga3fdu, pick_strategy, RunConfig, Strategy};

fn main() -> skyrelay::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().unwrap_or(0));
    let scenario_seed = args.next().unwrap_or(1);
    let seed = args.next().unwrap_or(0);

    let cfg = ScenarioConfig::generate(Scale::One, scenario_seed);
    let rc = RunConfig { seed, ..RunConfig::default() };
    let res = nsga3fdu(&cfg, &rc)?;

    println!("front size {} after {} evaluations in {:.2} s", res.final_front.len(), res.evaluations, res.wall_time_s);
    for ind in &res.final_front {
        let o = &ind.objectives;
        println!("  f1 {:>12.1} bps  N {}  f3 {:>8.1} J  feasible {}", o.f1(), o.f2, o.f3, o.feasible);
    }
    for s in Strategy::ALL {
        let o = pick_strategy(&res.final_front, s)?.objectives;
        println!("{s:>13}: f1 {:.4e}  N {}  f3 {:.1}", o.f1(), o.f2, o.f3);
    }
    Ok(())
}
