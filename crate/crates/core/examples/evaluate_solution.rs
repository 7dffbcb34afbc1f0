//! Random candidate solutions: constraints, objectives and the penalty.
//!
//! `cargo run --example evaluate_solution -- [seed]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skyrelay::encoding::{evaluate, evaluate_unpenalized, random_solution};
use skyrelay::energy::flight_time_spread;
use skyrelay::scenario::{Scale, ScenarioConfig};

fn main() -> skyrelay::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let cfg = ScenarioConfig::generate(Scale::One, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    println!("N  spread_s  raw f1 bps    f2  f3 J      penalized f1   feasible");
    for _ in 0..8 {
        let sol = random_solution(&cfg, &mut rng);
        sol.check_constraints(&cfg)?;
        let raw = evaluate_unpenalized(&sol, &cfg)?;
        let obj = evaluate(&sol, &cfg)?;
        println!(
            "{:<2} {:<9.1} {:<13.4e} {:<3} {:<9.1} {:<14.4e} {}",
            sol.n_active,
            flight_time_spread(&sol.flight_plan(&cfg)),
            raw.f1(),
            raw.f2,
            raw.f3,
            obj.f1(),
            obj.feasible
        );
    }
    Ok(())
}
