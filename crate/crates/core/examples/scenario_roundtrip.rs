//! Generate both scales, save to JSON, load back and validate.
//!
//! `cargo run --example scenario_roundtrip -- [seed]`

use skyrelay::scenario::{Scale, ScenarioConfig};

fn main() -> skyrelay::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let dir = std::env::temp_dir();
    for scale in [Scale::One, Scale::Two] {
        let cfg = ScenarioConfig::generate(scale, seed);
        let path = dir.join(format!("skyrelay_scenario_{scale:?}.json"));
        cfg.save(&path)?;
        let back = ScenarioConfig::load(&path)?;
        back.validate()?;
        let c = &back.counts;
        println!(
            "{scale:?}: M={} K={} U={} N in [{}, {}]  area [{}, {}] m  identical={}  -> {}",
            back.m(),
            back.k(),
            c.u_channels,
            c.n_min,
            c.n_max,
            back.bounds.l_min_m,
            back.bounds.l_max_m,
            back == cfg,
            path.display()
        );
    }

    let mut broken = ScenarioConfig::generate(Scale::One, seed);
    broken.counts.n_min = broken.counts.n_max + 1;
    if let Err(e) = broken.validate() {
        println!("invalid scenario rejected: {e}");
    }
    Ok(())
}
