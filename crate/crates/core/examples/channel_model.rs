//! Path loss, channel gains and per-pair SINR/rates for a hand-built placement.
//!
//! `cargo run --example channel_model`

use skyrelay::radio::{gain_g2g, path_loss_a2g, LinkModel, Placement};
use skyrelay::scenario::{Scale, ScenarioConfig};

fn main() -> skyrelay::Result<()> {
    let cfg = ScenarioConfig::generate(Scale::One, 1);
    let ch = &cfg.channel;

    for d in [0.0, 100.0, 200.0, 400.0] {
        let pl = path_loss_a2g([d, 0.0, 0.0], [0.0, 0.0, 200.0], ch)?;
        println!("A2G, UAV at 200 m, ground offset {d:>5} m: {pl:.3} dB");
    }
    println!("G2G gain over 50 m: {:.4e}", gain_g2g([0.0, 0.0], [50.0, 0.0], ch)?);
    println!("noise power: {:.4e} W", ch.noise_power_w());

    // Three UAVs, pairs split round-robin, UAVs 0 and 2 sharing channel 0.
    let pl = Placement {
        uav_xyz: vec![[100.0, 100.0, 300.0], [300.0, 100.0, 300.0], [200.0, 300.0, 300.0]],
        uav_tx_w: vec![0.5, 0.5, 0.5],
        assignment: (0..cfg.m()).map(|m| m % 3).collect(),
        uav_channel: vec![0, 1, 0],
        direct_channel: (0..cfg.k()).map(|k| k % cfg.counts.u_channels).collect(),
    };
    let model = LinkModel::new(&cfg, &pl)?;
    println!("\npair  uav  sinr_up     sinr_down   sinr_direct  rate_bps");
    for (m, link) in model.report()?.iter().enumerate() {
        println!(
            "{:>4} {:>4}  {:<11.3e} {:<11.3e} {:<12.3e} {:.4e}",
            m, link.uav, link.sinr_uplink, link.sinr_downlink, link.sinr_direct, link.rate_bps
        );
    }
    println!("network capacity: {:.4e} bps", model.capacity()?);
    Ok(())
}
