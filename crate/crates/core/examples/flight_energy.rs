//! Propulsion power over the speed range and deployment flight energy.
//!
//! `cargo run --example flight_energy`

use skyrelay::energy::{average_flight_energy, flight_energy, flight_time_spread, propulsion_power, FlightPlan};
use skyrelay::scenario::{EnergyParams, InducedTerm};

fn main() -> skyrelay::Result<()> {
    let ep = EnergyParams::default();
    let alt = EnergyParams { induced_term: InducedTerm::V0Fourth, ..EnergyParams::default() };
    println!("speed  P(v) W     P(v) W, v0^4 term");
    for v in [0.0, 5.0, 10.0, 15.0, 20.0, 30.0] {
        println!("{v:>5}  {:<10.3} {:.3}", propulsion_power(v, &ep), propulsion_power(v, &alt));
    }

    let origin = [0.0, 0.0, 0.0];
    println!("\n500 m level flight at 10 m/s: {:.1} J", flight_energy([500.0, 0.0, 0.0], 10.0, origin, &ep)?);
    println!("climb to (300, 400, 300) at 10 m/s: {:.1} J", flight_energy([300.0, 400.0, 300.0], 10.0, origin, &ep)?);

    let plan = FlightPlan {
        dest_xyz: vec![[100.0, 50.0, 250.0], [300.0, 300.0, 400.0], [50.0, 380.0, 300.0]],
        speed_m_s: vec![8.0, 15.0, 12.0],
        origin_xyz: origin,
    };
    println!("\nflight times: {:?}", plan.flight_times().iter().map(|t| format!("{t:.1} s")).collect::<Vec<_>>());
    println!("arrival spread: {:.1} s", flight_time_spread(&plan));
    println!("average energy: {:.1} J", average_flight_energy(&plan, &ep)?);
    Ok(())
}
