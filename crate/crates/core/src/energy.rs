//! Rotary-wing propulsion power and straight-line deployment flight energy.

use crate::error::{Error, Result};
use crate::scenario::{EnergyParams, InducedTerm};

/// Per-UAV destinations and cruise speeds from a common origin.
#[derive(Debug, Clone, PartialEq)]
pub struct FlightPlan {
    pub dest_xyz: Vec<[f64; 3]>,
    pub speed_m_s: Vec<f64>,
    pub origin_xyz: [f64; 3],
}

impl FlightPlan {
    pub fn len(&self) -> usize {
        self.dest_xyz.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dest_xyz.is_empty()
    }

    /// Flight time of each UAV, `D_n / V_n`.
    pub fn flight_times(&self) -> Vec<f64> {
        self.dest_xyz
            .iter()
            .zip(&self.speed_m_s)
            .map(|(d, v)| distance(*d, self.origin_xyz) / v)
            .collect()
    }
}

fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Level-flight propulsion power at speed `v` (blade profile, induced and
/// parasite terms).
pub fn propulsion_power(v: f64, ep: &EnergyParams) -> f64 {
    let v2 = v * v;
    let v0 = ep.rotor_induced_v_m_s;
    let blade = ep.p_blade_w * (1.0 + 3.0 * v2 / (ep.tip_speed_m_s * ep.tip_speed_m_s));
    let subtracted = match ep.induced_term {
        InducedTerm::Standard => v2 / (2.0 * v0.powi(2)),
        InducedTerm::V0Fourth => v2 / (2.0 * v0.powi(4)),
    };
    let induced = ep.p_induced_w * ((1.0 + v2 * v2 / (4.0 * v0.powi(4))).sqrt() - subtracted).sqrt();
    let parasite = 0.5 * ep.drag_ratio * ep.air_density_kg_m3 * ep.rotor_solidity * ep.disk_area_m2 * v2 * v;
    blade + induced + parasite
}

/// Energy of a constant-speed straight flight from `origin` to `dest`,
/// including the potential-energy change. Acceleration is ignored, so the
/// kinetic term vanishes.
pub fn flight_energy(dest: [f64; 3], speed: f64, origin: [f64; 3], ep: &EnergyParams) -> Result<f64> {
    if speed <= 0.0 || !speed.is_finite() {
        return Err(Error::domain(format!("flight energy: speed must be positive, got {speed}")));
    }
    let travel = propulsion_power(speed, ep) * distance(dest, origin) / speed;
    let climb = ep.uav_mass_kg * ep.gravity_m_s2 * (dest[2] - origin[2]);
    Ok(travel + climb)
}

/// Mean deployment energy over the UAVs of the plan.
pub fn average_flight_energy(plan: &FlightPlan, ep: &EnergyParams) -> Result<f64> {
    if plan.is_empty() {
        return Err(Error::domain("average flight energy: no UAVs"));
    }
    if plan.speed_m_s.len() != plan.len() {
        return Err(Error::contract("flight plan: speed and destination counts differ"));
    }
    let mut total = 0.0;
    for (d, v) in plan.dest_xyz.iter().zip(&plan.speed_m_s) {
        total += flight_energy(*d, *v, plan.origin_xyz, ep)?;
    }
    Ok(total / plan.len() as f64)
}

/// Spread between the last and first arrival. Zero for an empty plan.
pub fn flight_time_spread(plan: &FlightPlan) -> f64 {
    let times = plan.flight_times();
    let max = times.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = times.iter().copied().fold(f64::INFINITY, f64::min);
    if times.is_empty() {
        0.0
    } else {
        max - min
    }
}
