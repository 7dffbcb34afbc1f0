//! World description shared by every other module.
//!
//! A [`ScenarioConfig`] is built once (generated from a seed or loaded from a
//! JSON file) and is immutable afterwards. Generation is a pure function of
//! `(scale, seed)`.
//!
//! # File format
//!
//! ```json
//! {
//!   "schema": 1,
//!   "counts":  { "m": 10, "k": 3, "n_min": 4, "n_max": 8, "u_channels": 3 },
//!   "bounds":  { "l_min_m": 0.0, "l_max_m": 400.0, "z_min_m": 200.0, "z_max_m": 500.0,
//!                "v_min_m_s": 6.0, "v_max_m_s": 16.0, "p_min_w": 0.1, "p_max_w": 1.0,
//!                "t_th_s": 12.0 },
//!   "channel": { "a": 9.61, "b": 0.16, "eta_los_db": 1.0, "eta_nlos_db": 20.0, ... },
//!   "energy":  { "p_blade_w": 79.8563, ... },
//!   "relayed_pairs": [ { "kind": "relayed", "swd_xy": [x, y], "dwd_xy": [x, y],
//!                        "tx_power_w": 0.01, "activity": 1.0 }, ... ],
//!   "direct_pairs":  [ { "kind": "direct", ... , "activity": 0.6 }, ... ]
//! }
//! ```
//!
//! Lengths are meters, powers watts, frequencies hertz.

use std::fs;
use std::path::Path;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Air-to-ground and ground-to-ground channel parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// Elevation-sigmoid parameter `a`.
    pub a: f64,
    /// Elevation-sigmoid parameter `b`.
    pub b: f64,
    pub eta_los_db: f64,
    pub eta_nlos_db: f64,
    /// Ground-to-ground gain at the 1 m reference distance, in dB.
    pub beta0_db: f64,
    /// Ground-to-ground path-loss exponent.
    pub alpha: f64,
    pub bandwidth_hz: f64,
    pub carrier_hz: f64,
    pub noise_psd_dbm_hz: f64,
    pub light_speed_m_s: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            a: 9.61,
            b: 0.16,
            eta_los_db: 1.0,
            eta_nlos_db: 20.0,
            beta0_db: -60.0,
            alpha: 2.0,
            bandwidth_hz: 1.0e6,
            carrier_hz: 2.0e9,
            noise_psd_dbm_hz: -174.0,
            light_speed_m_s: 2.998e8,
        }
    }
}

impl ChannelParams {
    /// Linear reference gain `beta0` (10^(dB/10)).
    pub fn beta0_linear(&self) -> f64 {
        10f64.powf(self.beta0_db / 10.0)
    }

    /// Noise power over one channel, in watts.
    pub fn noise_power_w(&self) -> f64 {
        let dbm = self.noise_psd_dbm_hz + 10.0 * self.bandwidth_hz.log10();
        10f64.powf((dbm - 30.0) / 10.0)
    }
}

/// Which denominator to use in the subtracted part of the induced-power term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InducedTerm {
    /// `V^2 / (2 v0^2)`, the standard rotary-wing model.
    #[default]
    Standard,
    /// `V^2 / (2 v0^4)`.
    V0Fourth,
}

/// Rotary-wing propulsion parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyParams {
    pub p_blade_w: f64,
    pub p_induced_w: f64,
    pub tip_speed_m_s: f64,
    pub rotor_induced_v_m_s: f64,
    pub drag_ratio: f64,
    pub air_density_kg_m3: f64,
    pub rotor_solidity: f64,
    pub disk_area_m2: f64,
    pub uav_mass_kg: f64,
    pub gravity_m_s2: f64,
    #[serde(default)]
    pub induced_term: InducedTerm,
}

impl Default for EnergyParams {
    fn default() -> Self {
        Self {
            p_blade_w: 79.8563,
            p_induced_w: 88.6279,
            tip_speed_m_s: 120.0,
            rotor_induced_v_m_s: 4.03,
            drag_ratio: 0.6,
            air_density_kg_m3: 1.225,
            rotor_solidity: 0.05,
            disk_area_m2: 0.503,
            uav_mass_kg: 2.0,
            gravity_m_s2: 9.8,
            induced_term: InducedTerm::Standard,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Relayed,
    Direct,
}

/// A source/destination device pair on the ground.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DevicePair {
    pub kind: PairKind,
    pub swd_xy: [f64; 2],
    pub dwd_xy: [f64; 2],
    pub tx_power_w: f64,
    /// Transmit probability; always 1 for relayed pairs.
    pub activity: f64,
}

impl DevicePair {
    pub fn swd_xyz(&self) -> [f64; 3] {
        [self.swd_xy[0], self.swd_xy[1], 0.0]
    }

    pub fn dwd_xyz(&self) -> [f64; 3] {
        [self.dwd_xy[0], self.dwd_xy[1], 0.0]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    /// Number of UAV-aided (relayed) pairs.
    pub m: usize,
    /// Number of direct pairs.
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub u_channels: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub l_min_m: f64,
    pub l_max_m: f64,
    pub z_min_m: f64,
    pub z_max_m: f64,
    pub v_min_m_s: f64,
    pub v_max_m_s: f64,
    pub p_min_w: f64,
    pub p_max_w: f64,
    /// Maximum allowed spread between the first and last UAV arrival.
    pub t_th_s: f64,
}

impl Bounds {
    /// Common launch point of every UAV, `(0, 0, z_min)`.
    pub fn origin(&self) -> [f64; 3] {
        [0.0, 0.0, self.z_min_m]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub schema: u32,
    pub counts: Counts,
    pub bounds: Bounds,
    pub channel: ChannelParams,
    pub energy: EnergyParams,
    pub relayed_pairs: Vec<DevicePair>,
    pub direct_pairs: Vec<DevicePair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scale {
    /// 10 relayed pairs, 3 direct pairs, 4..=8 UAVs, 3 channels.
    One,
    /// 100 relayed pairs, 6 direct pairs, 8..=16 UAVs, 7 channels.
    Two,
}

impl std::str::FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "one" => Ok(Scale::One),
            "2" | "two" => Ok(Scale::Two),
            other => Err(Error::Parse { what: "scale".into(), message: format!("unknown scale {other:?}") }),
        }
    }
}

const SWD_POWER_W: f64 = 0.01;
const DIRECT_ACTIVITY: f64 = 0.6;
const DIRECT_RING_M: (f64, f64) = (10.0, 50.0);

impl ScenarioConfig {
    /// Generates the standard scenario for `scale` with device positions drawn from `seed`.
    pub fn generate(scale: Scale, seed: u64) -> Self {
        let counts = match scale {
            Scale::One => Counts { m: 10, k: 3, n_min: 4, n_max: 8, u_channels: 3 },
            Scale::Two => Counts { m: 100, k: 6, n_min: 8, n_max: 16, u_channels: 7 },
        };
        let bounds = Bounds {
            l_min_m: 0.0,
            l_max_m: 400.0,
            z_min_m: 200.0,
            z_max_m: 500.0,
            v_min_m_s: 6.0,
            v_max_m_s: 16.0,
            p_min_w: 0.1,
            p_max_w: 1.0,
            t_th_s: 12.0,
        };

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (lo, hi) = (bounds.l_min_m, bounds.l_max_m);
        let point = |rng: &mut ChaCha8Rng| [rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)];

        let relayed_pairs = (0..counts.m)
            .map(|_| {
                let swd_xy = point(&mut rng);
                let dwd_xy = point(&mut rng);
                DevicePair { kind: PairKind::Relayed, swd_xy, dwd_xy, tx_power_w: SWD_POWER_W, activity: 1.0 }
            })
            .collect();

        let direct_pairs = (0..counts.k)
            .map(|_| {
                let swd_xy = point(&mut rng);
                let dwd_xy = loop {
                    let r = rng.gen_range(DIRECT_RING_M.0..=DIRECT_RING_M.1);
                    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
                    let cand = [swd_xy[0] + r * phi.cos(), swd_xy[1] + r * phi.sin()];
                    if cand.iter().all(|c| (lo..=hi).contains(c)) {
                        break cand;
                    }
                };
                DevicePair {
                    kind: PairKind::Direct,
                    swd_xy,
                    dwd_xy,
                    tx_power_w: SWD_POWER_W,
                    activity: DIRECT_ACTIVITY,
                }
            })
            .collect();

        Self {
            schema: SCHEMA_VERSION,
            counts,
            bounds,
            channel: ChannelParams::default(),
            energy: EnergyParams::default(),
            relayed_pairs,
            direct_pairs,
        }
    }

    pub fn m(&self) -> usize {
        self.relayed_pairs.len()
    }

    pub fn k(&self) -> usize {
        self.direct_pairs.len()
    }

    /// Checks every invariant and reports each violated field by name.
    pub fn validate(&self) -> Result<()> {
        let mut v = Vec::new();
        let mut check = |ok: bool, msg: &str| {
            if !ok {
                v.push(msg.to_string());
            }
        };

        let c = &self.counts;
        let b = &self.bounds;
        let ch = &self.channel;

        check(self.schema == SCHEMA_VERSION, "schema: unsupported version");
        check(c.m == self.relayed_pairs.len(), "counts.m: does not match relayed_pairs length");
        check(c.k == self.direct_pairs.len(), "counts.k: does not match direct_pairs length");
        check(c.n_min >= 1, "N_min >= 1 violated");
        check(c.u_channels >= 1, "U >= 1 violated");
        check(c.u_channels < c.n_min, "U < N_min violated");
        check(c.n_min <= c.n_max, "N_min <= N_max violated");
        check(c.n_max < c.m, "N_max < M violated");

        check(b.l_min_m < b.l_max_m, "bounds: l_min < l_max violated");
        check(b.z_min_m < b.z_max_m, "bounds: z_min < z_max violated");
        check(b.z_min_m > 0.0, "bounds: z_min > 0 violated");
        check(b.v_min_m_s < b.v_max_m_s, "bounds: v_min < v_max violated");
        check(b.v_min_m_s > 0.0, "bounds: v_min > 0 violated");
        check(b.p_min_w < b.p_max_w, "bounds: p_min < p_max violated");
        check(b.p_min_w > 0.0, "bounds: p_min > 0 violated");
        check(b.t_th_s > 0.0, "bounds: t_th > 0 violated");

        check(ch.bandwidth_hz > 0.0, "channel.bandwidth_hz > 0 violated");
        check(ch.carrier_hz > 0.0, "channel.carrier_hz > 0 violated");
        check(ch.alpha >= 1.0, "channel.alpha >= 1 violated");
        check(ch.a > 0.0, "channel.a > 0 violated");
        check(ch.b > 0.0, "channel.b > 0 violated");
        check(ch.light_speed_m_s > 0.0, "channel.light_speed_m_s > 0 violated");

        let e = &self.energy;
        let energy_fields = [
            ("p_blade_w", e.p_blade_w),
            ("p_induced_w", e.p_induced_w),
            ("tip_speed_m_s", e.tip_speed_m_s),
            ("rotor_induced_v_m_s", e.rotor_induced_v_m_s),
            ("drag_ratio", e.drag_ratio),
            ("air_density_kg_m3", e.air_density_kg_m3),
            ("rotor_solidity", e.rotor_solidity),
            ("disk_area_m2", e.disk_area_m2),
            ("uav_mass_kg", e.uav_mass_kg),
            ("gravity_m_s2", e.gravity_m_s2),
        ];
        for (name, value) in energy_fields {
            check(value > 0.0, &format!("energy.{name} > 0 violated"));
        }

        let area = b.l_min_m..=b.l_max_m;
        let lists = [("relayed_pairs", &self.relayed_pairs, PairKind::Relayed), ("direct_pairs", &self.direct_pairs, PairKind::Direct)];
        for (list, pairs, kind) in lists {
            for (i, p) in pairs.iter().enumerate() {
                check(p.kind == kind, &format!("{list}[{i}].kind: wrong pair kind"));
                let inside = p.swd_xy.iter().chain(p.dwd_xy.iter()).all(|c| area.contains(c));
                check(inside, &format!("{list}[{i}]: coordinates outside [L_min, L_max]^2"));
                check(p.tx_power_w > 0.0, &format!("{list}[{i}].tx_power_w > 0 violated"));
                check((0.0..=1.0).contains(&p.activity), &format!("{list}[{i}].activity in [0, 1] violated"));
                if kind == PairKind::Relayed {
                    check(p.activity == 1.0, &format!("{list}[{i}].activity must be 1 for relayed pairs"));
                }
            }
        }

        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invariant { violations: v })
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)
            .map_err(|e| Error::Parse { what: "scenario".into(), message: e.to_string() })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }
}
