//! Mixed-integer, variable-dimension solution encoding.
//!
//! A [`Solution`] stores UAV positions, powers and speeds in arrays padded to
//! `N_max` slots; only the first `n_active` slots describe deployed UAVs. The
//! remaining slots are auxiliary genes that keep every genome the same length
//! for crossover and mutation and are never read by [`evaluate`].
//!
//! Discrete genes are integer index vectors (zero-based): the serving UAV of
//! each relayed pair and the channel of every UAV slot and direct pair. The
//! one-hot matrices are materialized only on request.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::energy::{average_flight_energy, flight_time_spread, FlightPlan};
use crate::error::{Error, Result};
use crate::radio::{LinkModel, Placement};
use crate::scenario::ScenarioConfig;
use crate::solvers::random_search_operator;

/// Added to `(-f1, f2, f3)` when the arrival-time spread exceeds `T_th`.
pub const PENALTY: [f64; 3] = [1.0e7, 8.0, 1.0e6];

/// Number of continuous gene blocks per UAV slot (x, y, z, power, speed).
pub const CONTINUOUS_BLOCKS: usize = 5;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub power: Vec<f64>,
    pub speed: Vec<f64>,
    /// Serving UAV of each relayed pair, in `0..n_active`.
    pub assign: Vec<usize>,
    /// Channel of each UAV slot, in `0..U`.
    pub uav_chan: Vec<usize>,
    /// Channel of each direct pair, in `0..U`.
    pub direct_chan: Vec<usize>,
    pub n_active: usize,
}

/// The discrete half of a solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscretePart {
    pub n_active: usize,
    pub assign: Vec<usize>,
    pub uav_chan: Vec<usize>,
    pub direct_chan: Vec<usize>,
}

/// Minimization target `(-f1, f2, f3)`; penalized in place when infeasible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub neg_f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub feasible: bool,
}

impl ObjectiveVector {
    pub fn as_array(&self) -> [f64; 3] {
        [self.neg_f1, self.f2, self.f3]
    }

    /// `f1` with the reporting sign convention (negative when penalized).
    pub fn f1(&self) -> f64 {
        -self.neg_f1
    }

    /// Applies the time-spread penalty to every component.
    pub fn penalized(self) -> Self {
        Self {
            neg_f1: self.neg_f1 + PENALTY[0],
            f2: self.f2 + PENALTY[1],
            f3: self.f3 + PENALTY[2],
            feasible: false,
        }
    }
}

/// Per-gene `(lower, upper)` bounds of the flattened continuous genome.
pub fn continuous_bounds(cfg: &ScenarioConfig) -> Vec<(f64, f64)> {
    let b = &cfg.bounds;
    let n = cfg.counts.n_max;
    let blocks = [
        (b.l_min_m, b.l_max_m),
        (b.l_min_m, b.l_max_m),
        (b.z_min_m, b.z_max_m),
        (b.p_min_w, b.p_max_w),
        (b.v_min_m_s, b.v_max_m_s),
    ];
    blocks.iter().flat_map(|&bd| std::iter::repeat_n(bd, n)).collect()
}

fn sample_block<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|_| lo + rng.gen::<f64>() * (hi - lo)).collect()
}

impl Solution {
    pub fn n_slots(&self) -> usize {
        self.x.len()
    }

    fn blocks(&self) -> [&Vec<f64>; CONTINUOUS_BLOCKS] {
        [&self.x, &self.y, &self.z, &self.power, &self.speed]
    }

    fn blocks_mut(&mut self) -> [&mut Vec<f64>; CONTINUOUS_BLOCKS] {
        [&mut self.x, &mut self.y, &mut self.z, &mut self.power, &mut self.speed]
    }

    /// Flattened continuous genome `[x.., y.., z.., power.., speed..]`.
    pub fn continuous_genes(&self) -> Vec<f64> {
        self.blocks().iter().flat_map(|b| b.iter().copied()).collect()
    }

    pub fn set_continuous_genes(&mut self, genes: &[f64]) {
        let n = self.n_slots();
        assert_eq!(genes.len(), CONTINUOUS_BLOCKS * n, "genome length mismatch");
        for (i, block) in self.blocks_mut().into_iter().enumerate() {
            block.copy_from_slice(&genes[i * n..(i + 1) * n]);
        }
    }

    pub fn discrete(&self) -> DiscretePart {
        DiscretePart {
            n_active: self.n_active,
            assign: self.assign.clone(),
            uav_chan: self.uav_chan.clone(),
            direct_chan: self.direct_chan.clone(),
        }
    }

    pub fn set_discrete(&mut self, d: DiscretePart) {
        self.n_active = d.n_active;
        self.assign = d.assign;
        self.uav_chan = d.uav_chan;
        self.direct_chan = d.direct_chan;
    }

    /// Checks bounds, UAV count, assignment and channel ranges on the active slots.
    pub fn check_constraints(&self, cfg: &ScenarioConfig) -> Result<()> {
        let n = self.n_active;
        let c = &cfg.counts;
        let b = &cfg.bounds;
        if !(c.n_min..=c.n_max).contains(&n) {
            return Err(Error::contract(format!("n_active = {n} outside [{}, {}]", c.n_min, c.n_max)));
        }
        if self.blocks().iter().any(|blk| blk.len() < n) || self.uav_chan.len() < n {
            return Err(Error::contract("solution: fewer slots than active UAVs"));
        }
        let ranges = [
            ("x", b.l_min_m, b.l_max_m),
            ("y", b.l_min_m, b.l_max_m),
            ("altitude", b.z_min_m, b.z_max_m),
            ("power", b.p_min_w, b.p_max_w),
            ("speed", b.v_min_m_s, b.v_max_m_s),
        ];
        for (blk, (tag, lo, hi)) in self.blocks().iter().zip(ranges) {
            if let Some(i) = blk[..n].iter().position(|v| !(lo..=hi).contains(v)) {
                return Err(Error::contract(format!("{tag}: UAV {i} value {} outside [{lo}, {hi}]", blk[i])));
            }
        }
        if self.assign.len() != cfg.m() || self.assign.iter().any(|&r| r >= n) {
            return Err(Error::contract("every relayed pair needs exactly one active UAV"));
        }
        if self.uav_chan[..n].iter().any(|&ch| ch >= c.u_channels) {
            return Err(Error::contract("UAV channel out of range"));
        }
        if self.direct_chan.len() != cfg.k() || self.direct_chan.iter().any(|&ch| ch >= c.u_channels) {
            return Err(Error::contract("direct-pair channel out of range"));
        }
        Ok(())
    }

    /// Radio view of the active UAVs.
    pub fn placement(&self) -> Placement {
        let n = self.n_active;
        Placement {
            uav_xyz: (0..n).map(|i| [self.x[i], self.y[i], self.z[i]]).collect(),
            uav_tx_w: self.power[..n].to_vec(),
            assignment: self.assign.clone(),
            uav_channel: self.uav_chan[..n].to_vec(),
            direct_channel: self.direct_chan.clone(),
        }
    }

    pub fn flight_plan(&self, cfg: &ScenarioConfig) -> FlightPlan {
        let n = self.n_active;
        FlightPlan {
            dest_xyz: (0..n).map(|i| [self.x[i], self.y[i], self.z[i]]).collect(),
            speed_m_s: self.speed[..n].to_vec(),
            origin_xyz: cfg.bounds.origin(),
        }
    }

    /// One-hot pair-to-UAV matrix (M x N).
    pub fn assignment_matrix(&self) -> Vec<Vec<u8>> {
        self.assign
            .iter()
            .map(|&r| (0..self.n_active).map(|n| u8::from(n == r)).collect())
            .collect()
    }

    /// One-hot channel matrix ((N + K) x U): active UAVs first, then direct pairs.
    pub fn channel_matrix(&self, u_channels: usize) -> Vec<Vec<u8>> {
        self.uav_chan[..self.n_active]
            .iter()
            .chain(&self.direct_chan)
            .map(|&c| (0..u_channels).map(|j| u8::from(j == c)).collect())
            .collect()
    }
}

/// Uniform continuous genes plus a random-search discrete part, padded to `N_max`.
pub fn random_solution<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> Solution {
    let b = &cfg.bounds;
    let n = cfg.counts.n_max;
    let x = sample_block(rng, b.l_min_m, b.l_max_m, n);
    let y = sample_block(rng, b.l_min_m, b.l_max_m, n);
    let z = sample_block(rng, b.z_min_m, b.z_max_m, n);
    let power = sample_block(rng, b.p_min_w, b.p_max_w, n);
    let speed = sample_block(rng, b.v_min_m_s, b.v_max_m_s, n);
    let d = random_search_operator(cfg, rng);
    Solution {
        x,
        y,
        z,
        power,
        speed,
        assign: d.assign,
        uav_chan: d.uav_chan,
        direct_chan: d.direct_chan,
        n_active: d.n_active,
    }
}

/// Resamples every continuous gene outside its bounds uniformly within
/// them; in-bounds genes are left untouched.
pub fn repair_continuous<R: Rng + ?Sized>(mut sol: Solution, cfg: &ScenarioConfig, rng: &mut R) -> Solution {
    let b = &cfg.bounds;
    let ranges = [
        (b.l_min_m, b.l_max_m),
        (b.l_min_m, b.l_max_m),
        (b.z_min_m, b.z_max_m),
        (b.p_min_w, b.p_max_w),
        (b.v_min_m_s, b.v_max_m_s),
    ];
    for (block, (lo, hi)) in sol.blocks_mut().into_iter().zip(ranges) {
        for v in block.iter_mut() {
            if !(lo..=hi).contains(v) {
                *v = lo + rng.gen::<f64>() * (hi - lo);
            }
        }
    }
    sol
}

/// Extends every per-slot array to `N_max` with random in-bounds auxiliary
/// genes. `n_active` and existing slots are unchanged.
pub fn pad_solution<R: Rng + ?Sized>(mut sol: Solution, cfg: &ScenarioConfig, rng: &mut R) -> Solution {
    let b = &cfg.bounds;
    let n_max = cfg.counts.n_max;
    let ranges = [
        (b.l_min_m, b.l_max_m),
        (b.l_min_m, b.l_max_m),
        (b.z_min_m, b.z_max_m),
        (b.p_min_w, b.p_max_w),
        (b.v_min_m_s, b.v_max_m_s),
    ];
    for (block, (lo, hi)) in sol.blocks_mut().into_iter().zip(ranges) {
        while block.len() < n_max {
            block.push(lo + rng.gen::<f64>() * (hi - lo));
        }
    }
    while sol.uav_chan.len() < n_max {
        sol.uav_chan.push(rng.gen_range(0..cfg.counts.u_channels));
    }
    sol
}

/// Objective vector of a repaired solution, penalized when the arrival-time
/// spread exceeds `T_th`.
pub fn evaluate(sol: &Solution, cfg: &ScenarioConfig) -> Result<ObjectiveVector> {
    let raw = evaluate_unpenalized(sol, cfg)?;
    if flight_time_spread(&sol.flight_plan(cfg)) > cfg.bounds.t_th_s {
        Ok(raw.penalized())
    } else {
        Ok(raw)
    }
}

/// Objective vector without the time-spread penalty; always marked feasible.
pub fn evaluate_unpenalized(sol: &Solution, cfg: &ScenarioConfig) -> Result<ObjectiveVector> {
    sol.check_constraints(cfg)?;
    let placement = sol.placement();
    let capacity = LinkModel::new(cfg, &placement)?.capacity()?;
    let energy = average_flight_energy(&sol.flight_plan(cfg), &cfg.energy)?;
    Ok(ObjectiveVector { neg_f1: -capacity, f2: sol.n_active as f64, f3: energy, feasible: true })
}
