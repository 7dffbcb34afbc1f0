//! Analytic link model: path loss, channel gains, expected interference and
//! SINR, amplify-and-forward link rates and network capacity.
//!
//! Indices are zero-based throughout: relayed pair `m` in `0..M`, UAV `n` in
//! `0..N`, channel in `0..U`. Expected interference averages over the
//! round-robin schedule of each co-channel UAV (`1/|W|` per serving SWD) and
//! over the activity probability of direct pairs.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::{ChannelParams, ScenarioConfig};

/// Active UAVs and the discrete assignment/channel plan they serve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub uav_xyz: Vec<[f64; 3]>,
    pub uav_tx_w: Vec<f64>,
    /// Serving UAV of each relayed pair (length M).
    pub assignment: Vec<usize>,
    /// Channel of each UAV (length N).
    pub uav_channel: Vec<usize>,
    /// Channel of each direct pair (length K).
    pub direct_channel: Vec<usize>,
}

impl Placement {
    pub fn n_uavs(&self) -> usize {
        self.uav_xyz.len()
    }

    /// Number of pairs served by each UAV (`mu_n`).
    pub fn load(&self) -> Vec<usize> {
        let mut mu = vec![0; self.n_uavs()];
        for &n in &self.assignment {
            mu[n] += 1;
        }
        mu
    }

    /// Checks assignment/channel ranges, position and power bounds, and vector lengths.
    pub fn validate(&self, cfg: &ScenarioConfig) -> Result<()> {
        let n = self.n_uavs();
        let u = cfg.counts.u_channels;
        let b = &cfg.bounds;
        if self.uav_tx_w.len() != n || self.uav_channel.len() != n {
            return Err(Error::contract("placement: per-UAV vectors differ in length"));
        }
        if self.assignment.len() != cfg.m() || self.direct_channel.len() != cfg.k() {
            return Err(Error::contract("placement: assignment or direct-channel length mismatch"));
        }
        if let Some(m) = self.assignment.iter().position(|&r| r >= n) {
            return Err(Error::contract(format!("placement: pair {m} assigned to missing UAV")));
        }
        if self.uav_channel.iter().chain(&self.direct_channel).any(|&c| c >= u) {
            return Err(Error::contract("placement: channel index out of range"));
        }
        let tol = 1e-9;
        let within = |v: f64, lo: f64, hi: f64| v >= lo - tol && v <= hi + tol;
        for (i, (p, w)) in self.uav_xyz.iter().zip(&self.uav_tx_w).enumerate() {
            let ok = within(p[0], b.l_min_m, b.l_max_m)
                && within(p[1], b.l_min_m, b.l_max_m)
                && within(p[2], b.z_min_m, b.z_max_m)
                && within(*w, b.p_min_w, b.p_max_w);
            if !ok {
                return Err(Error::contract(format!("placement: UAV {i} outside position/power bounds")));
            }
        }
        Ok(())
    }
}

fn dist3(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Air-to-ground path loss in dB between a ground device and a UAV.
///
/// Blends LoS and NLoS excess loss with a sigmoid in the elevation angle
/// (degrees) on top of free-space loss at the carrier frequency.
pub fn path_loss_a2g(wd_xyz: [f64; 3], uav_xyz: [f64; 3], ch: &ChannelParams) -> Result<f64> {
    let d = dist3(wd_xyz, uav_xyz);
    if d <= 0.0 {
        return Err(Error::domain("path loss: coincident device and UAV"));
    }
    let height = uav_xyz[2] - wd_xyz[2];
    if height <= 0.0 {
        return Err(Error::domain("path loss: UAV must be above the device"));
    }
    let theta_deg = (height / d).asin().to_degrees();
    let excess = (ch.eta_los_db - ch.eta_nlos_db) / (1.0 + ch.a * (-ch.b * (theta_deg - ch.a)).exp());
    let free_space = 20.0 * (4.0 * PI * ch.carrier_hz * d / ch.light_speed_m_s).log10();
    Ok(excess + free_space + ch.eta_nlos_db)
}

/// Converts a path loss in dB to a linear power gain.
pub fn gain_from_path_loss(pl_db: f64) -> f64 {
    10f64.powf(-pl_db / 10.0)
}

pub fn gain_a2g(wd_xyz: [f64; 3], uav_xyz: [f64; 3], ch: &ChannelParams) -> Result<f64> {
    path_loss_a2g(wd_xyz, uav_xyz, ch).map(gain_from_path_loss)
}

/// Ground-to-ground LoS gain `beta0 * d^-alpha` over horizontal distance.
pub fn gain_g2g(xy1: [f64; 2], xy2: [f64; 2], ch: &ChannelParams) -> Result<f64> {
    let d2 = (xy1[0] - xy2[0]).powi(2) + (xy1[1] - xy2[1]).powi(2);
    if d2 <= 0.0 {
        return Err(Error::domain("ground gain: coincident devices"));
    }
    Ok(ch.beta0_linear() * d2.powf(-0.5 * ch.alpha))
}

/// Per-pair link quantities produced by [`LinkModel::report`].
#[derive(Debug, Clone, PartialEq)]
pub struct PairLink {
    pub uav: usize,
    pub sinr_uplink: f64,
    pub sinr_downlink: f64,
    pub sinr_direct: f64,
    pub rate_bps: f64,
}

/// Expected-SINR evaluator for one placement.
///
/// Construction indexes the placement (who serves whom, who shares which
/// channel); individual quantities are computed on demand.
#[derive(Debug)]
pub struct LinkModel<'a> {
    cfg: &'a ScenarioConfig,
    pl: &'a Placement,
    noise_w: f64,
    /// SWDs served by each UAV.
    members: Vec<Vec<usize>>,
}

impl<'a> LinkModel<'a> {
    pub fn new(cfg: &'a ScenarioConfig, pl: &'a Placement) -> Result<Self> {
        pl.validate(cfg)?;
        let mut members = vec![Vec::new(); pl.n_uavs()];
        for (m, &n) in pl.assignment.iter().enumerate() {
            members[n].push(m);
        }
        Ok(Self { cfg, pl, noise_w: cfg.channel.noise_power_w(), members })
    }

    pub fn noise_w(&self) -> f64 {
        self.noise_w
    }

    fn check_pair(&self, m: usize) -> Result<usize> {
        self.pl
            .assignment
            .get(m)
            .copied()
            .ok_or_else(|| Error::domain(format!("relayed pair {m} out of range")))
    }

    fn check_served(&self, m: usize, n: usize) -> Result<()> {
        let r = self.check_pair(m)?;
        if n >= self.pl.n_uavs() {
            return Err(Error::domain(format!("UAV {n} out of range")));
        }
        if r != n {
            return Err(Error::contract(format!("pair {m} is not served by UAV {n}")));
        }
        Ok(())
    }

    /// Other UAVs on `n`'s channel that serve at least one pair.
    fn co_channel_uavs(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        let c = self.pl.uav_channel[n];
        (0..self.pl.n_uavs())
            .filter(move |&o| o != n && self.pl.uav_channel[o] == c && !self.members[o].is_empty())
    }

    fn co_channel_direct(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        let c = self.pl.uav_channel[n];
        (0..self.cfg.k()).filter(move |&k| self.pl.direct_channel[k] == c)
    }

    /// Expected interference at UAV `n`'s receiver.
    ///
    /// Independent of which of `n`'s pairs is currently transmitting.
    pub fn uplink_interference(&self, n: usize) -> Result<f64> {
        let ch = &self.cfg.channel;
        let uav = self.pl.uav_xyz[n];
        let mut relayed = 0.0;
        for o in self.co_channel_uavs(n) {
            let w = &self.members[o];
            let mut sum = 0.0;
            for &s in w {
                let pair = &self.cfg.relayed_pairs[s];
                sum += pair.tx_power_w * gain_a2g(pair.swd_xyz(), uav, ch)?;
            }
            relayed += sum / w.len() as f64;
        }
        let mut direct = 0.0;
        for k in self.co_channel_direct(n) {
            let pair = &self.cfg.direct_pairs[k];
            direct += pair.activity * pair.tx_power_w * gain_a2g(pair.swd_xyz(), uav, ch)?;
        }
        Ok(relayed + direct)
    }

    fn sinr_uplink_with(&self, m: usize, n: usize, interference: f64) -> Result<f64> {
        let pair = &self.cfg.relayed_pairs[m];
        let signal = pair.tx_power_w * gain_a2g(pair.swd_xyz(), self.pl.uav_xyz[n], &self.cfg.channel)?;
        Ok(signal / (self.noise_w + interference))
    }

    /// Expected SINR at UAV `n` for the transmission of SWD `m`.
    pub fn sinr_uplink(&self, m: usize, n: usize) -> Result<f64> {
        self.check_served(m, n)?;
        self.sinr_uplink_with(m, n, self.uplink_interference(n)?)
    }

    /// Expected interference at DWD `m` while UAV `n` forwards to it.
    pub fn downlink_interference(&self, n: usize, m: usize) -> Result<f64> {
        self.check_served(m, n)?;
        let ch = &self.cfg.channel;
        let dwd = self.cfg.relayed_pairs[m].dwd_xyz();
        let mut total = 0.0;
        for o in self.co_channel_uavs(n) {
            total += self.pl.uav_tx_w[o] * gain_a2g(dwd, self.pl.uav_xyz[o], ch)?;
        }
        let dwd_xy = self.cfg.relayed_pairs[m].dwd_xy;
        for k in self.co_channel_direct(n) {
            let pair = &self.cfg.direct_pairs[k];
            total += pair.activity * pair.tx_power_w * gain_g2g(pair.swd_xy, dwd_xy, ch)?;
        }
        Ok(total)
    }

    /// Expected SINR at DWD `m` of UAV `n`'s forwarded signal.
    pub fn sinr_downlink(&self, n: usize, m: usize) -> Result<f64> {
        let interference = self.downlink_interference(n, m)?;
        let dwd = self.cfg.relayed_pairs[m].dwd_xyz();
        let signal = self.pl.uav_tx_w[n] * gain_a2g(dwd, self.pl.uav_xyz[n], &self.cfg.channel)?;
        Ok(signal / (self.noise_w + interference))
    }

    /// Expected interference at DWD `m` on the direct SWD-to-DWD leg, which
    /// shares the channel of the pair's serving UAV.
    pub fn direct_leg_interference(&self, m: usize) -> Result<f64> {
        let n = self.check_pair(m)?;
        let ch = &self.cfg.channel;
        let dwd_xy = self.cfg.relayed_pairs[m].dwd_xy;
        let mut relayed = 0.0;
        for o in self.co_channel_uavs(n) {
            let w = &self.members[o];
            let mut sum = 0.0;
            for &s in w {
                let pair = &self.cfg.relayed_pairs[s];
                sum += pair.tx_power_w * gain_g2g(pair.swd_xy, dwd_xy, ch)?;
            }
            relayed += sum / w.len() as f64;
        }
        let mut direct = 0.0;
        for k in self.co_channel_direct(n) {
            let pair = &self.cfg.direct_pairs[k];
            direct += pair.activity * pair.tx_power_w * gain_g2g(pair.swd_xy, dwd_xy, ch)?;
        }
        Ok(relayed + direct)
    }

    /// Expected SINR of the direct SWD-to-DWD leg of relayed pair `m`.
    pub fn sinr_direct(&self, m: usize) -> Result<f64> {
        let interference = self.direct_leg_interference(m)?;
        let pair = &self.cfg.relayed_pairs[m];
        let signal = pair.tx_power_w * gain_g2g(pair.swd_xy, pair.dwd_xy, &self.cfg.channel)?;
        Ok(signal / (self.noise_w + interference))
    }

    fn af_rate(&self, mu: usize, direct: f64, up: f64, down: f64) -> f64 {
        let w = self.cfg.channel.bandwidth_hz;
        w / (2.0 * mu as f64) * (1.0 + direct + up * down / (1.0 + up + down)).log2()
    }

    /// Expected amplify-and-forward rate of pair `m` through UAV `n`; zero
    /// unless `n` serves `m`.
    pub fn link_rate(&self, m: usize, n: usize) -> Result<f64> {
        let r = self.check_pair(m)?;
        if n >= self.pl.n_uavs() {
            return Err(Error::domain(format!("UAV {n} out of range")));
        }
        if r != n {
            return Ok(0.0);
        }
        let up = self.sinr_uplink(m, n)?;
        let down = self.sinr_downlink(n, m)?;
        let direct = self.sinr_direct(m)?;
        Ok(self.af_rate(self.members[n].len(), direct, up, down))
    }

    /// Link quantities of every relayed pair, reusing each UAV's uplink
    /// interference across the pairs it serves.
    pub fn report(&self) -> Result<Vec<PairLink>> {
        let mut uplink_cache: Vec<Option<f64>> = vec![None; self.pl.n_uavs()];
        let mut out = Vec::with_capacity(self.cfg.m());
        for (m, &n) in self.pl.assignment.iter().enumerate() {
            let i_up = match uplink_cache[n] {
                Some(v) => v,
                None => {
                    let v = self.uplink_interference(n)?;
                    uplink_cache[n] = Some(v);
                    v
                }
            };
            let up = self.sinr_uplink_with(m, n, i_up)?;
            let down = self.sinr_downlink(n, m)?;
            let direct = self.sinr_direct(m)?;
            let rate = self.af_rate(self.members[n].len(), direct, up, down);
            out.push(PairLink { uav: n, sinr_uplink: up, sinr_downlink: down, sinr_direct: direct, rate_bps: rate });
        }
        Ok(out)
    }

    /// Expected D2D network capacity in bit/s.
    pub fn capacity(&self) -> Result<f64> {
        Ok(self.report()?.iter().map(|p| p.rate_bps).sum())
    }

    /// Expected rate of each relayed pair (its only nonzero term).
    pub fn per_pair_rates(&self) -> Result<Vec<f64>> {
        Ok(self.report()?.into_iter().map(|p| p.rate_bps).collect())
    }

    /// Expected aggregate rate relayed by each UAV.
    pub fn per_uav_rates(&self) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.pl.n_uavs()];
        for p in self.report()? {
            out[p.uav] += p.rate_bps;
        }
        Ok(out)
    }
}

pub fn exp_interference_at_uav(m: usize, n: usize, pl: &Placement, cfg: &ScenarioConfig) -> Result<f64> {
    let model = LinkModel::new(cfg, pl)?;
    model.check_served(m, n)?;
    model.uplink_interference(n)
}

pub fn exp_sinr_uplink(m: usize, n: usize, pl: &Placement, cfg: &ScenarioConfig) -> Result<f64> {
    LinkModel::new(cfg, pl)?.sinr_uplink(m, n)
}

pub fn exp_sinr_downlink(n: usize, m: usize, pl: &Placement, cfg: &ScenarioConfig) -> Result<f64> {
    LinkModel::new(cfg, pl)?.sinr_downlink(n, m)
}

pub fn exp_sinr_direct_leg(m: usize, pl: &Placement, cfg: &ScenarioConfig) -> Result<f64> {
    LinkModel::new(cfg, pl)?.sinr_direct(m)
}

pub fn link_rate(m: usize, n: usize, pl: &Placement, cfg: &ScenarioConfig) -> Result<f64> {
    LinkModel::new(cfg, pl)?.link_rate(m, n)
}

pub fn network_capacity(pl: &Placement, cfg: &ScenarioConfig) -> Result<f64> {
    LinkModel::new(cfg, pl)?.capacity()
}

/// Capacity when every relayed pair talks straight to its DWD at full duty on
/// `pair_channel[m]`, with direct pairs on `direct_channel[k]`.
pub fn direct_only_capacity(cfg: &ScenarioConfig, pair_channel: &[usize], direct_channel: &[usize]) -> Result<f64> {
    let u = cfg.counts.u_channels;
    if pair_channel.len() != cfg.m() || direct_channel.len() != cfg.k() {
        return Err(Error::contract("direct-only capacity: channel vector length mismatch"));
    }
    if pair_channel.iter().chain(direct_channel).any(|&c| c >= u) {
        return Err(Error::contract("direct-only capacity: channel index out of range"));
    }
    let ch = &cfg.channel;
    let noise = ch.noise_power_w();
    let mut total = 0.0;
    for (m, pair) in cfg.relayed_pairs.iter().enumerate() {
        let c = pair_channel[m];
        let signal = pair.tx_power_w * gain_g2g(pair.swd_xy, pair.dwd_xy, ch)?;
        let mut interference = 0.0;
        for (o, other) in cfg.relayed_pairs.iter().enumerate() {
            if o != m && pair_channel[o] == c {
                interference += other.tx_power_w * gain_g2g(other.swd_xy, pair.dwd_xy, ch)?;
            }
        }
        for (k, d) in cfg.direct_pairs.iter().enumerate() {
            if direct_channel[k] == c {
                interference += d.activity * d.tx_power_w * gain_g2g(d.swd_xy, pair.dwd_xy, ch)?;
            }
        }
        total += ch.bandwidth_hz * (1.0 + signal / (noise + interference)).log2();
    }
    Ok(total)
}

/// Capacity per unit transmit power (bit/J). With UAVs the UAV transmit
/// powers are counted alongside the relayed SWDs.
pub fn comm_energy_efficiency(capacity_bps: f64, pl: &Placement, cfg: &ScenarioConfig, with_uavs: bool) -> Result<f64> {
    if capacity_bps < 0.0 {
        return Err(Error::domain("energy efficiency: negative capacity"));
    }
    let swd: f64 = cfg.relayed_pairs.iter().map(|p| p.tx_power_w).sum();
    let total = if with_uavs { swd + pl.uav_tx_w.iter().sum::<f64>() } else { swd };
    if total <= 0.0 {
        return Err(Error::domain("energy efficiency: zero transmit power"));
    }
    Ok(capacity_bps / total)
}
