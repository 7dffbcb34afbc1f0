//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use rand::Rng;
use skyrelay::radio::Placement;
use skyrelay::scenario::{DevicePair, PairKind, Scale, ScenarioConfig};

/// Pareto level of every vector by repeated O(n^2) peeling; 0 is the first front.
pub fn brute_force_levels(objs: &[Vec<f64>]) -> Vec<usize> {
    let dom = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y);
    let mut level = vec![usize::MAX; objs.len()];
    let mut current = 0;
    while level.contains(&usize::MAX) {
        let open: Vec<usize> = (0..objs.len()).filter(|&i| level[i] == usize::MAX).collect();
        let layer: Vec<usize> = open
            .iter()
            .copied()
            .filter(|&i| !open.iter().any(|&j| j != i && dom(&objs[j], &objs[i])))
            .collect();
        for i in layer {
            level[i] = current;
        }
        current += 1;
    }
    level
}

/// Small random world and placement; UAVs may be idle.
pub fn random_instance<R: Rng>(rng: &mut R) -> (ScenarioConfig, Placement) {
    let m = rng.gen_range(1..=6);
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(0..=3);
    let u = rng.gen_range(1..=3);
    let mut cfg = ScenarioConfig::generate(Scale::One, 0);
    let xy = |rng: &mut R| [rng.gen_range(0.0..400.0), rng.gen_range(0.0..400.0)];
    cfg.relayed_pairs = (0..m)
        .map(|_| DevicePair {
            kind: PairKind::Relayed,
            swd_xy: xy(rng),
            dwd_xy: xy(rng),
            tx_power_w: rng.gen_range(0.005..0.05),
            activity: 1.0,
        })
        .collect();
    cfg.direct_pairs = (0..k)
        .map(|_| DevicePair {
            kind: PairKind::Direct,
            swd_xy: xy(rng),
            dwd_xy: xy(rng),
            tx_power_w: rng.gen_range(0.005..0.05),
            activity: rng.gen_range(0.0..=1.0),
        })
        .collect();
    cfg.counts.m = m;
    cfg.counts.k = k;
    cfg.counts.u_channels = u;
    let pl = Placement {
        uav_xyz: (0..n).map(|_| [rng.gen_range(0.0..400.0), rng.gen_range(0.0..400.0), rng.gen_range(200.0..500.0)]).collect(),
        uav_tx_w: (0..n).map(|_| rng.gen_range(0.1..1.0)).collect(),
        assignment: (0..m).map(|_| rng.gen_range(0..n)).collect(),
        uav_channel: (0..n).map(|_| rng.gen_range(0..u)).collect(),
        direct_channel: (0..k).map(|_| rng.gen_range(0..u)).collect(),
    };
    (cfg, pl)
}

/// Every radio quantity for one instance, transcribed term by term from the
/// model with 0/1 assignment and channel matrices.
#[derive(Debug)]
pub struct RadioOracle {
    pub i_up: Vec<f64>,
    pub sinr_up: Vec<f64>,
    pub i_down: Vec<f64>,
    pub sinr_down: Vec<f64>,
    pub i_direct: Vec<f64>,
    pub sinr_direct: Vec<f64>,
    /// rate[m][n]
    pub rate: Vec<Vec<f64>>,
    pub capacity: f64,
}

fn a2g(g: [f64; 2], uav: [f64; 3], cfg: &ScenarioConfig) -> f64 {
    let c = &cfg.channel;
    let d = ((g[0] - uav[0]).powi(2) + (g[1] - uav[1]).powi(2) + uav[2].powi(2)).sqrt();
    let theta_deg = (uav[2] / d).asin().to_degrees();
    let pl = (c.eta_los_db - c.eta_nlos_db) / (1.0 + c.a * (-c.b * (theta_deg - c.a)).exp())
        + 20.0 * (4.0 * std::f64::consts::PI * c.carrier_hz * d / c.light_speed_m_s).log10()
        + c.eta_nlos_db;
    10f64.powf(-pl / 10.0)
}

fn g2g(p: [f64; 2], q: [f64; 2], cfg: &ScenarioConfig) -> f64 {
    let d = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
    10f64.powf(cfg.channel.beta0_db / 10.0) * d.powf(-cfg.channel.alpha)
}

pub fn radio_oracle(cfg: &ScenarioConfig, pl: &Placement) -> RadioOracle {
    let m_count = cfg.relayed_pairs.len();
    let n_count = pl.uav_xyz.len();
    let u = cfg.counts.u_channels;
    let delta: Vec<Vec<u8>> = (0..m_count).map(|m| (0..n_count).map(|n| u8::from(pl.assignment[m] == n)).collect()).collect();
    let eps: Vec<Vec<u8>> = (0..n_count).map(|n| (0..u).map(|c| u8::from(pl.uav_channel[n] == c)).collect()).collect();
    let sigma2 = 10f64.powf((cfg.channel.noise_psd_dbm_hz + 10.0 * cfg.channel.bandwidth_hz.log10() - 30.0) / 10.0);
    let w_hz = cfg.channel.bandwidth_hz;

    let chan = |n: usize| (0..u).find(|&c| eps[n][c] == 1).unwrap();
    // W_n: SWDs served by UAV n
    let w_set = |n: usize| -> Vec<usize> { (0..m_count).filter(|&m| delta[m][n] == 1).collect() };
    // H_c \ n, keeping only UAVs that serve someone
    let h_set = |n: usize| -> Vec<usize> {
        (0..n_count).filter(|&o| o != n && eps[o][chan(n)] == 1 && !w_set(o).is_empty()).collect()
    };
    let k_set = |n: usize| -> Vec<usize> { (0..cfg.direct_pairs.len()).filter(|&k| pl.direct_channel[k] == chan(n)).collect() };
    let serving = |m: usize| (0..n_count).find(|&n| delta[m][n] == 1).unwrap();

    let mut out = RadioOracle {
        i_up: vec![],
        sinr_up: vec![],
        i_down: vec![],
        sinr_down: vec![],
        i_direct: vec![],
        sinr_direct: vec![],
        rate: vec![],
        capacity: 0.0,
    };
    for m in 0..m_count {
        let n = serving(m);
        let pm = &cfg.relayed_pairs[m];

        let mut e_s = 0.0;
        for &o in &h_set(n) {
            let ws = w_set(o);
            for &wi in &ws {
                let p = &cfg.relayed_pairs[wi];
                e_s += p.tx_power_w * a2g(p.swd_xy, pl.uav_xyz[n], cfg) / ws.len() as f64;
            }
        }
        let mut e_d = 0.0;
        for &k in &k_set(n) {
            let p = &cfg.direct_pairs[k];
            e_d += p.activity * p.tx_power_w * a2g(p.swd_xy, pl.uav_xyz[n], cfg);
        }
        let i_up = e_s + e_d;
        let g_up = pm.tx_power_w * a2g(pm.swd_xy, pl.uav_xyz[n], cfg) / (sigma2 + i_up);

        let mut i_down = 0.0;
        for &o in &h_set(n) {
            i_down += pl.uav_tx_w[o] * a2g(pm.dwd_xy, pl.uav_xyz[o], cfg);
        }
        for &k in &k_set(n) {
            let p = &cfg.direct_pairs[k];
            i_down += p.activity * p.tx_power_w * g2g(p.swd_xy, pm.dwd_xy, cfg);
        }
        let g_down = pl.uav_tx_w[n] * a2g(pm.dwd_xy, pl.uav_xyz[n], cfg) / (sigma2 + i_down);

        let mut i_dir = 0.0;
        for &o in &h_set(n) {
            let ws = w_set(o);
            for &wi in &ws {
                let p = &cfg.relayed_pairs[wi];
                i_dir += p.tx_power_w * g2g(p.swd_xy, pm.dwd_xy, cfg) / ws.len() as f64;
            }
        }
        for &k in &k_set(n) {
            let p = &cfg.direct_pairs[k];
            i_dir += p.activity * p.tx_power_w * g2g(p.swd_xy, pm.dwd_xy, cfg);
        }
        let g_dir = pm.tx_power_w * g2g(pm.swd_xy, pm.dwd_xy, cfg) / (sigma2 + i_dir);

        let mu: usize = (0..m_count).map(|x| delta[x][n] as usize).sum();
        let row: Vec<f64> = (0..n_count)
            .map(|nn| {
                if delta[m][nn] == 0 {
                    0.0
                } else {
                    w_hz * delta[m][nn] as f64 / (2.0 * mu as f64)
                        * (1.0 + g_dir + g_up * g_down / (1.0 + g_up + g_down)).log2()
                }
            })
            .collect();
        out.capacity += row.iter().sum::<f64>();
        out.i_up.push(i_up);
        out.sinr_up.push(g_up);
        out.i_down.push(i_down);
        out.sinr_down.push(g_down);
        out.i_direct.push(i_dir);
        out.sinr_direct.push(g_dir);
        out.rate.push(row);
    }
    out
}

/// `|a - b| <= tol * max(|a|, |b|)`, with exact equality accepted for zeros.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}
