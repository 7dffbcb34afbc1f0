//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and fails if any criterion fails.
//!
//! `cargo test --release --test acceptance`

mod support;

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skyrelay::bench::{benchmark, run_trials, TrialReport, STATS_FILE};
use skyrelay::encoding::{evaluate, random_solution, ObjectiveVector, PENALTY};
use skyrelay::energy::{flight_energy, propulsion_power};
use skyrelay::moea::{das_dennis, fast_non_dominated_sort};
use skyrelay::radio::LinkModel;
use skyrelay::scenario::{Scale, ScenarioConfig};
use skyrelay::solvers::{
    probabilistic_learning_operator, random_search_operator, uav_number_adjust, Algorithm, RunConfig, Strategy,
};
use support::{brute_force_levels, radio_oracle, random_instance, rel_close};

const SCENARIO_SEED: u64 = 1;
const RUN_SEED: u64 = 0;
const TRIALS: usize = 30;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_sort_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for pop in 0..100 {
        // coarse grid so ties and duplicates occur
        let objs: Vec<Vec<f64>> =
            (0..200).map(|_| (0..3).map(|_| f64::from(rng.gen_range(0..20u8))).collect()).collect();
        let expected = brute_force_levels(&objs);
        let fronts = fast_non_dominated_sort(&objs);
        let mut got = vec![usize::MAX; objs.len()];
        for (level, front) in fronts.iter().enumerate() {
            for &i in front {
                got[i] = level;
            }
        }
        if got != expected {
            return Err(format!("population {pop} differs from the pairwise classifier"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 5.0, format!("100 populations x 200 match, {secs:.2} s"))
}

fn c2_radio_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let tol = 1e-12;
    let mut compared = 0usize;
    for inst in 0..100 {
        let (cfg, pl) = random_instance(&mut rng);
        let lm = LinkModel::new(&cfg, &pl).map_err(|e| e.to_string())?;
        let o = radio_oracle(&cfg, &pl);
        for m in 0..cfg.m() {
            let n = pl.assignment[m];
            let pairs = [
                ("uplink interference", lm.uplink_interference(n), o.i_up[m]),
                ("uplink SINR", lm.sinr_uplink(m, n), o.sinr_up[m]),
                ("downlink interference", lm.downlink_interference(n, m), o.i_down[m]),
                ("downlink SINR", lm.sinr_downlink(n, m), o.sinr_down[m]),
                ("direct-leg interference", lm.direct_leg_interference(m), o.i_direct[m]),
                ("direct-leg SINR", lm.sinr_direct(m), o.sinr_direct[m]),
            ];
            for (what, got, want) in pairs {
                let got = got.map_err(|e| e.to_string())?;
                if !rel_close(got, want, tol) {
                    return Err(format!("instance {inst} pair {m}: {what} {got:e} vs oracle {want:e}"));
                }
                compared += 1;
            }
            for nn in 0..pl.n_uavs() {
                let got = lm.link_rate(m, nn).map_err(|e| e.to_string())?;
                if !rel_close(got, o.rate[m][nn], tol) {
                    return Err(format!("instance {inst}: rate({m},{nn}) {got:e} vs {:e}", o.rate[m][nn]));
                }
                compared += 1;
            }
        }
        let cap = lm.capacity().map_err(|e| e.to_string())?;
        if !rel_close(cap, o.capacity, tol) {
            return Err(format!("instance {inst}: capacity {cap:e} vs {:e}", o.capacity));
        }
        compared += 1;
    }
    Ok(format!("100 instances, {compared} values within 1e-12 relative"))
}

fn c3_energy_anchors() -> Outcome {
    let ep = skyrelay::scenario::EnergyParams::default();
    let hover = propulsion_power(0.0, &ep);
    let hover_err = (hover - (ep.p_blade_w + ep.p_induced_w)).abs();
    let e = flight_energy([300.0, 400.0, 200.0], 10.0, [0.0, 0.0, 200.0], &ep).map_err(|e| e.to_string())?;
    let flight_err = (e - 50.0 * propulsion_power(10.0, &ep)).abs();
    check(
        hover_err <= 1e-9 && flight_err <= 1e-9,
        format!("P(0) = {hover} W (err {hover_err:e}), E(500 m, 10 m/s) = {e:.6} J (err {flight_err:e})"),
    )
}

fn c4_penalty() -> Outcome {
    let cfg = ScenarioConfig::generate(Scale::One, SCENARIO_SEED);
    let mut sol = random_solution(&cfg, &mut ChaCha8Rng::seed_from_u64(4));
    let n = sol.n_active;
    // first UAV barely moves, second flies to the far corner at minimum speed
    sol.x[0] = 1.0;
    sol.y[0] = 1.0;
    sol.z[0] = cfg.bounds.z_min_m;
    sol.speed[0] = cfg.bounds.v_max_m_s;
    sol.x[1] = cfg.bounds.l_max_m;
    sol.y[1] = cfg.bounds.l_max_m;
    sol.z[1] = cfg.bounds.z_max_m;
    sol.speed[1] = cfg.bounds.v_min_m_s;
    let got = evaluate(&sol, &cfg).map_err(|e| e.to_string())?;
    let raw = skyrelay::encoding::evaluate_unpenalized(&sol, &cfg).map_err(|e| e.to_string())?;
    let diff = [got.neg_f1 - raw.neg_f1, got.f2 - raw.f2, got.f3 - raw.f3];
    check(
        !got.feasible && diff == PENALTY,
        format!("N={n}, difference ({}, {}, {}), feasible={}", diff[0], diff[1], diff[2], got.feasible),
    )
}

fn pick_values(reports: &[TrialReport], s: Strategy, f: fn(&ObjectiveVector) -> f64) -> Vec<f64> {
    reports.iter().map(|r| f(&r.pick(s).objectives)).collect()
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    (mean, (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt())
}

fn c5_scale_one(fdu: &[TrialReport], secs: f64) -> Vec<(&'static str, Outcome)> {
    let feasible = fdu.iter().filter(|r| r.feasible() && r.picks.iter().all(|p| p.objectives.f1() > 0.0)).count();
    let rate = feasible as f64 / fdu.len() as f64;
    let (f2_mean, f2_std) = mean_std(&pick_values(fdu, Strategy::MinUav, |o| o.f2));
    let (f1_mean, _) = mean_std(&pick_values(fdu, Strategy::MaxNetCap, |o| o.f1()));
    let (f3_mean, _) = mean_std(&pick_values(fdu, Strategy::MinAveEnergy, |o| o.f3));
    let runtime = format!("runtime {secs:.1} s");
    vec![
        ("5a", check(rate == 1.0 && secs < 300.0, format!("feasibility rate {rate:.2}, {runtime}"))),
        ("5b", check(f2_mean == 4.0 && f2_std == 0.0, format!("MinUAV f2 mean {f2_mean:.2} std {f2_std:.2}"))),
        (
            "5c",
            check(
                (1.5e6..=2.7e6).contains(&f1_mean),
                format!("MaxNetCap f1 mean {f1_mean:.4e} bps, band [1.5e6, 2.7e6]"),
            ),
        ),
        ("5d", check(f3_mean < 5e3, format!("MinAveEnergy f3 mean {f3_mean:.1} J, bound 5e3"))),
    ]
}

fn c6_baselines(by_algo: &HashMap<Algorithm, Vec<TrialReport>>) -> Outcome {
    let f1 = |a: Algorithm| mean_std(&pick_values(&by_algo[&a], Strategy::MaxNetCap, |o| o.f1())).0;
    let f3 = |a: Algorithm| pick_values(&by_algo[&a], Strategy::MinAveEnergy, |o| o.f3);
    let (fdu, ud, rd) = (f1(Algorithm::Nsga3fdu), f1(Algorithm::Ud), f1(Algorithm::Rd));
    let fdu_f3 = f3(Algorithm::Nsga3fdu);
    let win = |other: Algorithm| {
        let o = f3(other);
        fdu_f3.iter().zip(&o).filter(|(a, b)| a <= b).count() as f64 / o.len() as f64
    };
    let (w2, w3) = (win(Algorithm::Nsga2), win(Algorithm::Nsga3));
    check(
        fdu > ud && fdu > rd && w2 >= 0.8 && w3 >= 0.8,
        format!(
            "f1 mean FDU {fdu:.3e} vs UD {ud:.3e}, RD {rd:.3e}; f3 win-rate vs NSGA-II {w2:.2}, vs NSGA-III {w3:.2}"
        ),
    )
}

fn c7_scale_two() -> Outcome {
    let cfg = ScenarioConfig::generate(Scale::Two, SCENARIO_SEED);
    let rc = RunConfig { seed: RUN_SEED, ..RunConfig::default() };
    let start = Instant::now();
    let reports = run_trials(&cfg, &rc, Algorithm::Nsga3fdu, 5).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let f2 = pick_values(&reports, Strategy::MinUav, |o| o.f2);
    let feasible = reports.iter().all(|r| r.feasible());
    let whole = reports.iter().filter(|r| r.front_feasible()).count();
    check(
        f2.iter().all(|&v| v == 8.0) && feasible && secs < 1200.0,
        format!("MinUAV f2 per trial {f2:?}, picks feasible in every trial {feasible}, fully feasible fronts {whole}/5, runtime {secs:.1} s"),
    )
}

fn c8_mechanisms() -> Outcome {
    let cfg = ScenarioConfig::generate(Scale::One, SCENARIO_SEED);
    let (n_min, n_max, u) = (cfg.counts.n_min, cfg.counts.n_max, cfg.counts.u_channels);
    let mut rng = ChaCha8Rng::seed_from_u64(808);

    for i in 0..10_000 {
        let sol = random_solution(&cfg, &mut rng);
        let mut other = random_solution(&cfg, &mut rng);
        // same active genes, different auxiliary slots
        let n = sol.n_active;
        for (dst, src) in [
            (&mut other.x, &sol.x),
            (&mut other.y, &sol.y),
            (&mut other.z, &sol.z),
            (&mut other.power, &sol.power),
            (&mut other.speed, &sol.speed),
        ] {
            dst[..n].copy_from_slice(&src[..n]);
        }
        other.uav_chan[..n].copy_from_slice(&sol.uav_chan[..n]);
        other.assign = sol.assign.clone();
        other.direct_chan = sol.direct_chan.clone();
        other.n_active = n;
        let a = evaluate(&sol, &cfg).map_err(|e| e.to_string())?;
        let b = evaluate(&other, &cfg).map_err(|e| e.to_string())?;
        let bits = |o: &ObjectiveVector| o.as_array().map(f64::to_bits);
        if bits(&a) != bits(&b) || a.feasible != b.feasible {
            return Err(format!("padding changed the objectives of solution {i}"));
        }
    }

    for n in n_min..=n_max {
        for _ in 0..1000 {
            let next = uav_number_adjust(n, &cfg, 0.5, &mut rng);
            let ok = (n_min..=n_max).contains(&next)
                && match n {
                    _ if n == n_max => next == n_max - 1,
                    _ if n == n_min => next == n_min + 1,
                    _ => next == n + 1 || next + 1 == n,
                };
            if !ok {
                return Err(format!("uavNumberAdjust({n}) returned {next}"));
            }
        }
    }

    let current = random_search_operator(&cfg, &mut rng);
    let best = loop {
        let b = random_search_operator(&cfg, &mut rng);
        if b != current {
            break b;
        }
    };
    let (s1, s2) = (0.2, 0.6);
    let mut counts = [0usize; 3];
    let draws = 10_000;
    for _ in 0..draws {
        let d = probabilistic_learning_operator(&current, &best, s1, s2, &cfg, &mut rng);
        let slot = if d == current {
            1
        } else if d == best {
            2
        } else {
            0
        };
        counts[slot] += 1;
    }
    let freq = counts.map(|c| c as f64 / draws as f64);
    let expected = [s1, s2 - s1, 1.0 - s2];
    if freq.iter().zip(expected).any(|(f, e)| (f - e).abs() > 0.02) {
        return Err(format!("learning branch frequencies {freq:?}, expected {expected:?}"));
    }

    for _ in 0..10_000 {
        let d = random_search_operator(&cfg, &mut rng);
        let ok = (n_min..=n_max).contains(&d.n_active)
            && d.assign.len() == cfg.m()
            && d.assign.iter().all(|&r| r < d.n_active)
            && d.uav_chan.len() == n_max
            && d.direct_chan.len() == cfg.k()
            && d.uav_chan.iter().chain(&d.direct_chan).all(|&c| c < u);
        if !ok {
            return Err(format!("random search output violates C6-C9: {d:?}"));
        }
    }
    Ok(format!("padding 1e4 bit-identical; count walk exhaustive; learning freq {freq:.3?}; 1e4 random-search draws valid"))
}

fn c9_reference_points() -> Outcome {
    for p in 1..=10usize {
        let refs = das_dennis(3, p).map_err(|e| e.to_string())?;
        let expected = (p + 2) * (p + 1) / 2;
        if refs.len() != expected {
            return Err(format!("p={p}: {} points, expected {expected}", refs.len()));
        }
        if let Some(pt) = refs.points.iter().find(|pt| (pt.iter().sum::<f64>() - 1.0).abs() > 1e-12 || pt.iter().any(|&v| v < 0.0)) {
            return Err(format!("p={p}: point {pt:?} off the simplex"));
        }
    }
    Ok("counts C(p+2,2) for p in 1..=10, all on the simplex".into())
}

fn c10_determinism(first: &[u8]) -> Outcome {
    let cfg = ScenarioConfig::generate(Scale::One, SCENARIO_SEED);
    let rc = RunConfig { seed: RUN_SEED, ..RunConfig::default() };
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    // second run on a single thread: also checks scheduling independence
    std::env::set_var(skyrelay::bench::THREADS_ENV, "1");
    let res = benchmark(&cfg, &rc, &Algorithm::ALL, TRIALS, dir.path());
    std::env::remove_var(skyrelay::bench::THREADS_ENV);
    res.map_err(|e| e.to_string())?;
    let second = std::fs::read(dir.path().join(STATS_FILE)).map_err(|e| e.to_string())?;
    check(first == second.as_slice(), format!("stats.csv {} bytes, identical across runs", first.len()))
}

fn main() {
    let mut results: Vec<(&'static str, Outcome)> = vec![
        ("1", c1_sort_oracle()),
        ("2", c2_radio_oracle()),
        ("3", c3_energy_anchors()),
        ("4", c4_penalty()),
    ];

    let cfg = ScenarioConfig::generate(Scale::One, SCENARIO_SEED);
    let rc = RunConfig { seed: RUN_SEED, ..RunConfig::default() };
    let start = Instant::now();
    let fdu = run_trials(&cfg, &rc, Algorithm::Nsga3fdu, TRIALS).expect("scale-1 trials");
    let fdu_secs = start.elapsed().as_secs_f64();
    results.extend(c5_scale_one(&fdu, fdu_secs));

    let dir = tempfile::tempdir().expect("temp dir");
    let (all, _) = benchmark(&cfg, &rc, &Algorithm::ALL, TRIALS, dir.path()).expect("benchmark");
    let mut by_algo: HashMap<Algorithm, Vec<TrialReport>> = HashMap::new();
    for r in all {
        by_algo.entry(r.algo).or_default().push(r);
    }
    let same = fdu.iter().zip(&by_algo[&Algorithm::Nsga3fdu]).all(|(a, b)| a.same_outcome(b));
    assert!(same, "benchmark and standalone FDU trials disagree");
    results.push(("6", c6_baselines(&by_algo)));
    results.push(("7", c7_scale_two()));
    results.push(("8", c8_mechanisms()));
    results.push(("9", c9_reference_points()));
    let first = std::fs::read(dir.path().join(STATS_FILE)).expect("stats.csv");
    results.push(("10", c10_determinism(&first)));

    let mut failed = 0;
    for (id, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {id:<3} PASS  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:<3} FAIL  {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
