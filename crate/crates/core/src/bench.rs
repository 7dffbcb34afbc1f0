//! Trial harness: repeated seeded runs, per-strategy statistics, result
//! export, and the command implementations behind the `skyrelay` binary.
//!
//! Output layout of a single-algorithm run directory:
//!
//! ```text
//! stats.csv                  algo,strategy,objective,mean,std,max,min
//! front_<algo>_<trial>.csv   f1_bps,f2,f3_j,feasible
//! pick_<strategy>_<trial>.json
//! reports.json
//! ```
//!
//! [`benchmark`] writes one such directory per algorithm plus a combined
//! `stats.csv` at the top level.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encoding::{ObjectiveVector, Solution};
use crate::error::{Error, Result};
use crate::moea::Individual;
use crate::radio::{comm_energy_efficiency, direct_only_capacity, network_capacity, Placement};
use crate::scenario::ScenarioConfig;
use crate::solvers::{pick_strategy, Algorithm, RunConfig, Strategy};

/// Environment variable capping the trial thread pool.
pub const THREADS_ENV: &str = "SKYRELAY_THREADS";

/// Deployment record of one solution, active UAVs only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub n_uavs: usize,
    pub uav_xyz: Vec<[f64; 3]>,
    pub uav_tx_w: Vec<f64>,
    pub speed_m_s: Vec<f64>,
    pub uav_channel: Vec<usize>,
    pub assignment: Vec<usize>,
    pub direct_channel: Vec<usize>,
}

impl SolutionRecord {
    pub fn from_solution(sol: &Solution) -> Self {
        let p = sol.placement();
        Self {
            n_uavs: sol.n_active,
            uav_xyz: p.uav_xyz,
            uav_tx_w: p.uav_tx_w,
            speed_m_s: sol.speed[..sol.n_active].to_vec(),
            uav_channel: p.uav_channel,
            assignment: p.assignment,
            direct_channel: p.direct_channel,
        }
    }

    pub fn placement(&self) -> Placement {
        Placement {
            uav_xyz: self.uav_xyz.clone(),
            uav_tx_w: self.uav_tx_w.clone(),
            assignment: self.assignment.clone(),
            uav_channel: self.uav_channel.clone(),
            direct_channel: self.direct_channel.clone(),
        }
    }

    /// Checks internal consistency and the scenario's bounds.
    pub fn validate(&self, cfg: &ScenarioConfig) -> Result<()> {
        let c = &cfg.counts;
        if !(c.n_min..=c.n_max).contains(&self.n_uavs) || self.uav_xyz.len() != self.n_uavs {
            return Err(Error::contract("solution record: UAV count out of range"));
        }
        if self.speed_m_s.len() != self.n_uavs
            || self.speed_m_s.iter().any(|v| !(cfg.bounds.v_min_m_s..=cfg.bounds.v_max_m_s).contains(v))
        {
            return Err(Error::contract("solution record: speeds out of range"));
        }
        self.placement().validate(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontEntry {
    pub objectives: ObjectiveVector,
    pub solution: SolutionRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pick {
    pub strategy: Strategy,
    /// Index into the trial's final front.
    pub index: usize,
    pub objectives: ObjectiveVector,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialReport {
    pub algo: Algorithm,
    pub trial: usize,
    pub trial_seed: u64,
    pub final_front: Vec<FrontEntry>,
    pub picks: Vec<Pick>,
    pub wall_time_s: f64,
}

impl TrialReport {
    fn from_front(algo: Algorithm, trial: usize, trial_seed: u64, front: &[Individual], wall_time_s: f64) -> Result<Self> {
        let mut picks = Vec::with_capacity(Strategy::ALL.len());
        for s in Strategy::ALL {
            let chosen = pick_strategy(front, s)?;
            let index = front.iter().position(|i| std::ptr::eq(i, chosen)).expect("pick is a front member");
            picks.push(Pick { strategy: s, index, objectives: chosen.objectives });
        }
        let final_front = front
            .iter()
            .map(|i| FrontEntry { objectives: i.objectives, solution: SolutionRecord::from_solution(&i.genome) })
            .collect();
        Ok(Self { algo, trial, trial_seed, final_front, picks, wall_time_s })
    }

    pub fn pick(&self, strategy: Strategy) -> &Pick {
        self.picks.iter().find(|p| p.strategy == strategy).expect("every strategy is picked")
    }

    /// True when every strategy pick meets the time-spread constraint.
    pub fn feasible(&self) -> bool {
        self.picks.iter().all(|p| p.objectives.feasible)
    }

    /// True when every member of the final front meets the time-spread constraint.
    pub fn front_feasible(&self) -> bool {
        self.final_front.iter().all(|e| e.objectives.feasible)
    }

    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &TrialReport) -> bool {
        self.algo == other.algo
            && self.trial == other.trial
            && self.trial_seed == other.trial_seed
            && self.final_front == other.final_front
            && self.picks == other.picks
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parse { what: THREADS_ENV.into(), message: format!("expected a positive integer, got {v:?}") })?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Error::domain(format!("thread pool: {e}")))
}

/// Runs `n_trials` independent trials; trial `i` uses seed `rc.seed + i`.
/// Reports come back in trial order regardless of scheduling.
pub fn run_trials(cfg: &ScenarioConfig, rc: &RunConfig, algo: Algorithm, n_trials: usize) -> Result<Vec<TrialReport>> {
    if n_trials == 0 {
        return Err(Error::Invariant { violations: vec!["trials >= 1 violated".into()] });
    }
    cfg.validate()?;
    rc.validate()?;
    let pool = thread_pool()?;
    pool.install(|| {
        (0..n_trials)
            .into_par_iter()
            .map(|i| {
                let seed = rc.seed.wrapping_add(i as u64);
                let trial_rc = RunConfig { seed, ..rc.clone() };
                let res = algo.run(cfg, &trial_rc)?;
                TrialReport::from_front(algo, i, seed, &res.final_front, res.wall_time_s)
            })
            .collect()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Objective {
    F1,
    F2,
    F3,
    /// Per-trial 0/1 indicator that every strategy pick is feasible.
    Feasible,
}

impl Objective {
    pub fn as_str(&self) -> &'static str {
        match self {
            Objective::F1 => "f1",
            Objective::F2 => "f2",
            Objective::F3 => "f3",
            Objective::Feasible => "feasible",
        }
    }

    fn of(&self, o: &ObjectiveVector) -> f64 {
        match self {
            Objective::F1 => o.f1(),
            Objective::F2 => o.f2,
            Objective::F3 => o.f3,
            Objective::Feasible => f64::from(u8::from(o.feasible)),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Objective::F1, Objective::F2, Objective::F3, Objective::Feasible]
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| Error::Parse { what: "objective".into(), message: format!("unknown objective {s:?}") })
    }
}

/// Summary statistics with the population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
    pub max: f64,
    pub min: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("statistics of an empty sample"));
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        // keep min <= mean <= max under rounding
        Ok(Self { mean: mean.clamp(min, max), std: var.sqrt(), max, min })
    }
}

/// One line of `stats.csv`. `strategy` is `None` for the feasibility row.
#[derive(Debug, Clone, PartialEq)]
pub struct StatRow {
    pub algo: Algorithm,
    pub strategy: Option<Strategy>,
    pub objective: Objective,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub rows: Vec<StatRow>,
}

impl RunStats {
    pub fn get(&self, algo: Algorithm, strategy: Strategy, objective: Objective) -> Option<&Summary> {
        self.rows
            .iter()
            .find(|r| r.algo == algo && r.strategy == Some(strategy) && r.objective == objective)
            .map(|r| &r.summary)
    }

    /// Fraction of trials whose strategy picks are all feasible.
    pub fn feasibility_rate(&self, algo: Algorithm) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.algo == algo && r.objective == Objective::Feasible)
            .map(|r| r.summary.mean)
    }
}

/// Statistics over trials, grouped by algorithm in order of first appearance.
/// Strategy rows use the picked solutions' raw objectives with `f1`
/// positive.
pub fn aggregate_stats(reports: &[TrialReport]) -> Result<RunStats> {
    if reports.is_empty() {
        return Err(Error::domain("aggregate statistics: no reports"));
    }
    let mut algos: Vec<Algorithm> = Vec::new();
    for r in reports {
        if !algos.contains(&r.algo) {
            algos.push(r.algo);
        }
    }
    let mut rows = Vec::new();
    for algo in algos {
        let group: Vec<&TrialReport> = reports.iter().filter(|r| r.algo == algo).collect();
        for s in Strategy::ALL {
            for obj in [Objective::F1, Objective::F2, Objective::F3] {
                let values: Vec<f64> = group.iter().map(|r| obj.of(&r.pick(s).objectives)).collect();
                rows.push(StatRow { algo, strategy: Some(s), objective: obj, summary: Summary::of(&values)? });
            }
        }
        let feas: Vec<f64> = group.iter().map(|r| f64::from(u8::from(r.feasible()))).collect();
        rows.push(StatRow { algo, strategy: None, objective: Objective::Feasible, summary: Summary::of(&feas)? });
    }
    Ok(RunStats { rows })
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvStat {
    algo: String,
    strategy: String,
    objective: String,
    mean: f64,
    std: f64,
    max: f64,
    min: f64,
}

const ANY_STRATEGY: &str = "any";

pub fn write_stats_csv(stats: &RunStats, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    for r in &stats.rows {
        let s = &r.summary;
        w.serialize(CsvStat {
            algo: r.algo.to_string(),
            strategy: r.strategy.map_or(ANY_STRATEGY.to_string(), |s| s.to_string()),
            objective: r.objective.to_string(),
            mean: s.mean,
            std: s.std,
            max: s.max,
            min: s.min,
        })
        .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_stats_csv(path: &Path) -> Result<RunStats> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let mut rows = Vec::new();
    for rec in rd.deserialize::<CsvStat>() {
        let c = rec.map_err(|e| csv_error(path, e))?;
        rows.push(StatRow {
            algo: c.algo.parse()?,
            strategy: if c.strategy == ANY_STRATEGY { None } else { Some(c.strategy.parse()?) },
            objective: c.objective.parse()?,
            summary: Summary { mean: c.mean, std: c.std, max: c.max, min: c.min },
        });
    }
    Ok(RunStats { rows })
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        }
    } else {
        Error::Parse { what: path.display().to_string(), message: e.to_string() }
    }
}

fn write_json<T: Serialize + ?Sized>(value: &T, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::domain(format!("serialize: {e}")))?;
    fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse { what: path.display().to_string(), message: e.to_string() })
}

pub fn front_file_name(algo: Algorithm, trial: usize) -> String {
    format!("front_{algo}_{trial}.csv")
}

pub fn pick_file_name(strategy: Strategy, trial: usize) -> String {
    format!("pick_{strategy}_{trial}.json")
}

pub const REPORTS_FILE: &str = "reports.json";
pub const STATS_FILE: &str = "stats.csv";

#[derive(Debug, Serialize, Deserialize)]
struct FrontRow {
    f1_bps: f64,
    f2: f64,
    f3_j: f64,
    feasible: bool,
}

/// Writes stats, per-trial fronts and picks, and the raw reports to `out_dir`.
pub fn export_results(reports: &[TrialReport], stats: &RunStats, out_dir: &Path) -> Result<()> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    write_stats_csv(stats, &out_dir.join(STATS_FILE))?;
    for r in reports {
        let path = out_dir.join(front_file_name(r.algo, r.trial));
        let mut w = csv::Writer::from_path(&path).map_err(|e| csv_error(&path, e))?;
        for e in &r.final_front {
            let o = &e.objectives;
            w.serialize(FrontRow { f1_bps: o.f1(), f2: o.f2, f3_j: o.f3, feasible: o.feasible })
                .map_err(|err| csv_error(&path, err))?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        for p in &r.picks {
            let entry = &r.final_front[p.index];
            write_json(entry, &out_dir.join(pick_file_name(p.strategy, r.trial)))?;
        }
    }
    write_json(reports, &out_dir.join(REPORTS_FILE))
}

pub fn load_reports(dir: &Path) -> Result<Vec<TrialReport>> {
    read_json(&dir.join(REPORTS_FILE))
}

/// Runs every algorithm on the shared scenario, writing `<out>/<algo>/` per
/// algorithm and a combined `<out>/stats.csv`.
pub fn benchmark(
    cfg: &ScenarioConfig,
    rc: &RunConfig,
    algos: &[Algorithm],
    n_trials: usize,
    out_dir: &Path,
) -> Result<(Vec<TrialReport>, RunStats)> {
    let mut all = Vec::new();
    for &algo in algos {
        let reports = run_trials(cfg, rc, algo, n_trials)?;
        export_results(&reports, &aggregate_stats(&reports)?, &out_dir.join(algo.as_str()))?;
        all.extend(reports);
    }
    let stats = aggregate_stats(&all)?;
    write_stats_csv(&stats, &out_dir.join(STATS_FILE))?;
    Ok((all, stats))
}

/// Communication energy efficiency of one trial's MaxNetCap pick.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyRow {
    pub trial: usize,
    pub capacity_with_uavs_bps: f64,
    pub capacity_without_uavs_bps: f64,
    pub efficiency_with_uavs: f64,
    pub efficiency_without_uavs: f64,
}

/// With/without-UAV efficiency per trial. Without UAVs each relayed pair
/// keeps the channel of the UAV that served it.
pub fn efficiency_table(reports: &[TrialReport], cfg: &ScenarioConfig) -> Result<Vec<EfficiencyRow>> {
    reports
        .iter()
        .map(|r| {
            let rec = &r.final_front[r.pick(Strategy::MaxNetCap).index].solution;
            rec.validate(cfg)?;
            let pl = rec.placement();
            let with = network_capacity(&pl, cfg)?;
            let pair_channel: Vec<usize> = pl.assignment.iter().map(|&n| pl.uav_channel[n]).collect();
            let without = direct_only_capacity(cfg, &pair_channel, &pl.direct_channel)?;
            Ok(EfficiencyRow {
                trial: r.trial,
                capacity_with_uavs_bps: with,
                capacity_without_uavs_bps: without,
                efficiency_with_uavs: comm_energy_efficiency(with, &pl, cfg, true)?,
                efficiency_without_uavs: comm_energy_efficiency(without, &pl, cfg, false)?,
            })
        })
        .collect()
}

/// Command implementations; each returns the text to print.
pub mod commands {
    use super::*;
    use crate::scenario::Scale;

    pub fn gen_scenario(scale: Scale, seed: u64, out: &Path) -> Result<String> {
        let cfg = ScenarioConfig::generate(scale, seed);
        cfg.save(out)?;
        Ok(format!("wrote {} (M={}, K={}, U={}, N in [{}, {}])", out.display(), cfg.m(), cfg.k(), cfg.counts.u_channels, cfg.counts.n_min, cfg.counts.n_max))
    }

    pub fn run(scenario: &Path, algo: Algorithm, trials: usize, rc: &RunConfig, out: &Path) -> Result<String> {
        let cfg = ScenarioConfig::load(scenario)?;
        let reports = run_trials(&cfg, rc, algo, trials)?;
        let stats = aggregate_stats(&reports)?;
        export_results(&reports, &stats, out)?;
        Ok(format!("{} trials of {} written to {}\n{}", trials, algo.label(), out.display(), render_stats(&stats)))
    }

    pub fn stats(input: &Path, out: &Path) -> Result<String> {
        let stats = aggregate_stats(&load_reports(input)?)?;
        write_stats_csv(&stats, out)?;
        Ok(render_stats(&stats))
    }

    pub fn pick(input: &Path, strategy: Strategy, trial: usize) -> Result<String> {
        let reports = load_reports(input)?;
        let r = reports
            .iter()
            .find(|r| r.trial == trial)
            .ok_or_else(|| Error::Invariant { violations: vec![format!("trial {trial} not found in {}", input.display())] })?;
        let entry = &r.final_front[r.pick(strategy).index];
        serde_json::to_string_pretty(entry).map_err(|e| Error::domain(format!("serialize: {e}")))
    }

    pub fn eff(input: &Path, scenario: &Path) -> Result<String> {
        let cfg = ScenarioConfig::load(scenario)?;
        let rows = efficiency_table(&load_reports(input)?, &cfg)?;
        let path: PathBuf = input.join("eff.csv");
        let mut w = csv::Writer::from_path(&path).map_err(|e| csv_error(&path, e))?;
        for row in &rows {
            w.serialize(row).map_err(|e| csv_error(&path, e))?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        let mean = |f: fn(&EfficiencyRow) -> f64| rows.iter().map(f).sum::<f64>() / rows.len().max(1) as f64;
        Ok(format!(
            "{:<14}{:>16}{:>20}\n{:<14}{:>16.4e}{:>20.4e}\n{:<14}{:>16.4e}{:>20.4e}\n(per-trial rows in {})",
            "",
            "capacity (bps)",
            "efficiency (bit/J)",
            "with UAVs",
            mean(|r| r.capacity_with_uavs_bps),
            mean(|r| r.efficiency_with_uavs),
            "without UAVs",
            mean(|r| r.capacity_without_uavs_bps),
            mean(|r| r.efficiency_without_uavs),
            path.display()
        ))
    }

    pub fn render_stats(stats: &RunStats) -> String {
        let mut out = format!("{:<10}{:<14}{:<10}{:>14}{:>14}{:>14}{:>14}\n", "algo", "strategy", "objective", "mean", "std", "max", "min");
        for r in &stats.rows {
            let s = &r.summary;
            out.push_str(&format!(
                "{:<10}{:<14}{:<10}{:>14.4e}{:>14.4e}{:>14.4e}{:>14.4e}\n",
                r.algo.as_str(),
                r.strategy.map_or(ANY_STRATEGY, |s| s.as_str()),
                r.objective.as_str(),
                s.mean,
                s.std,
                s.max,
                s.min
            ));
        }
        out
    }
}
