//! Solvers for the three-objective scheduling problem.
//!
//! [`nsga3fdu`] is the flexible-dimension NSGA-III with discrete-part
//! generation and UAV-count adjustment. The baselines share its encoding,
//! repair and evaluation so that differences come from the search itself:
//! plain NSGA-III and NSGA-II resample discrete genes at the mutation rate,
//! the weighted-sum GA scalarizes the objectives, and UD/RD are one-shot
//! deployments.

mod baselines;
mod fdu;
mod operators;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use baselines::{nsga2, nsga3_plain, rd_baseline, ud_baseline, ud_grid, weighted_sum_ga};
pub use fdu::nsga3fdu;
pub use operators::{
    apply_learning, learning_branch, probabilistic_learning_operator, random_plan_for, random_search_operator,
    random_uav_count, resample_discrete, uav_number_adjust, LearningBranch,
};

use crate::encoding::{continuous_bounds, evaluate, repair_continuous, Solution, ObjectiveVector, CONTINUOUS_BLOCKS};
use crate::error::{Error, Result};
use crate::moea::{das_dennis, divisions_for, poly_mutation, sbx, Individual, ReferencePointSet};
use crate::scenario::ScenarioConfig;

/// SBX / polynomial-mutation settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variation {
    pub eta_c: f64,
    pub pc: f64,
    pub eta_m: f64,
    /// Per-gene mutation probability; `None` means `1 / D` for the padded
    /// continuous dimension `D`.
    pub pm: Option<f64>,
}

impl Default for Variation {
    fn default() -> Self {
        Self { eta_c: 20.0, pc: 1.0, eta_m: 20.0, pm: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub pop: usize,
    pub max_iters: usize,
    pub sigma1: f64,
    pub sigma2: f64,
    /// Probability of stepping the UAV count up in the adjustment walk.
    pub p_in: f64,
    pub seed: u64,
    pub variation: Variation,
    /// Das-Dennis divisions; `None` picks the smallest lattice with at least `pop` points.
    pub ref_divisions: Option<usize>,
    /// Objective weights for the weighted-sum GA (applied after normalization).
    pub weights: [f64; 3],
    /// Keep per-generation snapshots in [`SolverResult::history`].
    pub record_history: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            pop: 20,
            max_iters: 200,
            sigma1: 0.2,
            sigma2: 0.6,
            p_in: 0.5,
            seed: 0,
            variation: Variation::default(),
            ref_divisions: None,
            weights: [1.0, 1.0, 1.0],
            record_history: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let mut v = Vec::new();
        if !(0.0 <= self.sigma1 && self.sigma1 <= self.sigma2 && self.sigma2 <= 1.0) {
            v.push("0 <= sigma1 <= sigma2 <= 1 violated".to_string());
        }
        if !(self.p_in > 0.0 && self.p_in < 1.0) {
            v.push("0 < p_in < 1 violated".to_string());
        }
        if self.pop < 4 || !self.pop.is_multiple_of(2) {
            v.push("pop >= 4 and even violated".to_string());
        }
        if !(0.0..=1.0).contains(&self.variation.pc) {
            v.push("variation.pc in [0, 1] violated".to_string());
        }
        if let Some(pm) = self.variation.pm {
            if !(0.0..=1.0).contains(&pm) {
                v.push("variation.pm in [0, 1] violated".to_string());
            }
        }
        if self.ref_divisions == Some(0) {
            v.push("ref_divisions >= 1 violated".to_string());
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invariant { violations: v })
        }
    }

    pub(crate) fn mutation_rate(&self, cfg: &ScenarioConfig) -> f64 {
        self.variation.pm.unwrap_or(1.0 / (CONTINUOUS_BLOCKS * cfg.counts.n_max) as f64)
    }

    pub(crate) fn reference_points(&self) -> Result<ReferencePointSet> {
        das_dennis(3, self.ref_divisions.unwrap_or_else(|| divisions_for(self.pop)))
    }
}

/// Objective vectors of one generation.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationSnapshot {
    pub generation: usize,
    /// Survivors after selection.
    pub population: Vec<ObjectiveVector>,
    /// Offspring evaluated in this generation (empty for generation 0).
    pub offspring: Vec<ObjectiveVector>,
}

#[derive(Debug, Clone)]
pub struct SolverResult {
    pub final_front: Vec<Individual>,
    pub history: Vec<GenerationSnapshot>,
    pub wall_time_s: f64,
    pub seed: u64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Nsga3fdu,
    Nsga3,
    Nsga2,
    Wsga,
    Ud,
    Rd,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] =
        [Algorithm::Nsga3fdu, Algorithm::Nsga3, Algorithm::Nsga2, Algorithm::Wsga, Algorithm::Ud, Algorithm::Rd];

    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Nsga3fdu => "nsga3fdu",
            Algorithm::Nsga3 => "nsga3",
            Algorithm::Nsga2 => "nsga2",
            Algorithm::Wsga => "wsga",
            Algorithm::Ud => "ud",
            Algorithm::Rd => "rd",
        }
    }

    /// Human-readable name used in reports.
    pub fn label(&self) -> &'static str {
        match self {
            Algorithm::Nsga3fdu => "NSGA-III-FDU",
            Algorithm::Nsga3 => "NSGA-III",
            Algorithm::Nsga2 => "NSGA-II",
            Algorithm::Wsga => "weighted-sum GA",
            Algorithm::Ud => "UD",
            Algorithm::Rd => "RD",
        }
    }

    pub fn run(&self, cfg: &ScenarioConfig, rc: &RunConfig) -> Result<SolverResult> {
        match self {
            Algorithm::Nsga3fdu => nsga3fdu(cfg, rc),
            Algorithm::Nsga3 => nsga3_plain(cfg, rc),
            Algorithm::Nsga2 => nsga2(cfg, rc),
            Algorithm::Wsga => weighted_sum_ga(cfg, rc, rc.weights),
            Algorithm::Ud | Algorithm::Rd => {
                let start = std::time::Instant::now();
                let mut rng = seeded_rng(rc.seed);
                let ind = if *self == Algorithm::Ud { ud_baseline(cfg, &mut rng)? } else { rd_baseline(cfg, &mut rng)? };
                Ok(SolverResult {
                    final_front: vec![Individual { rank: 1, ..ind }],
                    history: Vec::new(),
                    wall_time_s: start.elapsed().as_secs_f64(),
                    seed: rc.seed,
                    evaluations: 1,
                })
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Parse { what: "algorithm".into(), message: format!("unknown algorithm {s:?}") })
    }
}

/// Decision-maker strategies for picking one solution from a front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    MaxNetCap,
    MinUav,
    MinAveEnergy,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::MaxNetCap, Strategy::MinUav, Strategy::MinAveEnergy];

    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::MaxNetCap => "maxnetcap",
            Strategy::MinUav => "minuav",
            Strategy::MinAveEnergy => "minaveenergy",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|a| a.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse { what: "strategy".into(), message: format!("unknown strategy {s:?}") })
    }
}

/// Picks one individual from a front. Ties on the primary criterion go to the
/// higher capacity, then to the earlier member.
pub fn pick_strategy(front: &[Individual], strategy: Strategy) -> Result<&Individual> {
    let key = |i: &Individual| -> (f64, f64) {
        let o = &i.objectives;
        match strategy {
            Strategy::MaxNetCap => (o.neg_f1, 0.0),
            Strategy::MinUav => (o.f2, o.neg_f1),
            Strategy::MinAveEnergy => (o.f3, o.neg_f1),
        }
    };
    front
        .iter()
        .reduce(|best, cand| {
            let (a, b) = (key(cand), key(best));
            if a.0 < b.0 || (a.0 == b.0 && a.1 < b.1) {
                cand
            } else {
                best
            }
        })
        .ok_or_else(|| Error::domain("pick: empty front"))
}

pub(crate) type SolverRng = rand_chacha::ChaCha8Rng;

pub(crate) fn seeded_rng(seed: u64) -> SolverRng {
    use rand::SeedableRng;
    SolverRng::seed_from_u64(seed)
}

/// Evaluates a batch; order is preserved so results do not depend on threading.
pub(crate) fn evaluate_batch(sols: Vec<Solution>, cfg: &ScenarioConfig) -> Result<Vec<Individual>> {
    sols.into_par_iter()
        .map(|s| evaluate(&s, cfg).map(|o| Individual::new(s, o)))
        .collect()
}

pub(crate) fn initial_population<R: Rng + ?Sized>(cfg: &ScenarioConfig, pop: usize, rng: &mut R) -> Vec<Solution> {
    (0..pop)
        .map(|_| {
            let s = crate::encoding::random_solution(cfg, rng);
            repair_continuous(s, cfg, rng)
        })
        .collect()
}

/// SBX + polynomial mutation over a random pairing of `parents`. Each child
/// keeps the discrete part of the parent in its position of the pair.
pub(crate) fn make_offspring<R: Rng + ?Sized>(
    parents: &[&Solution],
    cfg: &ScenarioConfig,
    rc: &RunConfig,
    rng: &mut R,
) -> Vec<Solution> {
    let bounds = continuous_bounds(cfg);
    let pm = rc.mutation_rate(cfg);
    let var = &rc.variation;
    let mut order: Vec<usize> = (0..parents.len()).collect();
    order.shuffle(rng);
    let mut out = Vec::with_capacity(parents.len());
    for pair in order.chunks(2) {
        let a = parents[pair[0]];
        let b = parents[*pair.get(1).unwrap_or(&pair[0])];
        let (ga, gb) = sbx(&a.continuous_genes(), &b.continuous_genes(), &bounds, var.eta_c, var.pc, rng);
        for (parent, genes) in [(a, ga), (b, gb)].into_iter().take(pair.len()) {
            let genes = poly_mutation(&genes, &bounds, var.eta_m, pm, rng);
            let mut child = parent.clone();
            child.set_continuous_genes(&genes);
            out.push(child);
        }
    }
    out
}

pub(crate) fn snapshot(generation: usize, pop: &[Individual], offspring: &[Individual]) -> GenerationSnapshot {
    GenerationSnapshot {
        generation,
        population: pop.iter().map(|i| i.objectives).collect(),
        offspring: offspring.iter().map(|i| i.objectives).collect(),
    }
}
