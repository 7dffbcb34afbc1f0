//! Discrete-part operators: random search, probabilistic learning, UAV-count
//! adjustment, and the per-gene resampling used by the plain baselines.

use rand::Rng;

use crate::encoding::DiscretePart;
use crate::scenario::ScenarioConfig;

/// Uniform UAV count in `[N_min, N_max]`.
pub fn random_uav_count<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> usize {
    rng.gen_range(cfg.counts.n_min..=cfg.counts.n_max)
}

/// Fresh assignment and channel plan for a fixed UAV count `n`. Channel
/// entries are drawn for all `N_max` slots so the plan is already padded.
pub fn random_plan_for<R: Rng + ?Sized>(n: usize, cfg: &ScenarioConfig, rng: &mut R) -> DiscretePart {
    let u = cfg.counts.u_channels;
    let assign = (0..cfg.m()).map(|_| rng.gen_range(0..n)).collect();
    let uav_chan = (0..cfg.counts.n_max).map(|_| rng.gen_range(0..u)).collect();
    let direct_chan = (0..cfg.k()).map(|_| rng.gen_range(0..u)).collect();
    DiscretePart { n_active: n, assign, uav_chan, direct_chan }
}

/// Random UAV count, then a random plan under that count.
pub fn random_search_operator<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> DiscretePart {
    let n = random_uav_count(cfg, rng);
    random_plan_for(n, cfg, rng)
}

/// Outcome of the learning draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LearningBranch {
    /// Draw below `sigma1`: restart the discrete part at random.
    Restart,
    /// Draw in `[sigma1, sigma2)`: keep it.
    Keep,
    /// Draw at or above `sigma2`: copy it from a first-front donor.
    Learn,
}

pub fn learning_branch(r: f64, sigma1: f64, sigma2: f64) -> LearningBranch {
    if r < sigma1 {
        LearningBranch::Restart
    } else if r < sigma2 {
        LearningBranch::Keep
    } else {
        LearningBranch::Learn
    }
}

/// Applies a given branch of the probabilistic learning operator. The donor's
/// UAV count is copied together with its plan so assignments stay in range.
pub fn apply_learning<R: Rng + ?Sized>(
    branch: LearningBranch,
    current: &DiscretePart,
    best: &DiscretePart,
    cfg: &ScenarioConfig,
    rng: &mut R,
) -> DiscretePart {
    match branch {
        LearningBranch::Restart => random_search_operator(cfg, rng),
        LearningBranch::Keep => current.clone(),
        LearningBranch::Learn => best.clone(),
    }
}

/// Probabilistic learning operator on the discrete part only.
pub fn probabilistic_learning_operator<R: Rng + ?Sized>(
    current: &DiscretePart,
    best: &DiscretePart,
    sigma1: f64,
    sigma2: f64,
    cfg: &ScenarioConfig,
    rng: &mut R,
) -> DiscretePart {
    let r: f64 = rng.gen();
    apply_learning(learning_branch(r, sigma1, sigma2), current, best, cfg, rng)
}

/// One step of the bounded UAV-count walk: reflect at the bounds, otherwise
/// step up with probability `p_in` and down otherwise.
pub fn uav_number_adjust<R: Rng + ?Sized>(n: usize, cfg: &ScenarioConfig, p_in: f64, rng: &mut R) -> usize {
    let (lo, hi) = (cfg.counts.n_min, cfg.counts.n_max);
    if lo == hi {
        return lo;
    }
    if n >= hi {
        hi - 1
    } else if n <= lo {
        lo + 1
    } else if rng.gen::<f64>() < p_in {
        n + 1
    } else {
        n - 1
    }
}

/// Integer-uniform resampling of each discrete gene with probability `pm`.
/// Assignments left pointing past a reduced UAV count are redrawn.
pub fn resample_discrete<R: Rng + ?Sized>(d: &mut DiscretePart, pm: f64, cfg: &ScenarioConfig, rng: &mut R) {
    let u = cfg.counts.u_channels;
    if rng.gen::<f64>() < pm {
        d.n_active = random_uav_count(cfg, rng);
    }
    let n = d.n_active;
    for r in d.assign.iter_mut() {
        if *r >= n || rng.gen::<f64>() < pm {
            *r = rng.gen_range(0..n);
        }
    }
    for c in d.uav_chan.iter_mut().chain(d.direct_chan.iter_mut()) {
        if rng.gen::<f64>() < pm {
            *c = rng.gen_range(0..u);
        }
    }
}
