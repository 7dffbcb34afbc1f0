use std::time::Instant;

use rand::Rng;

use super::{
    evaluate_batch, initial_population, make_offspring, random_plan_for, resample_discrete, seeded_rng, snapshot,
    RunConfig, SolverResult, SolverRng,
};
use crate::encoding::{evaluate, evaluate_unpenalized, pad_solution, random_solution, repair_continuous, Solution};
use crate::error::{Error, Result};
use crate::moea::{crowding_select, first_front, nsga3_select, Individual};
use crate::scenario::ScenarioConfig;

/// Plain NSGA-III: no learning or count walk, discrete genes resampled at the
/// mutation rate, `2 * Pop` merge.
pub fn nsga3_plain(cfg: &ScenarioConfig, rc: &RunConfig) -> Result<SolverResult> {
    let refs = rc.reference_points()?;
    plain_loop(cfg, rc, |merged, rng| nsga3_select(merged, rc.pop, &refs, rng))
}

/// NSGA-II with the same variation path as [`nsga3_plain`].
pub fn nsga2(cfg: &ScenarioConfig, rc: &RunConfig) -> Result<SolverResult> {
    plain_loop(cfg, rc, |merged, _| crowding_select(merged, rc.pop))
}

fn vary(parents: &[&Solution], cfg: &ScenarioConfig, rc: &RunConfig, rng: &mut SolverRng) -> Vec<Solution> {
    let pm = rc.mutation_rate(cfg);
    make_offspring(parents, cfg, rc, rng)
        .into_iter()
        .map(|mut child| {
            let mut d = child.discrete();
            resample_discrete(&mut d, pm, cfg, rng);
            child.set_discrete(d);
            repair_continuous(child, cfg, rng)
        })
        .collect()
}

fn plain_loop<F>(cfg: &ScenarioConfig, rc: &RunConfig, mut select: F) -> Result<SolverResult>
where
    F: FnMut(Vec<Individual>, &mut SolverRng) -> Vec<Individual>,
{
    cfg.validate()?;
    rc.validate()?;
    let start = Instant::now();
    let mut rng = seeded_rng(rc.seed);
    let mut pop = evaluate_batch(initial_population(cfg, rc.pop, &mut rng), cfg)?;
    let mut evaluations = pop.len();
    let mut history = Vec::new();
    if rc.record_history {
        history.push(snapshot(0, &pop, &[]));
    }
    for generation in 1..=rc.max_iters {
        let parents: Vec<_> = pop.iter().map(|i| &i.genome).collect();
        let offspring = evaluate_batch(vary(&parents, cfg, rc, &mut rng), cfg)?;
        evaluations += offspring.len();
        let mut merged = std::mem::take(&mut pop);
        merged.extend(offspring.iter().cloned());
        pop = select(merged, &mut rng);
        if rc.record_history {
            history.push(snapshot(generation, &pop, &offspring));
        }
    }
    Ok(SolverResult {
        final_front: first_front(&pop),
        history,
        wall_time_s: start.elapsed().as_secs_f64(),
        seed: rc.seed,
        evaluations,
    })
}

fn check_weights(w: [f64; 3]) -> Result<()> {
    if w.iter().all(|x| x.is_finite() && *x >= 0.0) && w.iter().any(|x| *x > 0.0) {
        Ok(())
    } else {
        Err(Error::Invariant { violations: vec!["weights >= 0 and not all zero violated".into()] })
    }
}

/// Single-objective generational GA on `w . (-f1, f2, f3)`, each objective
/// scaled by the magnitude of an unpenalized UD deployment. Binary tournament,
/// SBX, PM and discrete resampling; the best parent survives each generation.
/// Returns the best individual ever evaluated as a singleton front.
pub fn weighted_sum_ga(cfg: &ScenarioConfig, rc: &RunConfig, weights: [f64; 3]) -> Result<SolverResult> {
    cfg.validate()?;
    rc.validate()?;
    check_weights(weights)?;
    let start = Instant::now();
    let mut rng = seeded_rng(rc.seed);

    let ud = ud_solution(cfg, &mut rng);
    let norm = evaluate_unpenalized(&ud, cfg)?.as_array().map(|v| if v == 0.0 { 1.0 } else { v.abs() });
    let score = |i: &Individual| -> f64 {
        let f = i.objectives.as_array();
        (0..3).map(|j| weights[j] * f[j] / norm[j]).sum()
    };

    let mut pop = evaluate_batch(initial_population(cfg, rc.pop, &mut rng), cfg)?;
    let mut evaluations = pop.len();
    let mut history = Vec::new();
    if rc.record_history {
        history.push(snapshot(0, &pop, &[]));
    }
    let best_of = |pop: &[Individual]| -> usize {
        (0..pop.len()).fold(0, |b, i| if score(&pop[i]) < score(&pop[b]) { i } else { b })
    };
    let mut best = pop[best_of(&pop)].clone();

    for generation in 1..=rc.max_iters {
        let parents: Vec<&Solution> = (0..pop.len())
            .map(|_| {
                let a = rng.gen_range(0..pop.len());
                let b = rng.gen_range(0..pop.len());
                if score(&pop[b]) < score(&pop[a]) { &pop[b].genome } else { &pop[a].genome }
            })
            .collect();
        let mut offspring = evaluate_batch(vary(&parents, cfg, rc, &mut rng), cfg)?;
        evaluations += offspring.len();
        if rc.record_history {
            history.push(snapshot(generation, &pop, &offspring));
        }
        let elite = pop[best_of(&pop)].clone();
        let worst = (0..offspring.len()).fold(0, |w, i| if score(&offspring[i]) > score(&offspring[w]) { i } else { w });
        offspring[worst] = elite;
        pop = offspring;
        let cand = &pop[best_of(&pop)];
        if score(cand) < score(&best) {
            best = cand.clone();
        }
    }

    best.rank = 1;
    Ok(SolverResult {
        final_front: vec![best],
        history,
        wall_time_s: start.elapsed().as_secs_f64(),
        seed: rc.seed,
        evaluations,
    })
}

/// Centers of a `ceil(sqrt(n))` square lattice over the area, row-major,
/// truncated to `n` cells.
pub fn ud_grid(cfg: &ScenarioConfig, n: usize) -> Vec<[f64; 2]> {
    let g = (n as f64).sqrt().ceil() as usize;
    let (lo, hi) = (cfg.bounds.l_min_m, cfg.bounds.l_max_m);
    let cell = (hi - lo) / g as f64;
    (0..g)
        .flat_map(|row| (0..g).map(move |col| [lo + (col as f64 + 0.5) * cell, lo + (row as f64 + 0.5) * cell]))
        .take(n)
        .collect()
}

fn ud_solution<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> Solution {
    let b = &cfg.bounds;
    let n = (cfg.counts.n_min + cfg.counts.n_max) / 2;
    let grid = ud_grid(cfg, n);
    let d = random_plan_for(n, cfg, rng);
    let sol = Solution {
        x: grid.iter().map(|p| p[0]).collect(),
        y: grid.iter().map(|p| p[1]).collect(),
        z: vec![(b.z_min_m + b.z_max_m) / 2.0; n],
        power: vec![b.p_max_w; n],
        speed: (0..n).map(|_| rng.gen_range(b.v_min_m_s..=b.v_max_m_s)).collect(),
        assign: d.assign,
        uav_chan: d.uav_chan[..n].to_vec(),
        direct_chan: d.direct_chan,
        n_active: n,
    };
    pad_solution(sol, cfg, rng)
}

/// Uniform deployment: mid-count UAVs on a grid at mid altitude and full
/// power, random speeds and plan. Evaluated with the penalty.
pub fn ud_baseline<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> Result<Individual> {
    let sol = ud_solution(cfg, rng);
    let obj = evaluate(&sol, cfg)?;
    Ok(Individual::new(sol, obj))
}

/// Random deployment: every gene drawn uniformly within its domain.
pub fn rd_baseline<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> Result<Individual> {
    let sol = random_solution(cfg, rng);
    let obj = evaluate(&sol, cfg)?;
    Ok(Individual::new(sol, obj))
}
