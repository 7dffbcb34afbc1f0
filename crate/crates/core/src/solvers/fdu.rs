use std::time::Instant;

use rand::seq::SliceRandom;

use super::{
    evaluate_batch, initial_population, make_offspring, probabilistic_learning_operator, random_plan_for, seeded_rng,
    snapshot, uav_number_adjust, RunConfig, SolverResult,
};
use crate::encoding::repair_continuous;
use crate::error::Result;
use crate::moea::{first_front, nsga3_select, Individual};
use crate::scenario::ScenarioConfig;

/// NSGA-III with flexible dimension, discrete-part generation and UAV-count
/// adjustment. Each generation merges the parents with two offspring sets:
/// one whose discrete parts go through the learning operator and one whose
/// UAV count takes a walk step before a fresh plan is drawn.
pub fn nsga3fdu(cfg: &ScenarioConfig, rc: &RunConfig) -> Result<SolverResult> {
    cfg.validate()?;
    rc.validate()?;
    let start = Instant::now();
    let mut rng = seeded_rng(rc.seed);
    let refs = rc.reference_points()?;

    let init = initial_population(cfg, rc.pop, &mut rng);
    let mut pop = evaluate_batch(init, cfg)?;
    let mut evaluations = pop.len();
    let mut history = Vec::new();
    if rc.record_history {
        history.push(snapshot(0, &pop, &[]));
    }

    for generation in 1..=rc.max_iters {
        let front = first_front(&pop);
        let parents: Vec<_> = pop.iter().map(|i| &i.genome).collect();
        let q = make_offspring(&parents, cfg, rc, &mut rng);
        let mut q_prime = q.clone();

        let mut q_learn = Vec::with_capacity(q.len());
        for mut child in q {
            let donor = front.choose(&mut rng).expect("first front is non-empty");
            let d = probabilistic_learning_operator(
                &child.discrete(),
                &donor.genome.discrete(),
                rc.sigma1,
                rc.sigma2,
                cfg,
                &mut rng,
            );
            child.set_discrete(d);
            q_learn.push(repair_continuous(child, cfg, &mut rng));
        }
        for child in q_prime.iter_mut() {
            let n = uav_number_adjust(child.n_active, cfg, rc.p_in, &mut rng);
            child.set_discrete(random_plan_for(n, cfg, &mut rng));
            *child = repair_continuous(std::mem::take(child), cfg, &mut rng);
        }

        let mut offspring: Vec<Individual> = evaluate_batch(q_learn, cfg)?;
        offspring.extend(evaluate_batch(q_prime, cfg)?);
        evaluations += offspring.len();

        let mut merged = std::mem::take(&mut pop);
        if rc.record_history {
            merged.extend(offspring.iter().cloned());
            pop = nsga3_select(merged, rc.pop, &refs, &mut rng);
            history.push(snapshot(generation, &pop, &offspring));
        } else {
            merged.extend(offspring);
            pop = nsga3_select(merged, rc.pop, &refs, &mut rng);
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
