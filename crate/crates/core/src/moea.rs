//! Many-objective evolutionary machinery: Pareto dominance, fast
//! non-dominated sorting, Das-Dennis reference points, NSGA-III and NSGA-II
//! survival, SBX and polynomial mutation.
//!
//! Everything here minimizes and works on plain objective slices, so it knows
//! nothing about UAVs. [`Individual`] bundles a genome with its evaluated
//! objectives for the solvers.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::encoding::{ObjectiveVector, Solution};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Solution,
    pub objectives: ObjectiveVector,
    /// Non-domination level, starting at 1; 0 until sorted.
    pub rank: usize,
}

impl Individual {
    pub fn new(genome: Solution, objectives: ObjectiveVector) -> Self {
        Self { genome, objectives, rank: 0 }
    }
}

/// `a` Pareto-dominates `b` (minimization).
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

pub fn dominates_vec(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    dominates(&a.as_array(), &b.as_array())
}

/// Partitions indices of `objs` into non-domination fronts, best first.
/// Within each front indices are ascending.
pub fn fast_non_dominated_sort<T: AsRef<[f64]>>(objs: &[T]) -> Vec<Vec<usize>> {
    let n = objs.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut count = vec![0usize; n];
    for p in 0..n {
        for q in (p + 1)..n {
            let (a, b) = (objs[p].as_ref(), objs[q].as_ref());
            if dominates(a, b) {
                dominated_by[p].push(q);
                count[q] += 1;
            } else if dominates(b, a) {
                dominated_by[q].push(p);
                count[p] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                count[q] -= 1;
                if count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    fronts
}

/// Structured reference directions on the unit simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePointSet {
    pub points: Vec<Vec<f64>>,
    pub divisions: usize,
}

impl ReferencePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// All lattice points `k / p` on the `n_obj`-simplex.
pub fn das_dennis(n_obj: usize, divisions: usize) -> Result<ReferencePointSet> {
    if divisions < 1 {
        return Err(Error::domain("reference points: divisions must be at least 1"));
    }
    if n_obj < 1 {
        return Err(Error::domain("reference points: need at least one objective"));
    }
    fn recurse(left: usize, depth: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if depth == 1 {
            cur.push(left);
            out.push(cur.iter().map(|&k| k as f64 / p as f64).collect());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            recurse(left - k, depth - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut points = Vec::new();
    recurse(divisions, n_obj, divisions, &mut Vec::new(), &mut points);
    Ok(ReferencePointSet { points, divisions })
}

/// Smallest division count whose 3-objective lattice has at least `pop` points.
pub fn divisions_for(pop: usize) -> usize {
    let mut p = 1;
    while (p + 1) * (p + 2) / 2 < pop {
        p += 1;
    }
    p
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = ((row + 1)..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Normalized objectives of `objs`: translated by the ideal point and scaled
/// by the hyperplane intercepts through the extreme points, falling back to
/// the per-objective maximum when the hyperplane is degenerate.
pub fn normalize<T: AsRef<[f64]>>(objs: &[T]) -> Vec<Vec<f64>> {
    if objs.is_empty() {
        return Vec::new();
    }
    let dim = objs[0].as_ref().len();
    let ideal: Vec<f64> = (0..dim)
        .map(|j| objs.iter().map(|o| o.as_ref()[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let translated: Vec<Vec<f64>> = objs
        .iter()
        .map(|o| o.as_ref().iter().zip(&ideal).map(|(v, z)| v - z).collect())
        .collect();

    let extremes: Vec<Vec<f64>> = (0..dim)
        .map(|axis| {
            let asf = |f: &Vec<f64>| {
                f.iter()
                    .enumerate()
                    .map(|(i, v)| if i == axis { *v } else { v / 1e-6 })
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            translated
                .iter()
                .min_by(|a, b| asf(a).total_cmp(&asf(b)))
                .cloned()
                .expect("non-empty")
        })
        .collect();

    let worst: Vec<f64> = (0..dim)
        .map(|j| translated.iter().map(|f| f[j]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let intercepts = solve_linear(extremes, vec![1.0; dim])
        .map(|w| w.iter().map(|v| 1.0 / v).collect::<Vec<_>>())
        .filter(|a| a.iter().zip(&worst).all(|(x, _)| x.is_finite() && *x > 1e-6))
        .unwrap_or(worst);
    let intercepts: Vec<f64> = intercepts.into_iter().map(|a| if a > 1e-12 { a } else { 1.0 }).collect();

    translated
        .into_iter()
        .map(|f| f.iter().zip(&intercepts).map(|(v, a)| v / a).collect())
        .collect()
}

/// Index of the closest reference direction and the perpendicular distance to it.
pub fn associate(point: &[f64], refs: &ReferencePointSet) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, w) in refs.points.iter().enumerate() {
        let ww: f64 = w.iter().map(|v| v * v).sum();
        let proj: f64 = point.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / ww;
        let d2: f64 = point.iter().zip(w).map(|(a, b)| (a - proj * b).powi(2)).sum();
        let d = d2.sqrt();
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

/// Splits sorted fronts into the ones admitted whole and the splitting front.
fn admit_fronts(fronts: Vec<Vec<usize>>, target: usize) -> (Vec<usize>, Option<Vec<usize>>) {
    let mut chosen = Vec::with_capacity(target);
    for front in fronts {
        if chosen.len() + front.len() <= target {
            chosen.extend(front);
            if chosen.len() == target {
                return (chosen, None);
            }
        } else {
            return (chosen, Some(front));
        }
    }
    (chosen, None)
}

/// NSGA-III environmental selection. Returns `target` indices into `objs`.
pub fn nsga3_select_indices<T: AsRef<[f64]>, R: Rng + ?Sized>(
    objs: &[T],
    target: usize,
    refs: &ReferencePointSet,
    rng: &mut R,
) -> Vec<usize> {
    assert!(objs.len() >= target, "selection target exceeds population");
    let (mut chosen, split) = admit_fronts(fast_non_dominated_sort(objs), target);
    let Some(last) = split else {
        return chosen;
    };

    let candidates: Vec<usize> = chosen.iter().chain(&last).copied().collect();
    let subset: Vec<&[f64]> = candidates.iter().map(|&i| objs[i].as_ref()).collect();
    let normalized = normalize(&subset);
    let assoc: Vec<(usize, f64)> = normalized.iter().map(|p| associate(p, refs)).collect();

    let mut niche = vec![0usize; refs.len()];
    for a in &assoc[..chosen.len()] {
        niche[a.0] += 1;
    }
    // members of the splitting front, grouped by reference point
    let mut pool: Vec<Vec<(usize, f64)>> = vec![Vec::new(); refs.len()];
    for (slot, &(j, d)) in assoc.iter().enumerate().skip(chosen.len()) {
        pool[j].push((candidates[slot], d));
    }
    let mut active: Vec<usize> = (0..refs.len()).collect();

    while chosen.len() < target {
        let min = active.iter().map(|&j| niche[j]).min().expect("some reference point has members");
        let ties: Vec<usize> = active.iter().copied().filter(|&j| niche[j] == min).collect();
        let j = *ties.choose(rng).expect("non-empty");
        if pool[j].is_empty() {
            active.retain(|&x| x != j);
            continue;
        }
        let pick = if niche[j] == 0 {
            let dmin = pool[j].iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            let closest: Vec<usize> = (0..pool[j].len()).filter(|&i| pool[j][i].1 == dmin).collect();
            *closest.choose(rng).expect("non-empty")
        } else {
            rng.gen_range(0..pool[j].len())
        };
        let (idx, _) = pool[j].swap_remove(pick);
        chosen.push(idx);
        niche[j] += 1;
    }
    chosen
}

/// Crowding distance of each member of `front` (in the order given).
pub fn crowding_distance<T: AsRef<[f64]>>(objs: &[T], front: &[usize]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0; n];
    if n == 0 {
        return dist;
    }
    let dim = objs[front[0]].as_ref().len();
    for j in 0..dim {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| objs[front[a]].as_ref()[j].total_cmp(&objs[front[b]].as_ref()[j]));
        let lo = objs[front[order[0]]].as_ref()[j];
        let hi = objs[front[order[n - 1]]].as_ref()[j];
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        if hi - lo <= 0.0 {
            continue;
        }
        for w in 1..n.saturating_sub(1) {
            let prev = objs[front[order[w - 1]]].as_ref()[j];
            let next = objs[front[order[w + 1]]].as_ref()[j];
            dist[order[w]] += (next - prev) / (hi - lo);
        }
    }
    dist
}

/// NSGA-II survival: whole fronts, then the splitting front by descending
/// crowding distance (ties by index).
pub fn crowding_select_indices<T: AsRef<[f64]>>(objs: &[T], target: usize) -> Vec<usize> {
    assert!(objs.len() >= target, "selection target exceeds population");
    let (mut chosen, split) = admit_fronts(fast_non_dominated_sort(objs), target);
    if let Some(last) = split {
        let dist = crowding_distance(objs, &last);
        let mut order: Vec<usize> = (0..last.len()).collect();
        order.sort_by(|&a, &b| dist[b].total_cmp(&dist[a]).then(last[a].cmp(&last[b])));
        chosen.extend(order.into_iter().take(target - chosen.len()).map(|i| last[i]));
    }
    chosen
}

fn assign_ranks(pop: &mut [Individual]) {
    let objs: Vec<[f64; 3]> = pop.iter().map(|i| i.objectives.as_array()).collect();
    for (r, front) in fast_non_dominated_sort(&objs).into_iter().enumerate() {
        for i in front {
            pop[i].rank = r + 1;
        }
    }
}

fn take_indices(merged: Vec<Individual>, idx: &[usize]) -> Vec<Individual> {
    let mut slots: Vec<Option<Individual>> = merged.into_iter().map(Some).collect();
    let mut out: Vec<Individual> = idx.iter().map(|&i| slots[i].take().expect("unique index")).collect();
    assign_ranks(&mut out);
    out
}

/// NSGA-III survival on evaluated individuals; survivors carry fresh ranks.
pub fn nsga3_select<R: Rng + ?Sized>(
    merged: Vec<Individual>,
    target: usize,
    refs: &ReferencePointSet,
    rng: &mut R,
) -> Vec<Individual> {
    let objs: Vec<[f64; 3]> = merged.iter().map(|i| i.objectives.as_array()).collect();
    let idx = nsga3_select_indices(&objs, target, refs, rng);
    take_indices(merged, &idx)
}

/// NSGA-II survival on evaluated individuals; survivors carry fresh ranks.
pub fn crowding_select(merged: Vec<Individual>, target: usize) -> Vec<Individual> {
    let objs: Vec<[f64; 3]> = merged.iter().map(|i| i.objectives.as_array()).collect();
    let idx = crowding_select_indices(&objs, target);
    take_indices(merged, &idx)
}

/// First non-dominated front of an evaluated population.
pub fn first_front(pop: &[Individual]) -> Vec<Individual> {
    let objs: Vec<[f64; 3]> = pop.iter().map(|i| i.objectives.as_array()).collect();
    fast_non_dominated_sort(&objs)
        .into_iter()
        .next()
        .unwrap_or_default()
        .into_iter()
        .map(|i| Individual { rank: 1, ..pop[i].clone() })
        .collect()
}

/// Simulated binary crossover with bounds. With probability `pc` the pair is
/// recombined gene by gene (each gene with probability 1/2); otherwise the
/// children are copies of the parents.
pub fn sbx<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    bounds: &[(f64, f64)],
    eta_c: f64,
    pc: f64,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(p1.len(), p2.len());
    assert_eq!(p1.len(), bounds.len());
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.gen::<f64>() >= pc {
        return (c1, c2);
    }
    let exp = 1.0 / (eta_c + 1.0);
    for i in 0..p1.len() {
        if rng.gen::<f64>() > 0.5 || (p1[i] - p2[i]).abs() <= 1e-14 {
            continue;
        }
        let (lo, hi) = bounds[i];
        let (y1, y2) = if p1[i] < p2[i] { (p1[i], p2[i]) } else { (p2[i], p1[i]) };
        let u: f64 = rng.gen();
        let spread = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(eta_c + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(exp)
            } else {
                (1.0 / (2.0 - u * alpha)).powf(exp)
            }
        };
        let bq1 = spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
        let bq2 = spread(1.0 + 2.0 * (hi - y2) / (y2 - y1));
        let mut a = (0.5 * ((y1 + y2) - bq1 * (y2 - y1))).clamp(lo, hi);
        let mut b = (0.5 * ((y1 + y2) + bq2 * (y2 - y1))).clamp(lo, hi);
        if rng.gen::<f64>() <= 0.5 {
            std::mem::swap(&mut a, &mut b);
        }
        c1[i] = a;
        c2[i] = b;
    }
    (c1, c2)
}

/// Bounded polynomial mutation; each gene mutates with probability `pm`.
pub fn poly_mutation<R: Rng + ?Sized>(x: &[f64], bounds: &[(f64, f64)], eta_m: f64, pm: f64, rng: &mut R) -> Vec<f64> {
    assert_eq!(x.len(), bounds.len());
    let exp = 1.0 / (eta_m + 1.0);
    x.iter()
        .zip(bounds)
        .map(|(&y, &(lo, hi))| {
            if rng.gen::<f64>() >= pm || hi <= lo {
                return y;
            }
            let d1 = (y - lo) / (hi - lo);
            let d2 = (hi - y) / (hi - lo);
            let u: f64 = rng.gen();
            let dq = if u < 0.5 {
                let v = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1).powf(eta_m + 1.0);
                v.powf(exp) - 1.0
            } else {
                let v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2).powf(eta_m + 1.0);
                1.0 - v.powf(exp)
            };
            (y + dq * (hi - lo)).clamp(lo, hi)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn dominance_examples() {
        assert!(dominates(&[-2_125_000.0, 4.0, 1550.0], &[-2_067_000.0, 4.0, 1808.0]));
        assert!(!dominates(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]));
        assert!(!dominates(&[1.0, 2.0, 3.0], &[2.0, 2.0, 2.0]));
        assert!(!dominates(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]));
    }

    #[test]
    fn sort_small_example() {
        let objs = [[1.0, 1.0, 1.0], [2.0, 2.0, 2.0], [1.0, 2.0, 3.0]];
        assert_eq!(fast_non_dominated_sort(&objs), vec![vec![0], vec![1, 2]]);
        let same = [[3.0, 3.0, 3.0]; 5];
        assert_eq!(fast_non_dominated_sort(&same), vec![vec![0, 1, 2, 3, 4]]);
        assert!(fast_non_dominated_sort::<[f64; 3]>(&[]).is_empty());
    }

    #[test]
    fn das_dennis_small() {
        let r1 = das_dennis(3, 1).unwrap();
        assert_eq!(r1.points, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let r3 = das_dennis(3, 3).unwrap();
        assert_eq!(r3.len(), 10);
        assert!(r3.points.iter().any(|p| p.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15)));
        assert_eq!(das_dennis(3, 4).unwrap().len(), 15);
        assert!(das_dennis(3, 0).is_err());
    }

    #[test]
    fn divisions_for_population() {
        assert_eq!(divisions_for(20), 5);
        assert_eq!(divisions_for(15), 4);
        assert_eq!(divisions_for(3), 1);
    }

    #[test]
    fn nsga3_exact_first_front() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let refs = das_dennis(3, 4).unwrap();
        let objs = [[0.0, 1.0, 2.0], [1.0, 0.0, 2.0], [2.0, 2.0, 2.0], [3.0, 3.0, 3.0]];
        let mut got = nsga3_select_indices(&objs, 2, &refs, &mut rng);
        got.sort();
        assert_eq!(got, vec![0, 1]);
    }

    #[test]
    fn nsga3_rank_precedence() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let refs = das_dennis(3, 5).unwrap();
        let mut objs = vec![[0.0, 0.0, 0.0]];
        for i in 0..10 {
            let t = i as f64 / 9.0;
            objs.push([1.0 + t, 2.0 - t, 1.5]);
        }
        objs.push([10.0, 10.0, 10.0]);
        let got = nsga3_select_indices(&objs, 5, &refs, &mut rng);
        assert_eq!(got.len(), 5);
        assert!(got.contains(&0));
        assert!(!got.contains(&11));
    }

    #[test]
    fn nsga3_degenerate_terminates() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let refs = das_dennis(3, 5).unwrap();
        let objs = vec![[1.0, 1.0, 1.0]; 30];
        let got = nsga3_select_indices(&objs, 7, &refs, &mut rng);
        assert_eq!(got.len(), 7);
        let mut u = got.clone();
        u.sort();
        u.dedup();
        assert_eq!(u.len(), 7);
    }

    #[test]
    fn crowding_keeps_extremes() {
        let objs = [[0.0, 2.0, 5.0], [1.0, 1.0, 5.0], [2.0, 0.0, 5.0]];
        let mut got = crowding_select_indices(&objs, 2);
        got.sort();
        assert_eq!(got, vec![0, 2]);
        assert_eq!(crowding_select_indices(&objs, 3).len(), 3);
    }

    #[test]
    fn crowding_boundary_is_infinite() {
        let objs = [[0.0, 4.0], [1.0, 2.0], [2.0, 1.0], [4.0, 0.0]];
        let d = crowding_distance(&objs, &[0, 1, 2, 3]);
        assert!(d[0].is_infinite() && d[3].is_infinite());
        assert!(d[1].is_finite() && d[2].is_finite());
    }

    #[test]
    fn normalize_maps_extremes_to_axes() {
        let objs = [[2.0, 0.0, 0.0], [0.0, 5.0, 0.0], [0.0, 0.0, 10.0], [0.5, 1.0, 2.0]];
        let n = normalize(&objs);
        for (i, row) in n.iter().enumerate().take(3) {
            let s: f64 = row.iter().sum();
            assert!((s - 1.0).abs() < 1e-9, "{i}: {row:?}");
        }
    }

    #[test]
    fn sbx_without_crossover_copies() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = vec![(0.0, 10.0); 4];
        let (c1, c2) = sbx(&[1.0, 2.0, 3.0, 4.0], &[9.0, 8.0, 7.0, 6.0], &b, 20.0, 0.0, &mut rng);
        assert_eq!(c1, vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(c2, vec![9.0, 8.0, 7.0, 6.0]);
        assert_eq!(poly_mutation(&c1, &b, 20.0, 0.0, &mut rng), c1);
    }

    #[test]
    fn mutation_is_centered_mid_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b = [(0.0, 1.0)];
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| poly_mutation(&[0.5], &b, 20.0, 1.0, &mut rng)[0]).sum::<f64>() / n as f64;
        // delta_q has standard deviation well below 0.05 at eta = 20
        assert!((mean - 0.5).abs() < 1e-3, "{mean}");
    }
}
