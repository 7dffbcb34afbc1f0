//! Non-dominated sorting, reference points and both survival schemes on
//! random 3-objective points.
//!
//! `cargo run --example pareto_sorting`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skyrelay::moea::{crowding_distance, crowding_select_indices, das_dennis, divisions_for, fast_non_dominated_sort, nsga3_select_indices};

fn main() -> skyrelay::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let objs: Vec<[f64; 3]> = (0..40).map(|_| [rng.gen(), rng.gen(), rng.gen()]).collect();

    let fronts = fast_non_dominated_sort(&objs);
    println!("{} points in {} fronts; sizes {:?}", objs.len(), fronts.len(), fronts.iter().map(Vec::len).collect::<Vec<_>>());
    let cd = crowding_distance(&objs, &fronts[0]);
    println!("first-front crowding distances: {:?}", cd.iter().map(|d| format!("{d:.3}")).collect::<Vec<_>>());

    let p = divisions_for(20);
    let refs = das_dennis(3, p)?;
    println!("\nPop 20 -> {p} divisions, {} reference points", refs.len());
    for r in refs.points.iter().take(5) {
        println!("  {r:?}");
    }

    let mut a = nsga3_select_indices(&objs, 20, &refs, &mut rng);
    let mut b = crowding_select_indices(&objs, 20);
    a.sort_unstable();
    b.sort_unstable();
    let common = a.iter().filter(|i| b.contains(i)).count();
    println!("\nNSGA-III keeps {a:?}\nNSGA-II  keeps {b:?}\n{common} survivors in common");
    Ok(())
}
