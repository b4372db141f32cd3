//! Searches small sets for the lowest value of `|A+A|²·|A/A| / |A|⁴`.

use sumdiv::{
    search::{run as search, Objective, SearchConfig, SearchMode},
    PairCap,
};

pub fn run() -> sumdiv::Result<()> {
    let exhaustive = SearchConfig {
        objective: Objective::Joint,
        mode: SearchMode::Exhaustive { cardinality: 4, universe: 16, budget: 10_000 },
    };
    let best = search(&exhaustive, PairCap::default())?;
    println!(
        "exhaustive: best {{{}}} with value {} ≈ {} after {} subsets",
        best.best_set.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        best.best_value,
        best.best_value_decimal,
        best.evaluations
    );

    let local = SearchConfig {
        objective: Objective::Max,
        mode: SearchMode::Local { cardinality: 8, seed: 7, iterations: 500, num_bound: 64, den_bound: 3 },
    };
    let best = search(&local, PairCap::default())?;
    println!("local ({} improvements):", best.trace.len());
    for step in &best.trace {
        println!("  step {:>4}: {}", step.step, step.value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> sumdiv::Result<()> {
    run()
}
