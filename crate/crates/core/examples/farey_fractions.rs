//! Farey fractions: sizes against `3n²/π²` and additive statistics.

use sumdiv::{
    families::{farey_asymptotic, farey_set, farey_size, farey_statistics},
    PairCap,
};

pub fn run() -> sumdiv::Result<()> {
    println!("F_5 = {{{}}}", farey_set(5)?.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    for n in [10, 100, 1000] {
        let size = farey_size(n);
        let approx = farey_asymptotic(n);
        println!("|F_{n}| = {size}, 3n²/π² = {approx:.1}, rel. error {:.5}", (size as f64 - approx).abs() / approx);
    }
    let stats = farey_statistics(12, PairCap::default())?;
    println!("{}", serde_json::to_string_pretty(&stats).expect("serializable"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> sumdiv::Result<()> {
    run()
}
