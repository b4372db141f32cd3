//! Radii and angles of A×A: distinct squared radii match the sum set of
//! squares and distinct angles match A/A.

use sumdiv::{families::interval_set, set::grid_sumset_size, verify::rad_ang_bound, PairCap};

pub fn run() -> sumdiv::Result<()> {
    let cap = PairCap::default();
    for n in [4, 8, 16] {
        let a = interval_set(n)?;
        let bound = rad_ang_bound(&a, cap)?;
        let grid = grid_sumset_size(&a, cap)?;
        let s = a.sumset(&a)?.len();
        println!(
            "n={n:<3} radii={:<4} angles={:<4} max bound ok={} | grid sum set {} = |A+A|² = {}",
            bound.radius_count,
            bound.angle_count,
            bound.passes,
            grid,
            s * s
        );
        assert!(bound.radius_matches_square_sumset && bound.angle_matches_square_ratioset);
        assert_eq!(grid, s * s);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> sumdiv::Result<()> {
    run()
}
