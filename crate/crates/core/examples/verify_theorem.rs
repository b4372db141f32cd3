//! Checks `|A+A|²·|A/A| ≥ |A|⁴/4` and each step of its proof on a few sets.

use sumdiv::{families::FamilySpec, verify_sum_division, PairCap};

pub fn run() -> sumdiv::Result<()> {
    for spec in ["interval:20", "geometric:3/2:12", "farey:7", "random:30:42:60:4"] {
        let family: FamilySpec = spec.parse()?;
        let a = family.build()?;
        let report = verify_sum_division(&a, PairCap::default())?;
        report.ensure_sound()?;
        println!(
            "{spec:<20} |A|={:<3} |A+A|={:<4} |A/A|={:<4} k={:<4} lhs={:<12} rhs*4={:<10} ratio={}",
            report.cardinality,
            report.sumset_size,
            report.ratioset_size,
            report.k,
            report.lhs,
            report.rhs_times4,
            report.report_ratios["sum_division"].decimal.as_deref().unwrap_or("-"),
        );
        assert!(report.passes_theorem && report.all_estimates_pass());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> sumdiv::Result<()> {
    run()
}
