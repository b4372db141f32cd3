//! Verifies a seeded random corpus in parallel and summarises the slack.

use rayon::prelude::*;
use sumdiv::{
    families::{random_corpus, random_set},
    verify_sum_division, PairCap,
};

pub fn run() -> sumdiv::Result<()> {
    let corpus = random_corpus(500, 2024, 32);
    let reports = corpus
        .par_iter()
        .map(|spec| verify_sum_division(&random_set(spec)?, PairCap::default()))
        .collect::<sumdiv::Result<Vec<_>>>()?;

    let passing = reports.iter().filter(|r| r.passes_theorem && r.all_estimates_pass()).count();
    let tightest = reports
        .iter()
        .filter(|r| r.cardinality >= 2)
        .min_by(|x, y| {
            let ratio = |r: &sumdiv::VerificationReport| r.report_ratios["sum_division"].exact.clone();
            ratio(x).cmp(&ratio(y))
        })
        .expect("corpus has sets of size at least two");
    println!("{passing}/{} sets pass every check", reports.len());
    println!(
        "tightest: |A|={} |A+A|={} |A/A|={} ratio {}",
        tightest.cardinality,
        tightest.sumset_size,
        tightest.ratioset_size,
        tightest.report_ratios["sum_division"].decimal.as_deref().unwrap_or("-")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> sumdiv::Result<()> {
    run()
}
