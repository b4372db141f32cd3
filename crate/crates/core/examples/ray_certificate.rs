//! Builds the neighbouring-ray lower bound for the grid sum set of A×A.

use sumdiv::{families::interval_set, ratio_spectrum, verify::ray_certificate, PairCap};

pub fn run() -> sumdiv::Result<()> {
    let a = interval_set(8)?;
    let cap = PairCap::default();
    let k = ratio_spectrum(&a, cap)?.threshold().k;
    let cert = ray_certificate(&a, k, cap)?;

    println!(
        "kept {} rays with multiplicity >= {}",
        cert.slope_sorted_rays.len(),
        cert.min_multiplicity
    );
    println!(
        "neighbouring-ray sums: {} constructed, bound {}, grid sum set has {}",
        cert.constructed_points, cert.pair_bound, cert.direct_grid_size
    );
    println!(
        "distinct: {}, in sectors: {}, bound holds: {}",
        cert.distinctness_verified, cert.sectors_verified, cert.bound_holds
    );
    assert!(cert.bound_holds && cert.distinctness_verified && cert.sectors_verified);
    Ok(())
}

#[allow(dead_code)]
fn main() -> sumdiv::Result<()> {
    run()
}
