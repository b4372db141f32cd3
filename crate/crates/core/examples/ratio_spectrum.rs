//! The multiplicity spectrum of A/A and its half-mass threshold.

use sumdiv::{families::geometric_set, ratio_spectrum, PairCap, PosRational};

pub fn run() -> sumdiv::Result<()> {
    let a = geometric_set(&PosRational::from_integer(2), 4)?;
    let spectrum = ratio_spectrum(&a, PairCap::default())?;

    println!("{:>8} {:>12}", "ratio", "multiplicity");
    for entry in spectrum.entries() {
        println!("{:>8} {:>12}", entry.ratio.to_string(), entry.multiplicity);
    }

    let t = spectrum.threshold();
    println!(
        "threshold k = {} (m_k = {}), head mass {}, tail mass {}, total {}",
        t.k,
        t.m_k,
        t.head_mass,
        t.tail_mass,
        spectrum.total_mass()
    );
    println!("multiplicative energy = {}", spectrum.energy());

    spectrum.write_csv(std::io::stdout().lock())?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> sumdiv::Result<()> {
    run()
}
