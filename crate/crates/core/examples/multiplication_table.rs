//! Counts distinct entries of the n×n multiplication table and watches the
//! density fall off slowly.

use sumdiv::families::{beta_constant, sweep_points, table_row, TableBudget};

pub fn run() -> sumdiv::Result<()> {
    println!("{:>6} {:>10} {:>10} {:>10}", "n", "M(n)", "density", "exponent");
    for n in sweep_points(16, 2048, true)? {
        let row = table_row(n, TableBudget::default())?;
        let exponent = row
            .effective_exponent
            .map_or_else(|| "-".to_string(), |e| format!("{e:.4}"));
        println!("{:>6} {:>10} {:>10.4} {:>10}", row.n, row.count, row.density.to_f64(), exponent);
    }
    println!("limiting exponent constant: {:.10}", beta_constant());
    Ok(())
}

#[allow(dead_code)]
fn main() -> sumdiv::Result<()> {
    run()
}
