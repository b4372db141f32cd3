//! Sum, product and ratio sets of a finite set of positive rationals.

use sumdiv::set::parse_set_file;

pub fn run() -> sumdiv::Result<()> {
    let a = parse_set_file("# a small mixed set\n1\n3/2\n2\n4\n")?;
    let sums = a.sumset(&a)?;
    let products = a.productset(&a)?;
    let ratios = a.ratioset(&a)?;

    println!("A     = {{{}}}", join(a.iter()));
    println!("A+A   has {:>2} elements: {{{}}}", sums.len(), join(sums.iter()));
    println!("A*A   has {:>2} elements: {{{}}}", products.len(), join(products.iter()));
    println!("A/A   has {:>2} elements: {{{}}}", ratios.len(), join(ratios.iter()));

    // A/A is closed under inversion and always contains 1, so its size is odd.
    assert_eq!(ratios.len() % 2, 1);
    Ok(())
}

fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[allow(dead_code)]
fn main() -> sumdiv::Result<()> {
    run()
}
