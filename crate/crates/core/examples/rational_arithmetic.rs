//! Exact positive rationals: parsing, canonical form, arithmetic and ordering.

use sumdiv::{parse_rational, PosRational};

pub fn run() -> sumdiv::Result<()> {
    let a = parse_rational("6/4")?;
    let b = parse_rational("0.25")?;
    println!("6/4 reduces to {a}, 0.25 parses as {b}");

    let sum = &a + &b;
    let product = &a * &b;
    let quotient = &a / &b;
    println!("{a} + {b} = {sum}");
    println!("{a} * {b} = {product}");
    println!("{a} / {b} = {quotient}");
    assert_eq!(quotient, PosRational::from_integer(6));

    let mut values: Vec<PosRational> = ["3", "1/3", "5/7", "2/3"]
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_, _>>()?;
    values.sort();
    let listed: Vec<String> = values.iter().map(ToString::to_string).collect();
    println!("sorted: {}", listed.join(" < "));

    for bad in ["0", "-1/2", "3/0", "x"] {
        println!("{bad:>5} -> {}", parse_rational(bad).unwrap_err());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> sumdiv::Result<()> {
    run()
}
