//! Fixed significant-digit decimal rendering of exact quantities.
//!
//! Values are either positive rationals or real roots of positive rationals.
//! Rounding is round-half-even, decided with exact integer comparisons.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::rational::PosRational;

/// Default number of significant digits for decimal renderings.
pub const DEFAULT_SIG_DIGITS: usize = 15;

fn pow10(e: u32) -> BigUint {
    BigUint::from(10u32).pow(e)
}

/// Compares `10^(e * root)` with `num / den`.
fn pow10_le(e: i64, root: u32, num: &BigUint, den: &BigUint) -> bool {
    let p = e * root as i64;
    if p >= 0 {
        pow10(p as u32) * den <= *num
    } else {
        *den <= num * pow10((-p) as u32)
    }
}

/// Renders `(value)^(1/root)` with `digits` significant digits.
pub fn render_root(value: &PosRational, root: u32, digits: usize) -> String {
    assert!(root >= 1 && digits >= 1);
    let (num, den) = (value.numer(), value.denom());

    // Decimal exponent e with 10^e <= v < 10^(e+1), v = (num/den)^(1/root).
    let approx = (num.bits() as f64 - den.bits() as f64) * std::f64::consts::LOG10_2 / root as f64;
    let mut e = approx.floor() as i64;
    while !pow10_le(e, root, num, den) {
        e -= 1;
    }
    while pow10_le(e + 1, root, num, den) {
        e += 1;
    }

    let mut mantissa = scaled_round(num, den, root, digits as i64 - 1 - e);
    let mut lead = e;
    if mantissa >= pow10(digits as u32) {
        // rounded up to the next power of ten
        mantissa /= 10u32;
        lead += 1;
    }
    layout(&mantissa.to_str_radix(10), lead, digits)
}

/// Round-half-even of `(num/den)^(1/root) * 10^shift`.
fn scaled_round(num: &BigUint, den: &BigUint, root: u32, shift: i64) -> BigUint {
    let p = shift * root as i64;
    // T = t^root as a fraction tn/td.
    let (tn, td) = if p >= 0 {
        (num * pow10(p as u32), den.clone())
    } else {
        (num.clone(), den * pow10((-p) as u32))
    };
    let floor_t = (&tn / &td).nth_root(root);
    // t >= f + 1/2  <=>  2^root * tn >= (2f + 1)^root * td
    let twice_plus_one: BigUint = &floor_t * 2u32 + 1u32;
    let left = (BigUint::one() << root as usize) * &tn;
    let right = twice_plus_one.pow(root) * &td;
    match left.cmp(&right) {
        std::cmp::Ordering::Greater => floor_t + 1u32,
        std::cmp::Ordering::Less => floor_t,
        std::cmp::Ordering::Equal => {
            if (&floor_t % 2u32).is_zero() {
                floor_t
            } else {
                floor_t + 1u32
            }
        }
    }
}

/// Places a decimal point into `digits_str` given the exponent of its leading digit.
fn layout(digits_str: &str, lead: i64, digits: usize) -> String {
    debug_assert_eq!(digits_str.len(), digits);
    if lead < 0 {
        let zeros = "0".repeat((-lead - 1) as usize);
        format!("0.{zeros}{digits_str}")
    } else if (lead as usize) + 1 >= digits {
        let zeros = "0".repeat(lead as usize + 1 - digits);
        format!("{digits_str}{zeros}")
    } else {
        let split = lead as usize + 1;
        format!("{}.{}", &digits_str[..split], &digits_str[split..])
    }
}

pub fn render(value: &PosRational, digits: usize) -> String {
    render_root(value, 1, digits)
}

/// Renders a finite positive `f64`. Used only for quantities with no exact form
/// (logarithms); the binary value is treated as exact.
pub fn render_f64(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let (neg, x) = if x < 0.0 { ("-", -x) } else { ("", x) };
    let exact = f64_to_rational(x);
    format!("{neg}{}", render(&exact, digits))
}

fn f64_to_rational(x: f64) -> PosRational {
    assert!(x.is_finite() && x > 0.0);
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    if e >= 0 {
        PosRational::new(BigUint::from(mant) << e as usize, BigUint::one()).unwrap()
    } else {
        PosRational::new(BigUint::from(mant), BigUint::one() << (-e) as usize).unwrap()
    }
}
