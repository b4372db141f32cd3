//! Exact positive rationals in canonical reduced form.
//!
//! Every [`PosRational`] holds `num / den` with `gcd(num, den) = 1` and both
//! parts at least one, so structural equality and hashing coincide with
//! equality of the represented real numbers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseRationalError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PosRational {
    num: BigUint,
    den: BigUint,
}

impl PosRational {
    /// Builds `num / den` in lowest terms. `None` when either part is zero.
    pub fn new(num: BigUint, den: BigUint) -> Option<Self> {
        if num.is_zero() || den.is_zero() {
            return None;
        }
        Some(Self::reduced(num, den))
    }

    fn reduced(num: BigUint, den: BigUint) -> Self {
        let g = num.gcd(&den);
        if g.is_one() {
            PosRational { num, den }
        } else {
            PosRational {
                num: num / &g,
                den: den / g,
            }
        }
    }

    /// Convenience constructor for small literals. Panics on a zero part.
    pub fn from_u64s(num: u64, den: u64) -> Self {
        Self::new(num.into(), den.into()).expect("numerator and denominator must be nonzero")
    }

    /// The positive integer `n`. Panics on zero.
    pub fn from_integer(n: u64) -> Self {
        Self::from_u64s(n, 1)
    }

    pub fn one() -> Self {
        PosRational {
            num: BigUint::one(),
            den: BigUint::one(),
        }
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Self {
        PosRational {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn square(&self) -> Self {
        PosRational {
            num: &self.num * &self.num,
            den: &self.den * &self.den,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        PosRational {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// `self - other` when the difference is positive.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let left = &self.num * &other.den;
        let right = &other.num * &self.den;
        if left <= right {
            return None;
        }
        Some(Self::reduced(left - right, &self.den * &other.den))
    }

    /// Lossy conversion for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (n, d) = (self.num.to_f64(), self.den.to_f64());
        match (n, d) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                // Shift both parts down so the quotient survives f64 range.
                let shift = self.num.bits().max(self.den.bits()).saturating_sub(1000);
                let n = (&self.num >> shift).to_f64().unwrap_or(f64::INFINITY);
                let d = (&self.den >> shift).to_f64().unwrap_or(f64::INFINITY);
                n / d
            }
        }
    }
}

impl Ord for PosRational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for PosRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a PosRational> for &'a PosRational {
    type Output = PosRational;

    fn add(self, rhs: &'a PosRational) -> PosRational {
        if self.den == rhs.den {
            return PosRational::reduced(&self.num + &rhs.num, self.den.clone());
        }
        PosRational::reduced(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Mul<&'a PosRational> for &'a PosRational {
    type Output = PosRational;

    fn mul(self, rhs: &'a PosRational) -> PosRational {
        // Cross-cancel first; the result is then already reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        PosRational {
            num: (&self.num / &g1) * (&rhs.num / &g2),
            den: (&self.den / &g2) * (&rhs.den / &g1),
        }
    }
}

impl<'a> Div<&'a PosRational> for &'a PosRational {
    type Output = PosRational;

    fn div(self, rhs: &'a PosRational) -> PosRational {
        let g1 = self.num.gcd(&rhs.num);
        let g2 = self.den.gcd(&rhs.den);
        PosRational {
            num: (&self.num / &g1) * (&rhs.den / &g2),
            den: (&self.den / &g2) * (&rhs.num / &g1),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for PosRational {
            type Output = PosRational;
            fn $method(self, rhs: PosRational) -> PosRational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn digits(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigUint::parse_bytes(s.as_bytes(), 10)
}

/// Parses `"p/q"`, an integer `"p"`, or a finite decimal `"d.ddd"`.
///
/// Surrounding whitespace is ignored. Signs are not accepted; a leading `-`
/// is reported as a non-positive value.
pub fn parse_rational(text: &str) -> Result<PosRational, ParseRationalError> {
    let t = text.trim();
    let malformed = || ParseRationalError::Malformed(text.to_string());
    if t.starts_with('-') {
        return Err(ParseRationalError::NonPositive(text.to_string()));
    }

    let (num, den) = if let Some((p, q)) = t.split_once('/') {
        let p = digits(p.trim()).ok_or_else(malformed)?;
        let q = digits(q.trim()).ok_or_else(malformed)?;
        (p, q)
    } else if let Some((int, frac)) = t.split_once('.') {
        if int.is_empty() && frac.is_empty() {
            return Err(malformed());
        }
        let int_part = if int.is_empty() {
            BigUint::zero()
        } else {
            digits(int).ok_or_else(malformed)?
        };
        let frac_part = if frac.is_empty() {
            BigUint::zero()
        } else {
            digits(frac).ok_or_else(malformed)?
        };
        let scale = BigUint::from(10u32).pow(frac.len() as u32);
        (int_part * &scale + frac_part, scale)
    } else {
        (digits(t).ok_or_else(malformed)?, BigUint::one())
    };

    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    if num.is_zero() {
        return Err(ParseRationalError::NonPositive(text.to_string()));
    }
    Ok(PosRational::reduced(num, den))
}

impl FromStr for PosRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s)
    }
}

impl Serialize for PosRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PosRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
