//! Exact rational scalars: helpers over `num_rational::BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratf(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Renders `p/q`, or bare `p` when the value is an integer.
pub fn rat_string(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with optional sign. Returns `None` on malformed input
/// or a zero denominator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().ok()?;
        let den: BigInt = d.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    } else {
        let num: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(num))
    }
}

pub fn rat_abs(r: &Rat) -> Rat {
    if r.is_negative() {
        -r.clone()
    } else {
        r.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("5/3").unwrap(), ratf(5, 3));
        assert_eq!(parse_rat("-7").unwrap(), rat(-7));
        assert_eq!(rat_string(&ratf(10, 4)), "5/2");
        assert_eq!(rat_string(&rat(3)), "3");
        assert!(parse_rat("1/0").is_none());
    }
}
