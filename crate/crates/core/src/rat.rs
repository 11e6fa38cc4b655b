//! Exact rational helpers and the `"p/q"` string encoding used by all JSON
//! interfaces.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{Rat, RatPoly};

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (decimal integers, optional sign, `q ≠ 0`).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::schema(format!("not an exact rational \"p/q\": {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Canonical `"p/q"` form (`"p"` for integers).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_poly(coeffs: &[String]) -> Result<RatPoly> {
    Ok(RatPoly::new(
        coeffs.iter().map(|c| parse_rat(c)).collect::<Result<_>>()?,
    ))
}

pub fn fmt_poly(p: &RatPoly) -> Vec<String> {
    p.coeffs().iter().map(fmt_rat).collect()
}

pub fn fmt_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["0", "-3", "7/2", "-1/12"] {
            assert_eq!(fmt_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(fmt_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
        assert_eq!(rat_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rat_sqrt(&frac(2, 1)), None);
    }
}
