//! Exact rational scalars and their `"p/q"` string form used in JSON reports.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(x: &Rat) -> bool {
    x.is_zero()
}

/// Render as `"p"` or `"p/q"` in lowest terms, matching the wire format.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p"` or `"p/q"`.
pub fn rat_from_str(s: &str) -> Result<Rat, String> {
    let mut it = s.splitn(2, '/');
    let p: BigInt = it
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    match it.next() {
        None => Ok(Rat::from_integer(p)),
        Some(q) => {
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
            if q.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Absolute value, for convergence reports.
pub fn rat_abs(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-22/7"] {
            let x = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&x), s);
        }
        assert_eq!(rat_to_string(&rat_from_str("4/6").unwrap()), "2/3");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }
}
