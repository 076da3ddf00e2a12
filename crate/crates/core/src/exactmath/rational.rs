use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-3/4"` or `" 22/7 "`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let num = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        let den = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        if den == BigInt::from(0) {
            return Err(Error::Parse(format!("{t:?}: zero denominator")));
        }
        Ok(Rational::new(num, den))
    } else {
        let num = BigInt::from_str(t).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        Ok(Rational::from_integer(num))
    }
}

/// Random weight `p/q` with `|p| <= 100` and `1 <= q <= 10`.
pub fn random_rational<G: Rng + ?Sized>(rng: &mut G) -> Rational {
    let p: i64 = rng.gen_range(-100..=100);
    let q: i64 = rng.gen_range(1..=10);
    rat(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert_eq!(rat(22, 7).to_string(), "22/7");
        assert_eq!(rat(-4, 2).to_string(), "-2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = rat(0, 5);
        assert!(z.is_zero());
        assert!(z.denom().is_one());
    }

    proptest! {
        #[test]
        fn always_lowest_terms(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
            let x = rat(a, b);
            let y = rat(c, d);
            let s = &x + &y;
            // a/b + c/d computed by hand
            prop_assert_eq!(s.clone(), rat(a * d + c * b, b * d));
            let g = num_integer::Integer::gcd(s.numer(), s.denom());
            prop_assert!(g.is_one());
            prop_assert!(s.denom() > &BigInt::from(0));
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x);
            }
        }
    }
}
