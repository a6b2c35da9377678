//! Exact rational scalars.
//!
//! All arithmetic in this crate happens over ℚ with arbitrary-precision
//! integers.  Rationals serialize as `"p/q"` strings (or `"p"` when the
//! denominator is 1) so that exactness survives JSON round trips.

use num::bigint::BigInt;
use num::rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The scalar field: arbitrary-precision rationals, always stored reduced.
pub type Q = BigRational;

/// Shorthand for an integer rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `num/den`.
///
/// # Panics
/// Panics if `den == 0`.
pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"` or `"p"` into a rational.  Returns `None` on malformed
/// input or a zero denominator.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Q::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Q::from_integer(p))
        }
    }
}

/// The level k = −n + (n−1)/q of the family studied here, as an exact rational.
pub fn level_from_q(n: u32, q: u32) -> Q {
    assert!(n >= 2 && q >= 1);
    qi(-(n as i64)) + qr(n as i64 - 1, q as i64)
}

/// The sl₃ family level k = −3 + 2/(2m+1).
pub fn level_from_m(m: u32) -> Q {
    level_from_q(3, 2 * m + 1)
}

/// Deterministic total-degree-free comparison helper: |x| as a rational.
pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_round_trip() {
        for (n, d) in [(1i64, 2i64), (-7, 3), (5, 1), (0, 1), (-1, 1)] {
            let x = qr(n, d);
            assert_eq!(parse_q(&format_q(&x)).unwrap(), x);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_q("1/0").is_none());
        assert!(parse_q("a/b").is_none());
        assert!(parse_q("").is_none());
    }

    #[test]
    fn levels() {
        // q = 1 gives k = -1 for sl_3; the odd-denominator family hits -7/3 at m = 1.
        assert_eq!(level_from_q(3, 1), qi(-1));
        assert_eq!(level_from_m(0), qi(-1));
        assert_eq!(level_from_m(1), qr(-7, 3));
        assert_eq!(level_from_q(4, 2), qr(-5, 2));
    }
}
