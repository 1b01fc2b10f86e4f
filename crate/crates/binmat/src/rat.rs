//! Exact rational arithmetic helpers. All densities, defects, energies and
//! lemma bounds in this crate are `BigRational`; nothing is ever rounded.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

/// 2^n as a rational.
pub fn pow2(n: usize) -> Rational {
    Rational::from(BigInt::one() << n)
}

/// Renders as `p` or `p/q`, always in lowest terms.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal like `0.25` — all exact.
pub fn rat_from_str(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad(s))?;
        let d: BigInt = den.trim().parse().map_err(|_| bad(s))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad(s))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(s));
        }
        let f: BigInt = frac.parse().map_err(|_| bad(s))?;
        let scale = num::pow(BigInt::from(10), frac.len());
        let frac_part = Rational::new(f, scale);
        let int_part = Rational::from(i);
        return Ok(if negative {
            int_part - frac_part
        } else {
            int_part + frac_part
        });
    }
    let n: BigInt = s.parse().map_err(|_| bad(s))?;
    Ok(Rational::from(n))
}

fn bad(s: &str) -> String {
    format!("cannot parse `{s}` as a rational")
}

/// Absolute distance |a - b|.
pub fn rat_abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(rat_from_str("3/10").unwrap(), rat(3, 10));
        assert_eq!(rat_from_str("0.3").unwrap(), rat(3, 10));
        assert_eq!(rat_from_str("0.25").unwrap(), rat(1, 4));
        assert_eq!(rat_from_str("2").unwrap(), rat_int(2));
        assert_eq!(rat_from_str("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(rat_from_str("-1/2").unwrap(), rat(-1, 2));
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("abc").is_err());
    }

    #[test]
    fn render() {
        assert_eq!(rat_to_string(&rat(7, 8)), "7/8");
        assert_eq!(rat_to_string(&rat(4, 2)), "2");
        assert_eq!(rat_to_string(&rat(0, 5)), "0");
    }
}
