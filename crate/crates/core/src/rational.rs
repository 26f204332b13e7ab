//! Exact rational scalars and a few integer combinatorics helpers.
//!
//! The scalar type is [`num_rational::BigRational`], which keeps every value
//! in lowest terms with a positive denominator. Its `Display` impl already
//! prints `p/q`, or just `p` when the denominator is one, which is the text
//! form used by every table this crate emits.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a rational number (expected p or p/q)")]
pub struct ParseRationalError {
    pub input: String,
}

/// Builds `num/den` from machine integers. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or `-p/q`. Surrounding whitespace is ignored.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { input: s.to_string() };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Parses a comma separated list of rationals, e.g. `1/3,1/2`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, ParseRationalError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_rational)
        .collect()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial_q(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

pub fn binomial_q(n: u32, k: u32) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// `r^e` for a possibly negative exponent. Panics on `0^e` with `e < 0`.
pub fn pow(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty list).
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Natural logarithm of a big integer's absolute value, without overflowing
/// `f64` for huge inputs. Returns `-inf` for zero.
fn ln_abs_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(60);
    let top = (n.abs() >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `(sign, ln |r|)` computed in the log domain. `sign` is 0 for zero.
pub fn ln_abs(r: &Rational) -> (i8, f64) {
    if r.is_zero() {
        return (0, f64::NEG_INFINITY);
    }
    let sign = if r.is_negative() { -1 } else { 1 };
    (sign, ln_abs_bigint(r.numer()) - ln_abs_bigint(r.denom()))
}

pub fn to_f64(r: &Rational) -> f64 {
    let (sign, l) = ln_abs(r);
    match sign {
        0 => 0.0,
        s => f64::from(s) * l.exp(),
    }
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Simplest rational that rounds to `x`, e.g. `0.1 -> 1/10`; falls back to
/// the exact binary value when no small fraction fits.
pub fn from_f64_simplest(x: f64) -> Option<Rational> {
    match num_rational::Ratio::<i64>::approximate_float(x) {
        Some(r) if *r.numer() as f64 / *r.denom() as f64 == x => Some(Rational::new((*r.numer()).into(), (*r.denom()).into())),
        _ => from_f64(x),
    }
}

/// Formats a float with 12 significant digits, in the spirit of `%.12g`.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        let s = format!("{:.11e}", x);
        let (mant, e) = s.split_once('e').unwrap_or((&s, "0"));
        let mant = trim_zeros(mant);
        return format!("{mant}e{e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert_eq!(parse_rational("1/-2").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(rat(-691, 2730).to_string(), "-691/2730");
        assert_eq!(rat(4, 2).to_string(), "2");
        assert_eq!(
            parse_rational_list("1/3, 1/2").unwrap(),
            vec![rat(1, 3), rat(1, 2)]
        );
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(pow(&rat(2, 3), -2), rat(9, 4));
    }

    #[test]
    fn log_domain() {
        let big = Rational::from_integer(factorial(300));
        let (s, l) = ln_abs(&big);
        assert_eq!(s, 1);
        let expect = statrs::function::gamma::ln_gamma(301.0);
        assert!((l - expect).abs() < 1e-9 * expect);
        assert!((to_f64(&rat(-1, 3)) + 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(ln_abs(&int(0)).0, 0);
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_float(1.0), "1");
        assert_eq!(fmt_float(-0.25), "-0.25");
        assert_eq!(fmt_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_float(123456.789), "123456.789");
        assert_eq!(fmt_float(1.5e-9), "1.5e-9");
    }
}
