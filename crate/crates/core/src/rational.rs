//! Small helpers around [`Rational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn floor_i64(x: &Rational) -> i64 {
    x.floor().to_integer().to_i64().expect("floor fits in i64")
}

pub fn is_integer(x: &Rational) -> bool {
    x.is_integer()
}

pub fn is_negative_integer(x: &Rational) -> bool {
    x.is_integer() && x.is_negative()
}

pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn format(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p/q"` or `"p"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn lcm_all(xs: &[i64]) -> i64 {
    xs.iter().fold(1i64, |acc, &x| acc.lcm(&x))
}

pub fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}

/// `prod(num) / prod(den)` without intermediate overflow.
pub fn product_ratio<I: IntoIterator<Item = i64>, J: IntoIterator<Item = i64>>(num: I, den: J) -> Rational {
    let n = num.into_iter().fold(BigInt::one(), |a, x| a * BigInt::from(x));
    let d = den.into_iter().fold(BigInt::one(), |a, x| a * BigInt::from(x));
    Rational::new(n, d)
}
