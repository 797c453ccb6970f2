//! Exact arithmetic substrate: rational scalars, dense univariate
//! polynomials over the rationals, rational functions and polynomial
//! matrices with exact determinants.

mod matrix;
mod modp;
mod poly;
mod ratfunc;

pub use matrix::{determinant, determinant_cofactor, PolyMatrix};
pub use poly::{horner_complex, horner_f64, poly_arith, ArithKind, RationalPolynomial};
pub use ratfunc::RationalFunction;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rising factorial `(a)_j = a (a+1) ... (a+j-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &BigRational, j: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..j {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// Generalized binomial coefficient `top (top-1) ... (top-bottom+1) / bottom!`.
pub fn gen_binomial(top: &BigRational, bottom: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..bottom {
        let i = BigRational::from_integer(BigInt::from(i));
        acc *= top - &i;
        acc /= &i + BigRational::one();
    }
    acc
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a terminating decimal such as `"-4.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let mag: BigInt = digits.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let v = BigRational::new(mag, scale);
        return Ok(if negative { -v } else { v });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Renders a rational as `"p/q"`, integers included (`"3/1"`).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `true` for `0, -1, -2, ...`.
pub fn is_nonpositive_integer(q: &BigRational) -> bool {
    q.is_integer() && !q.is_positive()
}

/// `true` for `-1, -2, -3, ...`.
pub fn is_negative_integer(q: &BigRational) -> bool {
    q.is_integer() && q.is_negative()
}

/// Integer part `[c] = max { s in Z : s <= c }`.
pub fn floor_int(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil_int(q: &BigRational) -> BigInt {
    q.numer().div_ceil(q.denom())
}
