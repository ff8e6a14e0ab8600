use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, NumCast, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field elements the structural algorithms run over.
///
/// `BigRational` makes every identity exact. Floating-point instantiations
/// work but only treat an exact `0.0` as zero, so rank decisions become
/// approximate.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive
{
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive
{
}

/// Converts an exact scalar to a float; values outside the float range map to NaN.
pub fn to_float<T: Scalar, F: Float>(x: &T) -> F {
    <F as NumCast>::from(x.clone()).unwrap_or_else(F::nan)
}

pub fn to_complex<T: Scalar, F: Float>(x: &T) -> Complex<F> {
    Complex::new(to_float(x), F::zero())
}

pub fn from_int<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("every field contains the integers")
}

pub fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

/// Shorthand for the rational `n/d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str_radix(num, 10).map_err(|_| bad())?;
    let den = BigInt::from_str_radix(den, 10).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Sign of `x` as -1, 0 or 1.
pub fn sign<T: Scalar>(x: &T) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
