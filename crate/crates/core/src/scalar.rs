//! Scalar fields: double-precision complex numbers and exact Gaussian
//! rationals (complex numbers with arbitrary-precision rational parts).

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub type GaussianRational = Complex<BigRational>;
pub type GaussianInteger = Complex<BigInt>;

/// Operations the evaluators need from a coefficient field.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Whether arithmetic is exact; tolerances are ignored when it is.
    const EXACT: bool;

    fn from_i64(x: i64) -> Self;
    fn imag_unit() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn conj(&self) -> Self;
    fn div_i64(&self, d: i64) -> Self;
    fn to_c64(&self) -> Complex64;
    /// `|a − b| ≤ tol` in floating point, `a == b` when exact.
    fn close_to(&self, other: &Self, tol: f64) -> bool;
    /// Sign of the real part, treating `|re| ≤ tol` as zero when inexact.
    fn re_sign(&self, tol: f64) -> Ordering;
    fn im_is_zero(&self, tol: f64) -> bool;
    /// Human-readable value: `a+bi` exactly, or with 12 decimals.
    fn to_text(&self) -> String;
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_i64(x: i64) -> Self {
        Complex64::new(x as f64, 0.0)
    }

    fn imag_unit() -> Self {
        Complex64::i()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn div_i64(&self, d: i64) -> Self {
        self / d as f64
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }

    fn re_sign(&self, tol: f64) -> Ordering {
        if self.re.abs() <= tol {
            Ordering::Equal
        } else if self.re > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn im_is_zero(&self, tol: f64) -> bool {
        self.im.abs() <= tol
    }

    fn to_text(&self) -> String {
        alloc::format!("{:.12}", self)
    }
}

impl Scalar for GaussianRational {
    const EXACT: bool = true;

    fn from_i64(x: i64) -> Self {
        Complex::new(BigRational::from_integer(x.into()), BigRational::zero())
    }

    fn imag_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn div_i64(&self, d: i64) -> Self {
        let d = BigRational::from_integer(d.into());
        Complex::new(&self.re / &d, &self.im / &d)
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn re_sign(&self, _tol: f64) -> Ordering {
        self.re.cmp(&BigRational::zero())
    }

    fn im_is_zero(&self, _tol: f64) -> bool {
        self.im.is_zero()
    }

    fn to_text(&self) -> String {
        format_gaussian(self)
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Nearest double, or NaN when out of range.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn gaussian(re: BigRational, im: BigRational) -> GaussianRational {
    Complex::new(re, im)
}

/// Least common denominator of the real and imaginary parts.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a GaussianRational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, z| {
        acc.lcm(z.re.denom()).lcm(z.im.denom())
    })
}

/// `z · d` as a Gaussian integer; `d` must clear every denominator of `z`.
pub fn scale_to_integer(z: &GaussianRational, d: &BigInt) -> GaussianInteger {
    let part = |q: &BigRational| q.numer() * (d / q.denom());
    Complex::new(part(&z.re), part(&z.im))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.125"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(alloc::format!("invalid rational {text:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            s => s.parse().map_err(|_| bad())?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = BigRational::new(whole * &scale + f, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// `"p/q"` or `"p"` when the denominator is 1.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

/// `a+bi` rendering of an exact value.
pub fn format_gaussian(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let sign = if z.im.is_negative() { '-' } else { '+' };
    alloc::format!(
        "{}{}{}i",
        format_rational(&z.re),
        sign,
        format_rational(&z.im.abs())
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("214/800").unwrap(), rational(107, 400));
        assert_eq!(parse_rational("-3").unwrap(), rational(-3, 1));
        assert_eq!(parse_rational("-0.125").unwrap(), rational(-1, 8));
        assert_eq!(parse_rational("2.5").unwrap(), rational(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&rational(6, 4)), "3/2");
        assert_eq!(
            format_gaussian(&gaussian(rational(1, 2), rational(-3, 1))),
            "1/2-3i"
        );
        assert_eq!(format_gaussian(&GaussianRational::from_i64(7)), "7");
    }

    #[test]
    fn integer_scaling() {
        let zs = [
            gaussian(rational(1, 4), rational(1, 6)),
            gaussian(rational(3, 8), rational(0, 1)),
        ];
        let d = common_denominator(zs.iter());
        assert_eq!(d, BigInt::from(24));
        assert_eq!(
            scale_to_integer(&zs[0], &d),
            Complex::new(BigInt::from(6), BigInt::from(4))
        );
    }
}
