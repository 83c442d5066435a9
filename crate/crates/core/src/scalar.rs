//! Scalar fields the tensor code is generic over.
//!
//! Two instantiations exist: [`ExactScalar`] (arbitrary-precision rationals,
//! used wherever an identity has to hold exactly) and `f64` (used for
//! witnesses with radical entries and for the optimizer).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type ExactScalar = BigRational;

/// Absolute tolerance for structural checks (tracelessness, orthogonality)
/// in the float field.
pub const FLOAT_TOL: f64 = 1e-12;

/// Which field a tensor's components live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Float,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Rational => "rational",
            Field::Float => "float",
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const FIELD: Field;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn from_exact(x: &ExactScalar) -> Self;

    /// Exact binary value of `x` in the rational field.
    fn from_f64(x: f64) -> Self;

    fn abs(&self) -> Self;

    /// Zero test on a computed quantity. Exact: `self == 0`. Float:
    /// `|self| <= FLOAT_TOL * |scale|`, so callers pass a scale with the same
    /// homogeneity degree as `self`.
    fn is_negligible(&self, scale: &Self) -> bool;

    /// Uniform draw from `[-bound, bound]`: integers for the exact field,
    /// reals for the float field.
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self;

    fn powu(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for ExactScalar {
    const FIELD: Field = Field::Rational;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_exact(x: &ExactScalar) -> Self {
        x.clone()
    }

    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(Zero::zero)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        Self::from_i64(rng.random_range(-bound..=bound))
    }

    fn powu(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }
}

impl Scalar for f64 {
    const FIELD: Field = Field::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_exact(x: &ExactScalar) -> Self {
        ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_negligible(&self, scale: &Self) -> bool {
        f64::abs(*self) <= FLOAT_TOL * f64::abs(*scale)
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        if bound == 0 {
            return 0.0;
        }
        let b = bound as f64;
        rng.random_range(-b..=b)
    }

    fn powu(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
}

/// Renders an exact scalar as `p/q` (denominator always written).
pub fn format_ratio(x: &ExactScalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`. The result is reduced; a zero or
/// negative denominator is rejected only when zero.
pub fn parse_ratio(s: &str) -> Result<ExactScalar, Error> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational literal: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ratio_round_trip_is_reduced() {
        let x = parse_ratio("6/-4").unwrap();
        assert_eq!(format_ratio(&x), "-3/2");
        assert_eq!(format_ratio(&parse_ratio("7").unwrap()), "7/1");
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x/2").is_err());
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = ExactScalar::sample(&mut rng, 1000);
            let b = ExactScalar::sample(&mut rng, 1000);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let x = a.clone() / b.clone();
            let y = b / a;
            assert!((x * y).is_one());
        }
    }

    #[test]
    fn two_hundred_digit_products_are_lossless() {
        let ten = BigInt::from(10);
        let p = num_traits::pow(ten.clone(), 200) + BigInt::from(7);
        let q = num_traits::pow(ten, 199) * BigInt::from(3) + BigInt::from(1);
        let a = BigRational::new(p.clone(), q.clone());
        let b = BigRational::new(q, p);
        assert!((a.clone() * b).is_one());
        let sq = a.clone() * a.clone();
        assert_eq!(sq / a.clone(), a);
    }

    #[test]
    fn float_negligible_is_relative_to_scale() {
        assert!(1e-13_f64.is_negligible(&1.0));
        assert!(!1e-11_f64.is_negligible(&1.0));
        assert!(1e-3_f64.is_negligible(&1e10));
        assert!(0.0_f64.is_negligible(&0.0));
    }
}
