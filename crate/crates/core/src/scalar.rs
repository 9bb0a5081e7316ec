//! Scalar abstraction: all linear algebra and polynomial code in this crate
//! is generic over a [`Field`]. The crate-root aliases instantiate it with
//! arbitrary-precision rationals, which is the only instantiation the
//! classification itself is sound for (every decision is an exact equality).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A field scalar. Division by any nonzero element must be exact in the
/// mathematical sense for the classification results to be meaningful;
/// the float impls exist for generic numeric experimentation only.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Size measure used for pivot selection: among nonzero candidates the
    /// smallest wins, which limits coefficient growth during elimination.
    fn complexity(&self) -> u64 {
        0
    }

    /// Total order used only to fix canonical block orderings.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// A unit `u` such that dividing each of `values` by `u` reduces their
    /// joint complexity (row content normalization). Must return 1 when all
    /// values are zero.
    fn content_unit(values: &[Self]) -> Self {
        let _ = values;
        Self::one()
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn complexity(&self) -> u64 {
        (self.numer().bits() + self.denom().bits()) as u64
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn content_unit(values: &[Self]) -> Self {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for v in values {
            if !v.is_zero() {
                num_gcd = num_gcd.gcd(v.numer());
                den_lcm = den_lcm.lcm(v.denom());
            }
        }
        if num_gcd.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num_gcd, den_lcm)
    }
}

macro_rules! impl_field_for_float {
    ($t:ty) => {
        impl Field for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn canonical_cmp(&self, other: &Self) -> Ordering {
                self.partial_cmp(other).unwrap_or(Ordering::Equal)
            }
        }
    };
}

impl_field_for_float!(f32);
impl_field_for_float!(f64);

/// Parses a rational from "p/q" or "p" form with arbitrary precision.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| format!("invalid integer `{num_str}`"))?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| format!("invalid integer `{d}`"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(numer, denom))
}

/// Renders a rational as "p/q", or "p" when the denominator is 1.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
