// Copyright 2026 The abc-core Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Number types shared by the exact and the floating-point code paths.
//!
//! Election rules, profiles and the dense simplex are generic over
//! [`Scalar`]. [`BigRational`] gives exact arithmetic, and `f64`/`f32` give
//! fast approximate arithmetic with tolerance-based comparisons.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};

/// A field-like number type usable throughout the crate.
pub trait Scalar:
    Num + Signed + Clone + Debug + Display + PartialOrd + Send + Sync + 'static
{
    /// Whether comparisons on this type are exact.
    const EXACT: bool;

    /// Builds `num / den`. Panics if `den` is zero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Converts an exact rational into this type, rounding if necessary.
    fn from_rational(r: &BigRational) -> Self;

    /// Converts a float into this type. Rationals receive the exact binary
    /// value of `x`.
    fn from_f64(x: f64) -> Self;

    /// Nearest `f64` value.
    fn to_f64(&self) -> f64;

    /// Exact rational value, if this type can represent one.
    fn to_rational(&self) -> Option<BigRational>;

    /// Absolute tolerance used to decide ties and pivots; zero when exact.
    fn tolerance() -> Self;

    /// Smallest integer not below `self`, saturating at zero.
    fn ceil_usize(&self) -> usize;

    /// Builds an integer value.
    fn from_usize(n: usize) -> Self {
        Self::from_ratio(n as i64, 1)
    }

    /// Tie test: exact equality for rationals, absolute tolerance for floats.
    fn ties(&self, other: &Self) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.clone() - other.clone()).abs() <= Self::tolerance()
        }
    }

    /// Strictly greater, beyond the tie tolerance.
    fn beats(&self, other: &Self) -> bool {
        !self.ties(other) && self > other
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_f64(x: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(x).expect("finite float")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn ceil_usize(&self) -> usize {
        if self.is_negative() {
            return 0;
        }
        let (q, r) = self.numer().div_rem(self.denom());
        let q = if r.is_zero() { q } else { q + BigInt::one() };
        q.to_usize().unwrap_or(usize::MAX)
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(num: i64, den: i64) -> Self {
                assert!(den != 0, "zero denominator");
                (num as f64 / den as f64) as $t
            }

            fn from_rational(r: &BigRational) -> Self {
                ToPrimitive::to_f64(r).unwrap_or(f64::NAN) as $t
            }

            fn from_f64(x: f64) -> Self {
                x as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn to_rational(&self) -> Option<BigRational> {
                <BigRational as FromPrimitive>::from_f64(*self as f64)
            }

            fn tolerance() -> Self {
                $tol
            }

            fn ceil_usize(&self) -> usize {
                let c = (*self - $tol).ceil();
                if c <= 0.0 {
                    0
                } else {
                    c as usize
                }
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-5);

/// Best rational approximation of `x` with denominator at most `max_den`,
/// by continued fractions.
pub fn rationalize(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let mut rest = x.abs();
    // Convergents h/k of the continued fraction of |x|.
    let (mut h0, mut h1) = (0u128, 1u128);
    let (mut k0, mut k1) = (1u128, 0u128);
    for _ in 0..64 {
        let a = rest.floor();
        if a > 1e18 {
            break;
        }
        let a = a as u128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as u128 {
            // Best semiconvergent that still fits.
            let t = (max_den as u128 - k0) / k1.max(1);
            let hs = t * h1 + h0;
            let ks = t * k1 + k0;
            if ks > 0 {
                let semi = hs as f64 / ks as f64;
                let conv = h1 as f64 / k1 as f64;
                if (semi - x.abs()).abs() < (conv - x.abs()).abs() {
                    h1 = hs;
                    k1 = ks;
                }
            }
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = rest - a as f64;
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    let r = BigRational::new(BigInt::from(h1), BigInt::from(k1.max(1)));
    Some(if negative { -r } else { r })
}

/// Parses `p`, `p/q` or a plain decimal such as `0.25` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p = BigInt::from_str_radix(p.trim(), 10).ok()?;
        let q = BigInt::from_str_radix(q.trim(), 10).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str_radix(&digits, 10).ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(num, den);
        return Some(if negative { -r } else { r });
    }
    BigInt::from_str_radix(text, 10)
        .ok()
        .map(BigRational::from_integer)
}
