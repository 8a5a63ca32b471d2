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

//! Thiele weight sequences.

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Scalar};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::fmt;

/// A positive non-increasing weight sequence `λ(1), λ(2), ...`.
///
/// Symbolic families are defined for every index and for real arguments.
/// Custom lists are finite and are extended to real arguments by
/// piecewise-linear interpolation between integer points.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaWeights {
    /// `λ(i) = 1/i`.
    Pav,
    /// `λ(i) = i^(-p)` for `p >= 0`.
    Power(f64),
    /// Explicit values `λ(1), ..., λ(len)`.
    Custom(Vec<BigRational>),
}

impl LambdaWeights {
    /// `λ(i) = 1/√i`.
    pub fn sqrt() -> Self {
        LambdaWeights::Power(0.5)
    }

    /// Checks positivity and monotonicity of custom lists, and that the
    /// power exponent is finite and non-negative.
    pub fn validate(&self) -> Result<()> {
        match self {
            LambdaWeights::Pav => Ok(()),
            LambdaWeights::Power(p) => {
                if p.is_finite() && *p >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidInput(format!(
                        "power exponent {p} must be >= 0"
                    )))
                }
            }
            LambdaWeights::Custom(v) => {
                if v.is_empty() {
                    return Err(Error::InvalidInput("empty weight list".into()));
                }
                if v.iter().any(|x| !x.is_positive()) {
                    return Err(Error::InvalidInput("weights must be positive".into()));
                }
                if v.windows(2).any(|w| w[1] > w[0]) {
                    return Err(Error::InvalidInput("weights must be non-increasing".into()));
                }
                Ok(())
            }
        }
    }

    /// Number of defined entries, or `None` for symbolic families.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        match self {
            LambdaWeights::Custom(v) => Some(v.len()),
            _ => None,
        }
    }

    /// Errors unless `λ(1..=needed)` is defined.
    pub fn require(&self, needed: usize) -> Result<()> {
        match self.len() {
            Some(len) if len < needed => Err(Error::LambdaTooShort { len, needed }),
            _ => Ok(()),
        }
    }

    /// `λ(i)` for `i >= 1` in the requested scalar type. Integer powers are
    /// exact; fractional powers are rounded to the nearest `f64` first.
    pub fn value<S: Scalar>(&self, i: usize) -> Result<S> {
        assert!(i >= 1, "weights are indexed from 1");
        match self {
            LambdaWeights::Pav => Ok(S::one() / S::from_usize(i)),
            LambdaWeights::Power(p) => {
                if p.fract() == 0.0 && *p <= 64.0 {
                    let base = S::from_usize(i);
                    let mut den = S::one();
                    for _ in 0..(*p as u32) {
                        den = den * base.clone();
                    }
                    Ok(S::one() / den)
                } else {
                    Ok(S::from_f64((i as f64).powf(-p)))
                }
            }
            LambdaWeights::Custom(v) => {
                v.get(i - 1)
                    .map(S::from_rational)
                    .ok_or(Error::LambdaTooShort {
                        len: v.len(),
                        needed: i,
                    })
            }
        }
    }

    /// Prefix sums `[0, λ(1), λ(1)+λ(2), ...]` of length `k + 1`.
    pub fn prefix_sums<S: Scalar>(&self, k: usize) -> Result<Vec<S>> {
        self.require(k)?;
        let mut out = Vec::with_capacity(k + 1);
        out.push(S::zero());
        for i in 1..=k {
            let next = out[i - 1].clone() + self.value::<S>(i)?;
            out.push(next);
        }
        Ok(out)
    }

    /// `λ(x)` at a real argument `x > 0`.
    ///
    /// Custom lists interpolate linearly between integer points and continue
    /// the first and last segments outside `[1, len]`, clamped at zero.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            LambdaWeights::Pav => 1.0 / x,
            LambdaWeights::Power(p) => x.powf(-p),
            LambdaWeights::Custom(v) => {
                let at = |i: usize| ToPrimitive::to_f64(&v[i]).unwrap_or(f64::NAN);
                if v.len() == 1 {
                    return at(0);
                }
                let seg = ((x.floor() as i64 - 1).clamp(0, v.len() as i64 - 2)) as usize;
                let (y0, y1) = (at(seg), at(seg + 1));
                let t = x - (seg + 1) as f64;
                (y0 + (y1 - y0) * t).max(0.0)
            }
        }
    }

    /// Whether `λ` is non-increasing and convex on the integer points
    /// `1..=upto`. Custom lists shorter than `upto` are rejected.
    pub fn is_convex(&self, upto: usize) -> bool {
        if self.require(upto).is_err() {
            return false;
        }
        let vals: Vec<f64> = (1..=upto).map(|i| self.eval(i as f64)).collect();
        let eps = 1e-12;
        vals.windows(2).all(|w| w[1] <= w[0] + eps)
            && vals.windows(3).all(|w| w[0] - 2.0 * w[1] + w[2] >= -eps)
    }

    /// Short tag used in reports and CSV output.
    pub fn label(&self) -> String {
        match self {
            LambdaWeights::Pav => "pav".into(),
            LambdaWeights::Power(p) if *p == 0.5 => "sqrt".into(),
            LambdaWeights::Power(p) => format!("power({p})"),
            LambdaWeights::Custom(_) => "custom".into(),
        }
    }
}

impl fmt::Display for LambdaWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl std::str::FromStr for LambdaWeights {
    type Err = Error;

    /// Accepts `pav`, `sqrt`, `power:<p>` or `custom:<v1,v2,...>` where the
    /// values are integers, fractions or decimals.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lambda = match s {
            "pav" => LambdaWeights::Pav,
            "sqrt" => LambdaWeights::sqrt(),
            _ if s.starts_with("power:") => {
                let p: f64 = s["power:".len()..]
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad exponent in `{s}`")))?;
                LambdaWeights::Power(p)
            }
            _ if s.starts_with("custom:") => {
                let values = s["custom:".len()..]
                    .split(',')
                    .map(|t| {
                        parse_rational(t)
                            .ok_or_else(|| Error::InvalidInput(format!("bad weight `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                LambdaWeights::Custom(values)
            }
            _ => return Err(Error::InvalidInput(format!("unknown weight family `{s}`"))),
        };
        lambda.validate()?;
        Ok(lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_integer_powers() {
        let l = LambdaWeights::Power(2.0);
        assert_eq!(
            l.value::<BigRational>(3).unwrap(),
            BigRational::new(1.into(), 9.into())
        );
        assert_eq!(
            LambdaWeights::Pav.value::<BigRational>(4).unwrap(),
            BigRational::new(1.into(), 4.into())
        );
    }

    #[test]
    fn custom_interpolates_and_reports_length() {
        let l: LambdaWeights = "custom:1,1/2,1/4".parse().unwrap();
        assert!((l.eval(1.5) - 0.75).abs() < 1e-15);
        assert!((l.eval(0.5) - 1.25).abs() < 1e-15);
        assert!(matches!(
            l.value::<f64>(4),
            Err(Error::LambdaTooShort { len: 3, needed: 4 })
        ));
        assert!(l.is_convex(3));
        assert!(!l.is_convex(4));
    }

    #[test]
    fn rejects_increasing_lists() {
        assert!("custom:1,2".parse::<LambdaWeights>().is_err());
        assert!("power:-1".parse::<LambdaWeights>().is_err());
    }
}
