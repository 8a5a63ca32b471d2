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

//! Closed-form and root-finding bounds on proportionality degrees and
//! utilitarian efficiency.
//!
//! Guarantees and degrees are real-valued, so this module works in `f64`.
//! Every root is found by bisection on a monotone function and comes with
//! its residual.

use crate::error::{Error, Result};
use crate::model::ApprovalProfile;
use crate::rules::{seq_pav, LambdaWeights, StepDetail, TieBreak};
use crate::scalar::Scalar;
use num_rational::BigRational;
use std::fmt::Write;

/// Whether a bound holds from below or from above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// A guarantee: the degree is at least the value.
    Lower,
    /// A witness: the degree is at most the value.
    Upper,
}

impl BoundKind {
    /// `lower` or `upper`.
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        }
    }
}

/// A proportionality bound `g(ℓ, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GuaranteeReport {
    /// Rule tag such as `phragmen` or `thiele(pav)`.
    pub rule: String,
    /// Group size parameter.
    pub ell: usize,
    /// Committee size; zero when the bound does not depend on it.
    pub k: usize,
    /// Direction of the bound.
    pub kind: BoundKind,
    /// Value.
    pub value: f64,
    /// Defect of the defining equation at `value`; zero for closed forms.
    pub residual: f64,
    /// Free-form remarks.
    pub notes: Vec<String>,
}

impl GuaranteeReport {
    fn closed(rule: &str, ell: usize, k: usize, kind: BoundKind, value: f64) -> Self {
        GuaranteeReport {
            rule: rule.into(),
            ell,
            k,
            kind,
            value,
            residual: 0.0,
            notes: Vec::new(),
        }
    }

    /// CSV header matching [`GuaranteeReport::csv_row`].
    pub const CSV_HEADER: &'static str = "rule,l,k,kind,value,residual";

    /// `rule,l,k,kind,value,residual`.
    pub fn csv_row(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "{},{},{},{},{},{}",
            self.rule,
            self.ell,
            self.k,
            self.kind.as_str(),
            crate::tables::fmt_sig(self.value),
            crate::tables::fmt_sig(self.residual)
        );
        s
    }
}

/// A utilitarian efficiency bound.
#[derive(Clone, Debug, PartialEq)]
pub struct EfficiencyReport {
    /// Weight family tag.
    pub lambda: String,
    /// Committee size.
    pub k: usize,
    /// Root `α` of the defining equation.
    pub alpha: f64,
    /// Efficiency value derived from `α`.
    pub guarantee: f64,
    /// Direction of the bound.
    pub kind: BoundKind,
    /// Defect of the defining equation at `α`.
    pub residual: f64,
}

/// Bisection iterations used by every root finder.
pub const BISECTION_STEPS: usize = 200;

/// Root of a decreasing function on `[lo, hi]` with `f(lo) >= 0 >= f(hi)`.
fn bisect_decreasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo >= 0.0 && fhi <= 0.0) {
        return Err(Error::Root(format!(
            "bracket [{lo}, {hi}] has values {flo} and {fhi}"
        )));
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (rlo, rhi) = (f(lo).abs(), f(hi).abs());
    Ok(if rlo <= rhi { lo } else { hi })
}

/// Moves the left end of a bracket toward `floor` until `f` is non-negative.
fn lower_end(f: &impl Fn(f64) -> f64, start: f64, floor: f64) -> Result<f64> {
    let mut x = start;
    for i in 1..=60 {
        if f(x) >= 0.0 {
            return Ok(x);
        }
        x = floor + (start - floor) * 0.5f64.powi(i);
    }
    Err(Error::Root("no valid lower bracket end".into()))
}

fn check_ell_k(ell: usize, k: usize) -> Result<()> {
    if ell == 0 || ell > k {
        return Err(Error::InvalidInput(format!(
            "need 1 <= l <= k, got l={ell}, k={k}"
        )));
    }
    Ok(())
}

fn check_convex(lambda: &LambdaWeights, upto: usize) -> Result<()> {
    lambda.validate()?;
    lambda.require(upto)?;
    if !lambda.is_convex(upto) {
        return Err(Error::InvalidInput(format!(
            "{lambda} is not non-increasing and convex on 1..={upto}"
        )));
    }
    Ok(())
}

/// Phragmén guarantee `(ℓ − 1)/2`.
pub fn phragmen_lower(ell: usize) -> GuaranteeReport {
    GuaranteeReport::closed(
        "phragmen",
        ell,
        0,
        BoundKind::Lower,
        (ell as f64 - 1.0) / 2.0,
    )
}

/// Exact value of the Phragmén lower-bound witness,
/// `(ℓ/2)·(2k − 2ℓ + 2)/(2k − 3ℓ)`.
pub fn phragmen_upper_exact(ell: usize, k: usize) -> Result<BigRational> {
    if ell == 0 || 2 * ell >= k || !k.is_multiple_of(ell) {
        return Err(Error::InvalidInput(format!(
            "the construction needs l < k/2 and l | k, got l={ell}, k={k}"
        )));
    }
    let (l, k) = (ell as i64, k as i64);
    Ok(BigRational::new(
        (l * (2 * k - 2 * l + 2)).into(),
        (2 * (2 * k - 3 * l)).into(),
    ))
}

/// Phragmén upper bound from the worst-case construction.
pub fn phragmen_upper(ell: usize, k: usize) -> Result<GuaranteeReport> {
    let exact = phragmen_upper_exact(ell, k)?;
    let mut r =
        GuaranteeReport::closed("phragmen", ell, k, BoundKind::Upper, Scalar::to_f64(&exact));
    r.notes.push(format!(
        "exact value {exact}; tends to l/2 = {} as k grows",
        ell as f64 / 2.0
    ));
    if ell == 1 && k == 10 {
        r.notes
            .push("evaluates to 10/17 ~ 0.588 here, not 0.625".into());
    }
    Ok(r)
}

/// Upper bound `1` on the degree of Phragmén's maximal rule, for every `ℓ`.
pub fn maxphragmen_upper(ell: usize) -> GuaranteeReport {
    GuaranteeReport::closed("max-phragmen", ell, 0, BoundKind::Upper, 1.0)
}

/// `max_{x ∈ [k]} x·λ(x + shift)`.
fn max_scaled(lambda: &LambdaWeights, k: usize, shift: f64) -> f64 {
    (1..=k)
        .map(|x| x as f64 * lambda.eval(x as f64 + shift))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Guarantee `g` of a convex λ-Thiele rule: the root of
/// `(k − g)·λ(1 + g) = ((k − ℓ)/ℓ)·max_{x ∈ [k]} x·λ(x)`.
pub fn thiele_guarantee(lambda: &LambdaWeights, ell: usize, k: usize) -> Result<GuaranteeReport> {
    check_ell_k(ell, k)?;
    check_convex(lambda, k + 1)?;
    let rhs = (k - ell) as f64 / ell as f64 * max_scaled(lambda, k, 0.0);
    let kf = k as f64;
    let f = |g: f64| (kf - g) * lambda.eval(1.0 + g) - rhs;
    let g = if ell == k {
        kf
    } else {
        let lo = lower_end(&f, 0.0, -1.0)?;
        bisect_decreasing(f, lo, kf)?
    };
    Ok(GuaranteeReport {
        rule: format!("thiele({lambda})"),
        ell,
        k,
        kind: BoundKind::Lower,
        value: g,
        residual: f(g).abs(),
        notes: Vec::new(),
    })
}

/// Upper bound on the degree of a convex λ-Thiele rule: the root of
/// `(k − g)·λ(g) = ((k − ℓ)/ℓ)·max_{x ∈ [k]} x·λ(x + 1)`.
pub fn thiele_upper(lambda: &LambdaWeights, ell: usize, k: usize) -> Result<GuaranteeReport> {
    check_ell_k(ell, k)?;
    check_convex(lambda, k + 1)?;
    let rhs = (k - ell) as f64 / ell as f64 * max_scaled(lambda, k, 1.0);
    let kf = k as f64;
    let f = |g: f64| (kf - g) * lambda.eval(g) - rhs;
    let g = if ell == k {
        kf
    } else {
        let lo = lower_end(&f, 1.0, 0.0)?;
        bisect_decreasing(f, lo, kf)?
    };
    Ok(GuaranteeReport {
        rule: format!("thiele({lambda})"),
        ell,
        k,
        kind: BoundKind::Upper,
        value: g,
        residual: f(g).abs(),
        notes: Vec::new(),
    })
}

/// Efficiency guarantee `α/(1 + α)` with `α·λ(1) = λ(1 + kα)`.
pub fn thiele_efficiency_lower(lambda: &LambdaWeights, k: usize) -> Result<EfficiencyReport> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    check_convex(lambda, k + 1)?;
    let l1 = lambda.eval(1.0);
    let kf = k as f64;
    let f = |a: f64| lambda.eval(1.0 + kf * a) - a * l1;
    let alpha = bisect_decreasing(f, 0.0, 1.0)?;
    let guarantee = alpha / (1.0 + alpha);
    debug_assert!(alpha <= 0.0 || guarantee > alpha - alpha * alpha);
    Ok(EfficiencyReport {
        lambda: lambda.label(),
        k,
        alpha,
        guarantee,
        kind: BoundKind::Lower,
        residual: f(alpha).abs(),
    })
}

/// Efficiency upper bound `2α − α²` with `α·λ(1) = λ(kα)`.
pub fn thiele_efficiency_upper(lambda: &LambdaWeights, k: usize) -> Result<EfficiencyReport> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    check_convex(lambda, k.max(2))?;
    let l1 = lambda.eval(1.0);
    let kf = k as f64;
    let f = |a: f64| lambda.eval(kf * a) - a * l1;
    let alpha = bisect_decreasing(f, 1.0 / kf, 1.0)?;
    Ok(EfficiencyReport {
        lambda: lambda.label(),
        k,
        alpha,
        guarantee: 2.0 * alpha - alpha * alpha,
        kind: BoundKind::Upper,
        residual: f(alpha).abs(),
    })
}

/// Sequential PAV degree bounds `(ℓ/h − 1, ℓ/h)` from `h = k·Δ(k)`.
pub fn seqpav_degree_from_h(ell: usize, k: usize, h: f64) -> (GuaranteeReport, GuaranteeReport) {
    let v = ell as f64 / h;
    (
        GuaranteeReport::closed("seq-pav", ell, k, BoundKind::Lower, v - 1.0),
        GuaranteeReport::closed("seq-pav", ell, k, BoundKind::Upper, v),
    )
}

/// Last-step Sequential PAV gain per unit weight.
///
/// Without `exhaustive` this follows the single run under `tb`. With it,
/// every tie branch is explored and the largest last-step gain is returned;
/// more than `budget` branches is an error.
pub fn seqpav_delta<S: Scalar>(
    p: &ApprovalProfile<S>,
    k: usize,
    tb: &TieBreak,
    exhaustive: bool,
    budget: u128,
) -> Result<S> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if !exhaustive {
        let (_, trace) = seq_pav(p, k, tb)?;
        return match &trace.steps[k - 1].detail {
            StepDetail::Gain(g) => Ok(g.clone()),
            _ => unreachable!("seq_pav records gains"),
        };
    }
    let n = p.require_voters()?;
    let mut leaves: u128 = 0;
    let mut counts = vec![0usize; p.groups().len()];
    let mut chosen = vec![false; p.num_candidates() + 1];
    if k > p.num_candidates() {
        return Err(Error::InvalidInput(
            "k exceeds the number of candidates".into(),
        ));
    }
    let best = branch(p, k, &mut counts, &mut chosen, &mut leaves, budget)?;
    Ok(best / n)
}

fn branch<S: Scalar>(
    p: &ApprovalProfile<S>,
    left: usize,
    counts: &mut Vec<usize>,
    chosen: &mut Vec<bool>,
    leaves: &mut u128,
    budget: u128,
) -> Result<S> {
    let m = p.num_candidates();
    let gains: Vec<(usize, S)> = (1..=m)
        .filter(|&c| !chosen[c])
        .map(|c| {
            let g = p
                .groups()
                .iter()
                .zip(counts.iter())
                .filter(|(g, _)| g.approvals.contains(&c))
                .fold(S::zero(), |acc, (g, &j)| {
                    acc + g.weight.clone() / S::from_usize(j + 1)
                });
            (c, g)
        })
        .collect();
    let best = gains
        .iter()
        .map(|(_, g)| g.clone())
        .fold(S::zero(), |a, g| if g > a { g } else { a });
    let tied: Vec<usize> = gains
        .iter()
        .filter(|(_, g)| g.ties(&best))
        .map(|(c, _)| *c)
        .collect();
    if left == 1 {
        *leaves += 1;
        if *leaves > budget {
            return Err(Error::BudgetExceeded {
                needed: *leaves,
                budget,
            });
        }
        return Ok(best);
    }
    let mut out = S::zero();
    for c in tied {
        chosen[c] = true;
        for (g, grp) in p.groups().iter().enumerate() {
            if grp.approvals.contains(&c) {
                counts[g] += 1;
            }
        }
        let v = branch(p, left - 1, counts, chosen, leaves, budget)?;
        if v > out {
            out = v;
        }
        for (g, grp) in p.groups().iter().enumerate() {
            if grp.approvals.contains(&c) {
                counts[g] -= 1;
            }
        }
        chosen[c] = false;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phragmen_closed_forms() {
        assert_eq!(phragmen_lower(3).value, 1.0);
        assert_eq!(
            phragmen_upper_exact(2, 10).unwrap(),
            BigRational::new(9.into(), 7.into())
        );
        assert_eq!(
            phragmen_upper_exact(1, 10).unwrap(),
            BigRational::new(10.into(), 17.into())
        );
        assert!(phragmen_upper(3, 10).is_err());
        assert!(phragmen_upper(5, 10).is_err());
    }

    #[test]
    fn pav_guarantee_closed_form() {
        let r = thiele_guarantee(&LambdaWeights::Pav, 3, 10).unwrap();
        assert!((r.value - 2.3).abs() < 1e-12);
        assert_eq!(
            thiele_guarantee(&LambdaWeights::Pav, 4, 4).unwrap().value,
            4.0
        );
    }

    #[test]
    fn rejects_non_convex() {
        let l = LambdaWeights::Custom(vec![
            BigRational::from_integer(4.into()),
            BigRational::from_integer(1.into()),
            BigRational::from_integer(1.into()),
            BigRational::new(1.into(), 2.into()),
        ]);
        assert!(thiele_guarantee(&l, 1, 3).is_err());
    }
}
