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

//! Builders for the Sequential PAV bound LPs and their post-processing.

use super::{colgen, solve_lp, LpProblem, LpSolution, LpStatus, Relation};
use crate::bounds::{seqpav_degree_from_h, GuaranteeReport};
use crate::error::{Error, Result};
use crate::model::{ApprovalProfile, Group};
use crate::scalar::{rationalize, Scalar};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Largest `k` accepted by [`build_exact_lp`].
pub const EXACT_LIMIT: usize = 14;
/// Largest `k` accepted by [`build_relaxed_lp`] and the relaxed method.
pub const RELAXED_LIMIT: usize = 400;
/// Largest `k` accepted by [`build_abstract_f_lp`].
pub const ABSTRACT_F_LIMIT: usize = 12;

fn set_name(prefix: &str, mask: usize, k: usize) -> String {
    if mask == 0 {
        return format!("{prefix}_empty");
    }
    let mut s = String::from(prefix);
    for c in 0..k {
        if mask >> c & 1 == 1 {
            s.push('_');
            s.push_str(&(c + 1).to_string());
        }
    }
    s
}

fn prefix(i: usize) -> usize {
    (1usize << i) - 1
}

fn ones(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Exact LP for `h(k)`: one variable `x_T` per non-empty approval set
/// `T ⊆ [k]` (named `x_1_3` for `T = {1, 3}`), maximizing the normalized
/// last-step gain subject to candidates being chosen in the order `1..k`.
///
/// With `include_empty` a variable `x_empty` for voters approving nothing is
/// added as well.
pub fn build_exact_lp<S: Scalar>(k: usize, include_empty: bool) -> Result<LpProblem<S>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if k > EXACT_LIMIT {
        return Err(Error::SizeLimit {
            what: "exact LP",
            k,
            limit: EXACT_LIMIT,
        });
    }
    let mut lp = LpProblem::new("exact", k);
    let first = if include_empty { 0 } else { 1 };
    let masks: Vec<usize> = (first..(1usize << k)).collect();
    for &t in &masks {
        let idx = lp.add_var(set_name("x", t, k));
        if t >> (k - 1) & 1 == 1 {
            lp.objective
                .push((idx, S::from_ratio(k as i64, ones(t) as i64)));
        }
    }
    lp.add_constraint(
        "a",
        (0..masks.len()).map(|j| (j, S::one())).collect(),
        Relation::Eq,
        S::one(),
    );
    for i in 1..=k {
        for j in (i + 1)..=k {
            let mut terms = Vec::new();
            for (idx, &t) in masks.iter().enumerate() {
                if t >> (i - 1) & 1 == 1 {
                    terms.push((idx, S::from_ratio(1, ones(t & prefix(i)) as i64)));
                }
                if t >> (j - 1) & 1 == 1 {
                    let base = prefix(i - 1) | 1 << (j - 1);
                    terms.push((idx, -S::from_ratio(1, ones(t & base) as i64)));
                }
            }
            lp.add_constraint(format!("b_{i}_{j}"), terms, Relation::Ge, S::zero());
        }
    }
    Ok(lp)
}

/// Relaxed flow LP for an upper bound on `h(k)`, with variables `a_i`,
/// `b_i_j_p`, `c_i_j_p` and `d_j`.
///
/// `b_i_j_p` exists for `i ∈ [k]`, `j ∈ [k]₀` and `p ≤ min(i, j)`;
/// `c_i_j_p` for `i, j, p ∈ [k]` with `p ≤ min(i, j)`. Terms whose indices
/// fall outside these ranges are omitted.
pub fn build_relaxed_lp<S: Scalar>(k: usize) -> Result<LpProblem<S>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if k > RELAXED_LIMIT {
        return Err(Error::SizeLimit {
            what: "relaxed LP",
            k,
            limit: RELAXED_LIMIT,
        });
    }
    let mut lp = LpProblem::new("relaxed", k);
    let mut idx: HashMap<(char, usize, usize, usize), usize> = HashMap::new();
    for i in 1..=k {
        idx.insert(('a', i, 0, 0), lp.add_var(format!("a_{i}")));
    }
    for i in 1..=k {
        for j in 0..=k {
            for p in 0..=i.min(j) {
                idx.insert(('b', i, j, p), lp.add_var(format!("b_{i}_{j}_{p}")));
            }
        }
    }
    for i in 1..=k {
        for j in 1..=k {
            for p in 1..=i.min(j) {
                idx.insert(('c', i, j, p), lp.add_var(format!("c_{i}_{j}_{p}")));
            }
        }
    }
    for j in 1..=k {
        idx.insert(('d', j, 0, 0), lp.add_var(format!("d_{j}")));
    }
    let a = |i| idx[&('a', i, 0, 0)];
    let b = |i, j, p| idx.get(&('b', i, j, p)).copied();
    let c = |i, j, p| idx.get(&('c', i, j, p)).copied();
    let d = |j| idx[&('d', j, 0, 0)];
    let one = S::one;
    let terms = |list: Vec<(Option<usize>, S)>| -> Vec<(usize, S)> {
        list.into_iter()
            .filter_map(|(v, s)| v.map(|v| (v, s)))
            .collect()
    };

    lp.objective.push((d(k), S::from_usize(k)));
    lp.add_constraint(
        "a2",
        (1..=k).map(|i| (a(i), one())).collect(),
        Relation::Eq,
        one(),
    );
    for i in 1..=k {
        lp.add_constraint(
            format!("b1_start_{i}"),
            terms(vec![(b(i, 0, 0), one()), (Some(a(i)), -one())]),
            Relation::Eq,
            S::zero(),
        );
        lp.add_constraint(
            format!("b1_end_{i}"),
            terms(vec![(b(i, k, i), one()), (Some(a(i)), -one())]),
            Relation::Eq,
            S::zero(),
        );
        for p in 0..i {
            lp.add_constraint(
                format!("b2_{i}_{p}"),
                terms(vec![(b(i, k, p), one())]),
                Relation::Eq,
                S::zero(),
            );
        }
    }
    for i in 1..=k {
        for j in 1..=k {
            for p in 1..=i.min(j) {
                lp.add_constraint(
                    format!("c2_{i}_{j}_{p}"),
                    terms(vec![(c(i, j, p), one()), (b(i, j - 1, p - 1), -one())]),
                    Relation::Le,
                    S::zero(),
                );
            }
        }
    }
    for i in 1..=k {
        for j in 1..=k {
            if j <= i {
                lp.add_constraint(
                    format!("d1_{i}_{j}"),
                    terms(vec![(b(i, j, j), one()), (c(i, j, j), -one())]),
                    Relation::Eq,
                    S::zero(),
                );
            }
            if i <= j {
                lp.add_constraint(
                    format!("d2_{i}_{j}"),
                    terms(vec![
                        (b(i, j, i), one()),
                        (b(i, j - 1, i), -one()),
                        (c(i, j, i), -one()),
                    ]),
                    Relation::Eq,
                    S::zero(),
                );
            }
            lp.add_constraint(
                format!("d3_{i}_{j}"),
                terms(vec![
                    (b(i, j, 0), one()),
                    (b(i, j - 1, 0), -one()),
                    (c(i, j, 1), one()),
                ]),
                Relation::Eq,
                S::zero(),
            );
            for p in 1..=(i - 1).min(j - 1) {
                lp.add_constraint(
                    format!("d4_{i}_{j}_{p}"),
                    terms(vec![
                        (b(i, j, p), one()),
                        (b(i, j - 1, p), -one()),
                        (c(i, j, p + 1), one()),
                        (c(i, j, p), -one()),
                    ]),
                    Relation::Eq,
                    S::zero(),
                );
            }
        }
    }
    for j in 1..=k {
        let mut e1 = vec![(Some(d(j)), one())];
        for i in 1..=k {
            for p in 1..=i.min(j) {
                e1.push((c(i, j, p), -S::from_ratio(1, p as i64)));
            }
        }
        lp.add_constraint(format!("e1_{j}"), terms(e1), Relation::Eq, S::zero());
        let mut e2 = vec![(Some(d(j)), one())];
        let steps_left = (k - j + 1) as i64;
        for i in 1..=k {
            for p in 0..=i.min(j - 1) {
                let coef = S::from_ratio((i - p) as i64, (p as i64 + 1) * steps_left);
                e2.push((b(i, j - 1, p), -coef));
            }
        }
        lp.add_constraint(format!("e2_{j}"), terms(e2), Relation::Ge, S::zero());
    }
    Ok(lp)
}

/// LP over an abstract set function `f` on the subsets of `[k]`, with one
/// variable `f_S` per subset.
///
/// Constraints: `f(∅) = 0`, monotonicity, the marginal-contribution cap
/// `Σ_{c ∈ W} (f(W) − f(W∖{c})) <= 1`, greedy dominance
/// `f([i−1] ∪ {j}) <= f([i])` for `i < j`, and with `submodular` the local
/// exchange inequalities `f(S+a) + f(S+b) >= f(S+a+b) + f(S)`. The objective
/// is `k·(f([k]) − f([k−1]))`.
///
/// Under submodularity only the top monotonicity rows `f([k]∖{c}) <= f([k])`
/// are emitted; the exchange inequalities imply the rest.
pub fn build_abstract_f_lp<S: Scalar>(k: usize, submodular: bool) -> Result<LpProblem<S>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if k > ABSTRACT_F_LIMIT {
        return Err(Error::SizeLimit {
            what: "abstract-f LP",
            k,
            limit: ABSTRACT_F_LIMIT,
        });
    }
    let tag = if submodular {
        "abstract-f-submodular"
    } else {
        "abstract-f"
    };
    let mut lp = LpProblem::new(tag, k);
    let n = 1usize << k;
    for s in 0..n {
        lp.add_var(set_name("f", s, k));
    }
    let full = n - 1;
    let one = S::one;
    lp.objective.push((full, S::from_usize(k)));
    lp.objective.push((prefix(k - 1), -S::from_usize(k)));
    lp.add_constraint("zero", vec![(0, one())], Relation::Eq, S::zero());
    for w in 1..n {
        if submodular && w != full {
            continue;
        }
        for c in 0..k {
            if w >> c & 1 == 1 {
                lp.add_constraint(
                    format!("mono_{w}_{}", c + 1),
                    vec![(w, one()), (w ^ 1 << c, -one())],
                    Relation::Ge,
                    S::zero(),
                );
            }
        }
    }
    for w in 1..n {
        let mut terms = vec![(w, S::from_usize(ones(w)))];
        for c in 0..k {
            if w >> c & 1 == 1 {
                terms.push((w ^ 1 << c, -one()));
            }
        }
        lp.add_constraint(format!("marg_{w}"), terms, Relation::Le, one());
    }
    for i in 1..=k {
        for j in (i + 1)..=k {
            lp.add_constraint(
                format!("greedy_{i}_{j}"),
                vec![(prefix(i - 1) | 1 << (j - 1), one()), (prefix(i), -one())],
                Relation::Le,
                S::zero(),
            );
        }
    }
    if submodular {
        for s in 0..n {
            for a in 0..k {
                if s >> a & 1 == 1 {
                    continue;
                }
                for b in (a + 1)..k {
                    if s >> b & 1 == 1 {
                        continue;
                    }
                    lp.add_constraint(
                        format!("sub_{s}_{}_{}", a + 1, b + 1),
                        vec![
                            (s | 1 << a, one()),
                            (s | 1 << b, one()),
                            (s | 1 << a | 1 << b, -one()),
                            (s, -one()),
                        ],
                        Relation::Ge,
                        S::zero(),
                    );
                }
            }
        }
    }
    Ok(lp)
}

/// How [`h_seqpav`] computes `h(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HMethod {
    /// The exact LP (exponential in `k`).
    Exact,
    /// The relaxed LP, solved in path form.
    Relaxed,
}

/// `h(k)` computed by one of the LPs.
#[derive(Clone, Debug, PartialEq)]
pub struct HReport {
    /// Committee size.
    pub k: usize,
    /// Method used.
    pub method: HMethod,
    /// LP optimum.
    pub h: f64,
    /// Coefficient `1/h` of `ℓ` in the degree bounds.
    pub coefficient: f64,
}

impl HReport {
    /// Degree bounds `(ℓ/h − 1, ℓ/h)` for group size `ell`.
    pub fn degree(&self, ell: usize) -> (GuaranteeReport, GuaranteeReport) {
        seqpav_degree_from_h(ell, self.k, self.h)
    }
}

/// Computes `h(k)` and the coefficient `1/h`.
pub fn h_seqpav(k: usize, method: HMethod) -> Result<HReport> {
    let h = match method {
        HMethod::Exact => {
            let lp = build_exact_lp::<f64>(k, false)?;
            let sol = solve_lp(&lp)?;
            if sol.status != LpStatus::Optimal {
                return Err(Error::Solver(format!("exact LP returned {:?}", sol.status)));
            }
            sol.objective
        }
        HMethod::Relaxed => {
            if k > RELAXED_LIMIT {
                return Err(Error::SizeLimit {
                    what: "relaxed LP",
                    k,
                    limit: RELAXED_LIMIT,
                });
            }
            colgen::solve_relaxed_paths(k)?.h
        }
    };
    Ok(HReport {
        k,
        method,
        h,
        coefficient: 1.0 / h,
    })
}

/// Converts an optimal exact-LP solution into an integer-weight profile
/// over candidates `1..=k`.
///
/// Each `x_T` is rounded to the nearest fraction with denominator at most
/// `10^6`, the weights are renormalized to sum to one, and constraint (b)
/// is re-checked exactly. If rounding breaks it and `k <= 8`, the LP is
/// re-solved in exact arithmetic instead.
pub fn lp_to_profile<S: Scalar>(
    prob: &LpProblem<S>,
    sol: &LpSolution<S>,
) -> Result<ApprovalProfile<BigRational>> {
    if prob.tag != "exact" {
        return Err(Error::InvalidInput(format!(
            "expected an exact LP, got `{}`",
            prob.tag
        )));
    }
    if sol.status != LpStatus::Optimal || sol.values.len() != prob.variables.len() {
        return Err(Error::InvalidInput(
            "expected an optimal solution of this LP".into(),
        ));
    }
    let rounded: Vec<BigRational> = sol
        .values
        .iter()
        .map(|v| match v.to_rational() {
            Some(r) if S::EXACT => r,
            _ => rationalize(v.to_f64().max(0.0), 1_000_000).unwrap_or_else(BigRational::zero),
        })
        .collect();
    let exact_prob: LpProblem<BigRational> = prob.convert();
    let weights = match normalized_if_feasible(&exact_prob, rounded) {
        Some(w) => w,
        None if prob.k <= 8 => {
            let exact = super::simplex::solve_dense(&exact_prob)?;
            normalized_if_feasible(&exact_prob, exact.values).ok_or_else(|| {
                Error::Solver("exact re-solve did not give a feasible point".into())
            })?
        }
        None => {
            return Err(Error::Solver(
                "rationalized solution violates the ordering constraints".into(),
            ))
        }
    };
    let k = prob.k;
    let lcm = weights
        .iter()
        .filter(|w| !w.is_zero())
        .fold(num_bigint::BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let scale = BigRational::from_integer(lcm);
    let mut groups = Vec::new();
    for (name, w) in prob.variables.iter().zip(&weights) {
        if w.is_zero() {
            continue;
        }
        let members: Vec<usize> = name
            .split('_')
            .skip(1)
            .filter_map(|t| t.parse().ok())
            .collect();
        groups.push(Group::new(w.clone() * scale.clone(), members));
    }
    ApprovalProfile::new(k, groups)
}

fn normalized_if_feasible(
    prob: &LpProblem<BigRational>,
    values: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let total = values.iter().fold(BigRational::zero(), |a, v| a + v);
    if total.is_zero() {
        return None;
    }
    let values: Vec<BigRational> = values.into_iter().map(|v| v / total.clone()).collect();
    let ok = prob.constraints.iter().all(|c| {
        let lhs = c
            .terms
            .iter()
            .fold(BigRational::zero(), |a, (j, v)| a + v * &values[*j]);
        match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Ge => lhs >= c.rhs,
            Relation::Eq => lhs == c.rhs,
        }
    });
    ok.then_some(values)
}
