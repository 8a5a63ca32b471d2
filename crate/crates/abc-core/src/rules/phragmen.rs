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

//! Phragmén's sequential and maximal rules.
//!
//! The sequential rule is implemented twice. [`seq_phragmen_credit`] runs
//! the continuous money process: every voter earns one credit per time unit
//! and a candidate costs `n` credits, payable only by its approvers.
//! [`seq_phragmen_load`] distributes `n` units of load per elected candidate
//! over its approvers so that the maximal load is as small as possible.
//! The two agree step by step, and a voter's credit equals the current
//! maximal load minus its own load.

use super::CreditState;
use super::{count_committees, ElectionTrace, EnumOptions, StepDetail, TieBreak, TraceStep};
use crate::error::{Error, Result};
use crate::model::{ApprovalProfile, Committee};
use crate::scalar::Scalar;

fn check_size<S: Scalar>(p: &ApprovalProfile<S>, k: usize) -> Result<()> {
    if k > p.num_candidates() {
        return Err(Error::InvalidInput(format!(
            "committee size {k} exceeds the number of candidates {}",
            p.num_candidates()
        )));
    }
    Ok(())
}

fn group_weight<S: Scalar>(p: &ApprovalProfile<S>, groups: &[usize]) -> S {
    groups
        .iter()
        .fold(S::zero(), |acc, &g| acc + p.groups()[g].weight.clone())
}

/// Minimum of `values` over the candidates with a value, together with all
/// candidates attaining it.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn argmin<S: Scalar>(values: &[(usize, S)]) -> Option<(S, Vec<usize>)> {
    let best = values
        .iter()
        .map(|(_, v)| v)
        .fold(None::<&S>, |acc, v| match acc {
            Some(a) if !(v < a) => Some(a),
            _ => Some(v),
        })?;
    let tied = values
        .iter()
        .filter(|(_, v)| v.ties(best))
        .map(|(c, _)| *c)
        .collect();
    Some((best.clone(), tied))
}

/// Phragmén's sequential rule as a continuous credit process.
///
/// At each step the earliest-electable candidate is bought and its
/// approvers' balances drop to zero. Candidates electable at the same
/// instant are bought one at a time in tie-break order.
pub fn seq_phragmen_credit<S: Scalar>(
    p: &ApprovalProfile<S>,
    k: usize,
    tb: &TieBreak,
) -> Result<(Committee, ElectionTrace<S>)> {
    check_size(p, k)?;
    let n = p.require_voters()?;
    let m = p.num_candidates();
    let approvers: Vec<Vec<usize>> = (1..=m).map(|c| p.approver_groups(c)).collect();
    let support: Vec<S> = approvers.iter().map(|a| group_weight(p, a)).collect();
    let mut credits = vec![S::zero(); p.groups().len()];
    let mut now = S::zero();
    let mut elected = vec![false; m + 1];
    let mut steps = Vec::with_capacity(k);
    for step in 1..=k {
        let times: Vec<(usize, S)> = (1..=m)
            .filter(|&c| !elected[c] && support[c - 1] > S::zero())
            .map(|c| {
                let held = approvers[c - 1].iter().fold(S::zero(), |acc, &g| {
                    acc + p.groups()[g].weight.clone() * credits[g].clone()
                });
                let missing = n.clone() - held;
                let wait = if missing > S::zero() {
                    missing / support[c - 1].clone()
                } else {
                    S::zero()
                };
                (c, now.clone() + wait)
            })
            .collect();
        let (time, tie_set) = argmin(&times).ok_or(Error::Stall { step })?;
        let chosen = tb.pick(&tie_set);
        let dt = time.clone() - now.clone();
        for c in credits.iter_mut() {
            *c = c.clone() + dt.clone();
        }
        let mut payments = vec![S::zero(); p.groups().len()];
        for &g in &approvers[chosen - 1] {
            payments[g] = p.groups()[g].weight.clone() * credits[g].clone();
            credits[g] = S::zero();
        }
        now = time;
        elected[chosen] = true;
        steps.push(TraceStep {
            chosen,
            tie_set,
            detail: StepDetail::Purchase {
                payments,
                state: CreditState {
                    time: now.clone(),
                    credits: credits.clone(),
                },
            },
        });
    }
    let trace = ElectionTrace { steps };
    Ok((trace.committee(), trace))
}

/// Level `s` at which spreading `amount` units over the given groups by
/// raising the lowest per-voter loads first ends.
fn water_level<S: Scalar>(p: &ApprovalProfile<S>, loads: &[S], groups: &[usize], amount: &S) -> S {
    let mut order: Vec<usize> = groups.to_vec();
    order.sort_by(|&a, &b| loads[a].partial_cmp(&loads[b]).expect("comparable loads"));
    let mut weight = S::zero();
    let mut mass = S::zero();
    for (pos, &g) in order.iter().enumerate() {
        let w = p.groups()[g].weight.clone();
        weight = weight + w.clone();
        mass = mass + w * loads[g].clone();
        let level = (amount.clone() + mass.clone()) / weight.clone();
        match order.get(pos + 1) {
            Some(&next) if level > loads[next] => continue,
            _ => return level,
        }
    }
    unreachable!("called with at least one approver group")
}

/// Phragmén's sequential rule as load balancing with `n` units of load per
/// candidate.
pub fn seq_phragmen_load<S: Scalar>(
    p: &ApprovalProfile<S>,
    k: usize,
    tb: &TieBreak,
) -> Result<(Committee, ElectionTrace<S>)> {
    check_size(p, k)?;
    let n = p.require_voters()?;
    let m = p.num_candidates();
    let approvers: Vec<Vec<usize>> = (1..=m).map(|c| p.approver_groups(c)).collect();
    let mut loads = vec![S::zero(); p.groups().len()];
    let mut elected = vec![false; m + 1];
    let mut steps = Vec::with_capacity(k);
    for step in 1..=k {
        let levels: Vec<(usize, S)> = (1..=m)
            .filter(|&c| !elected[c] && group_weight(p, &approvers[c - 1]) > S::zero())
            .map(|c| (c, water_level(p, &loads, &approvers[c - 1], &n)))
            .collect();
        let (level, tie_set) = argmin(&levels).ok_or(Error::Stall { step })?;
        let chosen = tb.pick(&tie_set);
        let mut deltas = vec![S::zero(); p.groups().len()];
        for &g in &approvers[chosen - 1] {
            if level > loads[g] {
                deltas[g] = level.clone() - loads[g].clone();
                loads[g] = level.clone();
            }
        }
        let max_load = loads
            .iter()
            .fold(S::zero(), |acc, l| if *l > acc { l.clone() } else { acc });
        elected[chosen] = true;
        steps.push(TraceStep {
            chosen,
            tie_set,
            detail: StepDetail::Load {
                max_load,
                loads: loads.clone(),
                deltas,
            },
        });
    }
    let trace = ElectionTrace { steps };
    Ok((trace.committee(), trace))
}

/// Optimal maximal per-voter load of committee `w`, with one unit of load
/// per member.
///
/// Equals the largest ratio `|X| / w(N(X))` over non-empty `X ⊆ w`, where
/// `N(X)` are the voters approving some member of `X`. Returns `None` when
/// some member has no approver.
pub fn min_max_load<S: Scalar>(p: &ApprovalProfile<S>, w: &Committee) -> Option<S> {
    let members: Vec<usize> = w.iter().collect();
    assert!(members.len() < 63, "committee too large for subset scan");
    let covers: Vec<u128> = members
        .iter()
        .map(|&c| {
            p.approver_groups(c)
                .into_iter()
                .fold(0u128, |acc, g| acc | (1u128 << (g % 128)))
        })
        .collect();
    let wide = p.groups().len() > 128;
    let mut best = S::zero();
    for mask in 1u64..(1u64 << members.len()) {
        let weight = if wide {
            let mut groups: Vec<usize> = (0..members.len())
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| p.approver_groups(members[i]))
                .collect();
            groups.sort_unstable();
            groups.dedup();
            group_weight(p, &groups)
        } else {
            let union = (0..members.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(0u128, |acc, i| acc | covers[i]);
            (0..p.groups().len())
                .filter(|g| union >> g & 1 == 1)
                .fold(S::zero(), |acc, g| acc + p.groups()[g].weight.clone())
        };
        if weight <= S::zero() {
            return None;
        }
        let ratio = S::from_usize(mask.count_ones() as usize) / weight;
        if ratio > best {
            best = ratio;
        }
    }
    Some(best)
}

/// Result of Phragmén's maximal rule.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxPhragmenOutcome<S> {
    /// Optimal maximal per-voter load (one unit per member).
    pub value: S,
    /// Every committee attaining it, in lexicographic order.
    pub optima: Vec<Committee>,
}

/// Phragmén's maximal rule: the size-`k` committees minimizing the optimal
/// maximal load, by exhaustive enumeration. Committees containing a
/// candidate without approvers are never optimal.
pub fn max_phragmen<S: Scalar>(
    p: &ApprovalProfile<S>,
    k: usize,
    opts: &EnumOptions,
) -> Result<MaxPhragmenOutcome<S>> {
    check_size(p, k)?;
    if k == 0 {
        return Ok(MaxPhragmenOutcome {
            value: S::zero(),
            optima: vec![Committee::default()],
        });
    }
    let m = p.num_candidates();
    let needed = count_committees(m, k);
    if needed > opts.budget {
        return Err(Error::BudgetExceeded {
            needed,
            budget: opts.budget,
        });
    }
    let mut best: Option<S> = None;
    let mut optima: Vec<Committee> = Vec::new();
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        let w = Committee::new(idx.iter().copied());
        if let Some(v) = min_max_load(p, &w) {
            match &best {
                Some(b) if v.ties(b) => optima.push(w),
                Some(b) if v > *b => {}
                _ => {
                    best = Some(v);
                    optima = vec![w];
                }
            }
        }
        // Next k-subset in lexicographic order.
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    let value = best.ok_or(Error::Stall { step: 1 })?;
    Ok(MaxPhragmenOutcome { value, optima })
}
