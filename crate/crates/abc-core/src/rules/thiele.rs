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

//! Thiele methods: exhaustive optimization and the sequential greedy rule.

use super::{ElectionTrace, LambdaWeights, StepDetail, TieBreak, TraceStep};
use crate::error::{Error, Result};
use crate::model::{ApprovalProfile, Committee};
use crate::scalar::Scalar;

/// Default cap on the number of committees an exhaustive rule enumerates.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Settings for rules that enumerate all committees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest number of committees that may be enumerated.
    pub budget: u128,
    /// Also return every optimal committee.
    pub exhaustive: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            budget: DEFAULT_BUDGET,
            exhaustive: false,
        }
    }
}

impl EnumOptions {
    /// Default budget with all optima collected.
    pub fn exhaustive() -> Self {
        EnumOptions {
            exhaustive: true,
            ..Default::default()
        }
    }
}

/// Result of an exhaustive Thiele optimization.
#[derive(Clone, Debug, PartialEq)]
pub struct ThieleOutcome<S> {
    /// The optimum selected by the tie-breaking policy.
    pub committee: Committee,
    /// Its score.
    pub score: S,
    /// Every optimal committee in lexicographic order, when requested.
    pub optima: Vec<Committee>,
}

/// Binomial coefficient `C(m, k)`, saturating at `u128::MAX`.
pub fn count_committees(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((m - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// λ-score of committee `w`: each voter with `j` approved members contributes
/// `λ(1) + ... + λ(j)`.
pub fn thiele_score<S: Scalar>(
    p: &ApprovalProfile<S>,
    lambda: &LambdaWeights,
    w: &Committee,
) -> Result<S> {
    let pref = lambda.prefix_sums::<S>(w.size())?;
    Ok(p.groups().iter().fold(S::zero(), |acc, g| {
        acc + g.weight.clone() * pref[w.overlap(&g.approvals)].clone()
    }))
}

fn check_size<S: Scalar>(p: &ApprovalProfile<S>, k: usize) -> Result<()> {
    if k > p.num_candidates() {
        return Err(Error::InvalidInput(format!(
            "committee size {k} exceeds the number of candidates {}",
            p.num_candidates()
        )));
    }
    Ok(())
}

/// Size-`k` committees with the highest λ-score, by exhaustive enumeration.
pub fn thiele_exact<S: Scalar>(
    p: &ApprovalProfile<S>,
    lambda: &LambdaWeights,
    k: usize,
    tb: &TieBreak,
    opts: &EnumOptions,
) -> Result<ThieleOutcome<S>> {
    check_size(p, k)?;
    lambda.validate()?;
    let needed = count_committees(p.num_candidates(), k);
    if needed > opts.budget {
        return Err(Error::BudgetExceeded {
            needed,
            budget: opts.budget,
        });
    }
    let marginal: Vec<S> = (1..=k.max(1))
        .map(|j| lambda.value::<S>(j))
        .collect::<Result<_>>()?;
    let m = p.num_candidates();
    let approvers: Vec<Vec<usize>> = (1..=m).map(|c| p.approver_groups(c)).collect();

    let mut search = Search {
        p,
        marginal: &marginal,
        approvers: &approvers,
        tb,
        exhaustive: opts.exhaustive,
        counts: vec![0; p.groups().len()],
        chosen: Vec::with_capacity(k),
        best: None,
        optima: Vec::new(),
    };
    search.run(1, k, m, S::zero());
    let (score, members) = search.best.expect("at least one committee");
    let mut optima = search.optima;
    optima.sort();
    Ok(ThieleOutcome {
        committee: Committee::new(members),
        score,
        optima: optima.into_iter().map(Committee::new).collect(),
    })
}

struct Search<'a, S> {
    p: &'a ApprovalProfile<S>,
    marginal: &'a [S],
    approvers: &'a [Vec<usize>],
    tb: &'a TieBreak,
    exhaustive: bool,
    counts: Vec<usize>,
    chosen: Vec<usize>,
    best: Option<(S, Vec<usize>)>,
    optima: Vec<Vec<usize>>,
}

impl<S: Scalar> Search<'_, S> {
    fn run(&mut self, from: usize, left: usize, m: usize, score: S) {
        if left == 0 {
            self.offer(score);
            return;
        }
        for c in from..=m + 1 - left {
            let mut next = score.clone();
            for &g in &self.approvers[c - 1] {
                let j = self.counts[g];
                next = next + self.p.groups()[g].weight.clone() * self.marginal[j].clone();
                self.counts[g] = j + 1;
            }
            self.chosen.push(c);
            self.run(c + 1, left - 1, m, next);
            self.chosen.pop();
            for &g in &self.approvers[c - 1] {
                self.counts[g] -= 1;
            }
        }
    }

    fn offer(&mut self, score: S) {
        match &self.best {
            None => {
                self.best = Some((score, self.chosen.clone()));
                if self.exhaustive {
                    self.optima.push(self.chosen.clone());
                }
            }
            Some((best, members)) => {
                if score.beats(best) {
                    self.best = Some((score, self.chosen.clone()));
                    self.optima.clear();
                    if self.exhaustive {
                        self.optima.push(self.chosen.clone());
                    }
                } else if score.ties(best) {
                    if self.exhaustive {
                        self.optima.push(self.chosen.clone());
                    }
                    if self.tb.prefers_committee(&self.chosen, members) {
                        self.best = Some((score, self.chosen.clone()));
                    }
                }
            }
        }
    }
}

/// Proportional Approval Voting: the Thiele method with `λ(i) = 1/i`.
pub fn pav<S: Scalar>(p: &ApprovalProfile<S>, k: usize, tb: &TieBreak) -> Result<Committee> {
    thiele_exact(p, &LambdaWeights::Pav, k, tb, &EnumOptions::default()).map(|o| o.committee)
}

/// Sequential λ-Thiele: `k` greedy steps, each adding the candidate with the
/// largest score gain. The trace records each gain divided by `n`.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn seq_thiele<S: Scalar>(
    p: &ApprovalProfile<S>,
    lambda: &LambdaWeights,
    k: usize,
    tb: &TieBreak,
) -> Result<(Committee, ElectionTrace<S>)> {
    check_size(p, k)?;
    lambda.validate()?;
    lambda.require(k)?;
    let n = p.require_voters()?;
    let m = p.num_candidates();
    let approvers: Vec<Vec<usize>> = (1..=m).map(|c| p.approver_groups(c)).collect();
    let mut counts = vec![0usize; p.groups().len()];
    let mut elected = vec![false; m + 1];
    let mut steps = Vec::with_capacity(k);
    for _ in 0..k {
        let gains: Vec<(usize, S)> = (1..=m)
            .filter(|&c| !elected[c])
            .map(|c| {
                let gain = approvers[c - 1].iter().try_fold(S::zero(), |acc, &g| {
                    lambda
                        .value::<S>(counts[g] + 1)
                        .map(|v| acc + p.groups()[g].weight.clone() * v)
                })?;
                Ok((c, gain))
            })
            .collect::<Result<_>>()?;
        let best = gains
            .iter()
            .map(|(_, g)| g)
            .fold(None::<&S>, |acc, g| match acc {
                Some(a) if !(g > a) => Some(a),
                _ => Some(g),
            })
            .expect("k <= m leaves a candidate")
            .clone();
        let tie_set: Vec<usize> = gains
            .iter()
            .filter(|(_, g)| g.ties(&best))
            .map(|(c, _)| *c)
            .collect();
        let chosen = tb.pick(&tie_set);
        elected[chosen] = true;
        for &g in &approvers[chosen - 1] {
            counts[g] += 1;
        }
        let gain = gains
            .iter()
            .find(|(c, _)| *c == chosen)
            .map(|(_, g)| g.clone())
            .expect("chosen is a candidate");
        steps.push(TraceStep {
            chosen,
            tie_set,
            detail: StepDetail::Gain(gain / n.clone()),
        });
    }
    let trace = ElectionTrace { steps };
    Ok((trace.committee(), trace))
}

/// Sequential PAV.
pub fn seq_pav<S: Scalar>(
    p: &ApprovalProfile<S>,
    k: usize,
    tb: &TieBreak,
) -> Result<(Committee, ElectionTrace<S>)> {
    seq_thiele(p, &LambdaWeights::Pav, k, tb)
}
