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

//! Per-step records of sequential rules.

use crate::model::Committee;
use crate::scalar::Scalar;
use std::fmt::Write;

/// Credit balances of the money-based Phragmén process at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct CreditState<S> {
    /// Elapsed time.
    pub time: S,
    /// Credit held by each single voter of group `g`, indexed like the
    /// profile's groups.
    pub credits: Vec<S>,
}

/// What a sequential rule recorded at one step.
#[derive(Clone, Debug, PartialEq)]
pub enum StepDetail<S> {
    /// Marginal score gain of the chosen candidate divided by `n`.
    Gain(S),
    /// A purchase in the money-based Phragmén process.
    Purchase {
        /// Total credits paid by each group.
        payments: Vec<S>,
        /// Balances right after the purchase.
        state: CreditState<S>,
    },
    /// A step of the load-balancing Phragmén process (`n` units of load per
    /// candidate).
    Load {
        /// Largest per-voter load after the step.
        max_load: S,
        /// Per-voter load of each group after the step.
        loads: Vec<S>,
        /// Per-voter load added to each group in this step.
        deltas: Vec<S>,
    },
}

/// One step of a sequential rule.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep<S> {
    /// Candidate added in this step.
    pub chosen: usize,
    /// All candidates that were equally good, in increasing order.
    pub tie_set: Vec<usize>,
    /// Rule-specific data.
    pub detail: StepDetail<S>,
}

/// Ordered per-step record of a sequential rule.
#[derive(Clone, Debug, PartialEq)]
pub struct ElectionTrace<S> {
    /// Steps in selection order.
    pub steps: Vec<TraceStep<S>>,
}

impl<S: Scalar> ElectionTrace<S> {
    /// Candidates in selection order.
    pub fn order(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.chosen).collect()
    }

    /// The elected committee.
    pub fn committee(&self) -> Committee {
        Committee::new(self.order())
    }

    /// Per-step marginal gains, when the rule records them.
    pub fn gains(&self) -> Vec<S> {
        self.steps
            .iter()
            .filter_map(|s| match &s.detail {
                StepDetail::Gain(g) => Some(g.clone()),
                _ => None,
            })
            .collect()
    }

    /// Line-oriented log: `step chosen value tie=a,b,...` per step. The
    /// value is the gain, the purchase time or the maximal load.
    pub fn to_log(&self) -> String {
        let mut out = String::new();
        for (j, s) in self.steps.iter().enumerate() {
            let value = match &s.detail {
                StepDetail::Gain(g) => g.to_string(),
                StepDetail::Purchase { state, .. } => state.time.to_string(),
                StepDetail::Load { max_load, .. } => max_load.to_string(),
            };
            let ties: Vec<String> = s.tie_set.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(
                out,
                "{} {} {} tie={}",
                j + 1,
                s.chosen,
                value,
                ties.join(",")
            );
        }
        out
    }
}
