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

//! Committee election rules.
//!
//! * Thiele methods: exhaustive optimum ([`thiele_exact`], [`pav`]) and the
//!   greedy sequential variant ([`seq_thiele`], [`seq_pav`]).
//! * Phragmén's sequential rule, once as a continuous credit process
//!   ([`seq_phragmen_credit`]) and once as load balancing
//!   ([`seq_phragmen_load`]).
//! * Phragmén's maximal rule ([`max_phragmen`]).
//!
//! All weights are per-group totals. A group of weight `w` behaves exactly
//! like `w` unit voters.

mod lambda;
mod phragmen;
mod thiele;
mod trace;

pub use lambda::LambdaWeights;
pub use phragmen::{
    max_phragmen, min_max_load, seq_phragmen_credit, seq_phragmen_load, MaxPhragmenOutcome,
};
pub use thiele::{
    count_committees, pav, seq_pav, seq_thiele, thiele_exact, thiele_score, EnumOptions,
    ThieleOutcome, DEFAULT_BUDGET,
};
pub use trace::{CreditState, ElectionTrace, StepDetail, TraceStep};

use crate::model::Committee;

/// How a rule resolves ties between equally good candidates or committees.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Prefer the smallest candidate index, or the lexicographically smallest
    /// committee.
    #[default]
    LexMin,
    /// Prefer the largest candidate index, or the lexicographically largest
    /// committee.
    LexMax,
    /// Prefer members of the target committee, then the smallest index. For
    /// whole committees, prefer the largest overlap with the target.
    Adversarial(Committee),
}

impl TieBreak {
    /// Picks one candidate from a non-empty, increasing list of tied
    /// candidates.
    pub fn pick(&self, tied: &[usize]) -> usize {
        match self {
            TieBreak::LexMin => tied[0],
            TieBreak::LexMax => tied[tied.len() - 1],
            TieBreak::Adversarial(target) => tied
                .iter()
                .copied()
                .find(|&c| target.contains(c))
                .unwrap_or(tied[0]),
        }
    }

    /// Whether committee `a` (sorted members) is preferred over `b`.
    pub(crate) fn prefers_committee(&self, a: &[usize], b: &[usize]) -> bool {
        match self {
            TieBreak::LexMin => a < b,
            TieBreak::LexMax => a > b,
            TieBreak::Adversarial(target) => {
                let oa = a.iter().filter(|&&c| target.contains(c)).count();
                let ob = b.iter().filter(|&&c| target.contains(c)).count();
                oa > ob || (oa == ob && a < b)
            }
        }
    }
}

impl std::str::FromStr for TieBreak {
    type Err = crate::Error;

    /// Accepts `lexmin`, `lexmax` or `adversarial:<c1,c2,...>`.
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "lexmin" | "lex-min" => Ok(TieBreak::LexMin),
            "lexmax" | "lex-max" => Ok(TieBreak::LexMax),
            _ => {
                let list = s.strip_prefix("adversarial:").ok_or_else(|| {
                    crate::Error::InvalidInput(format!("unknown tie policy `{s}`"))
                })?;
                let members = list
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        t.trim().parse::<usize>().map_err(|_| {
                            crate::Error::InvalidInput(format!("bad candidate `{t}` in tie policy"))
                        })
                    })
                    .collect::<crate::Result<Vec<_>>>()?;
                Ok(TieBreak::Adversarial(Committee::new(members)))
            }
        }
    }
}
