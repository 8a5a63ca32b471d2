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

//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A profile document could not be parsed.
    #[error("line {line}: {message}")]
    Parse {
        /// 1-based line number in the input.
        line: usize,
        /// What went wrong.
        message: String,
    },
    /// A value violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Enumeration would exceed the configured budget.
    #[error("budget exceeded: {needed} committees to enumerate, budget is {budget}")]
    BudgetExceeded {
        /// Number of items the operation would enumerate.
        needed: u128,
        /// Configured budget.
        budget: u128,
    },
    /// A sequential rule ran out of electable candidates.
    #[error("stalled at step {step}: no remaining candidate has an approver")]
    Stall {
        /// 1-based step that could not be completed.
        step: usize,
    },
    /// A weight sequence is shorter than the committee size requires.
    #[error("weight sequence has {len} entries but {needed} are required")]
    LambdaTooShort {
        /// Entries available.
        len: usize,
        /// Entries required.
        needed: usize,
    },
    /// A root finder could not produce a valid bracket or converge.
    #[error("root finding failed: {0}")]
    Root(String),
    /// A problem exceeds the size limit of its builder or solver.
    #[error("{what} k={k} exceeds the limit k<={limit}")]
    SizeLimit {
        /// What was requested.
        what: &'static str,
        /// Requested size.
        k: usize,
        /// Largest accepted size.
        limit: usize,
    },
    /// The LP solver failed for numerical reasons.
    #[error("solver failure: {0}")]
    Solver(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
