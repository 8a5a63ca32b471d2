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

//! Approval-based committee elections: rules, proportionality audits,
//! analytic and LP-based guarantees, and worst-case instance generators.
//!
//! The core types are generic over a [`Scalar`]. Exact reasoning uses
//! [`Rational`] (arbitrary precision), while the `f64` aliases trade
//! exactness for speed.
//!
//! ```
//! use abc_core::{example1_profile, rules, Profile};
//!
//! let p: Profile = example1_profile();
//! let (w, _) = rules::seq_pav(&p, 10, &rules::TieBreak::LexMin).unwrap();
//! assert_eq!(w.iter().filter(|&c| c <= 10).count(), 6);
//! ```

pub mod audit;
pub mod bounds;
pub mod error;
pub mod gen;
pub mod lp;
pub mod model;
pub mod rules;
pub mod scalar;
pub mod tables;

pub use error::{Error, Result};
pub use model::{
    example1_profile, parse_profile, write_profile, ApprovalProfile, Committee, Group, VoterGroup,
};
pub use rules::{LambdaWeights, TieBreak};
pub use scalar::Scalar;

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Profile with exact rational weights.
pub type Profile = ApprovalProfile<Rational>;

/// Profile with `f64` weights.
pub type ProfileF64 = ApprovalProfile<f64>;

/// Exact election trace.
pub type Trace = rules::ElectionTrace<Rational>;

/// Exact linear program.
pub type LpProblemQ = lp::LpProblem<Rational>;

/// Floating-point linear program.
pub type LpProblemF64 = lp::LpProblem<f64>;
