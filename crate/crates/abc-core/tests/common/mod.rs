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

//! Oracles and random instances shared by the integration tests.

#![allow(dead_code)]

mod oracles;

pub use oracles::*;

use abc_core::{ApprovalProfile, Group, Profile};

/// Proptest strategy: up to `max_groups` groups with weights `1..=4` over
/// `1..=max_m` candidates.
pub fn arb_profile(
    max_groups: usize,
    max_m: usize,
) -> impl proptest::strategy::Strategy<Value = Profile> {
    use proptest::prelude::*;
    (1..=max_m).prop_flat_map(move |m| {
        proptest::collection::vec(
            (1i64..=4, proptest::collection::vec(any::<bool>(), m)),
            1..=max_groups,
        )
        .prop_map(move |gs| {
            let groups = gs
                .into_iter()
                .map(|(w, bits)| {
                    let set: Vec<usize> = (1..=m).filter(|&c| bits[c - 1]).collect();
                    Group::new(q(w, 1), set)
                })
                .collect();
            ApprovalProfile::new(m, groups).expect("valid generated profile")
        })
    })
}
