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

mod common;

use abc_core::{
    example1_profile, parse_profile, write_profile, ApprovalProfile, Committee, Error, Group,
    Profile, ProfileF64, Rational, VoterGroup,
};
use common::{arb_profile, q, qi};
use proptest::prelude::*;

#[test]
fn example1_counts() {
    let p: Profile = example1_profile();
    assert_eq!(p.total_weight(), qi(100));
    assert_eq!(p.num_candidates(), 30);
    assert_eq!(p.approver_weight(11), qi(30));
    assert_eq!(p.approver_groups(25), vec![2]);
}

#[test]
fn fractional_weights_parse() {
    let p: Profile = parse_profile("# comment\nm=3\n3/2: 1 2\n0.25: 3\n\n").unwrap();
    assert_eq!(p.groups()[0].weight, q(3, 2));
    assert_eq!(p.groups()[1].weight, q(1, 4));
    assert_eq!(p.total_weight(), q(7, 4));
}

#[test]
fn parse_errors_carry_line_numbers() {
    for (text, line) in [
        ("m=2\n1 1", 2),
        ("x=2", 1),
        ("m=2\n-1: 1", 2),
        ("m=2\n1: 1\n1: a", 3),
        ("", 1),
    ] {
        match parse_profile::<Rational>(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "input {text:?}"),
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }
}

#[test]
fn empty_approval_sets_and_empty_profiles_are_allowed() {
    let p: Profile = parse_profile("m=2\n2:").unwrap();
    assert!(p.groups()[0].approvals.is_empty());
    let e: Profile = parse_profile("m=2").unwrap();
    assert_eq!(e.total_weight(), qi(0));
}

#[test]
fn invalid_profiles_are_rejected() {
    assert!(ApprovalProfile::new(0, Vec::<Group<Rational>>::new()).is_err());
    assert!(ApprovalProfile::new(2, vec![Group::new(qi(0), [1])]).is_err());
    assert!(ApprovalProfile::new(2, vec![Group::new(qi(1), [3])]).is_err());
    assert!(Committee::new([1, 4]).validate(3).is_err());
    assert!(Committee::new([0]).validate(3).is_err());
}

#[test]
fn voter_groups_check_weights() {
    let p: Profile = example1_profile();
    assert!(VoterGroup::new(&p, vec![(0, qi(61))]).is_err());
    assert!(VoterGroup::new(&p, vec![(5, qi(1))]).is_err());
    assert!(VoterGroup::new(&p, vec![(0, qi(0))]).is_err());
    let v = VoterGroup::new(&p, vec![(0, qi(20)), (0, qi(10)), (1, qi(5))]).unwrap();
    assert_eq!(v.weight(), qi(35));
    assert!(v.common_approvals(&p).is_empty());
    assert_eq!(
        VoterGroup::whole(&p, &[0])
            .unwrap()
            .common_approvals(&p)
            .len(),
        10
    );
}

#[test]
fn committee_display() {
    assert_eq!(Committee::new([3, 1, 2]).to_string(), "{1, 2, 3}");
    assert_eq!(Committee::new([]).to_string(), "{}");
}

#[test]
fn float_conversion_keeps_weights() {
    let p: Profile = parse_profile("m=2\n1/4: 1\n3: 2").unwrap();
    let f: ProfileF64 = p.convert();
    assert_eq!(f.groups()[0].weight, 0.25);
    assert_eq!(f.total_weight(), 3.25);
}

proptest! {
    #[test]
    fn write_then_parse_round_trips(p in arb_profile(6, 7)) {
        let text = write_profile(&p);
        let back: Profile = parse_profile(&text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn normalizing_is_idempotent(p in arb_profile(6, 5)) {
        prop_assert_eq!(p.normalized(), p.clone());
        let doubled = ApprovalProfile::from_groups_unmerged(
            p.num_candidates(),
            p.groups().iter().chain(p.groups()).cloned().collect(),
        ).unwrap();
        prop_assert_eq!(doubled.normalized(), p.scaled(&qi(2)).unwrap());
    }
}
