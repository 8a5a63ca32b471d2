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

//! Election data model and the profile text format.
//!
//! A profile is a list of weighted voter groups. A group of weight `w`
//! stands for `w` identical voters, so weights may be fractional. Candidates
//! are numbered from 1.
//!
//! The text format is line based:
//!
//! ```text
//! # comment
//! m=4
//! 3: 1 2
//! 1/2: 4
//! 2:
//! ```
//!
//! The first non-comment line gives the number of candidates. Each following
//! line is `<weight>: <candidates...>`, where the weight is an integer, a
//! fraction `p/q` or a decimal. An empty list is an empty approval set.

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Scalar};
use std::collections::BTreeSet;
use std::fmt;

/// A set of candidates, numbered from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Committee {
    members: BTreeSet<usize>,
}

impl Committee {
    /// Builds a committee from candidate indices. Duplicates collapse.
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        Committee {
            members: members.into_iter().collect(),
        }
    }

    /// The committee `{lo, lo+1, ..., hi}`.
    pub fn range(lo: usize, hi: usize) -> Self {
        Committee::new(lo..=hi)
    }

    /// Number of members.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Whether `c` is a member.
    pub fn contains(&self, c: usize) -> bool {
        self.members.contains(&c)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// Members as a set.
    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    /// Number of members in `set`.
    pub fn overlap(&self, set: &BTreeSet<usize>) -> usize {
        if set.len() < self.members.len() {
            set.iter().filter(|c| self.members.contains(c)).count()
        } else {
            self.members.iter().filter(|c| set.contains(c)).count()
        }
    }

    /// Checks that every member is a valid candidate of an `m`-candidate
    /// election.
    pub fn validate(&self, m: usize) -> Result<()> {
        match self.members.iter().find(|&&c| c == 0 || c > m) {
            Some(c) => Err(Error::InvalidInput(format!(
                "candidate {c} is not in 1..={m}"
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Committee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Identical voters sharing one approval set.
#[derive(Clone, Debug, PartialEq)]
pub struct Group<S> {
    /// Total weight of the group; strictly positive.
    pub weight: S,
    /// Approved candidates.
    pub approvals: BTreeSet<usize>,
}

impl<S> Group<S> {
    /// Builds a group.
    pub fn new<I: IntoIterator<Item = usize>>(weight: S, approvals: I) -> Self {
        Group {
            weight,
            approvals: approvals.into_iter().collect(),
        }
    }
}

/// Weighted approval profile over candidates `1..=m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApprovalProfile<S> {
    num_candidates: usize,
    groups: Vec<Group<S>>,
}

impl<S: Scalar> ApprovalProfile<S> {
    /// Validates and normalizes: groups with identical approval sets are
    /// merged, keeping the position of the first occurrence.
    pub fn new(num_candidates: usize, groups: Vec<Group<S>>) -> Result<Self> {
        Ok(Self::from_groups_unmerged(num_candidates, groups)?.normalized())
    }

    /// Validates without merging duplicate approval sets. Every rule accepts
    /// such profiles and treats them like their normalized form.
    pub fn from_groups_unmerged(num_candidates: usize, groups: Vec<Group<S>>) -> Result<Self> {
        if num_candidates == 0 {
            return Err(Error::InvalidInput(
                "a profile needs at least one candidate".into(),
            ));
        }
        for g in &groups {
            if g.weight <= S::zero() {
                return Err(Error::InvalidInput(format!(
                    "non-positive weight {}",
                    g.weight
                )));
            }
            if let Some(c) = g.approvals.iter().find(|&&c| c == 0 || c > num_candidates) {
                return Err(Error::InvalidInput(format!(
                    "candidate index out of range: {c} (m={num_candidates})"
                )));
            }
        }
        Ok(ApprovalProfile {
            num_candidates,
            groups,
        })
    }

    /// Copy with duplicate approval sets merged.
    pub fn normalized(&self) -> Self {
        let mut out: Vec<Group<S>> = Vec::with_capacity(self.groups.len());
        let mut index: std::collections::BTreeMap<&BTreeSet<usize>, usize> = Default::default();
        for g in &self.groups {
            match index.get(&g.approvals) {
                Some(&i) => out[i].weight = out[i].weight.clone() + g.weight.clone(),
                None => {
                    index.insert(&g.approvals, out.len());
                    out.push(g.clone());
                }
            }
        }
        ApprovalProfile {
            num_candidates: self.num_candidates,
            groups: out,
        }
    }

    /// Number of candidates `m`.
    pub fn num_candidates(&self) -> usize {
        self.num_candidates
    }

    /// Voter groups.
    pub fn groups(&self) -> &[Group<S>] {
        &self.groups
    }

    /// Total weight `n`.
    pub fn total_weight(&self) -> S {
        self.groups
            .iter()
            .fold(S::zero(), |acc, g| acc + g.weight.clone())
    }

    /// Total weight of the voters approving `c`.
    pub fn approver_weight(&self, c: usize) -> S {
        self.groups
            .iter()
            .filter(|g| g.approvals.contains(&c))
            .fold(S::zero(), |acc, g| acc + g.weight.clone())
    }

    /// Indices of the groups approving `c`.
    pub fn approver_groups(&self, c: usize) -> Vec<usize> {
        (0..self.groups.len())
            .filter(|&i| self.groups[i].approvals.contains(&c))
            .collect()
    }

    /// Multiplies every weight by `factor`, which must be positive.
    pub fn scaled(&self, factor: &S) -> Result<Self> {
        let groups = self
            .groups
            .iter()
            .map(|g| Group {
                weight: g.weight.clone() * factor.clone(),
                approvals: g.approvals.clone(),
            })
            .collect();
        Self::from_groups_unmerged(self.num_candidates, groups)
    }

    /// Converts the weights into another scalar type.
    pub fn convert<T: Scalar>(&self) -> ApprovalProfile<T> {
        ApprovalProfile {
            num_candidates: self.num_candidates,
            groups: self
                .groups
                .iter()
                .map(|g| Group {
                    weight: match g.weight.to_rational() {
                        Some(r) => T::from_rational(&r),
                        None => T::from_f64(g.weight.to_f64()),
                    },
                    approvals: g.approvals.clone(),
                })
                .collect(),
        }
    }

    /// Rejects profiles without voters.
    pub(crate) fn require_voters(&self) -> Result<S> {
        let n = self.total_weight();
        if n <= S::zero() {
            return Err(Error::InvalidInput("the profile has no voters".into()));
        }
        Ok(n)
    }
}

/// A measurable sub-population: per-group sub-weights.
#[derive(Clone, Debug, PartialEq)]
pub struct VoterGroup<S> {
    members: Vec<(usize, S)>,
}

impl<S: Scalar> VoterGroup<S> {
    /// Builds a voter group from `(group index, sub-weight)` pairs, checking
    /// them against `p`. Zero sub-weights are dropped.
    pub fn new(p: &ApprovalProfile<S>, members: Vec<(usize, S)>) -> Result<Self> {
        let mut merged: std::collections::BTreeMap<usize, S> = Default::default();
        for (i, w) in members {
            let g = p
                .groups()
                .get(i)
                .ok_or_else(|| Error::InvalidInput(format!("group index {i} out of range")))?;
            if w < S::zero() {
                return Err(Error::InvalidInput("negative sub-weight".into()));
            }
            let entry = merged.entry(i).or_insert_with(S::zero);
            *entry = entry.clone() + w;
            if *entry > g.weight {
                return Err(Error::InvalidInput(format!(
                    "sub-weight exceeds the weight of group {i}"
                )));
            }
        }
        let members: Vec<(usize, S)> = merged.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        if members.is_empty() {
            return Err(Error::InvalidInput("empty voter group".into()));
        }
        Ok(VoterGroup { members })
    }

    /// Whole groups at the given indices.
    pub fn whole(p: &ApprovalProfile<S>, indices: &[usize]) -> Result<Self> {
        let members = indices
            .iter()
            .map(|&i| {
                p.groups()
                    .get(i)
                    .map(|g| (i, g.weight.clone()))
                    .ok_or_else(|| Error::InvalidInput(format!("group index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, members)
    }

    /// The whole electorate.
    pub fn everyone(p: &ApprovalProfile<S>) -> Result<Self> {
        let all: Vec<usize> = (0..p.groups().len()).collect();
        Self::whole(p, &all)
    }

    /// `(group index, sub-weight)` pairs in increasing index order.
    pub fn members(&self) -> &[(usize, S)] {
        &self.members
    }

    /// Total weight `|V|`.
    pub fn weight(&self) -> S {
        self.members
            .iter()
            .fold(S::zero(), |acc, (_, w)| acc + w.clone())
    }

    /// Candidates approved by every member.
    pub fn common_approvals(&self, p: &ApprovalProfile<S>) -> BTreeSet<usize> {
        let mut it = self.members.iter();
        let mut common = match it.next() {
            Some((i, _)) => p.groups()[*i].approvals.clone(),
            None => return BTreeSet::new(),
        };
        for (i, _) in it {
            common = common
                .intersection(&p.groups()[*i].approvals)
                .copied()
                .collect();
        }
        common
    }
}

impl<S: Scalar> fmt::Display for VoterGroup<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, (i, w)) in self.members.iter().enumerate() {
            if pos > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:{}", i + 1, w)?;
        }
        Ok(())
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a profile document and returns the normalized profile.
pub fn parse_profile<S: Scalar>(text: &str) -> Result<ApprovalProfile<S>> {
    let mut m: Option<usize> = None;
    let mut groups = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(num_candidates) = m else {
            let value = line
                .strip_prefix("m=")
                .ok_or_else(|| parse_error(line_no, "expected `m=<number of candidates>`"))?;
            let value: usize = value.trim().parse().map_err(|_| {
                parse_error(line_no, format!("malformed candidate count `{value}`"))
            })?;
            if value == 0 {
                return Err(parse_error(line_no, "candidate count must be positive"));
            }
            m = Some(value);
            continue;
        };
        let (weight, approvals) = line
            .split_once(':')
            .ok_or_else(|| parse_error(line_no, "expected `<weight>: <candidates>`"))?;
        let weight = parse_rational(weight)
            .ok_or_else(|| parse_error(line_no, format!("malformed weight `{}`", weight.trim())))?;
        if weight <= num_traits::Zero::zero() {
            return Err(parse_error(line_no, "non-positive weight"));
        }
        let mut set = BTreeSet::new();
        for token in approvals.split_whitespace() {
            let c: usize = token.parse().map_err(|_| {
                parse_error(line_no, format!("malformed candidate index `{token}`"))
            })?;
            if c == 0 || c > num_candidates {
                return Err(parse_error(
                    line_no,
                    format!("candidate index out of range: {c} (m={num_candidates})"),
                ));
            }
            set.insert(c);
        }
        groups.push(Group {
            weight: S::from_rational(&weight),
            approvals: set,
        });
    }
    let m = m.ok_or_else(|| parse_error(1, "missing `m=<number of candidates>` line"))?;
    ApprovalProfile::new(m, groups)
}

/// Renders a profile in the text format. The output has no trailing newline.
pub fn write_profile<S: Scalar>(p: &ApprovalProfile<S>) -> String {
    let mut out = format!("m={}", p.num_candidates());
    for g in p.groups() {
        out.push('\n');
        out.push_str(&g.weight.to_string());
        out.push(':');
        for c in &g.approvals {
            out.push(' ');
            out.push_str(&c.to_string());
        }
    }
    out
}

/// Three parties of 60, 30 and 10 voters, each approving its own block of
/// 10 candidates.
pub fn example1_profile<S: Scalar>() -> ApprovalProfile<S> {
    let groups = vec![
        Group::new(S::from_usize(60), 1..=10),
        Group::new(S::from_usize(30), 11..=20),
        Group::new(S::from_usize(10), 21..=30),
    ];
    ApprovalProfile::new(30, groups).expect("valid by construction")
}
