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

//! Proportionality and efficiency audits of a fixed committee.
//!
//! A voter set `V` is `ℓ`-large when `|V| ≥ ℓ·n/k`. A committee violates a
//! guarantee `g` on `(ℓ, k)` when some `ℓ`-large set whose members share at
//! least `g` approved candidates has average satisfaction below `g`.
//!
//! Voter sets may take part of a group's weight, so a group of weight `w`
//! behaves like `w` unit voters. Every sub-population sharing `t` approved
//! candidates lies inside the supporters of some `t`-subset of one group's
//! approval set, so the audit anchors its search on those subsets. When
//! that enumeration exceeds [`SearchOptions::subset_cap`] it falls back to
//! intersections of at most [`SearchOptions::seeds`] approval sets and marks
//! the result as incomplete.

use crate::error::{Error, Result};
use crate::model::{ApprovalProfile, Committee, VoterGroup};
use crate::scalar::Scalar;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

/// Limits of the cohesive-group search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions<S> {
    /// Largest number of approval sets intersected to form an anchor.
    pub seeds: usize,
    /// Largest number of anchor subsets enumerated before falling back to
    /// seeded intersections.
    pub subset_cap: usize,
    /// Additional voter groups that are always evaluated as given.
    pub extra: Vec<VoterGroup<S>>,
}

impl<S> Default for SearchOptions<S> {
    fn default() -> Self {
        SearchOptions {
            seeds: 3,
            subset_cap: 100_000,
            extra: Vec::new(),
        }
    }
}

/// Average number of committee members approved by the voters of `v`.
pub fn avg_satisfaction<S: Scalar>(
    p: &ApprovalProfile<S>,
    v: &VoterGroup<S>,
    w: &Committee,
) -> Result<S> {
    let weight = v.weight();
    if weight <= S::zero() {
        return Err(Error::InvalidInput("empty voter group".into()));
    }
    let total = v.members().iter().fold(S::zero(), |acc, (i, sub)| {
        let reps = w.overlap(&p.groups()[*i].approvals);
        acc + sub.clone() * S::from_usize(reps)
    });
    Ok(total / weight)
}

/// Number of representatives of every group.
fn representation<S: Scalar>(p: &ApprovalProfile<S>, w: &Committee) -> Vec<usize> {
    p.groups().iter().map(|g| w.overlap(&g.approvals)).collect()
}

/// The weight `ℓ·n/k` that makes a voter set `ℓ`-large.
pub fn largeness_threshold<S: Scalar>(p: &ApprovalProfile<S>, k: usize, ell: usize) -> Result<S> {
    if k == 0 {
        return Err(Error::InvalidInput(
            "committee size must be positive".into(),
        ));
    }
    Ok(p.total_weight() * S::from_usize(ell) / S::from_usize(k))
}

/// All voters approving every candidate of a candidate-anchored group.
#[derive(Clone, Debug, PartialEq)]
pub struct CohesiveGroup<S> {
    /// Candidates approved by every member.
    pub common: BTreeSet<usize>,
    /// The member groups, taken whole.
    pub voters: VoterGroup<S>,
    /// Total weight.
    pub weight: S,
    /// `weight·k/n`: the group is `ℓ`-large for every `ℓ` up to this value.
    pub largeness: S,
    /// Whether the group is `ℓ`-large for the queried `ℓ`.
    pub ell_large: bool,
}

/// Indices of the groups approving every candidate of `anchor`.
fn supporters<S: Scalar>(p: &ApprovalProfile<S>, anchor: &BTreeSet<usize>) -> Vec<usize> {
    (0..p.groups().len())
        .filter(|&i| anchor.is_subset(&p.groups()[i].approvals))
        .collect()
}

/// Intersections of at most `seeds` approval sets with at least `min_common`
/// members, keyed by their supporter sets.
fn seeded_anchors<S: Scalar>(
    p: &ApprovalProfile<S>,
    seeds: usize,
    min_common: usize,
) -> BTreeMap<Vec<usize>, BTreeSet<usize>> {
    let mut found = BTreeMap::new();
    let groups = p.groups();
    let mut stack: Vec<(usize, usize, BTreeSet<usize>)> = (0..groups.len())
        .map(|i| (i, 1, groups[i].approvals.clone()))
        .collect();
    while let Some((last, depth, set)) = stack.pop() {
        if set.len() < min_common {
            continue;
        }
        let sup = supporters(p, &set);
        if found.contains_key(&sup) {
            continue;
        }
        if depth < seeds {
            for (j, g) in groups.iter().enumerate().skip(last + 1) {
                let next: BTreeSet<usize> = set.intersection(&g.approvals).copied().collect();
                stack.push((j, depth + 1, next));
            }
        }
        found.insert(sup, set);
    }
    found
}

/// Maximal groups anchored on intersections of at most `opts.seeds`
/// approval sets that share at least `threshold` candidates, largest first.
pub fn cohesive_groups<S: Scalar>(
    p: &ApprovalProfile<S>,
    k: usize,
    ell: usize,
    threshold: &S,
    opts: &SearchOptions<S>,
) -> Result<Vec<CohesiveGroup<S>>> {
    if ell > k {
        return Err(Error::InvalidInput(format!("ℓ={ell} exceeds k={k}")));
    }
    let need = largeness_threshold(p, k, ell)?;
    let n = p.total_weight();
    let min_common = threshold.ceil_usize();
    let mut out = Vec::new();
    for sup in seeded_anchors(p, opts.seeds.max(1), min_common).into_keys() {
        let voters = VoterGroup::whole(p, &sup)?;
        let weight = voters.weight();
        out.push(CohesiveGroup {
            common: voters.common_approvals(p),
            largeness: weight.clone() * S::from_usize(k) / n.clone(),
            ell_large: weight >= need,
            weight,
            voters,
        });
    }
    out.sort_by(|a, b| {
        b.weight
            .partial_cmp(&a.weight)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.common.cmp(&b.common))
    });
    Ok(out)
}

/// The least satisfied `ℓ`-large voter set found for one query.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRecord<S> {
    /// Anchor whose supporters contain the set.
    pub anchor: BTreeSet<usize>,
    /// The voter set, possibly taking part of a group's weight.
    pub voters: VoterGroup<S>,
    /// Total weight.
    pub weight: S,
    /// `weight·k/n`.
    pub largeness: S,
    /// Number of candidates approved by every member.
    pub common: usize,
    /// Average satisfaction.
    pub satisfaction: S,
}

/// `n` choose `t`, saturating.
fn binomial(n: usize, t: usize) -> usize {
    if t > n {
        return 0;
    }
    let t = t.min(n - t);
    let mut acc: u128 = 1;
    for i in 0..t {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Supporter sets of every `t`-subset of every approval set, or `None` when
/// there are more than `cap` subsets.
fn subset_anchors<S: Scalar>(
    p: &ApprovalProfile<S>,
    t: usize,
    cap: usize,
) -> Option<BTreeMap<Vec<usize>, BTreeSet<usize>>> {
    let total = p.groups().iter().fold(0usize, |acc, g| {
        acc.saturating_add(binomial(g.approvals.len(), t))
    });
    if total > cap {
        return None;
    }
    let mut found = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for g in p.groups() {
        let items: Vec<usize> = g.approvals.iter().copied().collect();
        if items.len() < t {
            continue;
        }
        let mut idx: Vec<usize> = (0..t).collect();
        loop {
            let anchor: BTreeSet<usize> = idx.iter().map(|&i| items[i]).collect();
            if seen.insert(anchor.clone()) {
                found.entry(supporters(p, &anchor)).or_insert(anchor);
            }
            // Advance to the next t-combination of positions.
            let mut pos = t;
            while pos > 0 && idx[pos - 1] == items.len() - t + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for j in pos..t {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Some(found)
}

/// Least satisfied sub-population of weight exactly `need` among `sup`.
fn worst_within<S: Scalar>(
    p: &ApprovalProfile<S>,
    sup: &[usize],
    reps: &[usize],
    need: &S,
) -> Result<Option<(VoterGroup<S>, S)>> {
    let available = sup
        .iter()
        .fold(S::zero(), |acc, &i| acc + p.groups()[i].weight.clone());
    if available < *need || sup.is_empty() {
        return Ok(None);
    }
    let mut order = sup.to_vec();
    order.sort_by_key(|&i| (reps[i], i));
    let mut members = Vec::new();
    let mut taken = S::zero();
    let mut score = S::zero();
    for i in order {
        if taken >= *need && !members.is_empty() {
            break;
        }
        let left = need.clone() - taken.clone();
        let w = p.groups()[i].weight.clone();
        let sub = if w < left || left <= S::zero() {
            w
        } else {
            left
        };
        score = score + sub.clone() * S::from_usize(reps[i]);
        taken = taken + sub.clone();
        members.push((i, sub));
    }
    let voters = VoterGroup::new(p, members)?;
    Ok(Some((voters, score / taken)))
}

/// Least satisfied `ℓ`-large voter set whose members share at least
/// `min_common` approved candidates. The flag is false when the search fell
/// back to seeded intersections.
pub fn worst_cohesive_subgroup<S: Scalar>(
    p: &ApprovalProfile<S>,
    w: &Committee,
    k: usize,
    ell: usize,
    min_common: usize,
    opts: &SearchOptions<S>,
) -> Result<(Option<GroupRecord<S>>, bool)> {
    let need = largeness_threshold(p, k, ell)?;
    let n = p.total_weight();
    let reps = representation(p, w);
    let (anchors, complete) = if min_common == 0 {
        let all: Vec<usize> = (0..p.groups().len()).collect();
        (BTreeMap::from([(all, BTreeSet::new())]), true)
    } else {
        match subset_anchors(p, min_common, opts.subset_cap) {
            Some(a) => (a, true),
            None => (seeded_anchors(p, opts.seeds.max(1), min_common), false),
        }
    };
    let mut best: Option<GroupRecord<S>> = None;
    let mut consider = |rec: GroupRecord<S>| {
        let better = match &best {
            None => true,
            Some(b) => b.satisfaction.beats(&rec.satisfaction),
        };
        if better {
            best = Some(rec);
        }
    };
    for (sup, anchor) in anchors {
        if let Some((voters, satisfaction)) = worst_within(p, &sup, &reps, &need)? {
            let weight = voters.weight();
            consider(GroupRecord {
                common: voters.common_approvals(p).len(),
                largeness: weight.clone() * S::from_usize(k) / n.clone(),
                weight,
                anchor,
                voters,
                satisfaction,
            });
        }
    }
    for v in &opts.extra {
        let weight = v.weight();
        let common = v.common_approvals(p);
        if weight < need || common.len() < min_common {
            continue;
        }
        consider(GroupRecord {
            satisfaction: avg_satisfaction(p, v, w)?,
            largeness: weight.clone() * S::from_usize(k) / n.clone(),
            common: common.len(),
            anchor: common,
            weight,
            voters: v.clone(),
        });
    }
    Ok((best, complete))
}

/// One `(ℓ, g)` question: does every `ℓ`-large set sharing at least `g`
/// candidates get average satisfaction `g`?
#[derive(Clone, Debug, PartialEq)]
pub struct Query<S> {
    /// Group size in units of `n/k`.
    pub ell: usize,
    /// Guarantee value `g`.
    pub threshold: S,
}

/// Outcome of one query.
#[derive(Clone, Debug, PartialEq)]
pub struct QueryRecord<S> {
    /// The query.
    pub query: Query<S>,
    /// Least satisfied qualifying set, if any qualifies.
    pub worst: Option<GroupRecord<S>>,
    /// Whether the search covered every qualifying set.
    pub complete: bool,
}

impl<S: Scalar> QueryRecord<S> {
    /// Whether the worst set falls short of the threshold.
    pub fn is_violation(&self) -> bool {
        match &self.worst {
            Some(r) => {
                r.satisfaction < self.query.threshold && !r.satisfaction.ties(&self.query.threshold)
            }
            None => false,
        }
    }
}

/// Audit of one committee.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport<S> {
    /// Committee size used for `ℓ`-largeness.
    pub k: usize,
    /// One record per query, in query order.
    pub records: Vec<QueryRecord<S>>,
    /// Index into `records` of the violation with the largest shortfall.
    pub worst_violation: Option<usize>,
    /// Approval score relative to the best size-`k` committee.
    pub utilitarian_ratio: S,
}

impl<S: Scalar> AuditReport<S> {
    /// CSV header matching [`AuditReport::to_csv`].
    pub const CSV_HEADER: &'static str =
        "ell,threshold,found,weight,largeness,common,satisfaction,violation,complete,anchor";

    /// The record with the largest shortfall, if any query is violated.
    pub fn worst(&self) -> Option<&QueryRecord<S>> {
        self.worst_violation.map(|i| &self.records[i])
    }

    /// One CSV row per query. `fmt` renders scalars.
    pub fn to_csv_with(&self, fmt: impl Fn(&S) -> String) -> String {
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for r in &self.records {
            let _ = write!(out, "{},{},", r.query.ell, fmt(&r.query.threshold));
            match &r.worst {
                Some(g) => {
                    let anchor: Vec<String> = g.anchor.iter().map(|c| c.to_string()).collect();
                    let _ = write!(
                        out,
                        "yes,{},{},{},{},",
                        fmt(&g.weight),
                        fmt(&g.largeness),
                        g.common,
                        fmt(&g.satisfaction)
                    );
                    let _ = writeln!(
                        out,
                        "{},{},{}",
                        if r.is_violation() { "yes" } else { "no" },
                        if r.complete { "yes" } else { "no" },
                        anchor.join(" ")
                    );
                }
                None => {
                    let _ = writeln!(out, "no,,,,,no,{},", if r.complete { "yes" } else { "no" });
                }
            }
        }
        let _ = writeln!(out, "# utilitarian_ratio,{}", fmt(&self.utilitarian_ratio));
        out
    }
}

/// Runs every query against `w` and records the worst violation.
pub fn empirical_prop_degree<S: Scalar>(
    p: &ApprovalProfile<S>,
    w: &Committee,
    k: usize,
    queries: &[Query<S>],
    opts: &SearchOptions<S>,
) -> Result<AuditReport<S>> {
    w.validate(p.num_candidates())?;
    let mut records = Vec::with_capacity(queries.len());
    for q in queries {
        if q.ell == 0 || q.ell > k {
            return Err(Error::InvalidInput(format!(
                "ℓ={} must lie in 1..={k}",
                q.ell
            )));
        }
        let (worst, complete) =
            worst_cohesive_subgroup(p, w, k, q.ell, q.threshold.ceil_usize(), opts)?;
        records.push(QueryRecord {
            query: q.clone(),
            worst,
            complete,
        });
    }
    let mut worst_violation: Option<(usize, S)> = None;
    for (i, r) in records.iter().enumerate() {
        if !r.is_violation() {
            continue;
        }
        let sat = r
            .worst
            .as_ref()
            .map(|g| g.satisfaction.clone())
            .unwrap_or_else(S::zero);
        let gap = sat - r.query.threshold.clone();
        if worst_violation.as_ref().is_none_or(|(_, g)| gap < *g) {
            worst_violation = Some((i, gap));
        }
    }
    Ok(AuditReport {
        k,
        records,
        worst_violation: worst_violation.map(|(i, _)| i),
        utilitarian_ratio: utilitarian_ratio(p, w, k)?,
    })
}

/// The `k` candidates with the most approval weight, ties towards smaller
/// indices. This committee maximizes the approval score.
pub fn top_k_by_approvals<S: Scalar>(p: &ApprovalProfile<S>, k: usize) -> Result<Committee> {
    let m = p.num_candidates();
    if k > m {
        return Err(Error::InvalidInput(format!("k={k} exceeds m={m}")));
    }
    let mut scored: Vec<(usize, S)> = (1..=m).map(|c| (c, p.approver_weight(c))).collect();
    scored.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.0.cmp(&b.0))
    });
    Ok(Committee::new(scored.into_iter().take(k).map(|(c, _)| c)))
}

/// Total number of approvals the committee members receive.
pub fn approval_score<S: Scalar>(p: &ApprovalProfile<S>, w: &Committee) -> S {
    p.groups().iter().fold(S::zero(), |acc, g| {
        acc + g.weight.clone() * S::from_usize(w.overlap(&g.approvals))
    })
}

/// Approval score of `w` divided by the best size-`k` approval score; 1 when
/// no size-`k` committee has a positive score.
pub fn utilitarian_ratio<S: Scalar>(p: &ApprovalProfile<S>, w: &Committee, k: usize) -> Result<S> {
    w.validate(p.num_candidates())?;
    let best = approval_score(p, &top_k_by_approvals(p, k)?);
    if best <= S::zero() {
        return Ok(S::one());
    }
    Ok(approval_score(p, w) / best)
}

/// A cohesive group in which nobody is represented well enough.
#[derive(Clone, Debug, PartialEq)]
pub struct EjrWitness<S> {
    /// Group size in units of `n/k`.
    pub ell: usize,
    /// `ℓ` candidates approved by every member.
    pub anchor: BTreeSet<usize>,
    /// The members, taken whole and in index order until `ℓ`-large.
    pub voters: VoterGroup<S>,
}

/// Result of an EJR check.
#[derive(Clone, Debug, PartialEq)]
pub struct EjrOutcome<S> {
    /// Whether the committee satisfies `α`-EJR.
    pub satisfied: bool,
    /// A violating group when `satisfied` is false.
    pub witness: Option<EjrWitness<S>>,
    /// Whether the search covered every cohesive group.
    pub complete: bool,
}

/// Checks that every `ℓ`-large group sharing `ℓ` approved candidates has a
/// member with at least `⌈αℓ⌉` representatives, for every `ℓ ≤ k`.
pub fn check_ejr<S: Scalar>(
    p: &ApprovalProfile<S>,
    w: &Committee,
    k: usize,
    alpha: &S,
    opts: &SearchOptions<S>,
) -> Result<EjrOutcome<S>> {
    w.validate(p.num_candidates())?;
    let reps = representation(p, w);
    let mut complete = true;
    for ell in 1..=k {
        let need = largeness_threshold(p, k, ell)?;
        let required = (alpha.clone() * S::from_usize(ell)).ceil_usize();
        let anchors = match subset_anchors(p, ell, opts.subset_cap) {
            Some(a) => a,
            None => {
                complete = false;
                seeded_anchors(p, opts.seeds.max(1), ell)
            }
        };
        for (sup, anchor) in anchors {
            let poor: Vec<usize> = sup.into_iter().filter(|&i| reps[i] < required).collect();
            let mut taken = Vec::new();
            let mut weight = S::zero();
            for i in poor {
                taken.push(i);
                weight = weight + p.groups()[i].weight.clone();
                if weight >= need {
                    break;
                }
            }
            if !taken.is_empty() && weight >= need {
                return Ok(EjrOutcome {
                    satisfied: false,
                    witness: Some(EjrWitness {
                        ell,
                        anchor,
                        voters: VoterGroup::whole(p, &taken)?,
                    }),
                    complete,
                });
            }
        }
    }
    Ok(EjrOutcome {
        satisfied: true,
        witness: None,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{example1_profile, Group};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_usize(n as usize)
    }

    #[test]
    fn example1_party_satisfaction() {
        let p = example1_profile::<Q>();
        let v = VoterGroup::whole(&p, &[0]).unwrap();
        let w = Committee::new([1, 2, 3, 4, 5, 6, 11, 12, 13, 21]);
        assert_eq!(avg_satisfaction(&p, &v, &w).unwrap(), q(6));
        let all = VoterGroup::everyone(&p).unwrap();
        assert_eq!(
            avg_satisfaction(&p, &all, &Committee::new([])).unwrap(),
            q(0)
        );
    }

    #[test]
    fn example1_cohesive_groups() {
        let p = example1_profile::<Q>();
        let found = cohesive_groups(&p, 10, 6, &q(5), &SearchOptions::default()).unwrap();
        assert_eq!(found.len(), 3);
        assert_eq!(found[0].weight, q(60));
        assert_eq!(found[0].common.len(), 10);
        assert!(found[0].ell_large);
        let seven = cohesive_groups(&p, 10, 7, &q(5), &SearchOptions::default()).unwrap();
        assert!(!seven[0].ell_large);
    }

    #[test]
    fn disjoint_singletons_give_single_groups() {
        let groups = (1..=4).map(|c| Group::new(q(1), [c])).collect();
        let p = ApprovalProfile::new(4, groups).unwrap();
        let found = cohesive_groups(&p, 2, 1, &q(1), &SearchOptions::default()).unwrap();
        assert_eq!(found.len(), 4);
        assert!(found.iter().all(|g| g.voters.members().len() == 1));
    }

    #[test]
    fn fractional_worst_subgroup() {
        // Two voters share {1,2} and have 0 and 1 representatives. With n=3
        // and k=3 a 2-large set needs both of them.
        let p = ApprovalProfile::new(
            3,
            vec![
                Group::new(q(1), [1, 2]),
                Group::new(q(1), [1, 2, 3]),
                Group::new(q(1), [3]),
            ],
        )
        .unwrap();
        let w = Committee::new([3]);
        let (rec, complete) =
            worst_cohesive_subgroup(&p, &w, 3, 2, 2, &SearchOptions::default()).unwrap();
        assert!(complete);
        let rec = rec.unwrap();
        assert_eq!(rec.weight, q(2));
        assert_eq!(rec.satisfaction, Q::from_ratio(1, 2));
    }

    #[test]
    fn utilitarian_extremes() {
        let p = example1_profile::<Q>();
        let top = top_k_by_approvals(&p, 10).unwrap();
        assert_eq!(utilitarian_ratio(&p, &top, 10).unwrap(), q(1));
        let p2 = ApprovalProfile::new(3, vec![Group::new(q(2), [1])]).unwrap();
        assert_eq!(
            utilitarian_ratio(&p2, &Committee::new([2, 3]), 2).unwrap(),
            q(0)
        );
    }

    #[test]
    fn ejr_trivial_k1() {
        let p = example1_profile::<Q>();
        let out = check_ejr(
            &p,
            &Committee::new([1]),
            1,
            &q(1),
            &SearchOptions::default(),
        )
        .unwrap();
        assert!(out.satisfied);
    }
}
