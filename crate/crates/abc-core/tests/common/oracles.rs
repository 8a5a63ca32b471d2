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

//! Independent oracles shared by the integration tests and the acceptance
//! run.

#![allow(dead_code)]

use abc_core::lp::{solve_lp, LpProblem, LpStatus, Relation};
use abc_core::{Committee, Profile, Rational, Scalar};
use num_traits::{One, Zero};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

pub fn qi(n: usize) -> Rational {
    Rational::from_usize(n)
}

/// D'Hondt seat counts: repeatedly award a seat to the party with the
/// largest `votes / (seats + 1)`, ties to the earlier party.
pub fn dhondt(votes: &[u64], seats: usize) -> Vec<usize> {
    let mut won = vec![0usize; votes.len()];
    for _ in 0..seats {
        let mut best = 0;
        for i in 1..votes.len() {
            // votes[i]/(won[i]+1) > votes[best]/(won[best]+1), cross-multiplied.
            if votes[i] * (won[best] as u64 + 1) > votes[best] * (won[i] as u64 + 1) {
                best = i;
            }
        }
        won[best] += 1;
    }
    won
}

/// Every size-`k` subset of `1..=m` in lexicographic order.
pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..=m {
            if m - c + 1 < k - cur.len() {
                break;
            }
            cur.push(c);
            rec(c + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, m, k, &mut Vec::new(), &mut out);
    out
}

/// PAV score by direct summation of harmonic numbers.
pub fn pav_score(p: &Profile, w: &[usize]) -> Rational {
    let mut total = Rational::zero();
    for g in p.groups() {
        let r = w.iter().filter(|c| g.approvals.contains(c)).count();
        let mut h = Rational::zero();
        for j in 1..=r {
            h += q(1, j as i64);
        }
        total += &g.weight * h;
    }
    total
}

/// Best PAV committees by scanning every subset.
pub fn brute_pav(p: &Profile, k: usize) -> (Rational, Vec<Committee>) {
    let mut best: Option<Rational> = None;
    let mut winners = Vec::new();
    for w in k_subsets(p.num_candidates(), k) {
        let s = pav_score(p, &w);
        match &best {
            Some(b) if s < *b => {}
            Some(b) if s == *b => winners.push(Committee::new(w)),
            _ => {
                best = Some(s);
                winners = vec![Committee::new(w)];
            }
        }
    }
    (best.unwrap_or_else(Rational::zero), winners)
}

/// Optimal maximal load of `w` as an explicit LP: minimize `t` subject to
/// every member's unit load being split over its approvers and every
/// voter's load staying below `t`.
pub fn max_load_lp(p: &Profile, w: &Committee) -> Option<Rational> {
    let mut lp: LpProblem<Rational> = LpProblem::new("load", w.size());
    let t = lp.add_var("t");
    let groups = p.groups();
    let mut per_group: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); groups.len()];
    for c in w.iter() {
        let mut terms = Vec::new();
        for (g, grp) in groups.iter().enumerate() {
            if grp.approvals.contains(&c) {
                let v = lp.add_var(format!("x_{c}_{g}"));
                terms.push((v, Rational::one()));
                per_group[g].push((v, Rational::one()));
            }
        }
        if terms.is_empty() {
            return None;
        }
        lp.add_constraint(format!("all_{c}"), terms, Relation::Eq, Rational::one());
    }
    for (g, mut terms) in per_group.into_iter().enumerate() {
        terms.push((t, -groups[g].weight.clone()));
        lp.add_constraint(format!("cap_{g}"), terms, Relation::Le, Rational::zero());
    }
    lp.objective = vec![(t, -Rational::one())];
    let sol = solve_lp(&lp).expect("load LP solves");
    assert_eq!(sol.status, LpStatus::Optimal);
    Some(-sol.objective)
}
