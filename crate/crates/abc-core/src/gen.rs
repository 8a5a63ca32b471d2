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

//! Worst-case instance families.
//!
//! Each generator returns a weighted profile together with an
//! [`InstanceSpec`] describing the designated group `V`, the predicted
//! bound and the committee that ties should favor. Constructions stated
//! over unit voters use exact rational weights, so divisibility conditions
//! only fix ratios.

use crate::bounds::{seqpav_delta, thiele_efficiency_upper, thiele_upper};
use crate::error::{Error, Result};
use crate::model::{ApprovalProfile, Committee, Group, VoterGroup};
use crate::rules::{LambdaWeights, TieBreak, DEFAULT_BUDGET};
use crate::scalar::{rationalize, Scalar};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// Largest denominator used when a real-valued parameter is rationalized.
pub const PARAM_DENOMINATOR: u64 = 10_000;

/// Parameters and targets of a generated instance.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec<S> {
    /// Family tag.
    pub family: &'static str,
    /// Named construction parameters.
    pub params: Vec<(&'static str, S)>,
    /// Committee size the instance is built for.
    pub k: usize,
    /// Group size parameter of the designated group.
    pub ell: usize,
    /// Total weight.
    pub n: S,
    /// Number of candidates.
    pub m: usize,
    /// The designated cohesive group.
    pub voters: VoterGroup<S>,
    /// Value the construction predicts, usually the satisfaction of `V`.
    pub predicted: S,
    /// Committee favored by adversarial tie-breaking.
    pub target: Committee,
    /// Further named committees of interest.
    pub committees: Vec<(&'static str, Committee)>,
}

impl<S: Scalar> InstanceSpec<S> {
    /// Tie-breaking towards [`InstanceSpec::target`].
    pub fn tie_break(&self) -> TieBreak {
        TieBreak::Adversarial(self.target.clone())
    }

    /// Looks up a named parameter.
    pub fn param(&self, name: &str) -> Option<&S> {
        self.params.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }

    /// Looks up a named committee.
    pub fn committee(&self, name: &str) -> Option<&Committee> {
        self.committees
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, c)| c)
    }

    /// Human-readable summary, one `key=value` per line.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "family={}\nk={}\nl={}\nn={}\nm={}\npredicted={}\ntarget={}\nV={}",
            self.family, self.k, self.ell, self.n, self.m, self.predicted, self.target, self.voters
        );
        for (name, v) in &self.params {
            out.push_str(&format!("\n{name}={v}"));
        }
        for (name, c) in &self.committees {
            out.push_str(&format!("\n{name}={c}"));
        }
        out
    }
}

fn q(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

fn conv<S: Scalar>(r: &BigRational) -> S {
    S::from_rational(r)
}

/// Party-list profile: party `i` approves its own block of
/// `candidates_per_party` consecutive candidates.
pub fn gen_party_list<S: Scalar>(
    party_weights: &[S],
    candidates_per_party: usize,
) -> Result<ApprovalProfile<S>> {
    if party_weights.is_empty() || candidates_per_party == 0 {
        return Err(Error::InvalidInput(
            "need at least one party and one candidate per party".into(),
        ));
    }
    let groups = party_weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let lo = i * candidates_per_party + 1;
            Group::new(w.clone(), lo..lo + candidates_per_party)
        })
        .collect();
    ApprovalProfile::from_groups_unmerged(party_weights.len() * candidates_per_party, groups)
}

/// Hard instance for Phragmén's sequential rule with `ℓ < k/2` and `ℓ | k`.
///
/// Candidates are `b_i = i`, `c_i = k + i` and `d_j = 2k + j`. With
/// `x = 2(k − ℓ)/ℓ − 1`, `L = lcm(ℓ, x, k)` and `n = Lk/ℓ`:
///
/// * `V` consists of `x` segments of weight `L/x`; segment `s` approves all
///   `d_j` and every `b_i` with `i ≡ s (mod x)`;
/// * a block of weight `n − 2L` approves every `b_i`;
/// * the last `L` voters form `x` segments of weight `L/x`; the `j`-th from
///   the end approves `b_1, …, b_{j−1}` and every `c_i`.
pub fn gen_phragmen_hard<S: Scalar>(
    ell: usize,
    k: usize,
) -> Result<(ApprovalProfile<S>, InstanceSpec<S>)> {
    if ell == 0 || 2 * ell >= k || !k.is_multiple_of(ell) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= ℓ < k/2 with ℓ dividing k, got ℓ={ell}, k={k}"
        )));
    }
    let x = 2 * k / ell - 3;
    let big_l = ell.lcm(&x).lcm(&k);
    let n = big_l * k / ell;
    let seg = BigRational::new(big_l.into(), x.into());
    let b = |i: usize| i;
    let c = |i: usize| k + i;
    let d = |j: usize| 2 * k + j;
    let mut groups = Vec::new();
    for s in 1..=x {
        let mut set: BTreeSet<usize> = (1..=ell).map(d).collect();
        set.extend((1..=k).filter(|i| (i - 1) % x + 1 == s).map(b));
        groups.push(Group::new(seg.clone(), set));
    }
    groups.push(Group::new(q(n - 2 * big_l), (1..=k).map(b)));
    for j in 1..=x {
        let mut set: BTreeSet<usize> = (1..j).map(b).collect();
        set.extend((1..=k).map(c));
        groups.push(Group::new(seg.clone(), set));
    }
    let p = ApprovalProfile::new(2 * k + ell, groups)?.convert::<S>();
    let voters = VoterGroup::whole(&p, &p.approver_groups(d(1)))?;
    let predicted = BigRational::new(
        (ell * (2 * k - 2 * ell + 2)).into(),
        (2 * (2 * k - 3 * ell)).into(),
    );
    let t = BigRational::new(k.into(), (k - ell).into());
    let spec = InstanceSpec {
        family: "phragmen-hard",
        params: vec![
            ("x", S::from_usize(x)),
            ("L", S::from_usize(big_l)),
            ("t", conv(&t)),
        ],
        k,
        ell,
        n: S::from_usize(n),
        m: 2 * k + ell,
        voters,
        predicted: conv(&predicted),
        target: Committee::range(1, 2 * k),
        committees: vec![
            ("B", Committee::range(1, k)),
            ("C", Committee::range(k + 1, 2 * k)),
        ],
    };
    Ok((p, spec))
}

/// Instance on which Phragmén's maximal rule may ignore a cohesive group.
///
/// `k` blocks `N_i` of `voters_per_block` voters approve the common
/// committee `W1 = {1..k}` and their own candidate `c_i = k + i`; the
/// committee `W2 = {k+1..2k}` balances the load as well as `W1` does. The
/// designated group is `N_1 ∪ N_2`.
pub fn gen_maxphragmen_tie<S: Scalar>(
    k: usize,
    voters_per_block: usize,
) -> Result<(ApprovalProfile<S>, InstanceSpec<S>)> {
    if k < 2 || voters_per_block == 0 {
        return Err(Error::InvalidInput(format!(
            "need k >= 2 and a positive block size, got k={k}, block={voters_per_block}"
        )));
    }
    let groups = (1..=k)
        .map(|i| {
            let mut set: BTreeSet<usize> = (1..=k).collect();
            set.insert(k + i);
            Group::new(S::from_usize(voters_per_block), set)
        })
        .collect();
    let p = ApprovalProfile::new(2 * k, groups)?;
    let voters = VoterGroup::whole(&p, &[0, 1])?;
    let w2 = Committee::range(k + 1, 2 * k);
    let spec = InstanceSpec {
        family: "maxphragmen-tie",
        params: vec![("block", S::from_usize(voters_per_block))],
        k,
        ell: 2,
        n: S::from_usize(k * voters_per_block),
        m: 2 * k,
        voters,
        predicted: S::one(),
        target: w2.clone(),
        committees: vec![("W1", Committee::range(1, k)), ("W2", w2)],
    };
    Ok((p, spec))
}

/// `r mod t` for `t > 0`, in `[0, t)`.
fn rem(r: &BigRational, t: &BigRational) -> BigRational {
    r - t * (r / t).floor()
}

/// Splits a circle of circumference `total` into atoms by the endpoints of
/// `count` consecutive arcs of length `len` starting at 0. Returns each atom
/// as `(weight, arcs covering it)`, arcs numbered from 1.
fn cyclic_atoms(
    total: &BigRational,
    len: &BigRational,
    count: usize,
) -> Vec<(BigRational, Vec<usize>)> {
    let full = len >= total;
    let mut cuts: BTreeSet<BigRational> = BTreeSet::new();
    cuts.insert(BigRational::zero());
    if !full {
        for i in 0..count {
            let start = len * q(i);
            cuts.insert(rem(&start, total));
            cuts.insert(rem(&(start + len), total));
        }
    }
    let cuts: Vec<BigRational> = cuts.into_iter().collect();
    let two = q(2);
    (0..cuts.len())
        .map(|j| {
            let lo = &cuts[j];
            let hi = cuts.get(j + 1).cloned().unwrap_or_else(|| total.clone());
            let mid = (lo + &hi) / &two;
            let arcs = (1..=count)
                .filter(|&i| full || rem(&(&mid - len * q(i - 1)), total) < *len)
                .collect();
            (hi - lo, arcs)
        })
        .collect()
}

/// `argmax_{i ∈ [k]} i·λ(i + 1)`, smallest on ties.
fn best_scaled_index(lambda: &LambdaWeights, k: usize) -> usize {
    let mut best = (1, f64::NEG_INFINITY);
    for i in 1..=k {
        let v = i as f64 * lambda.eval(i as f64 + 1.0);
        if v > best.1 + 1e-12 {
            best = (i, v);
        }
    }
    best.0
}

/// Witness for the upper bound on convex λ-Thiele rules.
///
/// Candidates `b_i = i` are approved by all of `V`, `|V| = nℓ/k`. Candidate
/// `d_i = k + i` is approved by the `i`-th consecutive arc of length
/// `|V|x/k` around `V` and the `i`-th arc of length `|V′|y/k` around the
/// rest `V′`, where `x` is [`thiele_upper`] (rationalized) and `y`
/// maximizes `i·λ(i + 1)`. One unit of weight then stops approving `d_k`,
/// taken from the first atoms of `V` that approve it.
pub fn gen_thiele_upper_witness<S: Scalar>(
    lambda: &LambdaWeights,
    ell: usize,
    k: usize,
    n: usize,
) -> Result<(ApprovalProfile<S>, InstanceSpec<S>)> {
    if ell == 0 || ell > k || n == 0 || !n.is_multiple_of(k * k) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= ℓ <= k and n divisible by k², got ℓ={ell}, k={k}, n={n}"
        )));
    }
    let upper = thiele_upper(lambda, ell, k)?;
    let x = rationalize(upper.value, PARAM_DENOMINATOR)
        .ok_or_else(|| Error::InvalidInput("bound is not finite".into()))?;
    let y = best_scaled_index(lambda, k);
    let v_size = q(n * ell / k);
    let rest = q(n) - &v_size;
    let kq = q(k);
    let mut atoms: Vec<(BigRational, BTreeSet<usize>)> = Vec::new();
    for (w, arcs) in cyclic_atoms(&v_size, &(&v_size * &x / &kq), k) {
        let mut set: BTreeSet<usize> = (1..=k).collect();
        set.extend(arcs.into_iter().map(|i| k + i));
        atoms.push((w, set));
    }
    if rest > BigRational::zero() {
        for (w, arcs) in cyclic_atoms(&rest, &(&rest * q(y) / &kq), k) {
            atoms.push((w, arcs.into_iter().map(|i| k + i).collect()));
        }
    }
    let mut left = BigRational::one();
    let mut split = Vec::new();
    for (w, set) in atoms.iter_mut() {
        if left <= BigRational::zero() {
            break;
        }
        if !set.contains(&(2 * k)) {
            continue;
        }
        let take = if *w < left { w.clone() } else { left.clone() };
        left -= &take;
        *w -= &take;
        let mut reduced = set.clone();
        reduced.remove(&(2 * k));
        split.push((take, reduced));
    }
    if left > BigRational::zero() {
        return Err(Error::InvalidInput(
            "fewer than one voter approves the last candidate".into(),
        ));
    }
    let groups: Vec<Group<BigRational>> = atoms
        .into_iter()
        .chain(split)
        .filter(|(w, _)| *w > BigRational::zero())
        .map(|(w, set)| Group::new(w, set))
        .collect();
    let p = ApprovalProfile::new(2 * k, groups)?.convert::<S>();
    let voters = VoterGroup::whole(&p, &p.approver_groups(1))?;
    let spec = InstanceSpec {
        family: "thiele-upper",
        params: vec![
            ("x", conv(&x)),
            ("y", S::from_usize(y)),
            ("V", conv(&v_size)),
            ("V'", conv(&rest)),
        ],
        k,
        ell,
        n: S::from_usize(n),
        m: 2 * k,
        voters,
        predicted: conv(&x),
        target: Committee::range(k + 1, 2 * k),
        committees: vec![
            ("B", Committee::range(1, k)),
            ("D", Committee::range(k + 1, 2 * k)),
        ],
    };
    Ok((p, spec))
}

/// Witness for the efficiency upper bound of convex λ-Thiele rules.
///
/// `V` approves `B = {1..k}`; `k` disjoint blocks of `voters_per_d_block`
/// voters approve one `d_i = k + i` each, and `|V|·kα = n − |V|` with `α`
/// from [`thiele_efficiency_upper`] (rationalized).
pub fn gen_efficiency_witness<S: Scalar>(
    lambda: &LambdaWeights,
    k: usize,
    voters_per_d_block: usize,
) -> Result<(ApprovalProfile<S>, InstanceSpec<S>)> {
    if k == 0 || voters_per_d_block == 0 {
        return Err(Error::InvalidInput(
            "k and the block size must be positive".into(),
        ));
    }
    let report = thiele_efficiency_upper(lambda, k)?;
    let alpha = rationalize(report.alpha, PARAM_DENOMINATOR)
        .filter(|a| *a > BigRational::zero())
        .ok_or_else(|| Error::InvalidInput(format!("unusable α={}", report.alpha)))?;
    let block = q(voters_per_d_block);
    let v_size = &block / &alpha;
    let mut groups = vec![Group::new(v_size.clone(), 1..=k)];
    groups.extend((1..=k).map(|i| Group::new(block.clone(), [k + i])));
    let p = ApprovalProfile::new(2 * k, groups)?.convert::<S>();
    let voters = VoterGroup::whole(&p, &[0])?;
    let n = &v_size + &block * q(k);
    let predicted = q(2) * &alpha - &alpha * &alpha;
    let spec = InstanceSpec {
        family: "efficiency",
        params: vec![("alpha", conv(&alpha)), ("V", conv(&v_size))],
        k,
        ell: 0,
        n: conv(&n),
        m: 2 * k,
        voters,
        predicted: conv(&predicted),
        target: Committee::range(k + 1, 2 * k),
        committees: vec![
            ("B", Committee::range(1, k)),
            ("D", Committee::range(k + 1, 2 * k)),
        ],
    };
    Ok((p, spec))
}

/// Amplifies a near-maximal Sequential PAV profile.
///
/// The result holds `L` disjoint copies of `base`, copy `j` using candidates
/// `j·m + 1..(j+1)·m`, plus a group of weight `y = L·n·ℓ/(L·k − ℓ)`
/// approving `ℓ` fresh candidates. It is meant for committee size `L·k`, and
/// the fresh group is exactly `ℓ`-large there. The prediction is
/// `ℓ/(k·Δ)` with `Δ` the last-step gain of `base` under ties towards
/// `{1..k}`.
pub fn gen_seqpav_hard<S: Scalar>(
    base: &ApprovalProfile<S>,
    k: usize,
    copies: usize,
    ell: usize,
) -> Result<(ApprovalProfile<S>, InstanceSpec<S>)> {
    if k == 0 || copies == 0 || ell == 0 || copies * k <= ell {
        return Err(Error::InvalidInput(format!(
            "need positive k, L and ℓ with L·k > ℓ, got k={k}, L={copies}, ℓ={ell}"
        )));
    }
    let n = base.require_voters()?;
    let m = base.num_candidates();
    let delta = seqpav_delta(
        base,
        k,
        &TieBreak::Adversarial(Committee::range(1, k.min(m))),
        false,
        DEFAULT_BUDGET,
    )?;
    let mut groups = Vec::with_capacity(copies * base.groups().len() + 1);
    for j in 0..copies {
        for g in base.groups() {
            groups.push(Group::new(
                g.weight.clone(),
                g.approvals.iter().map(|c| c + j * m),
            ));
        }
    }
    let y =
        S::from_usize(copies) * n.clone() * S::from_usize(ell) / S::from_usize(copies * k - ell);
    groups.push(Group::new(y.clone(), copies * m + 1..=copies * m + ell));
    let p = ApprovalProfile::from_groups_unmerged(copies * m + ell, groups)?;
    let fresh = p.groups().len() - 1;
    let voters = VoterGroup::whole(&p, &[fresh])?;
    let predicted = if delta > S::zero() {
        S::from_usize(ell) / (S::from_usize(k) * delta.clone())
    } else {
        S::zero()
    };
    let spec = InstanceSpec {
        family: "seqpav-hard",
        params: vec![
            ("L", S::from_usize(copies)),
            ("y", y.clone()),
            ("delta", delta),
        ],
        k: copies * k,
        ell,
        n: S::from_usize(copies) * n + y,
        m: copies * m + ell,
        voters,
        predicted,
        target: Committee::range(1, copies * m),
        committees: Vec::new(),
    };
    Ok((p, spec))
}
