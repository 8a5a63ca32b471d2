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

//! Column generation for the relaxed LP.
//!
//! Every feasible flow of the relaxed LP splits into paths. A path is a set
//! `T ⊆ [k]` of steps at which a voter class with `|T|` approvals gains a
//! representative. Writing `p_j = |T ∩ [j]|` and `i = |T|`, path `T`
//! contributes
//!
//! * `g_j(T) = 1[j ∈ T]/p_j − (i − p_{j−1}) / ((p_{j−1} + 1)(k − j + 1))` to
//!   the pigeonhole row of step `j`, and
//! * `k/i` to the objective when `k ∈ T`.
//!
//! The master problem maximizes `Σ obj_T x_T` subject to `Σ_T g_j(T) x_T >= 0`
//! for every step and `Σ x_T = 1`. New columns are priced by a backward
//! dynamic program over (selected so far, still to select) states.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use std::collections::HashSet;

/// Optimum of the path-form relaxed LP.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSolution {
    /// Committee size.
    pub k: usize,
    /// Optimal objective, an upper bound on `h(k)`.
    pub h: f64,
    /// Paths with positive weight and their weights.
    pub paths: Vec<(Vec<usize>, f64)>,
    /// Columns generated in total.
    pub columns: usize,
    /// Pricing rounds.
    pub rounds: usize,
}

const TOL: f64 = 1e-9;
const REFACTOR_EVERY: usize = 100;
const DEGENERATE_STREAK: usize = 50;

fn path_column(k: usize, t: &[usize]) -> (f64, Vec<f64>) {
    let i = t.len();
    let mut a = vec![0.0; k + 1];
    let mut p = 0usize;
    let mut it = t.iter().peekable();
    for j in 1..=k {
        let rem = (i - p) as f64 / ((p + 1) as f64 * (k - j + 1) as f64);
        if it.peek() == Some(&&j) {
            it.next();
            p += 1;
            a[j - 1] = 1.0 / p as f64 - rem;
        } else {
            a[j - 1] = -rem;
        }
    }
    a[k] = 1.0;
    let obj = if t.last() == Some(&k) {
        k as f64 / i as f64
    } else {
        0.0
    };
    (obj, a)
}

/// Best path for every size `i`, with its reduced cost, under duals `y`
/// (pigeonhole rows, non-negative) and `mu` (convexity row).
fn price(k: usize, y: &[f64], mu: f64) -> Vec<(f64, Vec<usize>)> {
    const NEG: f64 = f64::NEG_INFINITY;
    let w = k + 2;
    // v[p * w + r]: best completion value entering step j with p selected
    // and r still to select.
    let mut v = vec![NEG; w * w];
    for p in 0..w {
        v[p * w] = 0.0;
    }
    let mut take = vec![vec![false; w * w]; k + 1];
    for j in (1..=k).rev() {
        let mut next = vec![NEG; w * w];
        for p in 0..j {
            for r in 0..=(k - j + 1) {
                let rem = r as f64 / ((p + 1) as f64 * (k - j + 1) as f64);
                let skip = if r <= k - j {
                    v[p * w + r] - y[j - 1] * rem
                } else {
                    NEG
                };
                let mut pick = NEG;
                if r >= 1 {
                    let gain = 1.0 / (p + 1) as f64;
                    pick = v[(p + 1) * w + r - 1] + y[j - 1] * (gain - rem);
                    if j == k {
                        pick += k as f64 * gain;
                    }
                }
                if pick > skip {
                    next[p * w + r] = pick;
                    take[j][p * w + r] = true;
                } else {
                    next[p * w + r] = skip;
                }
            }
        }
        v = next;
    }
    let mut out = Vec::new();
    for r in 1..=k {
        let val = v[r] - mu;
        if val > TOL {
            let (mut p, mut rr) = (0usize, r);
            let mut t = Vec::with_capacity(r);
            for j in 1..=k {
                if take[j][p * w + rr] {
                    t.push(j);
                    p += 1;
                    rr -= 1;
                }
            }
            out.push((val, t));
        }
    }
    out
}

fn invert(m: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("non-empty");
        if a[piv][col].abs() < 1e-13 {
            return Err(Error::Solver("singular basis".into()));
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col];
        for j in 0..n {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col];
                for j in 0..n {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
    }
    Ok(inv)
}

struct Master {
    k: usize,
    cost: Vec<f64>,
    cols: Vec<Vec<f64>>,
    paths: Vec<Vec<usize>>,
    seen: HashSet<Vec<usize>>,
    basis: Vec<usize>,
    binv: Vec<Vec<f64>>,
    xb: Vec<f64>,
    since_refactor: usize,
}

impl Master {
    fn new(k: usize) -> Self {
        let mut m = Master {
            k,
            cost: Vec::new(),
            cols: Vec::new(),
            paths: Vec::new(),
            seen: HashSet::new(),
            basis: Vec::new(),
            binv: Vec::new(),
            xb: Vec::new(),
            since_refactor: 0,
        };
        for j in 0..k {
            let mut a = vec![0.0; k + 1];
            a[j] = -1.0;
            m.cost.push(0.0);
            m.cols.push(a);
            m.paths.push(Vec::new());
        }
        // `[k]` has all pigeonhole coefficients zero, so it and the slacks
        // form a feasible starting basis.
        m.add_path((1..=k).collect());
        for i in 1..k {
            m.add_path(((k - i + 1)..=k).collect());
            m.add_path((1..=i).collect());
        }
        m.basis = (0..=k).collect();
        m.binv = (0..=k)
            .map(|i| {
                (0..=k)
                    .map(|j| {
                        if i != j {
                            0.0
                        } else if i < k {
                            -1.0
                        } else {
                            1.0
                        }
                    })
                    .collect()
            })
            .collect();
        m.xb = vec![0.0; k + 1];
        m.xb[k] = 1.0;
        m
    }

    fn add_path(&mut self, t: Vec<usize>) -> bool {
        if !self.seen.insert(t.clone()) {
            return false;
        }
        let (obj, a) = path_column(self.k, &t);
        self.cost.push(obj);
        self.cols.push(a);
        self.paths.push(t);
        true
    }

    fn duals(&self) -> Vec<f64> {
        let n = self.k + 1;
        let mut pi = vec![0.0; n];
        for (r, &b) in self.basis.iter().enumerate() {
            let c = self.cost[b];
            if c != 0.0 {
                for i in 0..n {
                    pi[i] += c * self.binv[r][i];
                }
            }
        }
        pi
    }

    fn refactor(&mut self) -> Result<()> {
        let n = self.k + 1;
        let b: Vec<Vec<f64>> = (0..n)
            .map(|i| self.basis.iter().map(|&c| self.cols[c][i]).collect())
            .collect();
        self.binv = invert(&b)?;
        self.xb = (0..n).map(|r| self.binv[r][self.k]).collect();
        for x in self.xb.iter_mut() {
            if *x < 0.0 && *x > -TOL {
                *x = 0.0;
            }
        }
        self.since_refactor = 0;
        Ok(())
    }

    /// Primal simplex over the current pool; returns once no pool column
    /// has a positive reduced cost.
    fn optimize_pool(&mut self) -> Result<()> {
        let n = self.k + 1;
        let mut streak = 0usize;
        let mut in_basis = vec![false; self.cols.len()];
        for &b in &self.basis {
            in_basis[b] = true;
        }
        let max_pivots = 200 * self.cols.len() + 10_000;
        for _ in 0..max_pivots {
            let pi = self.duals();
            let bland = streak >= DEGENERATE_STREAK;
            let mut enter: Option<(usize, f64)> = None;
            for c in 0..self.cols.len() {
                if in_basis[c] {
                    continue;
                }
                let d = self.cost[c]
                    - pi.iter()
                        .zip(&self.cols[c])
                        .map(|(p, a)| p * a)
                        .sum::<f64>();
                if d > TOL {
                    if bland {
                        enter = Some((c, d));
                        break;
                    }
                    if enter.is_none_or(|(_, bd)| d > bd) {
                        enter = Some((c, d));
                    }
                }
            }
            let Some((e, _)) = enter else {
                return Ok(());
            };
            let u: Vec<f64> = (0..n)
                .map(|r| (0..n).map(|i| self.binv[r][i] * self.cols[e][i]).sum())
                .collect();
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..n {
                if u[r] > TOL {
                    let ratio = self.xb[r] / u[r];
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((br, bv)) if (ratio - bv).abs() <= TOL => {
                            if self.basis[r] < self.basis[br] {
                                Some((r, ratio))
                            } else {
                                Some((br, bv))
                            }
                        }
                        Some((_, bv)) if ratio < bv => Some((r, ratio)),
                        keep => keep,
                    };
                }
            }
            let Some((r, ratio)) = leave else {
                return Err(Error::Solver("relaxed master problem is unbounded".into()));
            };
            streak = if ratio <= TOL { streak + 1 } else { 0 };
            let ur = u[r];
            for j in 0..n {
                self.binv[r][j] /= ur;
            }
            self.xb[r] /= ur;
            for i in 0..n {
                if i != r && u[i] != 0.0 {
                    let f = u[i];
                    for j in 0..n {
                        self.binv[i][j] -= f * self.binv[r][j];
                    }
                    self.xb[i] -= f * self.xb[r];
                }
            }
            in_basis[self.basis[r]] = false;
            in_basis[e] = true;
            self.basis[r] = e;
            self.since_refactor += 1;
            if self.since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
            }
        }
        Err(Error::Solver(
            "relaxed master problem did not converge".into(),
        ))
    }
}

/// Solves the relaxed LP in path form.
pub fn solve_relaxed_paths(k: usize) -> Result<PathSolution> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let mut master = Master::new(k);
    let mut rounds = 0usize;
    loop {
        master.optimize_pool()?;
        rounds += 1;
        let pi = master.duals();
        let y: Vec<f64> = pi[..k].iter().map(|p| -p).collect();
        let candidates = price(k, &y, pi[k]);
        let mut added = false;
        for (_, t) in candidates {
            added |= master.add_path(t);
        }
        if !added {
            break;
        }
        if rounds > 100 * k + 100 {
            return Err(Error::Solver("column generation did not converge".into()));
        }
    }
    master.refactor()?;
    let h: f64 = master
        .basis
        .iter()
        .zip(&master.xb)
        .map(|(&b, x)| master.cost[b] * x)
        .sum();
    let paths = master
        .basis
        .iter()
        .zip(&master.xb)
        .filter(|(&b, &x)| b >= k && x > TOL)
        .map(|(&b, &x)| (master.paths[b].clone(), x))
        .collect();
    Ok(PathSolution {
        k,
        h,
        paths,
        columns: master.cols.len() - k,
        rounds,
    })
}
