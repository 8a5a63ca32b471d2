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

//! Dense two-phase primal simplex over any [`Scalar`].
//!
//! Entering columns follow Dantzig's rule. After a run of degenerate pivots
//! the solver switches to Bland's rule until the objective moves again, and
//! the ratio test always breaks ties by the smallest basic index, so the
//! method terminates and is deterministic.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

use super::{LpProblem, LpSolution, LpStatus, Relation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 50;

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    z: Vec<S>,
    basis: Vec<usize>,
    ncols: usize,
    banned: Vec<bool>,
    tol: S,
    iterations: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self, r: usize) -> &S {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let width = self.ncols + 1;
        let inv = S::one() / self.rows[r][e].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() * inv.clone();
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..width).filter(|&j| !pivot_row[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<S>| {
            let f = row[e].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
            }
            row[e] = S::zero();
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.z);
        self.basis[r] = e;
        self.iterations += 1;
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let neg_tol = -self.tol.clone();
        let mut best: Option<usize> = None;
        for j in 0..self.ncols {
            if self.banned[j] || !(self.z[j] < neg_tol) {
                continue;
            }
            if bland {
                return Some(j);
            }
            match best {
                Some(b) if !(self.z[j] < self.z[b]) => {}
                _ => best = Some(j),
            }
        }
        best
    }

    fn leaving(&self, e: usize) -> Option<usize> {
        let mut best: Option<(usize, S)> = None;
        for r in 0..self.rows.len() {
            let a = &self.rows[r][e];
            if !(a > &self.tol) {
                continue;
            }
            let ratio = self.rhs(r).clone() / a.clone();
            best = match best {
                None => Some((r, ratio)),
                Some((br, bv)) => {
                    if ratio.ties(&bv) {
                        if self.basis[r] < self.basis[br] {
                            Some((r, ratio))
                        } else {
                            Some((br, bv))
                        }
                    } else if ratio < bv {
                        Some((r, ratio))
                    } else {
                        Some((br, bv))
                    }
                }
            };
        }
        best.map(|(r, _)| r)
    }

    fn run(&mut self, max_iter: usize) -> Result<Outcome> {
        let mut streak = 0usize;
        loop {
            if self.iterations > max_iter {
                return Err(Error::Solver(format!(
                    "simplex did not converge in {max_iter} pivots"
                )));
            }
            let bland = streak >= DEGENERATE_STREAK;
            let Some(e) = self.entering(bland) else {
                return Ok(Outcome::Optimal);
            };
            let Some(r) = self.leaving(e) else {
                return Ok(Outcome::Unbounded);
            };
            if self.rhs(r).ties(&S::zero()) {
                streak += 1;
            } else {
                streak = 0;
            }
            self.pivot(r, e);
            if !S::EXACT {
                let n = self.ncols;
                for row in self.rows.iter_mut() {
                    if row[n] < S::zero() && row[n].ties(&S::zero()) {
                        row[n] = S::zero();
                    }
                }
            }
        }
    }

    fn set_objective(&mut self, cost: &[S]) {
        let width = self.ncols + 1;
        let mut z = vec![S::zero(); width];
        for (j, c) in cost.iter().enumerate() {
            z[j] = -c.clone();
        }
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = cost[b].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                if !self.rows[r][j].is_zero() {
                    z[j] = z[j].clone() + cb.clone() * self.rows[r][j].clone();
                }
            }
        }
        self.z = z;
    }
}

/// Solves `prob` (maximization, all variables non-negative).
pub fn solve_dense<S: Scalar>(prob: &LpProblem<S>) -> Result<LpSolution<S>> {
    let nvars = prob.variables.len();
    let m = prob.constraints.len();

    // Normalize every row to a non-negative right-hand side. Rows of the form
    // `a x >= 0` become `-a x <= 0` so that a slack can start in the basis.
    let mut rows_a: Vec<Vec<(usize, S)>> = Vec::with_capacity(m);
    let mut rel: Vec<Relation> = Vec::with_capacity(m);
    let mut rhs: Vec<S> = Vec::with_capacity(m);
    for c in &prob.constraints {
        let mut terms = c.terms.clone();
        let mut b = c.rhs.clone();
        let mut r = c.relation;
        if b < S::zero() || (b.is_zero() && r == Relation::Ge) {
            for t in terms.iter_mut() {
                t.1 = -t.1.clone();
            }
            b = -b;
            r = match r {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        rows_a.push(terms);
        rel.push(r);
        rhs.push(b);
    }

    let n_slack = rel.iter().filter(|r| **r != Relation::Eq).count();
    let n_art = rel.iter().filter(|r| **r != Relation::Le).count();
    let ncols = nvars + n_slack + n_art;
    let mut rows = vec![vec![S::zero(); ncols + 1]; m];
    let mut basis = vec![0usize; m];
    let mut is_art = vec![false; ncols];
    let (mut next_slack, mut next_art) = (nvars, nvars + n_slack);
    for r in 0..m {
        for (j, v) in &rows_a[r] {
            rows[r][*j] = rows[r][*j].clone() + v.clone();
        }
        rows[r][ncols] = rhs[r].clone();
        match rel[r] {
            Relation::Le => {
                rows[r][next_slack] = S::one();
                basis[r] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                rows[r][next_slack] = -S::one();
                next_slack += 1;
                rows[r][next_art] = S::one();
                basis[r] = next_art;
                is_art[next_art] = true;
                next_art += 1;
            }
            Relation::Eq => {
                rows[r][next_art] = S::one();
                basis[r] = next_art;
                is_art[next_art] = true;
                next_art += 1;
            }
        }
    }

    let mut t = Tableau {
        rows,
        z: Vec::new(),
        basis,
        ncols,
        banned: vec![false; ncols],
        tol: S::tolerance(),
        iterations: 0,
    };
    let max_iter = 100 * (m + ncols) + 1000;

    if n_art > 0 {
        let cost: Vec<S> = is_art
            .iter()
            .map(|&a| if a { -S::one() } else { S::zero() })
            .collect();
        t.set_objective(&cost);
        t.run(max_iter)?;
        let infeas = -t.z[ncols].clone();
        if infeas.beats(&S::zero()) {
            return Ok(LpSolution::status_only(LpStatus::Infeasible, t.iterations));
        }
        // Drive remaining zero-level artificials out of the basis.
        for r in 0..m {
            if !is_art[t.basis[r]] {
                continue;
            }
            let col = (0..ncols).find(|&j| !is_art[j] && !t.rows[r][j].ties(&S::zero()));
            if let Some(j) = col {
                t.pivot(r, j);
            }
        }
        for (j, a) in is_art.iter().enumerate() {
            t.banned[j] = *a;
        }
    }

    let mut cost = vec![S::zero(); ncols];
    for (j, c) in &prob.objective {
        cost[*j] = cost[*j].clone() + c.clone();
    }
    t.set_objective(&cost);
    match t.run(max_iter)? {
        Outcome::Unbounded => Ok(LpSolution::status_only(LpStatus::Unbounded, t.iterations)),
        Outcome::Optimal => {
            let mut values = vec![S::zero(); nvars];
            for (r, &b) in t.basis.iter().enumerate() {
                if b < nvars {
                    values[b] = t.rows[r][ncols].clone();
                }
            }
            let objective = prob.objective.iter().fold(S::zero(), |acc, (j, c)| {
                acc + c.clone() * values[*j].clone()
            });
            Ok(LpSolution {
                status: LpStatus::Optimal,
                objective,
                values,
                iterations: t.iterations,
            })
        }
    }
}
