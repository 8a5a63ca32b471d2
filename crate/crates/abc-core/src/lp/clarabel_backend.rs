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

//! Interior-point backend for large sparse problems.

use super::{LpProblem, LpStatus, Relation};
use crate::error::{Error, Result};
use clarabel::algebra::CscMatrix;
use clarabel::solver::{
    DefaultSettingsBuilder, DefaultSolver, IPSolver, NonnegativeConeT, SolverStatus, ZeroConeT,
};

pub(crate) struct FloatSolution {
    pub status: LpStatus,
    pub objective: f64,
    pub values: Vec<f64>,
    pub iterations: usize,
}

/// Solves `prob` as `min -c·x` subject to `A x + s = b`, with `s` in the
/// zero cone for equalities and in the non-negative cone otherwise.
pub(crate) fn solve(prob: &LpProblem<f64>) -> Result<FloatSolution> {
    let n = prob.variables.len();
    let mut eq_rows: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();
    let mut ineq_rows: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();
    for c in &prob.constraints {
        match c.relation {
            Relation::Eq => eq_rows.push((c.terms.clone(), c.rhs)),
            Relation::Le => ineq_rows.push((c.terms.clone(), c.rhs)),
            Relation::Ge => {
                ineq_rows.push((c.terms.iter().map(|(j, v)| (*j, -v)).collect(), -c.rhs))
            }
        }
    }
    for j in 0..n {
        ineq_rows.push((vec![(j, -1.0)], 0.0));
    }
    let n_eq = eq_rows.len();
    let rows: Vec<(Vec<(usize, f64)>, f64)> = eq_rows.into_iter().chain(ineq_rows).collect();
    let m = rows.len();

    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (r, (terms, _)) in rows.iter().enumerate() {
        for &(j, v) in terms {
            cols[j].push((r, v));
        }
    }
    let mut colptr = Vec::with_capacity(n + 1);
    let mut rowval = Vec::new();
    let mut nzval = Vec::new();
    colptr.push(0);
    for col in &mut cols {
        col.sort_by_key(|e| e.0);
        for &(r, v) in col.iter() {
            rowval.push(r);
            nzval.push(v);
        }
        colptr.push(rowval.len());
    }
    let a = CscMatrix::new(m, n, colptr, rowval, nzval);
    let b: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let mut q = vec![0.0; n];
    for &(j, v) in &prob.objective {
        q[j] -= v;
    }
    let p = CscMatrix::<f64>::zeros((n, n));
    let mut cones = Vec::new();
    if n_eq > 0 {
        cones.push(ZeroConeT(n_eq));
    }
    if m > n_eq {
        cones.push(NonnegativeConeT(m - n_eq));
    }
    let settings = DefaultSettingsBuilder::default()
        .verbose(false)
        .tol_gap_abs(1e-10)
        .tol_gap_rel(1e-10)
        .tol_feas(1e-10)
        .max_iter(500)
        .build()
        .map_err(|e| Error::Solver(format!("{e:?}")))?;
    let mut solver = DefaultSolver::new(&p, &q, &a, &b, &cones, settings)
        .map_err(|e| Error::Solver(format!("{e:?}")))?;
    solver.solve();
    let sol = &solver.solution;
    let iterations = sol.iterations as usize;
    let status = match sol.status {
        SolverStatus::Solved | SolverStatus::AlmostSolved => LpStatus::Optimal,
        SolverStatus::PrimalInfeasible | SolverStatus::AlmostPrimalInfeasible => {
            LpStatus::Infeasible
        }
        SolverStatus::DualInfeasible | SolverStatus::AlmostDualInfeasible => LpStatus::Unbounded,
        other => return Err(Error::Solver(format!("interior point stopped: {other:?}"))),
    };
    if status != LpStatus::Optimal {
        return Ok(FloatSolution {
            status,
            objective: 0.0,
            values: Vec::new(),
            iterations,
        });
    }
    let values: Vec<f64> = sol.x.iter().map(|v| v.max(0.0)).collect();
    let objective = prob.objective.iter().map(|(j, c)| c * values[*j]).sum();
    Ok(FloatSolution {
        status,
        objective,
        values,
        iterations,
    })
}
