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

//! Linear programs that bound the proportionality of Sequential PAV.
//!
//! * [`build_exact_lp`]: one variable per approval set `T ⊆ [k]`; its
//!   optimum is `h(k) = k·Δ(k)`, the supremal normalized last-step gain.
//! * [`build_relaxed_lp`]: a polynomial-size flow relaxation whose optimum
//!   bounds `h(k)` from above.
//! * [`build_abstract_f_lp`]: the same question for an abstract set
//!   function `f` with the marginal-contribution property, optionally
//!   submodular.
//!
//! [`solve_lp`] dispatches to a dense simplex (exact or `f64`) or to the
//! Clarabel interior-point solver for large sparse problems. The relaxed LP
//! is solved by column generation over its path decomposition, which scales
//! to `k` in the hundreds.

mod builders;
mod clarabel_backend;
mod colgen;
mod simplex;

pub use builders::{
    build_abstract_f_lp, build_exact_lp, build_relaxed_lp, h_seqpav, lp_to_profile, HMethod,
    HReport, ABSTRACT_F_LIMIT, EXACT_LIMIT, RELAXED_LIMIT,
};
pub use colgen::{solve_relaxed_paths, PathSolution};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::fmt::Write;

/// Constraint relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `<=`
    Le,
    /// `=`
    Eq,
    /// `>=`
    Ge,
}

/// One linear constraint `Σ coef·x (rel) rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<S> {
    /// Label used in the LP text export.
    pub name: String,
    /// `(variable index, coefficient)` pairs.
    pub terms: Vec<(usize, S)>,
    /// Relation.
    pub relation: Relation,
    /// Right-hand side.
    pub rhs: S,
}

/// A maximization problem over non-negative variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem<S> {
    /// Builder tag, e.g. `exact`.
    pub tag: String,
    /// Committee size the builder was called with.
    pub k: usize,
    /// Variable names; every variable is bounded below by zero.
    pub variables: Vec<String>,
    /// Objective `(variable index, coefficient)` pairs, maximized.
    pub objective: Vec<(usize, S)>,
    /// Constraints.
    pub constraints: Vec<Constraint<S>>,
}

impl<S: Scalar> LpProblem<S> {
    /// Empty problem.
    pub fn new(tag: impl Into<String>, k: usize) -> Self {
        LpProblem {
            tag: tag.into(),
            k,
            variables: Vec::new(),
            objective: Vec::new(),
            constraints: Vec::new(),
        }
    }

    /// Declares a variable and returns its index.
    pub fn add_var(&mut self, name: impl Into<String>) -> usize {
        self.variables.push(name.into());
        self.variables.len() - 1
    }

    /// Appends a constraint, dropping zero coefficients and merging repeated
    /// variables.
    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(usize, S)>,
        relation: Relation,
        rhs: S,
    ) {
        let mut merged: Vec<(usize, S)> = Vec::with_capacity(terms.len());
        let mut sorted = terms;
        sorted.sort_by_key(|t| t.0);
        for (j, v) in sorted {
            match merged.last_mut() {
                Some((lj, lv)) if *lj == j => *lv = lv.clone() + v,
                _ => merged.push((j, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        self.constraints.push(Constraint {
            name: name.into(),
            terms: merged,
            relation,
            rhs,
        });
    }

    /// Index of the variable called `name`.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Checks that every term references a declared variable.
    pub fn validate(&self) -> Result<()> {
        let n = self.variables.len();
        let bad = self
            .objective
            .iter()
            .chain(self.constraints.iter().flat_map(|c| c.terms.iter()))
            .any(|(j, _)| *j >= n);
        if bad {
            return Err(Error::InvalidInput(
                "term references an undeclared variable".into(),
            ));
        }
        Ok(())
    }

    /// Same problem with coefficients converted to another scalar type.
    pub fn convert<T: Scalar>(&self) -> LpProblem<T> {
        let conv = |v: &S| match v.to_rational() {
            Some(r) if !T::EXACT || S::EXACT => T::from_rational(&r),
            _ => T::from_f64(v.to_f64()),
        };
        LpProblem {
            tag: self.tag.clone(),
            k: self.k,
            variables: self.variables.clone(),
            objective: self.objective.iter().map(|(j, v)| (*j, conv(v))).collect(),
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint {
                    name: c.name.clone(),
                    terms: c.terms.iter().map(|(j, v)| (*j, conv(v))).collect(),
                    relation: c.relation,
                    rhs: conv(&c.rhs),
                })
                .collect(),
        }
    }

    /// Renders the problem in the CPLEX LP text format.
    pub fn to_lp_format(&self) -> String {
        let form = |terms: &[(usize, S)]| -> String {
            if terms.is_empty() {
                return "0".into();
            }
            let mut s = String::new();
            for (pos, (j, v)) in terms.iter().enumerate() {
                let x = v.to_f64();
                let sign = match (pos, x < 0.0) {
                    (0, false) => "",
                    (0, true) => "- ",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                let _ = write!(s, "{sign}{} {}", fmt_coef(x.abs()), self.variables[*j]);
            }
            s
        };
        let mut out = String::new();
        let _ = writeln!(out, "\\ {} k={}", self.tag, self.k);
        let _ = writeln!(out, "Maximize\n obj: {}", form(&self.objective));
        let _ = writeln!(out, "Subject To");
        for c in &self.constraints {
            let rel = match c.relation {
                Relation::Le => "<=",
                Relation::Eq => "=",
                Relation::Ge => ">=",
            };
            let _ = writeln!(
                out,
                " {}: {} {} {}",
                c.name,
                form(&c.terms),
                rel,
                fmt_coef(c.rhs.to_f64())
            );
        }
        let _ = writeln!(out, "End");
        out
    }
}

fn fmt_coef(x: f64) -> String {
    format!("{}", x)
}

/// Outcome of a solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    /// An optimum was found.
    Optimal,
    /// No feasible point exists.
    Infeasible,
    /// The objective is unbounded above.
    Unbounded,
}

/// Solver output.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<S> {
    /// Outcome.
    pub status: LpStatus,
    /// Objective value; zero unless optimal.
    pub objective: S,
    /// Variable values; empty unless optimal.
    pub values: Vec<S>,
    /// Simplex pivots or interior-point iterations.
    pub iterations: usize,
}

impl<S: Scalar> LpSolution<S> {
    pub(crate) fn status_only(status: LpStatus, iterations: usize) -> Self {
        LpSolution {
            status,
            objective: S::zero(),
            values: Vec::new(),
            iterations,
        }
    }

    /// CSV with a `variable,value` header and one row per non-zero value.
    pub fn to_csv(&self, prob: &LpProblem<S>) -> String {
        let mut out = String::from("variable,value\n");
        for (name, v) in prob.variables.iter().zip(&self.values) {
            if !v.is_zero() {
                let _ = writeln!(out, "{name},{}", crate::tables::fmt_sig(v.to_f64()));
            }
        }
        out
    }
}

/// Backend selection for [`solve_lp_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    /// Dense simplex for small problems and exact scalars, Clarabel otherwise.
    #[default]
    Auto,
    /// Dense two-phase simplex.
    DenseSimplex,
    /// Clarabel interior-point method on `f64` data.
    Clarabel,
}

/// Dense tableau size above which [`Backend::Auto`] prefers Clarabel.
const DENSE_CELLS: usize = 20_000_000;

/// Solves a problem with the automatically chosen backend.
pub fn solve_lp<S: Scalar>(prob: &LpProblem<S>) -> Result<LpSolution<S>> {
    solve_lp_with(prob, Backend::Auto)
}

/// Solves a problem with the given backend. Infeasibility and
/// unboundedness are reported through [`LpSolution::status`].
pub fn solve_lp_with<S: Scalar>(prob: &LpProblem<S>, backend: Backend) -> Result<LpSolution<S>> {
    prob.validate()?;
    let backend = match backend {
        Backend::Auto => {
            let m = prob.constraints.len();
            let cells = (m + 1).saturating_mul(prob.variables.len() + 2 * m + 1);
            if S::EXACT || cells <= DENSE_CELLS {
                Backend::DenseSimplex
            } else {
                Backend::Clarabel
            }
        }
        b => b,
    };
    match backend {
        Backend::Clarabel => {
            let sol = clarabel_backend::solve(&prob.convert::<f64>())?;
            Ok(LpSolution {
                status: sol.status,
                objective: S::from_f64(sol.objective),
                values: sol.values.iter().map(|v| S::from_f64(*v)).collect(),
                iterations: sol.iterations,
            })
        }
        _ => simplex::solve_dense(prob),
    }
}

/// Largest constraint or bound violation of `values` for `prob`.
pub fn max_violation<S: Scalar>(prob: &LpProblem<S>, values: &[S]) -> f64 {
    let mut worst: f64 = 0.0;
    for v in values {
        worst = worst.max(-v.to_f64());
    }
    for c in &prob.constraints {
        let lhs: f64 = c
            .terms
            .iter()
            .map(|(j, a)| a.to_f64() * values[*j].to_f64())
            .sum();
        let b = c.rhs.to_f64();
        let viol = match c.relation {
            Relation::Le => lhs - b,
            Relation::Ge => b - lhs,
            Relation::Eq => (lhs - b).abs(),
        };
        worst = worst.max(viol);
    }
    worst
}

/// Replays every constraint of an optimal solution at tolerance `tol`.
pub fn check_feasible<S: Scalar>(prob: &LpProblem<S>, sol: &LpSolution<S>, tol: f64) -> Result<()> {
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solver("solution is not optimal".into()));
    }
    if sol.values.len() != prob.variables.len() {
        return Err(Error::Solver("solution has the wrong dimension".into()));
    }
    let v = max_violation(prob, &sol.values);
    if v > tol {
        return Err(Error::Solver(format!("constraint violated by {v:e}")));
    }
    Ok(())
}
