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

//! Table and curve data behind the `table` and `curve` commands.

use crate::bounds::{phragmen_upper_exact, thiele_guarantee, thiele_upper};
use crate::error::{Error, Result};
use crate::lp::{build_abstract_f_lp, h_seqpav, solve_lp, HMethod, LpStatus};
use crate::rules::LambdaWeights;
use crate::scalar::Scalar;
use std::fmt::Write;
use std::str::FromStr;

/// Formats `x` with 6 significant digits, trimming trailing zeros.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=5).contains(&exp) {
        let s = format!("{:.5e}", x);
        let (mant, e) = s.split_once('e').expect("exponent form");
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        return format!("{mant}e{e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Tables of `ℓ`-coefficients indexed by committee size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// `1/h(k)` from the exact LP.
    SeqPavExact,
    /// `1/h(k)` from the relaxed LP.
    SeqPavRelaxed,
    /// Abstract-f LP coefficient.
    AbstractF,
    /// Abstract-f LP coefficient with submodularity.
    AbstractFSubmodular,
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seqpav-exact" => Ok(TableKind::SeqPavExact),
            "seqpav-relaxed" => Ok(TableKind::SeqPavRelaxed),
            "abstract-f" => Ok(TableKind::AbstractF),
            "abstract-f-submodular" => Ok(TableKind::AbstractFSubmodular),
            _ => Err(Error::InvalidInput(format!("unknown table `{s}`"))),
        }
    }
}

/// Coefficient of `ℓ` for one committee size.
pub fn table_value(kind: TableKind, k: usize) -> Result<f64> {
    match kind {
        TableKind::SeqPavExact => Ok(h_seqpav(k, HMethod::Exact)?.coefficient),
        TableKind::SeqPavRelaxed => Ok(h_seqpav(k, HMethod::Relaxed)?.coefficient),
        TableKind::AbstractF | TableKind::AbstractFSubmodular => {
            let lp = build_abstract_f_lp::<f64>(k, kind == TableKind::AbstractFSubmodular)?;
            let sol = solve_lp(&lp)?;
            if sol.status != LpStatus::Optimal {
                return Err(Error::Solver(format!(
                    "abstract-f LP returned {:?}",
                    sol.status
                )));
            }
            Ok(1.0 / sol.objective)
        }
    }
}

/// Rows `(k, coefficient)` for every `k` in `ks`.
pub fn table(kind: TableKind, ks: &[usize]) -> Result<Vec<(usize, f64)>> {
    ks.iter().map(|&k| Ok((k, table_value(kind, k)?))).collect()
}

/// Two-column CSV with the given header.
pub fn to_csv<X: std::fmt::Display>(header: &str, rows: &[(X, f64)]) -> String {
    let mut out = format!("{header}\n");
    for (x, y) in rows {
        let _ = writeln!(out, "{x},{}", fmt_sig(*y));
    }
    out
}

/// Curves behind the figure data.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveKind {
    /// Relaxed-LP coefficient against `k`.
    SeqPavRelaxedVsK,
    /// Phragmén witness value divided by `ℓ` against `k`, at fixed `ℓ`.
    PhragmenUpperVsK {
        /// Group size.
        ell: usize,
    },
    /// Lower and upper λ-Thiele degree bounds against `ℓ`, at fixed `k`.
    ThieleGuaranteeVsEll {
        /// Weight family.
        lambda: LambdaWeights,
        /// Committee size.
        k: usize,
    },
}

/// Curve rows; the Thiele curve has an extra column with the upper bound.
pub fn curve(kind: &CurveKind, xs: &[usize]) -> Result<String> {
    match kind {
        CurveKind::SeqPavRelaxedVsK => {
            let rows = table(TableKind::SeqPavRelaxed, xs)?;
            Ok(to_csv("k,coefficient", &rows))
        }
        CurveKind::PhragmenUpperVsK { ell } => {
            let mut out = String::from("k,value_over_l\n");
            for &k in xs {
                if let Ok(v) = phragmen_upper_exact(*ell, k) {
                    let _ = writeln!(out, "{k},{}", fmt_sig(v.to_f64() / *ell as f64));
                }
            }
            Ok(out)
        }
        CurveKind::ThieleGuaranteeVsEll { lambda, k } => {
            let mut out = String::from("l,guarantee,upper\n");
            for &ell in xs {
                let lo = thiele_guarantee(lambda, ell, *k)?;
                let up = thiele_upper(lambda, ell, *k)?;
                let _ = writeln!(out, "{ell},{},{}", fmt_sig(lo.value), fmt_sig(up.value));
            }
            Ok(out)
        }
    }
}
