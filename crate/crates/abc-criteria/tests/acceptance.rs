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

//! Acceptance run: prints one PASS or FAIL line per criterion and exits
//! non-zero when any criterion fails.
//!
//! The submodular abstract-f LP at k=12 takes over ten minutes; it only runs
//! when `ABC_ACCEPTANCE_FULL=1` is set.

#[path = "../../abc-core/tests/common/oracles.rs"]
mod oracles;

use abc_core::audit::{
    avg_satisfaction, check_ejr, utilitarian_ratio, worst_cohesive_subgroup, SearchOptions,
};
use abc_core::bounds::{
    thiele_efficiency_lower, thiele_efficiency_upper, thiele_guarantee, thiele_upper,
};
use abc_core::gen::{gen_efficiency_witness, gen_maxphragmen_tie, gen_phragmen_hard};
use abc_core::lp::solve_relaxed_paths;
use abc_core::rules::{
    max_phragmen, min_max_load, pav, seq_pav, seq_phragmen_credit, seq_phragmen_load, thiele_exact,
    EnumOptions, LambdaWeights, StepDetail, TieBreak,
};
use abc_core::tables::{table, table_value, TableKind};
use abc_core::{
    example1_profile, ApprovalProfile, Committee, Error, Group, Profile, Rational, Scalar,
};
use num_traits::One;
use oracles::{dhondt, q, qi};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Check = (bool, String);

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn lookup(rows: &[(usize, f64)], k: usize) -> f64 {
    rows.iter()
        .find(|r| r.0 == k)
        .map(|r| r.1)
        .unwrap_or(f64::NAN)
}

/// Random profile with `voters` unit-weight voters (merged into groups),
/// `m` candidates and approval probability `density`.
fn random_profile(rng: &mut impl Rng, voters: usize, m: usize, density: f64) -> Profile {
    let groups = (0..voters)
        .map(|_| {
            let set: Vec<usize> = (1..=m).filter(|_| rng.gen_bool(density)).collect();
            Group::new(Rational::one(), set)
        })
        .collect();
    ApprovalProfile::new(m, groups).expect("valid random profile")
}

/// Random profile with small integer group weights.
fn random_weighted_profile(
    rng: &mut impl Rng,
    groups: usize,
    m: usize,
    max_weight: i64,
) -> Profile {
    let density = rng.gen_range(0.2..0.7);
    let gs = (0..groups)
        .map(|_| {
            let set: Vec<usize> = (1..=m).filter(|_| rng.gen_bool(density)).collect();
            Group::new(qi(rng.gen_range(1..=max_weight) as usize), set)
        })
        .collect();
    ApprovalProfile::new(m, gs).expect("valid random profile")
}

fn exact_table() -> Check {
    let start = Instant::now();
    let rows = match table(TableKind::SeqPavExact, &(1..=12).collect::<Vec<_>>()) {
        Ok(r) => r,
        Err(e) => return (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    let targets = [(3, 0.8888), (6, 0.8169), (10, 0.7825), (12, 0.7719)];
    let mut ok = elapsed < Duration::from_secs(180);
    let mut parts = Vec::new();
    for (k, t) in targets {
        let v = lookup(&rows, k);
        ok &= within(v, t, 5e-4);
        parts.push(format!("k={k}:{v:.4}"));
    }
    (
        ok,
        format!("{} in {:.2}s", parts.join(" "), elapsed.as_secs_f64()),
    )
}

fn relaxed_table() -> Check {
    let start = Instant::now();
    let rows = match table(TableKind::SeqPavRelaxed, &(1..=20).collect::<Vec<_>>()) {
        Ok(r) => r,
        Err(e) => return (false, format!("error: {e}")),
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, t) in [(10, 0.7705), (20, 0.7348)] {
        let v = lookup(&rows, k);
        ok &= within(v, t, 5e-4);
        parts.push(format!("k={k}:{v:.4}"));
    }
    for (k, t, tol) in [(50, 0.7085, 1e-3), (200, 0.694, 2e-3)] {
        let t0 = Instant::now();
        match solve_relaxed_paths(k) {
            Ok(sol) => {
                let v = 1.0 / sol.h;
                let hit = within(v, t, tol);
                ok &= hit;
                parts.push(format!(
                    "k={k}:{v:.4}{} ({:.1}s)",
                    if hit { "" } else { " off target" },
                    t0.elapsed().as_secs_f64()
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("k={k}: error {e}"));
            }
        }
    }
    ok &= start.elapsed() < Duration::from_secs(600);
    (ok, parts.join(" "))
}

fn relaxation_ordering() -> Check {
    let ks: Vec<usize> = (1..=12).collect();
    let (Ok(exact), Ok(relaxed)) = (
        table(TableKind::SeqPavExact, &ks),
        table(TableKind::SeqPavRelaxed, &ks),
    ) else {
        return (false, "LP error".into());
    };
    let bad: Vec<usize> = ks
        .iter()
        .filter(|&&k| lookup(&relaxed, k) > lookup(&exact, k) + 1e-9)
        .copied()
        .collect();
    (bad.is_empty(), format!("violations at k={bad:?}"))
}

fn abstract_f_tables() -> Check {
    let mut ok = true;
    let mut worst = 0.0f64;
    for k in 2..=12 {
        match table_value(TableKind::AbstractF, k) {
            Ok(v) => {
                let d = (v - 2.0 / k as f64).abs();
                worst = worst.max(d);
                ok &= d <= 5e-4;
            }
            Err(e) => return (false, format!("abstract-f k={k}: {e}")),
        }
    }
    let mut parts = vec![format!("2/k max deviation {worst:.2e}")];
    let full = std::env::var("ABC_ACCEPTANCE_FULL")
        .map(|v| v == "1")
        .unwrap_or(false);
    for (k, t) in [(4, 0.8141), (10, 0.7246), (12, 0.7066)] {
        if k == 12 && !full {
            ok = false;
            parts.push("submodular k=12 not run".into());
            continue;
        }
        let t0 = Instant::now();
        match table_value(TableKind::AbstractFSubmodular, k) {
            Ok(v) => {
                ok &= within(v, t, 5e-4);
                parts.push(format!(
                    "submodular k={k}:{v:.4} vs {t} ({:.1}s)",
                    t0.elapsed().as_secs_f64()
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("submodular k={k}: {e}"));
            }
        }
    }
    (ok, parts.join(" "))
}

fn phragmen_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut compared = 0;
    for trial in 0..1000 {
        let voters = rng.gen_range(1..=12);
        let m = rng.gen_range(1..=8);
        let k = rng.gen_range(1..=m.min(5));
        let density = rng.gen_range(0.15..0.8);
        let p = random_profile(&mut rng, voters, m, density);
        let credit = seq_phragmen_credit(&p, k, &TieBreak::LexMin);
        let load = seq_phragmen_load(&p, k, &TieBreak::LexMin);
        let (ct, lt) = match (credit, load) {
            (Ok((cw, ct)), Ok((lw, lt))) => {
                if ct.order() != lt.order() || cw != lw {
                    return (false, format!("trial {trial}: orders differ"));
                }
                (ct, lt)
            }
            (Err(a), Err(b)) if a == b => continue,
            (a, b) => {
                return (
                    false,
                    format!(
                        "trial {trial}: outcomes differ ({:?} vs {:?})",
                        a.err(),
                        b.err()
                    ),
                )
            }
        };
        for (cs, ls) in ct.steps.iter().zip(&lt.steps) {
            let (
                StepDetail::Purchase { state, .. },
                StepDetail::Load {
                    max_load, loads, ..
                },
            ) = (&cs.detail, &ls.detail)
            else {
                return (false, "unexpected trace detail".into());
            };
            if state.time != *max_load {
                return (false, format!("trial {trial}: time differs from max load"));
            }
            for (c, l) in state.credits.iter().zip(loads) {
                if *c != max_load - l {
                    return (false, format!("trial {trial}: credit identity fails"));
                }
            }
        }
        compared += 1;
    }
    (
        true,
        format!("1000 profiles, {compared} full runs, identity exact"),
    )
}

fn phragmen_sandwich() -> Check {
    let Ok((p, spec)) = gen_phragmen_hard::<Rational>(2, 10) else {
        return (false, "generator failed".into());
    };
    let Ok((w, trace)) = seq_phragmen_credit(&p, 10, &spec.tie_break()) else {
        return (false, "rule failed".into());
    };
    let s = match avg_satisfaction(&p, &spec.voters, &w) {
        Ok(s) => s,
        Err(e) => return (false, e.to_string()),
    };
    let t = q(5, 4);
    let x = 7;
    let times: Vec<Rational> = trace
        .steps
        .iter()
        .map(|st| match &st.detail {
            StepDetail::Purchase { state, .. } => state.time.clone(),
            _ => Rational::from_usize(0),
        })
        .collect();
    let mut timeline = times.len() > x;
    for j in 1..=x {
        timeline &= times.get(j - 1) == Some(&(&t * qi(j)));
    }
    timeline &= times.get(x) == Some(&(&t * qi(x)));
    let first_b: Vec<usize> = trace.order().into_iter().take(x).collect();
    timeline &= first_b == (1..=x).collect::<Vec<_>>();
    let sandwich = q(1, 2) <= s && s <= q(9, 7);
    (
        sandwich && timeline,
        format!(
            "s={s} (bounds 1/2..9/7), purchase times {}",
            times
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    )
}

fn pav_falsification() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let opts = SearchOptions::default();
    let mut checked = 0;
    for trial in 0..500 {
        let m = rng.gen_range(2..=12);
        let k = rng.gen_range(1..=m.min(5));
        let groups = rng.gen_range(1..=8);
        let p = random_weighted_profile(&mut rng, groups, m, 3);
        let w = match pav(&p, k, &TieBreak::LexMin) {
            Ok(w) => w,
            Err(e) => return (false, format!("trial {trial}: {e}")),
        };
        for ell in 1..=k {
            let (rec, complete) = match worst_cohesive_subgroup(&p, &w, k, ell, ell - 1, &opts) {
                Ok(r) => r,
                Err(e) => return (false, e.to_string()),
            };
            if !complete {
                return (false, format!("trial {trial}: incomplete search"));
            }
            if let Some(r) = rec {
                checked += 1;
                if r.satisfaction < qi(ell - 1) {
                    return (
                        false,
                        format!("trial {trial}: ℓ={ell} satisfaction {}", r.satisfaction),
                    );
                }
            }
        }
    }
    (
        true,
        format!("500 profiles, {checked} cohesive queries, 0 violations"),
    )
}

fn families() -> Vec<(LambdaWeights, &'static str)> {
    vec![
        (LambdaWeights::Pav, "1/i"),
        (LambdaWeights::sqrt(), "1/sqrt(i)"),
        (LambdaWeights::Power(2.0 / 3.0), "(1/i)^(2/3)"),
        (LambdaWeights::Power(2.0), "1/i^2"),
    ]
}

fn eq1_solver() -> Check {
    let mut pav_err = 0.0f64;
    let mut max_residual = 0.0f64;
    let mut order_ok = true;
    let mut gap_fails = 0;
    let mut points = 0;
    let mut worst_gap = (0.0f64, String::new());
    for k in 1..=50 {
        for ell in 1..=k {
            for (lambda, name) in families() {
                let (lo, hi) = match (
                    thiele_guarantee(&lambda, ell, k),
                    thiele_upper(&lambda, ell, k),
                ) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => {
                        return (false, format!("{name} ℓ={ell} k={k}: {e}"))
                    }
                };
                points += 1;
                if matches!(lambda, LambdaWeights::Pav) {
                    let closed = ell as f64 - 1.0 + ell as f64 / k as f64;
                    pav_err = pav_err.max((lo.value - closed).abs());
                } else {
                    max_residual = max_residual.max(lo.residual).max(hi.residual);
                }
                order_ok &= hi.value >= lo.value - 1e-12;
                let gap = hi.value - lo.value;
                if gap >= 0.05 * ell as f64 {
                    gap_fails += 1;
                }
                if gap > worst_gap.0 {
                    worst_gap = (gap, format!("{name} ℓ={ell} k={k}"));
                }
            }
        }
    }
    let ok = pav_err < 1e-9 && max_residual < 1e-9 && order_ok && gap_fails == 0;
    (
        ok,
        format!(
            "pav error {pav_err:.1e}, residual {max_residual:.1e}, upper>=lower {order_ok}, \
             gap<0.05l fails at {gap_fails}/{points} points (largest gap {:.3} at {})",
            worst_gap.0, worst_gap.1
        ),
    )
}

fn efficiency_bounds() -> Check {
    let pav_l = LambdaWeights::Pav;
    let a = (-1.0 + 17f64.sqrt()) / 8.0;
    let lower4 = match thiele_efficiency_lower(&pav_l, 4) {
        Ok(r) => r.guarantee,
        Err(e) => return (false, e.to_string()),
    };
    let mut ok = (lower4 - a / (1.0 + a)).abs() < 1e-9;
    let mut upper_err = 0.0f64;
    for k in 1..=200 {
        match thiele_efficiency_upper(&pav_l, k) {
            Ok(r) => {
                let closed = 2.0 / (k as f64).sqrt() - 1.0 / k as f64;
                upper_err = upper_err.max((r.guarantee - closed).abs());
            }
            Err(e) => return (false, e.to_string()),
        }
    }
    ok &= upper_err < 1e-9;
    let mut parts = vec![format!(
        "lower(4) {lower4:.10}, upper error {upper_err:.1e}"
    )];
    let expected = [-0.5, -1.0 / 3.0, -0.4, -2.0 / 3.0];
    for ((lambda, name), e) in families().into_iter().zip(expected) {
        let val = |k: usize| -> std::result::Result<(f64, f64), Error> {
            Ok((
                thiele_efficiency_lower(&lambda, k)?.guarantee,
                thiele_efficiency_upper(&lambda, k)?.guarantee,
            ))
        };
        let (Ok(a), Ok(b)) = (val(2048), val(4096)) else {
            return (false, format!("{name}: root failure"));
        };
        let slope = |x: f64, y: f64| (y.ln() - x.ln()) / 2f64.ln();
        let (sl, su) = (slope(a.0, b.0), slope(a.1, b.1));
        let hit = within(sl, e, 0.03) && within(su, e, 0.03);
        ok &= hit;
        parts.push(format!("{name}: {sl:.3}/{su:.3} vs {e:.3}"));
    }
    (ok, parts.join(", "))
}

fn efficiency_witness() -> Check {
    let Ok((p, spec)) = gen_efficiency_witness::<Rational>(&LambdaWeights::Pav, 4, 2) else {
        return (false, "generator failed".into());
    };
    let out = match thiele_exact(
        &p,
        &LambdaWeights::Pav,
        4,
        &spec.tie_break(),
        &EnumOptions::exhaustive(),
    ) {
        Ok(o) => o,
        Err(e) => return (false, e.to_string()),
    };
    let ratio = utilitarian_ratio(&p, &out.committee, 4).unwrap_or_else(|_| qi(1));
    let b = out.committee.iter().filter(|&c| c <= 4).count();
    (
        ratio < q(3, 4) && b <= 2,
        format!(
            "winner {} ratio {ratio}, {b} B-candidates, {} optima",
            out.committee,
            out.optima.len()
        ),
    )
}

fn maxphragmen_witness() -> Check {
    let Ok((p, spec)) = gen_maxphragmen_tie::<Rational>(4, 3) else {
        return (false, "generator failed".into());
    };
    let w1 = spec.committee("W1").cloned().unwrap_or_default();
    let w2 = spec.committee("W2").cloned().unwrap_or_default();
    let out = match max_phragmen(&p, 4, &EnumOptions::exhaustive()) {
        Ok(o) => o,
        Err(e) => return (false, e.to_string()),
    };
    let contains = out.optima.contains(&w2);
    let l1 = min_max_load(&p, &w1);
    let l2 = min_max_load(&p, &w2);
    let kn = q(4, 12);
    let loads = l1.as_ref() == Some(&kn) && l2.as_ref() == Some(&kn);
    let ejr = check_ejr(&p, &w2, 4, &qi(1), &SearchOptions::default());
    let (ejr_fails, wit) = match &ejr {
        Ok(o) => (
            !o.satisfied && o.witness.as_ref().map(|w| w.ell) == Some(2),
            o.witness
                .as_ref()
                .map(|w| w.voters.to_string())
                .unwrap_or_default(),
        ),
        Err(_) => (false, String::new()),
    };
    (
        contains && loads && ejr_fails,
        format!(
            "W2 optimal {contains}, loads {:?}/{:?}, EJR witness [{wit}]",
            l1.map(|x| x.to_string()),
            l2.map(|x| x.to_string())
        ),
    )
}

fn party_split(w: &Committee) -> Vec<usize> {
    (0..3)
        .map(|i| w.iter().filter(|&c| (c - 1) / 10 == i).count())
        .collect()
}

fn example1() -> Check {
    let start = Instant::now();
    let p: Profile = example1_profile();
    let (Ok((a, _)), Ok((b, _))) = (
        seq_pav(&p, 10, &TieBreak::LexMin),
        seq_phragmen_credit(&p, 10, &TieBreak::LexMin),
    ) else {
        return (false, "rule failed".into());
    };
    let oracle = dhondt(&[60, 30, 10], 10);
    let elapsed = start.elapsed();
    let (sa, sb) = (party_split(&a), party_split(&b));
    let ok = sa == vec![6, 3, 1] && sb == sa && oracle == sa && elapsed < Duration::from_secs(1);
    (
        ok,
        format!(
            "seq-pav {sa:?}, seq-phragmen {sb:?}, d'hondt {oracle:?} in {:.3}s",
            elapsed.as_secs_f64()
        ),
    )
}

type Criterion = (usize, &'static str, fn() -> Check);

fn main() {
    let checks: Vec<Criterion> = vec![
        (1, "exact LP table", exact_table),
        (2, "relaxed LP table", relaxed_table),
        (3, "relaxation ordering", relaxation_ordering),
        (4, "abstract-f tables", abstract_f_tables),
        (5, "Phragmen credit/load equivalence", phragmen_equivalence),
        (6, "Phragmen hard instance sandwich", phragmen_sandwich),
        (7, "PAV guarantee falsification suite", pav_falsification),
        (8, "Thiele guarantee equation solver", eq1_solver),
        (9, "efficiency bounds", efficiency_bounds),
        (10, "efficiency witness", efficiency_witness),
        (11, "max-Phragmen tie witness", maxphragmen_witness),
        (12, "three-party example end-to-end", example1),
    ];
    let mut failed = 0;
    for (id, name, run) in checks {
        let (pass, detail) = match std::panic::catch_unwind(run) {
            Ok(r) => r,
            Err(_) => (false, "panicked".into()),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {id:>2} ({name}): {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
    }
    println!("{failed} of 12 criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
