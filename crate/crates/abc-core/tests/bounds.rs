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

mod common;

use abc_core::bounds::{
    maxphragmen_upper, phragmen_lower, phragmen_upper, phragmen_upper_exact, seqpav_degree_from_h,
    thiele_efficiency_lower, thiele_efficiency_upper, thiele_guarantee, thiele_upper, BoundKind,
};
use abc_core::LambdaWeights;
use common::q;
use proptest::prelude::*;

fn families() -> Vec<LambdaWeights> {
    vec![
        LambdaWeights::Pav,
        LambdaWeights::sqrt(),
        LambdaWeights::Power(2.0 / 3.0),
        LambdaWeights::Power(2.0),
    ]
}

#[test]
fn phragmen_closed_forms() {
    assert_eq!(phragmen_lower(1).value, 0.0);
    assert_eq!(phragmen_lower(3).value, 1.0);
    assert_eq!(phragmen_upper_exact(2, 10).unwrap(), q(9, 7));
    assert_eq!(phragmen_upper_exact(1, 10).unwrap(), q(10, 17));
    assert!(phragmen_upper_exact(3, 6).is_err());
    assert!(phragmen_upper_exact(3, 10).is_err());
    let r = phragmen_upper(2, 10).unwrap();
    assert_eq!(r.kind, BoundKind::Upper);
    assert!((r.value - 9.0 / 7.0).abs() < 1e-15);
    for ell in [1, 5, 100] {
        assert_eq!(maxphragmen_upper(ell).value, 1.0);
    }
}

#[test]
fn pav_guarantee_closed_form() {
    for k in 1..=30 {
        for ell in 1..=k {
            let g = thiele_guarantee(&LambdaWeights::Pav, ell, k).unwrap();
            let expect = ell as f64 - 1.0 + ell as f64 / k as f64;
            assert!(
                (g.value - expect).abs() < 1e-9,
                "l={ell} k={k}: {}",
                g.value
            );
        }
    }
}

#[test]
fn pav_efficiency_closed_forms() {
    let s = (17f64.sqrt() - 1.0) / 8.0;
    let lo = thiele_efficiency_lower(&LambdaWeights::Pav, 4).unwrap();
    assert!((lo.guarantee - s / (1.0 + s)).abs() < 1e-9);
    for k in [1, 2, 4, 9, 100, 4096] {
        let up = thiele_efficiency_upper(&LambdaWeights::Pav, k).unwrap();
        let kf = k as f64;
        assert!(
            (up.guarantee - (2.0 / kf.sqrt() - 1.0 / kf)).abs() < 1e-9,
            "k={k}"
        );
    }
}

#[test]
fn invalid_arguments() {
    assert!(thiele_guarantee(&LambdaWeights::Pav, 0, 3).is_err());
    assert!(thiele_guarantee(&LambdaWeights::Pav, 4, 3).is_err());
    assert!(thiele_efficiency_lower(&LambdaWeights::Pav, 0).is_err());
    let short: LambdaWeights = "custom:1,1/2".parse().unwrap();
    assert!(thiele_guarantee(&short, 3, 5).is_err());
    let concave: LambdaWeights = "custom:1,9/10,1/10,1/20".parse().unwrap();
    assert!(thiele_guarantee(&concave, 2, 3).is_err());
}

#[test]
fn seqpav_degree_is_a_unit_interval() {
    let (lo, hi) = seqpav_degree_from_h(4, 10, 1.25);
    assert_eq!((lo.value, hi.value), (2.2, 3.2));
    assert_eq!((lo.kind, hi.kind), (BoundKind::Lower, BoundKind::Upper));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn upper_never_below_lower(k in 1usize..60, frac in 0.0f64..1.0, fam in 0usize..4) {
        let ell = 1 + ((k - 1) as f64 * frac) as usize;
        let lambda = &families()[fam];
        let lo = thiele_guarantee(lambda, ell, k).unwrap();
        let hi = thiele_upper(lambda, ell, k).unwrap();
        prop_assert!(lo.residual < 1e-9);
        prop_assert!(hi.value >= lo.value - 1e-9);
        let floor = if fam == 0 { ell as f64 - 1.0 } else { -1.0 };
        prop_assert!(lo.value >= floor - 1e-9);
        prop_assert!(hi.value <= k as f64 + 1e-9);
    }

    #[test]
    fn efficiency_bounds_are_ordered(k in 1usize..500, fam in 0usize..4) {
        let lambda = &families()[fam];
        let lo = thiele_efficiency_lower(lambda, k).unwrap();
        let hi = thiele_efficiency_upper(lambda, k).unwrap();
        prop_assert!(lo.residual < 1e-9 && hi.residual < 1e-9);
        prop_assert!(lo.guarantee > 0.0 && lo.guarantee <= hi.guarantee + 1e-12);
        prop_assert!(hi.guarantee <= 1.0 + 1e-12);
    }
}
