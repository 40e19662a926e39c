//! Property-based invariants of the solvers and comparison layer.

mod support;

use proptest::prelude::*;
use qubit_approx::bloch::{fidelity, trace_distance};
use qubit_approx::compare::{compare, eigenvalue_gap, Regime};
use qubit_approx::result::{RegionLabel, RegionTag};
use qubit_approx::sets::mixture_bloch;
use qubit_approx::trace::{project_octahedron, solve_trace};
use qubit_approx::{fidelity::solve, AvailableSet, BlochVector, Metric, SetId};
use support::apply_symmetry;

fn ball_target() -> impl Strategy<Value = BlochVector> {
    ((-1.0..1.0f64), (-1.0..1.0f64), (-1.0..1.0f64))
        .prop_filter("inside the open ball", |(x, y, z)| {
            x * x + y * y + z * z < 0.9999
        })
        .prop_map(|(x, y, z)| BlochVector::new(x, y, z).unwrap())
}

/// Targets with l1 norm at most `scale` < 1 (interior of the octahedron).
fn octahedron_target() -> impl Strategy<Value = BlochVector> {
    (ball_target(), 0.0..0.99f64).prop_map(|(r, scale)| {
        let [x, y, z] = r.components();
        let l1 = x.abs() + y.abs() + z.abs();
        let f = if l1 > 0.0 { scale / l1.max(scale) } else { 0.0 };
        BlochVector::new(x * f, y * f, z * f).unwrap()
    })
}

proptest! {
    #[test]
    fn distance_is_invariant_under_the_48_signed_permutations(
        r in ball_target(),
        perm in 0usize..6,
        sign_mask in 0usize..8,
    ) {
        let mapped = apply_symmetry(&r, perm, sign_mask);
        let base = solve(&r);
        let moved = solve(&mapped);
        prop_assert!((base.distance - moved.distance).abs() <= 1e-12);

        let base = solve_trace(&r);
        let moved = solve_trace(&mapped);
        prop_assert!((base.distance - moved.distance).abs() <= 1e-12);
    }

    #[test]
    fn weights_reproduce_the_reported_optimum(r in ball_target()) {
        let set = AvailableSet::from_id(SetId::B3);
        for res in [solve(&r), solve_trace(&r)] {
            let mix = mixture_bloch(&set, &res.weights).unwrap();
            prop_assert!(trace_distance(&mix, &res.optimal_bloch) <= 1e-12);
            let attained = match res.metric {
                Metric::Fidelity => 1.0 - fidelity(&r, &res.optimal_bloch),
                Metric::TraceNorm => trace_distance(&r, &res.optimal_bloch),
            };
            prop_assert!((res.distance - attained).abs() <= 1e-9);
        }
    }

    #[test]
    fn octahedron_targets_are_represented_exactly(r in octahedron_target()) {
        let res = solve(&r);
        prop_assert_eq!(res.distance, 0.0);
        prop_assert!(trace_distance(&res.optimal_bloch, &r) <= 1e-12);
        prop_assert!(res.free_params.is_some());

        let res = solve_trace(&r);
        prop_assert!(res.distance <= 1e-12);
        prop_assert!(trace_distance(&res.optimal_bloch, &r) <= 1e-12);
    }

    #[test]
    fn gap_reduces_to_the_length_difference(r in ball_target(), s in ball_target()) {
        let direct = (s.norm() - r.norm()).abs();
        prop_assert!((eigenvalue_gap(&r, &s) - direct).abs() <= 1e-15);
    }

    #[test]
    fn octahedron_projection_is_idempotent_and_optimal(r in ball_target()) {
        let p = project_octahedron(&r);
        let [x, y, z] = p.components();
        prop_assert!(x.abs() + y.abs() + z.abs() <= 1.0 + 1e-12);
        let again = project_octahedron(&p);
        prop_assert!(trace_distance(&p, &again) <= 1e-12);
        // The facet/edge closed forms must land on the same point.
        let res = solve_trace(&r);
        prop_assert!((res.distance - trace_distance(&r, &p)).abs() <= 1e-9);
    }

    #[test]
    fn support_outside_the_octahedron_avoids_opposite_states(r in ball_target()) {
        let res = solve(&r);
        let label = match res.region {
            Some(RegionTag::Fidelity(ref region)) => region.label,
            _ => return Ok(()),
        };
        if label == RegionLabel::S1 {
            return Ok(());
        }
        let support = res.weights.support(1e-14);
        prop_assert!(support.len() <= 3);
        for pair in [(0, 1), (2, 3), (4, 5)] {
            prop_assert!(!(support.contains(&pair.0) && support.contains(&pair.1)));
        }
    }

    #[test]
    fn comparison_report_is_internally_consistent(r in ball_target()) {
        let report = compare(&r);
        let direct = eigenvalue_gap(&r, &report.fidelity_result.optimal_bloch);
        prop_assert_eq!(report.g_fidelity, direct);
        let direct = eigenvalue_gap(&r, &report.trace_result.optimal_bloch);
        prop_assert_eq!(report.g_trace, direct);

        match report.regime.favored() {
            Some(Metric::Fidelity) => {
                prop_assert!(report.g_fidelity <= report.g_trace + 1e-12)
            }
            Some(Metric::TraceNorm) => {
                prop_assert!(report.g_trace <= report.g_fidelity + 1e-12)
            }
            None => prop_assert!(matches!(
                report.regime,
                Regime::BothExactS1 | Regime::OverlapInconclusive
            )),
        }
        if report.regime == Regime::BothExactS1 {
            prop_assert!(report.g_fidelity <= 1e-12 && report.g_trace <= 1e-12);
        }
    }
}
