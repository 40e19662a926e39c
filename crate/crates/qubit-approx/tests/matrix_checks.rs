//! Cross-checks of the Bloch-form metrics and solvers against an
//! independent density-matrix implementation (see `support`).

mod support;

use qubit_approx::bloch::{eigenvalues, fidelity, trace_distance};
use qubit_approx::{fidelity as fidelity_solver, trace as trace_solver, BlochVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{matrix_fidelity, matrix_trace_distance, sample_ball, Mat2};

#[test]
fn fidelity_matches_the_matrix_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let r = sample_ball(&mut rng);
        let s = sample_ball(&mut rng);
        let diff = (fidelity(&r, &s) - matrix_fidelity(&r, &s)).abs();
        worst = worst.max(diff);
    }
    assert!(worst <= 1e-9, "worst fidelity disagreement {worst}");
}

#[test]
fn trace_distance_matches_the_matrix_trace_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let r = sample_ball(&mut rng);
        let s = sample_ball(&mut rng);
        let diff = (trace_distance(&r, &s) - matrix_trace_distance(&r, &s)).abs();
        worst = worst.max(diff);
    }
    assert!(worst <= 1e-12, "worst trace-norm disagreement {worst}");
}

#[test]
fn eigenvalues_match_the_density_matrix_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let r = sample_ball(&mut rng);
        let pair = eigenvalues(&r);
        let (lp, lm) = Mat2::density(&r).hermitian_eigenvalues();
        assert!((pair.plus - lp).abs() <= 1e-14);
        assert!((pair.minus - lm).abs() <= 1e-14);
    }
}

#[test]
fn solver_distances_are_attained_by_their_mixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..300 {
        let r = sample_ball(&mut rng);

        let fid = fidelity_solver::solve(&r);
        let attained = 1.0 - matrix_fidelity(&r, &fid.optimal_bloch);
        assert!(
            (fid.distance - attained).abs() <= 1e-9,
            "fidelity distance {} vs matrix value {attained}",
            fid.distance
        );

        let tr = trace_solver::solve_trace(&r);
        let attained = matrix_trace_distance(&r, &tr.optimal_bloch);
        assert!(
            (tr.distance - attained).abs() <= 1e-9,
            "trace distance {} vs matrix value {attained}",
            tr.distance
        );
    }
}

#[test]
fn fidelity_special_values() {
    let r = BlochVector::new(0.3, -0.2, 0.4).unwrap();
    assert!((matrix_fidelity(&r, &r) - 1.0).abs() <= 1e-14);

    let up = BlochVector::new(0.0, 0.0, 1.0).unwrap();
    let down = BlochVector::new(0.0, 0.0, -1.0).unwrap();
    assert!(matrix_fidelity(&up, &down).abs() <= 1e-14);
    assert!((matrix_trace_distance(&up, &down) - 2.0).abs() <= 1e-14);
}
