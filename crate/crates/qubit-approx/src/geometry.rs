//! Geometry of exactly representable targets: membership tests, the
//! three-state decomposition, and relative volumes.
//!
//! A target is exactly representable over a set when it lies in the convex
//! hull of the set's Bloch points, i.e. when the optimal approximation
//! distance vanishes. Each built-in family admits a closed-form membership
//! predicate:
//!
//! * `B3`: the unit octahedron |x| + |y| + |z| <= 1.
//! * `B3Alpha0`: a twelve-facet polytope; four octahedron facets survive and
//!   eight new ones join at the added vertex pair.
//! * `BAlpha`: taken as the one-parameter family over all gate angles, whose
//!   union is the double cone (1 - |y|)^2 >= x^2 + z^2 around the y axis.
//!   [`decompose_b_alpha`] recovers the witnessing angle and weights.
//!
//! Relative volumes follow the nonnegative-octant convention: each region is
//! intersected with the octant ball (volume pi/6) and the ratio is reported.
//! All three ratios have closed forms; a seeded Monte Carlo estimator
//! cross-checks them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::oracle::b3_alpha0_facets;
use crate::sets::{SetId, WeightVector};
use crate::tol;

/// Kind of closed-form membership predicate a family admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipTest {
    /// |x| + |y| + |z| <= 1.
    L1Ball,
    /// Explicit facet inequalities of a bounded polytope.
    HullFacets,
    /// (1 - |y|)^2 >= x^2 + z^2, the double cone around the y axis.
    YAxisCone,
}

/// A family's exactly representable region with its headline numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct CrRegion {
    pub set_id: SetId,
    pub membership_test: MembershipTest,
    /// Octant-relative volume: (region inside the octant ball) / (pi/6).
    pub exact_relative_volume: f64,
}

impl CrRegion {
    pub fn for_set(set_id: SetId) -> Self {
        let (membership_test, exact_relative_volume) = match set_id {
            SetId::B3 => (MembershipTest::L1Ball, std::f64::consts::FRAC_1_PI),
            SetId::B3Alpha0 => (
                MembershipTest::HullFacets,
                std::f64::consts::SQRT_2 / std::f64::consts::PI,
            ),
            SetId::BAlpha(_) => (MembershipTest::YAxisCone, 0.5),
        };
        Self {
            set_id,
            membership_test,
            exact_relative_volume,
        }
    }

    pub fn contains(&self, r: &BlochVector) -> bool {
        cr_member(self.set_id, r)
    }
}

/// Whether `r` is exactly representable over the family.
///
/// The regions are closed; boundaries are admitted with 1e-12 slack so that
/// exactly representable inputs survive rounding. For `BAlpha` the test is
/// family-wide (some gate angle works); the witnessing angle comes from
/// [`decompose_b_alpha`].
pub fn cr_member(set_id: SetId, r: &BlochVector) -> bool {
    let [x, y, z] = r.components();
    match set_id {
        SetId::B3 => x.abs() + y.abs() + z.abs() <= 1.0 + tol::EXACT,
        SetId::B3Alpha0 => b3_alpha0_facets()
            .iter()
            .all(|(n, b)| n[0] * x + n[1] * y + n[2] * z <= b + tol::EXACT),
        SetId::BAlpha(_) => {
            let reach = 1.0 - y.abs();
            x * x + z * z <= reach * reach + tol::EXACT
        }
    }
}

/// A point written as a mixture of the y-axis pair and one gate eigenstate.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// Gate angle of the third state, in [0, 2pi).
    pub alpha: f64,
    /// Weights over `BAlpha(alpha)` state order: y+, y-, (sin a, 0, cos a).
    pub weights: WeightVector,
}

/// Splits `r` into p4 |y+> + p5 |y-> + p6 |q(alpha)> with
/// p6 = sqrt(x^2 + z^2) and alpha = atan2(x, z).
///
/// Works on raw signed input. When x = z = 0 the angle is immaterial
/// (p6 = 0) and alpha = 0 by convention. Fails with `NotInRegion` when the
/// cone inequality does not hold; the reported deficit is how far the radial
/// part overshoots the reach 1 - |y|.
pub fn decompose_b_alpha(r: &BlochVector) -> Result<Decomposition> {
    let [x, y, z] = r.components();
    let radial = (x * x + z * z).sqrt();
    let deficit = radial - (1.0 - y.abs());
    if deficit > tol::EXACT {
        return Err(Error::NotInRegion { deficit });
    }
    let alpha = if radial == 0.0 {
        0.0
    } else {
        f64::atan2(x, z).rem_euclid(2.0 * std::f64::consts::PI)
    };
    let p4 = 0.5 * (1.0 + y - radial);
    let p5 = 0.5 * (1.0 - y - radial);
    let weights = WeightVector::new(vec![p4.max(0.0), p5.max(0.0), radial.min(1.0)])?;
    Ok(Decomposition { alpha, weights })
}

/// How to compute a relative volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VolumeMethod {
    /// Closed-form constant.
    Exact,
    /// Seeded rejection sampling in the nonnegative-octant unit ball.
    /// `samples` counts accepted in-ball points (at least 1000).
    MonteCarlo { samples: u64, seed: u64 },
}

/// A volume ratio with its uncertainty (zero for exact values).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub value: f64,
    pub stderr: f64,
}

/// Octant-relative volume of the family's representable region.
///
/// Monte Carlo draws uniform points in the octant ball by rejection from
/// the unit cube and reports the membership fraction with its binomial
/// standard error. Sampling is split into 64 fixed RNG streams, so results
/// depend only on (samples, seed), not on thread count.
pub fn relative_volume(set_id: SetId, method: VolumeMethod) -> VolumeEstimate {
    match method {
        VolumeMethod::Exact => VolumeEstimate {
            value: CrRegion::for_set(set_id).exact_relative_volume,
            stderr: 0.0,
        },
        VolumeMethod::MonteCarlo { samples, seed } => {
            assert!(samples >= 1000, "need at least 1000 Monte Carlo samples");
            const STREAMS: u64 = 64;
            let base = samples / STREAMS;
            let rem = samples % STREAMS;
            let hits: u64 = (0..STREAMS)
                .into_par_iter()
                .map(|stream| {
                    let quota = base + u64::from(stream < rem);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(stream);
                    let mut hits = 0u64;
                    let mut accepted = 0u64;
                    while accepted < quota {
                        let x: f64 = rng.gen();
                        let y: f64 = rng.gen();
                        let z: f64 = rng.gen();
                        if x * x + y * y + z * z > 1.0 {
                            continue;
                        }
                        accepted += 1;
                        let point = BlochVector::new(x, y, z).expect("in-ball sample");
                        if cr_member(set_id, &point) {
                            hits += 1;
                        }
                    }
                    hits
                })
                .sum();
            let p = hits as f64 / samples as f64;
            VolumeEstimate {
                value: p,
                stderr: (p * (1.0 - p) / samples as f64).sqrt(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::recover_by_subsets;
    use crate::sets::{mixture_bloch, AvailableSet};
    use approx::assert_abs_diff_eq;

    fn bloch(x: f64, y: f64, z: f64) -> BlochVector {
        BlochVector::new(x, y, z).unwrap()
    }

    #[test]
    fn octahedron_membership() {
        assert!(cr_member(SetId::B3, &bloch(0.3, 0.3, 0.3)));
        assert!(cr_member(SetId::B3, &bloch(-0.3, 0.3, -0.3)));
        assert!(cr_member(SetId::B3, &bloch(0.5, 0.25, 0.25)));
        assert!(!cr_member(SetId::B3, &bloch(0.8, 0.4, 0.0)));
    }

    #[test]
    fn extended_hull_membership_is_not_octant_symmetric() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(cr_member(SetId::B3Alpha0, &bloch(h - 1e-9, 0.0, h - 1e-9)));
        assert!(cr_member(SetId::B3Alpha0, &bloch(0.6, 0.0, 0.6)));
        assert!(cr_member(SetId::B3Alpha0, &bloch(-0.6, 0.0, -0.6)));
        // The bulges live along +-(1,0,1); the opposite diagonal does not
        // reach past the octahedron.
        assert!(!cr_member(SetId::B3Alpha0, &bloch(0.6, 0.0, -0.6)));
        assert!(cr_member(SetId::B3Alpha0, &bloch(0.7, 0.3, 0.0)));
        assert!(!cr_member(SetId::B3Alpha0, &bloch(0.75, 0.3, 0.0)));
    }

    #[test]
    fn cone_membership() {
        assert!(cr_member(SetId::BAlpha(0.0), &bloch(0.6, 0.2, 0.4)));
        assert!(!cr_member(SetId::BAlpha(0.0), &bloch(0.9, 0.3, 0.0)));
        // The angle parameter does not matter for the family-wide test.
        assert!(cr_member(SetId::BAlpha(1.3), &bloch(0.6, 0.2, 0.4)));
        assert!(cr_member(SetId::BAlpha(0.0), &bloch(1.0, 0.0, 0.0)));
    }

    #[test]
    fn facets_match_the_vertex_data() {
        let set = AvailableSet::from_id(SetId::B3Alpha0);
        let facets = b3_alpha0_facets();
        // Every vertex inside, every facet supported by at least three.
        for (n, b) in &facets {
            let mut on_facet = 0;
            for state in set.states() {
                let [x, y, z] = state.components();
                let value = n[0] * x + n[1] * y + n[2] * z;
                assert!(value <= b + 1e-12);
                if (value - b).abs() <= 1e-12 {
                    on_facet += 1;
                }
            }
            assert!(on_facet >= 3, "facet {n:?} touches {on_facet} vertices");
        }
        // Facet membership agrees with vertex-only reconstructibility.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let v = [
                rng.gen::<f64>() * 2.0 - 1.0,
                rng.gen::<f64>() * 2.0 - 1.0,
                rng.gen::<f64>() * 2.0 - 1.0,
            ];
            if v[0] * v[0] + v[1] * v[1] + v[2] * v[2] > 1.0 {
                continue;
            }
            let w = WeightVector::new(recover_by_subsets(&set, v)).unwrap();
            let mix = mixture_bloch(&set, &w).unwrap();
            let err = ((mix.x() - v[0]).powi(2)
                + (mix.y() - v[1]).powi(2)
                + (mix.z() - v[2]).powi(2))
            .sqrt();
            let member = cr_member(SetId::B3Alpha0, &bloch(v[0], v[1], v[2]));
            assert_eq!(member, err <= 1e-9, "disagreement at {v:?} (err {err})");
        }
    }

    #[test]
    fn decompose_degenerate_axis() {
        let d = decompose_b_alpha(&bloch(0.0, 0.5, 0.0)).unwrap();
        assert_eq!(d.alpha, 0.0);
        assert_abs_diff_eq!(d.weights.get(0), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(d.weights.get(1), 0.25, epsilon = 1e-15);
        assert_eq!(d.weights.get(2), 0.0);
    }

    #[test]
    fn decompose_generic_point_reconstructs() {
        let r = bloch(0.6, 0.2, 0.4);
        let d = decompose_b_alpha(&r).unwrap();
        let radial = 0.52f64.sqrt();
        assert_abs_diff_eq!(d.weights.get(2), radial, epsilon = 1e-15);
        assert_abs_diff_eq!(d.weights.get(0), 0.5 * (1.2 - radial), epsilon = 1e-15);
        assert_abs_diff_eq!(d.weights.get(1), 0.5 * (0.8 - radial), epsilon = 1e-15);
        assert_abs_diff_eq!(d.alpha.sin(), 0.6 / radial, epsilon = 1e-14);

        let set = AvailableSet::from_id(SetId::BAlpha(d.alpha));
        let mix = mixture_bloch(&set, &d.weights).unwrap();
        assert_abs_diff_eq!(mix.x(), r.x(), epsilon = 1e-12);
        assert_abs_diff_eq!(mix.y(), r.y(), epsilon = 1e-12);
        assert_abs_diff_eq!(mix.z(), r.z(), epsilon = 1e-12);
    }

    #[test]
    fn decompose_pure_x_state() {
        let d = decompose_b_alpha(&bloch(1.0, 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(d.alpha, std::f64::consts::FRAC_PI_2, epsilon = 1e-15);
        assert_eq!(d.weights.get(2), 1.0);
        assert_eq!(d.weights.get(0), 0.0);
        assert_eq!(d.weights.get(1), 0.0);
    }

    #[test]
    fn decompose_signed_input_wraps_the_angle() {
        let r = bloch(-0.3, -0.4, -0.2);
        let d = decompose_b_alpha(&r).unwrap();
        assert!(d.alpha >= 0.0 && d.alpha < 2.0 * std::f64::consts::PI);
        let set = AvailableSet::from_id(SetId::BAlpha(d.alpha));
        let mix = mixture_bloch(&set, &d.weights).unwrap();
        assert_abs_diff_eq!(mix.x(), r.x(), epsilon = 1e-12);
        assert_abs_diff_eq!(mix.y(), r.y(), epsilon = 1e-12);
        assert_abs_diff_eq!(mix.z(), r.z(), epsilon = 1e-12);
    }

    #[test]
    fn decompose_rejects_points_off_the_cone() {
        let err = decompose_b_alpha(&bloch(0.9, 0.3, 0.0)).unwrap_err();
        match err {
            Error::NotInRegion { deficit } => {
                assert_abs_diff_eq!(deficit, 0.2, epsilon = 1e-12);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn exact_volumes_are_the_closed_forms() {
        let b3 = relative_volume(SetId::B3, VolumeMethod::Exact);
        assert_eq!(b3.value, std::f64::consts::FRAC_1_PI);
        assert_eq!(b3.stderr, 0.0);
        let ext = relative_volume(SetId::B3Alpha0, VolumeMethod::Exact);
        assert_eq!(ext.value, std::f64::consts::SQRT_2 / std::f64::consts::PI);
        let cone = relative_volume(SetId::BAlpha(0.7), VolumeMethod::Exact);
        assert_eq!(cone.value, 0.5);
    }

    #[test]
    fn monte_carlo_agrees_with_exact_at_modest_samples() {
        for id in [SetId::B3, SetId::B3Alpha0, SetId::BAlpha(0.0)] {
            let exact = relative_volume(id, VolumeMethod::Exact).value;
            let mc = relative_volume(
                id,
                VolumeMethod::MonteCarlo {
                    samples: 40_000,
                    seed: 7,
                },
            );
            assert!(
                (mc.value - exact).abs() <= 4.0 * mc.stderr,
                "{id:?}: estimate {} vs exact {} (stderr {})",
                mc.value,
                exact,
                mc.stderr
            );
        }
    }

    #[test]
    fn monte_carlo_is_seed_deterministic() {
        let method = VolumeMethod::MonteCarlo {
            samples: 5_000,
            seed: 3,
        };
        let a = relative_volume(SetId::B3, method);
        let b = relative_volume(SetId::B3, method);
        assert_eq!(a.value, b.value);
    }
}
