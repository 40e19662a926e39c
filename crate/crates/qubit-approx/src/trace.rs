//! Trace-norm-optimal approximation over the six-state family.
//!
//! The trace norm between qubits is the Euclidean Bloch distance, so the
//! optimal mixture is the Euclidean projection of the target onto the unit
//! octahedron. On the nonnegative octant the projection is piecewise affine:
//!
//! * `S1`: inside the octahedron, the target reproduces itself.
//! * `S2p`: the projection lands on the interior of the simplex facet
//!   x + y + z = 1 and all three positive-axis states carry weight.
//! * `S3p`/`S4p`/`S5p`: the facet projection would leave the octant, so the
//!   optimum lands on an edge and only two states carry weight.
//!
//! [`project_octahedron`] is an independent sort-based projector used to
//! cross-check the closed forms.

use crate::bloch::{trace_distance, BlochVector};
use crate::octant::octant_normalize;
use crate::result::{
    ApproximationResult, FreeParams, InequalityRecord, Metric, Provenance, RegionTag, TraceRegion,
    TraceRegionLabel,
};
use crate::sets::{mixture_bloch, AvailableSet, SetId, WeightVector};

/// Trace region of the octant-normalized target with the evaluated
/// predicates.
pub fn classify_trace(r: &BlochVector) -> TraceRegion {
    let p = octant_normalize(r).point;
    let [x, y, z] = p.components();
    let mut fired = Vec::new();

    let s1 = InequalityRecord::le("x+y+z <= 1", x + y + z, 1.0);
    let in_s1 = s1.holds;
    fired.push(s1);
    if in_s1 {
        return TraceRegion {
            label: TraceRegionLabel::S1,
            fired,
        };
    }

    // Facet region: the facet projection keeps every coordinate nonnegative.
    let facet = [
        InequalityRecord::le("x+y <= 1+2z", x + y, 1.0 + 2.0 * z),
        InequalityRecord::le("y+z <= 1+2x", y + z, 1.0 + 2.0 * x),
        InequalityRecord::le("x+z <= 1+2y", x + z, 1.0 + 2.0 * y),
    ];
    let in_facet = facet.iter().all(|r| r.holds);
    fired.extend(facet);
    if in_facet {
        return TraceRegion {
            label: TraceRegionLabel::S2p,
            fired,
        };
    }

    // Exactly one facet condition can fail inside the ball; each failure
    // sends the projection to the opposite edge.
    let s3p = [
        InequalityRecord::lt("1-z < x+y", 1.0 - z, x + y),
        InequalityRecord::le("x+y <= 1+2z", x + y, 1.0 + 2.0 * z),
        InequalityRecord::le("y+z <= 1+2x", y + z, 1.0 + 2.0 * x),
        InequalityRecord::gt("x+z > 1+2y", x + z, 1.0 + 2.0 * y),
    ];
    if s3p.iter().all(|r| r.holds) {
        fired.extend(s3p);
        return TraceRegion {
            label: TraceRegionLabel::S3p,
            fired,
        };
    }
    let s4p = [
        InequalityRecord::lt("1-z < x+y", 1.0 - z, x + y),
        InequalityRecord::le("x+y <= 1+2z", x + y, 1.0 + 2.0 * z),
        InequalityRecord::gt("y+z > 1+2x", y + z, 1.0 + 2.0 * x),
        InequalityRecord::le("x+z <= 1+2y", x + z, 1.0 + 2.0 * y),
    ];
    if s4p.iter().all(|r| r.holds) {
        fired.extend(s4p);
        return TraceRegion {
            label: TraceRegionLabel::S4p,
            fired,
        };
    }
    let s5p = InequalityRecord::gt("x+y > 1+2z", x + y, 1.0 + 2.0 * z);
    if s5p.holds {
        fired.push(s5p);
        return TraceRegion {
            label: TraceRegionLabel::S5p,
            fired,
        };
    }

    TraceRegion {
        label: TraceRegionLabel::Other,
        fired,
    }
}

/// Trace-optimal approximation of `r` by mixtures of the six-state set.
///
/// Closed-form weights per region; the defensive `Other` label routes
/// through [`project_octahedron`] with minimal-support weight recovery.
pub fn solve_trace(r: &BlochVector) -> ApproximationResult {
    let o = octant_normalize(r);
    let [x, y, z] = o.point.components();
    let region = classify_trace(r);

    let (octant_weights, free_params) = match region.label {
        TraceRegionLabel::S1 => {
            let p1 = 0.5 * (1.0 - x - y - z);
            let w = [0.5 * (1.0 - x - y + z), p1, x, 0.0, y, 0.0];
            let free = FreeParams {
                t1: 0.0,
                t2: 0.0,
                t_sum_max: p1.max(0.0),
            };
            (w, Some(free))
        }
        TraceRegionLabel::S2p => {
            let w = [
                (1.0 + 2.0 * z - x - y) / 3.0,
                0.0,
                (1.0 + 2.0 * x - z - y) / 3.0,
                0.0,
                (1.0 + 2.0 * y - z - x) / 3.0,
                0.0,
            ];
            (w, None)
        }
        TraceRegionLabel::S3p => {
            let d = 0.5 * (x - z);
            ([0.5 - d, 0.0, 0.5 + d, 0.0, 0.0, 0.0], None)
        }
        TraceRegionLabel::S4p => {
            let d = 0.5 * (y - z);
            ([0.5 - d, 0.0, 0.0, 0.0, 0.5 + d, 0.0], None)
        }
        TraceRegionLabel::S5p => {
            let d = 0.5 * (x - y);
            ([0.0, 0.0, 0.5 + d, 0.0, 0.5 - d, 0.0], None)
        }
        TraceRegionLabel::Other => {
            let v = project_octahedron(&o.point);
            let [px, py, pz] = v.components();
            let slack = 0.5 * (1.0 - px.abs() - py.abs() - pz.abs()).max(0.0);
            let w = [
                pz.max(0.0) + slack,
                (-pz).max(0.0) + slack,
                px.max(0.0),
                (-px).max(0.0),
                py.max(0.0),
                (-py).max(0.0),
            ];
            (w, None)
        }
    };

    let weights = WeightVector::new(o.swap_weights(octant_weights).to_vec())
        .expect("projection weights are valid by construction");
    let set = AvailableSet::from_id(SetId::B3);
    let optimal_bloch =
        mixture_bloch(&set, &weights).expect("six weights over the six-state set");
    let distance = trace_distance(r, &optimal_bloch);

    ApproximationResult {
        metric: Metric::TraceNorm,
        distance,
        weights,
        optimal_bloch,
        region: Some(RegionTag::Trace(region)),
        free_params,
        provenance: Provenance::ClosedForm,
        warning: None,
    }
}

/// Euclidean projection onto the unit octahedron {v : |v|_1 <= 1}.
///
/// Sort-based soft thresholding; kept independent of the closed forms above
/// so the two can check each other.
pub fn project_octahedron(r: &BlochVector) -> BlochVector {
    let c = r.components();
    let l1: f64 = c.iter().map(|v| v.abs()).sum();
    if l1 <= 1.0 {
        return *r;
    }
    let mut mag = [c[0].abs(), c[1].abs(), c[2].abs()];
    mag.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (j, m) in mag.iter().enumerate() {
        cumulative += m;
        let candidate = (cumulative - 1.0) / (j + 1) as f64;
        if m - candidate > 0.0 {
            theta = candidate;
        }
    }
    let proj = |v: f64| v.signum() * (v.abs() - theta).max(0.0);
    BlochVector::new(proj(c[0]), proj(c[1]), proj(c[2])).expect("projection stays in the ball")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn bloch(x: f64, y: f64, z: f64) -> BlochVector {
        BlochVector::new(x, y, z).unwrap()
    }

    #[test]
    fn classifies_the_archetypes() {
        assert_eq!(classify_trace(&bloch(0.2, 0.3, 0.4)).label, TraceRegionLabel::S1);
        assert_eq!(classify_trace(&bloch(0.5, 0.5, 0.5)).label, TraceRegionLabel::S2p);
        // Boundary x+z = 1+2y goes to the facet region (inclusive bound).
        assert_eq!(classify_trace(&bloch(0.9, 0.1, 0.3)).label, TraceRegionLabel::S2p);
        assert_eq!(classify_trace(&bloch(0.9, 0.0, 0.3)).label, TraceRegionLabel::S3p);
        assert_eq!(classify_trace(&bloch(0.0, 0.9, 0.3)).label, TraceRegionLabel::S4p);
        assert_eq!(classify_trace(&bloch(0.8, 0.55, 0.0)).label, TraceRegionLabel::S5p);
    }

    #[test]
    fn facet_weights_match_frozen_values() {
        let res = solve_trace(&bloch(0.9, 0.1, 0.3));
        let w = res.weights.as_slice();
        assert_abs_diff_eq!(w[0], 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(w[2], 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(w[4], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(res.optimal_bloch.x(), 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(res.optimal_bloch.z(), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(res.distance, 0.03f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn symmetric_cap_projects_to_the_facet_center() {
        let res = solve_trace(&bloch(0.5, 0.5, 0.5));
        assert_abs_diff_eq!(res.distance, 0.288675134594813, epsilon = 1e-14);
        for i in [0, 2, 4] {
            assert_abs_diff_eq!(res.weights.get(i), 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn edge_region_keeps_two_weights() {
        let res = solve_trace(&bloch(0.9, 0.0, 0.3));
        let w = res.weights.as_slice();
        assert_abs_diff_eq!(w[0], 0.5 - 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(w[2], 0.5 + 0.3, epsilon = 1e-15);
        assert_eq!(w[4], 0.0);
        // Agrees with the independent projector.
        let proj = project_octahedron(&bloch(0.9, 0.0, 0.3));
        assert_abs_diff_eq!(res.optimal_bloch.x(), proj.x(), epsilon = 1e-15);
        assert_abs_diff_eq!(res.optimal_bloch.z(), proj.z(), epsilon = 1e-15);
    }

    #[test]
    fn interior_targets_are_fixed_points_of_the_projection() {
        let r = bloch(0.2, 0.3, 0.4);
        assert_eq!(project_octahedron(&r), r);
        let res = solve_trace(&r);
        assert_eq!(res.distance, 0.0);
        assert_abs_diff_eq!(res.optimal_bloch.y(), 0.3, epsilon = 1e-15);
    }

    #[test]
    fn projection_matches_hand_values() {
        let v = project_octahedron(&bloch(0.9, 0.1, 0.3));
        assert_abs_diff_eq!(v.x(), 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(v.y(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.z(), 0.2, epsilon = 1e-15);

        let c = 1.0 / 3f64.sqrt();
        let v = project_octahedron(&bloch(c, c, c));
        assert_abs_diff_eq!(v.x(), 1.0 / 3.0, epsilon = 1e-15);

        // Signs survive the projection.
        let v = project_octahedron(&bloch(-0.9, 0.1, -0.3));
        assert_abs_diff_eq!(v.x(), -0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(v.z(), -0.2, epsilon = 1e-15);
    }

    #[test]
    fn negative_components_map_to_antipodal_weights() {
        let res = solve_trace(&bloch(-0.9, 0.1, -0.3));
        let w = res.weights.as_slice();
        assert_abs_diff_eq!(w[1], 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(w[3], 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(res.distance, 0.03f64.sqrt(), epsilon = 1e-15);
    }
}
