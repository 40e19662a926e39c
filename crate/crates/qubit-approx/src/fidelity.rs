//! Fidelity-optimal convex approximation over the six-state family.
//!
//! On the nonnegative octant the optimum is piecewise closed-form over five
//! regions:
//!
//! * `S1` (x + y + z <= 1): the target is exactly representable.
//! * `S2`: a cap around the symmetric direction where the three positive-axis
//!   states all carry weight.
//! * `S3`/`S4`/`S5`: edge zones where exactly two states carry weight
//!   (x-z, y-z, x-y pairs respectively).
//!
//! Signs are folded away by the internal octant normalization and undone on
//! the weights. Where several two-weight zones apply, the smallest distance
//! wins with ties resolved in the order S3, S4, S5. A concavity argument
//! makes the stationarity system sufficient, so solutions can be certified a
//! posteriori through [`kkt_residual`].

use crate::bloch::{fidelity, BlochVector};
use crate::error::{Error, Result};
use crate::octant::octant_normalize;
use crate::oracle::{oracle_solve, OracleConfig};
use crate::result::{
    ApproximationResult, FreeParams, InequalityRecord, Metric, Provenance, Region, RegionLabel,
    RegionTag,
};
use crate::sets::{AvailableSet, SetId, WeightVector};
use crate::tol;

/// Optimality certificate residuals for a six-state fidelity solution.
///
/// Multipliers are reconstructed from the stationarity system on the support
/// of the weights; all residual fields are nonnegative and a valid interior
/// closed form keeps every one of them at rounding level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktReport {
    /// Normalization multiplier (mean stationarity value over the support).
    pub lambda: f64,
    /// Nonnegativity multipliers; zero on the support by complementarity.
    pub lambda_i: [f64; 6],
    /// max_i |g_i - lambda_i - lambda| over the stationarity system.
    pub stationarity: f64,
    /// max_i |lambda_i * p_i|.
    pub complementarity: f64,
    /// max(|sum p - 1|, negative-weight excess).
    pub feasibility: f64,
}

/// Outcome of classifying an octant point, with enough data to build weights.
enum Resolved {
    S1,
    S2,
    TwoWeight(TwoWeightZone),
    /// No closed form applied (reachable only through fp coincidences on
    /// region seams); the caller falls back to the search oracle.
    None,
}

#[derive(Clone, Copy)]
struct TwoWeightZone {
    label: RegionLabel,
    /// Indices into the six-state order for the (low, high) weight pair.
    pair: (usize, usize),
    distance: f64,
    weights: (f64, f64),
}

/// The six-state region of the octant-normalized target, together with every
/// inequality evaluated along the way.
pub fn classify(r: &BlochVector) -> Region {
    let o = octant_normalize(r);
    let mut fired = Vec::new();
    let resolved = resolve(&o.point, &mut fired);
    let label = match resolved {
        Resolved::S1 => RegionLabel::S1,
        Resolved::S2 => RegionLabel::S2,
        Resolved::TwoWeight(zone) => zone.label,
        // Defensive: pick the two-weight zone of smallest distance ignoring
        // weight positivity; unreachable for valid targets (the candidate
        // admission already tolerates boundary ties).
        Resolved::None => two_weight_candidates(&o.point)
            .into_iter()
            .min_by(|a, b| a.distance.total_cmp(&b.distance))
            .map(|z| z.label)
            .unwrap_or(RegionLabel::S3),
    };
    Region { label, fired }
}

fn resolve(p: &BlochVector, fired: &mut Vec<InequalityRecord>) -> Resolved {
    let [x, y, z] = p.components();
    let sum = x + y + z;
    let s1 = InequalityRecord::le("x+y+z <= 1", sum, 1.0);
    let in_s1 = s1.holds;
    fired.push(s1);
    if in_s1 {
        return Resolved::S1;
    }

    // S2 membership: per axis k with partner sum s, the pair of disjuncts
    //   s < sqrt(1 - 2k^2) + k   (false when the radicand is negative)
    //   s < 2k
    // is exactly positivity of that axis' three-weight solution.
    let mut in_s2 = true;
    for (name_a, name_b, partner_sum, k) in [
        ("x+y < sqrt(1-2z^2)+z", "x+y < 2z", x + y, z),
        ("y+z < sqrt(1-2x^2)+x", "y+z < 2x", y + z, x),
        ("x+z < sqrt(1-2y^2)+y", "x+z < 2y", x + z, y),
    ] {
        let radicand = 1.0 - 2.0 * k * k;
        let first = if radicand >= 0.0 {
            InequalityRecord::lt(name_a, partner_sum, radicand.sqrt() + k)
        } else {
            // Negative radicand: the disjunct evaluates false by convention.
            InequalityRecord {
                name: name_a,
                lhs: partner_sum,
                op: "<",
                rhs: f64::NEG_INFINITY,
                holds: false,
            }
        };
        let second = InequalityRecord::lt(name_b, partner_sum, 2.0 * k);
        let pair_holds = first.holds || second.holds;
        fired.push(first);
        fired.push(second);
        in_s2 = in_s2 && pair_holds;
    }
    if in_s2 {
        return Resolved::S2;
    }

    let mut best: Option<TwoWeightZone> = None;
    for zone in two_weight_candidates(p) {
        let (name, lhs, rhs) = match zone.label {
            RegionLabel::S3 => ("x+z > sqrt(1-y^2)", x + z, (1.0 - y * y).max(0.0).sqrt()),
            RegionLabel::S4 => ("y+z > sqrt(1-x^2)", y + z, (1.0 - x * x).max(0.0).sqrt()),
            _ => ("x+y > sqrt(1-z^2)", x + y, (1.0 - z * z).max(0.0).sqrt()),
        };
        let record = InequalityRecord::gt(name, lhs, rhs);
        // Admit boundary ties (continuity makes the forms agree there) and
        // require both weights nonnegative up to the clamp tolerance.
        let admissible = lhs > rhs - tol::WEIGHT
            && zone.weights.0 >= -tol::WEIGHT
            && zone.weights.1 >= -tol::WEIGHT;
        fired.push(record);
        // A later zone must beat the incumbent by more than rounding noise;
        // on the pure boundary all three coincide and the first stays.
        if admissible && best.map_or(true, |b| zone.distance + tol::WEIGHT < b.distance) {
            best = Some(zone);
        }
    }
    match best {
        Some(zone) => Resolved::TwoWeight(zone),
        None => Resolved::None,
    }
}

/// The three two-weight zones evaluated at an octant point, in tie-break
/// order. Distances and weights come straight from the closed forms with
/// radicands clamped at zero.
fn two_weight_candidates(p: &BlochVector) -> [TwoWeightZone; 3] {
    let [x, y, z] = p.components();
    // (label, pair indices, paired-axis sum, off-axis component, numerator)
    // The low member of the pair gets 1/2 - num/(2 sqrt(R)).
    let mk = |label, pair, pair_sum: f64, off: f64, num: f64| {
        let radicand = 2.0 - pair_sum * pair_sum - 2.0 * off * off;
        debug_assert!(radicand > -tol::RADICAND);
        // Below the radicand tolerance the point sits on the pure boundary:
        // the 0/0 weight limit is an even split, and the root is rounding
        // noise that would desync the distance from the reported weights.
        let (root, weights) = if radicand < tol::RADICAND {
            (0.0, (0.5, 0.5))
        } else {
            let root = radicand.sqrt();
            (root, (0.5 - num / (2.0 * root), 0.5 + num / (2.0 * root)))
        };
        let distance = 0.5 - (root + pair_sum) / 4.0;
        TwoWeightZone {
            label,
            pair,
            distance,
            weights,
        }
    };
    [
        // S3: states |0> (z) and |2> (x); low member is |0>.
        mk(RegionLabel::S3, (0, 2), x + z, y, x - z),
        // S4: states |0> (z) and |4> (y); low member is |0>.
        mk(RegionLabel::S4, (0, 4), y + z, x, y - z),
        // S5: states |2> (x) and |4> (y); low member is |2>.
        mk(RegionLabel::S5, (2, 4), x + y, z, y - x),
    ]
}

/// Fidelity-optimal approximation of `r` by mixtures of the six-state set.
///
/// Returns the closed-form solution for the classified region; the defensive
/// seam fallback delegates to the search oracle and is marked in
/// `provenance`.
pub fn solve(r: &BlochVector) -> ApproximationResult {
    let o = octant_normalize(r);
    let mut fired = Vec::new();
    let resolved = resolve(&o.point, &mut fired);
    let [x, y, z] = o.point.components();

    let (label, octant_weights, distance, free_params) = match resolved {
        Resolved::S1 => {
            let p1 = 0.5 * (1.0 - x - y - z);
            let w = [0.5 * (1.0 - x - y + z), p1, x, 0.0, y, 0.0];
            let free = FreeParams {
                t1: 0.0,
                t2: 0.0,
                t_sum_max: p1.max(0.0),
            };
            (RegionLabel::S1, w, 0.0, Some(free))
        }
        Resolved::S2 => {
            let s = x + y + z;
            let radicand = 3.0 - s * s;
            // Same pure-boundary snap as the two-weight zones: at the
            // symmetric corner the weight limit is the uniform split and the
            // root is rounding noise.
            let (distance, w) = if radicand < tol::RADICAND {
                (
                    0.5 - s / 6.0,
                    [1.0 / 3.0, 0.0, 1.0 / 3.0, 0.0, 1.0 / 3.0, 0.0],
                )
            } else {
                let scale = std::f64::consts::SQRT_2 / (3.0 * radicand.sqrt());
                (
                    0.5 - s / 6.0 - (2.0 * radicand).sqrt() / 6.0,
                    [
                        1.0 / 3.0 - scale * (x + y - 2.0 * z),
                        0.0,
                        1.0 / 3.0 - scale * (-2.0 * x + y + z),
                        0.0,
                        1.0 / 3.0 - scale * (x - 2.0 * y + z),
                        0.0,
                    ],
                )
            };
            (RegionLabel::S2, w, distance, None)
        }
        Resolved::TwoWeight(zone) => {
            let mut w = [0.0; 6];
            w[zone.pair.0] = zone.weights.0;
            w[zone.pair.1] = zone.weights.1;
            (zone.label, w, zone.distance, None)
        }
        Resolved::None => {
            let set = AvailableSet::from_id(SetId::B3);
            return oracle_solve(r, &set, Metric::Fidelity, &OracleConfig::default());
        }
    };

    let weights = WeightVector::new(o.swap_weights(octant_weights).to_vec())
        .expect("closed-form weights are valid by region membership");
    let set = AvailableSet::from_id(SetId::B3);
    let optimal_bloch =
        crate::sets::mixture_bloch(&set, &weights).expect("six weights over the six-state set");
    debug_assert!(
        (distance - (1.0 - fidelity(r, &optimal_bloch))).abs() <= 1e-10,
        "closed-form distance {distance} disagrees with reconstructed fidelity {}",
        1.0 - fidelity(r, &optimal_bloch)
    );

    ApproximationResult {
        metric: Metric::Fidelity,
        distance,
        weights,
        optimal_bloch,
        region: Some(RegionTag::Fidelity(Region { label, fired })),
        free_params,
        provenance: Provenance::ClosedForm,
        warning: None,
    }
}

/// Certificate residuals for six-state weights against target `r`.
///
/// Refuses near-pure targets (|r| >= 1 - 1e-9), where the stationarity
/// system's conditioning collapses. Weights are mapped into the octant frame
/// first; the sign swap is an exact symmetry, so the certificate transfers.
pub fn kkt_residual_weights(r: &BlochVector, weights: &WeightVector) -> Result<KktReport> {
    if r.is_near_pure() {
        return Err(Error::PureStateUnsupported { length: r.norm() });
    }
    if weights.len() != 6 {
        return Err(Error::CardinalityMismatch {
            expected: 6,
            actual: weights.len(),
        });
    }
    let o = octant_normalize(r);
    let mut w = [0.0; 6];
    w.copy_from_slice(weights.as_slice());
    let w = o.swap_weights(w);
    let [x, y, z] = o.point.components();

    let vx = w[2] - w[3];
    let vy = w[4] - w[5];
    let vz = w[0] - w[1];
    let defect_v = (1.0 - (vx * vx + vy * vy + vz * vz)).max(1e-300);
    let c = (o.point.defect() / defect_v).sqrt();

    // Stationarity parts g_i = -dF/dp_i; antipodal states negate the part.
    let g = [
        0.5 * (c * vz - z),
        -0.5 * (c * vz - z),
        0.5 * (c * vx - x),
        -0.5 * (c * vx - x),
        0.5 * (c * vy - y),
        -0.5 * (c * vy - y),
    ];

    let support: Vec<usize> = (0..6).filter(|&i| w[i] > tol::WEIGHT).collect();
    let lambda = if support.is_empty() {
        0.0
    } else {
        support.iter().map(|&i| g[i]).sum::<f64>() / support.len() as f64
    };

    let mut lambda_i = [0.0; 6];
    for i in 0..6 {
        if !support.contains(&i) {
            // Clamp at zero: a negative requirement shows up as a
            // stationarity residual instead of a sign-violating multiplier.
            lambda_i[i] = (g[i] - lambda).max(0.0);
        }
    }

    let stationarity = (0..6)
        .map(|i| (g[i] - lambda_i[i] - lambda).abs())
        .fold(0.0, f64::max);
    let complementarity = (0..6)
        .map(|i| (lambda_i[i] * w[i]).abs())
        .fold(0.0, f64::max);
    let sum: f64 = w.iter().sum();
    let negativity = w.iter().fold(0.0f64, |m, &wi| m.max(-wi));
    let feasibility = (sum - 1.0).abs().max(negativity);

    Ok(KktReport {
        lambda,
        lambda_i,
        stationarity,
        complementarity,
        feasibility,
    })
}

/// Certificate residuals for a solver result; see [`kkt_residual_weights`].
pub fn kkt_residual(r: &BlochVector, result: &ApproximationResult) -> Result<KktReport> {
    kkt_residual_weights(r, &result.weights)
}
