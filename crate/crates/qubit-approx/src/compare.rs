//! Eigenvalue-gap comparison between the fidelity-optimal and
//! trace-optimal approximations.
//!
//! The two solvers usually return different mixtures. A natural yardstick
//! for "which metric got closer" is the spectral gap
//! g(target, approx) = |h+ - l+| + |h- - l-| over the density-matrix
//! eigenvalues, which collapses to the Bloch-length difference
//! | |approx| - |target| |. Over large parts of the ball the ordering of
//! the two gaps is provable; [`compare`] reports the regime a target falls
//! in and the witness quantities behind the classification.
//!
//! Regimes, keyed on the solver region labels:
//!
//! * both solvers exact (octahedron interior): gaps are 0.
//! * fidelity three-weight region: the fidelity gap never exceeds the
//!   trace gap.
//! * trace two-weight regions: same ordering, per dominant pair.
//! * the overlap zone (trace facet region meets fidelity two-weight
//!   regions): pointwise sign tests decide; where they are silent the
//!   ordering genuinely goes both ways.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bloch::{eigenvalues, BlochVector, EigenPair};
use crate::error::{Error, Result};
use crate::fidelity;
use crate::octant::octant_normalize;
use crate::result::{
    ApproximationResult, InequalityRecord, Metric, RegionLabel, RegionTag, TraceRegionLabel,
};
use crate::trace;

/// Spectral gap |h+ - l+| + |h- - l-| between the eigenvalue pairs of the
/// two states; algebraically | |approx| - |target| | in Bloch lengths.
pub fn eigenvalue_gap(target: &BlochVector, approx: &BlochVector) -> f64 {
    let t = eigenvalues(target);
    let a = eigenvalues(approx);
    (a.plus - t.plus).abs() + (a.minus - t.minus).abs()
}

/// Which gap-ordering statement covers the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Inside the octahedron both solvers are exact; both gaps vanish.
    BothExactS1,
    /// Fidelity three-weight region: fidelity gap <= trace gap.
    FidelityFavoredS2,
    /// Trace two-weight region, xz pair: fidelity gap <= trace gap.
    FidelityFavoredS3p,
    /// Trace two-weight region, yz pair: fidelity gap <= trace gap.
    FidelityFavoredS4p,
    /// Trace two-weight region, xy pair: fidelity gap <= trace gap.
    FidelityFavoredS5p,
    /// Overlap zone, sign tests conclusive for fidelity.
    OverlapFidelityFavored,
    /// Overlap zone, sign tests conclusive for the trace baseline.
    OverlapTraceFavored,
    /// Overlap zone, sign tests silent: no ordering is claimed.
    OverlapInconclusive,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::BothExactS1 => "both_exact_s1",
            Regime::FidelityFavoredS2 => "fidelity_favored_s2",
            Regime::FidelityFavoredS3p => "fidelity_favored_s3p",
            Regime::FidelityFavoredS4p => "fidelity_favored_s4p",
            Regime::FidelityFavoredS5p => "fidelity_favored_s5p",
            Regime::OverlapFidelityFavored => "overlap_fidelity_favored",
            Regime::OverlapTraceFavored => "overlap_trace_favored",
            Regime::OverlapInconclusive => "overlap_inconclusive",
        }
    }

    /// The metric whose gap is provably no larger at this target, if any.
    pub fn favored(self) -> Option<Metric> {
        match self {
            Regime::BothExactS1 | Regime::OverlapInconclusive => None,
            Regime::OverlapTraceFavored => Some(Metric::TraceNorm),
            _ => Some(Metric::Fidelity),
        }
    }
}

/// Raw quantities the regime decision was made from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessValues {
    pub target_eigenvalues: EigenPair,
    pub fidelity_eigenvalues: EigenPair,
    pub trace_eigenvalues: EigenPair,
    /// Octant component sum |x| + |y| + |z|.
    pub component_sum: f64,
    pub norm_sq: f64,
    /// Overlap-zone pair term, keyed on the fidelity region's dominant
    /// pair; None outside the overlap zone.
    pub pair_term: Option<f64>,
    /// Overlap-zone curvature term 1 - 3|r|^2 + s^2; None outside.
    pub curvature: Option<f64>,
}

/// Both optimal approximations, their spectral gaps, and the regime.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub g_fidelity: f64,
    pub g_trace: f64,
    pub regime: Regime,
    pub fidelity_result: ApproximationResult,
    pub trace_result: ApproximationResult,
    pub witness: WitnessValues,
    /// The inequalities behind the regime decision, with values.
    pub checks: Vec<InequalityRecord>,
}

/// Runs both solvers on `r` and classifies the gap ordering.
///
/// Ordering claims attach only to the regimes that carry them; in
/// `OverlapInconclusive` the report states facts and no order.
pub fn compare(r: &BlochVector) -> ComparisonReport {
    let fidelity_result = fidelity::solve(r);
    let trace_result = trace::solve_trace(r);
    let g_fidelity = eigenvalue_gap(r, &fidelity_result.optimal_bloch);
    let g_trace = eigenvalue_gap(r, &trace_result.optimal_bloch);

    let oct = octant_normalize(r);
    let [x, y, z] = oct.point.components();
    let s = x + y + z;
    let s_sq = s * s;
    let norm_sq = r.norm_sq();

    let fid_label = match &fidelity_result.region {
        Some(RegionTag::Fidelity(region)) => Some(region.label),
        _ => None,
    };
    let trace_label = match &trace_result.region {
        Some(RegionTag::Trace(region)) => Some(region.label),
        _ => None,
    };

    let mut checks = Vec::new();
    let mut pair_term = None;
    let mut curvature = None;

    let regime = match (fid_label, trace_label) {
        (Some(RegionLabel::S1), _) => {
            debug_assert_eq!(trace_label, Some(TraceRegionLabel::S1));
            Regime::BothExactS1
        }
        (Some(RegionLabel::S2), _) => {
            // The three-weight region sits inside the trace facet region.
            debug_assert_eq!(trace_label, Some(TraceRegionLabel::S2p));
            // Pivotal bound: the fidelity optimum is at least as long as
            // the facet projection, so its spectral gap is no larger.
            checks.push(InequalityRecord::le(
                "facet_radius_sq <= three_weight_radius_sq",
                (1.0 + 3.0 * norm_sq - s_sq) / 3.0,
                (1.0 + 2.0 * norm_sq - s_sq) / (3.0 - s_sq),
            ));
            Regime::FidelityFavoredS2
        }
        (_, Some(TraceRegionLabel::S3p)) => {
            checks.push(two_weight_radicand_record(x, y, z));
            Regime::FidelityFavoredS3p
        }
        (_, Some(TraceRegionLabel::S4p)) => {
            checks.push(two_weight_radicand_record(y, x, z));
            Regime::FidelityFavoredS4p
        }
        (_, Some(TraceRegionLabel::S5p)) => {
            checks.push(two_weight_radicand_record(x, z, y));
            Regime::FidelityFavoredS5p
        }
        (Some(label), Some(TraceRegionLabel::S2p)) => {
            let pt = match label {
                RegionLabel::S3 => (x + z) * (x + z) + 2.0 * y * y,
                RegionLabel::S4 => (y + z) * (y + z) + 2.0 * x * x,
                RegionLabel::S5 => (x + y) * (x + y) + 2.0 * z * z,
                // S1/S2 handled above.
                RegionLabel::S1 | RegionLabel::S2 => unreachable!(),
            };
            let curv = 1.0 - 3.0 * norm_sq + s_sq;
            pair_term = Some(pt);
            curvature = Some(curv);
            checks.push(InequalityRecord::le("pair_term <= sum_sq", pt, s_sq));
            checks.push(InequalityRecord::le("curvature <= 0", curv, 0.0));
            checks.push(InequalityRecord::le("sum_sq <= pair_term", s_sq, pt));
            checks.push(InequalityRecord::le("0 <= curvature", 0.0, curv));
            if s_sq >= pt && curv <= 0.0 {
                Regime::OverlapFidelityFavored
            } else if s_sq <= pt && curv >= 0.0 {
                Regime::OverlapTraceFavored
            } else {
                Regime::OverlapInconclusive
            }
        }
        // Oracle fallbacks carry no label; claim nothing.
        _ => Regime::OverlapInconclusive,
    };

    match regime.favored() {
        Some(Metric::Fidelity) => debug_assert!(
            g_fidelity <= g_trace + 1e-12,
            "gap ordering violated: {g_fidelity} > {g_trace}"
        ),
        Some(Metric::TraceNorm) => debug_assert!(
            g_trace <= g_fidelity + 1e-12,
            "gap ordering violated: {g_trace} > {g_fidelity}"
        ),
        None => {}
    }
    if regime == Regime::BothExactS1 {
        debug_assert!(g_fidelity <= 1e-12 && g_trace <= 1e-12);
    }

    ComparisonReport {
        g_fidelity,
        g_trace,
        regime,
        witness: WitnessValues {
            target_eigenvalues: eigenvalues(r),
            fidelity_eigenvalues: eigenvalues(&fidelity_result.optimal_bloch),
            trace_eigenvalues: eigenvalues(&trace_result.optimal_bloch),
            component_sum: s,
            norm_sq,
            pair_term,
            curvature,
        },
        fidelity_result,
        trace_result,
        checks,
    }
}

/// Record of the two-weight radicand bound with pair components (a, c) and
/// off-pair component b: (a-c)^2 [(a+c)^2 + 2b^2 - 1] >= 0 after dividing
/// by the positive radicand 2 [2 - (a+c)^2 - 2b^2].
fn two_weight_radicand_record(a: f64, b: f64, c: f64) -> InequalityRecord {
    let pair = (a + c) * (a + c) + 2.0 * b * b;
    let margin = (a - c) * (a - c) * (pair - 1.0) / (2.0 * (2.0 - pair));
    InequalityRecord::le("0 <= two_weight_radius_gap", 0.0, margin)
}

/// Tally of one sampled region in [`inequality_suite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCheck {
    pub checked: usize,
    pub violations: usize,
    pub worst_margin: f64,
}

impl RegionCheck {
    fn new() -> Self {
        Self {
            checked: 0,
            violations: 0,
            worst_margin: f64::INFINITY,
        }
    }

    fn record(&mut self, margin: f64) {
        self.checked += 1;
        if margin < -1e-12 {
            self.violations += 1;
        }
        self.worst_margin = self.worst_margin.min(margin);
    }
}

/// Sampled evidence for the proven orderings and the overlap-zone behavior.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalitySuiteReport {
    pub samples_per_region: usize,
    /// Pivotal radius bound over the three-weight region.
    pub three_weight: RegionCheck,
    /// Radicand bound over the trace two-weight region (xz pair).
    pub two_weight: RegionCheck,
    /// Samples whose optimum came out longer than the target (the proofs
    /// assume the absolute values open one way; expected 0).
    pub branch_flips: usize,
    /// Proven-regime samples where the gap ordering failed (expected 0).
    pub ordering_violations: usize,
    pub overlap_fidelity_wins: usize,
    pub overlap_trace_wins: usize,
    pub overlap_inconclusive: usize,
    /// Within inconclusive samples, counts of each strict ordering, kept
    /// separately so a claim-free regime still shows which way the data
    /// leans. Sampling to date has the fidelity gap ahead throughout.
    pub inconclusive_fidelity_ahead: usize,
    pub inconclusive_trace_ahead: usize,
}

fn sample_region(
    rng: &mut ChaCha8Rng,
    region: &'static str,
    wanted: usize,
    mut pred: impl FnMut(&BlochVector) -> bool,
    mut visit: impl FnMut(&BlochVector),
) -> Result<()> {
    let cap = 5000usize.saturating_mul(wanted).max(1_000_000);
    let mut found = 0;
    let mut attempts = 0;
    while found < wanted {
        if attempts >= cap {
            return Err(Error::SamplingExhausted {
                region,
                wanted,
                attempts,
            });
        }
        attempts += 1;
        let x: f64 = rng.gen();
        let y: f64 = rng.gen();
        let z: f64 = rng.gen();
        if x * x + y * y + z * z > 1.0 {
            continue;
        }
        let point = BlochVector::new(x, y, z).expect("in-ball sample");
        if !pred(&point) {
            continue;
        }
        visit(&point);
        found += 1;
    }
    Ok(())
}

/// Samples each ordering regime and evaluates its inequality with the
/// absolute values left intact, counting violations and branch flips
/// instead of assuming the proofs' sign choices.
///
/// Deterministic for a fixed (samples, seed). Fails with
/// `SamplingExhausted` only if a region predicate stops matching anything,
/// which would signal a region-definition bug.
pub fn inequality_suite(samples: usize, seed: u64) -> Result<InequalitySuiteReport> {
    assert!(samples >= 1, "need at least one sample per region");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = InequalitySuiteReport {
        samples_per_region: samples,
        three_weight: RegionCheck::new(),
        two_weight: RegionCheck::new(),
        branch_flips: 0,
        ordering_violations: 0,
        overlap_fidelity_wins: 0,
        overlap_trace_wins: 0,
        overlap_inconclusive: 0,
        inconclusive_fidelity_ahead: 0,
        inconclusive_trace_ahead: 0,
    };

    // Three-weight region: pivotal radius bound plus branch-flip tracking.
    {
        let three_weight = &mut report.three_weight;
        let branch_flips = &mut report.branch_flips;
        let ordering_violations = &mut report.ordering_violations;
        sample_region(
            &mut rng,
            "three_weight",
            samples,
            |p| fidelity::classify(p).label == RegionLabel::S2,
            |p| {
                let s_sq = {
                    let [x, y, z] = octant_normalize(p).point.components();
                    (x + y + z) * (x + y + z)
                };
                let norm_sq = p.norm_sq();
                let margin = (1.0 + 2.0 * norm_sq - s_sq) / (3.0 - s_sq)
                    - (1.0 + 3.0 * norm_sq - s_sq) / 3.0;
                three_weight.record(margin);
                let rep = compare(p);
                let target_len = p.norm();
                if rep.fidelity_result.optimal_bloch.norm() > target_len + 1e-12
                    || rep.trace_result.optimal_bloch.norm() > target_len + 1e-12
                {
                    *branch_flips += 1;
                }
                if rep.g_fidelity > rep.g_trace + 1e-12 {
                    *ordering_violations += 1;
                }
            },
        )?;
    }

    // Trace two-weight region (xz pair): radicand bound.
    {
        let two_weight = &mut report.two_weight;
        let ordering_violations = &mut report.ordering_violations;
        sample_region(
            &mut rng,
            "two_weight",
            samples,
            |p| trace::classify_trace(p).label == TraceRegionLabel::S3p,
            |p| {
                let [x, y, z] = octant_normalize(p).point.components();
                let pair = (x + z) * (x + z) + 2.0 * y * y;
                let margin = (x - z) * (x - z) * (pair - 1.0) / (2.0 * (2.0 - pair));
                two_weight.record(margin);
                let rep = compare(p);
                if rep.g_fidelity > rep.g_trace + 1e-12 {
                    *ordering_violations += 1;
                }
            },
        )?;
    }

    // Overlap zone: record what the sign tests decide and, where they are
    // silent, which ordering actually occurred.
    {
        let r = &mut report;
        sample_region(
            &mut rng,
            "overlap",
            samples,
            |p| {
                trace::classify_trace(p).label == TraceRegionLabel::S2p
                    && matches!(
                        fidelity::classify(p).label,
                        RegionLabel::S3 | RegionLabel::S4 | RegionLabel::S5
                    )
            },
            |p| {
                let rep = compare(p);
                match rep.regime {
                    Regime::OverlapFidelityFavored => {
                        r.overlap_fidelity_wins += 1;
                        if rep.g_fidelity > rep.g_trace + 1e-12 {
                            r.ordering_violations += 1;
                        }
                    }
                    Regime::OverlapTraceFavored => {
                        r.overlap_trace_wins += 1;
                        if rep.g_trace > rep.g_fidelity + 1e-12 {
                            r.ordering_violations += 1;
                        }
                    }
                    _ => {
                        r.overlap_inconclusive += 1;
                        if rep.g_fidelity < rep.g_trace - 1e-12 {
                            r.inconclusive_fidelity_ahead += 1;
                        } else if rep.g_trace < rep.g_fidelity - 1e-12 {
                            r.inconclusive_trace_ahead += 1;
                        }
                    }
                }
            },
        )?;
    }

    Ok(report)
}
