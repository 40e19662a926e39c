//! Result types shared by the closed-form solvers and the search oracle.

use crate::bloch::BlochVector;
use crate::sets::WeightVector;

/// Which distance the solver optimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// 1 - max fidelity over the mixture set.
    Fidelity,
    /// min trace norm ||rho - sigma||_1 over the mixture set.
    TraceNorm,
}

impl Metric {
    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::Fidelity => "fidelity",
            Metric::TraceNorm => "trace",
        }
    }
}

/// How the result was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Piecewise closed form.
    ClosedForm,
    /// Grid search plus polish over the reachable mixture set.
    Oracle,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Oracle => "oracle",
        }
    }
}

/// One evaluated region predicate: `lhs op rhs`, and whether it held.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityRecord {
    pub name: &'static str,
    pub lhs: f64,
    pub op: &'static str,
    pub rhs: f64,
    pub holds: bool,
}

impl InequalityRecord {
    pub(crate) fn le(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self {
            name,
            lhs,
            op: "<=",
            rhs,
            holds: lhs <= rhs,
        }
    }

    pub(crate) fn lt(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self {
            name,
            lhs,
            op: "<",
            rhs,
            holds: lhs < rhs,
        }
    }

    pub(crate) fn gt(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self {
            name,
            lhs,
            op: ">",
            rhs,
            holds: lhs > rhs,
        }
    }
}

/// Fidelity-solver region labels on the octant-normalized target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    /// Inside the octahedron: exactly representable.
    S1,
    /// Three-weight cap around the symmetric axis.
    S2,
    /// Two-weight edge zone, x-z pair.
    S3,
    /// Two-weight edge zone, y-z pair.
    S4,
    /// Two-weight edge zone, x-y pair.
    S5,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::S1 => "S1",
            RegionLabel::S2 => "S2",
            RegionLabel::S3 => "S3",
            RegionLabel::S4 => "S4",
            RegionLabel::S5 => "S5",
        }
    }
}

/// Trace-solver region labels on the octant-normalized target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceRegionLabel {
    /// Inside the octahedron: exactly representable.
    S1,
    /// Projection lands on the interior of the simplex facet.
    S2p,
    /// Projection lands on the x-z edge.
    S3p,
    /// Projection lands on the y-z edge.
    S4p,
    /// Projection lands on the x-y edge.
    S5p,
    /// Defensive label; the facet/edge cases cover the ball, so this should
    /// never be produced for a valid target.
    Other,
}

impl TraceRegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            TraceRegionLabel::S1 => "S1",
            TraceRegionLabel::S2p => "S2p",
            TraceRegionLabel::S3p => "S3p",
            TraceRegionLabel::S4p => "S4p",
            TraceRegionLabel::S5p => "S5p",
            TraceRegionLabel::Other => "other",
        }
    }
}

/// A classified fidelity region together with the predicates that fired.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub label: RegionLabel,
    pub fired: Vec<InequalityRecord>,
}

/// A classified trace region together with the predicates that fired.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRegion {
    pub label: TraceRegionLabel,
    pub fired: Vec<InequalityRecord>,
}

/// Region information attached to a result, tagged by solver family.
#[derive(Debug, Clone, PartialEq)]
pub enum RegionTag {
    Fidelity(Region),
    Trace(TraceRegion),
}

impl RegionTag {
    pub fn label_str(&self) -> &'static str {
        match self {
            RegionTag::Fidelity(r) => r.label.as_str(),
            RegionTag::Trace(r) => r.label.as_str(),
        }
    }
}

/// The free parameters of an interior (distance-zero) decomposition.
///
/// Weights stay valid for any t1, t2 >= 0 with t1 + t2 <= t_sum_max; the
/// solver always picks t1 = t2 = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeParams {
    pub t1: f64,
    pub t2: f64,
    pub t_sum_max: f64,
}

/// Non-fatal condition attached to a result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveWarning {
    /// The polish loop stopped on its iteration cap; the best iterate is
    /// returned. `final_step` is the last step norm observed.
    PolishDidNotConverge { final_step: f64 },
}

/// An optimal (or oracle-best) convex approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationResult {
    pub metric: Metric,
    /// 1 - F for [`Metric::Fidelity`], trace norm for [`Metric::TraceNorm`].
    pub distance: f64,
    pub weights: WeightVector,
    /// Bloch vector of the optimal mixture.
    pub optimal_bloch: BlochVector,
    /// Region of the closed form used; `None` for oracle-only results.
    pub region: Option<RegionTag>,
    /// Present only for interior decompositions (label S1).
    pub free_params: Option<FreeParams>,
    pub provenance: Provenance,
    pub warning: Option<SolveWarning>,
}
