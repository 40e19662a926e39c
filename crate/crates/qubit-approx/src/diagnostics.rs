//! Self-contained diagnostic suites: each re-derives a core guarantee on
//! seeded random inputs and reports the worst residual it saw.
//!
//! The suites are deterministic for a fixed [`SelftestConfig`], so two runs
//! with the same samples and seed produce identical reports. The CLI prints
//! them; integration tests assert on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bloch::BlochVector;
use crate::compare;
use crate::fidelity;
use crate::geometry::{self, VolumeMethod};
use crate::oracle::{oracle_solve, OracleConfig};
use crate::result::{Metric, RegionLabel, TraceRegionLabel};
use crate::sets::{AvailableSet, SetId};
use crate::trace;

/// Effort knobs for [`run_selftest`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelftestConfig {
    /// Points per suite (at least 10).
    pub samples: usize,
    pub seed: u64,
    /// Oracle grid spacing; coarser than the library default because the
    /// polish step does the precision work.
    pub oracle_grid_step: f64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self {
            samples: 150,
            seed: 42,
            oracle_grid_step: 0.02,
        }
    }
}

/// One suite's verdict: `worst` is a residual (smaller is better) that must
/// stay at or below `bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub worst: f64,
    pub bound: f64,
    pub detail: String,
}

impl SuiteOutcome {
    fn from_residual(name: &'static str, checked: usize, worst: f64, bound: f64) -> Self {
        Self {
            name,
            passed: worst <= bound,
            checked,
            worst,
            bound,
            detail: String::new(),
        }
    }

    fn failed(name: &'static str, detail: String) -> Self {
        Self {
            name,
            passed: false,
            checked: 0,
            worst: f64::INFINITY,
            bound: 0.0,
            detail,
        }
    }
}

/// All suite outcomes for one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub config: SelftestConfig,
    pub suites: Vec<SuiteOutcome>,
    pub all_passed: bool,
}

fn sample_where(
    rng: &mut ChaCha8Rng,
    wanted: usize,
    signed: bool,
    mut pred: impl FnMut(&BlochVector) -> bool,
    mut visit: impl FnMut(&BlochVector),
) -> bool {
    let cap = 5000usize.saturating_mul(wanted).max(1_000_000);
    let mut found = 0;
    for _ in 0..cap {
        if found == wanted {
            return true;
        }
        let draw = |rng: &mut ChaCha8Rng| {
            let u: f64 = rng.gen();
            if signed {
                u * 2.0 - 1.0
            } else {
                u
            }
        };
        let x = draw(rng);
        let y = draw(rng);
        let z = draw(rng);
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
    found == wanted
}

/// Runs every suite and collects the outcomes.
pub fn run_selftest(config: &SelftestConfig) -> SelftestReport {
    assert!(config.samples >= 10, "need at least 10 samples per suite");
    let mut suites = Vec::new();

    suites.push(fidelity_oracle_agreement(config));
    suites.push(s1_exactness(config));
    suites.push(kkt_certificate(config));
    suites.push(trace_projection_agreement(config));
    suites.push(eigen_gap_three_weight(config));
    suites.push(eigen_gap_two_weight(config));
    let (three_bound, two_bound, overlap) = inequality_suites(config);
    suites.push(three_bound);
    suites.push(two_bound);
    suites.push(overlap);
    suites.push(cr_volume_mc(config));
    suites.push(decompose_reconstruction(config));

    let all_passed = suites.iter().all(|s| s.passed);
    SelftestReport {
        config: *config,
        suites,
        all_passed,
    }
}

/// Closed-form fidelity distances against the grid-and-polish search.
fn fidelity_oracle_agreement(config: &SelftestConfig) -> SuiteOutcome {
    let name = "fidelity-oracle-agreement";
    let set = AvailableSet::from_id(SetId::B3);
    let oracle_cfg = OracleConfig {
        grid_step: config.oracle_grid_step,
        ..OracleConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    let mut worst = 0.0f64;
    let ok = sample_where(
        &mut rng,
        config.samples,
        true,
        |_| true,
        |r| {
            let closed = fidelity::solve(r);
            let searched = oracle_solve(r, &set, Metric::Fidelity, &oracle_cfg);
            worst = worst.max((closed.distance - searched.distance).abs());
        },
    );
    if !ok {
        return SuiteOutcome::failed(name, "sampling exhausted".into());
    }
    SuiteOutcome::from_residual(name, config.samples, worst, crate::tol::ORACLE_AGREEMENT)
}

/// Octahedron targets are reproduced exactly under both metrics.
fn s1_exactness(config: &SelftestConfig) -> SuiteOutcome {
    let name = "s1-exactness";
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(2));
    let mut worst = 0.0f64;
    let ok = sample_where(
        &mut rng,
        config.samples,
        true,
        |r| r.x().abs() + r.y().abs() + r.z().abs() <= 1.0,
        |r| {
            for res in [fidelity::solve(r), trace::solve_trace(r)] {
                worst = worst.max(res.distance);
                let v = res.optimal_bloch;
                worst = worst
                    .max((v.x() - r.x()).abs())
                    .max((v.y() - r.y()).abs())
                    .max((v.z() - r.z()).abs());
            }
        },
    );
    if !ok {
        return SuiteOutcome::failed(name, "sampling exhausted".into());
    }
    SuiteOutcome::from_residual(name, config.samples, worst, crate::tol::EXACT)
}

/// Stationarity certificate on closed-form solutions for mixed targets.
fn kkt_certificate(config: &SelftestConfig) -> SuiteOutcome {
    let name = "kkt-certificate";
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(3));
    let mut worst = 0.0f64;
    let ok = sample_where(
        &mut rng,
        config.samples,
        true,
        |r| r.norm() <= 0.98,
        |r| {
            let res = fidelity::solve(r);
            let report = fidelity::kkt_residual(r, &res).expect("mixed target");
            worst = worst
                .max(report.stationarity)
                .max(report.complementarity)
                .max(report.feasibility);
        },
    );
    if !ok {
        return SuiteOutcome::failed(name, "sampling exhausted".into());
    }
    SuiteOutcome::from_residual(name, config.samples, worst, crate::tol::KKT_RESIDUAL)
}

/// Facet-formula trace solver against the sort-based projector.
fn trace_projection_agreement(config: &SelftestConfig) -> SuiteOutcome {
    let name = "trace-projection-agreement";
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(4));
    let mut worst = 0.0f64;
    let ok = sample_where(
        &mut rng,
        config.samples,
        true,
        |_| true,
        |r| {
            let res = trace::solve_trace(r);
            let proj = trace::project_octahedron(r);
            let direct = crate::bloch::trace_distance(r, &proj);
            worst = worst.max((res.distance - direct).abs());
            worst = worst.max(crate::bloch::trace_distance(&res.optimal_bloch, &proj));
        },
    );
    if !ok {
        return SuiteOutcome::failed(name, "sampling exhausted".into());
    }
    SuiteOutcome::from_residual(
        name,
        config.samples,
        worst,
        crate::tol::PROJECTION_AGREEMENT,
    )
}

/// Gap ordering in the three-weight region.
fn eigen_gap_three_weight(config: &SelftestConfig) -> SuiteOutcome {
    let name = "eigen-gap-three-weight";
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(5));
    let mut worst = f64::NEG_INFINITY;
    let ok = sample_where(
        &mut rng,
        config.samples,
        true,
        |r| fidelity::classify(r).label == RegionLabel::S2,
        |r| {
            let rep = compare::compare(r);
            worst = worst.max(rep.g_fidelity - rep.g_trace);
        },
    );
    if !ok {
        return SuiteOutcome::failed(name, "sampling exhausted".into());
    }
    SuiteOutcome::from_residual(name, config.samples, worst.max(0.0), crate::tol::EXACT)
}

/// Gap ordering in the trace two-weight regions.
fn eigen_gap_two_weight(config: &SelftestConfig) -> SuiteOutcome {
    let name = "eigen-gap-two-weight";
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(6));
    let mut worst = f64::NEG_INFINITY;
    let ok = sample_where(
        &mut rng,
        config.samples,
        true,
        |r| {
            matches!(
                trace::classify_trace(r).label,
                TraceRegionLabel::S3p | TraceRegionLabel::S4p | TraceRegionLabel::S5p
            )
        },
        |r| {
            let rep = compare::compare(r);
            worst = worst.max(rep.g_fidelity - rep.g_trace);
        },
    );
    if !ok {
        return SuiteOutcome::failed(name, "sampling exhausted".into());
    }
    SuiteOutcome::from_residual(name, config.samples, worst.max(0.0), crate::tol::EXACT)
}

/// The two region-bound suites plus the overlap-zone tallies, all from one
/// seeded run of [`compare::inequality_suite`].
fn inequality_suites(config: &SelftestConfig) -> (SuiteOutcome, SuiteOutcome, SuiteOutcome) {
    let report = match compare::inequality_suite(config.samples, config.seed.wrapping_add(7)) {
        Ok(report) => report,
        Err(e) => {
            let msg = format!("sampling failed: {e}");
            return (
                SuiteOutcome::failed("three-weight-bound", msg.clone()),
                SuiteOutcome::failed("two-weight-bound", msg.clone()),
                SuiteOutcome::failed("overlap-regimes", msg),
            );
        }
    };
    let three = SuiteOutcome {
        detail: format!("branch flips {}", report.branch_flips),
        passed: report.three_weight.violations == 0 && report.branch_flips == 0,
        ..SuiteOutcome::from_residual(
            "three-weight-bound",
            report.three_weight.checked,
            (-report.three_weight.worst_margin).max(0.0),
            crate::tol::EXACT,
        )
    };
    let two = SuiteOutcome::from_residual(
        "two-weight-bound",
        report.two_weight.checked,
        (-report.two_weight.worst_margin).max(0.0),
        crate::tol::EXACT,
    );
    let overlap = SuiteOutcome {
        name: "overlap-regimes",
        passed: report.ordering_violations == 0,
        checked: report.overlap_fidelity_wins
            + report.overlap_trace_wins
            + report.overlap_inconclusive,
        worst: report.ordering_violations as f64,
        bound: 0.0,
        detail: format!(
            "fidelity wins {}, trace wins {}, inconclusive {} (fidelity ahead {}, trace ahead {})",
            report.overlap_fidelity_wins,
            report.overlap_trace_wins,
            report.overlap_inconclusive,
            report.inconclusive_fidelity_ahead,
            report.inconclusive_trace_ahead,
        ),
    };
    (three, two, overlap)
}

/// Monte Carlo volume estimates against the closed forms, in standard
/// errors.
fn cr_volume_mc(config: &SelftestConfig) -> SuiteOutcome {
    let name = "cr-volume-mc";
    let mc_samples = (config.samples as u64).saturating_mul(100).max(20_000);
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for (tag, id) in [
        ("b3", SetId::B3),
        ("b3-alpha0", SetId::B3Alpha0),
        ("b-alpha", SetId::BAlpha(0.0)),
    ] {
        let exact = geometry::relative_volume(id, VolumeMethod::Exact).value;
        let mc = geometry::relative_volume(
            id,
            VolumeMethod::MonteCarlo {
                samples: mc_samples,
                seed: config.seed.wrapping_add(8),
            },
        );
        let sigmas = (mc.value - exact).abs() / mc.stderr;
        worst = worst.max(sigmas);
        parts.push(format!("{tag} {:.3} sigma", sigmas));
    }
    SuiteOutcome {
        detail: parts.join(", "),
        ..SuiteOutcome::from_residual(name, 3 * mc_samples as usize, worst, 4.0)
    }
}

/// Cone decomposition reconstructs its input exactly.
fn decompose_reconstruction(config: &SelftestConfig) -> SuiteOutcome {
    let name = "decompose-reconstruction";
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(9));
    let mut worst = 0.0f64;
    let ok = sample_where(
        &mut rng,
        config.samples,
        true,
        |r| geometry::cr_member(SetId::BAlpha(0.0), r),
        |r| {
            let d = geometry::decompose_b_alpha(r).expect("member of the cone");
            let set = AvailableSet::from_id(SetId::BAlpha(d.alpha));
            let mix = crate::sets::mixture_bloch(&set, &d.weights).expect("three weights");
            worst = worst
                .max((mix.x() - r.x()).abs())
                .max((mix.y() - r.y()).abs())
                .max((mix.z() - r.z()).abs());
        },
    );
    if !ok {
        return SuiteOutcome::failed(name, "sampling exhausted".into());
    }
    SuiteOutcome::from_residual(name, config.samples, worst, crate::tol::EXACT)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config() -> SelftestConfig {
        SelftestConfig {
            samples: 40,
            seed: 11,
            oracle_grid_step: 0.05,
        }
    }

    #[test]
    fn all_suites_pass_at_small_samples() {
        let report = run_selftest(&quick_config());
        for suite in &report.suites {
            assert!(
                suite.passed,
                "{} failed: worst {} bound {} ({})",
                suite.name, suite.worst, suite.bound, suite.detail
            );
        }
        assert!(report.all_passed);
        assert_eq!(report.suites.len(), 11);
    }

    #[test]
    fn report_is_deterministic() {
        let a = run_selftest(&quick_config());
        let b = run_selftest(&quick_config());
        assert_eq!(a, b);
    }
}
