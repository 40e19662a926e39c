//! Brute-force ground truth: grid search plus projected-gradient polish over
//! the reachable mixture set.
//!
//! The oracle shares nothing with the closed forms it checks: it enumerates
//! candidate mixture Bloch vectors over the convex hull of the set, refines
//! the best node, and recovers witness weights at the end. Hull projections
//! here use face enumeration rather than the trace solver's sort-based
//! thresholding, keeping the two projection routes independent.

use rayon::prelude::*;

use crate::bloch::BlochVector;
use crate::result::{
    ApproximationResult, Metric, Provenance, SolveWarning,
};
use crate::sets::{mixture_bloch, AvailableSet, SetId, WeightVector};

/// Search-effort knobs. `grid_step` is the node spacing of the initial scan
/// (must lie in (0, 0.1]); polish runs until steps shrink below `polish_tol`
/// or `polish_iters` is hit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub grid_step: f64,
    pub polish_iters: usize,
    pub polish_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid_step: 0.005,
            polish_iters: 200,
            polish_tol: 1e-10,
        }
    }
}

/// Halfspace description of a reachable set, plus its vertices.
#[derive(Debug, Clone)]
pub(crate) struct Hull {
    pub vertices: Vec<[f64; 3]>,
    /// Facets as (normal, offset): n . v <= b.
    pub facets: Vec<([f64; 3], f64)>,
    /// Zero-volume hulls (the 3-state triangle) get specialized handling.
    pub flat: bool,
}

/// Hull data for a built-in set.
pub(crate) fn hull_for_set(set: &AvailableSet) -> Hull {
    let vertices: Vec<[f64; 3]> = set.states().iter().map(|s| s.components()).collect();
    match set.id() {
        SetId::B3 => {
            let mut facets = Vec::with_capacity(8);
            for sx in [-1.0, 1.0] {
                for sy in [-1.0, 1.0] {
                    for sz in [-1.0, 1.0] {
                        facets.push(([sx, sy, sz], 1.0));
                    }
                }
            }
            Hull {
                vertices,
                facets,
                flat: false,
            }
        }
        SetId::B3Alpha0 => Hull {
            vertices,
            facets: b3_alpha0_facets().to_vec(),
            flat: false,
        },
        SetId::BAlpha(_) => Hull {
            vertices,
            facets: Vec::new(),
            flat: true,
        },
    }
}

/// Facets of the eight-state hull: the four octahedron facets away from the
/// added pair survive; the four facing them are each split in two by the new
/// vertices at +-(sqrt(2)/2, 0, sqrt(2)/2). K = sqrt(2) - 1.
pub(crate) fn b3_alpha0_facets() -> [([f64; 3], f64); 12] {
    let k = std::f64::consts::SQRT_2 - 1.0;
    [
        ([1.0, 1.0, -1.0], 1.0),
        ([1.0, -1.0, -1.0], 1.0),
        ([-1.0, 1.0, 1.0], 1.0),
        ([-1.0, -1.0, 1.0], 1.0),
        ([k, 1.0, 1.0], 1.0),
        ([k, -1.0, 1.0], 1.0),
        ([1.0, 1.0, k], 1.0),
        ([1.0, -1.0, k], 1.0),
        ([-k, 1.0, -1.0], 1.0),
        ([-k, -1.0, -1.0], 1.0),
        ([-1.0, 1.0, -k], 1.0),
        ([-1.0, -1.0, -k], 1.0),
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add_scaled(a: [f64; 3], s: f64, b: [f64; 3]) -> [f64; 3] {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm_sq(a: [f64; 3]) -> f64 {
    dot(a, a)
}

impl Hull {
    pub(crate) fn contains(&self, v: [f64; 3], tolerance: f64) -> bool {
        self.facets.iter().all(|(n, b)| dot(*n, v) <= b + tolerance)
    }
}

/// Solves a 3x3 linear system by Gaussian elimination with partial pivoting.
fn solve3(mut m: [[f64; 3]; 3], mut rhs: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[pivot][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 3];
    for col in (0..3).rev() {
        let mut s = rhs[col];
        for k in col + 1..3 {
            s -= m[col][k] * x[k];
        }
        x[col] = s / m[col][col];
    }
    Some(x)
}

/// Euclidean projection onto a full-dimensional hull by face enumeration:
/// the nearest point lies on the body, a facet, a facet-pair line, or a
/// vertex, and every candidate is checked for feasibility.
fn project_full_hull(hull: &Hull, p: [f64; 3]) -> [f64; 3] {
    if hull.contains(p, 1e-12) {
        return p;
    }
    let mut best: Option<([f64; 3], f64)> = None;
    let consider = |q: [f64; 3], best: &mut Option<([f64; 3], f64)>| {
        let d = norm_sq(sub(q, p));
        if best.map_or(true, |(_, bd)| d < bd) {
            *best = Some((q, d));
        }
    };

    for (n, b) in &hull.facets {
        let t = (dot(*n, p) - b) / norm_sq(*n);
        if t > 0.0 {
            let q = add_scaled(p, -t, *n);
            if hull.contains(q, 1e-9) {
                consider(q, &mut best);
            }
        }
    }
    for i in 0..hull.facets.len() {
        for j in i + 1..hull.facets.len() {
            let (ni, bi) = hull.facets[i];
            let (nj, bj) = hull.facets[j];
            let d = cross(ni, nj);
            if norm_sq(d) < 1e-18 {
                continue;
            }
            // Closest point on the facet-intersection line: q satisfies both
            // plane equations and (q - p) is orthogonal to the direction.
            if let Some(q) = solve3([ni, nj, d], [bi, bj, dot(d, p)]) {
                if hull.contains(q, 1e-9) {
                    consider(q, &mut best);
                }
            }
        }
    }
    for v in &hull.vertices {
        consider(*v, &mut best);
    }
    best.expect("vertices are always feasible").0
}

/// Closest point on the triangle (a, b, c) to `p`.
fn project_triangle(a: [f64; 3], b: [f64; 3], c: [f64; 3], p: [f64; 3]) -> [f64; 3] {
    let ab = sub(b, a);
    let ac = sub(c, a);
    let ap = sub(p, a);
    let d1 = dot(ab, ap);
    let d2 = dot(ac, ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a;
    }
    let bp = sub(p, b);
    let d3 = dot(ab, bp);
    let d4 = dot(ac, bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let t = d1 / (d1 - d3);
        return add_scaled(a, t, ab);
    }
    let cp = sub(p, c);
    let d5 = dot(ab, cp);
    let d6 = dot(ac, cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let t = d2 / (d2 - d6);
        return add_scaled(a, t, ac);
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return add_scaled(b, t, sub(c, b));
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    add_scaled(add_scaled(a, v, ab), w, ac)
}

fn project_hull(hull: &Hull, p: [f64; 3]) -> [f64; 3] {
    if hull.flat {
        project_triangle(hull.vertices[0], hull.vertices[1], hull.vertices[2], p)
    } else {
        project_full_hull(hull, p)
    }
}

/// Fidelity against target components with the target defect precomputed.
fn fid_raw(r: [f64; 3], r_defect: f64, v: [f64; 3]) -> f64 {
    let dv = (1.0 - norm_sq(v)).max(0.0);
    0.5 * (1.0 + dot(r, v) + (r_defect * dv).sqrt())
}

/// Analytic gradient of the fidelity in the mixture argument:
/// dF/dv = (r - v sqrt((1-|r|^2)/(1-|v|^2))) / 2.
fn fid_grad(r: [f64; 3], r_defect: f64, v: [f64; 3]) -> [f64; 3] {
    if r_defect == 0.0 {
        return [0.5 * r[0], 0.5 * r[1], 0.5 * r[2]];
    }
    let dv = (1.0 - norm_sq(v)).max(1e-12);
    let s = (r_defect / dv).sqrt();
    [
        0.5 * (r[0] - s * v[0]),
        0.5 * (r[1] - s * v[1]),
        0.5 * (r[2] - s * v[2]),
    ]
}

/// Max absolute component gap between the analytic fidelity gradient and
/// central finite differences at step 1e-6.
pub fn gradient_check(r: &BlochVector, v: &BlochVector) -> f64 {
    let rc = r.components();
    let rd = r.defect();
    let vc = v.components();
    let g = fid_grad(rc, rd, vc);
    let h = 1e-6;
    let mut worst = 0.0f64;
    for i in 0..3 {
        let mut hi = vc;
        let mut lo = vc;
        hi[i] += h;
        lo[i] -= h;
        let num = (fid_raw(rc, rd, hi) - fid_raw(rc, rd, lo)) / (2.0 * h);
        worst = worst.max((num - g[i]).abs());
    }
    worst
}

/// Grid scan over the hull. Returns the best node; deterministic because
/// ties resolve to the smallest flat index regardless of thread count.
fn grid_best(
    hull: &Hull,
    cfg: &OracleConfig,
    objective: impl Fn([f64; 3]) -> f64 + Sync,
) -> [f64; 3] {
    // Axis nodes spanning [-1, 1] with spacing as close to grid_step as the
    // endpoint constraint allows.
    let count = (2.0 / cfg.grid_step).round() as usize + 1;
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / (count - 1) as f64;

    let best = (0..count)
        .into_par_iter()
        .map(|ix| {
            let x = coord(ix);
            let mut local: Option<(f64, usize, [f64; 3])> = None;
            for iy in 0..count {
                let y = coord(iy);
                for iz in 0..count {
                    let v = [x, y, coord(iz)];
                    if !hull.contains(v, 1e-9) {
                        continue;
                    }
                    let score = objective(v);
                    let index = (ix * count + iy) * count + iz;
                    let better = match &local {
                        None => true,
                        Some((s, i, _)) => score > *s || (score == *s && index < *i),
                    };
                    if better {
                        local = Some((score, index, v));
                    }
                }
            }
            local
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) | (x, None) => x,
                (Some(a), Some(b)) => {
                    if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
                        Some(a)
                    } else {
                        Some(b)
                    }
                }
            },
        );
    best.expect("the hull always contains grid nodes near the origin").2
}

/// Barycentric scan of the 3-state triangle at roughly `grid_step` spacing.
fn triangle_best(
    hull: &Hull,
    cfg: &OracleConfig,
    objective: impl Fn([f64; 3]) -> f64,
) -> [f64; 3] {
    let m = (2.0 / cfg.grid_step).ceil() as usize;
    let [a, b, c] = [hull.vertices[0], hull.vertices[1], hull.vertices[2]];
    let mut best: Option<(f64, [f64; 3])> = None;
    for i in 0..=m {
        for j in 0..=(m - i) {
            let (wa, wb) = (i as f64 / m as f64, j as f64 / m as f64);
            let wc = 1.0 - wa - wb;
            let v = [
                wa * a[0] + wb * b[0] + wc * c[0],
                wa * a[1] + wb * b[1] + wc * c[1],
                wa * a[2] + wb * b[2] + wc * c[2],
            ];
            let score = objective(v);
            if best.map_or(true, |(s, _)| score > s) {
                best = Some((score, v));
            }
        }
    }
    best.expect("triangle grid is never empty").1
}

/// Projected-gradient ascent with halving line search. Returns the refined
/// point and whether the step norm fell below `polish_tol`.
fn polish_fidelity(
    hull: &Hull,
    r: [f64; 3],
    r_defect: f64,
    start: [f64; 3],
    cfg: &OracleConfig,
) -> ([f64; 3], bool, f64) {
    let mut v = start;
    let mut value = fid_raw(r, r_defect, v);
    let mut last_step = 0.0;
    for _ in 0..cfg.polish_iters {
        let g = fid_grad(r, r_defect, v);
        let mut accepted = None;
        let mut scale = 1.0;
        for _ in 0..40 {
            let cand = project_hull(hull, add_scaled(v, scale, g));
            let cand_value = fid_raw(r, r_defect, cand);
            if cand_value > value {
                accepted = Some((cand, cand_value));
                break;
            }
            scale *= 0.5;
        }
        let Some((next, next_value)) = accepted else {
            // No ascent direction survives projection: stationary.
            return (v, true, last_step);
        };
        last_step = norm_sq(sub(next, v)).sqrt();
        v = next;
        value = next_value;
        if last_step < cfg.polish_tol {
            return (v, true, last_step);
        }
    }
    (v, false, last_step)
}

/// Minimal-support weights reproducing hull point `v` over the set.
fn recover_weights(set: &AvailableSet, v: [f64; 3]) -> Vec<f64> {
    match set.id() {
        SetId::B3 => {
            // One state per axis; leftover mass becomes an even split of the
            // z pair (the identity component).
            let used = v[0].abs() + v[1].abs() + v[2].abs();
            let slack = 0.5 * (1.0 - used).max(0.0);
            vec![
                v[2].max(0.0) + slack,
                (-v[2]).max(0.0) + slack,
                v[0].max(0.0),
                (-v[0]).max(0.0),
                v[1].max(0.0),
                (-v[1]).max(0.0),
            ]
        }
        SetId::BAlpha(_) => {
            let q = set.states()[2].components();
            let p6 = (v[0] * q[0] + v[2] * q[2]).clamp(0.0, 1.0);
            let p4 = 0.5 * (1.0 - p6 + v[1]);
            let p5 = 0.5 * (1.0 - p6 - v[1]);
            vec![p4.max(0.0), p5.max(0.0), p6]
        }
        SetId::B3Alpha0 => recover_by_subsets(set, v),
    }
}

/// Caratheodory search: smallest vertex subset (in deterministic order)
/// whose convex combination reproduces `v`.
pub(crate) fn recover_by_subsets(set: &AvailableSet, v: [f64; 3]) -> Vec<f64> {
    let n = set.len();
    let points: Vec<[f64; 3]> = set.states().iter().map(|s| s.components()).collect();
    let mut subset = Vec::new();
    for size in 1..=4usize {
        subset.clear();
        subset.extend(0..size);
        loop {
            if let Some(w) = try_subset(&points, &subset, v) {
                let mut full = vec![0.0; n];
                for (slot, &i) in subset.iter().enumerate() {
                    full[i] = w[slot];
                }
                return full;
            }
            // Advance the lexicographic combination.
            let mut k = size;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if subset[k] < n - (size - k) {
                    subset[k] += 1;
                    for j in k + 1..size {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
                if k == 0 {
                    subset.clear();
                    break;
                }
            }
            if subset.is_empty() {
                break;
            }
        }
    }
    // Unreachable for points inside the hull; fall back to the nearest
    // vertex so the caller still gets a valid weight vector.
    let nearest = points
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| norm_sq(sub(**a, v)).total_cmp(&norm_sq(sub(**b, v))))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut w = vec![0.0; n];
    w[nearest] = 1.0;
    w
}

/// Nonnegative exact solve of sum w_i x_i = v, sum w_i = 1 on a subset; the
/// normal-equation system is tiny (at most 4x4).
fn try_subset(points: &[[f64; 3]], subset: &[usize], v: [f64; 3]) -> Option<Vec<f64>> {
    let m = subset.len();
    // Rows: x, y, z, normalization.
    let a: Vec<[f64; 4]> = subset
        .iter()
        .map(|&i| [points[i][0], points[i][1], points[i][2], 1.0])
        .collect(); // a[j] is the column for weight j
    let target = [v[0], v[1], v[2], 1.0];

    // Normal equations G w = h with G = A^T A over columns.
    let mut g = [[0.0f64; 4]; 4];
    let mut h = [0.0f64; 4];
    for i in 0..m {
        for j in 0..m {
            g[i][j] = (0..4).map(|k| a[i][k] * a[j][k]).sum();
        }
        h[i] = (0..4).map(|k| a[i][k] * target[k]).sum();
    }
    // Gaussian elimination on the m x m block.
    let mut w = [0.0f64; 4];
    let mut mat = g;
    let mut rhs = h;
    for col in 0..m {
        let pivot = (col..m).max_by(|&x, &y| mat[x][col].abs().total_cmp(&mat[y][col].abs()))?;
        if mat[pivot][col].abs() < 1e-12 {
            return None;
        }
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..m {
            let f = mat[row][col] / mat[col][col];
            for k in col..m {
                mat[row][k] -= f * mat[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    for col in (0..m).rev() {
        let mut s = rhs[col];
        for k in col + 1..m {
            s -= mat[col][k] * w[k];
        }
        w[col] = s / mat[col][col];
    }
    let w = &w[..m];
    // Exactness and nonnegativity checks.
    if w.iter().any(|&x| x < -1e-9) {
        return None;
    }
    let mut residual = 0.0f64;
    for k in 0..4 {
        let got: f64 = (0..m).map(|j| a[j][k] * w[j]).sum();
        residual = residual.max((got - target[k]).abs());
    }
    if residual > 1e-9 {
        return None;
    }
    Some(w.iter().map(|&x| x.max(0.0)).collect())
}

/// Ground-truth search: best mixture of `set` for `r` under `metric`.
///
/// Deterministic for a fixed config. If the polish loop exhausts its
/// iteration budget the best iterate is still returned, flagged through
/// `warning`.
pub fn oracle_solve(
    r: &BlochVector,
    set: &AvailableSet,
    metric: Metric,
    cfg: &OracleConfig,
) -> ApproximationResult {
    assert!(
        cfg.grid_step > 0.0 && cfg.grid_step <= 0.1,
        "grid_step must lie in (0, 0.1]"
    );
    assert!(cfg.polish_tol > 0.0, "polish_tol must be positive");
    let hull = hull_for_set(set);
    let rc = r.components();
    let rd = r.defect();

    let (v, converged, final_step) = match metric {
        Metric::Fidelity => {
            let objective = |v: [f64; 3]| fid_raw(rc, rd, v);
            let start = if hull.flat {
                triangle_best(&hull, cfg, objective)
            } else {
                grid_best(&hull, cfg, objective)
            };
            polish_fidelity(&hull, rc, rd, start, cfg)
        }
        Metric::TraceNorm => {
            // The minimizer of the Euclidean distance is the projection;
            // the grid start is kept as a cross-check and the better of the
            // two wins.
            let objective = |v: [f64; 3]| -norm_sq(sub(v, rc));
            let start = if hull.flat {
                triangle_best(&hull, cfg, objective)
            } else {
                grid_best(&hull, cfg, objective)
            };
            let projected = project_hull(&hull, rc);
            let v = if norm_sq(sub(projected, rc)) <= norm_sq(sub(start, rc)) {
                projected
            } else {
                start
            };
            (v, true, 0.0)
        }
    };

    let mut recovered = recover_weights(set, v);
    // Recovery routes guarantee the sum only to solver accuracy; bring it
    // back to exactly one before constructing the weight vector.
    let sum: f64 = recovered.iter().sum();
    for w in &mut recovered {
        *w /= sum;
    }
    let weights = WeightVector::new(recovered).expect("recovered weights are valid");
    let optimal_bloch =
        mixture_bloch(set, &weights).expect("weight count matches the set");
    let distance = match metric {
        Metric::Fidelity => (1.0 - crate::bloch::fidelity(r, &optimal_bloch)).max(0.0),
        Metric::TraceNorm => crate::bloch::trace_distance(r, &optimal_bloch),
    };

    ApproximationResult {
        metric,
        distance,
        weights,
        optimal_bloch,
        region: None,
        free_params: None,
        provenance: Provenance::Oracle,
        warning: if converged {
            None
        } else {
            Some(SolveWarning::PolishDidNotConverge {
                final_step,
            })
        },
    }
}
