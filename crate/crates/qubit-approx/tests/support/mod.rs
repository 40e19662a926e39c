//! Shared helpers for the integration tests: an independent density-matrix
//! implementation of the two metrics (explicit complex 2x2 algebra, no Bloch
//! shortcuts) and samplers/symmetries over the ball.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use qubit_approx::BlochVector;
use rand::Rng;

/// Dense complex 2x2 matrix, row major.
#[derive(Debug, Clone, Copy)]
pub struct Mat2(pub [[C; 2]; 2]);

impl Mat2 {
    pub fn density(r: &BlochVector) -> Self {
        let [x, y, z] = r.components();
        Mat2([
            [C::new(0.5 * (1.0 + z), 0.0), C::new(0.5 * x, -0.5 * y)],
            [C::new(0.5 * x, 0.5 * y), C::new(0.5 * (1.0 - z), 0.0)],
        ])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = &self.0;
        let b = &other.0;
        let mut out = [[C::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.0;
        for (row, orow) in out.iter_mut().zip(other.0.iter()) {
            for (cell, o) in row.iter_mut().zip(orow.iter()) {
                *cell -= o;
            }
        }
        Mat2(out)
    }

    /// Eigenvalues of a Hermitian matrix, descending. Only the real parts of
    /// the diagonal are consulted; off-diagonal conjugacy is assumed.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let a = self.0[0][0].re;
        let c = self.0[1][1].re;
        let half_gap = 0.5 * (a - c);
        let disc = half_gap.hypot(self.0[0][1].norm());
        let mid = 0.5 * (a + c);
        (mid + disc, mid - disc)
    }

    /// Principal square root of a Hermitian positive-semidefinite matrix via
    /// its spectral decomposition, written as alpha*M + beta*I.
    pub fn sqrt_psd(&self) -> Self {
        let (lp, lm) = self.hermitian_eigenvalues();
        let (sp, sm) = (lp.max(0.0).sqrt(), lm.max(0.0).sqrt());
        if lp - lm < 1e-14 {
            // Scalar matrix: both branches coincide.
            return Mat2([
                [C::new(sp, 0.0), C::new(0.0, 0.0)],
                [C::new(0.0, 0.0), C::new(sp, 0.0)],
            ]);
        }
        let alpha = (sp - sm) / (lp - lm);
        let beta = (sm * lp - sp * lm) / (lp - lm);
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell *= alpha;
                if i == j {
                    *cell += C::new(beta, 0.0);
                }
            }
        }
        Mat2(out)
    }
}

/// Uhlmann fidelity computed from explicit matrices:
/// F = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
pub fn matrix_fidelity(r: &BlochVector, s: &BlochVector) -> f64 {
    let root = Mat2::density(r).sqrt_psd();
    let inner = root.mul(&Mat2::density(s)).mul(&root);
    let (lp, lm) = inner.hermitian_eigenvalues();
    let trace_of_root = lp.max(0.0).sqrt() + lm.max(0.0).sqrt();
    trace_of_root * trace_of_root
}

/// Trace-norm distance tr|rho - sigma| computed from explicit matrices.
pub fn matrix_trace_distance(r: &BlochVector, s: &BlochVector) -> f64 {
    let diff = Mat2::density(r).sub(&Mat2::density(s));
    let (lp, lm) = diff.hermitian_eigenvalues();
    lp.abs() + lm.abs()
}

/// Uniform draw from the open unit ball by rejection.
pub fn sample_ball<R: Rng>(rng: &mut R) -> BlochVector {
    loop {
        let x = rng.gen_range(-1.0..1.0);
        let y = rng.gen_range(-1.0..1.0);
        let z = rng.gen_range(-1.0..1.0);
        if x * x + y * y + z * z < 1.0 {
            return BlochVector::new(x, y, z).unwrap();
        }
    }
}

pub const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// One of the 48 signed permutations of the axes (6 perms x 8 sign masks).
pub fn apply_symmetry(r: &BlochVector, perm: usize, sign_mask: usize) -> BlochVector {
    let c = r.components();
    let p = PERMS[perm % PERMS.len()];
    let mut out = [c[p[0]], c[p[1]], c[p[2]]];
    for (axis, value) in out.iter_mut().enumerate() {
        if (sign_mask >> axis) & 1 == 1 {
            *value = -*value;
        }
    }
    BlochVector::new(out[0], out[1], out[2]).unwrap()
}
