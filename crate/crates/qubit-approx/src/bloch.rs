//! Bloch-vector geometry for single-qubit states.
//!
//! A qubit density matrix is parametrized as rho = (I + r . sigma)/2 with
//! r = (x, y, z) in the closed unit ball. Everything downstream works on r
//! alone: fidelity, trace norm, and eigenvalues all have closed forms in it.

use crate::error::{Error, Result};
use crate::tol;

/// A point in the closed unit Bloch ball.
///
/// Construct through [`BlochVector::new`], which enforces |r| <= 1 (with a
/// 1e-12 grace band that renormalizes onto the sphere). Components are plain
/// Pauli expectation values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

/// Eigenvalues of the density matrix, largest first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub plus: f64,
    pub minus: f64,
}

impl BlochVector {
    /// Validates and constructs a Bloch vector.
    ///
    /// Rejects non-finite components and |r| > 1 + 1e-12. Lengths inside the
    /// grace band (1, 1 + 1e-12] are scaled back onto the unit sphere so that
    /// downstream radicands stay nonnegative.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        for (component, value) in [('x', x), ('y', y), ('z', z)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { component, value });
            }
        }
        let len = (x * x + y * y + z * z).sqrt();
        if len > 1.0 + tol::NORM {
            return Err(Error::LengthExceedsOne { length: len });
        }
        if len > 1.0 {
            let s = 1.0 / len;
            return Ok(Self {
                x: x * s,
                y: y * s,
                z: z * s,
            });
        }
        Ok(Self { x, y, z })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Whether the state sits on (or numerically at) the pure-state sphere.
    pub fn is_near_pure(&self) -> bool {
        self.norm() >= 1.0 - tol::PURE_MARGIN
    }

    /// 1 - |r|^2, snapped to 0 within floating-point noise of the sphere.
    ///
    /// Unit vectors written in components carry ~1e-16 rounding, and a
    /// defect of 1e-16 would put a spurious 1e-8 into any square root
    /// taken of it; the snap keeps pure states exactly pure.
    pub(crate) fn defect(&self) -> f64 {
        let d = 1.0 - self.norm_sq();
        debug_assert!(d > -tol::RADICAND, "defect {d} below radicand tolerance");
        if d <= 1e-15 {
            0.0
        } else {
            d
        }
    }
}

/// Uhlmann fidelity between the states with Bloch vectors `r` and `s`:
/// F = (1 + r.s + sqrt((1-|r|^2)(1-|s|^2))) / 2.
///
/// Symmetric, equal to 1 exactly when r = s, and for two pure states equal
/// to (1 + r.s)/2.
pub fn fidelity(r: &BlochVector, s: &BlochVector) -> f64 {
    let f = 0.5 * (1.0 + r.dot(s) + (r.defect() * s.defect()).sqrt());
    f.clamp(0.0, 1.0)
}

/// Trace norm ||rho - sigma||_1, which for qubits is the Euclidean distance
/// |r - s| between Bloch vectors.
pub fn trace_distance(r: &BlochVector, s: &BlochVector) -> f64 {
    let dx = r.x - s.x;
    let dy = r.y - s.y;
    let dz = r.z - s.z;
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Eigenvalues (1 +- |r|)/2 of the density matrix, largest first.
pub fn eigenvalues(r: &BlochVector) -> EigenPair {
    let half_len = 0.5 * r.norm();
    EigenPair {
        plus: 0.5 + half_len,
        minus: 0.5 - half_len,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn accepts_interior_and_boundary_points() {
        let r = BlochVector::new(0.2, 0.3, 0.4).unwrap();
        assert_eq!(r.components(), [0.2, 0.3, 0.4]);
        let pole = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(pole.norm(), 1.0);
    }

    #[test]
    fn renormalizes_grace_band_lengths() {
        let eps = 4e-13;
        let r = BlochVector::new(1.0 + eps, 0.0, 0.0).unwrap();
        assert!(r.norm() <= 1.0);
        assert_abs_diff_eq!(r.x(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_long_vectors_and_nan() {
        assert!(matches!(
            BlochVector::new(1.0, 1.0, 1.0),
            Err(Error::LengthExceedsOne { .. })
        ));
        assert!(matches!(
            BlochVector::new(f64::NAN, 0.0, 0.0),
            Err(Error::NonFinite { component: 'x', .. })
        ));
    }

    #[test]
    fn fidelity_matches_hand_values() {
        let z = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        let zm = BlochVector::new(0.0, 0.0, -1.0).unwrap();
        assert_eq!(fidelity(&z, &zm), 0.0);
        assert_eq!(fidelity(&z, &z), 1.0);

        let h = BlochVector::new(1.0 / 2f64.sqrt(), 0.0, 1.0 / 2f64.sqrt()).unwrap();
        let mixed = BlochVector::new(0.5, 0.0, 0.5).unwrap();
        // Pure vs mixed along the same axis: (1 + 1/sqrt(2))/2.
        assert_abs_diff_eq!(
            fidelity(&h, &mixed),
            0.5 * (1.0 + 1.0 / 2f64.sqrt()),
            epsilon = 1e-15
        );

        let origin = BlochVector::new(0.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(fidelity(&origin, &z), 0.5 * (1.0 + 0.0), epsilon = 1e-15);
    }

    #[test]
    fn fidelity_is_symmetric() {
        let a = BlochVector::new(0.1, -0.7, 0.2).unwrap();
        let b = BlochVector::new(-0.4, 0.2, 0.5).unwrap();
        assert_eq!(fidelity(&a, &b), fidelity(&b, &a));
    }

    #[test]
    fn trace_distance_matches_hand_values() {
        let z = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        let zm = BlochVector::new(0.0, 0.0, -1.0).unwrap();
        assert_eq!(trace_distance(&z, &zm), 2.0);
        let a = BlochVector::new(0.9, 0.1, 0.3).unwrap();
        let b = BlochVector::new(0.8, 0.0, 0.2).unwrap();
        assert_abs_diff_eq!(trace_distance(&a, &b), 0.03f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn eigenvalues_match_hand_values() {
        let r = BlochVector::new(0.9, 0.1, 0.3).unwrap();
        let e = eigenvalues(&r);
        assert_abs_diff_eq!(e.plus, 0.9769696007084728, epsilon = 1e-15);
        assert_abs_diff_eq!(e.minus, 0.02303039929152717, epsilon = 1e-15);
        assert_abs_diff_eq!(e.plus + e.minus, 1.0, epsilon = 1e-15);

        let origin = BlochVector::new(0.0, 0.0, 0.0).unwrap();
        assert_eq!(eigenvalues(&origin).plus, 0.5);
        let pole = BlochVector::new(0.0, 0.0, -1.0).unwrap();
        assert_eq!(eigenvalues(&pole).plus, 1.0);
        assert_eq!(eigenvalues(&pole).minus, 0.0);
    }
}
