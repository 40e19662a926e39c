//! The finite pure-state families a target may be mixed from.
//!
//! Three families are built in:
//!
//! * `B3`: the six Pauli eigenstates. Their mixtures fill the unit
//!   octahedron |x| + |y| + |z| <= 1.
//! * `B3Alpha0`: `B3` plus the two eigenstates of the real rotation gate at
//!   the angle whose half-angle cosine is sqrt((2+sqrt(2))/4), i.e. the
//!   Hadamard axis. The added Bloch points are +-(sqrt(2)/2, 0, sqrt(2)/2).
//! * `BAlpha(alpha)`: the y-axis pair plus the single eigenstate
//!   (sin alpha, 0, cos alpha); mixtures fill a triangle.
//!
//! State order is frozen; solvers and weight vectors index into it.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::tol;

/// Identifier for a built-in family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SetId {
    B3,
    B3Alpha0,
    BAlpha(f64),
}

/// Rotation angle of the extra `B3Alpha0` states: cos(ALPHA_0/2) equals
/// sqrt((2+sqrt(2))/4), which pins ALPHA_0 = pi/4 exactly.
pub const ALPHA_0: f64 = FRAC_PI_4;

/// Bloch points of the +1/-1 eigenvectors of the real gate
/// [[cos a, sin a], [sin a, -cos a]]: (sin a, 0, cos a) and its antipode.
///
/// The angle is wrapped into [0, 2pi); the map is total.
pub fn real_gate_eigenvectors(alpha: f64) -> (BlochVector, BlochVector) {
    let a = alpha.rem_euclid(2.0 * PI);
    let (s, c) = a.sin_cos();
    let plus = BlochVector::new(s, 0.0, c).expect("unit vector");
    let minus = BlochVector::new(-s, 0.0, -c).expect("unit vector");
    (plus, minus)
}

/// An ordered list of pure states available for mixing.
#[derive(Debug, Clone, PartialEq)]
pub struct AvailableSet {
    id: SetId,
    states: Vec<BlochVector>,
}

impl AvailableSet {
    pub fn from_id(id: SetId) -> Self {
        let unit = |x: f64, y: f64, z: f64| BlochVector::new(x, y, z).expect("unit vector");
        let b3 = vec![
            unit(0.0, 0.0, 1.0),
            unit(0.0, 0.0, -1.0),
            unit(1.0, 0.0, 0.0),
            unit(-1.0, 0.0, 0.0),
            unit(0.0, 1.0, 0.0),
            unit(0.0, -1.0, 0.0),
        ];
        let states = match id {
            SetId::B3 => b3,
            SetId::B3Alpha0 => {
                let mut states = b3;
                let (plus, minus) = real_gate_eigenvectors(ALPHA_0);
                states.push(plus);
                states.push(minus);
                states
            }
            SetId::BAlpha(alpha) => {
                let (plus, _) = real_gate_eigenvectors(alpha);
                vec![unit(0.0, 1.0, 0.0), unit(0.0, -1.0, 0.0), plus]
            }
        };
        Self { id, states }
    }

    pub fn id(&self) -> SetId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn states(&self) -> &[BlochVector] {
        &self.states
    }
}

/// Mixing weights over an [`AvailableSet`]: nonnegative, summing to 1.
///
/// Construction clamps weights in (-1e-12, 0) to zero and renormalizes;
/// anything worse is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let mut weights = weights;
        for (index, w) in weights.iter_mut().enumerate() {
            if !w.is_finite() || *w < -tol::WEIGHT {
                return Err(Error::NegativeWeight {
                    index,
                    value: *w,
                });
            }
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let sum: f64 = weights.iter().sum();
        // The clamp above moves the sum by at most n * 1e-12; accept the
        // combined slack and renormalize so downstream sums are exact-ish.
        if (sum - 1.0).abs() > tol::WEIGHT * (1.0 + weights.len() as f64) {
            return Err(Error::NotNormalized { sum });
        }
        for w in &mut weights {
            *w /= sum;
        }
        Ok(Self { weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn get(&self, index: usize) -> f64 {
        self.weights[index]
    }

    /// Indices with weight above `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > threshold)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Bloch vector of the mixture sum_i p_i rho_i.
///
/// The result of mixing unit vectors convexly stays in the closed ball up to
/// rounding, which the constructor's grace band absorbs.
pub fn mixture_bloch(set: &AvailableSet, weights: &WeightVector) -> Result<BlochVector> {
    if weights.len() != set.len() {
        return Err(Error::CardinalityMismatch {
            expected: set.len(),
            actual: weights.len(),
        });
    }
    let mut acc = [0.0f64; 3];
    for (w, state) in weights.as_slice().iter().zip(set.states()) {
        let c = state.components();
        acc[0] += w * c[0];
        acc[1] += w * c[1];
        acc[2] += w * c[2];
    }
    BlochVector::new(acc[0], acc[1], acc[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn b3_order_is_frozen() {
        let set = AvailableSet::from_id(SetId::B3);
        let expected = [
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
        ];
        assert_eq!(set.len(), 6);
        for (state, want) in set.states().iter().zip(expected) {
            assert_eq!(state.components(), want);
        }
    }

    #[test]
    fn extended_set_appends_the_diagonal_pair() {
        let set = AvailableSet::from_id(SetId::B3Alpha0);
        assert_eq!(set.len(), 8);
        let q = set.states()[6].components();
        let half = 0.5f64.sqrt();
        assert_abs_diff_eq!(q[0], half, epsilon = 1e-15);
        assert_abs_diff_eq!(q[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q[2], half, epsilon = 1e-15);
        let qm = set.states()[7].components();
        assert_abs_diff_eq!(qm[0], -half, epsilon = 1e-15);
        assert_abs_diff_eq!(qm[2], -half, epsilon = 1e-15);
        // The defining half-angle identity for the added states.
        assert_abs_diff_eq!(
            (ALPHA_0 / 2.0).cos(),
            ((2.0 + 2f64.sqrt()) / 4.0).sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn gate_eigenvectors_at_named_angles() {
        let (plus, minus) = real_gate_eigenvectors(0.0);
        assert_eq!(plus.components(), [0.0, 0.0, 1.0]);
        assert_eq!(minus.components(), [0.0, 0.0, -1.0]);

        let (plus, _) = real_gate_eigenvectors(std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!(plus.x(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(plus.z(), 0.0, epsilon = 1e-15);

        // Antipodal for every angle, and total outside [0, 2pi).
        let (p, m) = real_gate_eigenvectors(-1.0);
        assert_abs_diff_eq!(p.x(), -m.x(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.z(), -m.z(), epsilon = 1e-15);
    }

    #[test]
    fn weight_vector_clamps_and_rejects() {
        let w = WeightVector::new(vec![0.5, 0.5 + 1e-13, -1e-13, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(w.get(2), 0.0);
        assert_abs_diff_eq!(w.as_slice().iter().sum::<f64>(), 1.0, epsilon = 1e-15);

        assert!(matches!(
            WeightVector::new(vec![0.6, 0.5]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            WeightVector::new(vec![1.1, -0.1]),
            Err(Error::NegativeWeight { index: 1, .. })
        ));
    }

    #[test]
    fn mixture_matches_hand_values() {
        let set = AvailableSet::from_id(SetId::B3);
        let w = WeightVector::new(vec![0.45, 0.05, 0.2, 0.0, 0.3, 0.0]).unwrap();
        let v = mixture_bloch(&set, &w).unwrap();
        assert_abs_diff_eq!(v.x(), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(v.y(), 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(v.z(), 0.4, epsilon = 1e-15);

        let tri = AvailableSet::from_id(SetId::BAlpha(std::f64::consts::FRAC_PI_2));
        let w = WeightVector::new(vec![0.25, 0.25, 0.5]).unwrap();
        let v = mixture_bloch(&tri, &w).unwrap();
        assert_abs_diff_eq!(v.x(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(v.y(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.z(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn mixture_rejects_wrong_cardinality() {
        let set = AvailableSet::from_id(SetId::B3);
        let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            mixture_bloch(&set, &w),
            Err(Error::CardinalityMismatch {
                expected: 6,
                actual: 2
            })
        ));
    }
}
