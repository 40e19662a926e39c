//! Sign symmetry of the six-state family.
//!
//! Negating a target component is undone by swapping the corresponding
//! antipodal pair of states, so both solvers work on |components| and map
//! weights back through the recorded flips.

use crate::bloch::BlochVector;

/// A target folded into the nonnegative octant plus the flips that undo it.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OctantForm {
    pub point: BlochVector,
    flip: [bool; 3],
}

/// Antipodal index pairs per axis: z -> (0,1), x -> (2,3), y -> (4,5).
const AXIS_PAIRS: [(usize, usize); 3] = [(2, 3), (4, 5), (0, 1)];

pub(crate) fn octant_normalize(r: &BlochVector) -> OctantForm {
    let [x, y, z] = r.components();
    let point = BlochVector::new(x.abs(), y.abs(), z.abs()).expect("same length as input");
    OctantForm {
        point,
        flip: [x < 0.0, y < 0.0, z < 0.0],
    }
}

impl OctantForm {
    /// Maps six-state weights between the octant frame and the original
    /// frame. The swap per negative axis is an involution, so the same call
    /// serves both directions.
    pub(crate) fn swap_weights(&self, mut w: [f64; 6]) -> [f64; 6] {
        for (axis, &(a, b)) in AXIS_PAIRS.iter().enumerate() {
            if self.flip[axis] {
                w.swap(a, b);
            }
        }
        w
    }
}
