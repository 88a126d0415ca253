//! Valley orientations and lab/valley frame transforms.
//!
//! Lab-frame convention: the direction symmetric with respect to all four
//! n-Ge valleys is written (0,0,1). Each valley axis makes the same angle
//! with it, arccos(1/sqrt 3). Crystallographically this direction is the
//! cube edge usually labelled <1,0,0>; only the symmetry relation matters
//! here.

use nalgebra::Vector3;

/// The lab-frame direction symmetric with respect to all valleys.
pub fn symmetric_axis() -> Vector3<f64> {
    Vector3::z()
}

/// Orthonormal right-handed triad {t1, t2, axis} attached to one valley.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValleyFrame {
    axis: Vector3<f64>,
    t1: Vector3<f64>,
    t2: Vector3<f64>,
    valley_index: usize,
}

impl ValleyFrame {
    /// Completes `axis` to a triad by Gram-Schmidt against (0,0,1), or
    /// (1,0,0) when the axis is (anti)parallel to z.
    ///
    /// Panics if `axis` is zero or non-finite.
    pub fn from_axis(axis: Vector3<f64>, valley_index: usize) -> Self {
        let norm = axis.norm();
        assert!(
            norm.is_finite() && norm > 0.0,
            "valley axis must be a finite non-zero vector"
        );
        let axis = axis / norm;
        let seed = if axis.cross(&Vector3::z()).norm() > 1e-8 {
            Vector3::z()
        } else {
            Vector3::x()
        };
        let t1 = (seed - axis * axis.dot(&seed)).normalize();
        let t2 = axis.cross(&t1);
        ValleyFrame {
            axis,
            t1,
            t2,
            valley_index,
        }
    }

    /// Same valley with the transverse pair rotated by `angle` (radians)
    /// about the axis.
    pub fn rotated_transverse(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        ValleyFrame {
            axis: self.axis,
            t1: self.t1 * c + self.t2 * s,
            t2: self.t2 * c - self.t1 * s,
            valley_index: self.valley_index,
        }
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.axis
    }
    pub fn t1(&self) -> Vector3<f64> {
        self.t1
    }
    pub fn t2(&self) -> Vector3<f64> {
        self.t2
    }
    /// 1-based valley number.
    pub fn valley_index(&self) -> usize {
        self.valley_index
    }

    /// Largest deviation of the triad from orthonormality.
    pub fn orthonormality_defect(&self) -> f64 {
        let vs = [self.t1, self.t2, self.axis];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            worst = worst.max((vs[i].norm() - 1.0).abs());
            for j in (i + 1)..3 {
                worst = worst.max(vs[i].dot(&vs[j]).abs());
            }
        }
        worst.max((self.t1.cross(&self.t2) - self.axis).norm())
    }
}

/// The four n-Ge valleys (1,1,1), (-1,1,1), (1,-1,1), (-1,-1,1), normalised,
/// in that order.
pub fn standard_ge_valleys() -> Vec<ValleyFrame> {
    [
        (1.0, 1.0, 1.0),
        (-1.0, 1.0, 1.0),
        (1.0, -1.0, 1.0),
        (-1.0, -1.0, 1.0),
    ]
    .iter()
    .enumerate()
    .map(|(i, &(x, y, z))| ValleyFrame::from_axis(Vector3::new(x, y, z), i + 1))
    .collect()
}

/// Components of a lab vector along (t1, t2, axis).
pub fn to_valley_frame(v: &Vector3<f64>, frame: &ValleyFrame) -> Vector3<f64> {
    Vector3::new(v.dot(&frame.t1), v.dot(&frame.t2), v.dot(&frame.axis))
}

pub fn from_valley_frame(v: &Vector3<f64>, frame: &ValleyFrame) -> Vector3<f64> {
    frame.t1 * v.x + frame.t2 * v.y + frame.axis * v.z
}
