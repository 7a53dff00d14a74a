//! Sampled space curves and orthonormal moving frames.

use alloc::vec::Vec;

use nalgebra::{Matrix3, Vector3};


/// Orthonormal right-handed triad (tangent, principal normal, binormal).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetFrame {
    pub tangent: Vector3<f64>,
    pub normal: Vector3<f64>,
    pub binormal: Vector3<f64>,
}

impl FrenetFrame {
    pub fn new(tangent: Vector3<f64>, normal: Vector3<f64>, binormal: Vector3<f64>) -> Self {
        FrenetFrame {
            tangent,
            normal,
            binormal,
        }
    }

    /// Modified Gram-Schmidt re-orthonormalization; the binormal is
    /// recomputed as `t × n`, which keeps the triad right-handed.
    pub fn orthonormalized(&self) -> Self {
        let t = self.tangent.normalize();
        let n = (self.normal - t * self.normal.dot(&t)).normalize();
        let b = t.cross(&n);
        FrenetFrame {
            tangent: t,
            normal: n,
            binormal: b,
        }
    }

    /// Columns `[t n b]` as a rotation matrix (for a valid frame).
    pub fn to_matrix(&self) -> Matrix3<f64> {
        Matrix3::from_columns(&[self.tangent, self.normal, self.binormal])
    }

    /// Frame with every axis rotated by `r`.
    pub fn rotated(&self, r: &Matrix3<f64>) -> Self {
        FrenetFrame {
            tangent: r * self.tangent,
            normal: r * self.normal,
            binormal: r * self.binormal,
        }
    }

    /// Largest deviation from orthonormality: unit norms, pairwise
    /// orthogonality, and `b = t × n`.
    pub fn orthonormality_defect(&self) -> f64 {
        let t = self.tangent;
        let n = self.normal;
        let b = self.binormal;
        let mut defect: f64 = 0.0;
        for vec in [&t, &n, &b] {
            defect = defect.max((vec.norm() - 1.0).abs());
        }
        defect = defect.max(t.dot(&n).abs());
        defect = defect.max(t.dot(&b).abs());
        defect = defect.max(n.dot(&b).abs());
        defect.max((t.cross(&n) - b).norm())
    }
}

/// Arc-length grid with positions and, when available, Frenet frames.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    /// Arc-length samples, strictly increasing at uniform step (the first
    /// and last steps may be short).
    pub s: Vec<f64>,
    pub positions: Vec<Vector3<f64>>,
    pub frames: Option<Vec<FrenetFrame>>,
}

impl SampledCurve {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Largest deviation of the centered-difference speed from 1 over the
    /// interior samples. Unit-speed curves keep this at `O(h²)`.
    pub fn max_unit_speed_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 1..self.len().saturating_sub(1) {
            let span = self.s[i + 1] - self.s[i - 1];
            let speed = (self.positions[i + 1] - self.positions[i - 1]).norm() / span;
            worst = worst.max((speed - 1.0).abs());
        }
        worst
    }

    /// Largest orthonormality defect across attached frames (0 when no
    /// frames are attached).
    pub fn max_frame_defect(&self) -> f64 {
        self.frames
            .as_deref()
            .map(|frames| {
                frames
                    .iter()
                    .map(FrenetFrame::orthonormality_defect)
                    .fold(0.0, f64::max)
            })
            .unwrap_or(0.0)
    }

    /// True if any position or frame component is NaN or infinite.
    pub fn has_non_finite(&self) -> bool {
        let bad_vec = |v: &Vector3<f64>| !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite());
        if self.s.iter().any(|s| !s.is_finite()) {
            return true;
        }
        if self.positions.iter().any(bad_vec) {
            return true;
        }
        if let Some(frames) = &self.frames {
            return frames
                .iter()
                .any(|f| bad_vec(&f.tangent) || bad_vec(&f.normal) || bad_vec(&f.binormal));
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn orthonormalization_repairs_a_skewed_frame() {
        let frame = FrenetFrame::new(
            Vector3::new(1.0, 0.01, 0.0),
            Vector3::new(0.02, 1.0, 0.0),
            Vector3::new(0.0, 0.0, 0.9),
        );
        let fixed = frame.orthonormalized();
        assert!(fixed.orthonormality_defect() < 1e-14);
    }

    #[test]
    fn unit_speed_deviation_of_a_sampled_circle() {
        let h = 1e-3;
        let n = 2000;
        let s: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
        let positions = s.iter().map(|&t| Vector3::new(t.sin(), 1.0 - t.cos(), 0.0)).collect();
        let curve = SampledCurve {
            s,
            positions,
            frames: None,
        };
        assert!(curve.max_unit_speed_deviation() < 1e-6);
        assert!(!curve.has_non_finite());
    }

    #[test]
    fn frame_defect_is_reported() {
        let good = FrenetFrame::new(Vector3::x(), Vector3::y(), Vector3::z());
        assert_relative_eq!(good.orthonormality_defect(), 0.0, epsilon = 1e-15);
        let bad = FrenetFrame::new(Vector3::x(), Vector3::x(), Vector3::z());
        assert!(bad.orthonormality_defect() > 0.5);
    }
}
