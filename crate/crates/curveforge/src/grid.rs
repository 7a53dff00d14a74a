//! Uniform-grid construction and cumulative trapezoid quadrature.
//!
//! All solver and quadrature grids in this crate come from these helpers so
//! that curves produced by different pipelines over the same interval share
//! identical sample points.

use alloc::vec::Vec;

use nalgebra::Vector3;

#[cfg(not(feature = "std"))]
use crate::math::FloatExt;

/// Relative tolerance for deciding that a span is an integral number of
/// steps (then the final point is snapped onto the endpoint instead of
/// appending a micro step).
const SNAP_REL: f64 = 1e-9;

/// Increasing grid from `from` to `to` at step `h`; the final step may be
/// short, and the last sample lands exactly on `to`.
pub(crate) fn forward_grid(from: f64, to: f64, h: f64) -> Vec<f64> {
    debug_assert!(h > 0.0 && to > from);
    let span = to - from;
    let steps = span / h;
    let rounded = steps.round();
    let n = if (steps - rounded).abs() <= SNAP_REL * rounded.max(1.0) && rounded >= 1.0 {
        rounded as usize
    } else {
        steps.floor() as usize
    };
    let mut s: Vec<f64> = (0..=n).map(|i| from + i as f64 * h).collect();
    let last = s[n];
    if (to - last).abs() <= SNAP_REL * h {
        s[n] = to;
    } else if last < to {
        s.push(to);
    } else {
        s[n] = to;
    }
    s
}

/// Increasing grid over `[lo, hi]` anchored at `anchor` (which becomes a
/// grid point); returns the grid and the anchor's index. Steps run outward
/// from the anchor in both directions, so the first and last steps may be
/// short.
pub(crate) fn anchored_grid(lo: f64, hi: f64, anchor: f64, h: f64) -> (Vec<f64>, usize) {
    debug_assert!(lo <= anchor && anchor <= hi);
    let mut s = Vec::new();
    if anchor - lo > SNAP_REL * h {
        let offsets = forward_grid(0.0, anchor - lo, h);
        for (k, off) in offsets.iter().rev().enumerate() {
            if k == 0 {
                s.push(lo); // the largest offset corresponds to `lo` exactly
            } else {
                s.push(anchor - off);
            }
        }
        // drop the zero offset; the anchor is pushed below
        s.pop();
    }
    let origin = s.len();
    if hi - anchor > SNAP_REL * h {
        s.extend(forward_grid(anchor, hi, h));
    } else {
        s.push(anchor);
    }
    (s, origin)
}

/// Cumulative trapezoid integral of samples `f` over grid `s`, zero at
/// `origin` and signed on both sides of it.
pub(crate) fn cumtrapz(s: &[f64], f: &[f64], origin: usize) -> Vec<f64> {
    debug_assert_eq!(s.len(), f.len());
    let n = s.len();
    let mut out = alloc::vec![0.0; n];
    for i in origin..n.saturating_sub(1) {
        out[i + 1] = out[i] + 0.5 * (f[i] + f[i + 1]) * (s[i + 1] - s[i]);
    }
    for i in (0..origin).rev() {
        out[i] = out[i + 1] - 0.5 * (f[i] + f[i + 1]) * (s[i + 1] - s[i]);
    }
    out
}

/// Vector-valued variant of [`cumtrapz`].
pub(crate) fn cumtrapz3(s: &[f64], f: &[Vector3<f64>], origin: usize) -> Vec<Vector3<f64>> {
    debug_assert_eq!(s.len(), f.len());
    let n = s.len();
    let mut out = alloc::vec![Vector3::zeros(); n];
    for i in origin..n.saturating_sub(1) {
        out[i + 1] = out[i] + 0.5 * (f[i] + f[i + 1]) * (s[i + 1] - s[i]);
    }
    for i in (0..origin).rev() {
        out[i] = out[i + 1] - 0.5 * (f[i] + f[i + 1]) * (s[i + 1] - s[i]);
    }
    out
}
