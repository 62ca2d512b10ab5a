//! Centripetal Catmull-Rom splines.

use crate::geom::Point;
use crate::Scalar;

/// Control points closer than this are merged before smoothing.
pub const MERGE_DISTANCE: f64 = 1e-9;

/// Samples the span from `p1` to `p2` of the centripetal (α = 0.5)
/// Catmull-Rom spline through `p0..p3`: `samples` points starting exactly at
/// `p1`, excluding `p2`.
pub fn catmull_rom_span<T: Scalar>(
    p0: Point<T>,
    p1: Point<T>,
    p2: Point<T>,
    p3: Point<T>,
    samples: usize,
) -> Vec<Point<T>> {
    let eps = T::lit(1e-12);
    let knot = |a: Point<T>, b: Point<T>| a.dist(b).sqrt().max(eps);
    let t0 = T::zero();
    let t1 = t0 + knot(p0, p1);
    let t2 = t1 + knot(p1, p2);
    let t3 = t2 + knot(p2, p3);
    let mix = |a: Point<T>, b: Point<T>, ta: T, tb: T, t: T| a * ((tb - t) / (tb - ta)) + b * ((t - ta) / (tb - ta));
    let mut out = Vec::with_capacity(samples);
    out.push(p1);
    for i in 1..samples {
        let t = t1 + (t2 - t1) * T::from_usize(i).unwrap() / T::from_usize(samples).unwrap();
        let a1 = mix(p0, p1, t0, t1, t);
        let a2 = mix(p1, p2, t1, t2, t);
        let a3 = mix(p2, p3, t2, t3, t);
        let b1 = mix(a1, a2, t0, t2, t);
        let b2 = mix(a2, a3, t1, t3, t);
        out.push(mix(b1, b2, t1, t2, t));
    }
    out
}

/// Drops consecutive (cyclically) control points closer than
/// [`MERGE_DISTANCE`].
pub fn merge_close<T: Scalar>(points: &[Point<T>]) -> Vec<Point<T>> {
    let eps = T::lit(MERGE_DISTANCE);
    let mut out: Vec<Point<T>> = Vec::with_capacity(points.len());
    for &p in points {
        if out.last().is_none_or(|&q| q.dist(p) >= eps) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(out[out.len() - 1]) < eps {
        out.pop();
    }
    out
}

/// Closed C1 curve through all control points (given without repeating the
/// first). The result is closed: its last sample equals its first.
pub fn smooth_curve<T: Scalar>(control: &[Point<T>], samples_per_span: usize) -> Vec<Point<T>> {
    let cp = merge_close(control);
    let n = cp.len();
    if n < 3 {
        let mut out = cp.clone();
        if let Some(&f) = cp.first() {
            out.push(f);
        }
        return out;
    }
    let mut out = Vec::with_capacity(n * samples_per_span + 1);
    for i in 0..n {
        out.extend(catmull_rom_span(
            cp[(i + n - 1) % n],
            cp[i],
            cp[(i + 1) % n],
            cp[(i + 2) % n],
            samples_per_span.max(1),
        ));
    }
    out.push(cp[0]);
    out
}
