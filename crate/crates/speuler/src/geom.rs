//! Plane points and the small amount of vector arithmetic the pipeline needs.

use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    /// Point at angle `theta` and radius `r` around the origin.
    pub fn polar(theta: T, r: T) -> Self {
        Point { x: r * theta.cos(), y: r * theta.sin() }
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3d cross product.
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Self {
        Point { x: -self.y, y: self.x }
    }

    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point { x: U::lit(self.x.to_f64().unwrap_or(0.0)), y: U::lit(self.y.to_f64().unwrap_or(0.0)) }
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Point { x: self.x + o.x, y: self.y + o.y }
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Point { x: self.x - o.x, y: self.y - o.y }
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Point { x: self.x * k, y: self.y * k }
    }
}

/// Signed area of a closed polygon (counterclockwise positive). The closing
/// edge is implied; a repeated first point is harmless.
pub fn signed_area<T: Scalar>(pts: &[Point<T>]) -> T {
    let n = pts.len();
    let mut acc = T::zero();
    for i in 0..n {
        acc = acc + pts[i].cross(pts[(i + 1) % n]);
    }
    acc / T::lit(2.0)
}

/// Length of a closed polygon.
pub fn perimeter<T: Scalar>(pts: &[Point<T>]) -> T {
    let n = pts.len();
    (0..n).fold(T::zero(), |acc, i| acc + pts[i].dist(pts[(i + 1) % n]))
}

/// Even-odd point-in-polygon test (boundary points are unspecified).
pub fn point_in_polygon<T: Scalar>(p: Point<T>, poly: &[Point<T>]) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n.wrapping_sub(1);
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unit_square() {
        let sq = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
        assert_relative_eq!(signed_area(&sq), 1.0);
        assert_relative_eq!(perimeter(&sq), 4.0);
        assert!(point_in_polygon(Point::new(0.5, 0.5), &sq));
        assert!(!point_in_polygon(Point::new(1.5, 0.5), &sq));
        let rev: Vec<_> = sq.iter().rev().copied().collect();
        assert_relative_eq!(signed_area(&rev), -1.0);
    }

    #[test]
    fn polar_round_trip() {
        let p = Point::<f32>::polar(std::f32::consts::FRAC_PI_2, 2.0);
        assert!(p.x.abs() < 1e-6 && (p.y - 2.0).abs() < 1e-6);
    }
}
