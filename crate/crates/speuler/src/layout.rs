//! Concentric-ring layout of the dual.
//!
//! ∅ is removed (it lies beyond the outermost ring), rank `k` nodes sit on
//! ring `k` at equal angular spacing, and the innermost rank is either a
//! single node at the origin or a ring around an empty disk. Links are drawn
//! as polar-linear segments (angle and radius interpolated linearly), which
//! keeps every ladder crossing-free. Each ring is rotated to minimize the
//! angular twist of the links to the ring above.

use serde::Serialize;

use crate::dual::{NodeId, RankedDual};
use crate::geom::Point;
use crate::model::AbstractDescription;
use crate::Scalar;

/// Layout tuning.
#[derive(Clone, Copy, Debug)]
pub struct LayoutOptions {
    /// Minimum arc length between neighbouring nodes on a ring.
    pub min_spacing: f64,
    /// Minimum radial distance between consecutive rings.
    pub ring_gap: f64,
}

impl Default for LayoutOptions {
    fn default() -> Self {
        LayoutOptions { min_spacing: 1.0, ring_gap: 1.0 }
    }
}

/// One ring: its nodes in counterclockwise order at equal spacing.
#[derive(Clone, Debug, PartialEq)]
pub struct RingSpec<T> {
    pub rank: usize,
    pub radius: T,
    /// Angle of the ring's first node.
    pub phase: T,
    pub nodes: Vec<NodeId>,
    pub node_angles: Vec<T>,
}

/// A gate: the midpoint of the arc between two neighbouring ring nodes, the
/// place where curves cross that ring.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateNode<T> {
    pub ring: usize,
    /// The gate lies between ring positions `index` and `index + 1`.
    pub index: usize,
    pub angle: T,
    pub radius: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircularLayout<T> {
    /// `rings[0]` is the virtual ∅ ring at `outer_radius`.
    pub rings: Vec<RingSpec<T>>,
    pub gates: Vec<GateNode<T>>,
    /// The max-rank node placed at the origin, if the innermost ring has one node.
    pub center: Option<NodeId>,
    /// Radius of the virtual ∅ ring; all curves stay inside it.
    pub outer_radius: T,
}

impl<T: Scalar> CircularLayout<T> {
    /// Angle of the (fractional, unwrapped) position `u` on ring `ring`.
    pub fn angle(&self, ring: usize, u: T) -> T {
        let spec = &self.rings[ring];
        let n = T::from_usize(spec.nodes.len()).unwrap_or_else(T::one);
        spec.phase + T::TAU() * u / n
    }

    pub fn radius(&self, ring: usize) -> T {
        self.rings[ring].radius
    }

    /// Plane position of a node; `None` for ∅, which lies at infinity.
    pub fn node_position(&self, dual: &RankedDual, n: NodeId) -> Option<Point<T>> {
        let node = &dual.nodes()[n];
        if node.rank == 0 {
            return None;
        }
        let ring = &self.rings[node.rank];
        Some(Point::polar(ring.node_angles[node.order_index], ring.radius))
    }

    /// Radius-and-angle export of every non-∅ node.
    pub fn export(&self, dual: &RankedDual, d: &AbstractDescription) -> LayoutExport {
        let mut nodes = Vec::new();
        for ring in &self.rings[1..] {
            for (&n, &a) in ring.nodes.iter().zip(&ring.node_angles) {
                let node = &dual.nodes()[n];
                let zone = d.zone_text(node.zone);
                nodes.push(NodePosition {
                    zone: if node.is_virtual { format!("{zone}'") } else { zone },
                    rank: ring.rank,
                    angle: a.to_f64().unwrap_or(0.0),
                    radius: ring.radius.to_f64().unwrap_or(0.0),
                });
            }
        }
        let gates = self
            .gates
            .iter()
            .map(|g| GatePosition {
                ring: g.ring,
                index: g.index,
                angle: g.angle.to_f64().unwrap_or(0.0),
                radius: g.radius.to_f64().unwrap_or(0.0),
            })
            .collect();
        LayoutExport { outer_radius: self.outer_radius.to_f64().unwrap_or(0.0), nodes, gates }
    }
}

/// Serializable layout.
#[derive(Clone, Debug, Serialize)]
pub struct LayoutExport {
    pub outer_radius: f64,
    pub nodes: Vec<NodePosition>,
    pub gates: Vec<GatePosition>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodePosition {
    pub zone: String,
    pub rank: usize,
    pub angle: f64,
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GatePosition {
    pub ring: usize,
    pub index: usize,
    pub angle: f64,
    pub radius: f64,
}

/// Lays out the dual with default options.
pub fn layout_circular<T: Scalar>(dual: &RankedDual) -> CircularLayout<T> {
    layout_circular_with(dual, LayoutOptions::default())
}

pub fn layout_circular_with<T: Scalar>(dual: &RankedDual, options: LayoutOptions) -> CircularLayout<T> {
    let rings = dual.rings();
    let t = dual.top_rank();
    let s = T::lit(options.min_spacing);
    let gap = T::lit(options.ring_gap);
    let circ = |k: usize| T::from_usize(rings[k].len()).unwrap_or_else(T::one) * s / T::TAU();

    // Radii from the inside out; rank 0 is the virtual ∅ ring.
    let mut radius = vec![T::zero(); rings.len()];
    if t >= 1 {
        radius[t] = if dual.has_center_node() { T::zero() } else { gap.max(circ(t)) };
        for k in (1..t).rev() {
            radius[k] = (radius[k + 1] + gap).max(circ(k));
        }
    }
    let outer_radius = if t >= 1 { radius[1] + gap } else { gap };
    radius[0] = outer_radius;

    // Phases from the outside in, each minimizing the twist of its ladder.
    let mut phase = vec![T::zero(); rings.len()];
    if t >= 1 {
        phase[1] = T::FRAC_PI_2();
    }
    for k in 1..t {
        let lifts = dual.lifts(k).expect("valid dual");
        let (na, nb) = (rings[k].len() as f64, rings[k + 1].len() as f64);
        let m = lifts.len() - 1;
        let p0 = phase[k].to_f64().unwrap_or(0.0);
        let tau = std::f64::consts::TAU;
        let sum: f64 = lifts[..m].iter().map(|&(uo, ui)| p0 + tau * uo as f64 / na - tau * ui as f64 / nb).sum();
        phase[k + 1] = T::lit(sum / m as f64);
    }

    let specs = rings
        .iter()
        .enumerate()
        .map(|(k, nodes)| {
            let n = T::from_usize(nodes.len()).unwrap_or_else(T::one);
            RingSpec {
                rank: k,
                radius: radius[k],
                phase: phase[k],
                nodes: nodes.clone(),
                node_angles: (0..nodes.len())
                    .map(|i| phase[k] + T::TAU() * T::from_usize(i).unwrap_or_else(T::zero) / n)
                    .collect(),
            }
        })
        .collect();
    let layout = CircularLayout {
        rings: specs,
        gates: Vec::new(),
        center: dual.has_center_node().then(|| rings[t][0]),
        outer_radius,
    };
    place_gates(layout)
}

/// Places one gate at the arc midpoint between every pair of cyclically
/// adjacent nodes on each ring (not on ∅'s ring or a center node).
pub fn place_gates<T: Scalar>(mut layout: CircularLayout<T>) -> CircularLayout<T> {
    let half = T::lit(0.5);
    let mut gates = Vec::new();
    for ring in 1..layout.rings.len() {
        if layout.rings[ring].radius == T::zero() {
            continue;
        }
        for index in 0..layout.rings[ring].nodes.len() {
            let u = T::from_usize(index).unwrap_or_else(T::zero) + half;
            gates.push(GateNode { ring, index, angle: layout.angle(ring, u), radius: layout.rings[ring].radius });
        }
    }
    layout.gates = gates;
    layout
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{build_dual, venn_dual};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn two_venn_is_antipodal_around_center() {
        let d = venn_dual(2).unwrap();
        let l: CircularLayout<f64> = layout_circular(&d);
        let a = &l.rings[1];
        assert_eq!(a.nodes.len(), 2);
        assert_relative_eq!((a.node_angles[1] - a.node_angles[0]).abs(), PI, epsilon = 1e-12);
        let center = l.center.unwrap();
        assert_eq!(l.node_position(&d, center).unwrap().norm(), 0.0);
        // Gates on the 2-node ring sit at ±90° from the node axis.
        let gates: Vec<_> = l.gates.iter().filter(|g| g.ring == 1).collect();
        assert_eq!(gates.len(), 2);
        for g in gates {
            assert_relative_eq!((g.angle - a.node_angles[0]).abs() % PI, PI / 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn three_venn_rings_are_evenly_spaced() {
        let d = venn_dual(3).unwrap();
        let l: CircularLayout<f64> = layout_circular(&d);
        let sizes: Vec<usize> = l.rings[1..].iter().map(|r| r.nodes.len()).collect();
        assert_eq!(sizes, vec![3, 3, 1]);
        for ring in &l.rings[1..3] {
            let n = ring.node_angles.len();
            for i in 0..n {
                let next = if i + 1 < n { ring.node_angles[i + 1] } else { ring.node_angles[0] + 2.0 * PI };
                assert!((next - ring.node_angles[i] - 2.0 * PI / n as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn radii_decrease_inward_and_gates_match_ring_sizes() {
        for n in 2..=6 {
            let d = venn_dual(n).unwrap();
            let l: CircularLayout<f32> = layout_circular(&d);
            for k in 0..l.rings.len() - 1 {
                assert!(l.rings[k].radius > l.rings[k + 1].radius);
            }
            let expected: usize = l.rings[1..].iter().filter(|r| r.radius > 0.0).map(|r| r.nodes.len()).sum();
            assert_eq!(l.gates.len(), expected);
        }
    }

    fn segments_cross(a: Point<f64>, b: Point<f64>, c: Point<f64>, d: Point<f64>) -> bool {
        let o = |p: Point<f64>, q: Point<f64>, r: Point<f64>| (q - p).cross(r - p);
        let (d1, d2, d3, d4) = (o(c, d, a), o(c, d, b), o(a, b, c), o(a, b, d));
        d1 * d2 < 0.0 && d3 * d4 < 0.0
    }

    /// Polar-linear link drawings of a planar dual never cross.
    #[test]
    fn drawn_links_do_not_cross() {
        let desc =
            crate::model::parse_description("A,B,C,D\n0\na\nb\nc\nd\nab\nbc\ncd\nad\nabc\nbcd\n", Default::default())
                .unwrap()
                .0;
        for d in [venn_dual(4).unwrap(), build_dual(&desc).unwrap()] {
            let l: CircularLayout<f64> = layout_circular(&d);
            let mut polylines = Vec::new();
            for k in 1..d.top_rank() {
                let lifts = d.lifts(k).unwrap();
                for &(uo, ui) in &lifts[..lifts.len() - 1] {
                    let (ta, tb) = (l.angle(k, uo as f64), l.angle(k + 1, ui as f64));
                    let (ra, rb) = (l.radius(k), l.radius(k + 1));
                    let tb = if rb == 0.0 { ta } else { tb };
                    let pts: Vec<Point<f64>> = (0..=32)
                        .map(|i| {
                            let s = i as f64 / 32.0;
                            Point::polar(ta + (tb - ta) * s, ra + (rb - ra) * s)
                        })
                        .collect();
                    polylines.push(pts);
                }
            }
            for i in 0..polylines.len() {
                for j in i + 1..polylines.len() {
                    for a in polylines[i].windows(2) {
                        for b in polylines[j].windows(2) {
                            assert!(!segments_cross(a[0], a[1], b[0], b[1]), "links {i} and {j} cross");
                        }
                    }
                }
            }
        }
    }
}
