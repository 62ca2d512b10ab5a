//! Curves from the embedded dual: one closed curve per set, drawn through
//! link midpoints, gap crossings (gates) and face hubs, then smoothed.
//!
//! Every face of the dual gets a hub point; each link side on the face
//! boundary is connected to the hub by a route through the face's cells.
//! A set's curve crosses each of its links at the link point and joins
//! paired link sides through the hub, so around every node the curves cut
//! out exactly that node's region. Routes of a multi-colored link are shared
//! by all its sets (a concurrency bundle) and are never smoothed, so the
//! shared part stays identical for every curve using it.

mod smooth;
mod svg;
mod trace;

pub use smooth::{catmull_rom_span, merge_close, smooth_curve, MERGE_DISTANCE};
pub use svg::{apply_concurrency, emit_svg};
pub use trace::{trace_set_curve, Passage};

use serde::{Deserialize, Serialize};

use crate::dual::{CellId, Hub, LinkId, LinkSide, RankedDual, Topology};
use crate::error::RenderError;
use crate::geom::{point_in_polygon, Point};
use crate::layout::CircularLayout;
use crate::model::AbstractDescription;
use crate::Scalar;

/// Rendering style; every field has a default, so a style file may set any
/// subset of them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Style {
    /// Stroke width in output units.
    pub stroke_width: f64,
    /// Stroke colors, cycled by set index.
    pub palette: Vec<String>,
    /// Spline samples per control-point span.
    pub samples_per_span: usize,
    /// Concurrency offset spacing as a multiple of the stroke width.
    pub offset_factor: f64,
    /// Where curves cross a link, as a fraction from its outer end.
    pub midpoint_fraction: f64,
    /// Output units per layout unit.
    pub scale: f64,
    /// Canvas color, used to mask shared stretches under concurrent strands.
    pub background: String,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            stroke_width: 2.0,
            palette: [
                "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
                "#17becf",
            ]
            .map(String::from)
            .to_vec(),
            samples_per_span: 64,
            offset_factor: 1.5,
            midpoint_fraction: 0.5,
            scale: 40.0,
            background: "#ffffff".to_string(),
        }
    }
}

impl Style {
    pub fn from_json(text: &str) -> Result<Style, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Spacing between parallel concurrent curves, in layout units.
    pub fn offset_width(&self) -> f64 {
        self.offset_factor * self.stroke_width / self.scale
    }

    pub fn color(&self, set: usize) -> &str {
        if self.palette.is_empty() {
            "#000000"
        } else {
            &self.palette[set % self.palette.len()]
        }
    }
}

/// How control polylines become curves. Polar-linear route legs are first
/// subdivided into steps of at most `step_degrees`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Smoothing {
    /// Catmull-Rom spline through the subdivided control points.
    Spline { step_degrees: u32 },
    /// The subdivided control polyline itself.
    Polyline { step_degrees: u32 },
}

impl Smoothing {
    fn step(self) -> f64 {
        match self {
            Smoothing::Spline { step_degrees } | Smoothing::Polyline { step_degrees } => {
                (step_degrees as f64).to_radians()
            }
        }
    }
}

/// Smoothing attempts from smoothest to safest.
pub const SMOOTHING_LEVELS: [Smoothing; 3] = [
    Smoothing::Spline { step_degrees: 30 },
    Smoothing::Spline { step_degrees: 5 },
    Smoothing::Polyline { step_degrees: 2 },
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SegmentKind {
    /// Enters and leaves a face across different annuli.
    Regular,
    /// Enters and leaves a face through links of the same annulus.
    UTurn,
    /// Shared with other curves along a multi-colored link's route.
    Concurrent,
}

/// Half of a face passage: between a link point and the face hub.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSegment<T> {
    pub kind: SegmentKind,
    pub samples: Vec<Point<T>>,
    pub link: LinkId,
    /// `(face, boundary index)` of the link side whose route this is.
    pub side: (usize, usize),
    /// True if traversed from the hub toward the link.
    pub reversed: bool,
}

/// One closed loop of a set's curve.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveLoop<T> {
    pub control_points: Vec<Point<T>>,
    pub segments: Vec<CurveSegment<T>>,
}

impl<T: Scalar> CurveLoop<T> {
    /// Closed sample polyline (last point equals the first).
    pub fn samples(&self) -> Vec<Point<T>> {
        let mut out: Vec<Point<T>> = Vec::new();
        for seg in &self.segments {
            let skip = usize::from(!out.is_empty());
            out.extend(seg.samples.iter().skip(skip));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePath<T> {
    pub set: usize,
    pub name: String,
    /// One loop for a well-formed curve; more if the set is disconnected in
    /// the dual.
    pub loops: Vec<CurveLoop<T>>,
}

impl<T: Scalar> CurvePath<T> {
    pub fn polylines(&self) -> Vec<Vec<Point<T>>> {
        self.loops.iter().map(CurveLoop::samples).collect()
    }
}

/// Curves sharing the routes of one multi-colored link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcurrentBundle {
    pub link: LinkId,
    /// Participating sets in offset order.
    pub sets: Vec<usize>,
}

impl ConcurrentBundle {
    /// Signed offsets `(i − (k − 1) / 2) · w` for the `k` bundled curves.
    pub fn offsets(&self, w: f64) -> Vec<f64> {
        let k = self.sets.len() as f64;
        (0..self.sets.len()).map(|i| (i as f64 - (k - 1.0) / 2.0) * w).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagram<T> {
    pub curves: Vec<CurvePath<T>>,
    pub bundles: Vec<ConcurrentBundle>,
    pub smoothing: Smoothing,
}

impl<T: Scalar> Diagram<T> {
    /// Exact (unoffset) closed polylines: set → loops.
    pub fn polylines(&self) -> Vec<Vec<Vec<Point<T>>>> {
        self.curves.iter().map(CurvePath::polylines).collect()
    }
}

/// A point in a cell's polar frame (unwrapped angle, radius) together with
/// its canonical plane position. Hubs also carry their position in the
/// cell's virtual disk.
#[derive(Clone, Copy, Debug)]
struct Anchor<T> {
    theta: T,
    r: T,
    at: Point<T>,
    virt: Option<Point<T>>,
}

impl<T: Scalar> Anchor<T> {
    fn boundary(theta: T, r: T, at: Point<T>) -> Self {
        Anchor { theta, r, at, virt: None }
    }
}

/// A cell's quadrilateral (or triangle) in its polar frame, walked
/// outer-left, outer-right, inner-right, inner-left, and parameterized by
/// boundary length. Routes inside the cell are drawn as straight chords of
/// a unit "virtual" disk, carried into the cell by a map that sends the
/// disk boundary to the cell boundary (by length) and extends radially from
/// the cell centroid. The cell is convex, so the map is a homeomorphism:
/// chords that do not cross in the disk do not cross in the cell, even when
/// both ends of a route lie on the same ring.
struct CellShape<T> {
    corners: [(T, T); 4],
    center: (T, T),
    /// Weight of an angle unit against a radius unit when measuring length.
    scale: T,
    cumulative: [T; 5],
}

impl<T: Scalar> CellShape<T> {
    fn new(corners: [(T, T); 4], scale: T) -> Self {
        let q = T::lit(0.25);
        let center = (
            (corners[0].0 + corners[1].0 + corners[2].0 + corners[3].0) * q,
            (corners[0].1 + corners[1].1 + corners[2].1 + corners[3].1) * q,
        );
        let mut cumulative = [T::zero(); 5];
        for e in 0..4 {
            let (a, b) = (corners[e], corners[(e + 1) % 4]);
            cumulative[e + 1] = cumulative[e] + ((b.0 - a.0) * scale).hypot(b.1 - a.1);
        }
        CellShape { corners, center, scale, cumulative }
    }

    fn perimeter(&self) -> T {
        self.cumulative[4]
    }

    /// Boundary length parameter of a point on the boundary.
    fn param(&self, p: (T, T)) -> T {
        let mut best = (T::infinity(), T::zero());
        for e in 0..4 {
            let (a, b) = (self.corners[e], self.corners[(e + 1) % 4]);
            let len = self.cumulative[e + 1] - self.cumulative[e];
            let (dx, dy) = ((b.0 - a.0) * self.scale, b.1 - a.1);
            let (px, py) = ((p.0 - a.0) * self.scale, p.1 - a.1);
            let t = if len > T::zero() {
                ((px * dx + py * dy) / (len * len)).max(T::zero()).min(T::one())
            } else {
                T::zero()
            };
            let dist = (px - dx * t).hypot(py - dy * t);
            if dist < best.0 {
                best = (dist, self.cumulative[e] + len * t);
            }
        }
        best.1
    }

    fn at_param(&self, s: T) -> (T, T) {
        let s = s.max(T::zero()).min(self.perimeter());
        let e = (0..4).find(|&e| s <= self.cumulative[e + 1]).unwrap_or(3);
        let len = self.cumulative[e + 1] - self.cumulative[e];
        let t = if len > T::zero() { (s - self.cumulative[e]) / len } else { T::zero() };
        let (a, b) = (self.corners[e], self.corners[(e + 1) % 4]);
        (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
    }

    /// Virtual disk point of a boundary point.
    fn frame_to_virtual(&self, p: (T, T)) -> Point<T> {
        Point::polar(T::TAU() * self.param(p) / self.perimeter(), T::one())
    }

    /// Polar-frame point of a virtual disk point.
    fn virtual_to_frame(&self, v: Point<T>) -> (T, T) {
        let rho = v.norm().min(T::one());
        let mut phi = v.y.atan2(v.x);
        if phi < T::zero() {
            phi = phi + T::TAU();
        }
        let b = self.at_param(phi / T::TAU() * self.perimeter());
        (self.center.0 + (b.0 - self.center.0) * rho, self.center.1 + (b.1 - self.center.1) * rho)
    }
}

struct Geometry<'a, T> {
    layout: &'a CircularLayout<T>,
    topo: &'a Topology,
    fraction: T,
    /// Canonical plane point where curves cross each link.
    link_point: Vec<Point<T>>,
    /// Annulus of every link.
    link_annulus: Vec<usize>,
    /// Polar shape of every cell; `None` for the central disk.
    shape: Vec<Option<CellShape<T>>>,
    /// Hub anchor per face (in the frame of the cell routes end in).
    hub: Vec<Anchor<T>>,
}

impl<'a, T: Scalar> Geometry<'a, T> {
    fn new(dual: &'a RankedDual, layout: &'a CircularLayout<T>, topo: &'a Topology, style: &Style) -> Self {
        let mut g = Geometry {
            layout,
            topo,
            fraction: T::lit(style.midpoint_fraction),
            link_point: vec![Point::new(T::zero(), T::zero()); dual.links().len()],
            link_annulus: vec![0; dual.links().len()],
            shape: Vec::new(),
            hub: Vec::new(),
        };
        for k in 0..dual.ladders().len() {
            let lifts = dual.lifts(k).expect("valid dual");
            for (j, &l) in dual.ladders()[k].iter().enumerate() {
                g.link_annulus[l] = k;
                let (a, b) = g.link_ends(k, lifts[j]);
                g.link_point[l] = Point::polar(a.0 + (b.0 - a.0) * g.fraction, a.1 + (b.1 - a.1) * g.fraction);
            }
        }
        g.shape = topo
            .cells
            .iter()
            .map(|c| {
                c.links.map(|links| {
                    let (ol, il) = g.link_ends(c.annulus, links.left_lift);
                    let (or, ir) = g.link_ends(c.annulus, links.right_lift);
                    let mean = (ol.1 + il.1) * T::lit(0.5);
                    let scale = if mean > T::zero() { mean } else { T::one() };
                    CellShape::new([ol, or, ir, il], scale)
                })
            })
            .collect();
        g.hub = topo.faces.iter().map(|f| g.hub_anchor(f.hub)).collect();
        g
    }

    fn num(x: i64) -> T {
        T::from_i64(x).expect("small integer")
    }

    /// Outer and inner endpoints `(angle, radius)` of a link drawn in a frame
    /// where it has ring positions `lift`.
    fn link_ends(&self, k: usize, lift: (i64, i64)) -> ((T, T), (T, T)) {
        let l = self.layout;
        let (ro, ri) = (l.radius(k), l.radius(k + 1));
        if k == 0 {
            let th = l.angle(1, Self::num(lift.1));
            return ((th, ro), (th, ri));
        }
        let to = l.angle(k, Self::num(lift.0));
        let ti = if ri == T::zero() { to } else { l.angle(k + 1, Self::num(lift.1)) };
        ((to, ro), (ti, ri))
    }

    fn shape(&self, cell: CellId) -> &CellShape<T> {
        self.shape[cell].as_ref().expect("disk has no polar shape")
    }

    fn virtual_anchor(&self, cell: CellId, virt: Point<T>) -> Anchor<T> {
        let (theta, r) = self.shape(cell).virtual_to_frame(virt);
        Anchor { theta, r, at: Point::polar(theta, r), virt: Some(virt) }
    }

    fn hub_anchor(&self, hub: Hub) -> Anchor<T> {
        match hub {
            Hub::Disk(_) => Anchor::boundary(T::zero(), T::zero(), Point::new(T::zero(), T::zero())),
            Hub::Cell(c) => self.virtual_anchor(c, Point::new(T::zero(), T::zero())),
            Hub::Gap { ring, above, .. } => {
                let mid = (self.layout.angle(ring, Self::num(above.1) + T::lit(0.5)), self.layout.radius(ring));
                let v = self.shape(above.0).frame_to_virtual(mid);
                self.virtual_anchor(above.0, v * T::lit(0.8))
            }
        }
    }

    fn gap_anchor(&self, ring: usize, index: usize, lift: i64, lambda: f64) -> Anchor<T> {
        let lam = T::lit(lambda);
        let canonical = self.layout.angle(ring, T::from_usize(index).unwrap() + lam);
        let r = self.layout.radius(ring);
        Anchor::boundary(self.layout.angle(ring, Self::num(lift) + lam), r, Point::polar(canonical, r))
    }

    /// Legs of a link side's route, from the link point to the hub; each leg
    /// lies in one cell and its anchors are given in that cell's frame.
    fn route_legs(&self, face: usize, side: &LinkSide) -> Vec<(CellId, Anchor<T>, Anchor<T>)> {
        let cell = &self.topo.cells[side.cell];
        let (a, b) = self.link_ends(cell.annulus, side.lift);
        let f = self.fraction;
        let mut cur = Anchor::boundary(a.0 + (b.0 - a.0) * f, a.1 + (b.1 - a.1) * f, self.link_point[side.link]);
        let mut in_cell = side.cell;
        let mut legs = Vec::with_capacity(side.route.len() + 1);
        for c in &side.route {
            legs.push((in_cell, cur, self.gap_anchor(c.ring, c.index, c.from_lift, c.lambda)));
            cur = self.gap_anchor(c.ring, c.index, c.to_lift, c.lambda);
            in_cell = c.to;
        }
        legs.push((in_cell, cur, self.hub[face]));
        legs
    }

    /// Control polyline of a route; legs are sampled at angular step `step`.
    fn route_points(&self, face: usize, side: &LinkSide, step: f64) -> Vec<Point<T>> {
        let step = T::lit(step);
        let mut pts = Vec::new();
        for (cell, a, b) in self.route_legs(face, side) {
            if pts.is_empty() {
                pts.push(a.at);
            }
            match &self.shape[cell] {
                // The central disk is convex in the plane: straight chords.
                None => {
                    let n = ((a.at.dist(b.at) / a.at.norm().max(b.at.norm()).max(T::one())) / step)
                        .ceil()
                        .to_usize()
                        .unwrap_or(1)
                        .max(1);
                    for i in 1..n {
                        let s = T::from_usize(i).unwrap() / T::from_usize(n).unwrap();
                        pts.push(a.at + (b.at - a.at) * s);
                    }
                }
                Some(shape) => {
                    let va = a.virt.unwrap_or_else(|| shape.frame_to_virtual((a.theta, a.r)));
                    let vb = b.virt.unwrap_or_else(|| shape.frame_to_virtual((b.theta, b.r)));
                    let span = (b.theta - a.theta).abs().max(va.dist(vb));
                    let n = (span / step).ceil().to_usize().unwrap_or(1).max(2);
                    for i in 1..n {
                        let s = T::from_usize(i).unwrap() / T::from_usize(n).unwrap();
                        let (theta, r) = shape.virtual_to_frame(va + (vb - va) * s);
                        pts.push(Point::polar(theta, r));
                    }
                }
            }
            pts.push(b.at);
        }
        pts
    }
}

/// Traces and samples every set's curve.
pub fn render_diagram<T: Scalar>(
    d: &AbstractDescription,
    dual: &RankedDual,
    layout: &CircularLayout<T>,
    style: &Style,
    smoothing: Smoothing,
) -> Result<Diagram<T>, RenderError> {
    let topo = Topology::new(dual);
    let geo = Geometry::new(dual, layout, &topo, style);
    let step = smoothing.step();
    let mut route_cache: std::collections::HashMap<(usize, usize), Vec<Point<T>>> = Default::default();
    let mut route = |face: usize, idx: usize| -> Vec<Point<T>> {
        route_cache
            .entry((face, idx))
            .or_insert_with(|| geo.route_points(face, &topo.faces[face].boundary[idx], step))
            .clone()
    };

    let mut curves = Vec::new();
    for set in 0..d.set_count() {
        let mut loops = Vec::new();
        for passages in trace_set_curve(set, dual, &topo)? {
            // Pieces: (kind, link, side, reversed, control points incl. both ends).
            let mut pieces = Vec::with_capacity(2 * passages.len());
            for p in &passages {
                let face = &topo.faces[p.face];
                let (la, lb) = (face.boundary[p.enter].link, face.boundary[p.exit].link);
                let base = if geo.link_annulus[la] == geo.link_annulus[lb] {
                    SegmentKind::UTurn
                } else {
                    SegmentKind::Regular
                };
                let kind = |l: LinkId| if dual.links()[l].colors.rank() > 1 { SegmentKind::Concurrent } else { base };
                pieces.push((kind(la), la, (p.face, p.enter), false, route(p.face, p.enter)));
                let mut back = route(p.face, p.exit);
                back.reverse();
                pieces.push((kind(lb), lb, (p.face, p.exit), true, back));
            }
            loops.push(sample_loop(pieces, smoothing, style.samples_per_span));
        }
        curves.push(CurvePath { set, name: d.sets()[set].name.clone(), loops });
    }

    let mut bundles: Vec<ConcurrentBundle> = dual
        .links()
        .iter()
        .enumerate()
        .filter(|(_, l)| l.colors.rank() > 1)
        .map(|(link, l)| ConcurrentBundle { link, sets: l.colors.sets().collect() })
        .collect();
    bundles.sort_by_key(|b| b.link);
    Ok(Diagram { curves, bundles, smoothing })
}

type Piece<T> = (SegmentKind, LinkId, (usize, usize), bool, Vec<Point<T>>);

fn sample_loop<T: Scalar>(pieces: Vec<Piece<T>>, smoothing: Smoothing, samples_per_span: usize) -> CurveLoop<T> {
    // Flat cyclic control sequence; span i runs from cp[i] to cp[i + 1] and
    // belongs to piece span_piece[i].
    let eps = T::lit(MERGE_DISTANCE);
    let mut cp: Vec<Point<T>> = Vec::new();
    let mut span_piece: Vec<usize> = Vec::new();
    for (pi, piece) in pieces.iter().enumerate() {
        let pts = &piece.4;
        for &p in &pts[..pts.len() - 1] {
            if cp.last().is_some_and(|&q| q.dist(p) < eps) {
                continue;
            }
            cp.push(p);
            span_piece.push(pi);
        }
    }
    let n = cp.len();
    let smooth = matches!(smoothing, Smoothing::Spline { .. }) && n >= 3;
    let mut samples: Vec<Vec<Point<T>>> = vec![Vec::new(); pieces.len()];
    for i in 0..n {
        let pi = span_piece[i];
        if smooth && pieces[pi].0 != SegmentKind::Concurrent {
            samples[pi].extend(catmull_rom_span(
                cp[(i + n - 1) % n],
                cp[i],
                cp[(i + 1) % n],
                cp[(i + 2) % n],
                samples_per_span.max(1),
            ));
        } else {
            samples[pi].push(cp[i]);
        }
    }
    let segments = pieces
        .into_iter()
        .zip(samples)
        .filter(|(_, s)| !s.is_empty())
        .map(|((kind, link, side, reversed, _), s)| CurveSegment { kind, samples: s, link, side, reversed })
        .collect::<Vec<_>>();
    // Close every segment with the first sample of the next one.
    let mut segments = segments;
    let m = segments.len();
    for i in 0..m {
        let next_first = segments[(i + 1) % m].samples[0];
        segments[i].samples.push(next_first);
    }
    CurveLoop { control_points: cp, segments }
}

/// Whether a rendered curve separates the layout's nodes by membership:
/// nodes whose zone contains the set lie inside (odd winding parity over all
/// loops), all others outside.
pub fn cut_property<T: Scalar>(dual: &RankedDual, layout: &CircularLayout<T>, curve: &CurvePath<T>) -> bool {
    let polys = curve.polylines();
    dual.nodes().iter().enumerate().all(|(n, node)| match layout.node_position(dual, n) {
        None => true,
        Some(p) => {
            let inside = polys.iter().filter(|poly| point_in_polygon(p, poly)).count() % 2 == 1;
            inside == node.zone.contains_set(curve.set)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{build_dual, venn_dual};
    use crate::layout::layout_circular;
    use crate::model::parse_description;

    fn render(d: &AbstractDescription, dual: &RankedDual, smoothing: Smoothing) -> Diagram<f64> {
        let layout = layout_circular(dual);
        render_diagram(d, dual, &layout, &Style::default(), smoothing).unwrap()
    }

    #[test]
    fn single_set_is_a_closed_loop_around_its_node() {
        let d = parse_description("A\n0\na\n", Default::default()).unwrap().0;
        let dual = build_dual(&d).unwrap();
        for level in SMOOTHING_LEVELS {
            let diagram = render(&d, &dual, level);
            assert_eq!(diagram.curves.len(), 1);
            let polys = diagram.curves[0].polylines();
            assert_eq!(polys.len(), 1);
            assert_eq!(polys[0].first(), polys[0].last());
            let layout = layout_circular(&dual);
            assert!(cut_property(&dual, &layout, &diagram.curves[0]));
        }
    }

    #[test]
    fn venn_curves_satisfy_cut_property() {
        for n in 2..=5 {
            let d = AbstractDescription::full_venn(n).unwrap();
            let dual = venn_dual(n).unwrap();
            let layout = layout_circular::<f64>(&dual);
            for level in SMOOTHING_LEVELS {
                let diagram = render_diagram(&d, &dual, &layout, &Style::default(), level).unwrap();
                for c in &diagram.curves {
                    assert_eq!(c.loops.len(), 1);
                    assert!(cut_property(&dual, &layout, c), "n = {n}, set {}, {level:?}", c.set);
                }
                assert!(diagram.bundles.is_empty());
            }
        }
    }

    #[test]
    fn multi_colored_link_forms_one_bundle_with_identical_routes() {
        let d = parse_description("A,C,O\n0\na\nac\naco\nco\n", Default::default()).unwrap().0;
        let dual = build_dual(&d).unwrap();
        let diagram = render(&d, &dual, SMOOTHING_LEVELS[0]);
        assert_eq!(diagram.bundles.len(), 1);
        let shared = |set: usize| -> Vec<Vec<Point<f64>>> {
            let mut v: Vec<Vec<Point<f64>>> = diagram.curves[set]
                .loops
                .iter()
                .flat_map(|l| &l.segments)
                .filter(|s| s.kind == SegmentKind::Concurrent)
                .map(|s| {
                    let mut p = s.samples.clone();
                    if s.reversed {
                        p.reverse();
                    }
                    p
                })
                .collect();
            v.sort_by(|a, b| a[0].x.partial_cmp(&b[0].x).unwrap());
            v
        };
        assert!(!shared(1).is_empty());
        assert_eq!(shared(1), shared(2));
    }
}
