//! Planar arrangement of closed polylines.
//!
//! Segments are split at all mutual intersections (including collinear
//! overlaps), endpoints are welded within a tolerance, and faces are traced
//! with the usual half-edge rule. Bounded faces are the counterclockwise
//! cycles; clockwise cycles are outer boundaries of connected components and
//! become holes of the smallest face containing them. Face labels follow from
//! the unbounded face (no set) by toggling, across every edge, the sets that
//! pass along it an odd number of times.

use std::collections::{HashMap, HashSet};

use crate::error::VerifyError;
use crate::geom::{point_in_polygon, signed_area, Point};
use crate::model::Zone;
use crate::Scalar;

type P = Point<f64>;

/// Per-edge curve data: sets present, odd-pass parity, per-set pass counts.
type EdgeSets = (u32, u32, Vec<(usize, u32)>);

/// Relative tolerance for welding vertices (times the bounding-box diagonal).
pub const WELD_TOLERANCE: f64 = 1e-7;

/// A face of the arrangement.
#[derive(Clone, Debug, PartialEq)]
pub struct ArrangementFace<T> {
    /// Outer boundary (counterclockwise); empty for the unbounded face.
    pub boundary: Vec<Point<T>>,
    /// Sets whose curves contain the face.
    pub label: Zone,
    /// Area net of holes; zero for the unbounded face.
    pub area: T,
    pub bounded: bool,
}

/// Faces plus the well-formedness evidence gathered while building them.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement<T> {
    pub faces: Vec<ArrangementFace<T>>,
    /// Connected runs of edges shared by two or more curves.
    pub concurrent_segments: usize,
    /// Vertices where three or more curves meet.
    pub nonpairwise_points: usize,
    /// Locations of those vertices.
    pub nonpairwise_at: Vec<Point<T>>,
    /// Sets whose curve touches or overlaps itself.
    pub nonsimple_sets: Vec<usize>,
    /// Faces whose label disagrees between two of their boundary edges
    /// (numerical trouble; zero for a sound arrangement).
    pub label_conflicts: usize,
}

struct Seg {
    a: P,
    b: P,
    set: usize,
}

/// Builds the arrangement of `curves` (set → closed loops).
pub fn extract_faces<T: Scalar>(curves: &[Vec<Vec<Point<T>>>]) -> Result<Arrangement<T>, VerifyError> {
    let mut segs = Vec::new();
    for (set, loops) in curves.iter().enumerate() {
        for lp in loops {
            let pts: Vec<P> = lp.iter().map(|p| p.cast::<f64>()).collect();
            for w in pts.windows(2) {
                if w[0] != w[1] {
                    segs.push(Seg { a: w[0], b: w[1], set });
                }
            }
        }
    }
    let to_t = |p: P| p.cast::<T>();
    if segs.is_empty() {
        return Ok(Arrangement {
            faces: vec![unbounded_face()],
            concurrent_segments: 0,
            nonpairwise_points: 0,
            nonpairwise_at: Vec::new(),
            nonsimple_sets: Vec::new(),
            label_conflicts: 0,
        });
    }
    let (mut lo, mut hi) = (P::new(f64::INFINITY, f64::INFINITY), P::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for s in &segs {
        for p in [s.a, s.b] {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(VerifyError::Degenerate("non-finite coordinate".into()));
            }
            lo = P::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = P::new(hi.x.max(p.x), hi.y.max(p.y));
        }
    }
    let diag = lo.dist(hi).max(1e-12);
    let eps = WELD_TOLERANCE * diag;

    let splits = intersect_all(&segs, lo, diag, eps);

    // Weld split points into vertices and collect edges.
    let mut welder = Welder::new(eps);
    // (u, v) with u < v → (sets present, odd-pass parity, per-set pass counts)
    let mut edges: HashMap<(usize, usize), EdgeSets> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (i, s) in segs.iter().enumerate() {
        let mut ts = splits[i].clone();
        ts.push(0.0);
        ts.push(1.0);
        ts.sort_by(|a, b| a.total_cmp(b));
        let mut prev: Option<usize> = None;
        for t in ts {
            let p = if t == 0.0 {
                s.a
            } else if t == 1.0 {
                s.b
            } else {
                s.a.lerp(s.b, t)
            };
            let v = welder.weld(p);
            if let Some(u) = prev {
                if u != v {
                    let key = (u.min(v), u.max(v));
                    let e = edges.entry(key).or_insert_with(|| {
                        order.push(key);
                        (0, 0, Vec::new())
                    });
                    e.0 |= 1 << s.set;
                    e.1 ^= 1 << s.set;
                    match e.2.iter_mut().find(|(set, _)| *set == s.set) {
                        Some(c) => c.1 += 1,
                        None => e.2.push((s.set, 1)),
                    }
                }
            }
            prev = Some(v);
        }
    }
    let verts = welder.points;
    let nv = verts.len();

    // Well-formedness evidence.
    let mut vertex_sets = vec![0u32; nv];
    let mut degree: HashMap<(usize, usize), u32> = HashMap::new();
    let mut nonsimple: HashSet<usize> = HashSet::new();
    for &(u, v) in &order {
        let (mask, _, counts) = &edges[&(u, v)];
        vertex_sets[u] |= mask;
        vertex_sets[v] |= mask;
        for &(set, c) in counts {
            if c > 1 {
                nonsimple.insert(set);
            }
            *degree.entry((u, set)).or_default() += c;
            *degree.entry((v, set)).or_default() += c;
        }
    }
    for (&(_, set), &d) in &degree {
        if d > 2 {
            nonsimple.insert(set);
        }
    }
    let nonpairwise_at: Vec<Point<T>> =
        (0..nv).filter(|&v| vertex_sets[v].count_ones() >= 3).map(|v| to_t(verts[v])).collect();
    let nonpairwise_points = nonpairwise_at.len();
    let concurrent_segments = {
        let shared: Vec<(usize, usize)> = order.iter().copied().filter(|k| edges[k].0.count_ones() >= 2).collect();
        let mut uf = UnionFind::new(nv);
        let mut touched = HashSet::new();
        for &(u, v) in &shared {
            uf.union(u, v);
            touched.insert(u);
        }
        touched.iter().map(|&u| uf.find(u)).collect::<HashSet<_>>().len()
    };

    // Half-edges: 2e is order[e].0 → order[e].1, 2e + 1 the reverse.
    let ne = order.len();
    let origin = |h: usize| if h.is_multiple_of(2) { order[h / 2].0 } else { order[h / 2].1 };
    let target = |h: usize| if h.is_multiple_of(2) { order[h / 2].1 } else { order[h / 2].0 };
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for h in 0..2 * ne {
        out[origin(h)].push(h);
    }
    let angle = |h: usize| {
        let d = verts[target(h)] - verts[origin(h)];
        d.y.atan2(d.x)
    };
    let mut pos_in_out = vec![0usize; 2 * ne];
    for list in &mut out {
        list.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)).then(a.cmp(&b)));
        for (i, &h) in list.iter().enumerate() {
            pos_in_out[h] = i;
        }
    }
    let next = |h: usize| {
        let twin = h ^ 1;
        let list = &out[target(h)];
        list[(pos_in_out[twin] + list.len() - 1) % list.len()]
    };

    // Trace cycles.
    let mut cycle_of = vec![usize::MAX; 2 * ne];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for h0 in 0..2 * ne {
        if cycle_of[h0] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cyc = Vec::new();
        let mut h = h0;
        while cycle_of[h] == usize::MAX {
            cycle_of[h] = id;
            cyc.push(h);
            h = next(h);
        }
        if h != h0 {
            return Err(VerifyError::Degenerate("half-edge cycle does not close".into()));
        }
        cycles.push(cyc);
    }
    let polygon = |c: &Vec<usize>| -> Vec<P> { c.iter().map(|&h| verts[origin(h)]).collect() };
    let areas: Vec<f64> = cycles.iter().map(|c| signed_area(&polygon(c))).collect();

    let mut uf = UnionFind::new(nv);
    for &(u, v) in &order {
        uf.union(u, v);
    }
    let comp = |c: &Vec<usize>, uf: &mut UnionFind| uf.find(origin(c[0]));

    // Bounded faces first, the unbounded face last.
    let positive: Vec<usize> = (0..cycles.len()).filter(|&c| areas[c] > 0.0).collect();
    let mut face_of_cycle = vec![usize::MAX; cycles.len()];
    for (f, &c) in positive.iter().enumerate() {
        face_of_cycle[c] = f;
    }
    let unbounded = positive.len();
    let polys: Vec<Vec<P>> = positive.iter().map(|&c| polygon(&cycles[c])).collect();
    let bbox = |poly: &[P]| {
        poly.iter().fold((f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY), |b, p| {
            (b.0.min(p.x), b.1.min(p.y), b.2.max(p.x), b.3.max(p.y))
        })
    };
    let boxes: Vec<_> = polys.iter().map(|p| bbox(p)).collect();
    let pos_comp: Vec<usize> = positive.iter().map(|&c| comp(&cycles[c], &mut uf)).collect();
    let mut hole_area = vec![0.0; positive.len()];
    for c in 0..cycles.len() {
        if areas[c] > 0.0 {
            continue;
        }
        let cc = comp(&cycles[c], &mut uf);
        let probe = verts[origin(cycles[c][0])];
        let mut best: Option<(f64, usize)> = None;
        for (f, poly) in polys.iter().enumerate() {
            let b = boxes[f];
            if pos_comp[f] == cc || probe.x < b.0 || probe.x > b.2 || probe.y < b.1 || probe.y > b.3 {
                continue;
            }
            if point_in_polygon(probe, poly) && best.is_none_or(|(a, _)| areas[positive[f]] < a) {
                best = Some((areas[positive[f]], f));
            }
        }
        face_of_cycle[c] = match best {
            Some((_, f)) => {
                hole_area[f] += -areas[c];
                f
            }
            None => unbounded,
        };
    }

    // Labels by propagation from the unbounded face.
    let nf = positive.len() + 1;
    let mut label: Vec<Option<u32>> = vec![None; nf];
    label[unbounded] = Some(0);
    let face_of_half = |h: usize| face_of_cycle[cycle_of[h]];
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); nf];
    for h in (0..2 * ne).step_by(2) {
        let parity = edges[&order[h / 2]].1;
        let (f, g) = (face_of_half(h), face_of_half(h + 1));
        adj[f].push((g, parity));
        adj[g].push((f, parity));
    }
    let mut conflicts = 0;
    let mut queue = std::collections::VecDeque::from([unbounded]);
    while let Some(f) = queue.pop_front() {
        let lf = label[f].expect("queued faces are labeled");
        for &(g, parity) in &adj[f] {
            match label[g] {
                None => {
                    label[g] = Some(lf ^ parity);
                    queue.push_back(g);
                }
                Some(lg) if lg != lf ^ parity => conflicts += 1,
                _ => {}
            }
        }
    }

    let mut faces: Vec<ArrangementFace<T>> = polys
        .iter()
        .enumerate()
        .map(|(f, poly)| ArrangementFace {
            boundary: poly.iter().map(|&p| to_t(p)).collect(),
            label: Zone(label[f].unwrap_or(0)),
            area: T::lit(areas[positive[f]] - hole_area[f]),
            bounded: true,
        })
        .collect();
    faces.push(unbounded_face());
    let mut nonsimple_sets: Vec<usize> = nonsimple.into_iter().collect();
    nonsimple_sets.sort_unstable();
    Ok(Arrangement {
        faces,
        concurrent_segments,
        nonpairwise_points,
        nonpairwise_at,
        nonsimple_sets,
        label_conflicts: conflicts / 2,
    })
}

fn unbounded_face<T: Scalar>() -> ArrangementFace<T> {
    ArrangementFace { boundary: Vec::new(), label: Zone::EMPTY, area: T::zero(), bounded: false }
}

/// Split parameters per segment from all pairwise intersections, found
/// through a uniform grid.
fn intersect_all(segs: &[Seg], lo: P, diag: f64, eps: f64) -> Vec<Vec<f64>> {
    let mean = segs.iter().map(|s| s.a.dist(s.b)).sum::<f64>() / segs.len() as f64;
    let h = (2.0 * mean).max(diag / 2048.0);
    let cell = |x: f64, y: f64| (((x - lo.x) / h).floor() as i64, ((y - lo.y) / h).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let bbox =
        |s: &Seg| (s.a.x.min(s.b.x) - eps, s.a.y.min(s.b.y) - eps, s.a.x.max(s.b.x) + eps, s.a.y.max(s.b.y) + eps);
    for (i, s) in segs.iter().enumerate() {
        let b = bbox(s);
        let (c0, c1) = (cell(b.0, b.1), cell(b.2, b.3));
        for cx in c0.0..=c1.0 {
            for cy in c0.1..=c1.1 {
                grid.entry((cx, cy)).or_default().push(i);
            }
        }
    }
    let mut splits = vec![Vec::new(); segs.len()];
    let mut keys: Vec<&(i64, i64)> = grid.keys().collect();
    keys.sort_unstable();
    for key in keys {
        let list = &grid[key];
        for x in 0..list.len() {
            for y in x + 1..list.len() {
                let (i, j) = (list[x], list[y]);
                let (bi, bj) = (bbox(&segs[i]), bbox(&segs[j]));
                let ov = (bi.0.max(bj.0), bi.1.max(bj.1), bi.2.min(bj.2), bi.3.min(bj.3));
                if ov.0 > ov.2 || ov.1 > ov.3 || cell(ov.0, ov.1) != *key {
                    continue;
                }
                intersect(&segs[i], &segs[j], eps, |t, u| {
                    if let Some(t) = t {
                        splits[i].push(t);
                    }
                    if let Some(u) = u {
                        splits[j].push(u);
                    }
                });
            }
        }
    }
    splits
}

/// Reports interior split parameters for an intersecting pair.
fn intersect(s1: &Seg, s2: &Seg, eps: f64, mut emit: impl FnMut(Option<f64>, Option<f64>)) {
    let (p, r) = (s1.a, s1.b - s1.a);
    let (q, s) = (s2.a, s2.b - s2.a);
    let (lr, ls) = (r.norm(), s.norm());
    let denom = r.cross(s);
    let interior = |t: f64, len: f64| t * len > eps && (1.0 - t) * len > eps;
    let qp = q - p;
    if denom.abs() > 1e-12 * lr * ls {
        let t = qp.cross(s) / denom;
        let u = qp.cross(r) / denom;
        let (tt, uu) = (eps / lr, eps / ls);
        if t >= -tt && t <= 1.0 + tt && u >= -uu && u <= 1.0 + uu {
            let t = t.clamp(0.0, 1.0);
            let u = u.clamp(0.0, 1.0);
            emit(interior(t, lr).then_some(t), interior(u, ls).then_some(u));
        }
        return;
    }
    // Parallel: only collinear overlaps matter.
    if (qp.cross(r) / lr).abs() > eps {
        return;
    }
    for (pt, on_first) in [(s2.a, true), (s2.b, true), (s1.a, false), (s1.b, false)] {
        if on_first {
            let t = (pt - p).dot(r) / (lr * lr);
            if interior(t, lr) {
                emit(Some(t), None);
            }
        } else {
            let u = (pt - q).dot(s) / (ls * ls);
            if interior(u, ls) {
                emit(None, Some(u));
            }
        }
    }
}

struct Welder {
    eps: f64,
    grid: HashMap<(i64, i64), Vec<usize>>,
    points: Vec<P>,
}

impl Welder {
    fn new(eps: f64) -> Self {
        Welder { eps, grid: HashMap::new(), points: Vec::new() }
    }

    fn weld(&mut self, p: P) -> usize {
        let key = ((p.x / self.eps).floor() as i64, (p.y / self.eps).floor() as i64);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(list) = self.grid.get(&(key.0 + dx, key.1 + dy)) {
                    for &v in list {
                        if self.points[v].dist(p) <= self.eps {
                            return v;
                        }
                    }
                }
            }
        }
        self.points.push(p);
        self.grid.entry(key).or_default().push(self.points.len() - 1);
        self.points.len() - 1
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let n = self.parent[c];
            self.parent[c] = r;
            c = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}
