//! Cells, faces and curve routes of an embedded dual.
//!
//! Between two consecutive rings, consecutive ladder links bound a *cell*:
//! a trapezoid in polar `(angle, radius)` coordinates whose top and bottom
//! are ring arcs. The arc between two cyclically adjacent nodes of a ring is
//! a *gap*; each gap is shared by exactly one cell above and one cell below
//! it (the innermost ring's gaps border the central disk when there is no
//! center node). Gluing cells along gaps yields the faces of the dual, and
//! the cells of one face form a tree.
//!
//! Every face gets a *hub*: the point where all curves passing through the
//! face meet. Each side of a link on the face boundary is routed through the
//! cell tree to the hub, crossing every intermediate gap at a distinct point
//! ordered along the face boundary, so routes never cross each other.

use std::collections::HashMap;

use super::{LinkId, NodeId, RankedDual};

/// A gap as `(ring, index)`.
type GapKey = (usize, usize);

pub type CellId = usize;

/// A gap as seen from one cell: ring, gap index (between ring positions
/// `index` and `index + 1`) and the unwrapped position of its first endpoint
/// in that cell's angular frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapRef {
    pub ring: usize,
    pub index: usize,
    pub lift: i64,
}

/// Which boundary of its cell a link side forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The link bounds the cell at its low-angle end.
    Left,
    /// The link bounds the cell at its high-angle end.
    Right,
}

/// A cell between ring `annulus` and ring `annulus + 1`, or the central disk.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub annulus: usize,
    /// `None` for the central disk.
    pub links: Option<CellLinks>,
    pub outer_gaps: Vec<GapRef>,
    pub inner_gaps: Vec<GapRef>,
}

/// The two links bounding a cell with their unwrapped ring positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellLinks {
    pub left: LinkId,
    pub left_lift: (i64, i64),
    pub right: LinkId,
    pub right_lift: (i64, i64),
}

/// One crossing of a route through a gap, from `from` into `to`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapCrossing {
    pub ring: usize,
    pub index: usize,
    /// Position along the gap in `(0, 1)`, from node `index` toward `index + 1`.
    pub lambda: f64,
    pub from: CellId,
    pub from_lift: i64,
    pub to: CellId,
    pub to_lift: i64,
}

/// One side of a link on a face boundary with its route to the face hub.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkSide {
    pub link: LinkId,
    pub cell: CellId,
    pub side: Side,
    /// Unwrapped ring positions of the link in the cell's frame.
    pub lift: (i64, i64),
    /// The corner node reached next when walking the face boundary.
    pub next_node: NodeId,
    /// Gap crossings from the link toward the hub, in travel order.
    pub route: Vec<GapCrossing>,
}

/// Where the curves of a face meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hub {
    /// The center of the drawing (face contains the central disk).
    Disk(CellId),
    /// Next to a gap's midpoint (the gate node between two ring
    /// neighbours), inside the cell above it; routes from the cell below
    /// cross the gap.
    Gap { ring: usize, index: usize, above: (CellId, i64), below: (CellId, i64) },
    /// Interior point of a face made of a single cell without gaps.
    Cell(CellId),
}

/// A face of the embedded dual.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub cells: Vec<CellId>,
    /// Link sides in boundary order.
    pub boundary: Vec<LinkSide>,
    pub hub: Hub,
    /// The unbounded face (contains the far side of ∅).
    pub outer: bool,
    /// Exactly four links with two alternating colors.
    pub monotone: bool,
}

/// Cells and faces of a dual.
#[derive(Clone, Debug)]
pub struct Topology {
    pub cells: Vec<Cell>,
    pub faces: Vec<Face>,
    /// Face of every cell.
    pub face_of_cell: Vec<usize>,
}

#[derive(Clone, Copy)]
enum Item {
    Side { link: LinkId, side: Side, lift: (i64, i64), next_node: NodeId },
    Gap { gap: GapRef, outer_side: bool },
}

struct Builder<'a> {
    dual: &'a RankedDual,
    cells: Vec<Cell>,
    /// `(ring, gap)` → (cell above, lift there), (cell below, lift there).
    above: HashMap<(usize, usize), (CellId, i64)>,
    below: HashMap<(usize, usize), (CellId, i64)>,
}

impl Topology {
    /// Computes cells, faces, hubs and routes.
    pub fn new(dual: &RankedDual) -> Topology {
        let mut b = Builder { dual, cells: Vec::new(), above: HashMap::new(), below: HashMap::new() };
        b.build_cells();
        b.build_faces()
    }

    /// The unbounded face.
    pub fn outer_face(&self) -> Option<&Face> {
        self.faces.iter().find(|f| f.outer)
    }
}

impl Builder<'_> {
    fn build_cells(&mut self) {
        let dual = self.dual;
        for k in 0..dual.ladders.len() {
            let lifts = dual.lifts(k).expect("validated ladder");
            let ladder = &dual.ladders[k];
            let m = ladder.len();
            let (na, nb) = (dual.rings[k].len() as i64, dual.rings[k + 1].len() as i64);
            for j in 0..m {
                let id = self.cells.len();
                let (l, r) = (lifts[j], lifts[j + 1]);
                let outer_gaps: Vec<GapRef> =
                    (l.0..r.0).map(|u| GapRef { ring: k, index: u.rem_euclid(na) as usize, lift: u }).collect();
                let inner_gaps: Vec<GapRef> =
                    (l.1..r.1).map(|u| GapRef { ring: k + 1, index: u.rem_euclid(nb) as usize, lift: u }).collect();
                for g in &outer_gaps {
                    self.below.insert((g.ring, g.index), (id, g.lift));
                }
                for g in &inner_gaps {
                    self.above.insert((g.ring, g.index), (id, g.lift));
                }
                self.cells.push(Cell {
                    annulus: k,
                    links: Some(CellLinks { left: ladder[j], left_lift: l, right: ladder[(j + 1) % m], right_lift: r }),
                    outer_gaps,
                    inner_gaps,
                });
            }
        }
        let t = dual.top_rank();
        if !dual.has_center_node() {
            let id = self.cells.len();
            let outer_gaps: Vec<GapRef> =
                (0..dual.rings[t].len()).map(|g| GapRef { ring: t, index: g, lift: g as i64 }).collect();
            for g in &outer_gaps {
                self.below.insert((t, g.index), (id, g.lift));
            }
            self.cells.push(Cell { annulus: t, links: None, outer_gaps, inner_gaps: Vec::new() });
        }
    }

    fn glued(&self, ring: usize, index: usize) -> bool {
        ring >= 1 && self.above.contains_key(&(ring, index)) && self.below.contains_key(&(ring, index))
    }

    /// Boundary items of a cell, counterclockwise in the `(angle, radius)` plane:
    /// down the left link, along the inner arc, up the right link, back along
    /// the outer arc.
    fn walk(&self, id: CellId) -> Vec<Item> {
        let cell = &self.cells[id];
        let mut items = Vec::new();
        if let Some(cl) = cell.links {
            let left = self.dual.links[cl.left];
            items.push(Item::Side { link: cl.left, side: Side::Left, lift: cl.left_lift, next_node: left.upper });
            items.extend(cell.inner_gaps.iter().map(|&gap| Item::Gap { gap, outer_side: false }));
            let right = self.dual.links[cl.right];
            items.push(Item::Side { link: cl.right, side: Side::Right, lift: cl.right_lift, next_node: right.lower });
        }
        items.extend(cell.outer_gaps.iter().rev().map(|&gap| Item::Gap { gap, outer_side: true }));
        items
    }

    fn other_cell(&self, here: CellId, ring: usize, index: usize) -> (CellId, i64) {
        let a = self.above[&(ring, index)];
        if a.0 == here {
            self.below[&(ring, index)]
        } else {
            a
        }
    }

    fn build_faces(self) -> Topology {
        let n = self.cells.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let nx = p[c];
                p[c] = r;
                c = nx;
            }
            r
        }
        let mut gaps: Vec<(usize, usize)> = self.above.keys().copied().filter(|&(r, i)| self.glued(r, i)).collect();
        gaps.sort_unstable();
        for &(r, i) in &gaps {
            let (a, b) = (find(&mut parent, self.above[&(r, i)].0), find(&mut parent, self.below[&(r, i)].0));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut face_index: HashMap<usize, usize> = HashMap::new();
        let mut members: Vec<Vec<CellId>> = Vec::new();
        let mut face_of_cell = vec![0; n];
        for (c, slot) in face_of_cell.iter_mut().enumerate() {
            let root = find(&mut parent, c);
            let f = *face_index.entry(root).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[f].push(c);
            *slot = f;
        }
        let mut face_gaps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); members.len()];
        for &(r, i) in &gaps {
            face_gaps[face_of_cell[self.above[&(r, i)].0]].push((r, i));
        }
        let outer_cell = self.dual.ladders[0].len() - 1;
        let faces = members
            .iter()
            .zip(&face_gaps)
            .map(|(cells, fg)| self.build_face(cells.clone(), fg, cells.contains(&outer_cell)))
            .collect();
        Topology { cells: self.cells, faces, face_of_cell }
    }

    fn build_face(&self, cells: Vec<CellId>, gaps: &[(usize, usize)], outer: bool) -> Face {
        let disk = cells.iter().copied().find(|&c| self.cells[c].links.is_none());
        let hub = if let Some(d) = disk {
            Hub::Disk(d)
        } else if gaps.is_empty() {
            Hub::Cell(cells[0])
        } else {
            let (ring, index) = self.central_gap(&cells, gaps);
            Hub::Gap { ring, index, above: self.above[&(ring, index)], below: self.below[&(ring, index)] }
        };
        let root = match hub {
            Hub::Disk(c) | Hub::Cell(c) => c,
            Hub::Gap { above, .. } => above.0,
        };
        let mut boundary = Vec::new();
        let mut visited = vec![false; self.cells.len()];
        self.dfs(root, None, &mut visited, &mut boundary);
        let monotone = is_monotone(self.dual, &boundary);
        Face { cells, boundary, hub, outer, monotone }
    }

    /// The glued gap whose removal splits the face's cell tree most evenly.
    fn central_gap(&self, cells: &[CellId], gaps: &[(usize, usize)]) -> (usize, usize) {
        if gaps.len() == 1 {
            return gaps[0];
        }
        let mut adj: HashMap<CellId, Vec<(CellId, GapKey)>> = HashMap::new();
        for &g in gaps {
            let (a, b) = (self.above[&g].0, self.below[&g].0);
            adj.entry(a).or_default().push((b, g));
            adj.entry(b).or_default().push((a, g));
        }
        // Iterative post-order from cells[0] to get subtree sizes per edge.
        let total = cells.len();
        let mut order = Vec::new();
        let mut stack = vec![(cells[0], usize::MAX, None)];
        let mut seen = HashMap::new();
        let mut via: HashMap<CellId, (usize, usize)> = HashMap::new();
        while let Some((c, p, g)) = stack.pop() {
            if seen.insert(c, p).is_some() {
                continue;
            }
            if let Some(g) = g {
                via.insert(c, g);
            }
            order.push(c);
            for &(nb, ng) in adj.get(&c).map(Vec::as_slice).unwrap_or(&[]) {
                if !seen.contains_key(&nb) {
                    stack.push((nb, c, Some(ng)));
                }
            }
        }
        let mut size: HashMap<CellId, usize> = HashMap::new();
        let mut best: Option<(usize, (usize, usize))> = None;
        for &c in order.iter().rev() {
            let s = 1 + adj
                .get(&c)
                .map(|v| v.iter().filter(|(nb, _)| seen.get(nb) == Some(&c)).map(|(nb, _)| size[nb]).sum())
                .unwrap_or(0);
            size.insert(c, s);
            if let Some(&g) = via.get(&c) {
                let cost = s.max(total - s);
                if best.is_none_or(|(bc, bg)| (cost, g) < (bc, bg)) {
                    best = Some((cost, g));
                }
            }
        }
        best.map(|(_, g)| g).unwrap_or(gaps[0])
    }

    fn dfs(&self, cell: CellId, entry: Option<(usize, usize)>, visited: &mut [bool], boundary: &mut Vec<LinkSide>) {
        visited[cell] = true;
        let mut items = self.walk(cell);
        if let Some(e) = entry {
            let at = items
                .iter()
                .position(|it| matches!(it, Item::Gap { gap, .. } if (gap.ring, gap.index) == e))
                .expect("entry gap on cell boundary");
            items.rotate_left(at + 1);
            items.pop();
        }
        for item in items {
            match item {
                Item::Side { link, side, lift, next_node } => {
                    boundary.push(LinkSide { link, cell, side, lift, next_node, route: Vec::new() })
                }
                Item::Gap { gap, outer_side } => {
                    let key = (gap.ring, gap.index);
                    if !self.glued(gap.ring, gap.index) {
                        continue;
                    }
                    let (next, next_lift) = self.other_cell(cell, gap.ring, gap.index);
                    if visited[next] {
                        continue;
                    }
                    let start = boundary.len();
                    self.dfs(next, Some(key), visited, boundary);
                    let routed: Vec<usize> = (start..boundary.len())
                        .filter(|&i| !self.dual.links[boundary[i].link].colors.is_empty())
                        .collect();
                    let k = routed.len() as f64;
                    for (j, &i) in routed.iter().enumerate() {
                        let f = (j as f64 + 1.0) / (k + 1.0);
                        let lambda = if outer_side { 1.0 - f } else { f };
                        boundary[i].route.push(GapCrossing {
                            ring: gap.ring,
                            index: gap.index,
                            lambda,
                            from: next,
                            from_lift: next_lift,
                            to: cell,
                            to_lift: gap.lift,
                        });
                    }
                }
            }
        }
    }
}

fn is_monotone(dual: &RankedDual, boundary: &[LinkSide]) -> bool {
    if boundary.len() != 4 {
        return false;
    }
    let mut links: Vec<LinkId> = boundary.iter().map(|s| s.link).collect();
    let colors: Vec<Option<usize>> = links.iter().map(|&l| dual.links[l].color()).collect();
    links.sort_unstable();
    links.dedup();
    links.len() == 4
        && colors.iter().all(Option::is_some)
        && colors[0] == colors[2]
        && colors[1] == colors[3]
        && colors[0] != colors[1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::venn_dual;

    #[test]
    fn two_venn_has_two_diamonds_one_outer() {
        let d = venn_dual(2).unwrap();
        let t = Topology::new(&d);
        assert_eq!(t.faces.len(), 2);
        assert!(t.faces.iter().all(|f| f.monotone));
        assert_eq!(t.faces.iter().filter(|f| f.outer).count(), 1);
        for f in &t.faces {
            assert!(matches!(f.hub, Hub::Gap { ring: 1, .. }));
        }
    }

    #[test]
    fn every_glued_gap_joins_two_cells_of_one_face() {
        let d = venn_dual(4).unwrap();
        let t = Topology::new(&d);
        let sides: usize = t.faces.iter().map(|f| f.boundary.len()).sum();
        assert_eq!(sides, 2 * d.links().len(), "each link has two sides");
    }

    #[test]
    fn routes_end_in_hub_cell() {
        let d = venn_dual(3).unwrap();
        let t = Topology::new(&d);
        for f in &t.faces {
            for s in &f.boundary {
                let last = s.route.last().map(|c| c.to).unwrap_or(s.cell);
                match f.hub {
                    Hub::Gap { above, .. } => assert_eq!(last, above.0),
                    Hub::Disk(c) | Hub::Cell(c) => assert_eq!(last, c),
                }
            }
        }
    }
}
