//! The rank-based Euler dual.
//!
//! Nodes sit on concentric rings by rank: ring 0 holds ∅ (drawn at infinity),
//! ring `k` holds the zones of rank `k`, and the innermost ring is either a
//! single node at the center or a ring around an empty central disk. Links
//! only join consecutive rings. The links between ring `k` and ring `k + 1`
//! form a cyclic *ladder*: a cyclic sequence of links whose endpoints advance
//! monotonically around both rings, which is exactly a crossing-free drawing
//! of that annulus.

mod builder;
mod crossings;
mod topology;
mod venn;

pub use builder::{build_dual, build_dual_with, co_sequences, group_nodes, BuildOptions, Group};
pub use crossings::{linear_crossings, remove_crossings};
pub use topology::{Cell, CellId, Face, GapCrossing, GapRef, Hub, LinkSide, Side, Topology};
pub(crate) use venn::dual_from_rings;
pub use venn::{triangulated_strip, venn_dual};

use serde::Serialize;

use crate::model::{AbstractDescription, Zone};

pub type NodeId = usize;
pub type LinkId = usize;

/// A node of the dual: one zone placed on the ring of its rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNode {
    pub zone: Zone,
    pub rank: usize,
    /// Index of the set-extension group the node was inserted with.
    pub group_id: usize,
    /// Position within its ring (cyclic, counterclockwise).
    pub order_index: usize,
    /// Routing node standing in for a zone at a lower rank; its region merges
    /// with the region of the real node carrying the same zone.
    pub is_virtual: bool,
}

/// A link between consecutive rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualLink {
    pub lower: NodeId,
    pub upper: NodeId,
    /// Sets whose curves cross this link: `upper.zone \ lower.zone`.
    /// Exactly one set for ordinary links; several for concurrent links;
    /// none for the links inside a virtual chain.
    pub colors: Zone,
}

impl DualLink {
    /// The single color of an ordinary link.
    pub fn color(&self) -> Option<usize> {
        (self.colors.rank() == 1).then(|| self.colors.0.trailing_zeros() as usize)
    }
}

/// The constructed dual with its embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedDual {
    pub(crate) set_count: usize,
    pub(crate) nodes: Vec<DualNode>,
    pub(crate) links: Vec<DualLink>,
    /// `rings[k]`: node ids of ring `k` in counterclockwise order.
    pub(crate) rings: Vec<Vec<NodeId>>,
    /// `ladders[k]`: link ids between ring `k` and `k + 1` in cyclic order.
    pub(crate) ladders: Vec<Vec<LinkId>>,
}

impl RankedDual {
    /// Assembles a dual from rings and ladders, recomputing order indices.
    ///
    /// Panics if a ladder is not a valid cyclic embedding; use
    /// [`RankedDual::validate`] for a fallible check.
    pub(crate) fn from_parts(
        set_count: usize,
        mut nodes: Vec<DualNode>,
        links: Vec<DualLink>,
        rings: Vec<Vec<NodeId>>,
        ladders: Vec<Vec<LinkId>>,
    ) -> Self {
        for ring in &rings {
            for (i, &n) in ring.iter().enumerate() {
                nodes[n].order_index = i;
            }
        }
        let dual = RankedDual { set_count, nodes, links, rings, ladders };
        debug_assert_eq!(dual.validate(), Ok(()));
        dual
    }

    pub fn set_count(&self) -> usize {
        self.set_count
    }

    pub fn nodes(&self) -> &[DualNode] {
        &self.nodes
    }

    pub fn links(&self) -> &[DualLink] {
        &self.links
    }

    pub fn rings(&self) -> &[Vec<NodeId>] {
        &self.rings
    }

    pub fn ladders(&self) -> &[Vec<LinkId>] {
        &self.ladders
    }

    /// Index of the innermost ring.
    pub fn top_rank(&self) -> usize {
        self.rings.len() - 1
    }

    /// True if the innermost ring is a single node drawn at the center.
    pub fn has_center_node(&self) -> bool {
        self.rings.len() > 1 && self.rings[self.top_rank()].len() == 1
    }

    /// Zones of the real (non-virtual) nodes.
    pub fn zones(&self) -> Vec<Zone> {
        self.nodes.iter().filter(|n| !n.is_virtual).map(|n| n.zone).collect()
    }

    pub fn node_of_zone(&self, zone: Zone) -> Option<NodeId> {
        self.nodes.iter().position(|n| !n.is_virtual && n.zone == zone)
    }

    /// Number of virtual routing nodes.
    pub fn virtual_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_virtual).count()
    }

    /// Links carrying more than one color (rendered as concurrent curves).
    pub fn concurrent_links(&self) -> impl Iterator<Item = &DualLink> {
        self.links.iter().filter(|l| l.colors.rank() > 1)
    }

    /// Number of extra connected pieces, summed over sets, of the regions
    /// inside and outside each set. Regions of neighbouring nodes only meet
    /// across links, so zero means every curve can be one simple loop.
    pub fn region_violations(&self) -> usize {
        let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); self.nodes.len()];
        for l in &self.links {
            adj[l.lower].push(l.upper);
            adj[l.upper].push(l.lower);
        }
        let mut total = 0;
        for s in 0..self.set_count {
            for inside in [true, false] {
                let member = |n: NodeId| self.nodes[n].zone.contains_set(s) == inside;
                let mut seen = vec![false; self.nodes.len()];
                let mut pieces = 0usize;
                for start in 0..self.nodes.len() {
                    if seen[start] || !member(start) {
                        continue;
                    }
                    pieces += 1;
                    seen[start] = true;
                    let mut stack = vec![start];
                    while let Some(n) = stack.pop() {
                        for &m in &adj[n] {
                            if !seen[m] && member(m) {
                                seen[m] = true;
                                stack.push(m);
                            }
                        }
                    }
                }
                total += pieces.saturating_sub(1);
            }
        }
        total
    }

    /// The same dual with every zone and link color mapped through `f`.
    pub(crate) fn map_zones(mut self, f: impl Fn(Zone) -> Zone) -> Self {
        for n in &mut self.nodes {
            n.zone = f(n.zone);
        }
        for l in &mut self.links {
            l.colors = f(l.colors);
        }
        self
    }

    /// Checks structural invariants: link validity, ring membership and that
    /// every ladder is a single-winding cyclic embedding.
    pub fn validate(&self) -> Result<(), String> {
        if self.rings.is_empty() || self.rings[0].len() != 1 || !self.nodes[self.rings[0][0]].zone.is_empty() {
            return Err("ring 0 must hold exactly the empty zone".into());
        }
        if self.ladders.len() + 1 != self.rings.len() {
            return Err("ladder count must be ring count - 1".into());
        }
        for (k, ring) in self.rings.iter().enumerate() {
            if ring.is_empty() {
                return Err(format!("ring {k} is empty"));
            }
            for &n in ring {
                if self.nodes[n].rank != k {
                    return Err(format!("node {n} on ring {k} has rank {}", self.nodes[n].rank));
                }
            }
        }
        for (i, l) in self.links.iter().enumerate() {
            let (lo, up) = (&self.nodes[l.lower], &self.nodes[l.upper]);
            if up.rank != lo.rank + 1 || !lo.zone.is_subset_of(up.zone) || Zone(up.zone.0 & !lo.zone.0) != l.colors {
                return Err(format!("link {i} is not a valid rank step"));
            }
        }
        for k in 0..self.ladders.len() {
            let lifts = self.lifts(k).ok_or_else(|| format!("ladder {k} is not planar"))?;
            let mut covered = vec![false; self.rings[k + 1].len()];
            for &(_, ui) in &lifts {
                covered[ui.rem_euclid(self.rings[k + 1].len() as i64) as usize] = true;
            }
            if covered.iter().any(|c| !c) {
                return Err(format!("a node on ring {} has no parent link", k + 1));
            }
        }
        Ok(())
    }

    /// Unwrapped ring positions `(outer, inner)` of ladder `k`'s links,
    /// followed by the wrap-around copy of the first link shifted by one full
    /// turn on both rings. `None` if the ladder is not a single-winding
    /// crossing-free sequence.
    pub(crate) fn lifts(&self, k: usize) -> Option<Vec<(i64, i64)>> {
        ladder_lifts(
            &self.ladders[k],
            |l| self.nodes[self.links[l].lower].order_index,
            |l| self.nodes[self.links[l].upper].order_index,
            self.rings[k].len(),
            self.rings[k + 1].len(),
        )
    }

    /// Counts monotone bounded faces; returns `(monotone, bounded)`.
    pub fn count_monotone_faces(&self) -> (usize, usize) {
        let topo = Topology::new(self);
        let bounded: Vec<&Face> = topo.faces.iter().filter(|f| !f.outer).collect();
        (bounded.iter().filter(|f| f.monotone).count(), bounded.len())
    }

    /// True if every face, including the outer one, is monotone.
    pub fn is_fully_monotone(&self) -> bool {
        Topology::new(self).faces.iter().all(|f| f.monotone)
    }

    /// Debug/export document: rings with zone strings, links and faces.
    pub fn export(&self, d: &AbstractDescription) -> DualExport {
        let name = |n: NodeId| {
            let node = &self.nodes[n];
            let t = d.zone_text(node.zone);
            if node.is_virtual {
                format!("{t}'")
            } else {
                t
            }
        };
        let topo = Topology::new(self);
        DualExport {
            fully_monotone: topo.faces.iter().all(|f| f.monotone),
            ranks: self.rings.iter().map(|r| r.iter().map(|&n| name(n)).collect()).collect(),
            links: self
                .ladders
                .iter()
                .flatten()
                .map(|&l| {
                    let link = &self.links[l];
                    let colors = link.colors.sets().map(|s| d.sets()[s].name.clone()).collect();
                    (name(link.lower), name(link.upper), colors)
                })
                .collect(),
            faces: topo
                .faces
                .iter()
                .map(|f| FaceExport {
                    boundary: f.boundary.iter().map(|s| s.next_node).map(name).collect(),
                    monotone: f.monotone,
                    outer: f.outer,
                })
                .collect(),
        }
    }
}

/// Serializable view of a dual.
#[derive(Clone, Debug, Serialize)]
pub struct DualExport {
    /// Every face, including the outer one, is monotone.
    pub fully_monotone: bool,
    pub ranks: Vec<Vec<String>>,
    pub links: Vec<(String, String, Vec<String>)>,
    pub faces: Vec<FaceExport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceExport {
    /// Corner nodes in boundary order.
    pub boundary: Vec<String>,
    pub monotone: bool,
    pub outer: bool,
}

/// Shared lift computation for committed and tentative ladders.
///
/// Each step advances by the smallest nonnegative amount on each ring; the
/// steps of a valid ladder sum to exactly one turn on each ring, except for a
/// fan (all links sharing one endpoint), whose full turn is assigned to the
/// wrap-around step.
pub(crate) fn ladder_lifts(
    ladder: &[LinkId],
    outer_pos: impl Fn(LinkId) -> usize,
    inner_pos: impl Fn(LinkId) -> usize,
    n_outer: usize,
    n_inner: usize,
) -> Option<Vec<(i64, i64)>> {
    let m = ladder.len();
    if m == 0 {
        return None;
    }
    let (na, nb) = (n_outer as i64, n_inner as i64);
    let pos: Vec<(i64, i64)> = ladder.iter().map(|&l| (outer_pos(l) as i64, inner_pos(l) as i64)).collect();
    let mut steps: Vec<(i64, i64)> = (0..m)
        .map(|j| {
            let (a, b) = (pos[j], pos[(j + 1) % m]);
            ((b.0 - a.0).rem_euclid(na), (b.1 - a.1).rem_euclid(nb))
        })
        .collect();
    let total_o: i64 = steps.iter().map(|s| s.0).sum();
    let total_i: i64 = steps.iter().map(|s| s.1).sum();
    if total_o == 0 {
        steps[m - 1].0 = na;
    } else if total_o != na {
        return None;
    }
    if total_i == 0 {
        steps[m - 1].1 = nb;
    } else if total_i != nb {
        return None;
    }
    if m > 1 && steps.contains(&(0, 0)) {
        return None;
    }
    let mut lifts = Vec::with_capacity(m + 1);
    let mut cur = pos[0];
    lifts.push(cur);
    for s in &steps {
        cur = (cur.0 + s.0, cur.1 + s.1);
        lifts.push(cur);
    }
    Some(lifts)
}
