//! Greedy construction of a planar, monotone-maximizing rank-based dual.
//!
//! Zones are grouped by the set that extends them, groups are inserted in
//! order, and every node is placed on its ring next to a run of consecutive
//! parents (a consecutive-ones sequence) chosen to maximize monotone faces.
//! Only crossing-free placements are ever generated, so the result is planar.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{ladder_lifts, DualLink, DualNode, LinkId, NodeId, RankedDual};
use crate::error::BuildError;
use crate::model::{is_connected, AbstractDescription, Zone};

/// Zones created by extending earlier zones with one set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub extending_set: usize,
    /// Zones in insertion order (rank ascending, then mask).
    pub zones: Vec<Zone>,
}

/// Options for [`build_dual_with`].
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Attach zones without a parent zone through virtual routing nodes and a
    /// multi-colored (concurrent) link instead of failing with
    /// [`BuildError::UnlinkedZone`].
    pub concurrent_links: bool,
    /// After insertion, add every remaining super-dual link that fits into the
    /// embedding without crossings.
    pub augment_links: bool,
    /// If the first pass leaves a set region disconnected or a face
    /// non-monotone, the builder retries with other set orders. Retries stop
    /// once this many nodes have been inserted in total (roughly).
    pub retry_node_budget: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { concurrent_links: true, augment_links: true, retry_node_budget: 20_000 }
    }
}

/// Groups zones by their extending set, ordered by (rank of the first node,
/// group size, set index).
pub fn group_nodes(d: &AbstractDescription) -> Vec<Group> {
    let mut groups: Vec<Group> = (0..d.set_count())
        .map(|s| {
            let mut zones: Vec<Zone> = d.zones().iter().copied().filter(|z| z.max_set() == Some(s)).collect();
            zones.sort_by_key(|z| (z.rank(), z.0));
            Group { extending_set: s, zones }
        })
        .filter(|g| !g.zones.is_empty())
        .collect();
    groups.sort_by_key(|g| (g.zones[0].rank(), g.zones.len(), g.extending_set));
    groups
}

/// Maximal cyclic runs of `node`'s parents in the ring above, as positions.
///
/// A node whose parents form several runs must pick exactly one of them to
/// keep the embedding planar.
pub fn co_sequences(node: Zone, rank_above: &[Zone]) -> Result<Vec<Vec<usize>>, BuildError> {
    let runs = cyclic_runs(rank_above.len(), |i| rank_above[i].link_color(node).is_some());
    if runs.is_empty() {
        return Err(BuildError::NoParentPlaced(format!("{:#b}", node.0)));
    }
    Ok(runs)
}

fn cyclic_runs(n: usize, is_member: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let member: Vec<bool> = (0..n).map(is_member).collect();
    if member.iter().all(|&m| m) {
        return vec![(0..n).collect()];
    }
    let start = member.iter().position(|&m| !m).unwrap_or(0);
    let mut runs = Vec::new();
    let mut cur = Vec::new();
    for step in 1..=n {
        let i = (start + step) % n;
        if member[i] {
            cur.push(i);
        } else if !cur.is_empty() {
            runs.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    runs.sort();
    runs
}

/// One evaluated placement of a node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacementCandidate {
    /// Parent run (node ids, counterclockwise).
    pub co: Vec<NodeId>,
    /// Insertion index in the node's ring.
    pub position: usize,
    /// Ladder index after which the new links go (`None` for an empty ring).
    split: Option<usize>,
    /// Existing links that the new links would cross and that are dropped.
    dropped: Vec<LinkId>,
    /// Parents left without any child link by the dropped links.
    pub orphaned: usize,
    pub co_length: usize,
    pub delta_monotone: i64,
    pub delta_crossings: usize,
    pub dist_twin: usize,
}

impl PlacementCandidate {
    /// Sort key: no orphaned parents, more monotone faces, longer run, fewer
    /// crossings, fewer dropped links, twin distance, leftmost position.
    fn key(&self) -> (usize, i64, usize, usize, usize, usize, usize, Option<usize>, usize) {
        (
            self.orphaned,
            -self.delta_monotone,
            usize::MAX - self.co_length,
            self.delta_crossings,
            self.dropped.len(),
            self.dist_twin,
            self.position,
            self.split,
            self.co.first().copied().unwrap_or(0),
        )
    }
}

struct State {
    set_count: usize,
    nodes: Vec<DualNode>,
    links: Vec<DualLink>,
    rings: Vec<Vec<NodeId>>,
    ladders: Vec<Vec<LinkId>>,
    pos: Vec<usize>,
}

/// Read access to the state with one ring and one ladder replaced.
struct View<'a> {
    st: &'a State,
    ring: Option<(usize, &'a [NodeId], &'a HashMap<NodeId, usize>)>,
    ladder: Option<(usize, &'a [LinkId])>,
    extra: &'a [DualLink],
}

impl View<'_> {
    fn ring(&self, k: usize) -> &[NodeId] {
        match self.ring {
            Some((r, ring, _)) if r == k => ring,
            _ => &self.st.rings[k],
        }
    }

    fn pos(&self, n: NodeId) -> usize {
        match self.ring {
            Some((r, _, pos)) if self.st.nodes.get(n).is_none_or(|node| node.rank == r) => pos[&n],
            _ => self.st.pos[n],
        }
    }

    fn link(&self, id: LinkId) -> DualLink {
        if id < self.st.links.len() {
            self.st.links[id]
        } else {
            self.extra[id - self.st.links.len()]
        }
    }

    fn ladder(&self, k: usize) -> &[LinkId] {
        match self.ladder {
            Some((a, l)) if a == k => l,
            _ => &self.st.ladders[k],
        }
    }

    fn lifts(&self, k: usize) -> Option<Vec<(i64, i64)>> {
        let ladder = self.ladder(k);
        if ladder.is_empty() || self.ring(k + 1).is_empty() {
            return None;
        }
        ladder_lifts(
            ladder,
            |l| self.pos(self.link(l).lower),
            |l| self.pos(self.link(l).upper),
            self.ring(k).len(),
            self.ring(k + 1).len(),
        )
    }

    fn top(&self) -> usize {
        let mut t = self.st.rings.len() - 1;
        while t > 0 && self.ring(t).is_empty() {
            t -= 1;
        }
        t
    }

    /// Monotone gaps (single-gap diamond faces) on ring `k`.
    fn monotone_on_ring(&self, k: usize) -> i64 {
        let ring = self.ring(k);
        if k == 0 || ring.is_empty() || k >= self.top() {
            return 0;
        }
        let (Some(up), Some(down)) = (self.lifts(k - 1), self.lifts(k)) else {
            return 0;
        };
        let center_below = k + 1 == self.top() && self.ring(k + 1).len() == 1;
        let n = ring.len() as i64;
        let single = |l: LinkId| self.link(l).colors.rank() == 1;
        let up_ladder = self.ladder(k - 1);
        let down_ladder = self.ladder(k);
        let mut count = 0;
        for g in 0..n {
            // Cell above: the gap is an inner gap of annulus k - 1.
            let base = up[0].1;
            let u = base + (g - base).rem_euclid(n);
            let j = up.partition_point(|l| l.1 <= u) - 1;
            let m_up = up_ladder.len();
            let up_ok = up[j].0 == up[j + 1].0
                && up[j + 1].1 - up[j].1 == 1
                && single(up_ladder[j])
                && single(up_ladder[(j + 1) % m_up]);
            if !up_ok {
                continue;
            }
            let base = down[0].0;
            let u = base + (g - base).rem_euclid(n);
            let j = down.partition_point(|l| l.0 <= u) - 1;
            let m_down = down_ladder.len();
            let down_ok = down[j + 1].0 - down[j].0 == 1
                && (center_below || down[j].1 == down[j + 1].1)
                && single(down_ladder[j])
                && single(down_ladder[(j + 1) % m_down]);
            if down_ok {
                count += 1;
            }
        }
        count
    }
}

enum Pending {
    Real { zone: Zone, group: usize },
    Chain { zone: Zone, group: usize, base: Zone },
}

/// Builds the dual with default options.
pub fn build_dual(d: &AbstractDescription) -> Result<RankedDual, BuildError> {
    build_dual_with(d, BuildOptions::default())
}

/// Builds a connected, planar, well-matched dual, greedily maximizing
/// monotone faces at every insertion.
pub fn build_dual_with(d: &AbstractDescription, options: BuildOptions) -> Result<RankedDual, BuildError> {
    let first = build_in_order(d, options)?;
    let score = |x: &RankedDual| {
        let (mono, bounded) = x.count_monotone_faces();
        (x.region_violations(), bounded - mono, !x.is_fully_monotone())
    };
    let perfect = (0, 0, false);
    let mut best_score = score(&first);
    let mut best = first;
    let n = d.set_count();
    let budget = options.retry_node_budget / d.zones().len().max(1);
    for order in set_orders(n).into_iter().skip(1).take(budget) {
        if best_score == perfect {
            break;
        }
        let names: Vec<String> = order.iter().map(|&s| d.sets()[s].name.clone()).collect();
        let forward =
            |z: Zone| Zone::from_indices(order.iter().enumerate().filter(|(_, &s)| z.contains_set(s)).map(|(i, _)| i));
        let back = |z: Zone| Zone::from_indices(z.sets().map(|i| order[i]));
        let relabeled = AbstractDescription::new(names, d.zones().iter().map(|&z| forward(z)).collect())
            .expect("relabeling keeps a description valid");
        let dual = build_in_order(&relabeled, options)?.map_zones(back);
        let s = score(&dual);
        if s < best_score {
            best_score = s;
            best = dual;
        }
    }
    Ok(best)
}

/// Set orders tried by the builder: the given order first, then every
/// permutation for up to five sets, or the rotations and reversed
/// rotations for more.
fn set_orders(n: usize) -> Vec<Vec<usize>> {
    if n <= 5 {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(cur.clone());
            // Next permutation in lexicographic order.
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("a larger element exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    } else {
        let mut out = Vec::new();
        for r in 0..n {
            out.push((0..n).map(|i| (i + r) % n).collect());
        }
        for r in 0..n {
            out.push((0..n).rev().map(|i| (i + r) % n).collect());
        }
        out
    }
}

/// One greedy pass with the sets in their given order.
fn build_in_order(d: &AbstractDescription, options: BuildOptions) -> Result<RankedDual, BuildError> {
    let zones: BTreeSet<Zone> = d.zones().iter().copied().collect();
    if !is_connected(&zones) {
        return Err(BuildError::DisconnectedDescription("some zones share no chain of single-set steps".into()));
    }
    let has_parent = |z: Zone| z.sets().any(|s| zones.contains(&z.without(s)));
    let mut pending = Vec::new();
    for (gi, g) in group_nodes(d).iter().enumerate() {
        for &zone in &g.zones {
            if has_parent(zone) {
                pending.push(Pending::Real { zone, group: gi });
            } else if options.concurrent_links {
                let base = *zones
                    .iter()
                    .filter(|y| y.is_subset_of(zone) && **y != zone)
                    .max_by_key(|y| (y.rank(), std::cmp::Reverse(y.0)))
                    .expect("empty zone is a subset");
                pending.push(Pending::Chain { zone, group: gi, base });
            } else {
                return Err(BuildError::UnlinkedZone(d.zone_text(zone)));
            }
        }
    }

    let mut st = State {
        set_count: d.set_count(),
        nodes: vec![DualNode { zone: Zone::EMPTY, rank: 0, group_id: 0, order_index: 0, is_virtual: false }],
        links: Vec::new(),
        rings: vec![vec![0]],
        ladders: Vec::new(),
        pos: vec![0],
    };
    let mut placed: HashMap<Zone, NodeId> = HashMap::from([(Zone::EMPTY, 0)]);
    let groups = group_nodes(d);

    while !pending.is_empty() {
        let ready = pending.iter().position(|p| match *p {
            Pending::Real { zone, .. } => zone.sets().any(|s| placed.contains_key(&zone.without(s))),
            Pending::Chain { base, .. } => placed.contains_key(&base),
        });
        let Some(idx) = ready else {
            let zone = match pending[0] {
                Pending::Real { zone, .. } | Pending::Chain { zone, .. } => zone,
            };
            return Err(BuildError::NoParentPlaced(d.zone_text(zone)));
        };
        match pending.remove(idx) {
            Pending::Real { zone, group } => {
                let parents: Vec<NodeId> = zone.sets().filter_map(|s| placed.get(&zone.without(s)).copied()).collect();
                let twin = placed.get(&zone.without(groups[group].extending_set)).copied();
                let id = insert(&mut st, zone, zone.rank(), group, false, &parents, twin);
                placed.insert(zone, id);
            }
            Pending::Chain { zone, group, base } => {
                let mut parent = placed[&base];
                for rank in base.rank() + 1..zone.rank() {
                    parent = insert(&mut st, zone, rank, group, true, &[parent], None);
                }
                let id = insert(&mut st, zone, zone.rank(), group, false, &[parent], None);
                placed.insert(zone, id);
            }
        }
    }
    if options.augment_links {
        augment(&mut st);
    }
    // Renumber links, discarding the ones dropped during insertion.
    let mut links = Vec::new();
    let ladders = st
        .ladders
        .iter()
        .map(|ladder| {
            ladder
                .iter()
                .map(|&l| {
                    links.push(st.links[l]);
                    links.len() - 1
                })
                .collect()
        })
        .collect();
    let dual = RankedDual::from_parts(st.set_count, st.nodes, links, st.rings, ladders);
    Ok(choose_outer_face(dual))
}

/// Every face around ∅ can serve as the unbounded face; pick the rotation of
/// the ∅ fan that leaves the most bounded faces monotone (earliest on ties).
fn choose_outer_face(mut dual: RankedDual) -> RankedDual {
    let m = dual.ladders.first().map_or(0, Vec::len);
    let mut best = (dual.count_monotone_faces().0, 0);
    for rot in 1..m {
        let mut d = dual.clone();
        d.ladders[0].rotate_left(rot);
        let mono = d.count_monotone_faces().0;
        if mono > best.0 {
            best = (mono, rot);
        }
    }
    if m > 0 {
        dual.ladders[0].rotate_left(best.1);
    }
    dual
}

/// Places one node and links it to its chosen parent run. Returns its id.
fn insert(
    st: &mut State,
    zone: Zone,
    rank: usize,
    group: usize,
    is_virtual: bool,
    parents: &[NodeId],
    twin: Option<NodeId>,
) -> NodeId {
    while st.rings.len() <= rank {
        st.rings.push(Vec::new());
        st.ladders.push(Vec::new());
    }
    let id = st.nodes.len();
    st.nodes.push(DualNode { zone, rank, group_id: group, order_index: 0, is_virtual });
    st.pos.push(0);

    let candidates = candidates(st, id, rank, parents, twin);
    match candidates.into_iter().min_by_key(PlacementCandidate::key) {
        Some(best) => commit(st, id, rank, &best),
        None => split_fan(st, id, rank, parents[0]),
    }
    id
}
/// A parent run on the ring above: position, split, run nodes, dropped links.
type RawRun = (usize, Option<usize>, Vec<NodeId>, Vec<LinkId>);

fn candidates(st: &State, id: NodeId, r: usize, parents: &[NodeId], twin: Option<NodeId>) -> Vec<PlacementCandidate> {
    let above = &st.rings[r - 1];
    let na = above.len() as i64;
    let parent_set: HashSet<NodeId> = parents.iter().copied().collect();
    let is_parent = |u: i64| parent_set.contains(&above[u.rem_euclid(na) as usize]);
    let ring = &st.rings[r];
    let mut raw: Vec<RawRun> = Vec::new();
    if ring.is_empty() {
        for run in cyclic_runs(above.len(), |i| parent_set.contains(&above[i])) {
            raw.push((0, None, run.into_iter().map(|i| above[i]).collect(), Vec::new()));
        }
    } else {
        let view = View { st, ring: None, ladder: None, extra: &[] };
        let lifts = view.lifts(r - 1).expect("committed ladder is planar");
        let ladder = &st.ladders[r - 1];
        let m = ladder.len() as i64;
        let upper = |j: i64| st.links[ladder[j.rem_euclid(m) as usize]].upper;
        // Unwrapped outer position of cyclic ladder index `j` (any integer).
        let outer = |j: i64| lifts[j.rem_euclid(m) as usize].0 + na * j.div_euclid(m);
        for i in 0..m {
            if ring.len() >= 2 && upper(i) == upper(i + 1) {
                continue;
            }
            let position = st.pos[upper(i)] + 1;
            // With two or more inner nodes the window may widen into the fans
            // of the neighbouring inner nodes, dropping the fan links the new
            // links would cross (each inner node keeps at least one link).
            let (mut first, mut last) = (i, i + 1);
            if ring.len() >= 2 {
                while first > i + 1 - m && upper(first - 1) == upper(i) {
                    first -= 1;
                }
                while last < i + m && upper(last + 1) == upper(i + 1) {
                    last += 1;
                }
            }
            let mut runs: Vec<Vec<i64>> = Vec::new();
            let mut run: Vec<i64> = Vec::new();
            for u in outer(first)..=outer(last) {
                if is_parent(u) {
                    run.push(u);
                } else if !run.is_empty() {
                    runs.push(std::mem::take(&mut run));
                }
            }
            if !run.is_empty() {
                runs.push(run);
            }
            for mut run in runs {
                run.truncate(na as usize);
                let (s, e) = (run[0], run[run.len() - 1]);
                let mut dropped = Vec::new();
                for j in first + 1..=i {
                    if outer(j) > s {
                        dropped.push(ladder[j.rem_euclid(m) as usize]);
                    }
                }
                for j in i + 1..last {
                    if outer(j) < e {
                        dropped.push(ladder[j.rem_euclid(m) as usize]);
                    }
                }
                let within = s >= outer(i) && e <= outer(i + 1);
                if within != dropped.is_empty() {
                    continue;
                }
                let nodes = run.iter().map(|&u| above[u.rem_euclid(na) as usize]).collect();
                raw.push((position, Some(i as usize), nodes, dropped));
            }
        }
    }

    let before = {
        let view = View { st, ring: None, ladder: None, extra: &[] };
        view.monotone_on_ring(r - 1) + view.monotone_on_ring(r)
    };
    raw.into_iter()
        .map(|(position, split, co, dropped)| {
            let (new_ring, new_ladder, extra) = tentative(st, id, r, position, split, &co, &dropped);
            let pos: HashMap<NodeId, usize> = new_ring.iter().enumerate().map(|(i, &n)| (n, i)).collect();
            let view = View { st, ring: Some((r, &new_ring, &pos)), ladder: Some((r - 1, &new_ladder)), extra: &extra };
            debug_assert!(view.lifts(r - 1).is_some(), "candidate placement must be planar");
            let after = view.monotone_on_ring(r - 1) + view.monotone_on_ring(r);
            let dist_twin = twin.map_or(0, |t| {
                let tp = st.pos[t] as i64;
                co.iter()
                    .map(|&p| {
                        let d = (st.pos[p] as i64 - tp).rem_euclid(na);
                        d.min(na - d) as usize
                    })
                    .min()
                    .unwrap_or(0)
            });
            let orphaned = {
                let lost: HashSet<NodeId> = dropped.iter().map(|&l| st.links[l].lower).collect();
                lost.into_iter()
                    .filter(|p| !co.contains(p))
                    .filter(|&p| st.ladders[r - 1].iter().all(|l| dropped.contains(l) || st.links[*l].lower != p))
                    .count()
            };
            PlacementCandidate {
                orphaned,
                co_length: co.len(),
                co,
                position,
                split,
                dropped,
                delta_monotone: after - before,
                delta_crossings: 0,
                dist_twin,
            }
        })
        .collect()
}

/// Ring and ladder after a placement. The ladder is rotated to start right
/// after the split so the new links can simply be appended.
fn tentative(
    st: &State,
    id: NodeId,
    r: usize,
    position: usize,
    split: Option<usize>,
    co: &[NodeId],
    dropped: &[LinkId],
) -> (Vec<NodeId>, Vec<LinkId>, Vec<DualLink>) {
    let mut ring = st.rings[r].clone();
    ring.insert(position, id);
    let zone = st.nodes[id].zone;
    let extra: Vec<DualLink> =
        co.iter().map(|&p| DualLink { lower: p, upper: id, colors: Zone(zone.0 & !st.nodes[p].zone.0) }).collect();
    let new_ids = (0..co.len()).map(|i| st.links.len() + i);
    let old = &st.ladders[r - 1];
    let ladder = match split {
        None => new_ids.collect(),
        Some(i) => {
            old[i + 1..].iter().chain(&old[..=i]).copied().filter(|l| !dropped.contains(l)).chain(new_ids).collect()
        }
    };
    (ring, ladder, extra)
}

fn commit(st: &mut State, id: NodeId, r: usize, c: &PlacementCandidate) {
    let (ring, ladder, extra) = tentative(st, id, r, c.position, c.split, &c.co, &c.dropped);
    st.links.extend(extra);
    st.ladders[r - 1] = ladder;
    for (i, &n) in ring.iter().enumerate() {
        st.pos[n] = i;
    }
    st.rings[r] = ring;
}

/// Placement for a node whose parents all face a single child across the
/// annulus (inside that child's fan): the node goes next to that child,
/// linked to `parent`, and the child's fan links that would cross the new
/// link are dropped. The child keeps at least one link, so the dual stays
/// connected and planar.
fn split_fan(st: &mut State, id: NodeId, r: usize, parent: NodeId) {
    let view = View { st, ring: None, ladder: None, extra: &[] };
    let lifts = view.lifts(r - 1).expect("committed ladder is planar");
    let na = st.rings[r - 1].len() as i64;
    let m = st.ladders[r - 1].len();
    let base = lifts[0].0;
    let u = base + (st.pos[parent] as i64 - base).rem_euclid(na);
    let j = lifts.partition_point(|l| l.0 <= u) - 1;
    let j = j.min(m - 1);
    let old = st.ladders[r - 1].clone();
    let child = st.links[old[j]].upper;
    let mut dropped = HashSet::new();
    for t in 1..m {
        let l = old[(j + t) % m];
        if st.links[l].upper != child {
            break;
        }
        dropped.insert(l);
    }
    let new_link = st.links.len();
    st.links.push(DualLink { lower: parent, upper: id, colors: Zone(st.nodes[id].zone.0 & !st.nodes[parent].zone.0) });
    let mut ladder = Vec::with_capacity(m + 1);
    for t in 0..m {
        let l = old[(j + 1 + t) % m];
        if !dropped.contains(&l) {
            ladder.push(l);
        }
    }
    // `old[j]` is now last; the new link follows it cyclically.
    ladder.push(new_link);
    let position = st.pos[child] + 1;
    st.rings[r].insert(position, id);
    for (i, &n) in st.rings[r].iter().enumerate() {
        st.pos[n] = i;
    }
    st.ladders[r - 1] = ladder;
    let view = View { st, ring: None, ladder: None, extra: &[] };
    debug_assert!(view.lifts(r - 1).is_some(), "fan split must stay planar");
}

/// Adds every missing super-dual link between real nodes that fits into the
/// current embedding without crossings. Extra links only split faces that
/// are not monotone, so the monotone count never decreases.
fn augment(st: &mut State) {
    let zone_node: HashMap<Zone, NodeId> =
        st.nodes.iter().enumerate().filter(|(_, n)| !n.is_virtual).map(|(i, n)| (n.zone, i)).collect();
    for k in 1..st.ladders.len() {
        let mut existing: HashSet<(NodeId, NodeId)> =
            st.ladders[k].iter().map(|&l| (st.links[l].lower, st.links[l].upper)).collect();
        let outer: Vec<NodeId> = st.rings[k].clone();
        for p in outer {
            if st.nodes[p].is_virtual {
                continue;
            }
            let pz = st.nodes[p].zone;
            for s in 0..st.set_count {
                if pz.contains_set(s) {
                    continue;
                }
                let Some(&c) = zone_node.get(&pz.with(s)) else { continue };
                if st.nodes[c].rank != k + 1 || existing.contains(&(p, c)) {
                    continue;
                }
                if try_add_link(st, k, p, c, s) {
                    existing.insert((p, c));
                }
            }
        }
    }
}

fn try_add_link(st: &mut State, k: usize, p: NodeId, c: NodeId, color: usize) -> bool {
    let view = View { st, ring: None, ladder: None, extra: &[] };
    let Some(lifts) = view.lifts(k) else { return false };
    let (na, nb) = (st.rings[k].len() as i64, st.rings[k + 1].len() as i64);
    let (pp, pc) = (st.pos[p] as i64, st.pos[c] as i64);
    let within = |lo: i64, hi: i64, x: i64, n: i64| {
        let first = lo + (x - lo).rem_euclid(n);
        first <= hi
    };
    let new_id = st.links.len();
    let link = DualLink { lower: p, upper: c, colors: Zone(1 << color) };
    for j in 0..st.ladders[k].len() {
        if !within(lifts[j].0, lifts[j + 1].0, pp, na) || !within(lifts[j].1, lifts[j + 1].1, pc, nb) {
            continue;
        }
        let mut ladder = st.ladders[k].clone();
        ladder.insert(j + 1, new_id);
        let extra = [link];
        let view = View { st, ring: None, ladder: Some((k, &ladder)), extra: &extra };
        if view.lifts(k).is_some() {
            st.links.push(link);
            st.ladders[k] = ladder;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{parse_description, ParseOptions};

    fn desc(s: &str) -> AbstractDescription {
        parse_description(s, ParseOptions::default()).unwrap().0
    }

    #[test]
    fn two_venn_groups() {
        let g = group_nodes(&AbstractDescription::full_venn(2).unwrap());
        assert_eq!(g.len(), 2);
        assert_eq!((g[0].extending_set, g[0].zones.clone()), (0, vec![Zone(1)]));
        assert_eq!((g[1].extending_set, g[1].zones.clone()), (1, vec![Zone(2), Zone(3)]));
    }

    #[test]
    fn grouping_ignores_input_order() {
        let a = desc("A,B,C\n0\na\nb\nab\nc\nbc\n");
        let b = desc("A,B,C\nbc\nc\nab\n0\nb\na\n");
        assert_eq!(group_nodes(&a), group_nodes(&b));
    }

    #[test]
    fn co_sequences_detect_runs() {
        // Parents of abc: ab, bc, ac. Ring above: ab, x, bc, y -> two runs.
        let abc = Zone(0b111);
        let ring = [Zone(0b011), Zone(0b1000), Zone(0b110), Zone(0b10000)];
        assert_eq!(co_sequences(abc, &ring).unwrap(), vec![vec![0], vec![2]]);
        // Three contiguous parents -> one run of length 3.
        let ring = [Zone(0b1000), Zone(0b011), Zone(0b110), Zone(0b101)];
        assert_eq!(co_sequences(abc, &ring).unwrap(), vec![vec![1, 2, 3]]);
        // One parent.
        assert_eq!(co_sequences(abc, &[Zone(0b011)]).unwrap(), vec![vec![0]]);
        assert!(co_sequences(abc, &[Zone(0b1000)]).is_err());
    }

    #[test]
    fn single_curve() {
        let d = build_dual(&desc("A\n0\na\n")).unwrap();
        assert_eq!((d.nodes().len(), d.links().len()), (2, 1));
        assert_eq!(d.count_monotone_faces(), (0, 0));
    }

    #[test]
    fn two_venn_has_one_monotone_face() {
        let d = build_dual(&AbstractDescription::full_venn(2).unwrap()).unwrap();
        assert_eq!(d.count_monotone_faces(), (1, 1));
    }

    #[test]
    fn full_venn_builds_match_closed_form() {
        for n in 2..=6 {
            let d = build_dual(&AbstractDescription::full_venn(n).unwrap()).unwrap();
            assert_eq!(d.validate(), Ok(()));
            assert_eq!(d.zones().len(), 1 << n);
            assert!(d.is_fully_monotone(), "n = {n}");
            let v = crate::dual::venn_dual(n).unwrap();
            let sizes = |x: &RankedDual| x.rings().iter().map(Vec::len).collect::<Vec<_>>();
            assert_eq!(sizes(&d), sizes(&v));
            assert_eq!(d.links().len(), v.links().len());
            assert_eq!(d.count_monotone_faces(), v.count_monotone_faces());
        }
    }

    #[test]
    fn missing_pair_zone_is_fully_monotone() {
        let d = build_dual(&desc("A,B,C\n0\na\nb\nc\nab\nbc\nabc\n")).unwrap();
        let (m, t) = d.count_monotone_faces();
        assert_eq!(m, t);
        assert!(t > 0);
    }

    #[test]
    fn disconnected_is_rejected() {
        let err = build_dual(&desc("A,B,C\n0\na\nbc\n")).unwrap_err();
        assert!(matches!(err, BuildError::DisconnectedDescription(_)));
    }

    #[test]
    fn parentless_zone_uses_concurrent_link_or_fails() {
        let d = desc("A,C,O\n0\na\nac\naco\nco\n");
        let dual = build_dual(&d).unwrap();
        assert_eq!(dual.virtual_count(), 1);
        assert_eq!(dual.concurrent_links().count(), 1);
        let strict = BuildOptions { concurrent_links: false, ..BuildOptions::default() };
        assert!(matches!(build_dual_with(&d, strict), Err(BuildError::UnlinkedZone(_))));
    }

    #[test]
    fn candidate_order_prefers_longer_runs_on_ties() {
        let mk = |len, pos| PlacementCandidate {
            co: vec![0; len],
            position: pos,
            split: None,
            dropped: Vec::new(),
            orphaned: 0,
            co_length: len,
            delta_monotone: 1,
            delta_crossings: 0,
            dist_twin: 0,
        };
        let mut v = [mk(1, 0), mk(2, 5)];
        v.sort_by_key(PlacementCandidate::key);
        assert_eq!(v[0].co_length, 2);
    }
}
