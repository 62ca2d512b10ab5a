//! Closed-form Venn duals and triangulated ring strips.

use std::collections::HashSet;

use super::{DualLink, DualNode, RankedDual};
use crate::error::BuildError;
use crate::model::Zone;

/// Ring orders of the full `n`-set Venn dual.
///
/// Adding set `m` keeps every ring and appends the previous ring of the
/// lower rank in reverse order, extended by `m`; this doubles the node count
/// while preserving the cyclic strips between rings.
pub fn venn_rings(n: usize) -> Vec<Vec<Zone>> {
    let mut rings: Vec<Vec<Zone>> = vec![vec![Zone::EMPTY], vec![Zone(1)]];
    for m in 1..n {
        let mut next = Vec::with_capacity(m + 2);
        for k in 0..m + 2 {
            let mut ring = rings.get(k).cloned().unwrap_or_default();
            if k >= 1 {
                ring.extend(rings[k - 1].iter().rev().map(|z| z.with(m)));
            }
            next.push(ring);
        }
        rings = next;
    }
    rings
}

/// Finds a triangulated cyclic strip between two rings: a ladder in which
/// every cell is a triangle, i.e. every gap on either ring faces a single
/// node across the annulus. Returns the ladder as `(outer, inner)` ring
/// positions in cyclic order, or `None` if no such strip exists.
///
/// Links must be super-dual links (`inner = outer ∪ {s}`). A ring with a
/// single node is joined by a fan to every node of the other ring.
pub fn triangulated_strip(outer: &[Zone], inner: &[Zone]) -> Option<Vec<(usize, usize)>> {
    let (a, b) = (outer.len(), inner.len());
    let linked = |i: usize, j: usize| outer[i].link_color(inner[j]).is_some();
    if a == 0 || b == 0 {
        return None;
    }
    if a == 1 {
        return (0..b).all(|j| linked(0, j)).then(|| (0..b).map(|j| (0, j)).collect());
    }
    if b == 1 {
        return (0..a).all(|i| linked(i, 0)).then(|| (0..a).map(|i| (i, 0)).collect());
    }
    for j0 in 0..b {
        let mut path = Vec::with_capacity(a + b);
        let mut failed = HashSet::new();
        if strip_dfs(0, 0, 0, 0, a, b, j0, &linked, &mut path, &mut failed) {
            return Some(path.into_iter().map(|(i, j)| (i % a, (j0 + j) % b)).collect());
        }
    }
    None
}

/// Lattice path from `(0, 0)` to `(a, b)`; `row0` / `col0` are the furthest
/// points reached along the first row / column, which is all that matters
/// for detecting a repeated link when the path wraps around.
#[allow(clippy::too_many_arguments)]
fn strip_dfs(
    i: usize,
    j: usize,
    row0: usize,
    col0: usize,
    a: usize,
    b: usize,
    j0: usize,
    linked: &dyn Fn(usize, usize) -> bool,
    path: &mut Vec<(usize, usize)>,
    failed: &mut HashSet<(usize, usize, usize, usize)>,
) -> bool {
    if (i, j) == (a, b) {
        return true;
    }
    if (i == a && j <= row0) || (j == b && i <= col0) {
        return false;
    }
    if !linked(i % a, (j0 + j) % b) {
        return false;
    }
    let key = (i, j, row0, col0);
    if failed.contains(&key) {
        return false;
    }
    path.push((i, j));
    let (nrow0, ncol0) = (if i == 0 { j } else { row0 }, if j == 0 { i } else { col0 });
    if (i < a && strip_dfs(i + 1, j, nrow0, ncol0, a, b, j0, linked, path, failed))
        || (j < b && strip_dfs(i, j + 1, nrow0, ncol0, a, b, j0, linked, path, failed))
    {
        return true;
    }
    path.pop();
    failed.insert(key);
    false
}

/// Builds a dual from ring orders and ladders given as ring positions.
pub(crate) fn dual_from_rings(set_count: usize, rings: &[Vec<Zone>], ladders: &[Vec<(usize, usize)>]) -> RankedDual {
    let mut nodes = Vec::new();
    let mut ids = Vec::new();
    for (k, ring) in rings.iter().enumerate() {
        let mut row = Vec::new();
        for (i, &zone) in ring.iter().enumerate() {
            row.push(nodes.len());
            nodes.push(DualNode {
                zone,
                rank: k,
                group_id: zone.max_set().map_or(0, |s| s + 1),
                order_index: i,
                is_virtual: false,
            });
        }
        ids.push(row);
    }
    let mut links = Vec::new();
    let mut ladder_ids = Vec::new();
    for (k, ladder) in ladders.iter().enumerate() {
        let mut row = Vec::new();
        for &(i, j) in ladder {
            let (lower, upper) = (ids[k][i], ids[k + 1][j]);
            row.push(links.len());
            links.push(DualLink { lower, upper, colors: Zone(nodes[upper].zone.0 & !nodes[lower].zone.0) });
        }
        ladder_ids.push(row);
    }
    RankedDual::from_parts(set_count, nodes, links, ids, ladder_ids)
}

/// The dual of the full `n`-set Venn description, in closed form.
///
/// Every face, including the outer one, is a monotone diamond.
pub fn venn_dual(n: usize) -> Result<RankedDual, BuildError> {
    if !(1..=8).contains(&n) {
        return Err(BuildError::VennOutOfRange(n));
    }
    let rings = venn_rings(n);
    let ladders: Vec<Vec<(usize, usize)>> = rings
        .windows(2)
        .map(|w| triangulated_strip(&w[0], &w[1]).expect("venn rings admit triangulated strips"))
        .collect();
    Ok(dual_from_rings(n, &rings, &ladders))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn ring_sizes_are_binomial() {
        for n in 1..=8 {
            let rings = venn_rings(n);
            let sizes: Vec<usize> = rings.iter().map(Vec::len).collect();
            let expected: Vec<usize> = (0..=n).map(|k| binomial(n, k)).collect();
            assert_eq!(sizes, expected, "n = {n}");
            for (k, ring) in rings.iter().enumerate() {
                assert!(ring.iter().all(|z| z.rank() == k));
            }
        }
    }

    #[test]
    fn venn_sizes_and_monotonicity() {
        let one = venn_dual(1).unwrap();
        assert_eq!((one.nodes().len(), one.links().len()), (2, 1));
        let five = venn_dual(5).unwrap();
        let sizes: Vec<usize> = five.rings().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 5, 10, 10, 5, 1]);
        for n in 2..=6 {
            let d = venn_dual(n).unwrap();
            let (mono, total) = d.count_monotone_faces();
            assert_eq!(mono, total, "n = {n}");
            assert!(d.is_fully_monotone());
        }
    }

    #[test]
    fn venn_range_is_checked() {
        assert_eq!(venn_dual(0).unwrap_err(), BuildError::VennOutOfRange(0));
        assert_eq!(venn_dual(9).unwrap_err(), BuildError::VennOutOfRange(9));
    }

    #[test]
    fn strip_rejects_unlinkable_rings() {
        let outer = [Zone(0b001), Zone(0b010)];
        let inner = [Zone(0b100 | 0b1000)];
        assert!(triangulated_strip(&outer, &inner).is_none());
    }

    #[test]
    fn two_venn_strip_is_a_square() {
        let strip = triangulated_strip(&[Zone(1), Zone(2)], &[Zone(3)]).unwrap();
        assert_eq!(strip, vec![(0, 0), (1, 0)]);
    }
}
