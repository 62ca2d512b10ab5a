//! Link crossings between linearly ordered ranks and their local removal.
//!
//! The builder only ever creates crossing-free cyclic ladders, so it never
//! needs this repair step; it is provided for linear rank orders (such as a
//! naive insertion order) and is an identity on crossing-free input.

use std::collections::HashMap;

use super::NodeId;

/// Number of crossing link pairs between two consecutive linearly ordered
/// ranks. Links are `(a, b)` pairs with `a` in `upper` and `b` in `lower`;
/// links not between these two ranks are ignored.
pub fn linear_crossings(upper: &[NodeId], lower: &[NodeId], links: &[(NodeId, NodeId)]) -> usize {
    let pu: HashMap<NodeId, usize> = upper.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let pl: HashMap<NodeId, usize> = lower.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let segs: Vec<(usize, usize)> = links
        .iter()
        .filter_map(|&(a, b)| match (pu.get(&a), pl.get(&b)) {
            (Some(&x), Some(&y)) => Some((x, y)),
            _ => match (pu.get(&b), pl.get(&a)) {
                (Some(&x), Some(&y)) => Some((x, y)),
                _ => None,
            },
        })
        .collect();
    let mut count = 0;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (a, b) = (segs[i], segs[j]);
            if (a.0 < b.0 && a.1 > b.1) || (a.0 > b.0 && a.1 < b.1) {
                count += 1;
            }
        }
    }
    count
}

fn crossings_around(orders: &[Vec<NodeId>], links: &[(NodeId, NodeId)], rank: usize) -> usize {
    let mut c = 0;
    if rank > 0 {
        c += linear_crossings(&orders[rank - 1], &orders[rank], links);
    }
    if rank + 1 < orders.len() {
        c += linear_crossings(&orders[rank], &orders[rank + 1], links);
    }
    c
}

/// Reorders rank `rank` by adjacent transpositions, accepting a swap only if
/// it strictly reduces the crossings with both neighbouring ranks. Repeats to
/// a fixed point, bounded by `len²` swaps. Returns the remaining crossings.
///
/// Node and link sets are unchanged; crossing-free input is left as is.
pub fn remove_crossings(orders: &mut [Vec<NodeId>], links: &[(NodeId, NodeId)], rank: usize) -> usize {
    let len = orders[rank].len();
    let mut current = crossings_around(orders, links, rank);
    let mut swaps = 0;
    let mut improved = true;
    while improved && current > 0 && swaps < len * len {
        improved = false;
        for i in 0..len.saturating_sub(1) {
            orders[rank].swap(i, i + 1);
            let c = crossings_around(orders, links, rank);
            if c < current {
                current = c;
                swaps += 1;
                improved = true;
            } else {
                orders[rank].swap(i, i + 1);
            }
        }
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(v: &[NodeId]) -> Vec<Vec<NodeId>> {
        if v.len() <= 1 {
            return vec![v.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..v.len() {
            let mut rest = v.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn crossing_free_is_identity() {
        let mut orders = vec![vec![0, 1], vec![2, 3]];
        let links = [(0, 2), (1, 3)];
        assert_eq!(remove_crossings(&mut orders, &links, 1), 0);
        assert_eq!(orders, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn single_transposition_removes_crossing() {
        // Naive order puts 10 before 12 and 9; the links force the reverse.
        let mut orders = vec![vec![1, 2, 3], vec![10, 12, 9]];
        let links = [(3, 10), (1, 12), (2, 9), (2, 12)];
        assert!(linear_crossings(&orders[0], &orders[1], &links) > 0);
        // Brute force confirms a crossing-free order exists.
        let best =
            permutations(&orders[1]).into_iter().map(|p| linear_crossings(&orders[0], &p, &links)).min().unwrap();
        assert_eq!(best, 0);
        assert_eq!(remove_crossings(&mut orders, &links, 1), 0);
        assert_eq!(linear_crossings(&orders[0], &orders[1], &links), 0);
    }
}
