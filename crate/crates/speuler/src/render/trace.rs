//! Combinatorial tracing of set curves through the faces of the dual.
//!
//! Inside a face, the link sides of one set's color are paired along the
//! face boundary so that each pair encloses a boundary arc whose corner nodes
//! lie outside the set. Following pairs from face to face across links yields
//! closed loops; one loop per set is the well-formed case.

use crate::dual::{RankedDual, Topology};
use crate::error::RenderError;

/// A pass of a curve through a face: in through boundary side `enter`, via
/// the hub, out through boundary side `exit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub face: usize,
    pub enter: usize,
    pub exit: usize,
}

/// The closed loops of set `set`, as sequences of face passages.
pub fn trace_set_curve(set: usize, dual: &RankedDual, topo: &Topology) -> Result<Vec<Vec<Passage>>, RenderError> {
    let name = || format!("#{set}");
    let has = |link: usize| dual.links()[link].colors.contains_set(set);
    // partner[face][side] for sides carrying the set.
    let mut partner: Vec<Vec<Option<usize>>> = Vec::with_capacity(topo.faces.len());
    // sides_of_link[link] = (face, side) pairs.
    let mut sides_of_link: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dual.links().len()];
    for (f, face) in topo.faces.iter().enumerate() {
        let colored: Vec<usize> = (0..face.boundary.len()).filter(|&i| has(face.boundary[i].link)).collect();
        let mut p = vec![None; face.boundary.len()];
        if colored.len() % 2 == 1 {
            return Err(RenderError::OpenPath(name()));
        }
        for (k, &i) in colored.iter().enumerate() {
            sides_of_link[face.boundary[i].link].push((f, i));
            let next_zone = dual.nodes()[face.boundary[i].next_node].zone;
            if !next_zone.contains_set(set) {
                let j = colored[(k + 1) % colored.len()];
                if p[i].is_some() || p[j].is_some() {
                    return Err(RenderError::OpenPath(name()));
                }
                p[i] = Some(j);
                p[j] = Some(i);
            }
        }
        if colored.iter().any(|&i| p[i].is_none()) {
            return Err(RenderError::OpenPath(name()));
        }
        partner.push(p);
    }

    let mut loops = Vec::new();
    let mut done = vec![false; dual.links().len()];
    for link in 0..dual.links().len() {
        if done[link] || !has(link) {
            continue;
        }
        if sides_of_link[link].len() != 2 {
            return Err(RenderError::InconsistentDual(format!("link {link} does not have two sides")));
        }
        let start = sides_of_link[link][0];
        let mut at = start;
        let mut passages = Vec::new();
        loop {
            let (f, i) = at;
            let j = partner[f][i].ok_or_else(|| RenderError::OpenPath(name()))?;
            passages.push(Passage { face: f, enter: i, exit: j });
            let out_link = topo.faces[f].boundary[j].link;
            done[out_link] = true;
            let sides = &sides_of_link[out_link];
            at = if sides[0] == (f, j) { sides[1] } else { sides[0] };
            if at == start {
                break;
            }
            if passages.len() > 2 * dual.links().len() {
                return Err(RenderError::OpenPath(name()));
            }
        }
        done[link] = true;
        loops.push(passages);
    }
    Ok(loops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::venn_dual;

    #[test]
    fn venn_sets_trace_single_loops() {
        for n in 1..=5 {
            let d = venn_dual(n).unwrap();
            let t = Topology::new(&d);
            for s in 0..n {
                let loops = trace_set_curve(s, &d, &t).unwrap();
                assert_eq!(loops.len(), 1, "n = {n}, set {s}");
                // Every link of the set's color is crossed exactly once.
                let crossed = loops[0].len();
                let colored = d.links().iter().filter(|l| l.colors.contains_set(s)).count();
                assert_eq!(crossed, colored);
            }
        }
    }
}
