//! Exhaustive search for fully monotone duals, and the census of small
//! descriptions.
//!
//! A dual is fully monotone when every face of its ring embedding, the
//! outer one included, is a diamond `z, z+a, z+b, z+ab`. In ring terms this
//! means that every ladder is a triangulated strip: each gap between
//! neighbouring nodes on one ring faces a single node on the adjacent ring.
//! The search enumerates cyclic node orders ring by ring, from the outside
//! in, pruning orders in which two neighbours lack the common parent or
//! common child that their gap's diamond would need.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::dual::{build_dual, triangulated_strip, RankedDual};
use crate::model::{classify, AbstractDescription, Zone};

/// Default search budget (visited search states).
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Result of an exact search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A fully monotone dual exists; here is one.
    Monotone(RankedDual),
    /// No fully monotone dual exists.
    NotMonotone,
    /// The budget ran out before the search finished.
    Unknown,
}

/// Verdict without the witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Monotone,
    NotMonotone,
    Unknown,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Monotone(_) => VerdictKind::Monotone,
            Verdict::NotMonotone => VerdictKind::NotMonotone,
            Verdict::Unknown => VerdictKind::Unknown,
        }
    }
}

/// Verdict plus the number of search states visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub states: u64,
}

struct Search<'a> {
    by_rank: Vec<Vec<Zone>>,
    present: &'a HashSet<Zone>,
    budget: u64,
    states: u64,
    failed: HashSet<(usize, Vec<Zone>)>,
    rings: Vec<Vec<Zone>>,
    ladders: Vec<Vec<(usize, usize)>>,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn top(&self) -> usize {
        self.by_rank.len() - 1
    }

    /// Neighbours on ring `k` need a common parent and (below the top) a
    /// common child among the zones.
    fn neighbours_ok(&self, k: usize, x: Zone, y: Zone) -> bool {
        let meet = Zone(x.0 & y.0);
        let join = Zone(x.0 | y.0);
        meet.rank() + 1 == k && self.present.contains(&meet) && (k == self.top() || self.present.contains(&join))
    }

    /// Places ring `k` given the committed ring `k - 1`.
    fn ring(&mut self, k: usize) -> Step {
        if k > self.top() {
            return Step::Found;
        }
        let zones = self.by_rank[k].clone();
        let mut order = vec![zones[0]];
        let mut used = vec![false; zones.len()];
        used[0] = true;
        self.permute(k, &zones, &mut order, &mut used)
    }

    fn permute(&mut self, k: usize, zones: &[Zone], order: &mut Vec<Zone>, used: &mut [bool]) -> Step {
        self.states += 1;
        if self.states > self.budget {
            return Step::OutOfBudget;
        }
        if order.len() == zones.len() {
            if order.len() > 1 && !self.neighbours_ok(k, order[order.len() - 1], order[0]) {
                return Step::Exhausted;
            }
            return self.descend(k, order.clone());
        }
        for i in 0..zones.len() {
            if used[i] || !self.neighbours_ok(k, *order.last().expect("order starts non-empty"), zones[i]) {
                continue;
            }
            used[i] = true;
            order.push(zones[i]);
            let step = self.permute(k, zones, order, used);
            order.pop();
            used[i] = false;
            if !matches!(step, Step::Exhausted) {
                return step;
            }
        }
        Step::Exhausted
    }

    fn descend(&mut self, k: usize, order: Vec<Zone>) -> Step {
        if self.failed.contains(&(k, order.clone())) {
            return Step::Exhausted;
        }
        let Some(strip) = triangulated_strip(&self.rings[k - 1], &order) else {
            return Step::Exhausted;
        };
        self.rings.push(order.clone());
        self.ladders.push(strip);
        let step = self.ring(k + 1);
        if matches!(step, Step::Found) {
            return step;
        }
        self.rings.pop();
        self.ladders.pop();
        if matches!(step, Step::Exhausted) {
            self.failed.insert((k, order));
        }
        step
    }
}

/// Searches for a fully monotone dual of `d` within `budget` states.
pub fn search_monotone(d: &AbstractDescription, budget: u64) -> SearchOutcome {
    let present: HashSet<Zone> = d.zones().iter().copied().collect();
    let top = present.iter().map(|z| z.rank()).max().unwrap_or(0);
    let mut by_rank: Vec<Vec<Zone>> = vec![Vec::new(); top + 1];
    for &z in d.sorted_zones().iter() {
        by_rank[z.rank()].push(z);
    }
    let not_monotone = |states| SearchOutcome { verdict: Verdict::NotMonotone, states };
    // A ring around an empty center bounds a face with no diamond shape, and
    // a missing rank leaves nodes unlinkable.
    if !present.contains(&Zone::EMPTY) || by_rank.iter().any(Vec::is_empty) || (top > 0 && by_rank[top].len() > 1) {
        return not_monotone(0);
    }
    if top == 0 {
        return not_monotone(0);
    }
    // A single curve: one link and no face other than the outer one.
    if top == 1 {
        let dual = crate::dual::dual_from_rings(d.set_count(), &by_rank, &[vec![(0, 0)]]);
        return SearchOutcome { verdict: Verdict::Monotone(dual), states: 0 };
    }
    // A middle ring with one node does not separate the annuli on either
    // side, so the faces there span three ranks.
    if by_rank[1..top].iter().any(|r| r.len() < 2) {
        return not_monotone(0);
    }
    let mut search = Search {
        by_rank,
        present: &present,
        budget,
        states: 0,
        failed: HashSet::new(),
        rings: vec![vec![Zone::EMPTY]],
        ladders: Vec::new(),
    };
    let step = search.ring(1);
    let states = search.states.min(budget);
    match step {
        Step::Found => {
            let dual = crate::dual::dual_from_rings(d.set_count(), &search.rings, &search.ladders);
            SearchOutcome { verdict: Verdict::Monotone(dual), states }
        }
        Step::Exhausted => not_monotone(states),
        Step::OutOfBudget => SearchOutcome { verdict: Verdict::Unknown, states },
    }
}

/// One description of the census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    /// Zone codes in (rank, mask) order.
    pub zones: Vec<String>,
    pub admissible: bool,
    pub verdict: VerdictKind,
    pub states: u64,
}

/// Census totals and per-description verdicts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub set_count: usize,
    /// Zone subsets examined (`2^(2^n)`).
    pub examined: u64,
    pub admissible: usize,
    pub monotone: usize,
    pub unknown: usize,
    /// Admissible descriptions only, in increasing zone-mask order.
    pub entries: Vec<CensusEntry>,
}

impl CensusReport {
    pub fn percent_monotone(&self) -> f64 {
        if self.admissible == 0 {
            0.0
        } else {
            100.0 * self.monotone as f64 / self.admissible as f64
        }
    }

    pub fn summary(&self) -> String {
        format!("admissible={} monotone={} pct={:.2}", self.admissible, self.monotone, self.percent_monotone())
    }

    /// Tab-separated table with a header and the summary line last.
    pub fn to_table(&self) -> String {
        let mut s = String::from("zones\tadmissible\tverdict\tstates\n");
        for e in &self.entries {
            let verdict = match e.verdict {
                VerdictKind::Monotone => "monotone",
                VerdictKind::NotMonotone => "not_monotone",
                VerdictKind::Unknown => "unknown",
            };
            s.push_str(&format!("{}\t{}\t{}\t{}\n", e.zones.join(" "), e.admissible, verdict, e.states));
        }
        s.push_str(&self.summary());
        s.push('\n');
        s
    }
}

/// Sets named `A`, `B`, ... for census descriptions.
pub fn census_sets(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect()
}

/// Description with zones given as a bit set over all `2^n` zone masks.
pub fn description_from_bits(n: usize, bits: u64) -> Option<AbstractDescription> {
    let zones: Vec<Zone> = (0..1u32 << n).filter(|&z| bits >> z & 1 == 1).map(Zone).collect();
    AbstractDescription::new(census_sets(n), zones).ok()
}

/// All admissible descriptions over `n ≤ 4` sets, as zone bit sets, in
/// increasing order. Descriptions are counted as distinct even when a
/// relabeling of the sets maps one onto another.
pub fn admissible_descriptions(n: usize) -> Vec<u64> {
    assert!(n <= 4, "census is limited to n ≤ 4");
    let space = 1u64 << (1u32 << n);
    (0..space)
        .into_par_iter()
        .filter(|&bits| bits & 1 == 1)
        .filter(|&bits| description_from_bits(n, bits).is_some_and(|d| classify(&d).is_admissible()))
        .collect()
}

/// Classifies every admissible description over `n ≤ 4` sets.
pub fn census(n: usize, budget: u64) -> CensusReport {
    let admissible = admissible_descriptions(n);
    let entries: Vec<CensusEntry> = admissible
        .par_iter()
        .map(|&bits| {
            let d = description_from_bits(n, bits).expect("admissible descriptions are valid");
            let outcome = search_monotone(&d, budget);
            CensusEntry {
                zones: d.sorted_zones().into_iter().map(|z| d.zone_text(z)).collect(),
                admissible: true,
                verdict: outcome.verdict.kind(),
                states: outcome.states,
            }
        })
        .collect();
    CensusReport {
        set_count: n,
        examined: 1u64 << (1u32 << n),
        admissible: entries.len(),
        monotone: entries.iter().filter(|e| e.verdict == VerdictKind::Monotone).count(),
        unknown: entries.iter().filter(|e| e.verdict == VerdictKind::Unknown).count(),
        entries,
    }
}

/// Greedy builder compared with the exact search on one description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub oracle: VerdictKind,
    /// `None` if the greedy builder rejected the description.
    pub greedy_built: bool,
    pub greedy_fully_monotone: bool,
    pub greedy_monotone_faces: usize,
    pub greedy_bounded_faces: usize,
    /// Non-monotone bounded faces left by the greedy builder.
    pub gap: usize,
    /// Every zone of the description is a node of the greedy dual.
    pub greedy_well_matched: bool,
}

pub fn cross_check(d: &AbstractDescription, budget: u64) -> CrossCheck {
    let oracle = search_monotone(d, budget).verdict.kind();
    match build_dual(d) {
        Ok(dual) => {
            let (mono, bounded) = dual.count_monotone_faces();
            let mut zones = dual.zones();
            zones.sort_unstable();
            let mut want = d.zones().to_vec();
            want.sort_unstable();
            CrossCheck {
                oracle,
                greedy_built: true,
                greedy_fully_monotone: dual.is_fully_monotone(),
                greedy_monotone_faces: mono,
                greedy_bounded_faces: bounded,
                gap: bounded - mono,
                greedy_well_matched: zones == want,
            }
        }
        Err(_) => CrossCheck {
            oracle,
            greedy_built: false,
            greedy_fully_monotone: false,
            greedy_monotone_faces: 0,
            greedy_bounded_faces: 0,
            gap: 0,
            greedy_well_matched: false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(n: usize, zones: &[u32]) -> AbstractDescription {
        AbstractDescription::new(census_sets(n), zones.iter().map(|&z| Zone(z)).collect()).unwrap()
    }

    #[test]
    fn venn_is_monotone() {
        for n in 2..=4 {
            let d = AbstractDescription::full_venn(n).unwrap();
            let out = search_monotone(&d, DEFAULT_BUDGET);
            let Verdict::Monotone(dual) = out.verdict else { panic!("n = {n}") };
            assert!(dual.is_fully_monotone());
            let (mono, bounded) = dual.count_monotone_faces();
            assert_eq!(mono, bounded);
        }
    }

    #[test]
    fn chain_is_not_monotone() {
        // ∅ ⊂ a ⊂ ab: every ring has one node, so faces are not diamonds.
        let out = search_monotone(&desc(2, &[0, 1, 3]), DEFAULT_BUDGET);
        assert_eq!(out.verdict, Verdict::NotMonotone);
    }

    #[test]
    fn missing_pair_has_no_all_diamond_dual() {
        // Without ac, the gap between a and c on ring 1 has no common child.
        let out = search_monotone(&desc(3, &[0, 1, 2, 4, 3, 6, 7]), DEFAULT_BUDGET);
        assert_eq!(out.verdict, Verdict::NotMonotone);
    }

    #[test]
    fn tiny_budget_is_unknown() {
        let d = AbstractDescription::full_venn(4).unwrap();
        let out = search_monotone(&d, 3);
        assert_eq!(out.verdict, Verdict::Unknown);
        assert_eq!(out.states, 3);
    }

    #[test]
    fn census_of_two_sets_by_hand() {
        // Admissible over {a, b}: ∅ and ab are required; a or b or both
        // supply the middle rank. Only the full Venn has diamond faces; the
        // two chains have a single link between single-node rings.
        let r = census(2, DEFAULT_BUDGET);
        assert_eq!(r.admissible, 3);
        assert_eq!(r.monotone, 1);
        assert_eq!(r.entries.iter().find(|e| e.verdict == VerdictKind::Monotone).unwrap().zones, ["0", "a", "b", "ab"]);
    }

    #[test]
    fn census_is_deterministic() {
        assert_eq!(census(3, DEFAULT_BUDGET), census(3, DEFAULT_BUDGET));
    }

    /// Independent check: every ring order, no pruning, no memo.
    fn brute_force_monotone(d: &AbstractDescription) -> bool {
        fn perms(v: &[Zone]) -> Vec<Vec<Zone>> {
            if v.len() <= 1 {
                return vec![v.to_vec()];
            }
            let mut out = Vec::new();
            for i in 0..v.len() {
                let mut rest = v.to_vec();
                let x = rest.remove(i);
                for mut p in perms(&rest) {
                    p.insert(0, x);
                    out.push(p);
                }
            }
            out
        }
        let top = d.zones().iter().map(|z| z.rank()).max().unwrap();
        let mut by_rank = vec![Vec::new(); top + 1];
        for z in d.sorted_zones() {
            by_rank[z.rank()].push(z);
        }
        let mut frontier: Vec<Vec<Zone>> = vec![vec![Zone::EMPTY]];
        for ring in by_rank.iter().skip(1) {
            let mut next = Vec::new();
            for p in perms(ring) {
                if frontier.iter().any(|prev| triangulated_strip(prev, &p).is_some()) {
                    next.push(p);
                }
            }
            frontier = next;
        }
        // All strips triangulated means every gap faces one node on each
        // side, which with single-set links makes every face a diamond.
        top > 0
            && by_rank[top].len() == 1
            && (top == 1 || by_rank[1..top].iter().all(|r| r.len() > 1))
            && !frontier.is_empty()
    }

    #[test]
    fn search_agrees_with_brute_force() {
        for n in 2..=4 {
            for bits in admissible_descriptions(n) {
                let d = description_from_bits(n, bits).unwrap();
                let out = search_monotone(&d, DEFAULT_BUDGET);
                assert_eq!(
                    out.verdict.kind() == VerdictKind::Monotone,
                    brute_force_monotone(&d),
                    "{:?}",
                    d.sorted_zones()
                );
                if let Verdict::Monotone(dual) = &out.verdict {
                    let (mono, bounded) = dual.count_monotone_faces();
                    assert_eq!(mono, bounded);
                    assert!(dual.is_fully_monotone(), "{:?}", d.sorted_zones());
                    assert_eq!(dual.zones().len(), d.zones().len());
                }
            }
        }
    }

    #[test]
    fn cross_check_on_venn() {
        let c = cross_check(&AbstractDescription::full_venn(4).unwrap(), DEFAULT_BUDGET);
        assert_eq!(c.oracle, VerdictKind::Monotone);
        assert!(c.greedy_fully_monotone && c.greedy_well_matched);
        assert_eq!(c.gap, 0);
        let single = cross_check(&desc(1, &[0, 1]), DEFAULT_BUDGET);
        assert_eq!(single.oracle, VerdictKind::Monotone);
        assert!(single.greedy_built && single.greedy_well_matched);
    }
}
