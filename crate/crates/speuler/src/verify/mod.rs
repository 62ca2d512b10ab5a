//! Geometric verification of a rendered diagram.
//!
//! The arrangement of the exact (unoffset) curves is computed and compared
//! with the description: every zone must appear as exactly one face, and the
//! well-formedness conditions (no concurrency, no point shared by three
//! curves, one simple loop per set) are counted rather than assumed.

mod arrangement;

pub use arrangement::{extract_faces, Arrangement, ArrangementFace, WELD_TOLERANCE};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::geom::{perimeter, signed_area, Point};
use crate::model::{AbstractDescription, Zone};
use crate::Scalar;

/// Outcome of matching arrangement faces against the description's zones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellMatched {
    pub well_matched: bool,
    /// Zones of the description without a face.
    pub missing: Vec<String>,
    /// Face labels that are not zones of the description.
    pub extra: Vec<String>,
    /// Zones realised by more than one face (a bounded face labelled with
    /// the empty zone counts here, as the empty zone is the unbounded face).
    pub duplicated: Vec<String>,
}

/// Compares face labels with the zones of `d`.
pub fn check_well_matched<T: Scalar>(d: &AbstractDescription, faces: &[ArrangementFace<T>]) -> WellMatched {
    let mut count: BTreeMap<Zone, usize> = BTreeMap::new();
    for f in faces {
        *count.entry(f.label).or_default() += 1;
    }
    let text = |z: Zone| d.zone_text(z);
    let mut missing = Vec::new();
    for z in d.sorted_zones() {
        if !count.contains_key(&z) {
            missing.push(text(z));
        }
    }
    let mut extra = Vec::new();
    let mut duplicated = Vec::new();
    for (&z, &c) in &count {
        if !d.contains(z) && !z.is_empty() {
            extra.push(text(z));
        } else if c > 1 {
            duplicated.push(text(z));
        }
    }
    WellMatched {
        well_matched: missing.is_empty() && extra.is_empty() && duplicated.is_empty(),
        missing,
        extra,
        duplicated,
    }
}

/// Counts of well-formedness violations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WfViolations {
    pub concurrent_segments: usize,
    pub nonpairwise_points: usize,
    /// Loops beyond the first, summed over sets.
    pub duplicate_curves: usize,
    /// Sets whose curve touches or overlaps itself.
    pub nonsimple_curves: usize,
}

impl WfViolations {
    pub fn total(&self) -> usize {
        self.concurrent_segments + self.nonpairwise_points + self.duplicate_curves + self.nonsimple_curves
    }
}

/// Per-set shape measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetValue {
    pub set: String,
    pub value: f64,
}

/// Full metrics document.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricsReport {
    #[serde(flatten)]
    pub matching: WellMatched,
    pub wf_violations: WfViolations,
    /// `4πA / P²` per set (1 for a circle).
    pub compactness: Vec<SetValue>,
    /// Largest turning angle between consecutive samples, in degrees.
    pub max_turning_degrees: Vec<SetValue>,
    /// Coefficient of variation of the non-empty zone areas.
    pub zone_area_cv: f64,
    pub symmetry: &'static str,
    pub minimum_area_ratio: &'static str,
}

impl MetricsReport {
    /// Plain-text table, one guideline per line.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let list = |v: &[String]| if v.is_empty() { "-".to_string() } else { v.join(",") };
        let m = &self.matching;
        let _ = writeln!(
            s,
            "P1 well-matched     {:<5} missing={} extra={} duplicated={}",
            m.well_matched,
            list(&m.missing),
            list(&m.extra),
            list(&m.duplicated)
        );
        let w = &self.wf_violations;
        let _ = writeln!(
            s,
            "P2 well-formed      {:<5} concurrent={} nonpairwise={} duplicate={} nonsimple={}",
            w.total() == 0,
            w.concurrent_segments,
            w.nonpairwise_points,
            w.duplicate_curves,
            w.nonsimple_curves
        );
        let values =
            |v: &[SetValue]| v.iter().map(|x| format!("{}={:.4}", x.set, x.value)).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "P3 compactness      {}", values(&self.compactness));
        let _ = writeln!(s, "P4 max turning deg  {}", values(&self.max_turning_degrees));
        let _ = writeln!(s, "P5 symmetry         {}", self.symmetry);
        let _ = writeln!(s, "P6 min area ratio   {}", self.minimum_area_ratio);
        let _ = writeln!(s, "P7 zone area cv     {:.6}", self.zone_area_cv);
        s
    }
}

const NOT_COMPUTED: &str = "not computed";

/// Measures `curves` (set → closed loops) against `d` using a precomputed
/// arrangement of the same curves.
pub fn compute_metrics<T: Scalar>(
    d: &AbstractDescription,
    curves: &[Vec<Vec<Point<T>>>],
    arrangement: &Arrangement<T>,
) -> MetricsReport {
    let matching = check_well_matched(d, &arrangement.faces);
    let wf_violations = WfViolations {
        concurrent_segments: arrangement.concurrent_segments,
        nonpairwise_points: arrangement.nonpairwise_points,
        duplicate_curves: curves.iter().map(|l| l.len().saturating_sub(1)).sum(),
        nonsimple_curves: arrangement.nonsimple_sets.len(),
    };
    let name = |s: usize| d.sets()[s].name.clone();
    let compactness =
        curves.iter().enumerate().map(|(s, loops)| SetValue { set: name(s), value: compactness(loops) }).collect();
    let max_turning_degrees = curves
        .iter()
        .enumerate()
        .map(|(s, loops)| SetValue {
            set: name(s),
            value: loops.iter().map(|l| max_turning(l)).fold(0.0, f64::max).to_degrees(),
        })
        .collect();
    MetricsReport {
        matching,
        wf_violations,
        compactness,
        max_turning_degrees,
        zone_area_cv: zone_area_cv(&arrangement.faces),
        symmetry: NOT_COMPUTED,
        minimum_area_ratio: NOT_COMPUTED,
    }
}

/// `4πA / P²` over all loops of one set.
pub fn compactness<T: Scalar>(loops: &[Vec<Point<T>>]) -> f64 {
    let area: f64 = loops.iter().map(|l| signed_area(l).to_f64().unwrap_or(0.0).abs()).sum();
    let per: f64 = loops.iter().map(|l| perimeter(l).to_f64().unwrap_or(0.0)).sum();
    if per > 0.0 {
        4.0 * std::f64::consts::PI * area / (per * per)
    } else {
        0.0
    }
}

/// Largest turning angle (radians) along a closed polyline.
pub fn max_turning<T: Scalar>(pts: &[Point<T>]) -> f64 {
    let mut p: Vec<Point<f64>> = pts.iter().map(|p| p.cast()).collect();
    p.dedup();
    if p.len() > 1 && p.first() == p.last() {
        p.pop();
    }
    let n = p.len();
    if n < 3 {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let a = p[(i + 1) % n] - p[i];
            let b = p[(i + 2) % n] - p[(i + 1) % n];
            a.cross(b).atan2(a.dot(b)).abs()
        })
        .fold(0.0, f64::max)
}

/// Coefficient of variation (population) of the total area per non-empty
/// zone label over the bounded faces.
pub fn zone_area_cv<T: Scalar>(faces: &[ArrangementFace<T>]) -> f64 {
    let mut areas: BTreeMap<Zone, f64> = BTreeMap::new();
    for f in faces.iter().filter(|f| f.bounded && !f.label.is_empty()) {
        *areas.entry(f.label).or_default() += f.area.to_f64().unwrap_or(0.0);
    }
    if areas.is_empty() {
        return 0.0;
    }
    let n = areas.len() as f64;
    let mean = areas.values().sum::<f64>() / n;
    let var = areas.values().map(|a| (a - mean).powi(2)).sum::<f64>() / n;
    if mean > 0.0 {
        var.sqrt() / mean
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x0: f64, y0: f64, s: f64) -> Vec<Point<f64>> {
        [(0.0, 0.0), (s, 0.0), (s, s), (0.0, s), (0.0, 0.0)].iter().map(|&(x, y)| Point::new(x0 + x, y0 + y)).collect()
    }

    fn labels(a: &Arrangement<f64>) -> Vec<u32> {
        let mut v: Vec<u32> = a.faces.iter().map(|f| f.label.0).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn one_curve_two_faces() {
        let a = extract_faces(&[vec![square(0.0, 0.0, 1.0)]]).unwrap();
        assert_eq!(labels(&a), vec![0, 1]);
        let inner = a.faces.iter().find(|f| f.bounded).unwrap();
        assert!((inner.area - 1.0).abs() < 1e-12);
        assert_eq!((a.concurrent_segments, a.nonpairwise_points, a.nonsimple_sets.len()), (0, 0, 0));
    }

    #[test]
    fn clockwise_input_is_handled() {
        let mut sq = square(0.0, 0.0, 2.0);
        sq.reverse();
        let a = extract_faces(&[vec![sq]]).unwrap();
        assert_eq!(labels(&a), vec![0, 1]);
    }

    #[test]
    fn overlapping_squares_give_two_venn() {
        let a = extract_faces(&[vec![square(0.0, 0.0, 2.0)], vec![square(1.0, 1.0, 2.0)]]).unwrap();
        assert_eq!(labels(&a), vec![0, 1, 2, 3]);
        let total: f64 = a.faces.iter().map(|f| f.area).sum();
        assert!((total - 7.0).abs() < 1e-12);
        assert_eq!(a.label_conflicts, 0);
    }

    #[test]
    fn nested_disjoint_component_becomes_hole() {
        let a = extract_faces(&[vec![square(0.0, 0.0, 4.0)], vec![square(1.0, 1.0, 1.0)]]).unwrap();
        assert_eq!(labels(&a), vec![0, 1, 3]);
        let outer = a.faces.iter().find(|f| f.label.0 == 1).unwrap();
        assert!((outer.area - 15.0).abs() < 1e-12);
    }

    #[test]
    fn shared_edge_is_concurrency() {
        // Two unit squares sharing the edge x = 1.
        let a = extract_faces(&[vec![square(0.0, 0.0, 1.0)], vec![square(1.0, 0.0, 1.0)]]).unwrap();
        assert_eq!(labels(&a), vec![0, 1, 2]);
        assert_eq!(a.concurrent_segments, 1);
    }

    #[test]
    fn three_curves_through_one_point() {
        // Three squares sharing the corner at the origin.
        let a =
            extract_faces(&[vec![square(0.0, 0.0, 1.0)], vec![square(-1.0, -1.0, 1.0)], vec![square(-0.5, -2.0, 2.0)]])
                .unwrap();
        assert!(a.nonpairwise_points >= 1);
    }

    #[test]
    fn figure_eight_is_nonsimple() {
        let eight: Vec<Point<f64>> = [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]
            .iter()
            .map(|&(x, y)| Point::new(x, y))
            .collect();
        let a = extract_faces(&[vec![eight]]).unwrap();
        assert_eq!(a.nonsimple_sets, vec![0]);
    }

    #[test]
    fn matching_reports_missing_and_duplicates() {
        let d = AbstractDescription::new(vec!["a", "b"], vec![Zone(0), Zone(1), Zone(2)]).unwrap();
        let a = extract_faces(&[vec![square(0.0, 0.0, 2.0)], vec![square(1.0, 1.0, 2.0)]]).unwrap();
        let m = check_well_matched(&d, &a.faces);
        assert!(!m.well_matched);
        assert_eq!(m.extra, vec![d.zone_text(Zone(3))]);
        let d2 = AbstractDescription::new(vec!["a"], vec![Zone(0), Zone(1)]).unwrap();
        let two = extract_faces(&[vec![square(0.0, 0.0, 1.0), square(3.0, 0.0, 1.0)]]).unwrap();
        let m2 = check_well_matched(&d2, &two.faces);
        assert_eq!(m2.duplicated, vec![d2.zone_text(Zone(1))]);
    }

    #[test]
    fn equal_areas_have_zero_cv() {
        // Two-Venn from squares of side 2 offset by (1, 0): three unit-width
        // columns of height 2 each.
        let a = extract_faces(&[vec![square(0.0, 0.0, 2.0)], vec![square(1.0, 0.0, 2.0)]]).unwrap();
        let bounded: Vec<_> = a.faces.iter().filter(|f| f.bounded).collect();
        assert_eq!(bounded.len(), 3);
        assert!(zone_area_cv(&a.faces).abs() < 1e-9);
    }

    #[test]
    fn turning_of_square_is_right_angle() {
        assert!((max_turning(&square(0.0, 0.0, 1.0)).to_degrees() - 90.0).abs() < 1e-9);
    }

    #[test]
    fn labels_agree_with_point_membership() {
        use crate::geom::point_in_polygon;
        let curves = vec![vec![square(0.0, 0.0, 3.0)], vec![square(1.0, 1.0, 3.0)], vec![square(2.0, -1.0, 2.5)]];
        let a = extract_faces(&curves).unwrap();
        for f in a.faces.iter().filter(|f| f.bounded) {
            // Probe just inside the first boundary edge.
            let (p, q) = (f.boundary[0], f.boundary[1]);
            let probe = p.lerp(q, 0.5) + (q - p).perp() * (1e-4 / (q - p).norm());
            let mut z = 0u32;
            for (s, loops) in curves.iter().enumerate() {
                if point_in_polygon(probe, &loops[0]) {
                    z |= 1 << s;
                }
            }
            assert_eq!(z, f.label.0);
        }
    }
}
