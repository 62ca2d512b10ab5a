//! Zones, abstract descriptions and their admissibility classification.
//!
//! A [`Zone`] is a bitmask over set indices; an [`AbstractDescription`] is the
//! universe of sets plus the list of zones that must appear in the diagram.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Largest number of sets a description may contain (zones are `u32` masks).
pub const MAX_SETS: usize = 32;

/// A set intersection encoded as a bitmask over set indices.
///
/// Bit `i` is set iff set `i` participates. The empty mask is the empty zone ∅.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Zone(pub u32);

impl Zone {
    /// The empty zone ∅.
    pub const EMPTY: Zone = Zone(0);

    /// Zone containing exactly the given set indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Zone {
        Zone(indices.into_iter().fold(0u32, |m, i| m | (1 << i)))
    }

    /// Number of participating sets.
    pub fn rank(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains_set(self, set: usize) -> bool {
        self.0 >> set & 1 == 1
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(self, other: Zone) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, set: usize) -> Zone {
        Zone(self.0 | (1 << set))
    }

    pub fn without(self, set: usize) -> Zone {
        Zone(self.0 & !(1 << set))
    }

    /// Set indices in ascending order.
    pub fn sets(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| self.0 >> i & 1 == 1)
    }

    /// Highest participating set index, if any.
    pub fn max_set(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// The color of the super-dual link `self → upper`, if one exists:
    /// `upper = self ∪ {s}` for exactly one set `s ∉ self`.
    pub fn link_color(self, upper: Zone) -> Option<usize> {
        let diff = upper.0 & !self.0;
        (self.is_subset_of(upper) && diff.count_ones() == 1).then(|| diff.trailing_zeros() as usize)
    }
}

/// A named set of the universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetLabel {
    pub index: usize,
    pub name: String,
}

impl SetLabel {
    /// Single-character code used by the text format: the lowercased first
    /// character of the name.
    pub fn code(&self) -> char {
        self.name.chars().next().map(|c| c.to_lowercase().next().unwrap_or(c)).unwrap_or('?')
    }
}

/// The validated input: universe of sets plus the zones present in the data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractDescription {
    sets: Vec<SetLabel>,
    zones: Vec<Zone>,
}

/// Non-fatal observations made while parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseWarning {
    /// The empty zone was missing and has been added.
    EmptyZoneAdded,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::EmptyZoneAdded => write!(f, "empty zone was not listed and has been added"),
        }
    }
}

/// Options controlling [`parse_description`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Reject inputs that do not list the empty zone instead of adding it.
    pub strict_empty_set: bool,
}

/// Structured (JSON) document form of a description.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct StructuredDescription {
    sets: Vec<String>,
    zones: Vec<Vec<String>>,
}

impl AbstractDescription {
    /// Builds a description from set names and zones.
    ///
    /// Zones keep their order. The empty zone is required; use
    /// [`AbstractDescription::with_empty_zone`] to add it implicitly.
    pub fn new<S: Into<String>>(names: Vec<S>, zones: Vec<Zone>) -> Result<Self, ParseError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ParseError::NoSets);
        }
        if names.len() > MAX_SETS {
            return Err(ParseError::TooManySets(names.len()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.trim().is_empty() {
                return Err(ParseError::InvalidSetName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(ParseError::DuplicateSetName(name.clone()));
            }
        }
        if zones.is_empty() {
            return Err(ParseError::NoZones);
        }
        let full = if names.len() == 32 { u32::MAX } else { (1u32 << names.len()) - 1 };
        let mut distinct = HashSet::new();
        let sets: Vec<SetLabel> = names.into_iter().enumerate().map(|(index, name)| SetLabel { index, name }).collect();
        let mut used = 0u32;
        for &z in &zones {
            if z.0 & !full != 0 {
                return Err(ParseError::UnknownSetLabel(format!("bit mask {:#x}", z.0)));
            }
            if !distinct.insert(z) {
                return Err(ParseError::DuplicateZone(zone_text_or_mask(z, &sets)));
            }
            used |= z.0;
        }
        if !distinct.contains(&Zone::EMPTY) {
            return Err(ParseError::MissingEmptyZone);
        }
        if let Some(unused) = (0..sets.len()).find(|&i| used >> i & 1 == 0) {
            return Err(ParseError::UnusedSet(sets[unused].name.clone()));
        }
        Ok(AbstractDescription { sets, zones })
    }

    /// Like [`AbstractDescription::new`], but prepends ∅ if it is missing.
    pub fn with_empty_zone<S: Into<String>>(
        names: Vec<S>,
        mut zones: Vec<Zone>,
    ) -> Result<(Self, Vec<ParseWarning>), ParseError> {
        let mut warnings = Vec::new();
        if !zones.contains(&Zone::EMPTY) {
            zones.insert(0, Zone::EMPTY);
            warnings.push(ParseWarning::EmptyZoneAdded);
        }
        Ok((Self::new(names, zones)?, warnings))
    }

    /// The complete description over `n` sets named `A`, `B`, … (all `2^n` zones).
    pub fn full_venn(n: usize) -> Result<Self, ParseError> {
        if n == 0 || n > 26 {
            return Err(ParseError::TooManySets(n));
        }
        let names: Vec<String> = (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect();
        Self::new(names, (0..1u32 << n).map(Zone).collect())
    }

    pub fn sets(&self) -> &[SetLabel] {
        &self.sets
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    /// Zones in input order.
    pub fn zones(&self) -> &[Zone] {
        &self.zones
    }

    pub fn contains(&self, zone: Zone) -> bool {
        self.zones.contains(&zone)
    }

    /// Union of all zones (the mask of every set).
    pub fn universe(&self) -> Zone {
        Zone(self.zones.iter().fold(0, |m, z| m | z.0))
    }

    /// Zones sorted by (rank, mask): a canonical order independent of input order.
    pub fn sorted_zones(&self) -> Vec<Zone> {
        let mut v = self.zones.clone();
        v.sort_by_key(|z| (z.rank(), z.0));
        v
    }

    /// Text code of a zone (`"0"` for ∅).
    pub fn zone_text(&self, zone: Zone) -> String {
        zone_text_or_mask(zone, &self.sets)
    }

    /// Names of the sets in a zone.
    pub fn zone_names(&self, zone: Zone) -> Vec<String> {
        zone.sets().map(|i| self.sets[i].name.clone()).collect()
    }

    /// Serializes to the text format. Fails if set codes are not unique.
    pub fn to_text(&self) -> Result<String, ParseError> {
        check_unique_codes(&self.sets)?;
        let mut out = self.sets.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(",");
        out.push('\n');
        for &z in &self.zones {
            out.push_str(&self.zone_text(z));
            out.push('\n');
        }
        Ok(out)
    }

    /// Serializes to the structured (JSON) format.
    pub fn to_json(&self) -> String {
        let doc = StructuredDescription {
            sets: self.sets.iter().map(|s| s.name.clone()).collect(),
            zones: self.zones.iter().map(|&z| self.zone_names(z)).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("description serializes")
    }
}

fn zone_text_or_mask(zone: Zone, sets: &[SetLabel]) -> String {
    if zone.is_empty() {
        return "0".to_string();
    }
    zone.sets().map(|i| sets.get(i).map(SetLabel::code).unwrap_or('?')).collect()
}

fn check_unique_codes(sets: &[SetLabel]) -> Result<(), ParseError> {
    let mut seen = HashSet::new();
    for s in sets {
        if !seen.insert(s.code()) {
            return Err(ParseError::AmbiguousSetCode(s.code()));
        }
    }
    Ok(())
}

/// Parses the text or structured format (auto-detected by a leading `{`).
///
/// A missing ∅ is added with a warning unless `options.strict_empty_set`.
pub fn parse_description(
    input: &str,
    options: ParseOptions,
) -> Result<(AbstractDescription, Vec<ParseWarning>), ParseError> {
    let (names, zones) =
        if input.trim_start().starts_with('{') { parse_structured(input)? } else { parse_text(input)? };
    if options.strict_empty_set && !zones.contains(&Zone::EMPTY) {
        return Err(ParseError::MissingEmptyZone);
    }
    AbstractDescription::with_empty_zone(names, zones)
}

fn parse_text(input: &str) -> Result<(Vec<String>, Vec<Zone>), ParseError> {
    let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or(ParseError::NoSets)?;
    let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().all(String::is_empty) {
        return Err(ParseError::NoSets);
    }
    let labels: Vec<SetLabel> =
        names.iter().enumerate().map(|(index, n)| SetLabel { index, name: n.clone() }).collect();
    check_unique_codes(&labels)?;
    let mut zones = Vec::new();
    let mut seen = HashSet::new();
    for line in lines {
        // Allow several comma-separated zones on one line as well.
        for token in line.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let zone = parse_zone_token(token, &labels)?;
            if !seen.insert(zone) {
                return Err(ParseError::DuplicateZone(token.to_string()));
            }
            zones.push(zone);
        }
    }
    if zones.is_empty() {
        return Err(ParseError::NoZones);
    }
    Ok((names, zones))
}

fn parse_zone_token(token: &str, labels: &[SetLabel]) -> Result<Zone, ParseError> {
    if token == "0" || token == "∅" {
        return Ok(Zone::EMPTY);
    }
    let mut zone = Zone::EMPTY;
    for c in token.chars() {
        let lc = c.to_lowercase().next().unwrap_or(c);
        let set = labels.iter().find(|l| l.code() == lc).ok_or_else(|| ParseError::UnknownSetLabel(c.to_string()))?;
        if zone.contains_set(set.index) {
            return Err(ParseError::InvalidZone(token.to_string()));
        }
        zone = zone.with(set.index);
    }
    Ok(zone)
}

fn parse_structured(input: &str) -> Result<(Vec<String>, Vec<Zone>), ParseError> {
    let doc: StructuredDescription = serde_json::from_str(input).map_err(|e| ParseError::Syntax(e.to_string()))?;
    if doc.sets.is_empty() {
        return Err(ParseError::NoSets);
    }
    let mut zones = Vec::new();
    let mut seen = HashSet::new();
    for names in &doc.zones {
        let mut zone = Zone::EMPTY;
        for name in names {
            let idx =
                doc.sets.iter().position(|s| s == name).ok_or_else(|| ParseError::UnknownSetLabel(name.clone()))?;
            if zone.contains_set(idx) {
                return Err(ParseError::InvalidZone(names.join("+")));
            }
            zone = zone.with(idx);
        }
        if !seen.insert(zone) {
            return Err(ParseError::DuplicateZone(names.join("+")));
        }
        zones.push(zone);
    }
    if zones.is_empty() {
        return Err(ParseError::NoZones);
    }
    Ok((doc.sets, zones))
}

/// Which admissibility conditions a description satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    /// The super dual restricted to the zones is connected.
    pub connected: bool,
    /// The union of all zones is itself a zone (a unique top node).
    pub has_common_sink: bool,
    /// ∅ is a zone.
    pub has_common_source: bool,
    /// Every zone other than ∅ has a parent zone, and every zone below the
    /// maximum rank has a child zone.
    pub every_node_linked: bool,
    /// One human-readable line per violated condition.
    pub reasons: Vec<String>,
}

impl AdmissibilityReport {
    /// All four conditions hold.
    pub fn is_admissible(&self) -> bool {
        self.reasons.is_empty()
    }
}

/// Classifies a description against the admissibility conditions.
///
/// Pure and total: classification never fails.
pub fn classify(d: &AbstractDescription) -> AdmissibilityReport {
    let zones: BTreeSet<Zone> = d.zones().iter().copied().collect();
    let mut reasons = Vec::new();

    let has_common_source = zones.contains(&Zone::EMPTY);
    if !has_common_source {
        reasons.push("empty zone is missing".to_string());
    }
    let has_common_sink = zones.contains(&d.universe());
    if !has_common_sink {
        reasons.push(format!("no common sink: zone {} is missing", d.zone_text(d.universe())));
    }
    let connected = is_connected(&zones);
    if !connected {
        reasons.push("super dual is disconnected".to_string());
    }
    let max_rank = zones.iter().map(|z| z.rank()).max().unwrap_or(0);
    let mut every_node_linked = true;
    for &z in &zones {
        let has_parent = z.is_empty() || z.sets().any(|s| zones.contains(&z.without(s)));
        let has_child =
            z.rank() == max_rank || (0..d.set_count()).any(|s| !z.contains_set(s) && zones.contains(&z.with(s)));
        if !has_parent {
            every_node_linked = false;
            reasons.push(format!("zone {} has no parent zone", d.zone_text(z)));
        }
        if !has_child {
            every_node_linked = false;
            reasons.push(format!("zone {} has no child zone", d.zone_text(z)));
        }
    }
    AdmissibilityReport { connected, has_common_sink, has_common_source, every_node_linked, reasons }
}

/// Connectivity of the super dual (links between zones differing in one set).
pub fn is_connected(zones: &BTreeSet<Zone>) -> bool {
    let Some(&start) = zones.iter().next() else {
        return true;
    };
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(z) = queue.pop_front() {
        for bit in 0..32 {
            let next = Zone(z.0 ^ (1 << bit));
            if zones.contains(&next) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen.len() == zones.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> AbstractDescription {
        parse_description(s, ParseOptions::default()).unwrap().0
    }

    #[test]
    fn parses_smallest_venn() {
        let d = text("A,B\n0\na\nb\nab\n");
        let ranks: Vec<usize> = d.zones().iter().map(|z| z.rank()).collect();
        assert_eq!(ranks, vec![0, 1, 1, 2]);
    }

    #[test]
    fn accepts_empty_symbol_and_comma_lines() {
        let d = text("A,B\n∅,a,b,ab");
        assert_eq!(d.zones().len(), 4);
    }

    #[test]
    fn duplicate_zone_is_rejected() {
        let err = parse_description("A\na\na\n", ParseOptions::default()).unwrap_err();
        assert!(matches!(err, ParseError::DuplicateZone(_)));
    }

    #[test]
    fn unknown_label_is_rejected() {
        let err = parse_description("A,B\n0\nac\n", ParseOptions::default()).unwrap_err();
        assert!(matches!(err, ParseError::UnknownSetLabel(_)));
    }

    #[test]
    fn empty_zone_added_or_rejected() {
        let (d, w) = parse_description("A\na\n", ParseOptions::default()).unwrap();
        assert_eq!(d.zones()[0], Zone::EMPTY);
        assert_eq!(w, vec![ParseWarning::EmptyZoneAdded]);
        let err = parse_description("A\na\n", ParseOptions { strict_empty_set: true }).unwrap_err();
        assert_eq!(err, ParseError::MissingEmptyZone);
    }

    #[test]
    fn zero_sets_and_no_zones_are_rejected() {
        assert_eq!(parse_description("", ParseOptions::default()).unwrap_err(), ParseError::NoSets);
        assert_eq!(parse_description("A\n", ParseOptions::default()).unwrap_err(), ParseError::NoZones);
    }

    #[test]
    fn text_and_json_round_trip() {
        let d = AbstractDescription::full_venn(4).unwrap();
        assert_eq!(d.zones().len(), 16);
        let back = text(&d.to_text().unwrap());
        assert_eq!(back, d);
        let back = text(&d.to_json());
        assert_eq!(back, d);
    }

    #[test]
    fn classify_full_three_venn() {
        let r = classify(&AbstractDescription::full_venn(3).unwrap());
        assert!(r.is_admissible(), "{:?}", r.reasons);
    }

    #[test]
    fn classify_no_common_sink() {
        let r = classify(&text("A,B,C\n0\na\nb\nc\nab\nbc\nac\n"));
        assert!(!r.has_common_sink);
        assert!(r.connected && r.every_node_linked && r.has_common_source);
    }

    #[test]
    fn classify_unlinked_zone() {
        let d = text("A,B,C\n0\na\nbc\n");
        let r = classify(&d);
        assert!(!r.every_node_linked);
        // Brute-force oracle: bc has no zone differing from it in exactly one set.
        let bc = Zone::from_indices([1, 2]);
        let linked = d.zones().iter().any(|&z| z.link_color(bc).is_some() || bc.link_color(z).is_some());
        assert!(!linked);
        assert!(!r.connected);
    }

    #[test]
    fn link_color_requires_single_extra_set() {
        assert_eq!(Zone(0b001).link_color(Zone(0b011)), Some(1));
        assert_eq!(Zone(0b001).link_color(Zone(0b111)), None);
        assert_eq!(Zone(0b001).link_color(Zone(0b010)), None);
    }
}
