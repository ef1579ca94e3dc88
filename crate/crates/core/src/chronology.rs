//! Chronologies, atomic calendars and calendar graphs.
//!
//! A chronology names a time unit and a domain of granule indices. An atomic
//! calendar links a coarse chronology to a finer one by partitioning the fine
//! granules into contiguous runs, one run per coarse granule. A calendar is a
//! directed acyclic graph of such partitions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Domain of granule indices of a chronology.
///
/// `Finite(n)` is the index range `0..n`. `Unbounded` is the whole integer
/// line: periods such as calendar years extend indefinitely in both
/// directions, which is what the complement of a bounded period requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Domain {
    Finite(u64),
    Unbounded,
}

impl Domain {
    pub fn contains(&self, granule: i64) -> bool {
        match self {
            Domain::Finite(n) => granule >= 0 && (granule as u64) < *n,
            Domain::Unbounded => true,
        }
    }
}

impl Serialize for Domain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Domain::Finite(n) => s.serialize_u64(*n),
            Domain::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for Domain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(Domain::Finite)
                .ok_or_else(|| D::Error::custom("domain must be a non-negative integer")),
            serde_json::Value::String(s) if s == "unbounded" => Ok(Domain::Unbounded),
            other => Err(D::Error::custom(format!(
                "domain must be an integer or \"unbounded\", got {other}"
            ))),
        }
    }
}

/// A named time unit together with its granule domain.
///
/// Granule indices are plain integers; human-readable labels are a display
/// concern, handled either by an additive `label_offset` (index 0 shown as
/// the offset) or by an explicit label table for finite domains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chronology {
    pub unit: String,
    pub domain: Domain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_offset: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Chronology {
    pub fn new(unit: impl Into<String>, domain: Domain) -> Self {
        Chronology { unit: unit.into(), domain, label_offset: None, labels: None }
    }

    pub fn with_offset(mut self, offset: i64) -> Self {
        self.label_offset = Some(offset);
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn contains(&self, granule: i64) -> bool {
        self.domain.contains(granule)
    }

    pub fn check(&self, granule: i64) -> Result<i64> {
        if self.contains(granule) {
            Ok(granule)
        } else {
            Err(Error::OutOfDomain { unit: self.unit.clone(), granule })
        }
    }

    /// Display label of a granule index.
    pub fn label(&self, granule: i64) -> String {
        if let Some(labels) = &self.labels {
            if granule >= 0 && (granule as usize) < labels.len() {
                return labels[granule as usize].clone();
            }
        }
        (granule + self.label_offset.unwrap_or(0)).to_string()
    }

    /// Resolve a textual label back to a granule index.
    pub fn resolve(&self, label: &str) -> Result<i64> {
        if let Some(labels) = &self.labels {
            if let Some(idx) = labels.iter().position(|l| l == label) {
                return Ok(idx as i64);
            }
        }
        let parsed: i64 = label.trim().parse().map_err(|_| Error::UnknownLabel {
            unit: self.unit.clone(),
            label: label.to_string(),
        })?;
        self.check(parsed - self.label_offset.unwrap_or(0))
    }
}

/// Partition of a fine chronology's granules into runs, one per coarse granule.
///
/// `run_lengths` covers coarse granules `0..run_lengths.len()`. For edges
/// between unbounded chronologies, `cycle` repeats beyond the prefix and
/// tiles the negative side as well; the fine origin stays aligned with the
/// coarse origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomicCalendar {
    pub coarse: String,
    pub fine: String,
    pub run_lengths: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cycle: Vec<u64>,
}

impl AtomicCalendar {
    pub fn new(
        coarse: impl Into<String>,
        fine: impl Into<String>,
        run_lengths: Vec<u64>,
    ) -> Self {
        AtomicCalendar { coarse: coarse.into(), fine: fine.into(), run_lengths, cycle: Vec::new() }
    }

    pub fn with_cycle(mut self, cycle: Vec<u64>) -> Self {
        self.cycle = cycle;
        self
    }

    pub fn coarse_domain(&self) -> Domain {
        if self.cycle.is_empty() {
            Domain::Finite(self.run_lengths.len() as u64)
        } else {
            Domain::Unbounded
        }
    }

    pub fn fine_domain(&self) -> Domain {
        if self.cycle.is_empty() {
            Domain::Finite(self.run_lengths.iter().sum())
        } else {
            Domain::Unbounded
        }
    }

    fn prefix_fine_total(&self) -> i64 {
        self.run_lengths.iter().sum::<u64>() as i64
    }

    fn cycle_fine_total(&self) -> i64 {
        self.cycle.iter().sum::<u64>() as i64
    }

    /// Contiguous range of fine granules belonging to coarse granule `c`.
    pub fn children(&self, c: i64) -> Result<Range<i64>> {
        let out_of_domain = || Error::OutOfDomain { unit: self.coarse.clone(), granule: c };
        let prefix_len = self.run_lengths.len() as i64;
        if c >= 0 && c < prefix_len {
            let start: i64 = self.run_lengths[..c as usize].iter().sum::<u64>() as i64;
            let len = self.run_lengths[c as usize] as i64;
            return Ok(start..start + len);
        }
        if self.cycle.is_empty() {
            return Err(out_of_domain());
        }
        let cycle_len = self.cycle.len() as i64;
        if c >= prefix_len {
            let idx = c - prefix_len;
            let full = idx / cycle_len;
            let rem = (idx % cycle_len) as usize;
            let start = self.prefix_fine_total()
                + full * self.cycle_fine_total()
                + self.cycle[..rem].iter().sum::<u64>() as i64;
            return Ok(start..start + self.cycle[rem] as i64);
        }
        // c < 0: the cycle tiles leftward from the origin.
        let m = -c; // granules -m..0 lie between start(c) and 0
        let full = m / cycle_len;
        let rem = (m % cycle_len) as usize;
        let tail: i64 = self.cycle[self.cycle.len() - rem..].iter().sum::<u64>() as i64;
        let start = -(full * self.cycle_fine_total() + tail);
        let len = self.cycle[(((c % cycle_len) + cycle_len) % cycle_len) as usize] as i64;
        Ok(start..start + len)
    }

    /// Coarse granule containing fine granule `f`.
    pub fn parent(&self, f: i64) -> Result<i64> {
        let out_of_domain = || Error::OutOfDomain { unit: self.fine.clone(), granule: f };
        let prefix_total = self.prefix_fine_total();
        if f >= 0 && f < prefix_total {
            let mut acc = 0i64;
            for (c, len) in self.run_lengths.iter().enumerate() {
                acc += *len as i64;
                if f < acc {
                    return Ok(c as i64);
                }
            }
            unreachable!("prefix sums cover the prefix");
        }
        if self.cycle.is_empty() {
            return Err(out_of_domain());
        }
        let cycle_len = self.cycle.len() as i64;
        let cycle_total = self.cycle_fine_total();
        if f >= prefix_total {
            let idx = f - prefix_total;
            let full = idx / cycle_total;
            let mut rem = idx % cycle_total;
            for (i, len) in self.cycle.iter().enumerate() {
                if rem < *len as i64 {
                    return Ok(self.run_lengths.len() as i64 + full * cycle_len + i as i64);
                }
                rem -= *len as i64;
            }
            unreachable!("cycle sums cover the cycle");
        }
        // f < 0.
        let fm = -1 - f;
        let full = fm / cycle_total;
        let mut rem = fm % cycle_total;
        for (steps, i) in (0..self.cycle.len()).rev().enumerate() {
            let len = self.cycle[i] as i64;
            if rem < len {
                return Ok(-(full * cycle_len + steps as i64 + 1));
            }
            rem -= len;
        }
        unreachable!("cycle sums cover the cycle");
    }

    pub fn first_child(&self, c: i64) -> Result<i64> {
        Ok(self.children(c)?.start)
    }

    pub fn last_child(&self, c: i64) -> Result<i64> {
        Ok(self.children(c)?.end - 1)
    }
}

/// A violation found by [`Calendar::validate`]. Violations are data, not
/// errors: an invalid calendar can still be inspected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("chronology has an empty unit name")]
    EmptyUnitName,
    #[error("chronology `{unit}` has an empty finite domain")]
    EmptyDomain { unit: String },
    #[error("chronology `{unit}` has {actual} labels for a domain of {expected}")]
    LabelCountMismatch { unit: String, expected: u64, actual: usize },
    #[error("chronology `{unit}` is unbounded but carries a label table")]
    LabelsOnUnbounded { unit: String },
    #[error("edge {coarse}->{fine} references unknown chronology `{missing}`")]
    UnknownEdgeUnit { coarse: String, fine: String, missing: String },
    #[error("edge {coarse}->{fine} links a chronology to itself")]
    SelfEdge { coarse: String, fine: String },
    #[error("edge {coarse}->{fine} has a zero run length at coarse granule {index}")]
    ZeroRunLength { coarse: String, fine: String, index: usize },
    #[error("edge {coarse}->{fine} has a zero cycle entry at position {index}")]
    ZeroCycleEntry { coarse: String, fine: String, index: usize },
    #[error("edge {coarse}->{fine} between unbounded chronologies needs a non-empty cycle")]
    MissingCycle { coarse: String, fine: String },
    #[error("edge {coarse}->{fine} between finite chronologies must not have a cycle")]
    UnexpectedCycle { coarse: String, fine: String },
    #[error("edge {coarse}->{fine} mixes a finite and an unbounded chronology")]
    BoundednessMismatch { coarse: String, fine: String },
    #[error("edge {coarse}->{fine} covers {actual} coarse granules, domain has {expected}")]
    RunCountMismatch { coarse: String, fine: String, expected: u64, actual: usize },
    #[error("edge {coarse}->{fine} tiles {actual} fine granules, domain has {expected}")]
    TilingMismatch { coarse: String, fine: String, expected: u64, actual: u64 },
    #[error("calendar graph has a cycle through `{unit}`")]
    CyclicGraph { unit: String },
    #[error("paths {from}->{to} disagree on the parent of fine granule {granule}")]
    InconsistentPaths { from: String, to: String, granule: i64 },
}

/// A set of chronologies plus the atomic calendars linking them.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Calendar {
    pub chronologies: Vec<Chronology>,
    pub edges: Vec<AtomicCalendar>,
}

impl Calendar {
    pub fn new() -> Self {
        Calendar::default()
    }

    pub fn add_chronology(&mut self, c: Chronology) -> &mut Self {
        self.chronologies.push(c);
        self
    }

    pub fn add_edge(&mut self, e: AtomicCalendar) -> &mut Self {
        self.edges.push(e);
        self
    }

    pub fn chronology(&self, unit: &str) -> Result<&Chronology> {
        self.chronologies
            .iter()
            .find(|c| c.unit == unit)
            .ok_or_else(|| Error::UnknownUnit(unit.to_string()))
    }

    pub fn edge(&self, coarse: &str, fine: &str) -> Option<&AtomicCalendar> {
        self.edges.iter().find(|e| e.coarse == coarse && e.fine == fine)
    }

    /// All direct coarse->fine paths between two units, as edge sequences.
    fn paths(&self, from: &str, to: &str) -> Vec<Vec<&AtomicCalendar>> {
        let mut found = Vec::new();
        let mut stack = vec![(from.to_string(), Vec::new())];
        while let Some((at, path)) = stack.pop() {
            if at == to && !path.is_empty() {
                found.push(path);
                continue;
            }
            for e in self.edges.iter().filter(|e| e.coarse == at) {
                let mut next = path.clone();
                next.push(e);
                stack.push((e.fine.clone(), next));
            }
        }
        found
    }

    /// Coarse->fine edge path from `coarse_unit` down to `fine_unit`, if any.
    pub fn path(&self, coarse_unit: &str, fine_unit: &str) -> Option<Vec<&AtomicCalendar>> {
        self.paths(coarse_unit, fine_unit).into_iter().next()
    }

    pub fn load_json(text: &str) -> Result<Calendar> {
        serde_json::from_str(text).map_err(|e| Error::InvalidCalendar(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("calendar serializes")
    }

    /// Check every structural invariant; an empty list means the calendar is
    /// well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for c in &self.chronologies {
            if c.unit.is_empty() {
                out.push(Violation::EmptyUnitName);
            }
            seen.insert(c.unit.clone());
            match (c.domain, &c.labels) {
                (Domain::Finite(0), _) => out.push(Violation::EmptyDomain { unit: c.unit.clone() }),
                (Domain::Finite(n), Some(labels)) if labels.len() as u64 != n => {
                    out.push(Violation::LabelCountMismatch {
                        unit: c.unit.clone(),
                        expected: n,
                        actual: labels.len(),
                    })
                }
                (Domain::Unbounded, Some(_)) => {
                    out.push(Violation::LabelsOnUnbounded { unit: c.unit.clone() })
                }
                _ => {}
            }
        }

        for e in &self.edges {
            if e.coarse == e.fine {
                out.push(Violation::SelfEdge { coarse: e.coarse.clone(), fine: e.fine.clone() });
                continue;
            }
            let coarse = self.chronology(&e.coarse).ok();
            let fine = self.chronology(&e.fine).ok();
            for (unit, found) in [(&e.coarse, &coarse), (&e.fine, &fine)] {
                if found.is_none() {
                    out.push(Violation::UnknownEdgeUnit {
                        coarse: e.coarse.clone(),
                        fine: e.fine.clone(),
                        missing: unit.to_string(),
                    });
                }
            }
            for (i, len) in e.run_lengths.iter().enumerate() {
                if *len == 0 {
                    out.push(Violation::ZeroRunLength {
                        coarse: e.coarse.clone(),
                        fine: e.fine.clone(),
                        index: i,
                    });
                }
            }
            for (i, len) in e.cycle.iter().enumerate() {
                if *len == 0 {
                    out.push(Violation::ZeroCycleEntry {
                        coarse: e.coarse.clone(),
                        fine: e.fine.clone(),
                        index: i,
                    });
                }
            }
            let (Some(coarse), Some(fine)) = (coarse, fine) else { continue };
            match (coarse.domain, fine.domain) {
                (Domain::Finite(cn), Domain::Finite(fn_)) => {
                    if !e.cycle.is_empty() {
                        out.push(Violation::UnexpectedCycle {
                            coarse: e.coarse.clone(),
                            fine: e.fine.clone(),
                        });
                    }
                    if e.run_lengths.len() as u64 != cn {
                        out.push(Violation::RunCountMismatch {
                            coarse: e.coarse.clone(),
                            fine: e.fine.clone(),
                            expected: cn,
                            actual: e.run_lengths.len(),
                        });
                    }
                    let tiled: u64 = e.run_lengths.iter().sum();
                    if tiled != fn_ {
                        out.push(Violation::TilingMismatch {
                            coarse: e.coarse.clone(),
                            fine: e.fine.clone(),
                            expected: fn_,
                            actual: tiled,
                        });
                    }
                }
                (Domain::Unbounded, Domain::Unbounded) => {
                    if e.cycle.is_empty() {
                        out.push(Violation::MissingCycle {
                            coarse: e.coarse.clone(),
                            fine: e.fine.clone(),
                        });
                    }
                }
                _ => out.push(Violation::BoundednessMismatch {
                    coarse: e.coarse.clone(),
                    fine: e.fine.clone(),
                }),
            }
        }

        self.check_acyclic(&mut out);
        self.check_path_consistency(&mut out);
        out
    }

    fn check_acyclic(&self, out: &mut Vec<Violation>) {
        // Depth-first search with an on-stack marker.
        let mut units: BTreeSet<&str> = BTreeSet::new();
        for e in &self.edges {
            units.insert(&e.coarse);
            units.insert(&e.fine);
        }
        let mut state: BTreeMap<&str, u8> = BTreeMap::new(); // 1 = on stack, 2 = done
        fn visit<'a>(
            unit: &'a str,
            edges: &'a [AtomicCalendar],
            state: &mut BTreeMap<&'a str, u8>,
            out: &mut Vec<Violation>,
        ) -> bool {
            match state.get(unit) {
                Some(1) => {
                    out.push(Violation::CyclicGraph { unit: unit.to_string() });
                    return false;
                }
                Some(2) => return true,
                _ => {}
            }
            state.insert(unit, 1);
            for e in edges.iter().filter(|e| e.coarse == unit) {
                if !visit(&e.fine, edges, state, out) {
                    return false;
                }
            }
            state.insert(unit, 2);
            true
        }
        for unit in units {
            if !visit(unit, &self.edges, &mut state, out) {
                return;
            }
        }
    }

    fn check_path_consistency(&self, out: &mut Vec<Violation>) {
        let units: Vec<&Chronology> = self.chronologies.iter().collect();
        for from in &units {
            for to in &units {
                if from.unit == to.unit {
                    continue;
                }
                let paths = self.paths(&from.unit, &to.unit);
                if paths.len() < 2 {
                    continue;
                }
                let window = match to.domain {
                    Domain::Finite(n) => 0..n as i64,
                    Domain::Unbounded => {
                        let span = paths
                            .iter()
                            .flat_map(|p| p.iter())
                            .map(|e| e.prefix_fine_total() + 4 * e.cycle_fine_total())
                            .max()
                            .unwrap_or(16);
                        -span..span
                    }
                };
                let parent_along = |path: &[&AtomicCalendar], f: i64| -> Result<i64> {
                    let mut g = f;
                    for edge in path.iter().rev() {
                        g = edge.parent(g)?;
                    }
                    Ok(g)
                };
                'granules: for f in window {
                    let mut first: Option<i64> = None;
                    for p in &paths {
                        match (parent_along(p, f), first) {
                            (Ok(g), None) => first = Some(g),
                            (Ok(g), Some(prev)) if g != prev => {
                                out.push(Violation::InconsistentPaths {
                                    from: from.unit.clone(),
                                    to: to.unit.clone(),
                                    granule: f,
                                });
                                break 'granules;
                            }
                            (Ok(_), Some(_)) => {}
                            (Err(_), _) => continue 'granules,
                        }
                    }
                }
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Finite(n) => write!(f, "{n}"),
            Domain::Unbounded => write!(f, "unbounded"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn years_months() -> AtomicCalendar {
        AtomicCalendar::new("Year", "Month", vec![12, 12, 12]).with_cycle(vec![12])
    }

    #[test]
    fn uniform_partition_children() {
        let cal = years_months();
        assert_eq!(cal.children(0).unwrap(), 0..12);
        assert_eq!(cal.children(2).unwrap(), 24..36);
        // Beyond the prefix the cycle takes over.
        assert_eq!(cal.children(5).unwrap(), 60..72);
    }

    #[test]
    fn uneven_partition_children_and_parent() {
        let cal = AtomicCalendar::new("Coarse", "Fine", vec![2, 3]);
        assert_eq!(cal.children(1).unwrap(), 2..5);
        assert_eq!(cal.parent(4).unwrap(), 1);
        assert_eq!(cal.parent(1).unwrap(), 0);
        assert!(cal.parent(5).is_err());
        assert!(cal.children(2).is_err());
    }

    #[test]
    fn identity_partition() {
        let cal = AtomicCalendar::new("A", "B", vec![1, 1, 1, 1]);
        for f in 0..4 {
            assert_eq!(cal.parent(f).unwrap(), f);
        }
    }

    #[test]
    fn parent_of_children_roundtrip() {
        let cal = AtomicCalendar::new("Coarse", "Fine", vec![3, 1, 4, 2]);
        for c in 0..4 {
            for f in cal.children(c).unwrap() {
                assert_eq!(cal.parent(f).unwrap(), c);
            }
        }
    }

    #[test]
    fn negative_side_uses_cycle() {
        let cal = AtomicCalendar::new("Coarse", "Fine", vec![2, 3]).with_cycle(vec![2, 3]);
        assert_eq!(cal.children(-1).unwrap(), -3..0);
        assert_eq!(cal.children(-2).unwrap(), -5..-3);
        assert_eq!(cal.children(-3).unwrap(), -8..-5);
        for c in -6..6 {
            for f in cal.children(c).unwrap() {
                assert_eq!(cal.parent(f).unwrap(), c, "fine {f} under coarse {c}");
            }
        }
    }

    #[test]
    fn labels_resolve_and_render() {
        let year = Chronology::new("Year", Domain::Unbounded).with_offset(0);
        assert_eq!(year.resolve("1914").unwrap(), 1914);
        assert_eq!(year.label(1914), "1914");

        let day = Chronology::new("Day", Domain::Finite(3))
            .with_labels(vec!["03/06".into(), "03/07".into(), "03/08".into()]);
        assert_eq!(day.resolve("03/07").unwrap(), 1);
        assert_eq!(day.label(2), "03/08");
        assert!(day.resolve("03/09").is_err());
    }

    #[test]
    fn validate_clean_single_chronology() {
        let mut cal = Calendar::new();
        cal.add_chronology(Chronology::new("Day", Domain::Finite(10)));
        assert!(cal.validate().is_empty());
    }

    #[test]
    fn validate_flags_zero_run_length() {
        let mut cal = Calendar::new();
        cal.add_chronology(Chronology::new("Month", Domain::Finite(2)));
        cal.add_chronology(Chronology::new("Day", Domain::Finite(5)));
        cal.add_edge(AtomicCalendar::new("Month", "Day", vec![5, 0]));
        let violations = cal.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::ZeroRunLength { index: 1, .. })));
    }

    #[test]
    fn validate_flags_inconsistent_paths() {
        // Year -> Month -> Day vs a direct Year -> Day edge that disagrees.
        let mut cal = Calendar::new();
        cal.add_chronology(Chronology::new("Year", Domain::Finite(1)));
        cal.add_chronology(Chronology::new("Month", Domain::Finite(2)));
        cal.add_chronology(Chronology::new("Day", Domain::Finite(6)));
        cal.add_edge(AtomicCalendar::new("Year", "Month", vec![2]));
        cal.add_edge(AtomicCalendar::new("Month", "Day", vec![3, 3]));
        cal.add_edge(AtomicCalendar::new("Year", "Day", vec![6]));
        // Paths agree here: both send every day to year 0.
        assert!(cal.validate().is_empty());

        // Now make the composite ambiguous by splitting the year in two.
        let mut cal = Calendar::new();
        cal.add_chronology(Chronology::new("Year", Domain::Finite(2)));
        cal.add_chronology(Chronology::new("Month", Domain::Finite(2)));
        cal.add_chronology(Chronology::new("Day", Domain::Finite(6)));
        cal.add_edge(AtomicCalendar::new("Year", "Month", vec![1, 1]));
        cal.add_edge(AtomicCalendar::new("Month", "Day", vec![3, 3]));
        cal.add_edge(AtomicCalendar::new("Year", "Day", vec![2, 4]));
        let violations = cal.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::InconsistentPaths { granule: 2, .. })));
    }

    #[test]
    fn validate_flags_graph_cycle() {
        let mut cal = Calendar::new();
        cal.add_chronology(Chronology::new("A", Domain::Unbounded));
        cal.add_chronology(Chronology::new("B", Domain::Unbounded));
        cal.add_edge(AtomicCalendar::new("A", "B", vec![]).with_cycle(vec![2]));
        cal.add_edge(AtomicCalendar::new("B", "A", vec![]).with_cycle(vec![2]));
        let violations = cal.validate();
        assert!(violations.iter().any(|v| matches!(v, Violation::CyclicGraph { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{
            "chronologies": [
                {"unit": "Year", "domain": "unbounded", "label_offset": 0},
                {"unit": "Day", "domain": 4, "labels": ["a", "b", "c", "d"]}
            ],
            "edges": []
        }"#;
        let cal = Calendar::load_json(text).unwrap();
        assert_eq!(cal.chronology("Year").unwrap().domain, Domain::Unbounded);
        assert_eq!(cal.chronology("Day").unwrap().resolve("c").unwrap(), 2);
        let back = Calendar::load_json(&cal.to_json()).unwrap();
        assert_eq!(back.chronologies, cal.chronologies);
    }
}
