//! Endpoint conversion between the chronologies of an atomic calendar.
//!
//! Going from fine to coarse ([`coarsen`]) is deterministic because the run
//! lengths fix the alignment: an included fine endpoint becomes an included
//! coarse endpoint only when it sits on the run boundary, otherwise the
//! coarse granule is partially covered. Going from coarse to fine
//! ([`refine`]) is qualitative: a partial coarse endpoint says only that the
//! cut lies strictly inside the coarse granule, so several fine endpoints
//! are admissible.

use std::collections::BTreeSet;
use std::fmt;

use crate::chronology::{AtomicCalendar, Calendar};
use crate::error::Error;
use crate::interval::{Endpoint, EndpointKind, GranuleInterval, Side};
use crate::Result;

/// The admissible fine endpoints for one side of a refined interval: every
/// `(granule, kind)` with the granule in `granules` and the kind in `kinds`,
/// minus the listed exclusions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualitativeEndpoint {
    pub side: Side,
    pub granules: std::ops::RangeInclusive<i64>,
    pub kinds: BTreeSet<EndpointKind>,
    pub exclusions: Vec<(i64, EndpointKind)>,
}

impl QualitativeEndpoint {
    pub fn exact(e: Endpoint) -> QualitativeEndpoint {
        QualitativeEndpoint {
            side: e.side,
            granules: e.granule..=e.granule,
            kinds: BTreeSet::from([e.kind]),
            exclusions: Vec::new(),
        }
    }

    /// The single admissible endpoint, if there is exactly one.
    pub fn as_exact(&self) -> Option<Endpoint> {
        let set = self.candidates();
        if set.len() == 1 {
            let (granule, kind) = *set.iter().next().unwrap();
            return Some(Endpoint { side: self.side, granule, kind });
        }
        None
    }

    pub fn admits(&self, granule: i64, kind: EndpointKind) -> bool {
        self.granules.contains(&granule)
            && self.kinds.contains(&kind)
            && !self.exclusions.contains(&(granule, kind))
    }

    pub fn candidates(&self) -> BTreeSet<(i64, EndpointKind)> {
        let mut out = BTreeSet::new();
        for g in self.granules.clone() {
            for kind in &self.kinds {
                if !self.exclusions.contains(&(g, *kind)) {
                    out.insert((g, *kind));
                }
            }
        }
        out
    }

    fn from_candidates(side: Side, set: &BTreeSet<(i64, EndpointKind)>) -> QualitativeEndpoint {
        assert!(!set.is_empty(), "a qualitative endpoint admits at least one endpoint");
        let lo = set.iter().map(|(g, _)| *g).min().unwrap();
        let hi = set.iter().map(|(g, _)| *g).max().unwrap();
        let kinds: BTreeSet<EndpointKind> = set.iter().map(|(_, k)| *k).collect();
        let mut exclusions = Vec::new();
        for g in lo..=hi {
            for kind in &kinds {
                if !set.contains(&(g, *kind)) {
                    exclusions.push((g, *kind));
                }
            }
        }
        QualitativeEndpoint { side, granules: lo..=hi, kinds, exclusions }
    }
}

impl fmt::Display for QualitativeEndpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Group the admissible granules per kind, e.g. "(4..6 or [5..6".
        let mut parts = Vec::new();
        for kind in &self.kinds {
            let allowed: Vec<i64> = self
                .granules
                .clone()
                .filter(|g| !self.exclusions.contains(&(*g, *kind)))
                .collect();
            if allowed.is_empty() {
                continue;
            }
            let (lo, hi) = (allowed[0], *allowed.last().unwrap());
            let sample = Endpoint { side: self.side, granule: lo, kind: *kind };
            let bracket = sample.to_string();
            let bracket = match self.side {
                Side::Left => bracket[..bracket.len() - lo.to_string().len()].to_string(),
                Side::Right => bracket[lo.to_string().len()..].to_string(),
            };
            let range = if lo == hi { format!("{lo}") } else { format!("{lo}..{hi}") };
            match self.side {
                Side::Left => parts.push(format!("{bracket}{range}")),
                Side::Right => parts.push(format!("{range}{bracket}")),
            }
        }
        write!(f, "{}", parts.join(" or "))
    }
}

/// Result of refining an interval into a finer chronology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefinedInterval {
    Empty,
    Span { left: Option<QualitativeEndpoint>, right: Option<QualitativeEndpoint> },
}

impl RefinedInterval {
    /// The unique fine interval, when both sides are exact or unbounded.
    pub fn as_exact(&self) -> Option<GranuleInterval> {
        match self {
            RefinedInterval::Empty => Some(GranuleInterval::Empty),
            RefinedInterval::Span { left, right } => {
                let l = match left {
                    None => None,
                    Some(q) => Some(q.as_exact()?),
                };
                let r = match right {
                    None => None,
                    Some(q) => Some(q.as_exact()?),
                };
                Some(GranuleInterval::span(l, r))
            }
        }
    }

    /// Does some choice of admissible endpoints equal the given interval?
    pub fn admits(&self, i: &GranuleInterval) -> bool {
        match (self, i) {
            (RefinedInterval::Empty, GranuleInterval::Empty) => true,
            (RefinedInterval::Span { left, right }, GranuleInterval::Span(span)) => {
                let side_ok = |q: &Option<QualitativeEndpoint>, e: Option<Endpoint>| match (q, e) {
                    (None, None) => true,
                    (Some(q), Some(e)) => q.admits(e.granule, e.kind),
                    _ => false,
                };
                side_ok(left, span.left()) && side_ok(right, span.right())
            }
            _ => false,
        }
    }
}

impl fmt::Display for RefinedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefinedInterval::Empty => write!(f, "EMPTY"),
            RefinedInterval::Span { left, right } => {
                match left {
                    None => write!(f, "-")?,
                    Some(q) => write!(f, "{q}")?,
                }
                write!(f, " , ")?;
                match right {
                    None => write!(f, "-"),
                    Some(q) => write!(f, "{q}"),
                }
            }
        }
    }
}

/// Convert a fine-chronology interval to the coarse chronology of `cal`.
///
/// Kind outcomes per fine input kind: `[` becomes `(` or `[` depending on
/// run alignment, `(` always stays `(`; mirrored on the right.
pub fn coarsen(i: &GranuleInterval, cal: &AtomicCalendar) -> Result<GranuleInterval> {
    let span = match i.canonicalize() {
        GranuleInterval::Empty => return Ok(GranuleInterval::Empty),
        GranuleInterval::Span(s) => s,
    };
    let left = match span.left() {
        None => None,
        Some(l) => {
            let parent = cal.parent(l.granule)?;
            let kind = match l.kind {
                EndpointKind::Included if l.granule == cal.first_child(parent)? => {
                    EndpointKind::Included
                }
                _ => EndpointKind::Partial,
            };
            Some(Endpoint::left(parent, kind))
        }
    };
    let right = match span.right() {
        None => None,
        Some(r) => {
            let parent = cal.parent(r.granule)?;
            let kind = match r.kind {
                EndpointKind::Included if r.granule == cal.last_child(parent)? => {
                    EndpointKind::Included
                }
                _ => EndpointKind::Partial,
            };
            Some(Endpoint::right(parent, kind))
        }
    };
    Ok(GranuleInterval::span(left, right))
}

fn refine_left(l: Endpoint, cal: &AtomicCalendar) -> Result<QualitativeEndpoint> {
    let children = cal.children(l.granule)?;
    match l.kind {
        EndpointKind::Included => Ok(QualitativeEndpoint::exact(Endpoint::left(
            children.start,
            EndpointKind::Included,
        ))),
        EndpointKind::Partial => Ok(QualitativeEndpoint {
            side: Side::Left,
            granules: children.start..=children.end - 1,
            kinds: BTreeSet::from([EndpointKind::Included, EndpointKind::Partial]),
            // The cut lies strictly inside the coarse granule, so the period
            // cannot begin exactly at its first fine granule.
            exclusions: vec![(children.start, EndpointKind::Included)],
        }),
        EndpointKind::Excluded => unreachable!("canonicalized"),
    }
}

fn refine_right(r: Endpoint, cal: &AtomicCalendar) -> Result<QualitativeEndpoint> {
    let children = cal.children(r.granule)?;
    match r.kind {
        EndpointKind::Included => Ok(QualitativeEndpoint::exact(Endpoint::right(
            children.end - 1,
            EndpointKind::Included,
        ))),
        EndpointKind::Partial => Ok(QualitativeEndpoint {
            side: Side::Right,
            granules: children.start..=children.end - 1,
            kinds: BTreeSet::from([EndpointKind::Included, EndpointKind::Partial]),
            exclusions: vec![(children.end - 1, EndpointKind::Included)],
        }),
        EndpointKind::Excluded => unreachable!("canonicalized"),
    }
}

/// Convert a coarse-chronology interval to the fine chronology of `cal`.
///
/// Kind outcomes per coarse input kind: `[` refines exactly to `[` at the
/// aligned fine granule, `(` refines to `(` or `[` over the children with
/// the aligned included endpoint ruled out; mirrored on the right.
pub fn refine(i: &GranuleInterval, cal: &AtomicCalendar) -> Result<RefinedInterval> {
    let span = match i.canonicalize() {
        GranuleInterval::Empty => return Ok(RefinedInterval::Empty),
        GranuleInterval::Span(s) => s,
    };
    let left = span.left().map(|l| refine_left(l, cal)).transpose()?;
    let right = span.right().map(|r| refine_right(r, cal)).transpose()?;
    Ok(RefinedInterval::Span { left, right })
}

/// Does some admissible realization of `refine(coarsen(i))` equal `i`?
pub fn roundtrip_check(i: &GranuleInterval, cal: &AtomicCalendar) -> Result<bool> {
    let coarse = coarsen(i, cal)?;
    let refined = refine(&coarse, cal)?;
    Ok(refined.admits(&i.canonicalize()))
}

/// An interval converted along a calendar path: exact when coarsening (or
/// trivially), qualitative when refining.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Converted {
    Exact(GranuleInterval),
    Qualitative(RefinedInterval),
}

impl fmt::Display for Converted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Converted::Exact(i) => write!(f, "{i}"),
            Converted::Qualitative(r) => write!(f, "{r}"),
        }
    }
}

fn refine_candidate_side(
    set: &BTreeSet<(i64, EndpointKind)>,
    side: Side,
    cal: &AtomicCalendar,
) -> Result<BTreeSet<(i64, EndpointKind)>> {
    let mut out = BTreeSet::new();
    for (g, kind) in set {
        let e = Endpoint { side, granule: *g, kind: *kind };
        let q = match side {
            Side::Left => refine_left(e, cal)?,
            Side::Right => refine_right(e, cal)?,
        };
        out.extend(q.candidates());
    }
    Ok(out)
}

/// Convert an interval between two units of a calendar, composing atomic
/// calendars edge by edge along the graph path.
pub fn convert(
    calendar: &Calendar,
    i: &GranuleInterval,
    from: &str,
    to: &str,
) -> Result<Converted> {
    calendar.chronology(from)?;
    calendar.chronology(to)?;
    if from == to {
        return Ok(Converted::Exact(*i));
    }
    // Coarsening walks fine-to-coarse, against the edge direction.
    if let Some(path) = calendar.path(to, from) {
        let mut acc = *i;
        for edge in path.iter().rev() {
            acc = coarsen(&acc, edge)?;
        }
        return Ok(Converted::Exact(acc));
    }
    if let Some(path) = calendar.path(from, to) {
        let mut refined = refine(i, path[0])?;
        for edge in &path[1..] {
            refined = match refined {
                RefinedInterval::Empty => RefinedInterval::Empty,
                RefinedInterval::Span { left, right } => {
                    let step = |q: Option<QualitativeEndpoint>, side| -> Result<_> {
                        match q {
                            None => Ok(None),
                            Some(q) => {
                                let set = refine_candidate_side(&q.candidates(), side, edge)?;
                                Ok(Some(QualitativeEndpoint::from_candidates(side, &set)))
                            }
                        }
                    };
                    RefinedInterval::Span {
                        left: step(left, Side::Left)?,
                        right: step(right, Side::Right)?,
                    }
                }
            };
        }
        return Ok(Converted::Qualitative(refined));
    }
    Err(Error::NoConversionPath { from: from.to_string(), to: to.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chronology::{Chronology, Domain};
    use EndpointKind::{Included, Partial};

    fn iv(lg: i64, lk: EndpointKind, rg: i64, rk: EndpointKind) -> GranuleInterval {
        GranuleInterval::bounded(lg, lk, rg, rk)
    }

    /// Three months of 3, 4 and 5 days.
    fn toy() -> AtomicCalendar {
        AtomicCalendar::new("Month", "Day", vec![3, 4, 5])
    }

    #[test]
    fn coarsen_aligned_full_month() {
        // Days 3..=6 are exactly month 1.
        let got = coarsen(&iv(3, Included, 6, Included), &toy()).unwrap();
        assert_eq!(got, GranuleInterval::singleton(1));
    }

    #[test]
    fn coarsen_misaligned_days_become_partial_months() {
        // run_lengths [5,7]: day 3 is not first of month 0, day 10 not last of month 1.
        let cal = AtomicCalendar::new("Month", "Day", vec![5, 7]);
        let got = coarsen(&iv(3, Included, 10, Included), &cal).unwrap();
        assert_eq!(got, iv(0, Partial, 1, Partial));
    }

    #[test]
    fn coarsen_keeps_partial_fine_ends_partial() {
        let got = coarsen(&iv(0, Partial, 6, Partial), &toy()).unwrap();
        assert_eq!(got, iv(0, Partial, 1, Partial));
    }

    #[test]
    fn coarsen_interval_inside_one_coarse_granule() {
        let got = coarsen(&iv(4, Included, 5, Included), &toy()).unwrap();
        assert_eq!(got, iv(1, Partial, 1, Partial));
    }

    #[test]
    fn refine_whole_month_is_exact() {
        let got = refine(&GranuleInterval::singleton(1), &toy()).unwrap();
        assert_eq!(got.as_exact(), Some(iv(3, Included, 6, Included)));
    }

    #[test]
    fn refine_partial_left_excludes_aligned_start() {
        // (1,- over month 1 (days 3..=6): any day as "(", days 4..=6 as "[".
        let got = refine(&GranuleInterval::from_left(1, Partial), &toy()).unwrap();
        let RefinedInterval::Span { left: Some(left), right: None } = got else {
            panic!("expected a left-qualitative ray");
        };
        assert!(!left.admits(3, Included));
        assert!(left.admits(4, Included));
        assert!(left.admits(3, Partial));
        assert!(left.admits(6, Partial));
        assert!(!left.admits(7, Partial));
        assert_eq!(left.candidates().len(), 7);
        assert_eq!(left.to_string(), "[4..6 or (3..6");
    }

    #[test]
    fn refine_candidates_all_coarsen_back() {
        let cal = toy();
        for coarse_kind in [Included, Partial] {
            let coarse = iv(0, Partial, 1, coarse_kind);
            let refined = refine(&coarse, &cal).unwrap();
            let RefinedInterval::Span { left: Some(l), right: Some(r) } = &refined else {
                panic!("bounded refinement");
            };
            for (lg, lk) in l.candidates() {
                for (rg, rk) in r.candidates() {
                    let fine = iv(lg, lk, rg, rk);
                    if fine.is_empty() {
                        continue;
                    }
                    assert_eq!(coarsen(&fine, &cal).unwrap(), coarse);
                }
            }
        }
    }

    #[test]
    fn roundtrip_holds_on_aligned_and_partial_intervals() {
        let cal = toy();
        assert!(roundtrip_check(&iv(3, Included, 6, Included), &cal).unwrap());
        assert!(roundtrip_check(&iv(1, Partial, 8, Partial), &cal).unwrap());
        assert!(roundtrip_check(&GranuleInterval::Empty, &cal).unwrap());
    }

    #[test]
    fn convert_routes_both_directions() {
        let mut calendar = Calendar::new();
        calendar.add_chronology(Chronology::new("Month", Domain::Finite(3)));
        calendar.add_chronology(Chronology::new("Day", Domain::Finite(12)));
        calendar.add_edge(toy());
        let days = iv(3, Included, 6, Included);
        match convert(&calendar, &days, "Day", "Month").unwrap() {
            Converted::Exact(i) => assert_eq!(i, GranuleInterval::singleton(1)),
            other => panic!("expected exact coarsening, got {other:?}"),
        }
        match convert(&calendar, &GranuleInterval::singleton(1), "Month", "Day").unwrap() {
            Converted::Qualitative(r) => {
                assert_eq!(r.as_exact(), Some(days));
            }
            other => panic!("expected refinement, got {other:?}"),
        }
        assert!(matches!(
            convert(&calendar, &days, "Day", "Week"),
            Err(Error::UnknownUnit(_))
        ));
    }

    #[test]
    fn convert_composes_two_hops() {
        let mut calendar = Calendar::new();
        calendar.add_chronology(Chronology::new("Year", Domain::Finite(1)));
        calendar.add_chronology(Chronology::new("Month", Domain::Finite(3)));
        calendar.add_chronology(Chronology::new("Day", Domain::Finite(12)));
        calendar.add_edge(AtomicCalendar::new("Year", "Month", vec![3]));
        calendar.add_edge(toy());
        // Coarsen two hops: days 3..=6 are a strict middle slice of year 0.
        match convert(&calendar, &iv(3, Included, 6, Included), "Day", "Year").unwrap() {
            Converted::Exact(i) => assert_eq!(i, iv(0, Partial, 0, Partial)),
            other => panic!("{other:?}"),
        }
        // Refine two hops: the whole year is exactly all twelve days.
        match convert(&calendar, &GranuleInterval::singleton(0), "Year", "Day").unwrap() {
            Converted::Qualitative(r) => {
                assert_eq!(r.as_exact(), Some(iv(0, Included, 11, Included)));
            }
            other => panic!("{other:?}"),
        }
    }
}
