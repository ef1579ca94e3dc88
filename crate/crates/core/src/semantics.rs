//! Denotational oracle at sub-granule resolution.
//!
//! Every granule is split into `k` sub-units. A partial endpoint becomes a
//! concrete cut strictly inside its granule; enumerating all cut positions
//! yields every exact meaning of a qualitative interval. Set operations on
//! these concrete denotations, classified back to qualitative form, give
//! ground truth for the extended union/intersection tables and for the
//! higher-level algebra.

use std::collections::BTreeSet;

use crate::algebra::{Junction, Outcome, UnionScenario};
use crate::allen::AllenRelation;
use crate::error::Error;
use crate::interval::{EndpointKind, GranuleInterval};
use crate::Result;

/// A concrete realization of an interval: which sub-units it covers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubGranuleDenotation {
    pub resolution: u32,
    pub members: BTreeSet<i64>,
}

impl SubGranuleDenotation {
    pub fn from_range(resolution: u32, start: i64, end: i64) -> SubGranuleDenotation {
        SubGranuleDenotation { resolution, members: (start..end).collect() }
    }

    pub fn is_contiguous(&self) -> bool {
        match (self.members.first(), self.members.last()) {
            (Some(lo), Some(hi)) => (hi - lo + 1) as usize == self.members.len(),
            _ => true,
        }
    }

    /// `(start, end)` sub-unit bounds, end exclusive; `None` when empty.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        match (self.members.first(), self.members.last()) {
            (Some(lo), Some(hi)) => Some((*lo, *hi + 1)),
            _ => None,
        }
    }

    pub fn union(&self, other: &SubGranuleDenotation) -> SubGranuleDenotation {
        debug_assert_eq!(self.resolution, other.resolution);
        SubGranuleDenotation {
            resolution: self.resolution,
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &SubGranuleDenotation) -> SubGranuleDenotation {
        debug_assert_eq!(self.resolution, other.resolution);
        SubGranuleDenotation {
            resolution: self.resolution,
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }
}

/// Inclusive granule window used to realize unbounded sides.
pub type Window = (i64, i64);

fn start_choices(left: Option<crate::interval::Endpoint>, k: u32, window: Window) -> Vec<i64> {
    let k = k as i64;
    match left.map(|e| e.canonical()) {
        None => vec![window.0 * k],
        Some(e) => match e.kind {
            EndpointKind::Included => vec![e.granule * k],
            EndpointKind::Partial => (e.granule * k + 1..=e.granule * k + k - 1).collect(),
            EndpointKind::Excluded => unreachable!("canonicalized"),
        },
    }
}

fn end_choices(right: Option<crate::interval::Endpoint>, k: u32, window: Window) -> Vec<i64> {
    let k = k as i64;
    match right.map(|e| e.canonical()) {
        None => vec![(window.1 + 1) * k],
        Some(e) => match e.kind {
            EndpointKind::Included => vec![(e.granule + 1) * k],
            EndpointKind::Partial => (e.granule * k + 1..=e.granule * k + k - 1).collect(),
            EndpointKind::Excluded => unreachable!("canonicalized"),
        },
    }
}

/// Every concrete denotation of an interval at resolution `k`, one per
/// assignment of cut positions to its partial endpoints. Unbounded sides are
/// realized up to the edges of `window`.
pub fn realizations(i: &GranuleInterval, k: u32, window: Window) -> Vec<SubGranuleDenotation> {
    assert!(k >= 2, "sub-granule resolution must be at least 2");
    let ci = i.canonicalize();
    let span = match ci {
        GranuleInterval::Empty => {
            return vec![SubGranuleDenotation { resolution: k, members: BTreeSet::new() }];
        }
        GranuleInterval::Span(s) => s,
    };
    let mut out = Vec::new();
    for start in start_choices(span.left(), k, window) {
        for &end in &end_choices(span.right(), k, window) {
            if start < end {
                out.push(SubGranuleDenotation::from_range(k, start, end));
            }
        }
    }
    out
}

/// Map a contiguous denotation back to its unique qualitative interval.
/// Inverse of realization up to canonical form.
pub fn classify(d: &SubGranuleDenotation) -> Result<GranuleInterval> {
    classify_in_window(d, (i64::MIN / 2, i64::MAX / 2))
}

/// Like [`classify`], but a denotation reaching an edge of `window` is read
/// as unbounded on that side (the window stands in for the whole line).
pub fn classify_in_window(d: &SubGranuleDenotation, window: Window) -> Result<GranuleInterval> {
    if !d.is_contiguous() {
        return Err(Error::NotAnInterval);
    }
    let Some((start, end)) = d.bounds() else {
        return Ok(GranuleInterval::Empty);
    };
    let k = d.resolution as i64;
    let left = if start <= window.0 * k {
        None
    } else {
        let granule = start.div_euclid(k);
        let kind = if start == granule * k { EndpointKind::Included } else { EndpointKind::Partial };
        Some(crate::interval::Endpoint::left(granule, kind))
    };
    let right = if end >= (window.1 + 1) * k {
        None
    } else {
        let granule = (end - 1).div_euclid(k);
        let kind =
            if end == (granule + 1) * k { EndpointKind::Included } else { EndpointKind::Partial };
        Some(crate::interval::Endpoint::right(granule, kind))
    };
    Ok(GranuleInterval::span(left, right))
}

/// Union of two concrete denotations, keeping the operands' identities:
/// overlapping denotations merge into one period; denotations meeting at a
/// cut inside a granule stay two pieces; meeting exactly at a granule
/// boundary they form one uninterrupted period; otherwise a gap separates
/// them.
fn classify_union(
    da: &SubGranuleDenotation,
    db: &SubGranuleDenotation,
    window: Window,
) -> Result<Outcome> {
    let k = da.resolution as i64;
    match (da.bounds(), db.bounds()) {
        (None, None) => Ok(Outcome::Scenario(UnionScenario::empty())),
        (Some(_), None) => Ok(Outcome::Scenario(UnionScenario::single(
            classify_in_window(da, window)?,
            BTreeSet::from([0]),
        ))),
        (None, Some(_)) => Ok(Outcome::Scenario(UnionScenario::single(
            classify_in_window(db, window)?,
            BTreeSet::from([1]),
        ))),
        (Some(ba), Some(bb)) => {
            if !da.intersection(db).members.is_empty() {
                return Ok(Outcome::Scenario(UnionScenario::single(
                    classify_in_window(&da.union(db), window)?,
                    BTreeSet::from([0, 1]),
                )));
            }
            let ((first, fi), (second, si)) =
                if ba.0 <= bb.0 { ((da, 0), (db, 1)) } else { ((db, 1), (da, 0)) };
            let (fb, sb) = (first.bounds().unwrap(), second.bounds().unwrap());
            let gap = sb.0 - fb.1;
            if gap == 0 && sb.0.rem_euclid(k) == 0 {
                // Adjacent at a granule boundary: one uninterrupted period.
                return Ok(Outcome::Scenario(UnionScenario::single(
                    classify_in_window(&da.union(db), window)?,
                    BTreeSet::from([0, 1]),
                )));
            }
            let mut scenario = UnionScenario::single(
                classify_in_window(first, window)?,
                BTreeSet::from([fi]),
            );
            let junction = if gap == 0 { Junction::Meets } else { Junction::GapDisjoint };
            scenario.push(junction, classify_in_window(second, window)?, BTreeSet::from([si]));
            Ok(Outcome::Scenario(scenario))
        }
    }
}

/// Ground-truth union outcomes: classify the union of every pair of
/// realizations of the operands.
pub fn oracle_union(
    i: &GranuleInterval,
    j: &GranuleInterval,
    k: u32,
    window: Window,
) -> BTreeSet<Outcome> {
    let mut out = BTreeSet::new();
    for da in realizations(i, k, window) {
        for db in realizations(j, k, window) {
            out.insert(classify_union(&da, &db, window).expect("contiguous pieces"));
        }
    }
    out
}

/// Ground-truth intersection outcomes.
pub fn oracle_intersection(
    i: &GranuleInterval,
    j: &GranuleInterval,
    k: u32,
    window: Window,
) -> BTreeSet<Outcome> {
    let mut out = BTreeSet::new();
    for da in realizations(i, k, window) {
        for db in realizations(j, k, window) {
            let meet = da.intersection(&db);
            out.insert(Outcome::Interval(
                classify_in_window(&meet, window).expect("intersection of ranges is a range"),
            ));
        }
    }
    out
}

/// Ground-truth complement pieces within a finite domain of `n` granules.
pub fn oracle_complement(i: &GranuleInterval, k: u32, n: u64) -> BTreeSet<Vec<GranuleInterval>> {
    let window = (0i64, n as i64 - 1);
    let universe: BTreeSet<i64> = (0..n as i64 * k as i64).collect();
    let mut out = BTreeSet::new();
    for d in realizations(i, k, window) {
        let rest: BTreeSet<i64> = universe.difference(&d.members).copied().collect();
        let mut pieces = Vec::new();
        let mut run: Vec<i64> = Vec::new();
        for v in rest {
            if run.last().is_some_and(|last| v != last + 1) {
                pieces.push(run.clone());
                run.clear();
            }
            run.push(v);
        }
        if !run.is_empty() {
            pieces.push(run);
        }
        let classified: Vec<GranuleInterval> = pieces
            .into_iter()
            .map(|members| {
                classify(&SubGranuleDenotation { resolution: k, members: members.into_iter().collect() })
                    .expect("runs are contiguous")
            })
            .collect();
        out.insert(classified);
    }
    out
}

/// Ground-truth Allen relations by enumeration. `k` must exceed the number
/// of distinct cuts that may share one granule (four in the worst case), or
/// relations needing distinct cuts are missed.
pub fn oracle_allen(
    i: &GranuleInterval,
    j: &GranuleInterval,
    k: u32,
    window: Window,
) -> BTreeSet<AllenRelation> {
    let mut out = BTreeSet::new();
    for da in realizations(i, k, window) {
        for db in realizations(j, k, window) {
            if let (Some((s1, e1)), Some((s2, e2))) = (da.bounds(), db.bounds()) {
                out.insert(AllenRelation::of_concrete(s1, e1, s2, e2));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use EndpointKind::{Included, Partial};

    const W: Window = (0, 9);

    fn iv(lg: i64, lk: EndpointKind, rg: i64, rk: EndpointKind) -> GranuleInterval {
        GranuleInterval::bounded(lg, lk, rg, rk)
    }

    #[test]
    fn closed_interval_has_one_realization() {
        let d = realizations(&iv(2, Included, 3, Included), 2, W);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].members, BTreeSet::from([4, 5, 6, 7]));
    }

    #[test]
    fn interior_singleton_realizations_sit_strictly_inside() {
        // One proper sub-segment touching neither edge of the granule.
        let karl = iv(2, Partial, 2, Partial);
        let at2 = realizations(&karl, 2, W);
        assert_eq!(at2.len(), 0); // two distinct interior cuts need k >= 3
        let at3 = realizations(&karl, 3, W);
        assert_eq!(at3.len(), 1);
        assert_eq!(at3[0].members, BTreeSet::from([7]));
        let at4 = realizations(&karl, 4, W);
        assert_eq!(at4.len(), 3);
        for d in &at4 {
            let (s, e) = d.bounds().unwrap();
            assert!(s > 8 && e < 12, "strictly inside granule 2 at k=4");
        }
    }

    #[test]
    fn empty_realizes_as_the_empty_set() {
        let d = realizations(&GranuleInterval::Empty, 3, W);
        assert_eq!(d.len(), 1);
        assert!(d[0].members.is_empty());
    }

    #[test]
    fn classify_inverts_realization() {
        let d = SubGranuleDenotation::from_range(2, 4, 8);
        assert_eq!(classify(&d).unwrap(), iv(2, Included, 3, Included));
        // Proper suffix of granule 5 through the whole granule 7.
        let d = SubGranuleDenotation::from_range(3, 5 * 3 + 2, 8 * 3);
        assert_eq!(classify(&d).unwrap(), iv(5, Partial, 7, Included));
        let empty = SubGranuleDenotation { resolution: 3, members: BTreeSet::new() };
        assert_eq!(classify(&empty).unwrap(), GranuleInterval::Empty);
    }

    #[test]
    fn classify_rejects_disconnected_sets() {
        let d = SubGranuleDenotation { resolution: 2, members: BTreeSet::from([1, 2, 5]) };
        assert_eq!(classify(&d), Err(Error::NotAnInterval));
    }

    #[test]
    fn classify_roundtrips_every_realization() {
        for i in [
            iv(2, Partial, 5, Partial),
            iv(2, Included, 5, Partial),
            iv(3, Partial, 3, Partial),
            GranuleInterval::bounded(2, EndpointKind::Excluded, 5, Partial),
        ] {
            for k in [3, 4] {
                for d in realizations(&i, k, W) {
                    assert_eq!(classify(&d).unwrap(), i.canonicalize());
                }
            }
        }
    }

    #[test]
    fn oracle_intersection_of_facing_partials() {
        let after = GranuleInterval::from_left(5, Partial);
        let upto = GranuleInterval::up_to(5, Partial);
        let got = oracle_intersection(&after, &upto, 3, W);
        let expected = BTreeSet::from([
            Outcome::Interval(GranuleInterval::Empty),
            Outcome::Interval(iv(5, Partial, 5, Partial)),
        ]);
        assert_eq!(got, expected);
        // At k=2 a single interior sub-unit cannot host two distinct cuts.
        let degraded = oracle_intersection(&after, &upto, 2, W);
        assert_eq!(degraded, BTreeSet::from([Outcome::Interval(GranuleInterval::Empty)]));
    }

    #[test]
    fn oracle_union_of_included_rays_covers_the_line() {
        let left = GranuleInterval::from_left(5, Included);
        let right = GranuleInterval::up_to(5, Included);
        let got = oracle_union(&left, &right, 3, W);
        assert_eq!(got.len(), 1);
        assert_eq!(got.first().unwrap().to_string(), "-,-");
    }

    #[test]
    fn oracle_union_of_facing_partials_has_three_shapes() {
        let upto = GranuleInterval::up_to(5, Partial);
        let after = GranuleInterval::from_left(5, Partial);
        let got = oracle_union(&upto, &after, 4, W);
        let rendered: BTreeSet<String> = got.iter().map(|o| o.to_string()).collect();
        assert_eq!(
            rendered,
            BTreeSet::from([
                "-,-".to_string(),
                "-,5)(5,-".to_string(),
                "-,5) (+) (5,-".to_string(),
            ])
        );
    }

    #[test]
    fn oracle_complement_of_closed_interval() {
        let i = iv(3, Included, 5, Included);
        let got = oracle_complement(&i, 3, 10);
        assert_eq!(got.len(), 1);
        let pieces = got.first().unwrap();
        assert_eq!(pieces[0], iv(0, Included, 2, Included));
        assert_eq!(pieces[1], iv(6, Included, 9, Included));
    }
}
