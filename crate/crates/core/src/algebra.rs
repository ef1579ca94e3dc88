//! Extended boolean calculus on granule intervals.
//!
//! Union and intersection of periods whose endpoints may be partially
//! included are not always determined: two unknown cuts inside the same
//! granule can fall in either order. Operations therefore return a
//! [`PossibilitySet`] of exact outcomes. Unions additionally track how the
//! operand periods sit next to each other: a [`UnionScenario`] keeps the
//! pieces apart when they merely meet (`-,x)(x,-`) or leave a gap
//! (`-,x)(+)(x,-`) instead of merging them into one period.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::interval::{Endpoint, EndpointKind, GranuleInterval, Side};
use crate::Result;

/// How two adjacent pieces of a union scenario relate.
///
/// Two periods sharing an end-granule either meet at a cut inside it or
/// leave an uncovered stretch between them (the disjoint union, `(+)`).
/// Overlapping pieces never appear: they are coalesced into one interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Junction {
    Meets,
    GapDisjoint,
}

/// One exact way a union can come out: ordered disjoint pieces, the junction
/// between each adjacent pair, and the operand indices that built each piece.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnionScenario {
    pieces: Vec<GranuleInterval>,
    junctions: Vec<Junction>,
    sources: Vec<BTreeSet<usize>>,
}

impl UnionScenario {
    pub fn empty() -> UnionScenario {
        UnionScenario { pieces: Vec::new(), junctions: Vec::new(), sources: Vec::new() }
    }

    pub fn single(piece: GranuleInterval, sources: BTreeSet<usize>) -> UnionScenario {
        UnionScenario { pieces: vec![piece], junctions: Vec::new(), sources: vec![sources] }
    }

    pub(crate) fn push(
        &mut self,
        junction: Junction,
        piece: GranuleInterval,
        sources: BTreeSet<usize>,
    ) {
        self.junctions.push(junction);
        self.pieces.push(piece);
        self.sources.push(sources);
    }

    pub fn pieces(&self) -> &[GranuleInterval] {
        &self.pieces
    }

    pub fn junctions(&self) -> &[Junction] {
        &self.junctions
    }

    /// Operand indices contributing to each piece, parallel to `pieces`.
    pub fn sources(&self) -> &[BTreeSet<usize>] {
        &self.sources
    }

    /// The scenario with piece provenance dropped, for qualitative equality.
    pub fn erase_sources(&self) -> UnionScenario {
        UnionScenario {
            pieces: self.pieces.clone(),
            junctions: self.junctions.clone(),
            sources: vec![BTreeSet::new(); self.pieces.len()],
        }
    }

    /// Granules covered by the closure of at least one piece; `None` when a
    /// piece is unbounded.
    pub fn covered_granules(&self) -> Option<BTreeSet<i64>> {
        let mut out = BTreeSet::new();
        for piece in &self.pieces {
            match piece.closure_bounds() {
                None => {}
                Some((Some(lo), Some(hi))) => out.extend(lo..=hi),
                Some(_) => return None,
            }
        }
        Some(out)
    }
}

impl fmt::Display for UnionScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "EMPTY");
        }
        write!(f, "{}", self.pieces[0])?;
        for (junction, piece) in self.junctions.iter().zip(&self.pieces[1..]) {
            match junction {
                Junction::Meets => write!(f, "{piece}")?,
                Junction::GapDisjoint => write!(f, " (+) {piece}")?,
            }
        }
        Ok(())
    }
}

/// One exact outcome of a set operation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Interval(GranuleInterval),
    Scenario(UnionScenario),
}

impl Outcome {
    pub fn erase_sources(&self) -> Outcome {
        match self {
            Outcome::Interval(i) => Outcome::Interval(*i),
            Outcome::Scenario(s) => Outcome::Scenario(s.erase_sources()),
        }
    }

    /// View a one-piece scenario as its interval; `None` for multi-piece
    /// scenarios.
    pub fn as_interval(&self) -> Option<GranuleInterval> {
        match self {
            Outcome::Interval(i) => Some(*i),
            Outcome::Scenario(s) if s.pieces.is_empty() => Some(GranuleInterval::Empty),
            Outcome::Scenario(s) if s.pieces.len() == 1 => Some(s.pieces[0]),
            Outcome::Scenario(_) => None,
        }
    }

    /// Qualitative normal form: sources erased and one-piece scenarios
    /// flattened to plain intervals.
    pub fn qualitative(&self) -> Outcome {
        match self.as_interval() {
            Some(i) => Outcome::Interval(i),
            None => self.erase_sources(),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Interval(i) => write!(f, "{i}"),
            Outcome::Scenario(s) => write!(f, "{s}"),
        }
    }
}

/// A non-empty set of alternative exact outcomes. Deterministic operations
/// yield a singleton.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PossibilitySet {
    alternatives: BTreeSet<Outcome>,
}

impl PossibilitySet {
    pub fn singleton(outcome: Outcome) -> PossibilitySet {
        PossibilitySet { alternatives: BTreeSet::from([outcome]) }
    }

    pub fn from_alternatives(iter: impl IntoIterator<Item = Outcome>) -> PossibilitySet {
        let alternatives: BTreeSet<Outcome> = iter.into_iter().collect();
        assert!(!alternatives.is_empty(), "a possibility set is never empty");
        PossibilitySet { alternatives }
    }

    pub fn alternatives(&self) -> impl Iterator<Item = &Outcome> {
        self.alternatives.iter()
    }

    pub fn len(&self) -> usize {
        self.alternatives.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_deterministic(&self) -> bool {
        self.alternatives.len() == 1
    }

    pub fn contains(&self, outcome: &Outcome) -> bool {
        self.alternatives.contains(outcome)
    }

    /// Source-erased, interval-flattened form for qualitative comparison.
    pub fn qualitative(&self) -> PossibilitySet {
        PossibilitySet::from_alternatives(self.alternatives.iter().map(Outcome::qualitative))
    }
}

impl fmt::Display for PossibilitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alternatives.len() == 1 {
            return write!(f, "{}", self.alternatives.iter().next().unwrap());
        }
        let rendered: Vec<String> = self.alternatives.iter().map(|o| o.to_string()).collect();
        write!(f, "{{ {} }}", rendered.join(" ; "))
    }
}

/// Abstract endpoint position: a known granule boundary or an unknown cut
/// strictly inside a granule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pos {
    NegInf,
    At(i64),
    Inside(i64),
    PosInf,
}

/// Start position of a canonical left bound (`None` = unbounded).
fn start_pos(left: Option<Endpoint>) -> Pos {
    match left {
        None => Pos::NegInf,
        Some(e) => match e.kind {
            EndpointKind::Included => Pos::At(e.granule),
            EndpointKind::Partial => Pos::Inside(e.granule),
            EndpointKind::Excluded => Pos::At(e.granule + 1),
        },
    }
}

/// Exclusive end position of a canonical right bound.
fn end_pos(right: Option<Endpoint>) -> Pos {
    match right {
        None => Pos::PosInf,
        Some(e) => match e.kind {
            EndpointKind::Included => Pos::At(e.granule + 1),
            EndpointKind::Partial => Pos::Inside(e.granule),
            EndpointKind::Excluded => Pos::At(e.granule),
        },
    }
}

/// Total order key for a left bound; `[x` sits before `(x` sits before `[x+1`.
fn left_rank(left: Option<Endpoint>) -> i128 {
    match start_pos(left) {
        Pos::NegInf => i128::MIN,
        Pos::At(g) => 2 * g as i128,
        Pos::Inside(g) => 2 * g as i128 + 1,
        Pos::PosInf => i128::MAX,
    }
}

/// Total order key for a right bound; `x)` sits before `x]`.
fn right_rank(right: Option<Endpoint>) -> i128 {
    match end_pos(right) {
        Pos::NegInf => i128::MIN,
        Pos::At(g) => 2 * g as i128,
        Pos::Inside(g) => 2 * g as i128 + 1,
        Pos::PosInf => i128::MAX,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Prov {
    First,
    Second,
    Both,
}

fn pick_left(a: Option<Endpoint>, b: Option<Endpoint>, later: bool) -> (Option<Endpoint>, Prov) {
    let (ra, rb) = (left_rank(a), left_rank(b));
    if ra == rb {
        (a, Prov::Both)
    } else if (ra > rb) == later {
        (a, Prov::First)
    } else {
        (b, Prov::Second)
    }
}

fn pick_right(a: Option<Endpoint>, b: Option<Endpoint>, later: bool) -> (Option<Endpoint>, Prov) {
    let (ra, rb) = (right_rank(a), right_rank(b));
    if ra == rb {
        (a, Prov::Both)
    } else if (ra > rb) == later {
        (a, Prov::First)
    } else {
        (b, Prov::Second)
    }
}

/// Intersection of two periods over the same chronology.
///
/// The effective left bound is the later of the two left bounds and the
/// effective right bound the earlier of the two right bounds. The result is
/// ambiguous exactly when those bounds are independent partial cuts inside
/// one granule: the cuts may fall in either order, so the outcome is the
/// interior singleton or the empty period.
pub fn intersect(i: &GranuleInterval, j: &GranuleInterval) -> PossibilitySet {
    let (ci, cj) = (i.canonicalize(), j.canonicalize());
    if ci.is_empty() || cj.is_empty() {
        return PossibilitySet::singleton(Outcome::Interval(GranuleInterval::Empty));
    }
    let (left, left_prov) = pick_left(ci.left(), cj.left(), true);
    let (right, right_prov) = pick_right(ci.right(), cj.right(), true);
    if let (Some(l), Some(r)) = (left, right) {
        if l.granule > r.granule {
            return PossibilitySet::singleton(Outcome::Interval(GranuleInterval::Empty));
        }
        let same_operand = left_prov == right_prov && left_prov != Prov::Both;
        if l.granule == r.granule
            && l.kind == EndpointKind::Partial
            && r.kind == EndpointKind::Partial
            && !same_operand
        {
            // Two independent cuts inside one granule: `(x)` or nothing.
            return PossibilitySet::from_alternatives([
                Outcome::Interval(GranuleInterval::span(Some(l), Some(r))),
                Outcome::Interval(GranuleInterval::Empty),
            ]);
        }
    }
    PossibilitySet::singleton(Outcome::Interval(GranuleInterval::span(left, right)))
}

/// How the end of an earlier period relates to the start of a later one.
enum Facing {
    /// They share a stretch in every realization: one merged period.
    Overlap,
    /// They touch exactly at a granule boundary: one uninterrupted period.
    MergeAtBoundary,
    /// Independent cuts inside one granule: merge, meet or gap all possible.
    ThreeWay,
    /// An uncovered stretch separates them in every realization.
    Gap,
}

fn facing(end: Pos, start: Pos) -> Facing {
    match (end, start) {
        (Pos::PosInf, _) | (_, Pos::NegInf) => Facing::Overlap,
        (Pos::NegInf, _) | (_, Pos::PosInf) => unreachable!("bounds of non-empty periods"),
        (Pos::At(p1), Pos::At(p2)) => match p2.cmp(&p1) {
            std::cmp::Ordering::Less => Facing::Overlap,
            std::cmp::Ordering::Equal => Facing::MergeAtBoundary,
            std::cmp::Ordering::Greater => Facing::Gap,
        },
        (Pos::At(p1), Pos::Inside(g2)) => {
            if g2 + 1 <= p1 {
                Facing::Overlap
            } else {
                Facing::Gap
            }
        }
        (Pos::Inside(g1), Pos::At(p2)) => {
            if p2 <= g1 {
                Facing::Overlap
            } else {
                Facing::Gap
            }
        }
        (Pos::Inside(g1), Pos::Inside(g2)) => match g2.cmp(&g1) {
            std::cmp::Ordering::Less => Facing::Overlap,
            std::cmp::Ordering::Equal => Facing::ThreeWay,
            std::cmp::Ordering::Greater => Facing::Gap,
        },
    }
}

fn hull(a: &GranuleInterval, b: &GranuleInterval) -> GranuleInterval {
    let (left, _) = pick_left(a.left(), b.left(), false);
    let (right, _) = pick_right(a.right(), b.right(), false);
    GranuleInterval::span(left, right)
}

fn rank_key(i: &GranuleInterval) -> (i128, i128) {
    (left_rank(i.left()), right_rank(i.right()))
}

/// Union of two periods over the same chronology.
///
/// Overlapping periods and periods meeting at a granule boundary coalesce
/// into one interval. When both periods end partially in the same granule
/// the union is qualitatively open: the three alternatives are one merged
/// period, two periods meeting inside the granule, and two periods with an
/// uncovered gap.
pub fn unite(i: &GranuleInterval, j: &GranuleInterval) -> PossibilitySet {
    let (ci, cj) = (i.canonicalize(), j.canonicalize());
    match (ci.is_empty(), cj.is_empty()) {
        (true, true) => {
            return PossibilitySet::singleton(Outcome::Scenario(UnionScenario::empty()))
        }
        (true, false) => {
            return PossibilitySet::singleton(Outcome::Scenario(UnionScenario::single(
                cj,
                BTreeSet::from([1]),
            )))
        }
        (false, true) => {
            return PossibilitySet::singleton(Outcome::Scenario(UnionScenario::single(
                ci,
                BTreeSet::from([0]),
            )))
        }
        (false, false) => {}
    }
    let (first, second, fi, si) = if rank_key(&cj) < rank_key(&ci) {
        (cj, ci, 1usize, 0usize)
    } else {
        (ci, cj, 0usize, 1usize)
    };
    let merged = || {
        Outcome::Scenario(UnionScenario::single(hull(&first, &second), BTreeSet::from([0, 1])))
    };
    let split = |junction: Junction| {
        let mut s = UnionScenario::single(first, BTreeSet::from([fi]));
        s.push(junction, second, BTreeSet::from([si]));
        Outcome::Scenario(s)
    };
    match facing(end_pos(first.right()), start_pos(second.left())) {
        Facing::Overlap | Facing::MergeAtBoundary => PossibilitySet::singleton(merged()),
        Facing::Gap => PossibilitySet::singleton(split(Junction::GapDisjoint)),
        Facing::ThreeWay => PossibilitySet::from_alternatives([
            merged(),
            split(Junction::Meets),
            split(Junction::GapDisjoint),
        ]),
    }
}

/// Left fold of [`unite`] over many periods: the cross product of the
/// per-step alternatives, deduplicated. Scenario sources index into `items`.
pub fn unite_all(items: &[GranuleInterval]) -> PossibilitySet {
    let mut order: Vec<(usize, GranuleInterval)> = items
        .iter()
        .map(|i| i.canonicalize())
        .enumerate()
        .filter(|(_, i)| !i.is_empty())
        .collect();
    order.sort_by_key(|(idx, i)| (rank_key(i), *idx));
    let Some(((first_idx, first), rest)) = order.split_first().map(|(h, t)| (h.clone(), t)) else {
        return PossibilitySet::singleton(Outcome::Scenario(UnionScenario::empty()));
    };
    let mut alts: BTreeSet<UnionScenario> =
        BTreeSet::from([UnionScenario::single(first, BTreeSet::from([first_idx]))]);
    for (idx, item) in rest {
        let mut next: BTreeSet<UnionScenario> = BTreeSet::new();
        for alt in &alts {
            let last = *alt.pieces.last().expect("scenario has pieces");
            let merged = |alt: &UnionScenario| {
                let mut s = alt.clone();
                let merged_piece = hull(&last, item);
                *s.pieces.last_mut().unwrap() = merged_piece;
                s.sources.last_mut().unwrap().insert(*idx);
                s
            };
            let split = |alt: &UnionScenario, junction: Junction| {
                let mut s = alt.clone();
                s.push(junction, *item, BTreeSet::from([*idx]));
                s
            };
            match facing(end_pos(last.right()), start_pos(item.left())) {
                Facing::Overlap | Facing::MergeAtBoundary => {
                    next.insert(merged(alt));
                }
                Facing::Gap => {
                    next.insert(split(alt, Junction::GapDisjoint));
                }
                Facing::ThreeWay => {
                    next.insert(merged(alt));
                    next.insert(split(alt, Junction::Meets));
                    next.insert(split(alt, Junction::GapDisjoint));
                }
            }
        }
        alts = next;
    }
    PossibilitySet::from_alternatives(alts.into_iter().map(Outcome::Scenario))
}

/// Filter a possibility set by a domain rule. Erases no alternatives when
/// the rule accepts everything; errs when it rejects everything.
pub fn resolve(
    set: &PossibilitySet,
    rule: impl Fn(&Outcome) -> bool,
) -> Result<PossibilitySet> {
    let kept: Vec<Outcome> = set.alternatives().filter(|o| rule(o)).cloned().collect();
    if kept.is_empty() {
        return Err(Error::Contradiction(
            "the domain rule rejects every alternative of the possibility set".into(),
        ));
    }
    Ok(PossibilitySet::from_alternatives(kept))
}

fn ray(e: Endpoint) -> GranuleInterval {
    match e.side {
        Side::Left => GranuleInterval::span(Some(e), None),
        Side::Right => GranuleInterval::span(None, Some(e)),
    }
}

fn check_shared_granule(a: Endpoint, b: Endpoint) -> Result<()> {
    if a.granule != b.granule {
        return Err(Error::Precondition(format!(
            "endpoint operations require a shared granule; got {} and {} \
             (use interval-level union/intersection instead)",
            a.granule, b.granule
        )));
    }
    Ok(())
}

/// Union of the half-lines denoted by two endpoints on the same granule:
/// one cell of the extended union table.
pub fn endpoint_union(a: Endpoint, b: Endpoint) -> Result<PossibilitySet> {
    check_shared_granule(a, b)?;
    Ok(unite(&ray(a), &ray(b)))
}

/// Intersection of the half-lines denoted by two endpoints on the same
/// granule: one cell of the extended intersection table.
pub fn endpoint_intersection(a: Endpoint, b: Endpoint) -> Result<PossibilitySet> {
    check_shared_granule(a, b)?;
    Ok(intersect(&ray(a), &ray(b)))
}

/// The period between two periods: the intersection of the complement of
/// `a`'s right half-line with the complement of `b`'s left half-line.
///
/// Requires the closure of `a` to end strictly before the closure of `b`
/// starts; periods overlapping or sharing an end-granule have no determinate
/// in-between period.
pub fn between(a: &GranuleInterval, b: &GranuleInterval) -> Result<GranuleInterval> {
    let (ca, cb) = (a.canonicalize(), b.canonicalize());
    if ca.is_empty() || cb.is_empty() {
        return Err(Error::Precondition("between requires non-empty periods".into()));
    }
    let (Some(ra), Some(lb)) = (ca.right(), cb.left()) else {
        return Err(Error::Precondition(
            "between requires a right bound on the first period and a left bound on the second"
                .into(),
        ));
    };
    if ra.granule >= lb.granule {
        return Err(Error::Precondition(format!(
            "periods overlap or share end-granule {}; no determinate period lies between them",
            ra.granule.min(lb.granule)
        )));
    }
    Ok(GranuleInterval::span(Some(ra.complement()), Some(lb.complement())))
}
