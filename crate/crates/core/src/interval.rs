//! The nine-type granule interval.
//!
//! An endpoint of a period written over granules is included, excluded or
//! *partially included*: only a proper, contiguous part of the end-granule
//! belongs to the period. With three kinds on each side there are nine types
//! of bounded intervals; a side may also be unbounded (written `-`), which
//! covers the half-line forms the set calculus works with.
//!
//! Notation is side-dependent: a left endpoint renders `[x`, `(x` or `]x`,
//! a right endpoint `x]`, `x)` or `x[`.

use std::fmt;

use crate::chronology::Chronology;
use crate::error::Error;
use crate::Result;

/// How much of its granule an endpoint takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndpointKind {
    Included,
    Partial,
    Excluded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A typed interval endpoint: a granule index, a kind, and the side it bounds.
///
/// An endpoint also denotes a half-line (the period extending from it away
/// from its side), which is what the union/intersection tables operate on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub side: Side,
    pub granule: i64,
    pub kind: EndpointKind,
}

impl Endpoint {
    pub fn left(granule: i64, kind: EndpointKind) -> Endpoint {
        Endpoint { side: Side::Left, granule, kind }
    }

    pub fn right(granule: i64, kind: EndpointKind) -> Endpoint {
        Endpoint { side: Side::Right, granule, kind }
    }

    /// Rewrite an excluded endpoint as the included endpoint of the adjacent
    /// granule; included and partial endpoints are already canonical.
    pub fn canonical(self) -> Endpoint {
        match (self.side, self.kind) {
            (Side::Left, EndpointKind::Excluded) => {
                Endpoint::left(self.granule + 1, EndpointKind::Included)
            }
            (Side::Right, EndpointKind::Excluded) => {
                Endpoint::right(self.granule - 1, EndpointKind::Included)
            }
            _ => self,
        }
    }

    /// The `~` operator: the corresponding endpoint of the adjacent period
    /// that meets this one. Flips the side and swaps included/excluded;
    /// partial stays partial. Applying it twice is the identity.
    pub fn complement(self) -> Endpoint {
        let kind = match self.kind {
            EndpointKind::Included => EndpointKind::Excluded,
            EndpointKind::Excluded => EndpointKind::Included,
            EndpointKind::Partial => EndpointKind::Partial,
        };
        Endpoint { side: self.side.opposite(), granule: self.granule, kind }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.granule;
        match (self.side, self.kind) {
            (Side::Left, EndpointKind::Included) => write!(f, "[{g}"),
            (Side::Left, EndpointKind::Partial) => write!(f, "({g}"),
            (Side::Left, EndpointKind::Excluded) => write!(f, "]{g}"),
            (Side::Right, EndpointKind::Included) => write!(f, "{g}]"),
            (Side::Right, EndpointKind::Partial) => write!(f, "{g})"),
            (Side::Right, EndpointKind::Excluded) => write!(f, "{g}["),
        }
    }
}

/// The four ways a period can intersect a granule it touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GranuleCoverage {
    /// `[g]`: the whole granule belongs to the period.
    Full,
    /// `[g)`: a proper beginning section of the granule.
    LeftAligned,
    /// `(g)`: a proper interior section, touching neither edge.
    Interior,
    /// `(g]`: a proper finishing section of the granule.
    RightAligned,
    /// The granule is outside the period's closure.
    Outside,
}

impl GranuleCoverage {
    /// Paper-style notation for the coverage of a labelled granule.
    pub fn notation(&self, label: &str) -> String {
        match self {
            GranuleCoverage::Full => format!("[{label}]"),
            GranuleCoverage::LeftAligned => format!("[{label})"),
            GranuleCoverage::Interior => format!("({label})"),
            GranuleCoverage::RightAligned => format!("({label}]"),
            GranuleCoverage::Outside => "none".to_string(),
        }
    }
}

/// A period written over granules: empty, or a contiguous span whose sides
/// are typed endpoints or unbounded (`-`).
///
/// `Empty` is a first-class value, never encoded as crossed endpoints.
/// Construction preserves the written endpoint kinds; only comparisons and
/// set operations canonicalize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GranuleInterval {
    Empty,
    Span(Span),
}

/// The non-empty payload of a [`GranuleInterval`]. Fields are private so a
/// crossed or side-confused span cannot be built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    left: Option<Endpoint>,
    right: Option<Endpoint>,
}

impl Span {
    pub fn left(&self) -> Option<Endpoint> {
        self.left
    }

    pub fn right(&self) -> Option<Endpoint> {
        self.right
    }
}

impl GranuleInterval {
    /// Build a bounded interval from written endpoints. Returns `Empty` when
    /// the endpoints leave no granule inside (e.g. `]5,6[` over integers).
    pub fn bounded(
        left_granule: i64,
        left_kind: EndpointKind,
        right_granule: i64,
        right_kind: EndpointKind,
    ) -> GranuleInterval {
        GranuleInterval::span(
            Some(Endpoint::left(left_granule, left_kind)),
            Some(Endpoint::right(right_granule, right_kind)),
        )
    }

    /// A closed single-granule interval `[g]`.
    pub fn singleton(granule: i64) -> GranuleInterval {
        GranuleInterval::bounded(granule, EndpointKind::Included, granule, EndpointKind::Included)
    }

    /// The half-line extending rightward from a left endpoint, e.g. `(1918,-`.
    pub fn from_left(granule: i64, kind: EndpointKind) -> GranuleInterval {
        GranuleInterval::span(Some(Endpoint::left(granule, kind)), None)
    }

    /// The half-line extending leftward from a right endpoint, e.g. `-,1939)`.
    pub fn up_to(granule: i64, kind: EndpointKind) -> GranuleInterval {
        GranuleInterval::span(None, Some(Endpoint::right(granule, kind)))
    }

    /// The whole line `-,-`.
    pub fn whole() -> GranuleInterval {
        GranuleInterval::Span(Span { left: None, right: None })
    }

    /// General constructor from optional endpoints; sides are normalized and
    /// crossed endpoints collapse to `Empty`.
    pub fn span(left: Option<Endpoint>, right: Option<Endpoint>) -> GranuleInterval {
        let left = left.map(|e| Endpoint { side: Side::Left, ..e });
        let right = right.map(|e| Endpoint { side: Side::Right, ..e });
        if let (Some(l), Some(r)) = (left, right) {
            if l.canonical().granule > r.canonical().granule {
                return GranuleInterval::Empty;
            }
        }
        GranuleInterval::Span(Span { left, right })
    }

    /// Domain-checked constructor.
    pub fn make(
        chron: &Chronology,
        left_granule: i64,
        left_kind: EndpointKind,
        right_granule: i64,
        right_kind: EndpointKind,
    ) -> Result<GranuleInterval> {
        chron.check(left_granule)?;
        chron.check(right_granule)?;
        Ok(GranuleInterval::bounded(left_granule, left_kind, right_granule, right_kind))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, GranuleInterval::Empty)
    }

    /// Bounded on both sides.
    pub fn is_bounded(&self) -> bool {
        match self {
            GranuleInterval::Empty => true,
            GranuleInterval::Span(s) => s.left.is_some() && s.right.is_some(),
        }
    }

    pub fn left(&self) -> Option<Endpoint> {
        match self {
            GranuleInterval::Empty => None,
            GranuleInterval::Span(s) => s.left,
        }
    }

    pub fn right(&self) -> Option<Endpoint> {
        match self {
            GranuleInterval::Empty => None,
            GranuleInterval::Span(s) => s.right,
        }
    }

    /// Normal form: excluded endpoints rewritten onto the adjacent granule.
    /// The denotation is unchanged.
    pub fn canonicalize(&self) -> GranuleInterval {
        match self {
            GranuleInterval::Empty => GranuleInterval::Empty,
            GranuleInterval::Span(s) => {
                GranuleInterval::span(s.left.map(Endpoint::canonical), s.right.map(Endpoint::canonical))
            }
        }
    }

    /// All endpoint kinds rewritten to excluded. May collapse to `Empty`.
    pub fn opening(&self) -> GranuleInterval {
        self.map_kinds(EndpointKind::Excluded)
    }

    /// All endpoint kinds rewritten to included.
    pub fn closure(&self) -> GranuleInterval {
        self.map_kinds(EndpointKind::Included)
    }

    fn map_kinds(&self, kind: EndpointKind) -> GranuleInterval {
        match self {
            GranuleInterval::Empty => GranuleInterval::Empty,
            GranuleInterval::Span(s) => GranuleInterval::span(
                s.left.map(|e| Endpoint { kind, ..e }),
                s.right.map(|e| Endpoint { kind, ..e }),
            ),
        }
    }

    /// Canonical granule bounds of the closure: `None` for `Empty`, otherwise
    /// `(low, high)` with `None` marking an unbounded side.
    pub fn closure_bounds(&self) -> Option<(Option<i64>, Option<i64>)> {
        match self.canonicalize() {
            GranuleInterval::Empty => None,
            GranuleInterval::Span(s) => {
                Some((s.left.map(|e| e.granule), s.right.map(|e| e.granule)))
            }
        }
    }

    /// Granule count of the closure; `None` when a side is unbounded.
    pub fn length(&self) -> Option<u64> {
        match self.canonicalize() {
            GranuleInterval::Empty => Some(0),
            GranuleInterval::Span(s) => match (s.left, s.right) {
                (Some(l), Some(r)) => Some((r.granule - l.granule + 1) as u64),
                _ => None,
            },
        }
    }

    /// How this period intersects granule `g`.
    pub fn coverage(&self, g: i64) -> GranuleCoverage {
        let span = match self.canonicalize() {
            GranuleInterval::Empty => return GranuleCoverage::Outside,
            GranuleInterval::Span(s) => s,
        };
        if span.left.is_some_and(|l| g < l.granule) || span.right.is_some_and(|r| g > r.granule) {
            return GranuleCoverage::Outside;
        }
        let at_left = span.left.filter(|l| l.granule == g);
        let at_right = span.right.filter(|r| r.granule == g);
        let partial = |e: Option<Endpoint>| e.is_some_and(|e| e.kind == EndpointKind::Partial);
        match (partial(at_left), partial(at_right)) {
            (false, false) => GranuleCoverage::Full,
            (true, false) => GranuleCoverage::RightAligned,
            (false, true) => GranuleCoverage::LeftAligned,
            (true, true) => GranuleCoverage::Interior,
        }
    }

    /// `(full, partial)` granule counts over the closure; `None` when a side
    /// is unbounded.
    pub fn counts(&self) -> Option<(u64, u64)> {
        let total = self.length()?;
        if total == 0 {
            return Some((0, 0));
        }
        let span = match self.canonicalize() {
            GranuleInterval::Empty => unreachable!("length > 0"),
            GranuleInterval::Span(s) => s,
        };
        let (l, r) = (span.left.expect("bounded"), span.right.expect("bounded"));
        let partial = if l.granule == r.granule {
            u64::from(l.kind == EndpointKind::Partial || r.kind == EndpointKind::Partial)
        } else {
            u64::from(l.kind == EndpointKind::Partial) + u64::from(r.kind == EndpointKind::Partial)
        };
        Some((total - partial, partial))
    }

    /// The up-to-two maximal periods whose union with `self` tiles the
    /// chronology's domain. Endpoint kinds come from the `~` operator and are
    /// kept as written (`complement of [3,5] in [0,9]` is `[0,3[` and `]5,9]`).
    pub fn complement(&self, chron: &Chronology) -> Vec<GranuleInterval> {
        let domain_left = match chron.domain {
            crate::chronology::Domain::Finite(_) => {
                Some(Endpoint::left(0, EndpointKind::Included))
            }
            crate::chronology::Domain::Unbounded => None,
        };
        let domain_right = match chron.domain {
            crate::chronology::Domain::Finite(n) => {
                Some(Endpoint::right(n as i64 - 1, EndpointKind::Included))
            }
            crate::chronology::Domain::Unbounded => None,
        };
        let span = match self {
            GranuleInterval::Empty => {
                return vec![GranuleInterval::span(domain_left, domain_right)];
            }
            GranuleInterval::Span(s) => s,
        };
        let mut pieces = Vec::new();
        if let Some(l) = span.left {
            let piece = GranuleInterval::span(domain_left, Some(l.complement()));
            if !piece.is_empty() {
                pieces.push(piece);
            }
        }
        if let Some(r) = span.right {
            let piece = GranuleInterval::span(Some(r.complement()), domain_right);
            if !piece.is_empty() {
                pieces.push(piece);
            }
        }
        pieces
    }

    /// `true` when every side is `Included` or unbounded (a closure fixpoint).
    pub fn is_closed(&self) -> bool {
        *self == self.closure()
    }

    /// Check both endpoints against a chronology's domain.
    pub fn check_domain(&self, chron: &Chronology) -> Result<()> {
        if let GranuleInterval::Span(s) = self {
            for e in [s.left, s.right].into_iter().flatten() {
                if !chron.contains(e.granule) {
                    return Err(Error::OutOfDomain { unit: chron.unit.clone(), granule: e.granule });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for GranuleInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GranuleInterval::Empty => write!(f, "EMPTY"),
            GranuleInterval::Span(s) => match (s.left, s.right) {
                (None, None) => write!(f, "-,-"),
                (Some(l), None) => write!(f, "{l},-"),
                (None, Some(r)) => write!(f, "-,{r}"),
                (Some(l), Some(r)) if l.granule == r.granule => {
                    // Single-granule shorthand: [5], (5), [5), (5].
                    let open = match l.kind {
                        EndpointKind::Included => "[",
                        EndpointKind::Partial => "(",
                        EndpointKind::Excluded => "]",
                    };
                    let close = match r.kind {
                        EndpointKind::Included => "]",
                        EndpointKind::Partial => ")",
                        EndpointKind::Excluded => "[",
                    };
                    write!(f, "{open}{}{close}", l.granule)
                }
                (Some(l), Some(r)) => {
                    let close = match r.kind {
                        EndpointKind::Included => "]",
                        EndpointKind::Partial => ")",
                        EndpointKind::Excluded => "[",
                    };
                    write!(f, "{l},{}{close}", r.granule)
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chronology::Domain;
    use EndpointKind::{Excluded, Included, Partial};

    #[test]
    fn make_preserves_written_kinds() {
        let war = GranuleInterval::bounded(1914, Partial, 1918, Partial);
        assert_eq!(war.to_string(), "(1914,1918)");
        let point = GranuleInterval::bounded(3, Included, 3, Included);
        assert_eq!(point.to_string(), "[3]");
    }

    #[test]
    fn make_rejects_granule_outside_domain() {
        let chron = Chronology::new("Day", Domain::Finite(10));
        let err = GranuleInterval::make(&chron, 3, Included, 12, Included).unwrap_err();
        assert_eq!(err, Error::OutOfDomain { unit: "Day".into(), granule: 12 });
    }

    #[test]
    fn crossed_endpoints_collapse_to_empty() {
        assert!(GranuleInterval::bounded(5, Excluded, 6, Excluded).is_empty());
        assert!(GranuleInterval::bounded(0, Excluded, 0, Included).is_empty());
        assert!(GranuleInterval::bounded(7, Included, 3, Included).is_empty());
    }

    #[test]
    fn canonicalize_rewrites_excluded() {
        let i = GranuleInterval::bounded(2, Excluded, 7, Partial);
        assert_eq!(i.to_string(), "]2,7)");
        assert_eq!(i.canonicalize().to_string(), "[3,7)");
        let fix = GranuleInterval::bounded(3, Included, 7, Partial);
        assert_eq!(fix.canonicalize(), fix);
    }

    #[test]
    fn complement_endpoint_matches_table() {
        // [x,- <-> -,x[ ; (x,- <-> -,x) ; ]x,- <-> -,x]
        let cases = [
            (Endpoint::left(5, Included), Endpoint::right(5, Excluded)),
            (Endpoint::left(5, Partial), Endpoint::right(5, Partial)),
            (Endpoint::left(5, Excluded), Endpoint::right(5, Included)),
        ];
        for (e, expected) in cases {
            assert_eq!(e.complement(), expected);
            assert_eq!(expected.complement(), e);
            assert_eq!(e.complement().complement(), e);
        }
        let right = Endpoint::right(1918, Partial);
        assert_eq!(right.complement(), Endpoint::left(1918, Partial));
        assert_eq!(right.complement().to_string(), "(1918");
    }

    #[test]
    fn complement_of_half_line() {
        let year = Chronology::new("Year", Domain::Unbounded);
        let upto = GranuleInterval::up_to(1918, Partial);
        let pieces = upto.complement(&year);
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].to_string(), "(1918,-");
    }

    #[test]
    fn complement_of_empty_and_whole() {
        let day = Chronology::new("Day", Domain::Finite(10));
        assert_eq!(GranuleInterval::Empty.complement(&day), vec![GranuleInterval::bounded(
            0, Included, 9, Included
        )]);
        let whole = GranuleInterval::bounded(0, Included, 9, Included);
        assert!(whole.complement(&day).is_empty());
    }

    #[test]
    fn complement_of_bounded_interval() {
        let day = Chronology::new("Day", Domain::Finite(10));
        let i = GranuleInterval::bounded(3, Included, 5, Included);
        let pieces = i.complement(&day);
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].to_string(), "[0,3[");
        assert_eq!(pieces[1].to_string(), "]5,9]");
    }

    #[test]
    fn opening_and_closure() {
        let stay = GranuleInterval::bounded(5, Partial, 12, Partial);
        assert_eq!(stay.closure().to_string(), "[5,12]");
        assert_eq!(stay.closure().closure(), stay.closure());
        assert_eq!(stay.opening().to_string(), "]5,12[");
        assert_eq!(stay.opening().opening(), stay.opening());
        assert!(GranuleInterval::bounded(3, Partial, 3, Partial).opening().is_empty());
        assert!(GranuleInterval::Empty.closure().is_empty());
        let ray = GranuleInterval::from_left(4, Partial);
        assert_eq!(ray.opening().to_string(), "]4,-");
        assert_eq!(ray.closure().to_string(), "[4,-");
    }

    #[test]
    fn length_counts_closure_granules() {
        let stay = GranuleInterval::bounded(71, Included, 75, Included); // five days
        assert_eq!(stay.length(), Some(5));
        assert_eq!(GranuleInterval::bounded(7, Included, 7, Included).length(), Some(1));
        assert_eq!(GranuleInterval::bounded(1918, Partial, 1939, Partial).length(), Some(22));
        assert_eq!(GranuleInterval::Empty.length(), Some(0));
        assert_eq!(GranuleInterval::from_left(3, Included).length(), None);
    }

    #[test]
    fn coverage_of_war_period() {
        let war = GranuleInterval::bounded(1914, Partial, 1918, Partial);
        assert_eq!(war.coverage(1914), GranuleCoverage::RightAligned);
        assert_eq!(war.coverage(1915), GranuleCoverage::Full);
        assert_eq!(war.coverage(1916), GranuleCoverage::Full);
        assert_eq!(war.coverage(1917), GranuleCoverage::Full);
        assert_eq!(war.coverage(1918), GranuleCoverage::LeftAligned);
        assert_eq!(war.coverage(1913), GranuleCoverage::Outside);
        assert_eq!(war.coverage(1919), GranuleCoverage::Outside);
        assert_eq!(war.coverage(1914).notation("1914"), "(1914]");
    }

    #[test]
    fn coverage_of_single_granule_forms() {
        assert_eq!(GranuleInterval::bounded(3, Partial, 3, Partial).coverage(3), GranuleCoverage::Interior);
        assert_eq!(GranuleInterval::bounded(3, Included, 3, Partial).coverage(3), GranuleCoverage::LeftAligned);
        assert_eq!(GranuleInterval::bounded(3, Partial, 3, Included).coverage(3), GranuleCoverage::RightAligned);
        assert_eq!(GranuleInterval::singleton(3).coverage(3), GranuleCoverage::Full);
    }

    #[test]
    fn counts_split_full_and_partial_days() {
        // Stay (03/13, 03/17): two partial days and three full days.
        let jack = GranuleInterval::bounded(12, Partial, 16, Partial);
        assert_eq!(jack.counts(), Some((3, 2)));
        // Stay (03/06, 03/13): two partial days and six full days.
        let george = GranuleInterval::bounded(5, Partial, 12, Partial);
        assert_eq!(george.counts(), Some((6, 2)));
        assert_eq!(GranuleInterval::singleton(4).counts(), Some((1, 0)));
        assert_eq!(GranuleInterval::bounded(4, Partial, 4, Partial).counts(), Some((0, 1)));
    }

    #[test]
    fn display_of_rays_and_empty() {
        assert_eq!(GranuleInterval::up_to(1918, Partial).to_string(), "-,1918)");
        assert_eq!(GranuleInterval::from_left(1918, Partial).to_string(), "(1918,-");
        assert_eq!(GranuleInterval::whole().to_string(), "-,-");
        assert_eq!(GranuleInterval::Empty.to_string(), "EMPTY");
        assert_eq!(GranuleInterval::bounded(5, Partial, 5, Partial).to_string(), "(5)");
    }
}
