//! Allen's 13 atomic relations, lifted to granule intervals.
//!
//! A partial endpoint is an unknown cut strictly inside its granule, so two
//! periods may stand in several Allen relations depending on where the cuts
//! fall. [`allen_relations`] returns every relation realizable under some
//! assignment of cut positions, decided by a small order-constraint check
//! over the four endpoint positions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::interval::{Endpoint, EndpointKind, GranuleInterval};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AllenRelation {
    Before,
    Meets,
    Overlaps,
    Starts,
    During,
    Finishes,
    Equals,
    After,
    MetBy,
    OverlappedBy,
    StartedBy,
    Contains,
    FinishedBy,
}

impl AllenRelation {
    pub const ALL: [AllenRelation; 13] = [
        AllenRelation::Before,
        AllenRelation::Meets,
        AllenRelation::Overlaps,
        AllenRelation::Starts,
        AllenRelation::During,
        AllenRelation::Finishes,
        AllenRelation::Equals,
        AllenRelation::After,
        AllenRelation::MetBy,
        AllenRelation::OverlappedBy,
        AllenRelation::StartedBy,
        AllenRelation::Contains,
        AllenRelation::FinishedBy,
    ];

    pub fn inverse(self) -> AllenRelation {
        match self {
            AllenRelation::Before => AllenRelation::After,
            AllenRelation::After => AllenRelation::Before,
            AllenRelation::Meets => AllenRelation::MetBy,
            AllenRelation::MetBy => AllenRelation::Meets,
            AllenRelation::Overlaps => AllenRelation::OverlappedBy,
            AllenRelation::OverlappedBy => AllenRelation::Overlaps,
            AllenRelation::Starts => AllenRelation::StartedBy,
            AllenRelation::StartedBy => AllenRelation::Starts,
            AllenRelation::During => AllenRelation::Contains,
            AllenRelation::Contains => AllenRelation::During,
            AllenRelation::Finishes => AllenRelation::FinishedBy,
            AllenRelation::FinishedBy => AllenRelation::Finishes,
            AllenRelation::Equals => AllenRelation::Equals,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            AllenRelation::Before => "<",
            AllenRelation::Meets => "m",
            AllenRelation::Overlaps => "o",
            AllenRelation::Starts => "s",
            AllenRelation::During => "d",
            AllenRelation::Finishes => "f",
            AllenRelation::Equals => "=",
            AllenRelation::After => ">",
            AllenRelation::MetBy => "mi",
            AllenRelation::OverlappedBy => "oi",
            AllenRelation::StartedBy => "si",
            AllenRelation::Contains => "di",
            AllenRelation::FinishedBy => "fi",
        }
    }

    /// Relation of two concrete periods `[s1,e1)` and `[s2,e2)` with `s < e`.
    pub fn of_concrete(s1: i64, e1: i64, s2: i64, e2: i64) -> AllenRelation {
        debug_assert!(s1 < e1 && s2 < e2);
        if e1 < s2 {
            return AllenRelation::Before;
        }
        if e1 == s2 {
            return AllenRelation::Meets;
        }
        if e2 < s1 {
            return AllenRelation::After;
        }
        if e2 == s1 {
            return AllenRelation::MetBy;
        }
        match (s1.cmp(&s2), e1.cmp(&e2)) {
            (std::cmp::Ordering::Equal, std::cmp::Ordering::Equal) => AllenRelation::Equals,
            (std::cmp::Ordering::Equal, std::cmp::Ordering::Less) => AllenRelation::Starts,
            (std::cmp::Ordering::Equal, std::cmp::Ordering::Greater) => AllenRelation::StartedBy,
            (std::cmp::Ordering::Less, std::cmp::Ordering::Equal) => AllenRelation::FinishedBy,
            (std::cmp::Ordering::Greater, std::cmp::Ordering::Equal) => AllenRelation::Finishes,
            (std::cmp::Ordering::Less, std::cmp::Ordering::Less) => AllenRelation::Overlaps,
            (std::cmp::Ordering::Greater, std::cmp::Ordering::Greater) => {
                AllenRelation::OverlappedBy
            }
            (std::cmp::Ordering::Less, std::cmp::Ordering::Greater) => AllenRelation::Contains,
            (std::cmp::Ordering::Greater, std::cmp::Ordering::Less) => AllenRelation::During,
        }
    }
}

impl fmt::Display for AllenRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Domain of an endpoint position: a known boundary (a point) or an unknown
/// cut strictly inside a unit-wide open interval.
#[derive(Debug, Clone, Copy)]
struct PosDomain {
    lo: i64,
    hi: i64,
    open: bool,
}

impl PosDomain {
    fn point(v: i64) -> PosDomain {
        PosDomain { lo: v, hi: v, open: false }
    }

    fn inside(granule: i64) -> PosDomain {
        PosDomain { lo: granule, hi: granule + 1, open: true }
    }
}

// Sentinel boundaries far outside any granule index used in practice, so
// unbounded sides behave as proper infinities under comparison.
const NEG_SENTINEL: i64 = i64::MIN / 4;
const POS_SENTINEL: i64 = i64::MAX / 4;

fn start_domain(left: Option<Endpoint>) -> PosDomain {
    match left {
        None => PosDomain::point(NEG_SENTINEL),
        Some(e) => match e.kind {
            EndpointKind::Included => PosDomain::point(e.granule),
            EndpointKind::Partial => PosDomain::inside(e.granule),
            EndpointKind::Excluded => PosDomain::point(e.granule + 1),
        },
    }
}

fn end_domain(right: Option<Endpoint>) -> PosDomain {
    match right {
        None => PosDomain::point(POS_SENTINEL),
        Some(e) => match e.kind {
            EndpointKind::Included => PosDomain::point(e.granule + 1),
            EndpointKind::Partial => PosDomain::inside(e.granule),
            EndpointKind::Excluded => PosDomain::point(e.granule),
        },
    }
}

#[derive(Debug, Clone, Copy)]
enum Atom {
    Eq(usize, usize),
    Lt(usize, usize),
}

/// Satisfiability of a conjunction of order atoms over four positions whose
/// domains are integer points or open unit intervals. Equal classes must
/// share a domain; an integer point never falls strictly inside a unit
/// interval; within one open interval the rationals are dense, so acyclic
/// strict chains are always realizable.
fn satisfiable(domains: &[PosDomain; 4], atoms: &[Atom]) -> bool {
    // Union-find over the equality atoms.
    let mut parent = [0usize, 1, 2, 3];
    fn find(parent: &mut [usize; 4], x: usize) -> usize {
        if parent[x] != x {
            parent[x] = find(parent, parent[x]);
        }
        parent[x]
    }
    for atom in atoms {
        if let Atom::Eq(a, b) = atom {
            let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
            parent[ra] = rb;
        }
    }
    // Intersect the domains of each class.
    let mut class_dom = *domains;
    for x in 0..4 {
        let r = find(&mut parent, x);
        if r == x {
            continue;
        }
        let (a, b) = (class_dom[r], domains[x]);
        let merged = match (a.open, b.open) {
            (false, false) if a.lo == b.lo => a,
            (true, true) if a.lo == b.lo => a,
            // An integer boundary never lies strictly inside a granule.
            _ => return false,
        };
        class_dom[r] = merged;
    }
    // Strict edges between class representatives.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for atom in atoms {
        if let Atom::Lt(a, b) = atom {
            let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
            if ra == rb {
                return false;
            }
            edges.push((ra, rb));
        }
    }
    // Each edge must be locally realizable.
    for (u, v) in &edges {
        let (du, dv) = (class_dom[*u], class_dom[*v]);
        if du.lo >= dv.hi {
            return false;
        }
    }
    // No cycles among strict edges.
    for start in 0..4 {
        let mut stack = vec![start];
        let mut seen = [false; 4];
        while let Some(at) = stack.pop() {
            for (u, v) in &edges {
                if *u == at {
                    if *v == start {
                        return false;
                    }
                    if !seen[*v] {
                        seen[*v] = true;
                        stack.push(*v);
                    }
                }
            }
        }
    }
    true
}

fn relation_atoms(rel: AllenRelation) -> Vec<Atom> {
    const S1: usize = 0;
    const E1: usize = 1;
    const S2: usize = 2;
    const E2: usize = 3;
    match rel {
        AllenRelation::Before => vec![Atom::Lt(E1, S2)],
        AllenRelation::After => vec![Atom::Lt(E2, S1)],
        AllenRelation::Meets => vec![Atom::Eq(E1, S2)],
        AllenRelation::MetBy => vec![Atom::Eq(E2, S1)],
        AllenRelation::Overlaps => vec![Atom::Lt(S1, S2), Atom::Lt(S2, E1), Atom::Lt(E1, E2)],
        AllenRelation::OverlappedBy => {
            vec![Atom::Lt(S2, S1), Atom::Lt(S1, E2), Atom::Lt(E2, E1)]
        }
        AllenRelation::Starts => vec![Atom::Eq(S1, S2), Atom::Lt(E1, E2)],
        AllenRelation::StartedBy => vec![Atom::Eq(S1, S2), Atom::Lt(E2, E1)],
        AllenRelation::During => vec![Atom::Lt(S2, S1), Atom::Lt(E1, E2)],
        AllenRelation::Contains => vec![Atom::Lt(S1, S2), Atom::Lt(E2, E1)],
        AllenRelation::Finishes => vec![Atom::Eq(E1, E2), Atom::Lt(S2, S1)],
        AllenRelation::FinishedBy => vec![Atom::Eq(E1, E2), Atom::Lt(S1, S2)],
        AllenRelation::Equals => vec![Atom::Eq(S1, S2), Atom::Eq(E1, E2)],
    }
}

/// Every Allen relation realizable between two periods under some assignment
/// of cut positions to their partial endpoints. Cuts are independent
/// unknowns strictly inside their granules; the two cuts of a single-granule
/// interior period keep their own order.
pub fn allen_relations(
    i: &GranuleInterval,
    j: &GranuleInterval,
) -> Result<BTreeSet<AllenRelation>> {
    let (ci, cj) = (i.canonicalize(), j.canonicalize());
    if ci.is_empty() || cj.is_empty() {
        return Err(Error::Precondition("Allen relations require non-empty periods".into()));
    }
    let domains = [
        start_domain(ci.left()),
        end_domain(ci.right()),
        start_domain(cj.left()),
        end_domain(cj.right()),
    ];
    let mut out = BTreeSet::new();
    for rel in AllenRelation::ALL {
        let mut atoms = relation_atoms(rel);
        // Periods are non-empty stretches: start strictly before end.
        atoms.push(Atom::Lt(0, 1));
        atoms.push(Atom::Lt(2, 3));
        if satisfiable(&domains, &atoms) {
            out.insert(rel);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use EndpointKind::{Included, Partial};

    fn iv(lg: i64, lk: EndpointKind, rg: i64, rk: EndpointKind) -> GranuleInterval {
        GranuleInterval::bounded(lg, lk, rg, rk)
    }

    fn rels(i: &GranuleInterval, j: &GranuleInterval) -> BTreeSet<AllenRelation> {
        allen_relations(i, j).unwrap()
    }

    #[test]
    fn disjoint_closed_intervals_are_before() {
        let set = rels(&iv(2, Included, 4, Included), &iv(6, Included, 9, Included));
        assert_eq!(set, BTreeSet::from([AllenRelation::Before]));
    }

    #[test]
    fn adjacent_closed_intervals_meet() {
        let set = rels(&iv(2, Included, 4, Included), &iv(5, Included, 9, Included));
        assert_eq!(set, BTreeSet::from([AllenRelation::Meets]));
    }

    #[test]
    fn identical_closed_intervals_are_equal() {
        let i = iv(2, Included, 4, Included);
        assert_eq!(rels(&i, &i), BTreeSet::from([AllenRelation::Equals]));
    }

    #[test]
    fn consecutive_wars_admit_three_relations() {
        let first = iv(1914, Partial, 1918, Partial);
        let interwar = iv(1918, Partial, 1939, Partial);
        let set = rels(&first, &interwar);
        assert_eq!(
            set,
            BTreeSet::from([AllenRelation::Before, AllenRelation::Meets, AllenRelation::Overlaps])
        );
    }

    #[test]
    fn interior_twins_admit_all_thirteen() {
        let karl = iv(5, Partial, 5, Partial);
        assert_eq!(rels(&karl, &karl).len(), 13);
    }

    #[test]
    fn inverse_symmetry_on_samples() {
        let a = iv(2, Partial, 5, Partial);
        let b = iv(5, Partial, 9, Included);
        let ab = rels(&a, &b);
        let ba = rels(&b, &a);
        let mirrored: BTreeSet<AllenRelation> = ba.iter().map(|r| r.inverse()).collect();
        assert_eq!(ab, mirrored);
    }

    #[test]
    fn rays_relate_like_periods() {
        let upto = GranuleInterval::up_to(5, Partial);
        let from = GranuleInterval::from_left(5, Partial);
        let set = allen_relations(&upto, &from).unwrap();
        assert_eq!(
            set,
            BTreeSet::from([AllenRelation::Before, AllenRelation::Meets, AllenRelation::Overlaps])
        );
    }

    #[test]
    fn empty_operand_is_rejected() {
        let err = allen_relations(&GranuleInterval::Empty, &GranuleInterval::singleton(3));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn concrete_classifier_covers_all_cases() {
        assert_eq!(AllenRelation::of_concrete(0, 2, 4, 6), AllenRelation::Before);
        assert_eq!(AllenRelation::of_concrete(0, 4, 4, 6), AllenRelation::Meets);
        assert_eq!(AllenRelation::of_concrete(0, 5, 4, 6), AllenRelation::Overlaps);
        assert_eq!(AllenRelation::of_concrete(4, 5, 4, 6), AllenRelation::Starts);
        assert_eq!(AllenRelation::of_concrete(4, 5, 3, 6), AllenRelation::During);
        assert_eq!(AllenRelation::of_concrete(4, 6, 3, 6), AllenRelation::Finishes);
        assert_eq!(AllenRelation::of_concrete(3, 6, 3, 6), AllenRelation::Equals);
        assert_eq!(AllenRelation::of_concrete(7, 9, 4, 6), AllenRelation::After);
        assert_eq!(AllenRelation::of_concrete(6, 9, 4, 6), AllenRelation::MetBy);
        assert_eq!(AllenRelation::of_concrete(5, 9, 4, 6), AllenRelation::OverlappedBy);
        assert_eq!(AllenRelation::of_concrete(4, 9, 4, 6), AllenRelation::StartedBy);
        assert_eq!(AllenRelation::of_concrete(3, 9, 4, 6), AllenRelation::Contains);
        assert_eq!(AllenRelation::of_concrete(3, 6, 4, 6), AllenRelation::FinishedBy);
    }
}
