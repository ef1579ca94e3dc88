//! Interval algebra over time granules with partially included endpoints.
//!
//! A granule is an atomic stretch of time inside a chronology (a unit plus a
//! domain of granule indices). Classical intervals over granules can only
//! include or exclude their end-granules, which is too coarse for periods
//! like a war that starts *in the course of* a year. This crate adds a third
//! endpoint kind — partially included — and provides:
//!
//! - the nine-type granule interval with closure, opening, complement,
//!   length and per-granule coverage ([`interval`]);
//! - extended union/intersection with qualitative possibility sets and
//!   union scenarios, plus Allen relations ([`algebra`]);
//! - chronologies, atomic calendars and calendar graphs ([`chronology`]);
//! - endpoint conversion between chronologies ([`conversion`]);
//! - a brute-force sub-granule oracle that grounds every qualitative
//!   operation in concrete denotations ([`semantics`], [`tables`]);
//! - a text grammar for intervals and set expressions ([`text`], [`expr`]).

pub mod algebra;
pub mod allen;
pub mod chronology;
pub mod conversion;
pub mod error;
pub mod expr;
pub mod interval;
pub mod semantics;
pub mod tables;
pub mod text;

pub use algebra::{intersect, resolve, unite, unite_all, Junction, Outcome, PossibilitySet, UnionScenario};
pub use allen::{allen_relations, AllenRelation};
pub use chronology::{AtomicCalendar, Calendar, Chronology, Domain, Violation};
pub use error::Error;
pub use interval::{Endpoint, EndpointKind, GranuleCoverage, GranuleInterval, Side};

/// Convenient result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
