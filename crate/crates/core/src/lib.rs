//! Decision procedures for Gorenstein-type properties of Stanley-Reisner
//! rings of simplicial complexes, with an independent brute-force trace
//! oracle and an exhaustive small-complex sweep harness.
//!
//! The crate is organized along the pipeline:
//! * [`complex`]: complexes as facet antichains on bitset vertices, with
//!   links, stars, costars, joins, builders, and antichain enumeration;
//! * [`field`] / [`matrix`]: exact scalars (ℚ, GF(p)) and dense exact
//!   linear algebra;
//! * [`homology`]: reduced and relative simplicial homology, induced maps,
//!   orientability;
//! * [`classifier`]: the ring predicates (Cohen-Macaulay, Gorenstein,
//!   punctured-Gorenstein, nearly Gorenstein, level, type) and the trace
//!   classification;
//! * [`oracle`]: the fractional-ideal trace computation that verifies the
//!   classifier;
//! * [`report`] / [`sweep`] / [`corpus`] / [`io`]: the JSON contract, the
//!   exhaustive validation harness, named inputs, and the facet file
//!   format.

pub mod classifier;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod field;
pub mod homology;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod sweep;

pub use classifier::TraceClass;
pub use complex::{Face, SimplicialComplex};
pub use error::{Error, Result};
pub use field::FieldSpec;
