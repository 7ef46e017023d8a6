//! Seeded instance generation, independent oracles and the invariant suite.

pub mod generator;
pub mod oracle;
pub mod suite;

pub use generator::{case_rng, random_quadrilateral, CaseSpec, Conditioning, ShapeKind};
pub use oracle::oracle_limit_point;
pub use suite::{four_way_agreement, run_suite, uniqueness_probe, InvariantResult, SuiteReport};
