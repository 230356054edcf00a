//! Exhaustive-search and verification toolkit for the house-allocation
//! problem: which sets of houses can a Pareto-optimal matching sell, and what
//! do the resulting set families look like?
//!
//! The crate enumerates reachable house sets two independent ways, checks the
//! covering properties P and Q, computes the closed-form bound formulas in
//! exact integers, runs the round-based structure analysis of preference
//! matrices, builds minimal transversals and skew cross-intersecting
//! doublings, evaluates the complete-intersection maximum `AK(n, k, t)`, and
//! hunts for counterexamples to two set-pair conjectures at desk scale.
//!
//! Everything is exact (arbitrary-precision integers and rationals) except
//! the single `ln m` in the union bound. All searches and enumerations are
//! deterministic: sampling is seeded, witnesses follow fixed lexicographic
//! tie-breaks, and parallel fan-outs merge order-independently.

pub mod bounds;
mod clique;
pub mod ellem;
pub mod error;
pub mod family;
pub mod housing;
pub mod intersecting;
pub mod properties;
pub mod search;
pub mod set;
pub mod setpairs;

pub use bounds::{binom, bounds_report, ell, BigCount, BoundsReport};
pub use error::{Error, Result};
pub use family::SetFamily;
pub use search::{FamilySearchResult, SearchBudget};
pub use set::{FiniteSet, GroundSet, MAX_UNIVERSE};
