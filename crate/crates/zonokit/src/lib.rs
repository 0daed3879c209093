//! Zonotope set operations with a focus on the Minkowski difference.
//!
//! The crate provides zonotopes in generator representation with the closed
//! operations (Minkowski sum, linear map, support function), facet-normal
//! enumeration and exact halfspace representations of a zonotope and of the
//! Minkowski difference of two zonotopes, LP-based redundancy elimination,
//! a generator-contraction approximation of the difference back in generator
//! representation, seeded random instance generation, and brute-force
//! oracles for testing.

pub mod combin;
pub mod config;
pub mod diff;
pub mod error;
pub mod facet;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod sample;
pub mod set;

pub use config::Tolerances;
pub use diff::{minkdiff, minkdiff_recursive, DiffResult, DiffStatus};
pub use error::{Error, Result};
pub use set::{HPolytope, Interval, Zonotope};
