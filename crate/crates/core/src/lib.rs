//! Exact enumeration, series expansion and uniform random generation of
//! prudent self-avoiding walks.
//!
//! Five families are covered: 1-, 2-, 3- and 4-sided prudent walks on the
//! square lattice, and prudent walks on the triangular lattice. Counts are
//! produced by four independent routes (exhaustive search, generating-tree
//! extension tables, functional-equation iteration and closed forms) that the
//! [`verify`] module cross-checks.

pub mod asymptotics;
pub mod closed;
pub mod equations;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod render;
pub mod sampler;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use lattice::WalkClass;
pub use series::{CPoly, Coeff, Image, Int, Mono, Rat, TSeries, Var};
