//! Exact homology, cohomology, and cohomology operations of finite simplicial
//! complexes, computed through Smith-normal-form contractions.

pub mod cochain_ops;
pub mod cohomology_ops;
pub mod complexes;
pub mod error;
pub mod exact_algebra;
pub mod minimal_model;
pub mod oracle;
pub mod simplicial;

pub use error::{Error, Result};
